use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Recorded without a verdict.
    Info,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Info => "INFO",
        })
    }
}

/// One `metric<TAB>value<TAB>tolerance<TAB>status` line.
#[derive(Debug, Clone, PartialEq)]
pub struct Line {
    pub metric: String,
    pub value: String,
    pub tolerance: String,
    pub status: Status,
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}\t{}\t{}\t{}",
            self.metric, self.value, self.tolerance, self.status
        )
    }
}

pub fn num(x: f64) -> String {
    format!("{x:.3e}")
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    pub lines: Vec<Line>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    /// Passes iff `value <= tol`.
    pub fn at_most(&mut self, metric: impl Into<String>, value: f64, tol: f64) -> bool {
        let ok = value <= tol;
        self.push(metric, num(value), num(tol), ok);
        ok
    }

    /// Passes iff `value > 0`.
    pub fn positive(&mut self, metric: impl Into<String>, value: f64) -> bool {
        let ok = value > 0.0;
        self.push(metric, num(value), ">0".into(), ok);
        ok
    }

    pub fn check(&mut self, metric: impl Into<String>, value: impl fmt::Display, ok: bool) -> bool {
        self.push(metric, value.to_string(), "-".into(), ok);
        ok
    }

    pub fn info(&mut self, metric: impl Into<String>, value: impl fmt::Display) {
        self.lines.push(Line {
            metric: metric.into(),
            value: clean(&value.to_string()),
            tolerance: "-".into(),
            status: Status::Info,
        });
    }

    fn push(&mut self, metric: impl Into<String>, value: String, tolerance: String, ok: bool) {
        self.lines.push(Line {
            metric: metric.into(),
            value: clean(&value),
            tolerance,
            status: if ok { Status::Pass } else { Status::Fail },
        });
    }

    pub fn extend(&mut self, other: Report) {
        self.lines.extend(other.lines);
    }

    pub fn failed(&self) -> bool {
        self.lines.iter().any(|l| l.status == Status::Fail)
    }

    pub fn to_text(&self) -> String {
        self.lines.iter().map(|l| format!("{l}\n")).collect()
    }
}

// values must not break the column layout
fn clean(s: &str) -> String {
    s.replace(['\t', '\n', '\r'], " ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_layout() {
        let mut r = Report::new();
        assert!(r.at_most("dev", 1e-9, 1e-8));
        assert!(!r.positive("vol", 0.0));
        r.info("note", "a\tb");
        assert_eq!(
            r.to_text(),
            "dev\t1.000e-9\t1.000e-8\tPASS\nvol\t0.000e0\t>0\tFAIL\nnote\ta b\t-\tINFO\n"
        );
        assert!(r.failed());
    }

    #[test]
    fn empty_report() {
        let r = Report::new();
        assert_eq!(r.to_text(), "");
        assert!(!r.failed());
    }
}
