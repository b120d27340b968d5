use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum PointsError {
    #[error("line {line}: {token:?} is not a number")]
    NotANumber { line: usize, token: String },
    #[error("line {line}: expected {expected} coordinates, got {got}")]
    WrongLength { line: usize, expected: usize, got: usize },
    #[error("no points")]
    Empty,
}

/// Sample points as text: one point per line, whitespace-separated numbers.
/// Blank lines and `#` comments are skipped.
pub fn parse_points(text: &str, dim: usize) -> Result<Vec<Vec<f64>>, PointsError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let coords = line
            .split_whitespace()
            .map(|t| {
                t.parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| PointsError::NotANumber {
                        line: i + 1,
                        token: t.to_string(),
                    })
            })
            .collect::<Result<Vec<_>, _>>()?;
        if coords.len() != dim {
            return Err(PointsError::WrongLength {
                line: i + 1,
                expected: dim,
                got: coords.len(),
            });
        }
        out.push(coords);
    }
    if out.is_empty() {
        return Err(PointsError::Empty);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_points() {
        let p = parse_points("# two points\n1 0 0\n\n0.5  -2e-1 3 # trailing\n", 3).unwrap();
        assert_eq!(p, vec![vec![1.0, 0.0, 0.0], vec![0.5, -0.2, 3.0]]);
    }

    #[test]
    fn errors_carry_lines() {
        assert_eq!(
            parse_points("1 2\n1 x\n", 2),
            Err(PointsError::NotANumber {
                line: 2,
                token: "x".into()
            })
        );
        assert_eq!(
            parse_points("1 2 3\n", 2),
            Err(PointsError::WrongLength {
                line: 1,
                expected: 2,
                got: 3
            })
        );
        assert_eq!(parse_points("# nothing\n", 2), Err(PointsError::Empty));
        assert!(parse_points("nan 1\n", 2).is_err());
    }
}
