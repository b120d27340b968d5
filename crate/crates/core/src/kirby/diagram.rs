use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use super::KirbyError;
use crate::surgery::valid_label;

/// A contact surgery coefficient p/q in lowest terms, q > 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Coefficient {
    num: i64,
    den: i64,
}

impl Coefficient {
    pub fn new(num: i64, den: i64) -> Result<Self, KirbyError> {
        if den == 0 {
            return Err(KirbyError::InvalidCoefficient);
        }
        let g = gcd(num.unsigned_abs(), den.unsigned_abs()) as i64;
        let s = if den < 0 { -1 } else { 1 };
        Ok(Coefficient {
            num: s * num / g,
            den: s * den / g,
        })
    }
    pub fn integer(k: i64) -> Self {
        Coefficient { num: k, den: 1 }
    }
    /// 1/k.
    pub fn reciprocal(k: i64) -> Result<Self, KirbyError> {
        Self::new(1, k)
    }
    pub fn num(&self) -> i64 {
        self.num
    }
    pub fn den(&self) -> i64 {
        self.den
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for Coefficient {
    type Err = KirbyError;
    fn from_str(s: &str) -> Result<Self, KirbyError> {
        let int = |t: &str| t.parse::<i64>().map_err(|_| KirbyError::InvalidCoefficient);
        match s.split_once('/') {
            Some((p, q)) => {
                let c = Coefficient::new(int(p)?, int(q)?)?;
                // only canonical text parses, so serialization stays a bijection
                if c.to_string() != s {
                    return Err(KirbyError::InvalidCoefficient);
                }
                Ok(c)
            }
            None => {
                let c = Coefficient::integer(int(s)?);
                if c.to_string() != s {
                    return Err(KirbyError::InvalidCoefficient);
                }
                Ok(c)
            }
        }
    }
}

/// A label in copy `copy` of the base, written `label_copy`, with a trailing
/// `'` for the pushed-off copy of the page in that copy.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CopyLabel {
    pub label: String,
    pub copy: u32,
    pub primed: bool,
}

impl CopyLabel {
    pub fn new(label: &str, copy: u32, primed: bool) -> Self {
        CopyLabel {
            label: label.to_string(),
            copy,
            primed,
        }
    }
}

impl fmt::Display for CopyLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}{}", self.label, self.copy, if self.primed { "'" } else { "" })
    }
}

impl FromStr for CopyLabel {
    type Err = KirbyError;
    fn from_str(s: &str) -> Result<Self, KirbyError> {
        let bad = || KirbyError::InvalidLabel(s.to_string());
        let (label, rest) = s.rsplit_once('_').ok_or_else(bad)?;
        let (digits, primed) = match rest.strip_suffix('\'') {
            Some(d) => (d, true),
            None => (rest, false),
        };
        if !valid_label(label) || digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        if digits.len() > 1 && digits.starts_with('0') {
            return Err(bad());
        }
        let copy = digits.parse().map_err(|_| bad())?;
        Ok(CopyLabel {
            label: label.to_string(),
            copy,
            primed,
        })
    }
}

/// One item of an attaching word.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum WordItem {
    /// A core curve, traversed forwards (`+`) or reversed (`-`).
    Curve { curve: CopyLabel, positive: bool },
    /// A pass through the dotted handle with this id.
    Through(u32),
}

impl fmt::Display for WordItem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordItem::Curve { curve, positive } => write!(f, "{}{}", if *positive { '+' } else { '-' }, curve),
            WordItem::Through(id) => write!(f, ">D{id}"),
        }
    }
}

impl FromStr for WordItem {
    type Err = KirbyError;
    fn from_str(s: &str) -> Result<Self, KirbyError> {
        if let Some(id) = s.strip_prefix(">D") {
            return Ok(WordItem::Through(
                parse_id(id).ok_or_else(|| KirbyError::InvalidLabel(s.to_string()))?,
            ));
        }
        let (positive, rest) = match s.as_bytes().first() {
            Some(b'+') => (true, &s[1..]),
            Some(b'-') => (false, &s[1..]),
            _ => return Err(KirbyError::InvalidLabel(s.to_string())),
        };
        Ok(WordItem::Curve {
            curve: rest.parse()?,
            positive,
        })
    }
}

pub(crate) fn parse_id(s: &str) -> Option<u32> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) || (s.len() > 1 && s.starts_with('0')) {
        return None;
    }
    s.parse().ok()
}

/// A component of the surgery diagram describing the concave end.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BaseComponent {
    pub label: CopyLabel,
    /// Contact coefficient, if the component carries a surgery.
    pub coefficient: Option<Coefficient>,
    pub description: String,
}

/// A 4-dimensional 1-handle, drawn as a pair of balls joined by a dotted line.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DottedHandle {
    pub id: u32,
    pub anchors: (CopyLabel, CopyLabel),
}

/// A Weinstein 2-handle along the Legendrian closed up from its word.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TwoHandle {
    pub id: u32,
    pub word: Vec<WordItem>,
    pub coefficient: Coefficient,
}

impl TwoHandle {
    /// How many times the word passes through dotted handle `id`.
    pub fn traversals(&self, id: u32) -> usize {
        self.word.iter().filter(|w| **w == WordItem::Through(id)).count()
    }
}

/// A combinatorial Kirby diagram. Handles are kept sorted by id and every
/// reference is checked on construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KirbyDiagram {
    base: Vec<BaseComponent>,
    dotted: Vec<DottedHandle>,
    two_handles: Vec<TwoHandle>,
    notes: Vec<String>,
}

impl KirbyDiagram {
    pub fn new(
        base: Vec<BaseComponent>,
        mut dotted: Vec<DottedHandle>,
        mut two_handles: Vec<TwoHandle>,
        notes: Vec<String>,
    ) -> Result<Self, KirbyError> {
        dotted.sort_by_key(|d| d.id);
        two_handles.sort_by_key(|h| h.id);
        if dotted.windows(2).any(|w| w[0].id == w[1].id) || two_handles.windows(2).any(|w| w[0].id == w[1].id) {
            return Err(KirbyError::DuplicateId);
        }
        for d in &dotted {
            if d.anchors.0 == d.anchors.1 {
                return Err(KirbyError::InvalidLabel(format!("D{} has equal anchors", d.id)));
            }
        }
        for (i, b) in base.iter().enumerate() {
            if b.description.is_empty() || b.description.contains(['\t', '\n', '\r']) {
                return Err(KirbyError::InvalidLabel(b.label.to_string()));
            }
            if base[..i].iter().any(|o| o.label == b.label) {
                return Err(KirbyError::DuplicateId);
            }
        }
        for n in &notes {
            if n.contains(['\n', '\r']) {
                return Err(KirbyError::InvalidLabel("note".into()));
            }
        }
        for h in &two_handles {
            if h.word.is_empty() {
                return Err(KirbyError::EmptyWord(h.id));
            }
            for w in &h.word {
                if let WordItem::Through(id) = w {
                    if dotted.binary_search_by_key(id, |d| d.id).is_err() {
                        return Err(KirbyError::DanglingReference {
                            handle: h.id,
                            dotted: *id,
                        });
                    }
                }
            }
        }
        Ok(KirbyDiagram {
            base,
            dotted,
            two_handles,
            notes,
        })
    }

    pub fn base(&self) -> &[BaseComponent] {
        &self.base
    }
    pub fn dotted(&self) -> &[DottedHandle] {
        &self.dotted
    }
    pub fn two_handles(&self) -> &[TwoHandle] {
        &self.two_handles
    }
    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    /// Attaching words as text, e.g. `+a_1 >D1 -a_2 >D1`.
    pub fn word_strings(&self) -> Vec<String> {
        self.two_handles.iter().map(|h| word_text(&h.word)).collect()
    }
}

pub(crate) fn word_text(w: &[WordItem]) -> String {
    w.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn coefficient_text() {
        assert_eq!(Coefficient::new(2, -4).unwrap().to_string(), "-1/2");
        assert_eq!(Coefficient::reciprocal(1).unwrap().to_string(), "1");
        assert_eq!(Coefficient::reciprocal(-1).unwrap(), Coefficient::integer(-1));
        assert_eq!(
            "1/3".parse::<Coefficient>().unwrap(),
            Coefficient::reciprocal(3).unwrap()
        );
        assert!("2/4".parse::<Coefficient>().is_err());
        assert!("+1".parse::<Coefficient>().is_err());
        assert!("1/0".parse::<Coefficient>().is_err());
    }

    #[test]
    fn labels() {
        let l: CopyLabel = "a_2'".parse().unwrap();
        assert_eq!(l, CopyLabel::new("a", 2, true));
        assert_eq!(l.to_string(), "a_2'");
        assert_eq!("L'_3".parse::<CopyLabel>().unwrap().label, "L'");
        assert!("a".parse::<CopyLabel>().is_err());
        assert!("a_02".parse::<CopyLabel>().is_err());
        assert_eq!(">D12".parse::<WordItem>().unwrap(), WordItem::Through(12));
        assert!("a_1".parse::<WordItem>().is_err());
    }

    #[test]
    fn references_checked() {
        let h = TwoHandle {
            id: 1,
            word: vec![WordItem::Through(3)],
            coefficient: Coefficient::integer(-1),
        };
        assert_eq!(
            KirbyDiagram::new(vec![], vec![], vec![h], vec![]),
            Err(KirbyError::DanglingReference { handle: 1, dotted: 3 })
        );
        let e = TwoHandle {
            id: 1,
            word: vec![],
            coefficient: Coefficient::integer(-1),
        };
        assert_eq!(
            KirbyDiagram::new(vec![], vec![], vec![e], vec![]),
            Err(KirbyError::EmptyWord(1))
        );
        let d = DottedHandle {
            id: 1,
            anchors: (CopyLabel::new("p", 1, false), CopyLabel::new("p", 1, false)),
        };
        assert!(KirbyDiagram::new(vec![], vec![d], vec![], vec![]).is_err());
    }
}
