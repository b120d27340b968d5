use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{valid_label, SurgeryError};

/// `label^exp`: the Dehn twist along the sphere `label`, raised to `exp`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub label: String,
    pub exp: i64,
}

impl Letter {
    pub fn new(label: &str, exp: i64) -> Self {
        Letter {
            label: label.to_string(),
            exp,
        }
    }
}

/// A freely reduced word in Dehn twists. The empty word is the identity.
///
/// No relations other than free reduction are imposed, so distinct words may
/// still represent isotopic maps.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "Vec<Letter>", into = "Vec<Letter>")]
pub struct MonodromyWord {
    letters: Vec<Letter>,
}

impl From<Vec<Letter>> for MonodromyWord {
    fn from(v: Vec<Letter>) -> Self {
        reduce_word(v)
    }
}

impl From<MonodromyWord> for Vec<Letter> {
    fn from(w: MonodromyWord) -> Self {
        w.letters
    }
}

/// Free reduction: merges adjacent equal labels and drops zero exponents.
///
/// # Panics
/// If a merged exponent overflows `i64`.
pub fn reduce_word<I: IntoIterator<Item = Letter>>(letters: I) -> MonodromyWord {
    let mut out: Vec<Letter> = Vec::new();
    for l in letters {
        if l.exp == 0 {
            continue;
        }
        match out.last_mut() {
            Some(last) if last.label == l.label => {
                last.exp = last.exp.checked_add(l.exp).expect("exponent overflow");
                if last.exp == 0 {
                    out.pop();
                }
            }
            _ => out.push(l),
        }
    }
    MonodromyWord { letters: out }
}

impl MonodromyWord {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn single(label: &str, exp: i64) -> Self {
        reduce_word([Letter::new(label, exp)])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &MonodromyWord) -> MonodromyWord {
        reduce_word(self.letters.iter().chain(other.letters.iter()).cloned())
    }

    pub fn pow(&self, q: u32) -> MonodromyWord {
        let mut acc = MonodromyWord::identity();
        for _ in 0..q {
            acc = acc.compose(self);
        }
        acc
    }

    pub fn inverse(&self) -> MonodromyWord {
        reduce_word(self.letters.iter().rev().map(|l| Letter::new(&l.label, -l.exp)))
    }

    /// Distinct labels, in order of first appearance.
    pub fn labels(&self) -> Vec<&str> {
        let mut v: Vec<&str> = Vec::new();
        for l in &self.letters {
            if !v.contains(&l.label.as_str()) {
                v.push(&l.label);
            }
        }
        v
    }

    /// The exponent if the word is `label^k` (k = 0 for the identity).
    pub fn single_exponent(&self, label: &str) -> Option<i64> {
        match self.letters.as_slice() {
            [] => Some(0),
            [l] if l.label == label => Some(l.exp),
            _ => None,
        }
    }

    pub fn all_positive(&self) -> bool {
        self.letters.iter().all(|l| l.exp > 0)
    }
}

impl fmt::Display for MonodromyWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("id");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if l.exp == 1 {
                write!(f, "{}", l.label)?;
            } else {
                write!(f, "{}^{}", l.label, l.exp)?;
            }
        }
        Ok(())
    }
}

/// Parses `a^2 b^-1 a`, or `id` for the empty word.
impl FromStr for MonodromyWord {
    type Err = SurgeryError;

    fn from_str(s: &str) -> Result<Self, SurgeryError> {
        let s = s.trim();
        if s == "id" {
            return Ok(Self::identity());
        }
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            let (label, exp) = match tok.split_once('^') {
                Some((l, e)) => (l, e.parse::<i64>().map_err(|_| SurgeryError::Parse("bad exponent"))?),
                None => (tok, 1),
            };
            if !valid_label(label) {
                return Err(SurgeryError::Parse("bad sphere label"));
            }
            if exp == 0 {
                return Err(SurgeryError::ZeroExponent);
            }
            letters.push(Letter::new(label, exp));
        }
        Ok(reduce_word(letters))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn w(v: &[(&str, i64)]) -> MonodromyWord {
        reduce_word(v.iter().map(|(l, e)| Letter::new(l, *e)))
    }

    #[test]
    fn reduction_examples() {
        assert!(w(&[("a", 2), ("a", -2)]).is_identity());
        assert_eq!(w(&[("a", 1), ("b", 1), ("b", -1), ("a", 1)]), w(&[("a", 2)]));
        assert_eq!(w(&[("a", 1), ("b", 1)]).letters().len(), 2);
    }

    #[test]
    fn group_operations() {
        let x = w(&[("a", 1), ("b", -2)]);
        assert!(x.compose(&x.inverse()).is_identity());
        assert_eq!(x.pow(0), MonodromyWord::identity());
        assert_eq!(x.pow(2).letters().len(), 4);
        assert_eq!(w(&[("L", 3)]).pow(2), w(&[("L", 6)]));
        assert_eq!(x.labels(), vec!["a", "b"]);
    }

    #[test]
    fn text_round_trip() {
        let x: MonodromyWord = "a^2 b^-1 a".parse().unwrap();
        assert_eq!(x.to_string(), "a^2 b^-1 a");
        assert_eq!(x.to_string().parse::<MonodromyWord>().unwrap(), x);
        assert_eq!("id".parse::<MonodromyWord>().unwrap(), MonodromyWord::identity());
        assert_eq!("a a^-1".parse::<MonodromyWord>().unwrap().to_string(), "id");
        assert!("a^0".parse::<MonodromyWord>().is_err());
        assert!("a^x".parse::<MonodromyWord>().is_err());
    }
}
