use core::fmt;
use core::str::FromStr;

use serde::{Deserialize, Serialize};

use super::SurgeryError;

/// Three-valued truth. Ordered `False < Unknown < True` so that "more is known
/// to hold" compares greater.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tri {
    False,
    Unknown,
    True,
}

impl Tri {
    pub const ALL: [Tri; 3] = [Tri::False, Tri::Unknown, Tri::True];

    pub fn from_bool(b: bool) -> Tri {
        if b {
            Tri::True
        } else {
            Tri::False
        }
    }

    pub fn is_true(self) -> bool {
        self == Tri::True
    }

    /// Both premises of an implication hold. Anything short of that tells us
    /// nothing, so the result is never `False`.
    pub fn both(self, other: Tri) -> Tri {
        if self.is_true() && other.is_true() {
            Tri::True
        } else {
            Tri::Unknown
        }
    }

    /// Combine two independent pieces of knowledge about the same property.
    /// `None` on contradiction.
    pub fn merge(self, other: Tri) -> Option<Tri> {
        match (self, other) {
            (Tri::Unknown, x) | (x, Tri::Unknown) => Some(x),
            (a, b) if a == b => Some(a),
            _ => None,
        }
    }
}

impl fmt::Display for Tri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tri::False => "false",
            Tri::Unknown => "unknown",
            Tri::True => "true",
        })
    }
}

impl FromStr for Tri {
    type Err = SurgeryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "true" => Ok(Tri::True),
            "false" => Ok(Tri::False),
            "unknown" => Ok(Tri::Unknown),
            _ => Err(SurgeryError::Parse("expected true, false or unknown")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
struct RawFlags {
    weakly: Tri,
    symplectically: Tri,
    exactly: Tri,
    stein: Tri,
}

/// Fillability knowledge about one contact manifold.
///
/// Always monotonically closed: stein ⇒ exactly ⇒ symplectically ⇒ weakly, and
/// `false` flows the other way.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawFlags", into = "RawFlags")]
pub struct FillabilityFlags {
    weakly: Tri,
    symplectically: Tri,
    exactly: Tri,
    stein: Tri,
}

impl From<FillabilityFlags> for RawFlags {
    fn from(f: FillabilityFlags) -> Self {
        RawFlags {
            weakly: f.weakly,
            symplectically: f.symplectically,
            exactly: f.exactly,
            stein: f.stein,
        }
    }
}

impl TryFrom<RawFlags> for FillabilityFlags {
    type Error = SurgeryError;

    fn try_from(r: RawFlags) -> Result<Self, Self::Error> {
        FillabilityFlags::new(r.weakly, r.symplectically, r.exactly, r.stein)
    }
}

impl FillabilityFlags {
    /// Applies the monotone closure. Errors if the inputs contradict it, e.g.
    /// `exactly = true` with `weakly = false`.
    pub fn new(weakly: Tri, symplectically: Tri, exactly: Tri, stein: Tri) -> Result<Self, SurgeryError> {
        // strongest first
        let mut l = [stein, exactly, symplectically, weakly];
        for i in 0..3 {
            if l[i] == Tri::True {
                if l[i + 1] == Tri::False {
                    return Err(SurgeryError::InconsistentFlags);
                }
                l[i + 1] = Tri::True;
            }
        }
        for i in (1..4).rev() {
            if l[i] == Tri::False {
                l[i - 1] = Tri::False;
            }
        }
        Ok(FillabilityFlags {
            stein: l[0],
            exactly: l[1],
            symplectically: l[2],
            weakly: l[3],
        })
    }

    pub fn unknown() -> Self {
        Self::uniform(Tri::Unknown)
    }

    pub fn uniform(t: Tri) -> Self {
        FillabilityFlags {
            weakly: t,
            symplectically: t,
            exactly: t,
            stein: t,
        }
    }

    /// Everything true.
    pub fn stein_fillable() -> Self {
        Self::uniform(Tri::True)
    }

    pub fn exactly_fillable() -> Self {
        Self::new(Tri::Unknown, Tri::Unknown, Tri::True, Tri::Unknown).unwrap()
    }

    /// Not even weakly fillable.
    pub fn not_fillable() -> Self {
        Self::uniform(Tri::False)
    }

    pub fn weakly(&self) -> Tri {
        self.weakly
    }
    pub fn symplectically(&self) -> Tri {
        self.symplectically
    }
    pub fn exactly(&self) -> Tri {
        self.exactly
    }
    pub fn stein(&self) -> Tri {
        self.stein
    }

    /// `[weakly, symplectically, exactly, stein]`.
    pub fn as_array(&self) -> [Tri; 4] {
        [self.weakly, self.symplectically, self.exactly, self.stein]
    }

    pub fn is_closed(&self) -> bool {
        FillabilityFlags::new(self.weakly, self.symplectically, self.exactly, self.stein)
            .map(|c| c == *self)
            .unwrap_or(false)
    }

    /// Union of knowledge from two sources.
    pub fn merge(&self, other: &FillabilityFlags) -> Result<Self, SurgeryError> {
        let m = |a: Tri, b: Tri| a.merge(b).ok_or(SurgeryError::InconsistentFlags);
        FillabilityFlags::new(
            m(self.weakly, other.weakly)?,
            m(self.symplectically, other.symplectically)?,
            m(self.exactly, other.exactly)?,
            m(self.stein, other.stein)?,
        )
    }
}

impl fmt::Display for FillabilityFlags {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "weakly={} symplectically={} exactly={} stein={}",
            self.weakly, self.symplectically, self.exactly, self.stein
        )
    }
}

/// Flags of the manifold obtained from two manifolds by the exact cobordism of
/// a Liouville connect sum along a page.
///
/// Symplectic and exact fillability pass through when both inputs have them.
/// Stein passes when the page is Stein, and always in dimension 3 where every
/// page is a surface. Weak fillability passes in dimension 3, and otherwise
/// only when `weak_h2_ok` (the cohomological matching condition on the page)
/// is known to hold. Nothing is ever concluded false.
pub fn fillability_propagate(
    f1: &FillabilityFlags,
    f2: &FillabilityFlags,
    page_stein: bool,
    dim: u32,
    weak_h2_ok: Tri,
) -> FillabilityFlags {
    let stein = if page_stein || dim == 3 {
        f1.stein.both(f2.stein)
    } else {
        Tri::Unknown
    };
    let weakly = if dim == 3 || weak_h2_ok.is_true() {
        f1.weakly.both(f2.weakly)
    } else {
        Tri::Unknown
    };
    FillabilityFlags::new(
        weakly,
        f1.symplectically.both(f2.symplectically),
        f1.exactly.both(f2.exactly),
        stein,
    )
    .expect("no false entries, closure cannot conflict")
}
