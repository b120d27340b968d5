use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::flags::{FillabilityFlags, Tri};
use super::page::PageSpec;
use super::word::MonodromyWord;
use super::{valid_label, SurgeryError};

/// A page together with a monodromy word over its spheres.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OpenBook {
    page: PageSpec,
    word: MonodromyWord,
}

impl OpenBook {
    pub fn new(page: PageSpec, word: MonodromyWord) -> Result<Self, SurgeryError> {
        check_labels(&page, &word)?;
        Ok(OpenBook { page, word })
    }
    pub fn page(&self) -> &PageSpec {
        &self.page
    }
    pub fn word(&self) -> &MonodromyWord {
        &self.word
    }
}

pub(crate) fn check_labels(page: &PageSpec, word: &MonodromyWord) -> Result<(), SurgeryError> {
    match word.labels().into_iter().find(|l| !page.has_sphere(l)) {
        Some(l) => Err(SurgeryError::UnknownSphere(l.to_string())),
        None => Ok(()),
    }
}

/// How a manifold was built from others.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Glued {
    /// `base` with a neighborhood of the sphere `along` removed and glued to
    /// `summand` along the zero section of its page.
    LiouvilleSum {
        base: Box<ManifoldDescriptor>,
        summand: Box<ManifoldDescriptor>,
        along: String,
        parameter: String,
    },
    /// q-fold cyclic cover branched over the binding of `ribbon`.
    BranchedCover {
        base: Box<ManifoldDescriptor>,
        ribbon: String,
        q: u32,
    },
    /// The surface-bundle-like manifold M_(Σ,Φ,Ψ).
    Fibered {
        page: PageSpec,
        phi: MonodromyWord,
        psi: MonodromyWord,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Presentation {
    OpenBook(OpenBook),
    Glued(Glued),
    Catalog { name: String },
}

/// A Legendrian sphere available for surgery.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SphereRef {
    pub label: String,
    /// Bounds a standard Legendrian disk in a Darboux ball.
    pub standard: bool,
    /// Set on the push-off created by a surgery along this label.
    pub pushoff_of: Option<String>,
}

impl SphereRef {
    pub fn plain(label: &str, standard: bool) -> Self {
        SphereRef {
            label: label.to_string(),
            standard,
            pushoff_of: None,
        }
    }
}

/// A Liouville hypersurface whose boundary can serve as a branch locus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ribbon {
    pub label: String,
    pub stein: bool,
}

/// One operation in a descriptor's history.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub op: String,
    pub detail: String,
}

impl Step {
    pub fn new(op: &str, detail: String) -> Self {
        Step {
            op: op.to_string(),
            detail,
        }
    }
}

/// A contact (2n+1)-manifold known through one presentation, what has been
/// established about its fillability, and how it was obtained.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifoldDescriptor {
    pub dim: u32,
    pub presentation: Presentation,
    /// Name of a recognized manifold, if any.
    pub identity: Option<String>,
    pub flags: FillabilityFlags,
    pub spheres: Vec<SphereRef>,
    pub ribbons: Vec<Ribbon>,
    pub history: Vec<Step>,
}

impl ManifoldDescriptor {
    /// A named manifold supplied by the caller, with whatever is known about it.
    pub fn catalog(
        name: &str,
        dim: u32,
        flags: FillabilityFlags,
        spheres: Vec<SphereRef>,
        ribbons: Vec<Ribbon>,
    ) -> Result<Self, SurgeryError> {
        if dim < 3 || dim.is_multiple_of(2) {
            return Err(SurgeryError::InvalidDimension(dim));
        }
        for s in &spheres {
            if !valid_label(&s.label) {
                return Err(SurgeryError::Parse("bad sphere label"));
            }
        }
        Ok(ManifoldDescriptor {
            dim,
            presentation: Presentation::Catalog { name: name.to_string() },
            identity: Some(name.to_string()),
            flags,
            spheres,
            ribbons,
            history: Vec::new(),
        })
    }

    /// Half of dim − 1.
    pub fn n(&self) -> u32 {
        (self.dim - 1) / 2
    }

    pub fn open_book(&self) -> Option<&OpenBook> {
        match &self.presentation {
            Presentation::OpenBook(ob) => Some(ob),
            _ => None,
        }
    }

    pub fn sphere(&self, label: &str) -> Option<&SphereRef> {
        self.spheres.iter().find(|s| s.label == label)
    }

    /// Same dimension and presentation, recursively, ignoring history,
    /// recognized names and flags. Surgery parameters are compared.
    pub fn word_equal(&self, other: &ManifoldDescriptor) -> bool {
        self.dim == other.dim && presentation_equal(&self.presentation, &other.presentation)
    }

    /// Deterministic JSON text; keys appear in declaration order.
    pub fn to_text(&self) -> String {
        serde_json::to_string_pretty(self).expect("descriptor serializes")
    }

    pub fn from_text(s: &str) -> Result<Self, SurgeryError> {
        serde_json::from_str(s).map_err(|_| SurgeryError::Parse("malformed descriptor text"))
    }

    pub(crate) fn with_step(mut self, step: Step) -> Self {
        self.history.push(step);
        self
    }
}

fn presentation_equal(a: &Presentation, b: &Presentation) -> bool {
    match (a, b) {
        (Presentation::OpenBook(x), Presentation::OpenBook(y)) => x == y,
        (Presentation::Catalog { name: x }, Presentation::Catalog { name: y }) => x == y,
        (Presentation::Glued(x), Presentation::Glued(y)) => match (x, y) {
            (
                Glued::LiouvilleSum {
                    base: b1,
                    summand: s1,
                    along: a1,
                    parameter: p1,
                },
                Glued::LiouvilleSum {
                    base: b2,
                    summand: s2,
                    along: a2,
                    parameter: p2,
                },
            ) => a1 == a2 && p1 == p2 && b1.word_equal(b2) && s1.word_equal(s2),
            (
                Glued::BranchedCover {
                    base: b1,
                    ribbon: r1,
                    q: q1,
                },
                Glued::BranchedCover {
                    base: b2,
                    ribbon: r2,
                    q: q2,
                },
            ) => r1 == r2 && q1 == q2 && b1.word_equal(b2),
            (
                Glued::Fibered {
                    page: g1,
                    phi: f1,
                    psi: s1,
                },
                Glued::Fibered {
                    page: g2,
                    phi: f2,
                    psi: s2,
                },
            ) => g1 == g2 && f1 == f2 && s1 == s2,
            _ => false,
        },
        _ => false,
    }
}

/// Flags that follow from the shape of the monodromy alone: the identity is
/// filled by Σ × D², and positive twists are Weinstein handles on that.
pub fn open_book_flags(page: &PageSpec, word: &MonodromyWord) -> FillabilityFlags {
    let stein = if page.stein() { Tri::True } else { Tri::Unknown };
    if word.is_identity() || word.all_positive() {
        FillabilityFlags::new(Tri::Unknown, Tri::Unknown, Tri::True, stein).unwrap()
    } else {
        FillabilityFlags::unknown()
    }
}

/// What is known about M_{n,k} = (D*S^n, τ^k).
pub(crate) fn catalog_facts(n: u32, k: i64) -> (Option<String>, FillabilityFlags) {
    let stein = FillabilityFlags::stein_fillable();
    match k {
        1 => (Some(format!("standard S^{}", 2 * n + 1)), stein),
        0 => (Some(format!("boundary of D^2 x D*S^{n}")), stein),
        2 => (Some(format!("S*S^{} canonical", n + 1)), stein),
        -1 => (
            Some(format!("S^{} twisted by tau^-1", 2 * n + 1)),
            FillabilityFlags::not_fillable(),
        ),
        k if k > 0 => (None, stein),
        _ => (None, FillabilityFlags::unknown()),
    }
}

/// Descriptor of M_(Σ,Φ), recognizing the M_{n,k} family.
pub fn open_book_descriptor(ob: OpenBook) -> Result<ManifoldDescriptor, SurgeryError> {
    let page = ob.page();
    let n = page.half_dim();
    let mut flags = open_book_flags(page, ob.word());
    let mut identity = None;
    let mut standard_l = false;
    if *page == PageSpec::cotangent_disk(n)? {
        if let Some(k) = ob.word().single_exponent("L") {
            let (name, facts) = catalog_facts(n, k);
            flags = flags.merge(&facts)?;
            identity = name;
            standard_l = k == 1;
        }
    } else if page.spheres().is_empty() && ob.word().is_identity() && page.handles().map(|h| h.len()) == Some(1) {
        // a ball page with trivial monodromy: the standard sphere
        let (name, facts) = catalog_facts(n, 1);
        flags = flags.merge(&facts)?;
        identity = name;
    }
    let spheres = page
        .spheres()
        .iter()
        .map(|s| SphereRef::plain(s, standard_l && s == "L"))
        .collect();
    Ok(ManifoldDescriptor {
        dim: page.manifold_dim(),
        presentation: Presentation::OpenBook(ob),
        identity,
        flags,
        spheres,
        ribbons: Vec::new(),
        history: Vec::new(),
    })
}

/// M_{n,k}: the open book with page D*S^n and monodromy τ^k.
#[allow(non_snake_case)]
pub fn catalog_M_nk(n: u32, k: i64) -> Result<ManifoldDescriptor, SurgeryError> {
    if n == 0 {
        return Err(SurgeryError::InvalidDimension(1));
    }
    let ob = OpenBook::new(PageSpec::cotangent_disk(n)?, MonodromyWord::single("L", k))?;
    open_book_descriptor(ob)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_entries() {
        let s = catalog_M_nk(2, 1).unwrap();
        assert_eq!(s.identity.as_deref(), Some("standard S^5"));
        assert_eq!(s.flags, FillabilityFlags::stein_fillable());
        assert!(s.sphere("L").unwrap().standard);
        let m = catalog_M_nk(2, -1).unwrap();
        assert_eq!(m.flags.symplectically(), Tri::False);
        assert!(!m.sphere("L").unwrap().standard);
        assert_eq!(catalog_M_nk(3, 2).unwrap().identity.as_deref(), Some("S*S^4 canonical"));
        assert_eq!(catalog_M_nk(2, 0).unwrap().flags.stein(), Tri::True);
        assert_eq!(catalog_M_nk(2, 5).unwrap().flags.stein(), Tri::True);
        assert_eq!(catalog_M_nk(2, -3).unwrap().flags, FillabilityFlags::unknown());
        assert!(catalog_M_nk(0, 1).is_err());
    }

    #[test]
    fn unknown_label_rejected() {
        let p = PageSpec::cotangent_disk(1).unwrap();
        assert_eq!(
            OpenBook::new(p, MonodromyWord::single("x", 1)),
            Err(SurgeryError::UnknownSphere("x".into()))
        );
    }

    #[test]
    fn text_round_trip() {
        let d = catalog_M_nk(2, 2).unwrap();
        let t = d.to_text();
        assert_eq!(ManifoldDescriptor::from_text(&t).unwrap(), d);
        assert_eq!(t, catalog_M_nk(2, 2).unwrap().to_text());
    }

    #[test]
    fn ball_page_identity_is_standard_sphere() {
        let ob = OpenBook::new(PageSpec::ball(1).unwrap(), MonodromyWord::identity()).unwrap();
        let d = open_book_descriptor(ob).unwrap();
        assert_eq!(d.identity.as_deref(), Some("standard S^3"));
    }
}
