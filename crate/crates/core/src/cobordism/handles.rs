use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::homology::{Group, HomologyProfile};
use super::CobordismError;
use crate::report::ConditionReport;
use crate::surgery::PageSpec;

/// A Weinstein-type handle of the given index in a (2n+2)-manifold.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Handle {
    ambient_dim: u32,
    index: u32,
    provenance: String,
}

impl Handle {
    pub fn new(ambient_dim: u32, index: u32, provenance: &str) -> Result<Self, CobordismError> {
        if ambient_dim == 0 || ambient_dim % 2 == 1 {
            return Err(CobordismError::InvalidParameter(
                "ambient dimension must be even and positive",
            ));
        }
        if index > ambient_dim {
            return Err(CobordismError::IndexOutOfRange { index, ambient_dim });
        }
        Ok(Handle {
            ambient_dim,
            index,
            provenance: provenance.to_string(),
        })
    }
    pub fn ambient_dim(&self) -> u32 {
        self.ambient_dim
    }
    pub fn index(&self) -> u32 {
        self.index
    }
    pub fn provenance(&self) -> &str {
        &self.provenance
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Exactness {
    Exact,
    SteinCandidate,
    Weak,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CobordismSpec {
    pub negative_boundary: Vec<String>,
    pub positive_boundary: String,
    pub handles: Vec<Handle>,
    pub exactness: Exactness,
}

impl CobordismSpec {
    pub fn new(
        negative_boundary: Vec<String>,
        positive_boundary: String,
        handles: Vec<Handle>,
        exactness: Exactness,
    ) -> Result<Self, CobordismError> {
        if let Some(first) = handles.first() {
            let d = first.ambient_dim;
            if let Some(h) = handles.iter().find(|h| h.ambient_dim != d) {
                return Err(CobordismError::DimensionMismatch {
                    expected: d,
                    got: h.ambient_dim,
                });
            }
            if exactness == Exactness::SteinCandidate && handles.iter().any(|h| h.index > d / 2) {
                return Err(CobordismError::NotSteinCandidate);
            }
        }
        Ok(CobordismSpec {
            negative_boundary,
            positive_boundary,
            handles,
            exactness,
        })
    }
}

/// Handles of the cobordism for a Liouville connect sum along `page`: each
/// page k-handle, thickened by the interval, becomes an ambient (k+1)-handle.
pub fn sum_cobordism(page: &PageSpec, ambient_half_dim: u32) -> Result<Vec<Handle>, CobordismError> {
    if ambient_half_dim != page.half_dim() + 1 {
        return Err(CobordismError::DimensionMismatch {
            expected: 2 * page.half_dim() + 2,
            got: 2 * ambient_half_dim,
        });
    }
    let hs = page.handles().ok_or(CobordismError::MissingDecomposition)?;
    let mut out = Vec::new();
    for h in hs {
        for i in 0..h.count {
            out.push(Handle::new(
                2 * ambient_half_dim,
                h.index + 1,
                &format!("{} {}-handle #{}", page.name(), h.index, i + 1),
            )?);
        }
    }
    Ok(out)
}

/// The full cobordism record; Stein candidate exactly when the page is Stein.
pub fn sum_cobordism_spec(
    page: &PageSpec,
    negative_boundary: Vec<String>,
    positive_boundary: String,
) -> Result<CobordismSpec, CobordismError> {
    let handles = sum_cobordism(page, page.half_dim() + 1)?;
    let ex = if page.stein() {
        Exactness::SteinCandidate
    } else {
        Exactness::Exact
    };
    CobordismSpec::new(negative_boundary, positive_boundary, handles, ex)
}

/// χ of a space built from one with Euler characteristic `base_chi`.
pub fn euler_characteristic(base_chi: i64, handles: &[Handle]) -> i64 {
    base_chi
        + handles
            .iter()
            .map(|h| if h.index % 2 == 0 { 1 } else { -1 })
            .sum::<i64>()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SteinHomologyReport {
    /// Margin is (n+1) − largest index, so it fails once any index exceeds n+1.
    pub report: ConditionReport,
    /// Index of the offending handle; a new class can appear in this degree.
    pub violating_degree: Option<u32>,
    /// Degrees k > n+1 in which H_k(W) must agree with H_k(M), with H_k(M).
    pub preserved: Vec<(u32, Group)>,
}

/// Whether a handle list is compatible with the Stein-type homology bound:
/// all indices at most n+1, hence H_k(W) ≅ H_k(M) for k > n+1.
pub fn stein_homology_check(
    handles: &[Handle],
    n: u32,
    boundary_profile: &HomologyProfile,
) -> Result<SteinHomologyReport, CobordismError> {
    let d = 2 * n + 2;
    if let Some(h) = handles.iter().find(|h| h.ambient_dim != d) {
        return Err(CobordismError::DimensionMismatch {
            expected: d,
            got: h.ambient_dim,
        });
    }
    let max = handles.iter().map(|h| h.index).max();
    let margin = (n + 1) as f64 - max.unwrap_or(0) as f64;
    let report = ConditionReport::from_margin(margin, 0.5, handles.len());
    let violating_degree = max.filter(|&m| m > n + 1);
    let preserved = if report.passed {
        (n + 2..=d).map(|k| (k, boundary_profile.get(k as usize))).collect()
    } else {
        Vec::new()
    };
    Ok(SteinHomologyReport {
        report,
        violating_degree,
        preserved,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub degree: u32,
    /// H_{2n}(M).
    pub boundary: Group,
    /// H_{2n}(W) = H_{2n}(M) ⊕ Z.
    pub cobordism: Group,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SteinObstructionReport {
    pub n: u32,
    /// `None` when the hypothesis i₁[T] = i₂[T] is not met; nothing is claimed then.
    pub certificate: Option<Certificate>,
}

/// Sum along two Liouville embeddings of [−1,1] × T with T of dimension
/// 2n − 1. If both copies of T are homologous, H_{2n}(W) ≅ H_{2n}(M) ⊕ Z, which
/// a Stein-type cobordism cannot have since 2n > n + 1.
pub fn not_stein_certificate(
    t_dim: u32,
    classes_equal: bool,
    base_profile: &HomologyProfile,
) -> Result<SteinObstructionReport, CobordismError> {
    if t_dim.is_multiple_of(2) || t_dim < 3 {
        return Err(CobordismError::InvalidParameter(
            "T must have odd dimension 2n-1 with n > 1",
        ));
    }
    let n = t_dim.div_ceil(2);
    let certificate = classes_equal.then(|| {
        let boundary = base_profile.get(2 * n as usize);
        Certificate {
            degree: 2 * n,
            cobordism: boundary.plus_z(),
            boundary,
        }
    });
    Ok(SteinObstructionReport { n, certificate })
}

/// The handlebody example: g sums on ∂(D² × [−1,1] × T) identifying pages,
/// giving a Liouville filling H_g × T. Pages of one open book are isotopic,
/// so every sum meets the homology hypothesis.
pub fn handlebody_certificate(
    g: u32,
    t_dim: u32,
    base_profile: &HomologyProfile,
) -> Result<SteinObstructionReport, CobordismError> {
    if g == 0 {
        return Err(CobordismError::InvalidParameter("genus must be at least 1"));
    }
    not_stein_certificate(t_dim, true, base_profile)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn cotangent_circle_page() {
        let hs = sum_cobordism(&PageSpec::cotangent_disk(1).unwrap(), 2).unwrap();
        assert_eq!(hs.iter().map(Handle::index).collect::<Vec<_>>(), vec![1, 2]);
        assert!(hs.iter().all(|h| h.ambient_dim() == 4));
        assert_eq!(euler_characteristic(1, &hs), 1);
    }

    #[test]
    fn ball_and_genus_one_pages() {
        let b = sum_cobordism(&PageSpec::ball(2).unwrap(), 3).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].index(), 1);
        let g = sum_cobordism(&PageSpec::genus_one(), 2).unwrap();
        assert_eq!(g.iter().map(Handle::index).collect::<Vec<_>>(), vec![1, 2, 2]);
        assert!(sum_cobordism(&PageSpec::genus_one(), 3).is_err());
        let bare = PageSpec::new("P", 1, None, false, vec![]).unwrap();
        assert_eq!(sum_cobordism(&bare, 2), Err(CobordismError::MissingDecomposition));
    }

    #[test]
    fn euler_examples() {
        assert_eq!(euler_characteristic(1, &[]), 1);
        let two = Handle::new(4, 2, "x").unwrap();
        assert_eq!(euler_characteristic(1, &[two]), 2);
    }

    #[test]
    fn homology_check() {
        let n = 2;
        let ok = sum_cobordism(&PageSpec::cotangent_disk(2).unwrap(), 3).unwrap();
        let r = stein_homology_check(&ok, n, &HomologyProfile::sphere(5)).unwrap();
        assert!(r.report.passed);
        assert_eq!(r.preserved.len(), 3);
        let bad = vec![Handle::new(6, 4, "x").unwrap()];
        let r = stein_homology_check(&bad, n, &HomologyProfile::sphere(5)).unwrap();
        assert!(!r.report.passed);
        assert_eq!(r.violating_degree, Some(4));
        let empty = stein_homology_check(&[], n, &HomologyProfile::sphere(5)).unwrap();
        assert!(empty.report.passed);
        assert_eq!(empty.preserved[2], (6, Group::zero()));
    }

    #[test]
    fn stein_candidate_validation() {
        let h = vec![Handle::new(4, 3, "x").unwrap()];
        assert_eq!(
            CobordismSpec::new(vec![], "M".into(), h, Exactness::SteinCandidate),
            Err(CobordismError::NotSteinCandidate)
        );
        let mixed = vec![Handle::new(4, 1, "x").unwrap(), Handle::new(6, 1, "y").unwrap()];
        assert!(CobordismSpec::new(vec![], "M".into(), mixed, Exactness::Exact).is_err());
        assert!(Handle::new(4, 5, "x").is_err());
    }

    #[test]
    fn certificates() {
        let p = HomologyProfile::sphere_product(2, 3);
        let c = not_stein_certificate(3, true, &p).unwrap().certificate.unwrap();
        assert_eq!(c.degree, 4);
        assert_eq!(c.cobordism.rank(), c.boundary.rank() + 1);
        assert!(not_stein_certificate(3, false, &p).unwrap().certificate.is_none());
        assert!(not_stein_certificate(1, true, &p).is_err());
        for g in 1..5 {
            assert!(handlebody_certificate(g, 5, &p).unwrap().certificate.is_some());
        }
        assert!(handlebody_certificate(0, 5, &p).is_err());
    }
}
