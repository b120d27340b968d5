use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::{flags::Tri, valid_label, SurgeryError};

/// `count` handles of index `index` in a page's handle decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HandleCount {
    pub index: u32,
    pub count: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
struct RawPage {
    name: String,
    half_dim: u32,
    handles: Option<Vec<HandleCount>>,
    stein: bool,
    spheres: Vec<String>,
}

/// A 2n-dimensional Liouville domain, described by name, handle counts and
/// the labeled exact Lagrangian spheres available as twist supports.
///
/// Handle counts are kept sorted by index with duplicates merged, so equal
/// structures compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPage", into = "RawPage")]
pub struct PageSpec {
    name: String,
    half_dim: u32,
    handles: Option<Vec<HandleCount>>,
    stein: bool,
    spheres: Vec<String>,
}

impl From<PageSpec> for RawPage {
    fn from(p: PageSpec) -> Self {
        RawPage {
            name: p.name,
            half_dim: p.half_dim,
            handles: p.handles,
            stein: p.stein,
            spheres: p.spheres,
        }
    }
}

impl TryFrom<RawPage> for PageSpec {
    type Error = SurgeryError;
    fn try_from(r: RawPage) -> Result<Self, SurgeryError> {
        PageSpec::new(&r.name, r.half_dim, r.handles, r.stein, r.spheres)
    }
}

impl PageSpec {
    pub fn new(
        name: &str,
        half_dim: u32,
        handles: Option<Vec<HandleCount>>,
        stein: bool,
        spheres: Vec<String>,
    ) -> Result<Self, SurgeryError> {
        if name.is_empty() || name.chars().any(char::is_whitespace) {
            return Err(SurgeryError::InvalidPage(format!("bad page name {name:?}")));
        }
        if half_dim == 0 {
            return Err(SurgeryError::InvalidPage("page dimension must be positive".into()));
        }
        let handles = match handles {
            None if stein => {
                return Err(SurgeryError::InvalidPage(
                    "a Stein page needs a handle decomposition".into(),
                ))
            }
            None => None,
            Some(list) => Some(canonical_handles(list, half_dim)?),
        };
        for (i, s) in spheres.iter().enumerate() {
            if !valid_label(s) {
                return Err(SurgeryError::InvalidPage(format!("bad sphere label {s:?}")));
            }
            if spheres[..i].contains(s) {
                return Err(SurgeryError::InvalidPage(format!("duplicate sphere label {s}")));
            }
        }
        Ok(PageSpec {
            name: name.to_string(),
            half_dim,
            handles,
            stein,
            spheres,
        })
    }

    /// The disk cotangent bundle D*S^n: one 0-handle, one n-handle whose core
    /// is the zero section `L`.
    pub fn cotangent_disk(n: u32) -> Result<Self, SurgeryError> {
        Self::new(
            &format!("D*S^{n}"),
            n,
            Some(vec![
                HandleCount { index: 0, count: 1 },
                HandleCount { index: n, count: 1 },
            ]),
            true,
            vec!["L".into()],
        )
    }

    /// The ball D^{2n}: a single 0-handle.
    pub fn ball(n: u32) -> Result<Self, SurgeryError> {
        Self::new(
            &format!("D^{}", 2 * n),
            n,
            Some(vec![HandleCount { index: 0, count: 1 }]),
            true,
            Vec::new(),
        )
    }

    /// Genus one surface with one boundary component, cores `a`, `b`.
    pub fn genus_one() -> Self {
        Self::new(
            "Sigma_1_1",
            1,
            Some(vec![
                HandleCount { index: 0, count: 1 },
                HandleCount { index: 1, count: 2 },
            ]),
            true,
            vec!["a".into(), "b".into()],
        )
        .expect("valid")
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn half_dim(&self) -> u32 {
        self.half_dim
    }
    /// Dimension of the page, 2n.
    pub fn dim(&self) -> u32 {
        2 * self.half_dim
    }
    /// Dimension of the open-book manifold, 2n + 1.
    pub fn manifold_dim(&self) -> u32 {
        2 * self.half_dim + 1
    }
    pub fn handles(&self) -> Option<&[HandleCount]> {
        self.handles.as_deref()
    }
    pub fn stein(&self) -> bool {
        self.stein
    }
    pub fn spheres(&self) -> &[String] {
        &self.spheres
    }
    pub fn has_sphere(&self, label: &str) -> bool {
        self.spheres.iter().any(|s| s == label)
    }

    pub fn handle_count(&self, index: u32) -> u32 {
        self.handles
            .iter()
            .flatten()
            .filter(|h| h.index == index)
            .map(|h| h.count)
            .sum()
    }

    /// Euler characteristic of the page, when a decomposition is present.
    pub fn euler_characteristic(&self) -> Option<i64> {
        self.handles.as_ref().map(|hs| {
            hs.iter()
                .map(|h| {
                    if h.index % 2 == 0 {
                        h.count as i64
                    } else {
                        -(h.count as i64)
                    }
                })
                .sum()
        })
    }

    /// Whether H²(Σ; R) = 0. Known true when there are no 2-handles, since the
    /// cellular cochains in degree 2 then vanish; otherwise undecided here.
    pub fn h2_vanishes(&self) -> Tri {
        match &self.handles {
            Some(_) if self.handle_count(2) == 0 => Tri::True,
            _ => Tri::Unknown,
        }
    }
}

fn canonical_handles(mut list: Vec<HandleCount>, n: u32) -> Result<Vec<HandleCount>, SurgeryError> {
    if let Some(h) = list.iter().find(|h| h.index > n) {
        return Err(SurgeryError::InvalidPage(format!(
            "handle index {} exceeds half dimension {n}",
            h.index
        )));
    }
    list.sort();
    let mut out: Vec<HandleCount> = Vec::new();
    for h in list.into_iter().filter(|h| h.count > 0) {
        match out.last_mut() {
            Some(last) if last.index == h.index => last.count += h.count,
            _ => out.push(h),
        }
    }
    if out.first().map(|h| h.index) != Some(0) {
        return Err(SurgeryError::InvalidPage("a page needs at least one 0-handle".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn handles_are_canonical() {
        let a = PageSpec::new(
            "P",
            2,
            Some(vec![
                HandleCount { index: 2, count: 1 },
                HandleCount { index: 0, count: 1 },
                HandleCount { index: 2, count: 2 },
                HandleCount { index: 1, count: 0 },
            ]),
            false,
            vec![],
        )
        .unwrap();
        assert_eq!(
            a.handles().unwrap(),
            &[HandleCount { index: 0, count: 1 }, HandleCount { index: 2, count: 3 }]
        );
        assert_eq!(a.h2_vanishes(), Tri::Unknown);
        assert_eq!(a.euler_characteristic(), Some(4));
    }

    #[test]
    fn rejects_bad_pages() {
        let no_zero = Some(vec![HandleCount { index: 1, count: 1 }]);
        assert!(PageSpec::new("P", 1, no_zero, false, vec![]).is_err());
        let too_high = Some(vec![
            HandleCount { index: 0, count: 1 },
            HandleCount { index: 3, count: 1 },
        ]);
        assert!(PageSpec::new("P", 2, too_high, false, vec![]).is_err());
        assert!(PageSpec::new("P", 2, None, true, vec![]).is_err());
        assert!(PageSpec::new("P", 2, None, false, vec!["a".into(), "a".into()]).is_err());
        assert!(PageSpec::new("P", 2, None, false, vec!["a b".into()]).is_err());
    }

    #[test]
    fn catalog_pages() {
        let p = PageSpec::cotangent_disk(2).unwrap();
        assert_eq!(p.name(), "D*S^2");
        assert_eq!(p.h2_vanishes(), Tri::Unknown);
        assert_eq!(PageSpec::cotangent_disk(3).unwrap().h2_vanishes(), Tri::True);
        assert_eq!(PageSpec::genus_one().euler_characteristic(), Some(-1));
        assert_eq!(PageSpec::ball(2).unwrap().name(), "D^4");
    }
}
