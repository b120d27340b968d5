use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use super::CobordismError;

/// A finitely generated abelian group Z^rank ⊕ ⊕ Z/m.
///
/// Torsion orders are kept sorted and all ≥ 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Group {
    rank: u32,
    torsion: Vec<u64>,
}

impl Group {
    pub fn new(rank: u32, mut torsion: Vec<u64>) -> Result<Self, CobordismError> {
        if torsion.iter().any(|&m| m < 2) {
            return Err(CobordismError::InvalidParameter("torsion orders must be at least 2"));
        }
        torsion.sort_unstable();
        Ok(Group { rank, torsion })
    }
    pub fn zero() -> Self {
        Group {
            rank: 0,
            torsion: Vec::new(),
        }
    }
    pub fn free(rank: u32) -> Self {
        Group {
            rank,
            torsion: Vec::new(),
        }
    }
    /// Z/m; trivial for m = 1, Z for m = 0.
    pub fn cyclic(m: u64) -> Self {
        match m {
            0 => Group::free(1),
            1 => Group::zero(),
            m => Group {
                rank: 0,
                torsion: vec![m],
            },
        }
    }
    pub fn rank(&self) -> u32 {
        self.rank
    }
    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
    /// This group ⊕ Z.
    pub fn plus_z(&self) -> Group {
        Group {
            rank: self.rank + 1,
            torsion: self.torsion.clone(),
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut parts: Vec<String> = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|m| format!("Z/{m}")));
        f.write_str(&parts.join("+"))
    }
}

/// Integral homology H_0 .. H_top of a space.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomologyProfile {
    pub groups: Vec<Group>,
}

impl HomologyProfile {
    /// H_k, zero beyond the recorded range.
    pub fn get(&self, k: usize) -> Group {
        self.groups.get(k).cloned().unwrap_or_else(Group::zero)
    }

    pub fn ranks(&self) -> Vec<u32> {
        self.groups.iter().map(Group::rank).collect()
    }

    /// Homology of the sphere S^d.
    pub fn sphere(d: usize) -> Self {
        let mut groups = vec![Group::zero(); d + 1];
        groups[0] = Group::free(1);
        groups[d] = Group::free(groups[d].rank + 1);
        HomologyProfile { groups }
    }

    /// S^a × S^b by Künneth (no torsion appears).
    pub fn sphere_product(a: usize, b: usize) -> Self {
        let mut groups = vec![Group::zero(); a + b + 1];
        for k in [0, a, b, a + b] {
            groups[k] = Group::free(groups[k].rank + 1);
        }
        HomologyProfile { groups }
    }
}

impl fmt::Display for HomologyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, g) in self.groups.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(")")
    }
}

/// Homology of an oriented S^n-bundle over S^{n+1} with Euler number `e`.
///
/// The Gysin sequence in homology reads
/// `H_{k+1}(B) --e--> H_{k-n}(B) -> H_k(E) -> H_k(B) --e--> H_{k-n-1}(B)`;
/// for B = S^{n+1} the only nonzero map is H_{n+1}(B) = Z --e--> H_0(B) = Z,
/// so H_n(E) = Z/|e| and H_{n+1}(E) = ker, which is Z when e = 0 and 0 otherwise.
pub fn sphere_bundle_over_sphere(n: usize, euler: i64) -> Result<HomologyProfile, CobordismError> {
    if n == 0 {
        return Err(CobordismError::InvalidParameter("fiber dimension must be positive"));
    }
    let top = 2 * n + 1;
    let mut groups = vec![Group::zero(); top + 1];
    groups[0] = Group::free(1);
    groups[top] = Group::free(1);
    groups[n] = Group::cyclic(euler.unsigned_abs());
    if euler == 0 {
        groups[n + 1] = Group::free(1);
    }
    Ok(HomologyProfile { groups })
}

/// H_*(S*S^{n+1}; Z): the unit cotangent bundle has Euler number
/// χ(S^{n+1}), which is 2 for odd n and 0 for even n.
pub fn gysin_sphere_bundle_homology(n: usize) -> Result<HomologyProfile, CobordismError> {
    let chi = if n % 2 == 1 { 2 } else { 0 };
    sphere_bundle_over_sphere(n, chi)
}
