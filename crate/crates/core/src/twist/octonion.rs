//! Cayley–Dickson algebras of dimension 4 and 8.
//!
//! Doubling rule (a, b)(c, d) = (ac − d̄b, da + bc̄), conjugation
//! (a, b)* = (a*, −b). Basis e_0 = 1, e_1..e_7 imaginary, in the order the
//! doubling produces them. For quaternions this gives e1 e2 = e3.
//!
//! Resulting octonion products e_i e_j = ±e_k for i < j:
//!
//! ```text
//!      e1   e2   e3   e4   e5   e6   e7
//! e1   -1   e3  -e2   e5  -e4  -e7   e6
//! e2  -e3   -1   e1   e6   e7  -e4  -e5
//! e3   e2  -e1   -1   e7  -e6   e5  -e4
//! ```
//! (remaining rows follow from anticommutativity and the rule above).

use alloc::vec::Vec;
use core::ops::Mul;

fn conj(a: &[f64]) -> Vec<f64> {
    if a.len() == 1 {
        return a.to_vec();
    }
    let h = a.len() / 2;
    let mut out = conj(&a[..h]);
    out.extend(a[h..].iter().map(|x| -x));
    out
}

/// Product in the Cayley–Dickson algebra of dimension a.len() (a power of two).
pub fn cd_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    debug_assert_eq!(a.len(), b.len());
    if a.len() == 1 {
        return alloc::vec![a[0] * b[0]];
    }
    let h = a.len() / 2;
    let (p, q) = (&a[..h], &a[h..]);
    let (r, s) = (&b[..h], &b[h..]);
    let left: Vec<f64> = cd_mul(p, r)
        .iter()
        .zip(cd_mul(&conj(s), q))
        .map(|(x, y)| x - y)
        .collect();
    let right: Vec<f64> = cd_mul(s, p)
        .iter()
        .zip(cd_mul(q, &conj(r)))
        .map(|(x, y)| x + y)
        .collect();
    let mut out = left;
    out.extend(right);
    out
}

/// Cross product on R^3 or R^7 as Im(u·w) of imaginary elements.
pub fn cross(u: &[f64], w: &[f64]) -> Vec<f64> {
    let dim = u.len() + 1;
    assert!(dim == 4 || dim == 8, "cross product needs R^3 or R^7");
    let mut a = alloc::vec![0.0; dim];
    let mut b = alloc::vec![0.0; dim];
    a[1..].copy_from_slice(u);
    b[1..].copy_from_slice(w);
    cd_mul(&a, &b)[1..].to_vec()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Octonion(pub [f64; 8]);

impl Octonion {
    pub fn conj(&self) -> Self {
        let mut c = self.0;
        for x in &mut c[1..] {
            *x = -*x;
        }
        Octonion(c)
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.0.iter().map(|x| x * x).sum())
    }

    pub fn basis(i: usize) -> Self {
        let mut c = [0.0; 8];
        c[i] = 1.0;
        Octonion(c)
    }
}

impl Mul for Octonion {
    type Output = Octonion;

    fn mul(self, rhs: Octonion) -> Octonion {
        let v = cd_mul(&self.0, &rhs.0);
        let mut c = [0.0; 8];
        c.copy_from_slice(&v);
        Octonion(c)
    }
}
