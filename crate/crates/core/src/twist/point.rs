use alloc::vec::Vec;

use serde::Serialize;

use super::{TwistError, POINT_TOL};
use crate::geom::{ChartId, ChartPoint};

/// (u, v) ∈ T*S^n with ‖u‖ = 1 and ⟨u, v⟩ = 0.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CotangentPoint {
    pub u: Vec<f64>,
    pub v: Vec<f64>,
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    libm::sqrt(dot(a, a))
}

impl CotangentPoint {
    pub fn new(u: Vec<f64>, v: Vec<f64>) -> Result<Self, TwistError> {
        if u.len() != v.len() || u.len() < 2 {
            return Err(TwistError::InvalidPoint(f64::INFINITY));
        }
        let p = CotangentPoint { u, v };
        let r = p.residual();
        if !(r <= POINT_TOL) {
            return Err(TwistError::InvalidPoint(r));
        }
        Ok(p)
    }

    /// Snap arbitrary (u, v) onto T*S^n: normalize u, drop v's u-component.
    pub fn project(u: &[f64], v: &[f64]) -> Self {
        let nu = norm(u);
        let u: Vec<f64> = u.iter().map(|x| x / nu).collect();
        let c = dot(&u, v);
        let v = v.iter().zip(&u).map(|(x, y)| x - c * y).collect();
        CotangentPoint { u, v }
    }

    pub(crate) fn unchecked(u: Vec<f64>, v: Vec<f64>) -> Self {
        CotangentPoint { u, v }
    }

    /// max(|‖u‖ − 1|, |⟨u, v⟩|).
    pub fn residual(&self) -> f64 {
        (norm(&self.u) - 1.0).abs().max(dot(&self.u, &self.v).abs())
    }

    pub fn n(&self) -> usize {
        self.u.len() - 1
    }

    pub fn fiber_norm(&self) -> f64 {
        norm(&self.v)
    }

    pub fn coords(&self) -> Vec<f64> {
        let mut c = self.u.clone();
        c.extend_from_slice(&self.v);
        c
    }

    pub fn from_coords(c: &[f64]) -> Self {
        let m = c.len() / 2;
        CotangentPoint {
            u: c[..m].to_vec(),
            v: c[m..].to_vec(),
        }
    }

    pub fn chart_point(&self) -> ChartPoint {
        ChartPoint::new(ChartId::CotangentSphere { n: self.n() }, self.coords()).expect("valid cotangent point")
    }

    pub fn distance(&self, other: &CotangentPoint) -> f64 {
        let d: f64 = self
            .coords()
            .iter()
            .zip(other.coords())
            .map(|(a, b)| (a - b) * (a - b))
            .sum();
        libm::sqrt(d)
    }

    /// Max coordinate difference.
    pub fn max_diff(&self, other: &CotangentPoint) -> f64 {
        self.coords()
            .iter()
            .zip(other.coords())
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }
}
