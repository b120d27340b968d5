use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use serde::Serialize;

use super::GeomError;
use crate::linalg::{tangent_frame, Vector};

/// Equality-constraint residual accepted on constrained charts.
pub const CHART_TOL: f64 = 1e-9;

/// Named coordinate charts. Symplectic blocks are always interleaved
/// (x1, y1, x2, y2, …) so the symplectic orientation is the coordinate one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ChartId {
    /// C^n, coordinates (x1, y1, …, xn, yn).
    Symplectic { n: usize },
    /// R^{2n+1}, coordinates (z, x1, y1, …).
    Darboux { n: usize },
    /// T*R^n, coordinates (q1, p1, …).
    Cotangent { n: usize },
    /// S^{2n+1} ⊂ C^{n+1}.
    Sphere { n: usize },
    /// Convex face D^k × S^{2n−k−1} of the handle H_{n,k} ⊂ C^n. The core
    /// disk sits in the (y1..yk) directions: |y_{≤k}| ≤ 1, |rest| = 1.
    HandleConvex { n: usize, k: usize },
    /// Concave face S^{k−1} × D^{2n−k}: |y_{≤k}| = 1, |rest| ≤ 1.
    HandleConcave { n: usize, k: usize },
    /// [−1,1] × R × C^m, coordinates (θ, z, x1, y1, …).
    HandleModel { m: usize },
    /// (0,∞) × R^{2n+1}, coordinates (t, z, x1, y1, …).
    Symplectization { n: usize },
    /// θ-collar of the face {±ε} × Σ̂, coordinates (θ, x1, y1, …).
    /// Oriented as a piece of the ambient contact manifold, which is
    /// −(θ, Σ) on the top face and +(θ, Σ) on the bottom one.
    ThetaFlat { m: usize, top: bool },
    /// θ-collar of the rounded edge γ × ∂Σ for Σ = D^{2m}: ambient
    /// (θ, s, w1, …) with |w| = 1. Oriented as −(θ, s, ∂Σ).
    ThetaRound { m: usize },
    /// T*S^n ⊂ R^{n+1} × R^{n+1}: (u, v) with |u| = 1, ⟨u, v⟩ = 0.
    CotangentSphere { n: usize },
}

impl ChartId {
    pub fn ambient_dim(&self) -> usize {
        match *self {
            ChartId::Symplectic { n } => 2 * n,
            ChartId::Darboux { n } => 2 * n + 1,
            ChartId::Cotangent { n } => 2 * n,
            ChartId::Sphere { n } => 2 * n + 2,
            ChartId::HandleConvex { n, .. } | ChartId::HandleConcave { n, .. } => 2 * n,
            ChartId::HandleModel { m } => 2 * m + 2,
            ChartId::Symplectization { n } => 2 * n + 2,
            ChartId::ThetaFlat { m, .. } => 2 * m + 1,
            ChartId::ThetaRound { m } => 2 * m + 2,
            ChartId::CotangentSphere { n } => 2 * n + 2,
        }
    }

    pub fn constraint_count(&self) -> usize {
        match self {
            ChartId::Sphere { .. }
            | ChartId::HandleConvex { .. }
            | ChartId::HandleConcave { .. }
            | ChartId::ThetaRound { .. } => 1,
            ChartId::CotangentSphere { .. } => 2,
            _ => 0,
        }
    }

    pub fn tangent_dim(&self) -> usize {
        self.ambient_dim() - self.constraint_count()
    }

    pub fn is_constrained(&self) -> bool {
        self.constraint_count() > 0
    }

    /// Sign of the chart's orientation relative to the frame produced by
    /// [`ChartPoint::tangent_frame`].
    pub fn orientation(&self) -> f64 {
        match self {
            ChartId::ThetaFlat { top: true, .. } | ChartId::ThetaRound { .. } => -1.0,
            _ => 1.0,
        }
    }

    fn validate_shape(&self) -> Result<(), GeomError> {
        let ok = match *self {
            ChartId::HandleConvex { n, k } | ChartId::HandleConcave { n, k } => k >= 1 && k <= n,
            ChartId::Symplectic { n } | ChartId::Cotangent { n } | ChartId::CotangentSphere { n } => n >= 1,
            ChartId::ThetaFlat { m, .. } | ChartId::ThetaRound { m } | ChartId::HandleModel { m } => m >= 1,
            _ => true,
        };
        if ok {
            Ok(())
        } else {
            Err(GeomError::InvalidParameter("chart shape parameters out of range"))
        }
    }

    /// Equality constraints g(p) = 0 with their gradients.
    pub fn constraints(&self, c: &[f64]) -> Vec<(f64, Vector)> {
        let d = self.ambient_dim();
        let sq = |idx: &[usize]| idx.iter().map(|&i| c[i] * c[i]).sum::<f64>() - 1.0;
        let grad = |idx: &[usize]| {
            let mut g = Vector::zeros(d);
            for &i in idx {
                g[i] = 2.0 * c[i];
            }
            g
        };
        match *self {
            ChartId::Sphere { .. } => {
                let idx: Vec<usize> = (0..d).collect();
                vec![(sq(&idx), grad(&idx))]
            }
            ChartId::HandleConvex { n, k } => {
                let idx = rest_indices(n, k);
                vec![(sq(&idx), grad(&idx))]
            }
            ChartId::HandleConcave { n: _, k } => {
                let idx = core_indices(k);
                vec![(sq(&idx), grad(&idx))]
            }
            ChartId::ThetaRound { .. } => {
                let idx: Vec<usize> = (2..d).collect();
                vec![(sq(&idx), grad(&idx))]
            }
            ChartId::CotangentSphere { n } => {
                let m = n + 1;
                let uu: f64 = (0..m).map(|i| c[i] * c[i]).sum::<f64>() - 1.0;
                let uv: f64 = (0..m).map(|i| c[i] * c[m + i]).sum();
                let mut g1 = Vector::zeros(d);
                let mut g2 = Vector::zeros(d);
                for i in 0..m {
                    g1[i] = 2.0 * c[i];
                    g2[i] = c[m + i];
                    g2[m + i] = c[i];
                }
                vec![(uu, g1), (uv, g2)]
            }
            _ => Vec::new(),
        }
    }

    /// How far `c` lies inside the chart's inequality constraints (negative
    /// when outside). Unbounded charts return +∞.
    pub fn interior_margin(&self, c: &[f64]) -> f64 {
        let norm2 = |idx: &[usize]| idx.iter().map(|&i| c[i] * c[i]).sum::<f64>();
        match *self {
            ChartId::HandleConvex { k, .. } => 1.0 - libm::sqrt(norm2(&core_indices(k))),
            ChartId::HandleConcave { n, k } => 1.0 - libm::sqrt(norm2(&rest_indices(n, k))),
            ChartId::HandleModel { .. } => 1.0 - c[0].abs(),
            ChartId::Symplectization { .. } => c[0],
            ChartId::ThetaRound { .. } => 1.0 - c[1].abs(),
            _ => f64::INFINITY,
        }
    }

    pub fn name(&self) -> String {
        match *self {
            ChartId::Symplectic { n } => format!("symplectic:{n}"),
            ChartId::Darboux { n } => format!("darboux:{n}"),
            ChartId::Cotangent { n } => format!("cotangent:{n}"),
            ChartId::Sphere { n } => format!("sphere:{n}"),
            ChartId::HandleConvex { n, k } => format!("handle-convex:{n}:{k}"),
            ChartId::HandleConcave { n, k } => format!("handle-concave:{n}:{k}"),
            ChartId::HandleModel { m } => format!("handle-model:{m}"),
            ChartId::Symplectization { n } => format!("symplectization:{n}"),
            ChartId::ThetaFlat { m, top } => {
                format!("theta-flat:{m}:{}", if top { "top" } else { "bottom" })
            }
            ChartId::ThetaRound { m } => format!("theta-round:{m}"),
            ChartId::CotangentSphere { n } => format!("cotangent-sphere:{n}"),
        }
    }
}

impl fmt::Display for ChartId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for ChartId {
    type Err = GeomError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |i: usize| -> Result<usize, GeomError> {
            parts.get(i).and_then(|p| p.parse().ok()).ok_or(GeomError::UnknownChart)
        };
        let id = match parts[0] {
            "symplectic" => ChartId::Symplectic { n: num(1)? },
            "darboux" => ChartId::Darboux { n: num(1)? },
            "cotangent" => ChartId::Cotangent { n: num(1)? },
            "sphere" => ChartId::Sphere { n: num(1)? },
            "handle-convex" => ChartId::HandleConvex { n: num(1)?, k: num(2)? },
            "handle-concave" => ChartId::HandleConcave { n: num(1)?, k: num(2)? },
            "handle-model" => ChartId::HandleModel { m: num(1)? },
            "symplectization" => ChartId::Symplectization { n: num(1)? },
            "theta-flat" => ChartId::ThetaFlat {
                m: num(1)?,
                top: match parts.get(2) {
                    Some(&"top") => true,
                    Some(&"bottom") => false,
                    _ => return Err(GeomError::UnknownChart),
                },
            },
            "theta-round" => ChartId::ThetaRound { m: num(1)? },
            "cotangent-sphere" => ChartId::CotangentSphere { n: num(1)? },
            _ => return Err(GeomError::UnknownChart),
        };
        id.validate_shape()?;
        Ok(id)
    }
}

/// Indices of y1..yk in an interleaved block.
pub(crate) fn core_indices(k: usize) -> Vec<usize> {
    (0..k).map(|j| 2 * j + 1).collect()
}

/// Everything in C^n except y1..yk.
pub(crate) fn rest_indices(n: usize, k: usize) -> Vec<usize> {
    (0..2 * n).filter(|&i| !(i % 2 == 1 && i / 2 < k)).collect()
}

/// A point of a chart, validated against its constraints and domain.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChartPoint {
    chart: ChartId,
    coords: Vec<f64>,
}

impl ChartPoint {
    pub fn new(chart: ChartId, coords: Vec<f64>) -> Result<Self, GeomError> {
        chart.validate_shape()?;
        if coords.len() != chart.ambient_dim() {
            return Err(GeomError::DimensionMismatch {
                expected: chart.ambient_dim(),
                got: coords.len(),
            });
        }
        if coords.iter().any(|x| !x.is_finite()) {
            return Err(GeomError::NonFinite);
        }
        for (g, _) in chart.constraints(&coords) {
            if g.abs() > CHART_TOL {
                return Err(GeomError::OutsideDomain {
                    chart,
                    residual: g.abs(),
                });
            }
        }
        let m = chart.interior_margin(&coords);
        if m < -CHART_TOL || (matches!(chart, ChartId::Symplectization { .. }) && m <= 0.0) {
            return Err(GeomError::OutsideDomain { chart, residual: -m });
        }
        Ok(ChartPoint { chart, coords })
    }

    pub fn chart(&self) -> ChartId {
        self.chart
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn vector(&self) -> Vector {
        Vector::from_column_slice(&self.coords)
    }

    /// Orthonormal tangent frame; (normals, frame) is positively oriented.
    pub fn tangent_frame(&self) -> Vec<Vector> {
        let normals: Vec<Vector> = self
            .chart
            .constraints(&self.coords)
            .into_iter()
            .map(|(_, g)| g)
            .collect();
        tangent_frame(&normals, self.chart.ambient_dim())
    }
}
