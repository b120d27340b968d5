use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use super::chart::ChartId;
use crate::linalg::Vector;

pub type ScalarFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;
pub type VectorFn = Arc<dyn Fn(&[f64]) -> Vec<f64> + Send + Sync>;

/// A smooth function on ambient coordinates.
#[derive(Clone)]
pub struct ScalarField {
    pub name: String,
    rule: ScalarFn,
}

impl fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ScalarField({})", self.name)
    }
}

impl ScalarField {
    pub fn new(name: &str, rule: ScalarFn) -> Self {
        ScalarField {
            name: name.to_string(),
            rule,
        }
    }

    pub fn eval(&self, c: &[f64]) -> f64 {
        (self.rule)(c)
    }

    pub fn constant(value: f64) -> Self {
        Self::new("constant", Arc::new(move |_| value))
    }

    /// f_k = Σ_{j≤k} x_j y_j on an interleaved block starting at index 0.
    pub fn weinstein_quadratic(k: usize) -> Self {
        Self::new(
            "f_k",
            Arc::new(move |c: &[f64]| (0..k).map(|j| c[2 * j] * c[2 * j + 1]).sum()),
        )
    }

    /// zθ on the handle model chart (θ, z, …).
    pub fn z_theta() -> Self {
        Self::new("z*theta", Arc::new(|c: &[f64]| c[0] * c[1]))
    }

    /// Central-difference gradient.
    pub fn gradient(&self, c: &[f64], step: f64) -> Vector {
        let mut work = c.to_vec();
        Vector::from_fn(c.len(), |i, _| {
            let x = work[i];
            work[i] = x + step;
            let fp = self.eval(&work);
            work[i] = x - step;
            let fm = self.eval(&work);
            work[i] = x;
            (fp - fm) / (2.0 * step)
        })
    }
}

/// A vector field on an unconstrained chart.
#[derive(Clone)]
pub struct VectorField {
    pub name: String,
    pub chart: ChartId,
    rule: VectorFn,
}

impl fmt::Debug for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VectorField({} on {})", self.name, self.chart)
    }
}

impl VectorField {
    pub fn new(name: &str, chart: ChartId, rule: VectorFn) -> Self {
        VectorField {
            name: name.to_string(),
            chart,
            rule,
        }
    }

    pub fn eval(&self, c: &[f64]) -> Vector {
        Vector::from_vec((self.rule)(c))
    }

    /// V_β = z∂_z + X_β for β = λ_std on the Darboux chart (z, x, y, …).
    pub fn darboux_dilation(n: usize) -> Self {
        Self::new(
            "z*dz + X_lambda_std",
            ChartId::Darboux { n },
            Arc::new(|c: &[f64]| {
                let mut v: Vec<f64> = c.iter().map(|x| 0.5 * x).collect();
                v[0] = c[0];
                v
            }),
        )
    }

    /// t∂_t on the symplectization collar.
    pub fn radial_t(n: usize) -> Self {
        Self::new(
            "t*dt",
            ChartId::Symplectization { n },
            Arc::new(|c: &[f64]| {
                let mut v = alloc::vec![0.0; c.len()];
                v[0] = c[0];
                v
            }),
        )
    }

    /// V_β = z∂_z + X_β on the handle model chart (θ, z, x, y, …), β = λ_std.
    pub fn handle_v_beta(m: usize) -> Self {
        Self::new(
            "z*dz + X_beta",
            ChartId::HandleModel { m },
            Arc::new(|c: &[f64]| {
                let mut v: Vec<f64> = c.iter().map(|x| 0.5 * x).collect();
                v[0] = 0.0;
                v[1] = c[1];
                v
            }),
        )
    }

    /// Central-difference Jacobian DV.
    pub fn jacobian(&self, c: &[f64], step: f64) -> crate::linalg::Mat {
        let d = c.len();
        let mut work = c.to_vec();
        let mut j = crate::linalg::Mat::zeros(d, d);
        for i in 0..d {
            let x = work[i];
            work[i] = x + step;
            let fp = self.eval(&work);
            work[i] = x - step;
            let fm = self.eval(&work);
            work[i] = x;
            j.set_column(i, &((fp - fm) / (2.0 * step)));
        }
        j
    }
}
