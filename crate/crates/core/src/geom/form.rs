use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use serde::Serialize;

use super::chart::{ChartId, ChartPoint};
use super::rounding::curve_point;
use super::GeomError;
use crate::linalg::Vector;

/// Primitive β used inside composite forms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Beta {
    /// λ_std on C^m.
    Std,
    /// λ_{m,k}.
    Weinstein { k: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum FormId {
    /// ½Σ(x dy − y dx).
    LambdaStd,
    /// Σ p dq.
    LambdaCan,
    /// Σ_{j≤k}(3/2 x dy + 1/2 y dx) + λ_std on the remaining pairs.
    Weinstein {
        n: usize,
        k: usize,
    },
    /// dz + λ_std.
    Darboux,
    /// −θ dz − 2z dθ + β.
    HandleForm {
        beta: Beta,
    },
    /// ∓ε dθ + λ_std on the face {±ε} × Σ̂.
    ThetaFlat {
        epsilon: f64,
    },
    /// −z₀ dθ + (1 − p) z₀′ ds + t₀ λ_std|_{∂Σ} on γ × ∂Σ.
    ThetaInvariant {
        epsilon: f64,
        p: f64,
    },
    /// t (dz + λ_std).
    Symplectization,
    Custom {
        name: String,
    },
}

pub type CovectorFn = Arc<dyn Fn(&[f64]) -> Vec<f64> + Send + Sync>;

/// A 1-form given by a rule on a chart. Catalog forms are closed-form
/// expressions in ambient coordinates; constrained charts restrict them to
/// tangent vectors when needed.
#[derive(Clone)]
pub struct OneFormField {
    id: FormId,
    chart: ChartId,
    custom: Option<CovectorFn>,
}

impl fmt::Debug for OneFormField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OneFormField")
            .field("id", &self.id)
            .field("chart", &self.chart)
            .finish()
    }
}

fn pairs_of(chart: ChartId) -> Option<usize> {
    match chart {
        ChartId::Symplectic { n } | ChartId::HandleConvex { n, .. } | ChartId::HandleConcave { n, .. } => Some(n),
        ChartId::Sphere { n } => Some(n + 1),
        _ => None,
    }
}

fn unsupported() -> GeomError {
    GeomError::Unsupported("form is not defined on this chart")
}

impl OneFormField {
    pub fn id(&self) -> &FormId {
        &self.id
    }

    pub fn chart(&self) -> ChartId {
        self.chart
    }

    pub fn name(&self) -> String {
        match &self.id {
            FormId::LambdaStd => "lambda_std".into(),
            FormId::LambdaCan => "lambda_can".into(),
            FormId::Weinstein { n, k } => alloc::format!("weinstein({n},{k})"),
            FormId::Darboux => "darboux".into(),
            FormId::HandleForm { beta: Beta::Std } => "handle_form(lambda_std)".into(),
            FormId::HandleForm {
                beta: Beta::Weinstein { k },
            } => {
                alloc::format!("handle_form(weinstein k={k})")
            }
            FormId::ThetaFlat { epsilon } => alloc::format!("theta_flat(eps={epsilon})"),
            FormId::ThetaInvariant { epsilon, p } => {
                alloc::format!("theta_invariant(eps={epsilon},p={p})")
            }
            FormId::Symplectization => "symplectization".into(),
            FormId::Custom { name } => name.clone(),
        }
    }

    /// λ_std on C^n, on S^{2n+1}, or on a face of a Weinstein handle.
    pub fn lambda_std(chart: ChartId) -> Result<Self, GeomError> {
        pairs_of(chart).ok_or_else(unsupported)?;
        Ok(Self {
            id: FormId::LambdaStd,
            chart,
            custom: None,
        })
    }

    pub fn lambda_can(n: usize) -> Self {
        Self {
            id: FormId::LambdaCan,
            chart: ChartId::Cotangent { n },
            custom: None,
        }
    }

    pub fn weinstein(n: usize, k: usize) -> Result<Self, GeomError> {
        Self::weinstein_on(ChartId::Symplectic { n }, k)
    }

    /// λ_{n,k} on C^n or on one of the faces of H_{n,k}.
    pub fn weinstein_on(chart: ChartId, k: usize) -> Result<Self, GeomError> {
        let n = match chart {
            ChartId::Symplectic { n } => n,
            ChartId::HandleConvex { n, k: kc } | ChartId::HandleConcave { n, k: kc } if kc == k => n,
            _ => return Err(unsupported()),
        };
        if k > n {
            return Err(GeomError::InvalidParameter("weinstein form needs k <= n"));
        }
        Ok(Self {
            id: FormId::Weinstein { n, k },
            chart,
            custom: None,
        })
    }

    /// dz + λ_std on R^{2n+1}.
    pub fn darboux(n: usize) -> Self {
        Self {
            id: FormId::Darboux,
            chart: ChartId::Darboux { n },
            custom: None,
        }
    }

    pub fn handle_form(m: usize, beta: Beta) -> Result<Self, GeomError> {
        if let Beta::Weinstein { k } = beta {
            if k > m {
                return Err(GeomError::InvalidParameter("weinstein form needs k <= n"));
            }
        }
        Ok(Self {
            id: FormId::HandleForm { beta },
            chart: ChartId::HandleModel { m },
            custom: None,
        })
    }

    pub fn theta_flat(m: usize, top: bool, epsilon: f64) -> Result<Self, GeomError> {
        if !(epsilon > 0.0) {
            return Err(GeomError::InvalidParameter("epsilon must be positive"));
        }
        Ok(Self {
            id: FormId::ThetaFlat { epsilon },
            chart: ChartId::ThetaFlat { m, top },
            custom: None,
        })
    }

    /// The interpolating family α_p on the rounded edge; p = 1 is α̂.
    pub fn theta_invariant(m: usize, epsilon: f64, p: f64) -> Result<Self, GeomError> {
        if !(epsilon > 0.0) || !(0.0..=1.0).contains(&p) {
            return Err(GeomError::InvalidParameter("need epsilon > 0 and p in [0,1]"));
        }
        Ok(Self {
            id: FormId::ThetaInvariant { epsilon, p },
            chart: ChartId::ThetaRound { m },
            custom: None,
        })
    }

    pub fn symplectization(n: usize) -> Self {
        Self {
            id: FormId::Symplectization,
            chart: ChartId::Symplectization { n },
            custom: None,
        }
    }

    pub fn custom(name: &str, chart: ChartId, rule: CovectorFn) -> Self {
        Self {
            id: FormId::Custom { name: name.to_string() },
            chart,
            custom: Some(rule),
        }
    }

    /// Look up a catalog form by its CLI id.
    pub fn from_catalog(name: &str, chart: ChartId) -> Result<Self, GeomError> {
        let parts: Vec<&str> = name.split(':').collect();
        let num = |i: usize| -> Result<f64, GeomError> {
            parts.get(i).and_then(|s| s.parse().ok()).ok_or(GeomError::UnknownForm)
        };
        match (parts[0], chart) {
            ("lambda_std", c) => Self::lambda_std(c),
            ("lambda_can", ChartId::Cotangent { n }) => Ok(Self::lambda_can(n)),
            ("weinstein", ChartId::Symplectic { .. }) => Self::weinstein_on(chart, num(1)? as usize),
            ("weinstein", ChartId::HandleConvex { k, .. } | ChartId::HandleConcave { k, .. }) => {
                Self::weinstein_on(chart, k)
            }
            ("darboux", ChartId::Darboux { n }) => Ok(Self::darboux(n)),
            ("handle_form", ChartId::HandleModel { m }) => match parts.get(1) {
                None => Self::handle_form(m, Beta::Std),
                Some(_) => Self::handle_form(m, Beta::Weinstein { k: num(1)? as usize }),
            },
            ("theta_flat", ChartId::ThetaFlat { m, top }) => Self::theta_flat(m, top, num(1)?),
            ("theta_invariant", ChartId::ThetaRound { m }) => Self::theta_invariant(m, num(1)?, num(2)?),
            ("symplectization", ChartId::Symplectization { n }) => Ok(Self::symplectization(n)),
            (
                "lambda_can" | "weinstein" | "darboux" | "handle_form" | "theta_flat" | "theta_invariant"
                | "symplectization",
                _,
            ) => Err(unsupported()),
            _ => Err(GeomError::UnknownForm),
        }
    }

    /// Closed-form evaluation in ambient coordinates, no domain checks.
    /// Used for differencing, where stepping off a constraint is expected.
    pub fn eval_ambient(&self, c: &[f64]) -> Vector {
        let d = self.chart.ambient_dim();
        let mut out = Vector::zeros(d);
        match &self.id {
            FormId::LambdaStd => add_lambda_std(&mut out, c, 0, pairs_of(self.chart).unwrap_or(0), 1.0),
            FormId::LambdaCan => {
                for j in 0..d / 2 {
                    out[2 * j] = c[2 * j + 1];
                }
            }
            FormId::Weinstein { n, k } => add_weinstein(&mut out, c, 0, *n, *k, 1.0),
            FormId::Darboux => {
                out[0] = 1.0;
                add_lambda_std(&mut out, c, 1, (d - 1) / 2, 1.0);
            }
            FormId::HandleForm { beta } => {
                out[0] = -2.0 * c[1];
                out[1] = -c[0];
                let m = (d - 2) / 2;
                match beta {
                    Beta::Std => add_lambda_std(&mut out, c, 2, m, 1.0),
                    Beta::Weinstein { k } => add_weinstein(&mut out, c, 2, m, *k, 1.0),
                }
            }
            FormId::ThetaFlat { epsilon } => {
                let top = matches!(self.chart, ChartId::ThetaFlat { top: true, .. });
                out[0] = if top { -epsilon } else { *epsilon };
                add_lambda_std(&mut out, c, 1, (d - 1) / 2, 1.0);
            }
            FormId::ThetaInvariant { epsilon, p } => {
                let g = curve_point(*epsilon, c[1]);
                out[0] = -g.z;
                out[1] = (1.0 - p) * g.dz;
                add_lambda_std(&mut out, c, 2, (d - 2) / 2, g.t);
            }
            FormId::Symplectization => {
                let t = c[0];
                out[1] = t;
                add_lambda_std(&mut out, c, 2, (d - 2) / 2, t);
            }
            FormId::Custom { .. } => {
                if let Some(rule) = &self.custom {
                    let v = rule(c);
                    for (o, x) in out.iter_mut().zip(v) {
                        *o = x;
                    }
                }
            }
        }
        out
    }
}

fn add_lambda_std(out: &mut Vector, c: &[f64], offset: usize, pairs: usize, scale: f64) {
    for j in 0..pairs {
        let (ix, iy) = (offset + 2 * j, offset + 2 * j + 1);
        out[ix] += -0.5 * scale * c[iy];
        out[iy] += 0.5 * scale * c[ix];
    }
}

fn add_weinstein(out: &mut Vector, c: &[f64], offset: usize, pairs: usize, k: usize, scale: f64) {
    for j in 0..pairs {
        let (ix, iy) = (offset + 2 * j, offset + 2 * j + 1);
        if j < k {
            out[ix] += 0.5 * scale * c[iy];
            out[iy] += 1.5 * scale * c[ix];
        } else {
            out[ix] += -0.5 * scale * c[iy];
            out[iy] += 0.5 * scale * c[ix];
        }
    }
}

/// Covector of `form` at `p`.
pub fn eval_one_form(form: &OneFormField, p: &ChartPoint) -> Result<Vector, GeomError> {
    if form.chart() != p.chart() {
        return Err(GeomError::ChartMismatch {
            form: form.chart(),
            point: p.chart(),
        });
    }
    let v = form.eval_ambient(p.coords());
    if v.iter().any(|x| !x.is_finite()) {
        return Err(GeomError::NonFinite);
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn catalog_examples() {
        let f = OneFormField::lambda_std(ChartId::Symplectic { n: 1 }).unwrap();
        let p = ChartPoint::new(ChartId::Symplectic { n: 1 }, vec![1.0, 0.0]).unwrap();
        assert_eq!(eval_one_form(&f, &p).unwrap().as_slice(), &[0.0, 0.5]);

        let w = OneFormField::weinstein(1, 1).unwrap();
        assert_eq!(eval_one_form(&w, &p).unwrap().as_slice(), &[0.0, 1.5]);

        let can = OneFormField::lambda_can(2);
        let q = ChartPoint::new(ChartId::Cotangent { n: 2 }, vec![0.3, 0.0, -1.2, 0.0]).unwrap();
        assert!(eval_one_form(&can, &q).unwrap().iter().all(|&x| x == 0.0));
    }

    #[test]
    fn chart_mismatch_is_reported() {
        let f = OneFormField::lambda_can(1);
        let p = ChartPoint::new(ChartId::Symplectic { n: 1 }, vec![1.0, 0.0]).unwrap();
        assert!(matches!(eval_one_form(&f, &p), Err(GeomError::ChartMismatch { .. })));
        assert!(OneFormField::lambda_std(ChartId::Darboux { n: 1 }).is_err());
    }

    #[test]
    fn handle_form_components() {
        let f = OneFormField::handle_form(1, Beta::Std).unwrap();
        let p = ChartPoint::new(ChartId::HandleModel { m: 1 }, vec![0.5, 2.0, 1.0, 3.0]).unwrap();
        let v = eval_one_form(&f, &p).unwrap();
        assert_eq!(v.as_slice(), &[-4.0, -0.5, -1.5, 0.5]);
    }

    #[test]
    fn catalog_lookup() {
        let c = ChartId::HandleConvex { n: 2, k: 1 };
        assert_eq!(
            OneFormField::from_catalog("weinstein", c).unwrap().id(),
            &FormId::Weinstein { n: 2, k: 1 }
        );
        assert!(matches!(
            OneFormField::from_catalog("nonsense", c),
            Err(GeomError::UnknownForm)
        ));
        assert!(OneFormField::from_catalog("theta_invariant:0.2:0.5", ChartId::ThetaRound { m: 1 }).is_ok());
    }
}
