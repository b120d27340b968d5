//! Lie derivatives by differencing flow pullbacks: (φ_h^*α − φ_{−h}^*α) / 2h.

use super::{eval_one_form, exterior_derivative, ChartPoint, GeomError, OneFormField, VectorField, DEFAULT_STEP};
use crate::linalg::{max_abs, norm_inf_vec, Mat, Vector};
use crate::ConditionReport;

/// Time step used for differencing the flow.
pub const FLOW_STEP: f64 = 1e-3;
const SUBSTEPS: usize = 4;
const JACOBIAN_STEP: f64 = 1e-6;

/// Time-`t` flow of `v` from `c` together with its Jacobian, by RK4 on the
/// variational system ẋ = V(x), J̇ = DV(x) J.
pub fn flow(v: &VectorField, c: &[f64], t: f64) -> (Vector, Mat) {
    let d = c.len();
    let rhs = |x: &Vector, j: &Mat| {
        let dx = v.eval(x.as_slice());
        let dj = v.jacobian(x.as_slice(), JACOBIAN_STEP) * j;
        (dx, dj)
    };
    let h = t / SUBSTEPS as f64;
    let mut x = Vector::from_column_slice(c);
    let mut j = Mat::identity(d, d);
    for _ in 0..SUBSTEPS {
        let (k1x, k1j) = rhs(&x, &j);
        let (k2x, k2j) = rhs(&(&x + &k1x * (h / 2.0)), &(&j + &k1j * (h / 2.0)));
        let (k3x, k3j) = rhs(&(&x + &k2x * (h / 2.0)), &(&j + &k2j * (h / 2.0)));
        let (k4x, k4j) = rhs(&(&x + &k3x * h), &(&j + &k3j * h));
        x += (k1x + k2x * 2.0 + k3x * 2.0 + k4x) * (h / 6.0);
        j += (k1j + k2j * 2.0 + k3j * 2.0 + k4j) * (h / 6.0);
    }
    (x, j)
}

fn check_setup(v: &VectorField, chart: super::ChartId, p: &ChartPoint) -> Result<(), GeomError> {
    if v.chart != chart || p.chart() != chart {
        return Err(GeomError::ChartMismatch {
            form: chart,
            point: p.chart(),
        });
    }
    if chart.is_constrained() {
        return Err(GeomError::Unsupported(
            "flows are only supported on unconstrained charts",
        ));
    }
    Ok(())
}

fn flowed_point(v: &VectorField, p: &ChartPoint, t: f64) -> Result<(ChartPoint, Mat), GeomError> {
    let (y, j) = flow(v, p.coords(), t);
    let q = ChartPoint::new(p.chart(), y.as_slice().to_vec()).map_err(|_| GeomError::FlowLeftChart)?;
    Ok((q, j))
}

/// L_v α at p.
pub fn lie_derivative_one_form(
    v: &VectorField,
    alpha: &OneFormField,
    p: &ChartPoint,
    h: f64,
) -> Result<Vector, GeomError> {
    check_setup(v, alpha.chart(), p)?;
    let pull = |t: f64| -> Result<Vector, GeomError> {
        let (q, j) = flowed_point(v, p, t)?;
        Ok(j.transpose() * eval_one_form(alpha, &q)?)
    };
    Ok((pull(h)? - pull(-h)?) / (2.0 * h))
}

/// L_v (dλ) at p, for a primitive λ.
pub fn lie_derivative_two_form(
    v: &VectorField,
    primitive: &OneFormField,
    p: &ChartPoint,
    h: f64,
) -> Result<Mat, GeomError> {
    check_setup(v, primitive.chart(), p)?;
    let pull = |t: f64| -> Result<Mat, GeomError> {
        let (q, j) = flowed_point(v, p, t)?;
        let w = exterior_derivative(primitive, &q, DEFAULT_STEP).map_err(|e| match e {
            GeomError::OutsideDomain { .. } => GeomError::FlowLeftChart,
            other => other,
        })?;
        Ok(j.transpose() * w.entries * j)
    };
    Ok((pull(h)? - pull(-h)?) / (2.0 * h))
}

/// L_v α = α at every sample, residual relative to max(1, ‖α‖∞).
pub fn check_contact_dilation(
    v: &VectorField,
    alpha: &OneFormField,
    points: &[ChartPoint],
    tolerance: f64,
) -> Result<ConditionReport, GeomError> {
    if points.is_empty() {
        return Err(GeomError::EmptySamples);
    }
    let mut worst: f64 = 0.0;
    for p in points {
        let a = eval_one_form(alpha, p)?;
        let l = lie_derivative_one_form(v, alpha, p, FLOW_STEP)?;
        worst = worst.max(norm_inf_vec(&(l - &a)) / norm_inf_vec(&a).max(1.0));
    }
    Ok(ConditionReport::residual(worst, tolerance, points.len()))
}

/// L_v ω = ω for ω = dλ.
pub fn check_symplectic_dilation(
    v: &VectorField,
    primitive: &OneFormField,
    points: &[ChartPoint],
    tolerance: f64,
) -> Result<ConditionReport, GeomError> {
    two_form_check(v, primitive, points, tolerance, 1.0)
}

/// L_v ω = 0 for ω = dλ: the flow of v preserves ω.
pub fn check_flow_invariance(
    v: &VectorField,
    primitive: &OneFormField,
    points: &[ChartPoint],
    tolerance: f64,
) -> Result<ConditionReport, GeomError> {
    two_form_check(v, primitive, points, tolerance, 0.0)
}

fn two_form_check(
    v: &VectorField,
    primitive: &OneFormField,
    points: &[ChartPoint],
    tolerance: f64,
    factor: f64,
) -> Result<ConditionReport, GeomError> {
    if points.is_empty() {
        return Err(GeomError::EmptySamples);
    }
    let mut worst: f64 = 0.0;
    for p in points {
        let w = exterior_derivative(primitive, p, DEFAULT_STEP)?.entries;
        let l = lie_derivative_two_form(v, primitive, p, FLOW_STEP)?;
        worst = worst.max(max_abs(&(l - &w * factor)) / max_abs(&w).max(1.0));
    }
    Ok(ConditionReport::residual(worst, tolerance, points.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::ChartId;
    use alloc::vec;

    #[test]
    fn flow_of_linear_field_is_exponential() {
        let v = VectorField::darboux_dilation(1);
        let (x, j) = flow(&v, &[1.0, 2.0, -1.0], 0.1);
        let e1 = libm::exp(0.1);
        let eh = libm::exp(0.05);
        assert!((x[0] - e1).abs() < 1e-9);
        assert!((x[1] - 2.0 * eh).abs() < 1e-9 && (x[2] + eh).abs() < 1e-9);
        assert!((j[(0, 0)] - e1).abs() < 1e-9 && (j[(1, 1)] - eh).abs() < 1e-9);
    }

    #[test]
    fn darboux_dilation_passes_and_wrong_field_fails() {
        let alpha = OneFormField::darboux(1);
        let pts = vec![ChartPoint::new(ChartId::Darboux { n: 1 }, vec![0.3, -0.4, 1.1]).unwrap()];
        let v = VectorField::darboux_dilation(1);
        assert!(check_contact_dilation(&v, &alpha, &pts, 1e-6).unwrap().passed);
        let w = VectorField::new(
            "dz",
            ChartId::Darboux { n: 1 },
            alloc::sync::Arc::new(|_: &[f64]| vec![1.0, 0.0, 0.0]),
        );
        assert!(!check_contact_dilation(&w, &alpha, &pts, 1e-6).unwrap().passed);
    }
}
