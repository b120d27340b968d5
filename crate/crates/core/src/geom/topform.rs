use alloc::vec::Vec;

use super::{eval_one_form, exterior_derivative, ChartPoint, GeomError, OneFormField, DEFAULT_STEP};
use crate::linalg::{Mat, Vector};
use crate::ConditionReport;

/// Largest dimension the permutation expansion accepts.
pub const MAX_TOP_DIM: usize = 9;

/// Coefficient of α ∧ ω^n on the basis (e_0, …, e_{2n}):
/// (1/2^n) Σ_σ sgn σ · α(e_σ0) · Π_i ω(e_σ(2i−1), e_σ(2i)).
/// With α = dz and ω = Σ dx∧dy this is n!.
pub fn top_form_coefficient(alpha: &Vector, omega: &Mat) -> Result<f64, GeomError> {
    let d = alpha.len();
    if d.is_multiple_of(2) {
        return Err(GeomError::DimensionNotOdd(d));
    }
    if d > MAX_TOP_DIM {
        return Err(GeomError::DimensionTooLarge {
            dim: d,
            max: MAX_TOP_DIM,
        });
    }
    let n = (d - 1) / 2;
    let mut perm: Vec<usize> = (0..d).collect();
    let mut sign = 1.0;
    let term = |perm: &[usize]| {
        let mut v = alpha[perm[0]];
        for i in 0..n {
            v *= omega[(perm[2 * i + 1], perm[2 * i + 2])];
        }
        v
    };
    let mut total = term(&perm);
    // Heap's algorithm: every swap flips the sign.
    let mut c = alloc::vec![0usize; d];
    let mut i = 0;
    while i < d {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            sign = -sign;
            total += sign * term(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(total / libm::pow(2.0, n as f64))
}

/// α ∧ (dα)^n on the chart's oriented tangent frame at p, times `orientation`.
fn volume_at(alpha: &OneFormField, p: &ChartPoint, orientation: f64) -> Result<f64, GeomError> {
    let frame = p.tangent_frame();
    let dim = frame.len();
    if dim.is_multiple_of(2) {
        return Err(GeomError::DimensionNotOdd(dim));
    }
    if dim > MAX_TOP_DIM {
        return Err(GeomError::DimensionTooLarge { dim, max: MAX_TOP_DIM });
    }
    let a = eval_one_form(alpha, p)?;
    let d = exterior_derivative(alpha, p, DEFAULT_STEP)?;
    let fm = Mat::from_columns(&frame);
    let at = fm.transpose() * a;
    let k = d.restrict(&frame);
    Ok(orientation * top_form_coefficient(&at, &k)?)
}

/// α ∧ (dα)^n at p in the chart's own orientation.
pub fn contact_volume(alpha: &OneFormField, p: &ChartPoint) -> Result<f64, GeomError> {
    volume_at(alpha, p, p.chart().orientation())
}

/// Contact condition over a sample set; passes iff α∧(dα)^n > 0 everywhere.
pub fn check_contact_condition(alpha: &OneFormField, points: &[ChartPoint]) -> Result<ConditionReport, GeomError> {
    check_contact_condition_with(alpha, points, alpha.chart().orientation())
}

/// As [`check_contact_condition`] with an explicit orientation sign.
pub fn check_contact_condition_with(
    alpha: &OneFormField,
    points: &[ChartPoint],
    orientation: f64,
) -> Result<ConditionReport, GeomError> {
    if points.is_empty() {
        return Err(GeomError::EmptySamples);
    }
    let mut margin = f64::INFINITY;
    for p in points {
        margin = margin.min(volume_at(alpha, p, orientation)?);
    }
    Ok(ConditionReport::positive(margin, points.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::ChartId;
    use alloc::vec;

    /// Pfaffian by expansion along the first row.
    fn pfaffian(m: &Mat) -> f64 {
        let d = m.nrows();
        if d == 0 {
            return 1.0;
        }
        let mut total = 0.0;
        for j in 1..d {
            let keep: Vec<usize> = (1..d).filter(|&k| k != j).collect();
            let sub = Mat::from_fn(d - 2, d - 2, |r, c| m[(keep[r], keep[c])]);
            let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
            total += sign * m[(0, j)] * pfaffian(&sub);
        }
        total
    }

    fn factorial(n: usize) -> f64 {
        (1..=n).map(|k| k as f64).product()
    }

    #[test]
    fn standard_darboux_value_is_factorial() {
        for n in 1..=3 {
            let d = 2 * n + 1;
            let mut a = Vector::zeros(d);
            a[0] = 1.0;
            let mut w = Mat::zeros(d, d);
            for j in 0..n {
                w[(1 + 2 * j, 2 + 2 * j)] = 1.0;
                w[(2 + 2 * j, 1 + 2 * j)] = -1.0;
            }
            assert!((top_form_coefficient(&a, &w).unwrap() - factorial(n)).abs() < 1e-12);
        }
    }

    #[test]
    fn matches_pfaffian_expansion() {
        let mut rng = crate::sampling::rng(3);
        for d in [3usize, 5, 7] {
            for _ in 0..5 {
                let a = Vector::from_vec(crate::sampling::cube_point(&mut rng, d, 1.0));
                let r = Mat::from_vec(d, d, crate::sampling::cube_point(&mut rng, d * d, 1.0));
                let w = &r - r.transpose();
                let n = (d - 1) / 2;
                let mut oracle = 0.0;
                for i in 0..d {
                    let keep: Vec<usize> = (0..d).filter(|&k| k != i).collect();
                    let sub = Mat::from_fn(d - 1, d - 1, |r, c| w[(keep[r], keep[c])]);
                    let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
                    oracle += sign * a[i] * pfaffian(&sub);
                }
                oracle *= factorial(n);
                let v = top_form_coefficient(&a, &w).unwrap();
                assert!((v - oracle).abs() < 1e-10 * oracle.abs().max(1.0), "d={d}");
            }
        }
    }

    #[test]
    fn rejects_bad_dimensions() {
        assert!(matches!(
            top_form_coefficient(&Vector::zeros(4), &Mat::zeros(4, 4)),
            Err(GeomError::DimensionNotOdd(4))
        ));
        assert!(matches!(
            top_form_coefficient(&Vector::zeros(11), &Mat::zeros(11, 11)),
            Err(GeomError::DimensionTooLarge { .. })
        ));
    }

    #[test]
    fn empty_samples_rejected() {
        let f = OneFormField::darboux(1);
        assert_eq!(check_contact_condition(&f, &[]).unwrap_err(), GeomError::EmptySamples);
        let p = ChartPoint::new(ChartId::Symplectic { n: 1 }, vec![0.0, 0.0]).unwrap();
        let g = OneFormField::lambda_std(ChartId::Symplectic { n: 1 }).unwrap();
        assert_eq!(
            check_contact_condition(&g, &[p]).unwrap_err(),
            GeomError::DimensionNotOdd(2)
        );
    }
}
