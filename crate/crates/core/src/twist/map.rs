use alloc::vec::Vec;

use serde::Serialize;

use super::generator::{almost_complex_generator, plane_generator};
use super::point::{dot, norm};
use super::{CotangentPoint, TwistError, TwistProfile, POINT_TOL, ZERO_FIBER};
use crate::geom::{Basis, SkewMatrixAtPoint};
use crate::linalg::{expm, expm_rotation, Mat, Vector};
use crate::sampling::{rng, unit_vector};

/// Difference step for pullback Jacobians.
pub const PULLBACK_STEP: f64 = 1e-6;

fn apply_matrix(e: &Mat, x: &[f64]) -> Vec<f64> {
    (e * Vector::from_column_slice(x)).as_slice().to_vec()
}

/// τ_n(u, v) = (cos f·u + sin f·v̂, −‖v‖ sin f·u + cos f·v), f = f(‖v‖).
pub fn apply_twist(p: &CotangentPoint, prof: &TwistProfile) -> CotangentPoint {
    let r = p.fiber_norm();
    if r < ZERO_FIBER {
        return CotangentPoint::unchecked(p.u.iter().map(|x| -x).collect(), alloc::vec![0.0; p.v.len()]);
    }
    let f = prof.f(r);
    let (s, c) = (libm::sin(f), libm::cos(f));
    let u = p.u.iter().zip(&p.v).map(|(a, b)| c * a + s * b / r).collect();
    let v = p.u.iter().zip(&p.v).map(|(a, b)| -r * s * a + c * b).collect();
    CotangentPoint::unchecked(u, v)
}

/// τ_n through the exponential e^{f𝔳_u} applied to both components.
pub fn apply_twist_exp(p: &CotangentPoint, prof: &TwistProfile) -> CotangentPoint {
    let r = p.fiber_norm();
    if r < ZERO_FIBER {
        return apply_twist(p, prof);
    }
    let a = plane_generator(&p.u, &p.v).expect("fiber above threshold").matrix;
    let e = expm_rotation(&a, prof.f(r));
    CotangentPoint::unchecked(apply_matrix(&e, &p.u), apply_matrix(&e, &p.v))
}

/// τ_n² as e^{2f𝔳_u}, by scaling and squaring.
pub fn tau_squared_exp(p: &CotangentPoint, prof: &TwistProfile) -> CotangentPoint {
    let r = p.fiber_norm();
    if r < ZERO_FIBER {
        return p.clone();
    }
    let a = plane_generator(&p.u, &p.v).expect("fiber above threshold").matrix;
    let e = expm(&(a * (2.0 * prof.f(r))));
    CotangentPoint::unchecked(apply_matrix(&e, &p.u), apply_matrix(&e, &p.v))
}

fn check_n(p: &CotangentPoint) -> Result<usize, TwistError> {
    let n = p.n();
    if n == 2 || n == 6 {
        Ok(n)
    } else {
        Err(TwistError::UnsupportedDimension(n))
    }
}

/// Φ_t(u, v) = e^{2f(‖v‖)((1−t)𝔧_u + t𝔳_u)} applied to u and v; Φ_t(u, 0) = (u, 0).
pub fn isotopy_phi(t: f64, p: &CotangentPoint, prof: &TwistProfile) -> Result<CotangentPoint, TwistError> {
    let n = check_n(p)?;
    let r = p.fiber_norm();
    if r < ZERO_FIBER {
        return Ok(CotangentPoint::unchecked(p.u.clone(), alloc::vec![0.0; p.v.len()]));
    }
    let j = almost_complex_generator(&p.u, n)?.matrix;
    let a = plane_generator(&p.u, &p.v)?.matrix;
    let g = (j * (1.0 - t) + a * t) * (2.0 * prof.f(r));
    let e = expm(&g);
    Ok(CotangentPoint::unchecked(
        apply_matrix(&e, &p.u),
        apply_matrix(&e, &p.v),
    ))
}

/// Ψ_t(u, v) = (u, e^{t·2f(‖v‖)𝔧_u} v).
pub fn isotopy_psi(t: f64, p: &CotangentPoint, prof: &TwistProfile) -> Result<CotangentPoint, TwistError> {
    let n = check_n(p)?;
    let r = p.fiber_norm();
    if r < ZERO_FIBER {
        return Ok(CotangentPoint::unchecked(p.u.clone(), alloc::vec![0.0; p.v.len()]));
    }
    let j = almost_complex_generator(&p.u, n)?.matrix;
    let e = expm_rotation(&j, 2.0 * t * prof.f(r));
    Ok(CotangentPoint::unchecked(p.u.clone(), apply_matrix(&e, &p.v)))
}

/// −dλ_can = Σ du∧dv evaluated on two ambient tangent vectors.
fn omega(a: &[f64], b: &[f64]) -> f64 {
    let m = a.len() / 2;
    dot(&a[..m], &b[m..]) - dot(&a[m..], &b[..m])
}

fn frame_matrix(vecs: &[Vec<f64>]) -> Mat {
    let k = vecs.len();
    Mat::from_fn(k, k, |i, j| omega(&vecs[i], &vecs[j]))
}

fn retract(c: &[f64]) -> CotangentPoint {
    let m = c.len() / 2;
    CotangentPoint::project(&c[..m], &c[m..])
}

/// −dλ_can on the oriented tangent frame of T*S^n at p.
pub fn reference_two_form(p: &CotangentPoint) -> SkewMatrixAtPoint {
    let cp = p.chart_point();
    let frame = cp.tangent_frame();
    let vecs: Vec<Vec<f64>> = frame.iter().map(|v| v.as_slice().to_vec()).collect();
    SkewMatrixAtPoint {
        base: cp,
        entries: frame_matrix(&vecs),
        basis: Basis::Frame(frame),
    }
}

/// Pullback of −dλ_can by `map` at p, on the same frame as
/// [`reference_two_form`]. The Jacobian is a central difference along
/// retracted curves p ± h·e.
pub fn pullback_two_form<F>(map: F, p: &CotangentPoint, step: f64) -> Result<SkewMatrixAtPoint, TwistError>
where
    F: Fn(&CotangentPoint) -> CotangentPoint,
{
    let r = p.residual();
    if r > POINT_TOL {
        return Err(TwistError::InvalidPoint(r));
    }
    let cp = p.chart_point();
    let frame = cp.tangent_frame();
    let base = p.coords();
    let mut images = Vec::with_capacity(frame.len());
    for e in &frame {
        let shift = |sign: f64| -> Result<Vec<f64>, TwistError> {
            let c: Vec<f64> = base.iter().zip(e.iter()).map(|(x, d)| x + sign * step * d).collect();
            let q = map(&retract(&c));
            let res = q.residual();
            if !(res <= 1e-8) {
                return Err(TwistError::LeftManifold(res));
            }
            Ok(q.coords())
        };
        let plus = shift(1.0)?;
        let minus = shift(-1.0)?;
        images.push(
            plus.iter()
                .zip(&minus)
                .map(|(a, b)| (a - b) / (2.0 * step))
                .collect::<Vec<f64>>(),
        );
    }
    Ok(SkewMatrixAtPoint {
        base: cp,
        entries: frame_matrix(&images),
        basis: Basis::Frame(frame),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Family {
    Phi,
    Psi,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeReport {
    pub family: Family,
    pub n: usize,
    pub max_displacement: f64,
    pub argmax_t: f64,
    pub argmax_point: CotangentPoint,
    /// (t, max displacement at t) over the grid.
    pub per_t: Vec<(f64, f64)>,
}

/// Largest ‖family_t(p) − p‖ over seeded points with ‖v‖ = 1 and a uniform
/// t-grid on [0, 1]. Measures; asserts nothing.
pub fn boundary_displacement_probe(
    family: Family,
    n: usize,
    prof: &TwistProfile,
    samples: usize,
    t_steps: usize,
    seed: u64,
) -> Result<ProbeReport, TwistError> {
    if !(n == 2 || n == 6) {
        return Err(TwistError::UnsupportedDimension(n));
    }
    let mut r = rng(seed);
    let points: Vec<CotangentPoint> = (0..samples.max(1))
        .map(|_| {
            let u = unit_vector(&mut r, n + 1);
            let w = unit_vector(&mut r, n + 1);
            let p = CotangentPoint::project(&u, &w);
            let s = norm(&p.v);
            CotangentPoint::unchecked(p.u, p.v.iter().map(|x| x / s).collect())
        })
        .collect();
    let steps = t_steps.max(2);
    let mut report = ProbeReport {
        family,
        n,
        max_displacement: 0.0,
        argmax_t: 0.0,
        argmax_point: points[0].clone(),
        per_t: Vec::with_capacity(steps),
    };
    for i in 0..steps {
        let t = i as f64 / (steps - 1) as f64;
        let mut worst: f64 = 0.0;
        for p in &points {
            let q = match family {
                Family::Phi => isotopy_phi(t, p, prof)?,
                Family::Psi => isotopy_psi(t, p, prof)?,
            };
            let d = q.distance(p);
            if d > report.max_displacement {
                report.max_displacement = d;
                report.argmax_t = t;
                report.argmax_point = p.clone();
            }
            worst = worst.max(d);
        }
        report.per_t.push((t, worst));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs;
    use alloc::vec;

    fn prof() -> TwistProfile {
        TwistProfile::new(0.5).unwrap()
    }

    #[test]
    fn zero_fiber_and_identity_region() {
        let p = CotangentPoint::new(vec![0.0, 1.0, 0.0], vec![0.0; 3]).unwrap();
        let q = apply_twist(&p, &prof());
        assert_eq!(q.u, vec![0.0, -1.0, 0.0]);
        assert_eq!(q.v, vec![0.0; 3]);
        let p = CotangentPoint::new(vec![0.0, 1.0, 0.0], vec![0.6, 0.0, 0.0]).unwrap();
        assert!(apply_twist(&p, &prof()).max_diff(&p) < 1e-12);
    }

    #[test]
    fn planar_oracle() {
        let pr = prof();
        let eps = pr.epsilon;
        let p = CotangentPoint::new(vec![1.0, 0.0], vec![0.0, eps / 2.0]).unwrap();
        let q = apply_twist(&p, &pr);
        let f = pr.f(eps / 2.0);
        // Rotation by f in the oriented plane (u, v̂) = (e1, e2).
        let (c, s) = (libm::cos(f), libm::sin(f));
        let u = [c, s];
        let v = [-s * eps / 2.0, c * eps / 2.0];
        assert!((q.u[0] - u[0]).abs() < 1e-15 && (q.u[1] - u[1]).abs() < 1e-15);
        assert!((q.v[0] - v[0]).abs() < 1e-15 && (q.v[1] - v[1]).abs() < 1e-15);
    }

    #[test]
    fn identity_and_scaling_pullbacks() {
        let p = CotangentPoint::new(vec![0.6, 0.8, 0.0], vec![0.0, 0.0, 0.4]).unwrap();
        let refm = reference_two_form(&p).entries;
        let id = pullback_two_form(|q| q.clone(), &p, PULLBACK_STEP).unwrap().entries;
        assert!(max_abs(&(id - &refm)) < 1e-8);
        let dbl = pullback_two_form(
            |q| CotangentPoint::unchecked(q.u.clone(), q.v.iter().map(|x| 2.0 * x).collect()),
            &p,
            PULLBACK_STEP,
        )
        .unwrap()
        .entries;
        assert!(max_abs(&(dbl - refm * 2.0)) < 1e-8);
    }

    #[test]
    fn probe_endpoints_vanish() {
        let r = boundary_displacement_probe(Family::Phi, 2, &prof(), 5, 11, 0).unwrap();
        assert!(r.per_t[0].1 < 1e-12);
        assert!(r.per_t[10].1 < 1e-10);
        let r = boundary_displacement_probe(Family::Psi, 6, &prof(), 5, 11, 0).unwrap();
        assert!(r.per_t[0].1 < 1e-12);
        assert!(boundary_displacement_probe(Family::Psi, 3, &prof(), 5, 11, 0).is_err());
    }
}
