//! Seeded numerical checks of the model forms, the rounding curve and the
//! generalized Dehn twist, written as report lines.

use anyhow::Result;
use liouville_core::geom::{
    check_contact_condition, check_rounding, exterior_derivative, hamiltonian_vector_field, liouville_vector_field,
    reeb_vector_field, rounding_curve, ChartId, ChartPoint, OneFormField, ScalarField, DEFAULT_STEP,
};
use liouville_core::linalg::max_abs;
use liouville_core::sampling::{ball_point, cube_point, rng, uniform, unit_vector, SampleRng};
use liouville_core::twist::{
    apply_twist, apply_twist_exp, boundary_displacement_probe, isotopy_phi, isotopy_psi, make_profile,
    pullback_two_form, reference_two_form, tau_squared_exp, CotangentPoint, Family, TwistProfile, PULLBACK_STEP,
};

use crate::report::Report;

/// Twist support radius used by every twist check.
pub const TWIST_EPSILON: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Settings {
    pub seed: u64,
    /// Overrides each check's own sample count.
    pub samples: Option<usize>,
    /// Overrides every residual tolerance (strict positivity checks keep 0).
    pub tol: Option<f64>,
}

impl Settings {
    fn n(&self, default: usize) -> usize {
        self.samples.unwrap_or(default).max(1)
    }
    fn tol(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }
}

fn profile() -> TwistProfile {
    make_profile(TWIST_EPSILON).expect("epsilon in range")
}

/// A point of T*S^n with fiber norm drawn from [lo, hi].
fn cotangent_point(r: &mut SampleRng, n: usize, lo: f64, hi: f64) -> CotangentPoint {
    let u = unit_vector(r, n + 1);
    let w = unit_vector(r, n + 1);
    let p = CotangentPoint::project(&u, &w);
    let s = p.fiber_norm();
    let len = uniform(r, lo, hi);
    CotangentPoint::project(&p.u, &p.v.iter().map(|x| x * len / s).collect::<Vec<_>>())
}

/// τ_n^*(−dλ_can) against −dλ_can on tangent frames.
pub fn twist_pullback(n: usize, s: &Settings) -> Result<Report> {
    let prof = profile();
    let mut r = rng(s.seed);
    let mut worst: f64 = 0.0;
    let count = s.n(50);
    for _ in 0..count {
        let p = cotangent_point(&mut r, n, 0.0, 1.5 * prof.epsilon);
        let pulled = pullback_two_form(|q| apply_twist(q, &prof), &p, PULLBACK_STEP)?;
        let reference = reference_two_form(&p);
        worst = worst.max(max_abs(&(pulled.entries - reference.entries)));
    }
    let mut rep = Report::new();
    rep.at_most(format!("twist.n{n}.pullback_max_dev"), worst, s.tol(1e-5));
    Ok(rep)
}

/// Zero section, support, and the two ways of writing τ_n.
pub fn twist_endpoints(n: usize, s: &Settings) -> Result<Report> {
    let prof = profile();
    let eps = prof.epsilon;
    let mut r = rng(s.seed.wrapping_add(1));
    let count = s.n(200);
    let (mut zero, mut outside, mut paths): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for _ in 0..count {
        let u = unit_vector(&mut r, n + 1);
        let p = CotangentPoint::new(u.clone(), vec![0.0; n + 1])?;
        let q = apply_twist(&p, &prof);
        let expected = CotangentPoint::new(u.iter().map(|x| -x).collect(), vec![0.0; n + 1])?;
        zero = zero.max(q.max_diff(&expected));

        let far = cotangent_point(&mut r, n, eps, 3.0 * eps);
        outside = outside.max(apply_twist(&far, &prof).max_diff(&far));

        let mid = cotangent_point(&mut r, n, 1e-3, 1.2 * eps);
        paths = paths.max(apply_twist(&mid, &prof).max_diff(&apply_twist_exp(&mid, &prof)));
    }
    let mut rep = Report::new();
    rep.at_most(format!("twist.n{n}.zero_section_antipodal"), zero, 0.0);
    rep.at_most(format!("twist.n{n}.identity_outside_eps"), outside, s.tol(1e-12));
    rep.at_most(format!("twist.n{n}.formula_vs_exponential"), paths, s.tol(1e-10));
    Ok(rep)
}

/// The isotopies Φ_t, Ψ_t trivializing τ_n² for n = 2, 6, and the boundary
/// displacement probe, which is reported without a verdict.
pub fn square_isotopy(n: usize, s: &Settings) -> Result<Report> {
    let prof = profile();
    let mut r = rng(s.seed.wrapping_add(2));
    let count = s.n(100);
    let (mut end, mut end_exp, mut psi0, mut psi1, mut fixed): (f64, f64, f64, f64, f64) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for _ in 0..count {
        let p = cotangent_point(&mut r, n, 1e-3, 1.5 * prof.epsilon);
        let sq = apply_twist(&apply_twist(&p, &prof), &prof);
        let phi1 = isotopy_phi(1.0, &p, &prof)?;
        end = end.max(phi1.max_diff(&sq));
        end_exp = end_exp.max(phi1.max_diff(&tau_squared_exp(&p, &prof)));
        psi0 = psi0.max(isotopy_psi(0.0, &p, &prof)?.max_diff(&p));
        psi1 = psi1.max(isotopy_psi(1.0, &p, &prof)?.max_diff(&isotopy_phi(0.0, &p, &prof)?));

        let z = CotangentPoint::new(unit_vector(&mut r, n + 1), vec![0.0; n + 1])?;
        for i in 0..11 {
            let t = i as f64 / 10.0;
            fixed = fixed.max(isotopy_phi(t, &z, &prof)?.max_diff(&z));
        }
    }
    let mut rep = Report::new();
    rep.at_most(format!("isotopy.n{n}.phi1_vs_tau_squared"), end, s.tol(1e-8));
    rep.at_most(format!("isotopy.n{n}.phi1_vs_exp_2f"), end_exp, s.tol(1e-8));
    rep.at_most(format!("isotopy.n{n}.psi0_identity"), psi0, s.tol(1e-10));
    rep.at_most(format!("isotopy.n{n}.psi1_vs_phi0"), psi1, s.tol(1e-10));
    rep.at_most(format!("isotopy.n{n}.zero_section_fixed"), fixed, s.tol(1e-10));
    for (family, name) in [(Family::Phi, "phi"), (Family::Psi, "psi")] {
        let probe = boundary_displacement_probe(family, n, &prof, s.n(20), 11, s.seed)?;
        rep.info(
            format!("isotopy.n{n}.{name}.unit_sphere_max_displacement"),
            crate::report::num(probe.max_displacement),
        );
        rep.info(format!("isotopy.n{n}.{name}.argmax_t"), probe.argmax_t);
    }
    Ok(rep)
}

/// Every twist check that applies to this n.
pub fn twist_all(n: usize, s: &Settings) -> Result<Report> {
    let mut rep = twist_pullback(n, s)?;
    rep.extend(twist_endpoints(n, s)?);
    if n == 2 || n == 6 {
        rep.extend(square_isotopy(n, s)?);
    }
    Ok(rep)
}

fn symplectic_point(r: &mut SampleRng, n: usize) -> Result<ChartPoint> {
    Ok(ChartPoint::new(ChartId::Symplectic { n }, cube_point(r, 2 * n, 2.0))?)
}

/// Points of the convex face D^k × S^{2n−k−1} of H_{n,k}.
pub fn convex_face_points(n: usize, k: usize, count: usize, seed: u64) -> Result<Vec<ChartPoint>> {
    let chart = ChartId::HandleConvex { n, k };
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let core = ball_point(&mut r, k, 0.9);
            let rest = unit_vector(&mut r, 2 * n - k);
            let mut c = vec![0.0; 2 * n];
            let (mut ci, mut ri) = (core.into_iter(), rest.into_iter());
            for (i, slot) in c.iter_mut().enumerate() {
                *slot = if i % 2 == 1 && i / 2 < k { ci.next() } else { ri.next() }.expect("sizes match");
            }
            Ok(ChartPoint::new(chart, c)?)
        })
        .collect()
}

/// Liouville, Reeb and Hamiltonian fields of the model forms against their
/// closed forms, and the contact condition for λ_{n,k} on convex faces.
pub fn model_forms(s: &Settings) -> Result<Report> {
    let mut rep = Report::new();
    let mut r = rng(s.seed.wrapping_add(3));
    let count = s.n(100);
    let tol = s.tol(1e-8);

    for n in [1, 2, 3] {
        let form = OneFormField::lambda_std(ChartId::Symplectic { n })?;
        let (mut res, mut dev): (f64, f64) = (0.0, 0.0);
        for _ in 0..count {
            let p = symplectic_point(&mut r, n)?;
            let sol = liouville_vector_field(&form, &p)?;
            res = res.max(sol.residual);
            for (x, c) in sol.vector.iter().zip(p.coords()) {
                dev = dev.max((x - 0.5 * c).abs());
            }
        }
        rep.at_most(format!("forms.liouville.lambda_std.n{n}.residual"), res, tol);
        rep.at_most(format!("forms.liouville.lambda_std.n{n}.vs_half_radial"), dev, tol);
    }

    for n in [1, 2] {
        let alpha = OneFormField::darboux(n);
        let (mut res, mut dev): (f64, f64) = (0.0, 0.0);
        for _ in 0..count {
            let p = ChartPoint::new(ChartId::Darboux { n }, cube_point(&mut r, 2 * n + 1, 2.0))?;
            let sol = reeb_vector_field(&alpha, &p)?;
            res = res.max(sol.alpha_residual).max(sol.kernel_residual);
            for (i, x) in sol.vector.iter().enumerate() {
                let e = if i == 0 { 1.0 } else { 0.0 };
                dev = dev.max((x - e).abs());
            }
        }
        rep.at_most(format!("forms.reeb.darboux.n{n}.residual"), res, tol);
        rep.at_most(format!("forms.reeb.darboux.n{n}.vs_dz"), dev, tol);
    }

    for (n, k) in [(1, 1), (2, 1), (2, 2), (3, 2)] {
        let form = OneFormField::lambda_std(ChartId::Symplectic { n })?;
        let f = ScalarField::weinstein_quadratic(k);
        let (mut res, mut dev): (f64, f64) = (0.0, 0.0);
        for _ in 0..count {
            let p = symplectic_point(&mut r, n)?;
            let omega = exterior_derivative(&form, &p, DEFAULT_STEP)?;
            let sol = hamiltonian_vector_field(&f, &omega)?;
            res = res.max(sol.residual);
            let c = p.coords();
            for (i, x) in sol.vector.iter().enumerate() {
                // Σ_{j≤k} (x_j ∂x_j − y_j ∂y_j)
                let e = if i / 2 < k {
                    if i % 2 == 0 {
                        c[i]
                    } else {
                        -c[i]
                    }
                } else {
                    0.0
                };
                dev = dev.max((x - e).abs());
            }
        }
        rep.at_most(format!("forms.hamiltonian.f{k}.n{n}.residual"), res, tol);
        rep.at_most(format!("forms.hamiltonian.f{k}.n{n}.vs_closed_form"), dev, tol);
    }

    for (i, (n, k)) in [(2, 1), (2, 2), (3, 2)].into_iter().enumerate() {
        let pts = convex_face_points(n, k, count, s.seed.wrapping_add(10 + i as u64))?;
        let form = OneFormField::weinstein_on(ChartId::HandleConvex { n, k }, k)?;
        let c = check_contact_condition(&form, &pts)?;
        rep.positive(format!("forms.contact.weinstein.n{n}.k{k}.min_volume"), c.margin);
    }
    Ok(rep)
}

/// The four conditions on the edge-rounding curve.
pub fn rounding(epsilon: f64, s: &Settings) -> Result<Report> {
    let curve = rounding_curve(epsilon, s.n(1000))?;
    let c = check_rounding(&curve);
    let mut rep = Report::new();
    rep.at_most(
        "rounding.endpoint_values_and_derivatives",
        c.endpoint_error,
        s.tol(1e-8),
    );
    rep.at_most("rounding.endpoint_second_derivatives", c.endpoint_flatness, s.tol(1e-8));
    rep.at_most("rounding.symmetry", c.symmetry_error, 0.0);
    rep.positive("rounding.min_z_dt_minus_t_dz", c.min_wedge);
    rep.check("rounding.inside_box", c.in_box, c.in_box);
    Ok(rep)
}

/// Model forms plus the rounding curve.
pub fn forms_all(s: &Settings) -> Result<Report> {
    let mut rep = model_forms(s)?;
    rep.extend(rounding(0.1, s)?);
    Ok(rep)
}

/// Contact condition of a catalog form over caller-supplied points.
pub fn contact_on_points(form: &str, chart: ChartId, points: &[Vec<f64>]) -> Result<Report> {
    let alpha = OneFormField::from_catalog(form, chart)?;
    let pts = points
        .iter()
        .map(|c| ChartPoint::new(chart, c.clone()))
        .collect::<Result<Vec<_>, _>>()?;
    let c = check_contact_condition(&alpha, &pts)?;
    let mut rep = Report::new();
    rep.positive(format!("forms.contact.{}.min_volume", alpha.name()), c.margin);
    rep.info("forms.contact.samples", c.samples);
    Ok(rep)
}
