use alloc::vec::Vec;

use super::{
    eval_one_form, Basis, ChartPoint, GeomError, OneFormField, ScalarField, SkewMatrixAtPoint, DEFAULT_STEP, FORM_TOL,
};
use crate::linalg::{max_abs, solve_checked, Mat, Vector, MAX_CONDITION};

/// A vector obtained from a linear solve, with its diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldSolution {
    pub vector: Vector,
    pub residual: f64,
    pub condition: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReebSolution {
    pub vector: Vector,
    /// |α(R) − 1|.
    pub alpha_residual: f64,
    /// ‖dα(R, ·)‖∞ on the tangent space.
    pub kernel_residual: f64,
}

fn same_chart(form: &OneFormField, p: &ChartPoint) -> Result<(), GeomError> {
    if form.chart() != p.chart() {
        return Err(GeomError::ChartMismatch {
            form: form.chart(),
            point: p.chart(),
        });
    }
    Ok(())
}

/// dα at p by central differences: entries[i][j] = ∂_i α_j − ∂_j α_i.
pub fn exterior_derivative(form: &OneFormField, p: &ChartPoint, step: f64) -> Result<SkewMatrixAtPoint, GeomError> {
    same_chart(form, p)?;
    let c = p.coords();
    if !(step > 0.0) || !step.is_finite() || c.iter().any(|&x| (x + step) - x == 0.0) {
        return Err(GeomError::StepUnderflow(step));
    }
    let margin = p.chart().interior_margin(c);
    if margin < step {
        return Err(GeomError::OutsideDomain {
            chart: p.chart(),
            residual: step - margin,
        });
    }
    let d = c.len();
    let mut work: Vec<f64> = c.to_vec();
    let mut partial = Mat::zeros(d, d);
    for i in 0..d {
        let x = work[i];
        work[i] = x + step;
        let fp = form.eval_ambient(&work);
        work[i] = x - step;
        let fm = form.eval_ambient(&work);
        work[i] = x;
        let row = (fp - fm) / (2.0 * step);
        partial.set_row(i, &row.transpose());
    }
    let entries = &partial - partial.transpose();
    if entries.iter().any(|x| !x.is_finite()) {
        return Err(GeomError::NonFinite);
    }
    Ok(SkewMatrixAtPoint {
        base: p.clone(),
        entries,
        basis: Basis::Coordinate,
    })
}

fn require_unconstrained(p: &ChartPoint) -> Result<(), GeomError> {
    if p.chart().is_constrained() {
        return Err(GeomError::Unsupported(
            "vector-field solves need an unconstrained chart",
        ));
    }
    Ok(())
}

/// Solves ω(X, ·) = rhs for X.
fn solve_contraction(omega: &Mat, rhs: &Vector) -> Result<FieldSolution, GeomError> {
    let s = solve_checked(&omega.transpose(), rhs, MAX_CONDITION)?;
    Ok(FieldSolution {
        vector: s.x,
        residual: s.residual,
        condition: s.condition,
    })
}

/// Liouville field X of β: dβ(X, ·) = β.
pub fn liouville_vector_field(form: &OneFormField, p: &ChartPoint) -> Result<FieldSolution, GeomError> {
    require_unconstrained(p)?;
    let beta = eval_one_form(form, p)?;
    let d = exterior_derivative(form, p, DEFAULT_STEP)?;
    solve_contraction(&d.entries, &beta)
}

/// Hamiltonian field X_f with df = ω(X_f, ·), at ω's base point.
pub fn hamiltonian_vector_field(f: &ScalarField, omega: &SkewMatrixAtPoint) -> Result<FieldSolution, GeomError> {
    if omega.basis != Basis::Coordinate {
        return Err(GeomError::Unsupported(
            "hamiltonian solve needs coordinate-basis entries",
        ));
    }
    require_unconstrained(&omega.base)?;
    let grad = f.gradient(omega.base.coords(), DEFAULT_STEP);
    if grad.iter().any(|x| !x.is_finite()) {
        return Err(GeomError::NonFinite);
    }
    solve_contraction(&omega.entries, &grad)
}

/// Reeb field: α(R) = 1 and dα(R, ·) = 0 on the chart's tangent space.
///
/// Solved as the bordered skew system [[K, a], [−aᵀ, 0]] (c, μ) = (0, −1)
/// with K = dα and a = α on a tangent frame; it is invertible exactly when
/// α is contact at p, and then μ = 0.
pub fn reeb_vector_field(alpha: &OneFormField, p: &ChartPoint) -> Result<ReebSolution, GeomError> {
    let a_amb = eval_one_form(alpha, p)?;
    let d = exterior_derivative(alpha, p, DEFAULT_STEP)?;
    let frame = p.tangent_frame();
    let dim = frame.len();
    if dim.is_multiple_of(2) {
        return Err(GeomError::DimensionNotOdd(dim));
    }
    let fm = Mat::from_columns(&frame);
    let k = d.restrict(&frame);
    let a = fm.transpose() * &a_amb;
    let mut m = Mat::zeros(dim + 1, dim + 1);
    m.view_mut((0, 0), (dim, dim)).copy_from(&k);
    for i in 0..dim {
        m[(i, dim)] = a[i];
        m[(dim, i)] = -a[i];
    }
    let mut rhs = Vector::zeros(dim + 1);
    rhs[dim] = -1.0;
    let s = solve_checked(&m, &rhs, MAX_CONDITION)?;
    let c = s.x.rows(0, dim).into_owned();
    let vector = &fm * &c;
    let alpha_residual = (a_amb.dot(&vector) - 1.0).abs();
    let kernel_residual = crate::linalg::norm_inf_vec(&(k.transpose() * &c));
    Ok(ReebSolution {
        vector,
        alpha_residual,
        kernel_residual,
    })
}

/// Moser field V with dβ(V, ·) = β − β′, after checking dβ = dβ′ at p.
pub fn moser_field(beta: &OneFormField, beta_prime: &OneFormField, p: &ChartPoint) -> Result<FieldSolution, GeomError> {
    require_unconstrained(p)?;
    let d1 = exterior_derivative(beta, p, DEFAULT_STEP)?;
    let d2 = exterior_derivative(beta_prime, p, DEFAULT_STEP)?;
    let diff = max_abs(&(&d1.entries - &d2.entries)) / max_abs(&d1.entries).max(1.0);
    if diff > FORM_TOL {
        return Err(GeomError::FormsDiffer(diff));
    }
    let rhs = eval_one_form(beta, p)? - eval_one_form(beta_prime, p)?;
    solve_contraction(&d1.entries, &rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{Beta, ChartId};
    use alloc::vec;

    /// Hand-coded Σ dx_j ∧ dy_j on an interleaved block.
    fn std_block(d: usize, offset: usize) -> Mat {
        let mut m = Mat::zeros(d, d);
        let mut j = offset;
        while j + 1 < d {
            m[(j, j + 1)] = 1.0;
            m[(j + 1, j)] = -1.0;
            j += 2;
        }
        m
    }

    #[test]
    fn d_lambda_std_is_standard_block() {
        let f = OneFormField::lambda_std(ChartId::Symplectic { n: 2 }).unwrap();
        let p = ChartPoint::new(ChartId::Symplectic { n: 2 }, vec![0.3, -1.0, 2.0, 0.7]).unwrap();
        let d = exterior_derivative(&f, &p, DEFAULT_STEP).unwrap();
        assert!(max_abs(&(d.entries - std_block(4, 0))) < 1e-9);
    }

    #[test]
    fn d_handle_form_is_omega_beta() {
        let f = OneFormField::handle_form(1, Beta::Std).unwrap();
        let p = ChartPoint::new(ChartId::HandleModel { m: 1 }, vec![0.2, 0.4, -0.3, 0.9]).unwrap();
        let d = exterior_derivative(&f, &p, DEFAULT_STEP).unwrap();
        // dθ∧dz + dx∧dy
        assert!(max_abs(&(d.entries - std_block(4, 0))) < 1e-9);
    }

    #[test]
    fn step_checks() {
        let f = OneFormField::lambda_std(ChartId::Symplectic { n: 1 }).unwrap();
        let p = ChartPoint::new(ChartId::Symplectic { n: 1 }, vec![1.0, 0.0]).unwrap();
        assert!(matches!(
            exterior_derivative(&f, &p, 0.0),
            Err(GeomError::StepUnderflow(_))
        ));
        assert!(matches!(
            exterior_derivative(&f, &p, 1e-300),
            Err(GeomError::StepUnderflow(_))
        ));
    }

    #[test]
    fn liouville_of_lambda_std() {
        let f = OneFormField::lambda_std(ChartId::Symplectic { n: 2 }).unwrap();
        let c = vec![0.3, -1.0, 2.0, 0.7];
        let p = ChartPoint::new(ChartId::Symplectic { n: 2 }, c.clone()).unwrap();
        let x = liouville_vector_field(&f, &p).unwrap();
        for (a, b) in x.vector.iter().zip(&c) {
            assert!((a - 0.5 * b).abs() < 1e-9);
        }
        assert!(x.residual < 1e-8);
    }

    #[test]
    fn constant_hamiltonian_is_zero() {
        let f = OneFormField::lambda_std(ChartId::Symplectic { n: 1 }).unwrap();
        let p = ChartPoint::new(ChartId::Symplectic { n: 1 }, vec![0.5, 0.5]).unwrap();
        let w = exterior_derivative(&f, &p, DEFAULT_STEP).unwrap();
        let x = hamiltonian_vector_field(&ScalarField::constant(3.0), &w).unwrap();
        assert!(x.vector.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn singular_form_refused() {
        let zero = OneFormField::custom(
            "zero",
            ChartId::Symplectic { n: 1 },
            alloc::sync::Arc::new(|_| vec![0.0, 0.0]),
        );
        let p = ChartPoint::new(ChartId::Symplectic { n: 1 }, vec![0.5, 0.5]).unwrap();
        assert!(matches!(liouville_vector_field(&zero, &p), Err(GeomError::Linalg(_))));
    }

    #[test]
    fn moser_zero_when_forms_agree() {
        let f = OneFormField::lambda_std(ChartId::Symplectic { n: 1 }).unwrap();
        let p = ChartPoint::new(ChartId::Symplectic { n: 1 }, vec![0.5, -0.25]).unwrap();
        let v = moser_field(&f, &f, &p).unwrap();
        assert!(v.vector.iter().all(|&x| x == 0.0));
        let w = OneFormField::weinstein(1, 1).unwrap();
        // λ_{1,1} − λ_std = d(xy), so dβ agrees and V = X_{xy}.
        let v = moser_field(&w, &f, &p).unwrap();
        assert!((v.vector[0] - 0.5).abs() < 1e-9 && (v.vector[1] - 0.25).abs() < 1e-9);
        let can = OneFormField::custom(
            "2 lambda_std",
            ChartId::Symplectic { n: 1 },
            alloc::sync::Arc::new(|c: &[f64]| vec![-c[1], c[0]]),
        );
        assert!(matches!(moser_field(&can, &f, &p), Err(GeomError::FormsDiffer(_))));
    }
}
