//! Flat cutoff functions built from exp(-1/x).

use libm::exp;

/// exp(-1/x) for x > 0, zero otherwise. All derivatives vanish at 0.
pub fn flat_exp(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        exp(-1.0 / x)
    }
}

/// Smooth step: 0 for x <= 0, 1 for x >= 1, flat to all orders at both ends.
pub fn step(x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let a = flat_exp(x);
    let b = flat_exp(1.0 - x);
    a / (a + b)
}

/// Derivative of [`step`].
pub fn step_d(x: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        return 0.0;
    }
    let a = flat_exp(x);
    let b = flat_exp(1.0 - x);
    let s = a + b;
    if a == 0.0 || b == 0.0 {
        return 0.0;
    }
    let y = 1.0 - x;
    (a / s) * (b / s) * (1.0 / (x * x) + 1.0 / (y * y))
}
