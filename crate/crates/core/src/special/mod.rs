//! Gamma-function helpers.
//!
//! Entries of the differentiation matrices are ratios of Gamma functions
//! whose arguments run into the thousands, so everything is done in log space.

pub(crate) mod dd;

use crate::error::{Error, Result};

/// ln Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

const STIRLING_SHIFT: f64 = 20.0;

// Coefficients B_{2k}/(2k(2k−1)) of the Stirling series.
const STIRLING: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
];

fn stirling_tail(z: f64) -> f64 {
    let r = 1.0 / z;
    let r2 = r * r;
    STIRLING.iter().rev().fold(0.0, |acc, c| acc * r2 + c) * r
}

/// ln(Γ(x)/Γ(y)) for x, y > 0, accurate to a few ulps of the result even when
/// both arguments are large.
pub fn ln_gamma_ratio(x: f64, y: f64) -> f64 {
    debug_assert!(x > 0.0 && y > 0.0);
    if x == y {
        return 0.0;
    }
    let lo = x.min(y);
    if lo < STIRLING_SHIFT {
        if x.max(y) < STIRLING_SHIFT {
            return ln_gamma(x) - ln_gamma(y);
        }
        // Shift both arguments up: Γ(z) = Γ(z + k) / ∏ (z + j).
        let k = (STIRLING_SHIFT - lo).ceil() as usize;
        let d = x - y;
        let correction: f64 = (0..k).map(|j| (d / (y + j as f64)).ln_1p()).sum();
        return ln_gamma_ratio(x + k as f64, y + k as f64) - correction;
    }
    // (x − ½)ln x − (y − ½)ln y − d = (y − ½)ln(1 + d/y) + d ln x − d
    let d = x - y;
    (y - 0.5) * (d / y).ln_1p() + d * (x.ln() - 1.0) + stirling_tail(x) - stirling_tail(y)
}

/// Γ(x)/Γ(y) for x, y > 0.
pub fn gamma_ratio(x: f64, y: f64) -> f64 {
    ln_gamma_ratio(x, y).exp()
}

/// Rising factorial (a)_k = a(a+1)⋯(a+k−1).
pub fn pochhammer(a: f64, k: usize) -> f64 {
    (0..k).map(|j| a + j as f64).product()
}

/// ln (a)_k for a > 0.
pub fn ln_pochhammer(a: f64, k: usize) -> Result<f64> {
    if a <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "ln_pochhammer needs a > 0, got {a}"
        )));
    }
    Ok(ln_gamma_ratio(a + k as f64, a))
}
