//! W-functions φ_n = √w · p_n and their derivatives.
//!
//! Values are assembled in log space: the scaled polynomial recurrence is
//! combined with ln √w before exponentiating, so e^{−x/2} underflow at large x
//! or x^{α/2} at tiny x never hides a finite product.

use crate::error::{Error, Result};
use crate::orthopoly::{jacobi_polynomials, PolySystem};
use crate::special::ln_gamma;
use crate::weights::{FamilyKind, WeightFamily};

/// Signed logarithm: value = sign · exp(ln_abs).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogValue {
    pub sign: f64,
    pub ln_abs: f64,
}

impl LogValue {
    pub fn value(&self) -> f64 {
        self.sign * self.ln_abs.exp()
    }
}

/// φ_0..φ_{n_max} for one family.
#[derive(Clone, Debug)]
pub struct WFunctionBasis {
    family: WeightFamily,
    sys: PolySystem,
}

/// Values of φ, φ′, φ″ at one point.
#[derive(Clone, Debug)]
pub struct WFunctionValues {
    pub phi: Vec<f64>,
    pub dphi: Vec<f64>,
    pub d2phi: Vec<f64>,
}

impl WFunctionBasis {
    /// Requires a weight that vanishes at every finite endpoint.
    pub fn new(family: WeightFamily, n_max: usize) -> Result<Self> {
        family.require_vanishing_endpoints()?;
        Ok(WFunctionBasis { family, sys: PolySystem::new(family, n_max) })
    }

    pub fn family(&self) -> WeightFamily {
        self.family
    }

    pub fn n_max(&self) -> usize {
        self.sys.n_max()
    }

    fn check(&self, x: f64, order: usize) -> Result<()> {
        let s = self.family.support();
        if !s.contains_open(x) {
            return Err(Error::OutsideSupport { x, lower: s.lower, upper: s.upper });
        }
        if x == 0.0 && order > 0 {
            // L = w′/w is singular at the origin unless w is smooth there.
            self.family.log_derivative(x)?;
        }
        if x == 0.0 && matches!(self.family.kind(), FamilyKind::GeneralizedHermite | FamilyKind::Konoplev) {
            self.family.ln_eval(x)?;
        }
        Ok(())
    }

    /// φ_0(x), …, φ_{n_max}(x). Konoplev uses the κ-normalized Jacobi forms.
    pub fn eval(&self, x: f64) -> Result<Vec<f64>> {
        self.check(x, 0)?;
        if self.family.kind() == FamilyKind::Konoplev {
            return Ok(konoplev_closed_form(self.family, self.n_max(), x));
        }
        Ok(self.eval_all(x, 0).phi)
    }

    /// φ′_0(x), …, φ′_{n_max}(x).
    pub fn eval_derivative(&self, x: f64) -> Result<Vec<f64>> {
        self.check(x, 1)?;
        Ok(self.eval_all(x, 1).dphi)
    }

    /// φ″_0(x), …, φ″_{n_max}(x) from
    /// φ″ = √w [p″ + L p′ + (½L′ + ¼L²) p] with L = w′/w.
    pub fn eval_second_derivative(&self, x: f64) -> Result<Vec<f64>> {
        self.check(x, 2)?;
        Ok(self.eval_all(x, 2).d2phi)
    }

    /// φ_n as signed logarithms; finite even where φ_n itself underflows.
    pub fn eval_log(&self, x: f64) -> Result<Vec<LogValue>> {
        self.check(x, 0)?;
        let half_ln_w = 0.5 * self.family.ln_eval_unchecked(x);
        let s = self.sys.scaled(x, 0);
        Ok(s.p
            .iter()
            .zip(&s.ln_scale)
            .map(|(&p, &ls)| LogValue { sign: p.signum(), ln_abs: p.abs().ln() + ls + half_ln_w })
            .collect())
    }

    /// Values and derivatives up to `order` from the recurrence, unchecked.
    pub(crate) fn eval_all(&self, x: f64, order: usize) -> WFunctionValues {
        let n = self.n_max() + 1;
        let half_ln_w = 0.5 * self.family.ln_eval_unchecked(x);
        let s = self.sys.scaled(x, order);
        let (l, dl) = if order > 0 {
            (
                self.family.log_derivative_unchecked(x),
                if order > 1 { self.family.log_derivative_prime_unchecked(x) } else { 0.0 },
            )
        } else {
            (0.0, 0.0)
        };
        let mut out = WFunctionValues {
            phi: Vec::with_capacity(n),
            dphi: Vec::with_capacity(if order > 0 { n } else { 0 }),
            d2phi: Vec::with_capacity(if order > 1 { n } else { 0 }),
        };
        let c2 = 0.5 * dl + 0.25 * l * l;
        for k in 0..n {
            let f = (half_ln_w + s.ln_scale[k]).exp();
            out.phi.push(f * s.p[k]);
            if order > 0 {
                out.dphi.push(f * (s.dp[k] + 0.5 * l * s.p[k]));
            }
            if order > 1 {
                out.d2phi.push(f * (s.d2p[k] + l * s.dp[k] + c2 * s.p[k]));
            }
        }
        out
    }
}

/// φ_n(x) for n ≤ n_max.
pub fn eval_wfunction_sequence(family: WeightFamily, n_max: usize, x: f64) -> Result<Vec<f64>> {
    WFunctionBasis::new(family, n_max)?.eval(x)
}

/// φ′_n(x) for n ≤ n_max.
pub fn eval_wfunction_derivative_sequence(
    family: WeightFamily,
    n_max: usize,
    x: f64,
) -> Result<Vec<f64>> {
    WFunctionBasis::new(family, n_max)?.eval_derivative(x)
}

/// ln κ_{2m} for the Konoplev weight; κ_{2m+1} is κ_{2m} with γ → γ + 1.
fn ln_kappa_even(alpha: f64, gamma: f64, m: usize) -> f64 {
    let mf = m as f64;
    let s = alpha + gamma;
    let ln_poch: f64 = (0..m).map(|j| (mf + 1.0 + s + j as f64).ln()).sum();
    ln_poch + ln_gamma(mf + 1.0 + alpha) + ln_gamma(mf + 1.0 + gamma)
        - ln_gamma(mf + 1.0)
        - ln_gamma(2.0 * mf + 2.0 + s)
}

/// Konoplev W-functions from the κ-normalized Jacobi forms.
fn konoplev_closed_form(family: WeightFamily, n_max: usize, x: f64) -> Vec<f64> {
    let (a, g) = (family.alpha(), family.gamma());
    let t = 2.0 * x * x - 1.0;
    let m_even = n_max / 2;
    let m_odd = if n_max == 0 { 0 } else { (n_max - 1) / 2 };
    let even = jacobi_polynomials(a, g, m_even, t);
    let odd = jacobi_polynomials(a, g + 1.0, m_odd, t);
    let ln_env = (g + 0.5) * x.abs().ln() + 0.5 * a * ((-x).ln_1p() + x.ln_1p());
    (0..=n_max)
        .map(|n| {
            let m = n / 2;
            if n % 2 == 0 {
                even[m] * (ln_env - 0.5 * ln_kappa_even(a, g, m)).exp()
            } else {
                x * odd[m] * (ln_env - 0.5 * ln_kappa_even(a, g + 1.0, m)).exp()
            }
        })
        .collect()
}

/// Leading factor of the Laguerre W-function in closed form:
/// φ_n(x) = √(n!/Γ(n+1+α)) x^{α/2} e^{−x/2} L_n^{(α)}(x).
#[cfg(test)]
pub(crate) fn laguerre_normalization(alpha: f64, n: usize) -> f64 {
    (0.5 * crate::special::ln_gamma_ratio(n as f64 + 1.0, n as f64 + 1.0 + alpha)).exp()
}
