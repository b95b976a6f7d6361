//! Orthonormal polynomials: three-term recurrences, evaluation with
//! derivatives, and Gauss rules.

mod quadrature;
mod tridiagonal;

pub use quadrature::{gauss_rule, sqrt_weight_rule, QuadratureRule};

use crate::error::{Error, Result};
use crate::weights::{FamilyKind, WeightFamily};

/// Coefficients of β_n p_{n+1} = (x + α_n) p_n − β_{n−1} p_{n−1}.
///
/// `alternating` marks the classical Laguerre sign convention, in which p_n
/// carries an extra factor (−1)^n relative to the positive-leading
/// polynomial generated by the recurrence.
#[derive(Clone, Debug, PartialEq)]
pub struct RecurrenceCoeffs {
    alpha: Vec<f64>,
    beta: Vec<f64>,
    ln_mu0: f64,
    alternating: bool,
}

impl RecurrenceCoeffs {
    pub(crate) fn new(alpha: Vec<f64>, beta: Vec<f64>, ln_mu0: f64, alternating: bool) -> Self {
        debug_assert_eq!(alpha.len(), beta.len());
        debug_assert!(beta.iter().all(|&b| b > 0.0));
        RecurrenceCoeffs { alpha, beta, ln_mu0, alternating }
    }

    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    pub fn beta(&self) -> &[f64] {
        &self.beta
    }

    pub fn len(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alpha.is_empty()
    }

    /// ln ∫ w dx.
    pub fn ln_mu0(&self) -> f64 {
        self.ln_mu0
    }

    /// p_0 = 1/√μ₀.
    pub fn p0(&self) -> f64 {
        (-0.5 * self.ln_mu0).exp()
    }

    pub fn alternating(&self) -> bool {
        self.alternating
    }
}

/// Recurrence of the Jacobi weight (1 − t)^a (1 + t)^b on (−1, 1), n entries.
pub(crate) fn jacobi_recurrence(a: f64, b: f64, n: usize) -> RecurrenceCoeffs {
    let s = a + b;
    let (alpha, beta) = (0..n)
        .map(|k| {
            let k = k as f64;
            let diag = if k == 0.0 {
                (b - a) / (s + 2.0)
            } else {
                (b * b - a * a) / ((2.0 * k + s) * (2.0 * k + s + 2.0))
            };
            let off2 = if k == 0.0 {
                4.0 * (a + 1.0) * (b + 1.0) / ((s + 2.0) * (s + 2.0) * (s + 3.0))
            } else {
                let t = 2.0 * k + s;
                4.0 * (k + 1.0) * (k + a + 1.0) * (k + b + 1.0) * (k + s + 1.0)
                    / ((t + 1.0) * (t + 2.0) * (t + 2.0) * (t + 3.0))
            };
            (-diag, off2.sqrt())
        })
        .unzip();
    let ln_mu0 = (s + 1.0) * std::f64::consts::LN_2 + crate::special::ln_gamma(a + 1.0)
        + crate::special::ln_gamma(b + 1.0)
        - crate::special::ln_gamma(s + 2.0);
    RecurrenceCoeffs::new(alpha, beta, ln_mu0, false)
}

/// Jacobi recurrence mapped to u = (1 + t)/2 ∈ (0, 1), weight u^b (1 − u)^a.
/// Diagonal entries are formed without the cancellation in ½(1 + diag_t).
pub(crate) fn shifted_jacobi_recurrence(a: f64, b: f64, n: usize) -> RecurrenceCoeffs {
    let base = jacobi_recurrence(a, b, n);
    let s = a + b;
    let alpha = (0..n)
        .map(|k| {
            let kf = k as f64;
            let diag_u = if k == 0 {
                (b + 1.0) / (s + 2.0)
            } else {
                let t = 2.0 * kf + s;
                0.5 * (t * (t + 2.0) + (b - a) * s) / (t * (t + 2.0))
            };
            -diag_u
        })
        .collect();
    let beta = base.beta.iter().map(|b| 0.5 * b).collect();
    let ln_mu0 = base.ln_mu0 - (s + 1.0) * std::f64::consts::LN_2;
    RecurrenceCoeffs::new(alpha, beta, ln_mu0, false)
}

/// Orthonormal recurrence from monic coefficients c_1, c_2, … of a symmetric
/// weight: β_n = √c_{n+1}, α_n = 0.
fn symmetric_from_monic(c: impl Fn(usize) -> f64, n: usize, ln_mu0: f64) -> RecurrenceCoeffs {
    let beta = (0..n).map(|k| c(k + 1).sqrt()).collect();
    RecurrenceCoeffs::new(vec![0.0; n], beta, ln_mu0, false)
}

/// Orthonormal recurrence coefficients α_0..α_{n−1}, β_0..β_{n−1}, enough to
/// evaluate p_0..p_n.
pub fn recurrence_coeffs(family: WeightFamily, n: usize) -> RecurrenceCoeffs {
    let ln_mu0 = family.ln_mu0();
    match family.kind() {
        FamilyKind::Laguerre => {
            let a = family.alpha();
            let (alpha, beta) = (0..n)
                .map(|k| {
                    let k = k as f64;
                    (-(2.0 * k + a + 1.0), ((k + 1.0) * (k + 1.0 + a)).sqrt())
                })
                .unzip();
            RecurrenceCoeffs::new(alpha, beta, ln_mu0, true)
        }
        FamilyKind::Ultraspherical => {
            let a = family.alpha();
            let r = jacobi_recurrence(a, a, n);
            RecurrenceCoeffs::new(vec![0.0; n], r.beta, ln_mu0, false)
        }
        FamilyKind::GeneralizedHermite => {
            let mu = family.mu();
            let c = |k: usize| {
                let m = (k / 2) as f64;
                if k % 2 == 0 {
                    m
                } else {
                    m + mu + 0.5
                }
            };
            symmetric_from_monic(c, n, ln_mu0)
        }
        FamilyKind::Konoplev => {
            let (a, g) = (family.alpha(), family.gamma());
            let c = |k: usize| {
                let m = (k / 2) as f64;
                if k % 2 == 0 {
                    m * (m + a) / ((2.0 * m + a + g) * (2.0 * m + 1.0 + a + g))
                } else {
                    (m + 1.0 + g) * (m + 1.0 + a + g)
                        / ((2.0 * m + 1.0 + a + g) * (2.0 * m + 2.0 + a + g))
                }
            };
            symmetric_from_monic(c, n, ln_mu0)
        }
    }
}

/// Coefficients (up, down) of the unnormalized ultraspherical recurrence
/// x P_m = up · P_{m+1} + down · P_{m−1}, with P_m = P_m^{(α,α)} in the
/// standard Jacobi normalization.
pub fn jacobi_symmetric_recurrence(alpha: f64, m: usize) -> (f64, f64) {
    let m = m as f64;
    let d = 2.0 * m + 2.0 * alpha + 1.0;
    ((m + 1.0) * (m + 2.0 * alpha + 1.0) / ((m + 1.0 + alpha) * d), (m + alpha) / d)
}

/// Jacobi P_0^{(a,b)}(t), …, P_m^{(a,b)}(t) in the standard normalization.
pub fn jacobi_polynomials(a: f64, b: f64, m: usize, t: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(m + 1);
    out.push(1.0);
    if m == 0 {
        return out;
    }
    out.push(a + 1.0 + 0.5 * (a + b + 2.0) * (t - 1.0));
    for n in 1..m {
        let nf = n as f64;
        let s = 2.0 * nf + a + b;
        let c1 = 2.0 * (nf + 1.0) * (nf + a + b + 1.0) * s;
        let c2 = (s + 1.0) * (s * (s + 2.0) * t + a * a - b * b);
        let c3 = 2.0 * (nf + a) * (nf + b) * (s + 2.0);
        out.push((c2 * out[n] - c3 * out[n - 1]) / c1);
    }
    out
}

const RESCALE_AT: f64 = 1e200;
const RESCALE_BY: f64 = 1e-200;

/// p_n and derivatives up to a chosen order, stored with per-entry log scale:
/// the true value of entry n is `value[n] · exp(ln_scale[n])`.
#[derive(Clone, Debug)]
pub(crate) struct ScaledValues {
    pub p: Vec<f64>,
    pub dp: Vec<f64>,
    pub d2p: Vec<f64>,
    pub ln_scale: Vec<f64>,
}

impl ScaledValues {
    fn scale(&self, n: usize) -> f64 {
        self.ln_scale[n].exp()
    }

    pub fn unscaled(&self, order: usize) -> Vec<f64> {
        let v = match order {
            0 => &self.p,
            1 => &self.dp,
            _ => &self.d2p,
        };
        v.iter().enumerate().map(|(n, x)| x * self.scale(n)).collect()
    }
}

/// Evaluator for p_0..p_{n_max} of one family.
#[derive(Clone, Debug)]
pub struct PolySystem {
    family: WeightFamily,
    rec: RecurrenceCoeffs,
}

impl PolySystem {
    pub fn new(family: WeightFamily, n_max: usize) -> Self {
        PolySystem { family, rec: recurrence_coeffs(family, n_max) }
    }

    pub fn family(&self) -> WeightFamily {
        self.family
    }

    pub fn n_max(&self) -> usize {
        self.rec.len()
    }

    pub fn recurrence(&self) -> &RecurrenceCoeffs {
        &self.rec
    }

    fn check_x(&self, x: f64) -> Result<()> {
        let s = self.family.support();
        if s.contains_closed(x) {
            Ok(())
        } else {
            Err(Error::OutsideSupport { x, lower: s.lower, upper: s.upper })
        }
    }

    /// p_0(x), …, p_{n_max}(x).
    pub fn values(&self, x: f64) -> Result<Vec<f64>> {
        self.check_x(x)?;
        Ok(self.scaled(x, 0).unscaled(0))
    }

    /// Derivatives of the requested order (0, 1 or 2).
    pub fn derivatives(&self, x: f64, order: usize) -> Result<Vec<f64>> {
        self.check_x(x)?;
        if order > 2 {
            return Err(Error::InvalidArgument(format!("derivative order {order} > 2")));
        }
        Ok(self.scaled(x, order).unscaled(order))
    }

    /// Scaled evaluation; derivative arrays are filled up to `order`.
    pub(crate) fn scaled(&self, x: f64, order: usize) -> ScaledValues {
        scaled_values(&self.rec, self.rec.len(), x, order)
    }
}

/// Forward recurrence for p, p′, p″ with rescaling against overflow.
pub(crate) fn scaled_values(rec: &RecurrenceCoeffs, n_max: usize, x: f64, order: usize) -> ScaledValues {
    let len = n_max + 1;
    let mut out = ScaledValues {
        p: Vec::with_capacity(len),
        dp: Vec::with_capacity(len),
        d2p: Vec::with_capacity(len),
        ln_scale: Vec::with_capacity(len),
    };
    let mut ln_scale = 0.0;
    let (mut p_prev, mut dp_prev, mut d2_prev) = (0.0, 0.0, 0.0);
    let (mut p, mut dp, mut d2) = (rec.p0(), 0.0, 0.0);
    for n in 0..len {
        out.p.push(p);
        out.dp.push(dp);
        out.d2p.push(d2);
        out.ln_scale.push(ln_scale);
        if n == n_max {
            break;
        }
        let (a, b) = (rec.alpha[n], rec.beta[n]);
        let b_prev = if n == 0 { 0.0 } else { rec.beta[n - 1] };
        let xa = x + a;
        let p_next = (xa * p - b_prev * p_prev) / b;
        let dp_next = if order >= 1 { (xa * dp + p - b_prev * dp_prev) / b } else { 0.0 };
        let d2_next = if order >= 2 { (xa * d2 + 2.0 * dp - b_prev * d2_prev) / b } else { 0.0 };
        (p_prev, dp_prev, d2_prev) = (p, dp, d2);
        (p, dp, d2) = (p_next, dp_next, d2_next);
        if p.abs().max(dp.abs()).max(d2.abs()) > RESCALE_AT {
            p *= RESCALE_BY;
            dp *= RESCALE_BY;
            d2 *= RESCALE_BY;
            p_prev *= RESCALE_BY;
            dp_prev *= RESCALE_BY;
            d2_prev *= RESCALE_BY;
            ln_scale -= RESCALE_BY.ln();
        }
    }
    if rec.alternating {
        for n in (1..len).step_by(2) {
            out.p[n] = -out.p[n];
            out.dp[n] = -out.dp[n];
            out.d2p[n] = -out.d2p[n];
        }
    }
    out
}

/// p_0(x), …, p_{n_max}(x) for x in the closed support.
pub fn eval_poly_sequence(family: WeightFamily, n_max: usize, x: f64) -> Result<Vec<f64>> {
    PolySystem::new(family, n_max).values(x)
}

/// p′_0(x), …, p′_{n_max}(x).
pub fn eval_poly_derivative_sequence(family: WeightFamily, n_max: usize, x: f64) -> Result<Vec<f64>> {
    PolySystem::new(family, n_max).derivatives(x, 1)
}

/// p″_0(x), …, p″_{n_max}(x).
pub fn eval_poly_second_derivative_sequence(
    family: WeightFamily,
    n_max: usize,
    x: f64,
) -> Result<Vec<f64>> {
    PolySystem::new(family, n_max).derivatives(x, 2)
}
