use super::tridiagonal::symmetric_tridiagonal_eigenvalues;
use super::{recurrence_coeffs, scaled_values, shifted_jacobi_recurrence, RecurrenceCoeffs};
use crate::error::{Error, Result};
use crate::weights::{FamilyKind, WeightFamily};

/// Nodes and weights of a Gauss rule. `ln_weights` stays accurate where the
/// weights themselves underflow.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub ln_weights: Vec<f64>,
    pub exactness_degree: usize,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// ∑ ω_k g(x_k).
    pub fn integrate(&self, g: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * g(x)).sum()
    }

    fn affine(mut self, scale: f64, ln_weight_factor: f64) -> Self {
        for x in &mut self.nodes {
            *x *= scale;
        }
        for lw in &mut self.ln_weights {
            *lw += ln_weight_factor;
        }
        self.weights = self.ln_weights.iter().map(|l| l.exp()).collect();
        self
    }
}

fn ln_sum_squares(values: &[f64], ln_scale: &[f64]) -> f64 {
    let top = ln_scale.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let sum: f64 = values
        .iter()
        .zip(ln_scale)
        .map(|(v, s)| {
            let f = (s - top).exp();
            (v * f) * (v * f)
        })
        .sum();
    2.0 * top + sum.ln()
}

/// Golub–Welsch with Newton polishing and Christoffel weights
/// 1/∑_{j<n} p_j(x)².
pub(crate) fn rule_from_recurrence(rec: &RecurrenceCoeffs, n: usize) -> Result<QuadratureRule> {
    if n == 0 {
        return Err(Error::InvalidArgument("a Gauss rule needs at least one point".into()));
    }
    if rec.len() < n {
        return Err(Error::LengthMismatch { expected: n, got: rec.len() });
    }
    let diag: Vec<f64> = rec.alpha()[..n].iter().map(|a| -a).collect();
    let mut nodes = symmetric_tridiagonal_eigenvalues(&diag, &rec.beta()[..n - 1])?;
    for x in &mut nodes {
        for _ in 0..2 {
            let v = scaled_values(rec, n, *x, 1);
            let step = v.p[n] / v.dp[n];
            if step.is_finite() && step.abs() <= 1e-6 * (1.0 + x.abs()) {
                *x -= step;
            }
        }
    }
    let ln_weights: Vec<f64> = nodes
        .iter()
        .map(|&x| {
            let v = scaled_values(rec, n - 1, x, 0);
            -ln_sum_squares(&v.p, &v.ln_scale)
        })
        .collect();
    let weights = ln_weights.iter().map(|l| l.exp()).collect();
    Ok(QuadratureRule { nodes, weights, ln_weights, exactness_degree: 2 * n - 1 })
}

/// Mirrors a rule on (0, c) in the variable u = x² onto the symmetric interval.
fn unfold_square_root(half: QuadratureRule) -> QuadratureRule {
    let k = half.len();
    let mut nodes = Vec::with_capacity(2 * k);
    let mut ln_weights = Vec::with_capacity(2 * k);
    for i in (0..k).rev() {
        nodes.push(-half.nodes[i].sqrt());
        ln_weights.push(half.ln_weights[i] - std::f64::consts::LN_2);
    }
    for i in 0..k {
        nodes.push(half.nodes[i].sqrt());
        ln_weights.push(half.ln_weights[i] - std::f64::consts::LN_2);
    }
    let weights = ln_weights.iter().map(|l| l.exp()).collect();
    QuadratureRule { nodes, weights, ln_weights, exactness_degree: 4 * k - 1 }
}

/// n-point Gauss rule for the family's weight.
///
/// For the generalized Hermite and Konoplev weights with even n the rule is
/// assembled from a half-interval rule in u = x² (Laguerre with α = μ − ½,
/// resp. Jacobi on (0, 1)), so no node sits at the origin.
pub fn gauss_rule(family: WeightFamily, n: usize) -> Result<QuadratureRule> {
    if n == 0 {
        return Err(Error::InvalidArgument("a Gauss rule needs at least one point".into()));
    }
    match family.kind() {
        FamilyKind::GeneralizedHermite if n % 2 == 0 => {
            let base = WeightFamily::laguerre(family.mu() - 0.5)?;
            let half = rule_from_recurrence(&recurrence_coeffs(base, n / 2), n / 2)?;
            Ok(unfold_square_root(half))
        }
        FamilyKind::Konoplev if n % 2 == 0 => {
            let rec = shifted_jacobi_recurrence(family.alpha(), family.gamma(), n / 2);
            let half = rule_from_recurrence(&rec, n / 2)?;
            Ok(unfold_square_root(half))
        }
        _ => rule_from_recurrence(&recurrence_coeffs(family, n), n),
    }
}

/// n-point Gauss rule for the weight √w, which is again a member of the same
/// family after rescaling.
pub fn sqrt_weight_rule(family: WeightFamily, n: usize) -> Result<QuadratureRule> {
    let ln2 = std::f64::consts::LN_2;
    match family.kind() {
        FamilyKind::Laguerre => {
            // x^{α/2} e^{−x/2}, x = 2t.
            let a = 0.5 * family.alpha();
            let rule = gauss_rule(WeightFamily::laguerre(a)?, n)?;
            Ok(rule.affine(2.0, (a + 1.0) * ln2))
        }
        FamilyKind::Ultraspherical => gauss_rule(WeightFamily::ultraspherical(0.5 * family.alpha())?, n),
        FamilyKind::GeneralizedHermite => {
            // |x|^μ e^{−x²/2}, x = √2 y.
            let m = family.mu();
            let rule = gauss_rule(WeightFamily::generalized_hermite(0.5 * m)?, n)?;
            Ok(rule.affine(2f64.sqrt(), 0.5 * (m + 1.0) * ln2))
        }
        FamilyKind::Konoplev => {
            // |x|^{γ+½} (1 − x²)^{α/2} = |x|^{2γ′+1} (1 − x²)^{α/2}, γ′ = (2γ − 1)/4.
            let g = 0.25 * (2.0 * family.gamma() - 1.0);
            gauss_rule(WeightFamily::konoplev(0.5 * family.alpha(), g)?, n)
        }
    }
}
