use crate::error::{Error, Result};
use crate::orthopoly::{gauss_rule, PolySystem};
use crate::weights::WeightFamily;

/// (D²)_{m,n} = −¼ ∫ (w′²/w) p_m p_n dx.
///
/// Returns [`Error::Divergent`] when w′²/w is not integrable, which for the
/// Laguerre and ultraspherical weights is exactly α ≤ 1.
pub fn d2_entry_kernel(family: WeightFamily, m: usize, n: usize) -> Result<f64> {
    family.require_vanishing_endpoints()?;
    let sys = PolySystem::new(family, m.max(n));
    let terms = family.kernel_terms()?;
    if terms.is_empty() {
        return Err(Error::InvalidArgument(format!("{family} has w′ ≡ 0")));
    }
    let n_pts = (m + n) / 2 + 4;
    let n_pts = n_pts + n_pts % 2;
    terms.iter().try_fold(0.0, |acc, term| {
        let t = term.normalized()?;
        let rule = gauss_rule(t.family, n_pts)?;
        let sum: f64 = rule
            .nodes
            .iter()
            .zip(&rule.ln_weights)
            .map(|(&x, &lw)| {
                let s = sys.scaled(x, 0);
                let pm = s.p[m] * (0.5 * lw + s.ln_scale[m]).exp();
                let pn = s.p[n] * (0.5 * lw + s.ln_scale[n]).exp();
                x.powi(t.power) * pm * pn
            })
            .sum();
        Ok(acc - 0.25 * t.coef * sum)
    })
}
