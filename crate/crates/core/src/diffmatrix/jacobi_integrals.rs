//! Integrals of standard Jacobi polynomials P^{(α,α)} against (1 − x²)^{α−1}.
//!
//! 𝔢_m = ∫ (1 − x²)^{α−1} P_{2m} dx and 𝔬_m = ∫ (1 − x²)^{α−1} x P_{2m+1} dx
//! have closed forms; the two-term recursion linking them is kept as an
//! independent cross-check.

use crate::error::{Error, Result};
use crate::special::dd::Dd;
use crate::special::ln_gamma_ratio;

fn require_positive(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha.is_finite() {
        Ok(())
    } else {
        Err(Error::ParameterOutOfRange(format!("alpha = {alpha} must be positive")))
    }
}

/// S_{m,n} = ∫ (1 − x²)^{α−1} P_m P_n dx for m ≥ n, m + n even:
/// (4^α/α) Γ(m+1+α) Γ(n+1+α) / (n! Γ(m+1+2α)).
pub fn ultraspherical_s(alpha: f64, m: usize, n: usize) -> Result<f64> {
    require_positive(alpha)?;
    if (m + n) % 2 == 1 || m < n {
        return Err(Error::InvalidArgument(format!(
            "S_{{m,n}} needs m ≥ n and m + n even, got ({m}, {n})"
        )));
    }
    let (mf, nf) = (m as f64, n as f64);
    let ln = alpha * 4f64.ln() - alpha.ln()
        + ln_gamma_ratio(mf + 1.0 + alpha, mf + 1.0 + 2.0 * alpha)
        + ln_gamma_ratio(nf + 1.0 + alpha, nf + 1.0);
    Ok(ln.exp())
}

/// (𝔢_m, 𝔬_m) from the closed forms.
pub fn e_o_closed(alpha: f64, m: usize) -> Result<(f64, f64)> {
    require_positive(alpha)?;
    let mf = m as f64;
    let base = 0.5 * std::f64::consts::PI.ln() - mf * 4f64.ln();
    let e = base + ln_gamma_ratio(2.0 * mf + 1.0 + alpha, mf + 1.0 + alpha)
        + ln_gamma_ratio(alpha, mf + alpha + 0.5);
    let o = base - std::f64::consts::LN_2
        + ln_gamma_ratio(2.0 * mf + 2.0 + alpha, mf + 1.0 + alpha)
        + ln_gamma_ratio(alpha, mf + alpha + 1.5);
    Ok((e.exp(), o.exp()))
}

/// 𝔢_0..𝔢_{m_max} and 𝔬_0..𝔬_{m_max} from the recursion
///
/// 𝔢_m = (2m+α)(4m−1+2α)/(4m(m+α)) 𝔬_{m−1} − (2m−1+α)(2m+α)/(4m(m+α)) 𝔢_{m−1},
/// 𝔬_m = (2m+1+α)(4m+1+2α)/((2m+1)(2m+1+2α)) 𝔢_m − (2m+α)(2m+1+α)/((2m+1)(2m+1+2α)) 𝔬_{m−1}.
///
/// The wanted solution is the subdominant one, so the recursion runs in
/// double-double arithmetic. 𝔬_0 is derived from 𝔢_0 by the exact ratio
/// (1+α)/(2α+1); rounding in 𝔢_0 then only rescales the whole sequence.
pub fn e_o_recursion(alpha: f64, m_max: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    require_positive(alpha)?;
    let a = Dd::new(alpha);
    let one = Dd::new(1.0);
    let two = Dd::new(2.0);
    let (e0, _) = e_o_closed(alpha, 0)?;
    let mut e = Dd::new(e0);
    let mut o = e * (one + a) / (two * a + one);
    let mut es = vec![e.to_f64()];
    let mut os = vec![o.to_f64()];
    for m in 1..=m_max {
        let mf = Dd::new(m as f64);
        let two_m = Dd::new(2.0 * m as f64);
        let four_m = Dd::new(4.0 * m as f64);
        let den_e = four_m * (mf + a);
        let e_next = ((two_m + a) * (four_m - one + two * a) * o - (two_m - one + a) * (two_m + a) * e) / den_e;
        let den_o = (two_m + one) * (two_m + one + two * a);
        let o_next =
            ((two_m + one + a) * (four_m + one + two * a) * e_next - (two_m + a) * (two_m + one + a) * o) / den_o;
        e = e_next;
        o = o_next;
        es.push(e.to_f64());
        os.push(o.to_f64());
    }
    Ok((es, os))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s_corner_value() {
        assert!((ultraspherical_s(1.0, 0, 0).unwrap() - 2.0).abs() < 1e-15);
        assert!(ultraspherical_s(1.0, 1, 0).is_err());
        assert!(ultraspherical_s(1.0, 0, 2).is_err());
    }

    #[test]
    fn seeds() {
        // ∫ 1 dx = 2 and ∫ x · 2x dx = 4/3 at α = 1.
        let (e, o) = e_o_closed(1.0, 0).unwrap();
        assert!((e - 2.0).abs() < 1e-15);
        assert!((o - 4.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn recursion_first_step() {
        let (e, o) = e_o_recursion(1.0, 1).unwrap();
        let (ce, co) = e_o_closed(1.0, 1).unwrap();
        assert!((e[1] - ce).abs() < 1e-15);
        assert!((o[1] - co).abs() < 1e-15);
    }
}
