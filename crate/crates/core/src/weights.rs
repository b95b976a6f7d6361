//! The four weight families and their elementary properties.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::orthopoly::gauss_rule;
use crate::special::ln_gamma;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    /// x^α e^{−x} on (0, ∞)
    Laguerre,
    /// (1 − x²)^α on (−1, 1)
    Ultraspherical,
    /// |x|^{2μ} e^{−x²} on ℝ
    GeneralizedHermite,
    /// |x|^{2γ+1} (1 − x²)^α on (−1, 1)
    Konoplev,
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyKind::Laguerre => "laguerre",
            FamilyKind::Ultraspherical => "ultraspherical",
            FamilyKind::GeneralizedHermite => "genhermite",
            FamilyKind::Konoplev => "konoplev",
        })
    }
}

/// Open support interval (lower, upper); infinite ends are ±∞.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Support {
    pub lower: f64,
    pub upper: f64,
}

impl Support {
    pub fn contains_open(&self, x: f64) -> bool {
        x > self.lower && x < self.upper
    }

    pub fn contains_closed(&self, x: f64) -> bool {
        x.is_finite() && x >= self.lower && x <= self.upper
    }
}

/// A validated weight-family descriptor.
///
/// Parameters are checked against the orthogonality range on construction.
/// Unused parameters are stored as zero.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FamilySpec", into = "FamilySpec")]
pub struct WeightFamily {
    kind: FamilyKind,
    alpha: f64,
    mu: f64,
    gamma: f64,
}

/// Serialized form `{kind, alpha, mu, gamma}`; parameters a family does not use are null.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub alpha: Option<f64>,
    pub mu: Option<f64>,
    pub gamma: Option<f64>,
}

impl TryFrom<FamilySpec> for WeightFamily {
    type Error = Error;

    fn try_from(spec: FamilySpec) -> Result<Self> {
        let need = |v: Option<f64>, name: &str| {
            v.ok_or_else(|| {
                Error::InvalidArgument(format!("{} weight needs parameter {name}", spec.kind))
            })
        };
        match spec.kind {
            FamilyKind::Laguerre => WeightFamily::laguerre(need(spec.alpha, "alpha")?),
            FamilyKind::Ultraspherical => WeightFamily::ultraspherical(need(spec.alpha, "alpha")?),
            FamilyKind::GeneralizedHermite => WeightFamily::generalized_hermite(need(spec.mu, "mu")?),
            FamilyKind::Konoplev => {
                WeightFamily::konoplev(need(spec.alpha, "alpha")?, need(spec.gamma, "gamma")?)
            }
        }
    }
}

impl From<WeightFamily> for FamilySpec {
    fn from(w: WeightFamily) -> Self {
        let (alpha, mu, gamma) = match w.kind {
            FamilyKind::Laguerre | FamilyKind::Ultraspherical => (Some(w.alpha), None, None),
            FamilyKind::GeneralizedHermite => (None, Some(w.mu), None),
            FamilyKind::Konoplev => (Some(w.alpha), None, Some(w.gamma)),
        };
        FamilySpec { kind: w.kind, alpha, mu, gamma }
    }
}

impl fmt::Display for WeightFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FamilyKind::Laguerre | FamilyKind::Ultraspherical => {
                write!(f, "{}(alpha={})", self.kind, self.alpha)
            }
            FamilyKind::GeneralizedHermite => write!(f, "{}(mu={})", self.kind, self.mu),
            FamilyKind::Konoplev => {
                write!(f, "{}(alpha={}, gamma={})", self.kind, self.alpha, self.gamma)
            }
        }
    }
}

fn check(name: &str, value: f64, bound: f64) -> Result<()> {
    if value.is_finite() && value > bound {
        Ok(())
    } else {
        Err(Error::ParameterOutOfRange(format!("{name} = {value} must exceed {bound}")))
    }
}

/// Result of the index predicate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IndexVerdict {
    pub ok: bool,
    /// True when the condition characterises boundedness exactly; false when it
    /// is only necessary.
    pub exact: bool,
}

/// Moments ∫ x^k w̃_s dx of w̃_s = w′^s / w^{s−1}.
#[derive(Clone, Debug, PartialEq)]
pub struct SignedMoments {
    /// Empty when `divergent` is set.
    pub moments: Vec<f64>,
    pub divergent: bool,
}

/// A term `coef · w_family(x) · x^power`. Linear combinations of these express
/// w′, w′²/w and w̃_s through weights of the same kind with shifted parameters.
#[derive(Clone, Copy, Debug)]
pub(crate) struct WeightTerm {
    pub coef: f64,
    pub family: WeightFamily,
    pub power: i32,
}

impl WeightFamily {
    pub fn laguerre(alpha: f64) -> Result<Self> {
        check("alpha", alpha, -1.0)?;
        Ok(WeightFamily { kind: FamilyKind::Laguerre, alpha, mu: 0.0, gamma: 0.0 })
    }

    pub fn ultraspherical(alpha: f64) -> Result<Self> {
        check("alpha", alpha, -1.0)?;
        Ok(WeightFamily { kind: FamilyKind::Ultraspherical, alpha, mu: 0.0, gamma: 0.0 })
    }

    pub fn generalized_hermite(mu: f64) -> Result<Self> {
        check("mu", mu, -0.5)?;
        Ok(WeightFamily { kind: FamilyKind::GeneralizedHermite, alpha: 0.0, mu, gamma: 0.0 })
    }

    pub fn konoplev(alpha: f64, gamma: f64) -> Result<Self> {
        check("alpha", alpha, -1.0)?;
        check("gamma", gamma, -1.0)?;
        Ok(WeightFamily { kind: FamilyKind::Konoplev, alpha, mu: 0.0, gamma })
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// The parameter reported in tables: μ for generalized Hermite, α otherwise.
    pub fn primary_parameter(&self) -> f64 {
        match self.kind {
            FamilyKind::GeneralizedHermite => self.mu,
            _ => self.alpha,
        }
    }

    pub fn support(&self) -> Support {
        match self.kind {
            FamilyKind::Laguerre => Support { lower: 0.0, upper: f64::INFINITY },
            FamilyKind::Ultraspherical | FamilyKind::Konoplev => Support { lower: -1.0, upper: 1.0 },
            FamilyKind::GeneralizedHermite => {
                Support { lower: f64::NEG_INFINITY, upper: f64::INFINITY }
            }
        }
    }

    /// Even weight on a symmetric interval.
    pub fn is_symmetric(&self) -> bool {
        self.kind != FamilyKind::Laguerre
    }

    /// Exponent of |x| at the origin for the two families with an |x| factor.
    fn origin_exponent(&self) -> Option<f64> {
        match self.kind {
            FamilyKind::GeneralizedHermite => Some(2.0 * self.mu),
            FamilyKind::Konoplev => Some(2.0 * self.gamma + 1.0),
            _ => None,
        }
    }

    /// Requires w to vanish at every finite endpoint, which is what makes D skew.
    pub fn require_vanishing_endpoints(&self) -> Result<()> {
        match self.kind {
            FamilyKind::GeneralizedHermite => Ok(()),
            _ if self.alpha > 0.0 => Ok(()),
            _ => Err(Error::ParameterOutOfRange(format!(
                "{self}: W-functions need alpha > 0 so that w vanishes at the endpoints"
            ))),
        }
    }

    /// ln ∫ w dx.
    pub fn ln_mu0(&self) -> f64 {
        let (a, g, m) = (self.alpha, self.gamma, self.mu);
        match self.kind {
            FamilyKind::Laguerre => ln_gamma(a + 1.0),
            FamilyKind::Ultraspherical => {
                (2.0 * a + 1.0) * std::f64::consts::LN_2 + 2.0 * ln_gamma(a + 1.0)
                    - ln_gamma(2.0 * a + 2.0)
            }
            FamilyKind::GeneralizedHermite => ln_gamma(m + 0.5),
            FamilyKind::Konoplev => ln_gamma(g + 1.0) + ln_gamma(a + 1.0) - ln_gamma(a + g + 2.0),
        }
    }

    pub fn mu0(&self) -> f64 {
        self.ln_mu0().exp()
    }

    fn require_interior(&self, x: f64) -> Result<()> {
        let s = self.support();
        if s.contains_open(x) {
            Ok(())
        } else {
            Err(Error::OutsideSupport { x, lower: s.lower, upper: s.upper })
        }
    }

    fn require_origin_finite(&self, x: f64) -> Result<()> {
        match self.origin_exponent() {
            Some(e) if x == 0.0 && e < 0.0 => Err(Error::InvalidArgument(format!(
                "{self} is singular at x = 0"
            ))),
            _ => Ok(()),
        }
    }

    /// ln w(x) for x strictly inside the support.
    pub fn ln_eval(&self, x: f64) -> Result<f64> {
        self.require_interior(x)?;
        self.require_origin_finite(x)?;
        Ok(self.ln_eval_unchecked(x))
    }

    pub(crate) fn ln_eval_unchecked(&self, x: f64) -> f64 {
        let endpoint = |a: f64| {
            if a == 0.0 {
                0.0
            } else {
                a * ((-x).ln_1p() + x.ln_1p())
            }
        };
        let origin = |e: f64| if e == 0.0 { 0.0 } else { e * x.abs().ln() };
        match self.kind {
            FamilyKind::Laguerre => origin(self.alpha) - x,
            FamilyKind::Ultraspherical => endpoint(self.alpha),
            FamilyKind::GeneralizedHermite => origin(2.0 * self.mu) - x * x,
            FamilyKind::Konoplev => origin(2.0 * self.gamma + 1.0) + endpoint(self.alpha),
        }
    }

    /// w(x) for x strictly inside the support.
    pub fn eval(&self, x: f64) -> Result<f64> {
        Ok(self.ln_eval(x)?.exp())
    }

    /// w′(x)/w(x).
    pub fn log_derivative(&self, x: f64) -> Result<f64> {
        self.require_interior(x)?;
        if x == 0.0 {
            if let Some(e) = self.origin_exponent() {
                if e != 0.0 {
                    return Err(Error::Discontinuity(self.to_string()));
                }
            }
        }
        Ok(self.log_derivative_unchecked(x))
    }

    pub(crate) fn log_derivative_unchecked(&self, x: f64) -> f64 {
        let (a, m, g) = (self.alpha, self.mu, self.gamma);
        let origin = |e: f64| if e == 0.0 { 0.0 } else { e / x };
        match self.kind {
            FamilyKind::Laguerre => a / x - 1.0,
            FamilyKind::Ultraspherical => -2.0 * a * x / ((1.0 - x) * (1.0 + x)),
            FamilyKind::GeneralizedHermite => origin(2.0 * m) - 2.0 * x,
            FamilyKind::Konoplev => {
                origin(2.0 * g + 1.0) - 2.0 * a * x / ((1.0 - x) * (1.0 + x))
            }
        }
    }

    /// d/dx of w′/w.
    pub(crate) fn log_derivative_prime_unchecked(&self, x: f64) -> f64 {
        let (a, m, g) = (self.alpha, self.mu, self.gamma);
        let x2 = x * x;
        let origin = |e: f64| if e == 0.0 { 0.0 } else { -e / x2 };
        let endpoint = || {
            let q = (1.0 - x) * (1.0 + x);
            -2.0 * a * (1.0 + x2) / (q * q)
        };
        match self.kind {
            FamilyKind::Laguerre => -a / x2,
            FamilyKind::Ultraspherical => endpoint(),
            FamilyKind::GeneralizedHermite => origin(2.0 * m) - 2.0,
            FamilyKind::Konoplev => origin(2.0 * g + 1.0) + endpoint(),
        }
    }

    /// w′(x). At x = 0 the |x|-type families are accepted only when the origin
    /// exponent is an even integer, where w is smooth.
    pub fn derivative(&self, x: f64) -> Result<f64> {
        self.require_interior(x)?;
        if x == 0.0 {
            if let Some(e) = self.origin_exponent() {
                let smooth = e >= 0.0 && e.fract() == 0.0 && (e as i64) % 2 == 0;
                if !smooth {
                    return Err(Error::Discontinuity(self.to_string()));
                }
                // w is even and smooth at 0.
                return Ok(0.0);
            }
        }
        Ok(self.ln_eval_unchecked(x).exp() * self.log_derivative_unchecked(x))
    }

    /// Index predicate: whether D, …, D^s can all be bounded.
    ///
    /// Exact for Laguerre and ultraspherical weights (α > s − 1). For the two
    /// |x|-type families it checks the endpoint and origin exponents, which is
    /// necessary only.
    pub fn index_lower_bound_ok(&self, s: i32) -> Result<IndexVerdict> {
        if s < 1 {
            return Err(Error::InvalidArgument(format!("index s must be at least 1, got {s}")));
        }
        let bound = f64::from(s) - 1.0;
        let origin_ok = |e: f64| e == 0.0 || e > bound;
        Ok(match self.kind {
            FamilyKind::Laguerre | FamilyKind::Ultraspherical => {
                IndexVerdict { ok: self.alpha > bound, exact: true }
            }
            FamilyKind::GeneralizedHermite => {
                IndexVerdict { ok: origin_ok(2.0 * self.mu), exact: false }
            }
            FamilyKind::Konoplev => IndexVerdict {
                ok: self.alpha > bound && origin_ok(2.0 * self.gamma + 1.0),
                exact: false,
            },
        })
    }

    /// Moments of the signed weight w̃_s = w′^s/w^{s−1}, k = 0..=k_max.
    ///
    /// Divergence is decided from the endpoint exponents; convergent moments are
    /// exact Gauss sums against shifted weights.
    pub fn signed_weight_moments(&self, s: u32, k_max: usize) -> Result<SignedMoments> {
        if s < 1 {
            return Err(Error::InvalidArgument("s must be at least 1".into()));
        }
        if !self.index_lower_bound_ok(s as i32)?.ok {
            return Ok(SignedMoments { moments: Vec::new(), divergent: true });
        }
        let terms = self.log_derivative_power_terms(s)?;
        let top = s as usize + k_max;
        let moments = (0..=k_max)
            .map(|k| {
                terms.iter().try_fold(0.0, |acc, t| {
                    let t = WeightTerm { power: t.power + k as i32, ..*t }.normalized()?;
                    Ok(acc + t.integrate(top / 2 + 2, |_| 1.0)?)
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        Ok(SignedMoments { moments, divergent: false })
    }

    /// w′ as a sum of weight terms.
    pub(crate) fn derivative_terms(&self) -> Vec<WeightTerm> {
        let t = |coef, family, power| WeightTerm { coef, family, power };
        let (a, m, g) = (self.alpha, self.mu, self.gamma);
        let mut out = match self.kind {
            FamilyKind::Laguerre => vec![t(a, *self, -1), t(-1.0, *self, 0)],
            FamilyKind::Ultraspherical => vec![t(-2.0 * a, *self, 1)],
            FamilyKind::GeneralizedHermite => vec![t(2.0 * m, *self, -1), t(-2.0, *self, 1)],
            FamilyKind::Konoplev => vec![t(2.0 * g + 1.0, *self, -1), t(-2.0 * a, *self, 1)],
        };
        // (1 − x²)^{−1} factors are folded into α.
        for term in &mut out {
            if term.power == 1 && matches!(self.kind, FamilyKind::Ultraspherical | FamilyKind::Konoplev) {
                term.family.alpha -= 1.0;
            }
        }
        out.retain(|t| t.coef != 0.0);
        out
    }

    /// (w′/w)^s · w expanded binomially into weight terms (unnormalized).
    pub(crate) fn log_derivative_power_terms(&self, s: u32) -> Result<Vec<WeightTerm>> {
        let binom = |n: u32, k: u32| (0..k).fold(1.0, |acc, j| acc * f64::from(n - j) / f64::from(j + 1));
        let (a, m, g) = (self.alpha, self.mu, self.gamma);
        let si = s as i32;
        let mut out = Vec::new();
        match self.kind {
            FamilyKind::Laguerre => {
                // (α/x − 1)^s
                for j in 0..=s {
                    let coef = binom(s, j) * a.powi(j as i32) * (-1.0f64).powi((s - j) as i32);
                    out.push(WeightTerm { coef, family: *self, power: -(j as i32) });
                }
            }
            FamilyKind::Ultraspherical => {
                let family = WeightFamily { alpha: a - f64::from(s), ..*self };
                out.push(WeightTerm { coef: (-2.0 * a).powi(si), family, power: si });
            }
            FamilyKind::GeneralizedHermite => {
                // (2μ/x − 2x)^s
                for j in 0..=s {
                    let coef = binom(s, j) * (2.0 * m).powi(j as i32) * (-2.0f64).powi((s - j) as i32);
                    out.push(WeightTerm { coef, family: *self, power: si - 2 * j as i32 });
                }
            }
            FamilyKind::Konoplev => {
                // ((2γ+1)/x − 2αx/(1−x²))^s
                for j in 0..=s {
                    let coef = binom(s, j)
                        * (2.0 * g + 1.0).powi(j as i32)
                        * (-2.0 * a).powi((s - j) as i32);
                    let family = WeightFamily { alpha: a - f64::from(s - j), ..*self };
                    out.push(WeightTerm { coef, family, power: si - 2 * j as i32 });
                }
            }
        }
        out.retain(|t| t.coef != 0.0);
        Ok(out)
    }

    /// w′²/w as a sum of weight terms.
    pub(crate) fn kernel_terms(&self) -> Result<Vec<WeightTerm>> {
        self.log_derivative_power_terms(2)
    }
}

impl WeightTerm {
    /// Folds negative powers of x into the weight's origin exponent where that
    /// is exact, then validates the resulting weight. An invalid weight means
    /// the integral diverges.
    pub(crate) fn normalized(self) -> Result<WeightTerm> {
        let f = self.family;
        let diverges = |e: Error| Error::Divergent(format!("term x^{} against {f}: {e}", self.power));
        let (family, power) = match f.kind {
            FamilyKind::Laguerre if self.power < 0 => (
                WeightFamily::laguerre(f.alpha + f64::from(self.power)).map_err(diverges)?,
                0,
            ),
            FamilyKind::GeneralizedHermite if self.power < -1 => {
                let shift = self.power / 2;
                let fam = WeightFamily::generalized_hermite(f.mu + f64::from(shift)).map_err(diverges)?;
                (fam, self.power - 2 * shift)
            }
            FamilyKind::Konoplev if self.power < -1 => {
                let shift = self.power / 2;
                let fam = WeightFamily::konoplev(f.alpha, f.gamma + f64::from(shift)).map_err(diverges)?;
                (fam, self.power - 2 * shift)
            }
            _ => {
                let fam = match f.kind {
                    FamilyKind::Laguerre => WeightFamily::laguerre(f.alpha),
                    FamilyKind::Ultraspherical => WeightFamily::ultraspherical(f.alpha),
                    FamilyKind::GeneralizedHermite => WeightFamily::generalized_hermite(f.mu),
                    FamilyKind::Konoplev => WeightFamily::konoplev(f.alpha, f.gamma),
                }
                .map_err(diverges)?;
                (fam, self.power)
            }
        };
        if power < 0 && !family.is_symmetric() {
            return Err(Error::Divergent(format!("x^{power} against {family}")));
        }
        Ok(WeightTerm { coef: self.coef, family, power })
    }

    /// coef · ∫ w_family x^power g dx with an n-point Gauss rule (n is rounded
    /// up to even so that a power of −1 never meets a node at the origin).
    pub(crate) fn integrate(&self, n: usize, g: impl Fn(f64) -> f64) -> Result<f64> {
        let n = if self.power < 0 { n + n % 2 } else { n };
        let rule = gauss_rule(self.family, n)?;
        let sum: f64 = rule
            .nodes
            .iter()
            .zip(&rule.weights)
            .map(|(&x, &w)| w * x.powi(self.power) * g(x))
            .sum();
        Ok(self.coef * sum)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn eval_examples() {
        let lag = WeightFamily::laguerre(2.0).unwrap();
        assert!(close(lag.eval(1.0).unwrap(), (-1.0f64).exp(), 1e-15));
        assert_eq!(WeightFamily::ultraspherical(3.0).unwrap().eval(0.0).unwrap(), 1.0);
        let kon = WeightFamily::konoplev(1.0, 0.0).unwrap();
        assert!(close(kon.eval(0.5).unwrap(), 0.375, 1e-15));
    }

    #[test]
    fn boundary_rejected() {
        let lag = WeightFamily::laguerre(1.0).unwrap();
        assert!(matches!(lag.eval(0.0), Err(Error::OutsideSupport { .. })));
        let us = WeightFamily::ultraspherical(1.0).unwrap();
        assert!(us.eval(1.0).is_err());
        assert!(us.eval(-1.5).is_err());
    }

    #[test]
    fn parameter_bounds() {
        assert!(WeightFamily::laguerre(-1.0).is_err());
        assert!(WeightFamily::generalized_hermite(-0.5).is_err());
        assert!(WeightFamily::konoplev(0.5, -1.2).is_err());
        assert!(WeightFamily::konoplev(0.5, f64::NAN).is_err());
        assert!(WeightFamily::laguerre(-0.5).unwrap().require_vanishing_endpoints().is_err());
    }

    #[test]
    fn derivative_examples() {
        let lag = WeightFamily::laguerre(1.0).unwrap();
        assert!(lag.derivative(1.0).unwrap().abs() < 1e-16);
        for a in [0.5, 2.0, 3.0] {
            assert_eq!(WeightFamily::ultraspherical(a).unwrap().derivative(0.0).unwrap(), 0.0);
        }
        let gh = WeightFamily::generalized_hermite(0.25).unwrap();
        assert!(matches!(gh.derivative(0.0), Err(Error::Discontinuity(_))));
        let gh1 = WeightFamily::generalized_hermite(1.0).unwrap();
        assert_eq!(gh1.derivative(0.0).unwrap(), 0.0);
        let kon = WeightFamily::konoplev(1.0, -0.5).unwrap();
        assert_eq!(kon.derivative(0.0).unwrap(), 0.0);
    }

    #[test]
    fn index_examples() {
        let lag2 = WeightFamily::laguerre(2.0).unwrap();
        assert!(lag2.index_lower_bound_ok(2).unwrap().ok);
        assert!(lag2.index_lower_bound_ok(2).unwrap().exact);
        assert!(!WeightFamily::ultraspherical(1.0).unwrap().index_lower_bound_ok(2).unwrap().ok);
        assert!(WeightFamily::laguerre(1.0).unwrap().index_lower_bound_ok(1).unwrap().ok);
        assert!(lag2.index_lower_bound_ok(0).is_err());
        let gh = WeightFamily::generalized_hermite(0.5).unwrap();
        assert!(!gh.index_lower_bound_ok(1).unwrap().exact);
    }

    #[test]
    fn signed_moments() {
        let lag = WeightFamily::laguerre(3.0).unwrap();
        let m = lag.signed_weight_moments(2, 3).unwrap();
        assert!(!m.divergent);
        // ∫ x^{α−2} e^{−x} (α − x)² dx = α²Γ(α−1) − 2αΓ(α) + Γ(α+1) at α = 3.
        assert!(close(m.moments[0], 9.0 - 12.0 + 6.0, 1e-13));
        let us = WeightFamily::ultraspherical(1.0).unwrap();
        assert!(us.signed_weight_moments(2, 2).unwrap().divergent);
        for fam in [
            WeightFamily::laguerre(1.5).unwrap(),
            WeightFamily::ultraspherical(2.0).unwrap(),
            WeightFamily::generalized_hermite(0.5).unwrap(),
            WeightFamily::konoplev(1.0, 0.25).unwrap(),
        ] {
            let m = fam.signed_weight_moments(1, 0).unwrap();
            assert!(m.moments[0].abs() < 1e-13, "{fam}: {}", m.moments[0]);
        }
    }

    #[test]
    fn serde_round_trip() {
        let kon = WeightFamily::konoplev(1.0, -0.5).unwrap();
        let text = serde_json::to_string(&kon).unwrap();
        assert_eq!(text, r#"{"kind":"konoplev","alpha":1.0,"mu":null,"gamma":-0.5}"#);
        let back: WeightFamily = serde_json::from_str(&text).unwrap();
        assert_eq!(back, kon);
        let bad = serde_json::from_str::<WeightFamily>(r#"{"kind":"laguerre","alpha":-3.0}"#);
        assert!(bad.is_err());
    }
}
