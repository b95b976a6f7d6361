//! Expansions in the polynomial basis P = {p_n} and the W-function basis
//! Φ = {φ_n}, partial sums and their derivatives, and error tables.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::diffmatrix::{dense_diff_matrix, separable_factors};
use crate::error::{Error, Result};
use crate::fastops::FastProductPlan;
use crate::orthopoly::{gauss_rule, sqrt_weight_rule, PolySystem, QuadratureRule};
use crate::weights::{FamilyKind, WeightFamily};
use crate::wfunctions::WFunctionBasis;

/// Distance from a finite endpoint at which grid points are evaluated.
pub const ETA: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Basis {
    P,
    Phi,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::P => "P",
            Basis::Phi => "Phi",
        })
    }
}

impl FromStr for Basis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "p" => Ok(Basis::P),
            "phi" => Ok(Basis::Phi),
            _ => Err(Error::InvalidArgument(format!("unknown basis '{s}' (expected p or phi)"))),
        }
    }
}

/// Quadrature used for f̂_n^Φ = ∫ f p_n √w dx.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PhiRule {
    /// Gauss rule for √w itself: ∑ ω_k f(x_k) p_n(x_k).
    #[default]
    SqrtWeight,
    /// Gauss rule for w: ∑ ω_k f(x_k) p_n(x_k) / √w(x_k). Exact on span Φ.
    Weight,
}

/// How ᵈF_N and ᵈᵈF_N are formed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DerivativeMode {
    /// Differentiate the partial sum: ∑ f̂_n φ_n^{(k)}.
    #[default]
    PartialSum,
    /// Expand f^{(k)} in the same basis and sum.
    ExpandDerivative,
    /// Φ basis only: ∑ ((−D)^k f̂)_n φ_n with `extra` additional rows.
    ViaMatrix { extra: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientVector {
    values: Vec<f64>,
    basis: Basis,
    family: WeightFamily,
}

impl CoefficientVector {
    pub fn new(values: Vec<f64>, basis: Basis, family: WeightFamily) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidArgument("coefficient vector is empty".into()));
        }
        if basis == Basis::Phi {
            family.require_vanishing_endpoints()?;
        }
        Ok(CoefficientVector { values, basis, family })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn family(&self) -> WeightFamily {
        self.family
    }

    /// Highest index N.
    pub fn degree(&self) -> usize {
        self.values.len() - 1
    }

    pub fn norm_squared(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum()
    }
}

/// The four functions of the convergence experiments.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TestFunction {
    /// (1 − 2x) cos(πx/2) on (−1, 1).
    Us1,
    /// (1 − 2x) cos²(πx/2) on (−1, 1).
    Us2,
    /// e^{−x} sin x on (0, ∞).
    Lag1,
    /// e^{−x} sin²x on (0, ∞).
    Lag2,
}

impl TestFunction {
    pub const ALL: [TestFunction; 4] = [TestFunction::Us1, TestFunction::Us2, TestFunction::Lag1, TestFunction::Lag2];

    pub fn id(&self) -> &'static str {
        match self {
            TestFunction::Us1 => "us1",
            TestFunction::Us2 => "us2",
            TestFunction::Lag1 => "lag1",
            TestFunction::Lag2 => "lag2",
        }
    }

    /// Family kind whose support matches the function's domain.
    pub fn domain(&self) -> FamilyKind {
        match self {
            TestFunction::Us1 | TestFunction::Us2 => FamilyKind::Ultraspherical,
            TestFunction::Lag1 | TestFunction::Lag2 => FamilyKind::Laguerre,
        }
    }

    /// f^{(order)}(x) for order ≤ 2.
    pub fn eval(&self, x: f64, order: usize) -> f64 {
        use std::f64::consts::PI;
        let h = PI * x / 2.0;
        let (s, c) = h.sin_cos();
        let e = (-x).exp();
        match (self, order) {
            (TestFunction::Us1, 0) => (1.0 - 2.0 * x) * c,
            (TestFunction::Us1, 1) => -2.0 * c - PI / 2.0 * (1.0 - 2.0 * x) * s,
            (TestFunction::Us1, _) => 2.0 * PI * s - PI * PI / 4.0 * (1.0 - 2.0 * x) * c,
            (TestFunction::Us2, 0) => (1.0 - 2.0 * x) * c * c,
            (TestFunction::Us2, 1) => -2.0 * c * c - PI / 2.0 * (1.0 - 2.0 * x) * (PI * x).sin(),
            (TestFunction::Us2, _) => 2.0 * PI * (PI * x).sin() - PI * PI / 2.0 * (1.0 - 2.0 * x) * (PI * x).cos(),
            (TestFunction::Lag1, 0) => e * x.sin(),
            (TestFunction::Lag1, 1) => e * (x.cos() - x.sin()),
            (TestFunction::Lag1, _) => -2.0 * e * x.cos(),
            (TestFunction::Lag2, 0) => e * x.sin().powi(2),
            (TestFunction::Lag2, 1) => e * ((2.0 * x).sin() - x.sin().powi(2)),
            (TestFunction::Lag2, _) => {
                e * (2.0 * (2.0 * x).cos() - 2.0 * (2.0 * x).sin() + x.sin().powi(2))
            }
        }
    }
}

impl fmt::Display for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for TestFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TestFunction::ALL
            .into_iter()
            .find(|t| t.id().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown test function '{s}'")))
    }
}

/// Anything that can be sampled at quadrature nodes.
pub trait Expandable {
    fn value(&self, x: f64) -> f64;
}

impl Expandable for TestFunction {
    fn value(&self, x: f64) -> f64 {
        self.eval(x, 0)
    }
}

impl<F: Fn(f64) -> f64> Expandable for F {
    fn value(&self, x: f64) -> f64 {
        self(x)
    }
}

/// Number of quadrature points used for an expansion of degree N.
pub fn quadrature_size(n: usize) -> usize {
    2 * n + 40
}

/// Coefficients f̂_0..f̂_N with the default Φ rule.
pub fn expand(f: &impl Expandable, basis: Basis, family: WeightFamily, n: usize) -> Result<CoefficientVector> {
    expand_with(f, basis, family, n, PhiRule::default())
}

pub fn expand_with(
    f: &impl Expandable,
    basis: Basis,
    family: WeightFamily,
    n: usize,
    rule: PhiRule,
) -> Result<CoefficientVector> {
    if basis == Basis::Phi {
        family.require_vanishing_endpoints()?;
    }
    let q = quadrature_size(n);
    let (quad, divide_by_sqrt_w) = match (basis, rule) {
        (Basis::P, _) | (Basis::Phi, PhiRule::Weight) => (gauss_rule(family, q)?, basis == Basis::Phi),
        (Basis::Phi, PhiRule::SqrtWeight) => (sqrt_weight_rule(family, q)?, false),
    };
    let values = project(f, family, n, &quad, divide_by_sqrt_w)?;
    CoefficientVector::new(values, basis, family)
}

/// ∑_k ω_k f(x_k) p_n(x_k) [/ √w(x_k)], combined in log space so that tiny
/// weights against huge p_n stay finite.
fn project(
    f: &impl Expandable,
    family: WeightFamily,
    n: usize,
    quad: &QuadratureRule,
    divide_by_sqrt_w: bool,
) -> Result<Vec<f64>> {
    let sys = PolySystem::new(family, n);
    let mut out = vec![0.0; n + 1];
    for (&x, &lw) in quad.nodes.iter().zip(&quad.ln_weights) {
        let fx = f.value(x);
        if !fx.is_finite() {
            return Err(Error::NonFinite { x, value: fx });
        }
        if fx == 0.0 {
            continue;
        }
        let shift = if divide_by_sqrt_w { lw - 0.5 * family.ln_eval(x)? } else { lw };
        let s = sys.scaled(x, 0);
        for (k, o) in out.iter_mut().enumerate() {
            *o += fx * s.p[k] * (shift + s.ln_scale[k]).exp();
        }
    }
    Ok(out)
}

/// Evaluator for F_N and its derivatives.
#[derive(Clone, Debug)]
pub struct PartialSum {
    coeffs: CoefficientVector,
    poly: Option<PolySystem>,
    phi: Option<WFunctionBasis>,
}

impl PartialSum {
    pub fn new(coeffs: CoefficientVector) -> Result<Self> {
        let n = coeffs.degree();
        let (poly, phi) = match coeffs.basis {
            Basis::P => (Some(PolySystem::new(coeffs.family, n)), None),
            Basis::Phi => (None, Some(WFunctionBasis::new(coeffs.family, n)?)),
        };
        Ok(PartialSum { coeffs, poly, phi })
    }

    pub fn coefficients(&self) -> &CoefficientVector {
        &self.coeffs
    }

    /// F_N^{(order)}(x), the derivative taken of the partial sum.
    pub fn eval(&self, x: f64, order: usize) -> Result<f64> {
        if order > 2 {
            return Err(Error::InvalidArgument(format!("derivative order {order} > 2")));
        }
        let s = self.coeffs.family.support();
        if !s.contains_open(x) {
            return Err(Error::OutsideSupport { x, lower: s.lower, upper: s.upper });
        }
        let basis_values = match (&self.poly, &self.phi) {
            (Some(p), _) => p.derivatives(x, order)?,
            (_, Some(b)) => match order {
                0 => b.eval(x)?,
                1 => b.eval_derivative(x)?,
                _ => b.eval_second_derivative(x)?,
            },
            _ => unreachable!("one basis is always present"),
        };
        Ok(self.coeffs.values.iter().zip(&basis_values).map(|(c, v)| c * v).sum())
    }
}

/// F_N^{(order)}(x) for a single point.
pub fn partial_sum_eval(c: &CoefficientVector, x: f64, order: usize) -> Result<f64> {
    PartialSum::new(c.clone())?.eval(x, order)
}

/// Φ coefficients of the k-th derivative of the partial sum, rows 0..=N+extra:
/// ∑ f̂_m φ′_m = ∑_n (−D f̂)_n φ_n.
pub fn derivative_coefficients(c: &CoefficientVector, order: u32, extra: usize) -> Result<CoefficientVector> {
    if c.basis != Basis::Phi {
        return Err(Error::InvalidArgument("derivative through D needs Φ coefficients".into()));
    }
    if order == 0 {
        return Ok(c.clone());
    }
    let k = c.degree() + extra;
    let mut f = c.values.clone();
    f.resize(k + 1, 0.0);
    let mut h = match separable_factors(c.family, k + 1) {
        Ok(factors) => FastProductPlan::new(factors, k, k)?.with_zero_padding(true).apply_power(&f, order)?,
        Err(_) => {
            let d = dense_diff_matrix(c.family, k, k)?.into_entries();
            (0..order).fold(f, |v, _| d.matvec(&v))
        }
    };
    if order % 2 == 1 {
        h.iter_mut().for_each(|v| *v = -*v);
    }
    CoefficientVector::new(h, Basis::Phi, c.family)
}

/// Uniform grid a = x_0 < … < x_{n−1} = b.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    pub a: f64,
    pub b: f64,
    pub n: usize,
}

impl Grid {
    pub fn new(a: f64, b: f64, n: usize) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a < b) || n < 2 {
            return Err(Error::InvalidArgument(format!("bad grid {a}:{b}:{n}")));
        }
        Ok(Grid { a, b, n })
    }

    /// Default plotting grid: [0, 30] with 3001 points for Laguerre,
    /// [−1, 1] with 2001 points for the finite intervals.
    pub fn default_for(family: WeightFamily) -> Self {
        match family.kind() {
            FamilyKind::Laguerre => Grid { a: 0.0, b: 30.0, n: 3001 },
            FamilyKind::GeneralizedHermite => Grid { a: -10.0, b: 10.0, n: 2001 },
            _ => Grid { a: -1.0, b: 1.0, n: 2001 },
        }
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        let h = (self.b - self.a) / (self.n - 1) as f64;
        (0..self.n).map(move |i| if i + 1 == self.n { self.b } else { self.a + h * i as f64 })
    }
}

impl FromStr for Grid {
    type Err = Error;

    /// Parses `a:b:n`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("grid '{s}' is not of the form a:b:n"));
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(bad());
        }
        let a = parts[0].trim().parse().map_err(|_| bad())?;
        let b = parts[1].trim().parse().map_err(|_| bad())?;
        let n = parts[2].trim().parse().map_err(|_| bad())?;
        Grid::new(a, b, n)
    }
}

/// Moves finite support endpoints inward by η.
pub fn clamp_to_support(family: WeightFamily, x: f64, eta: f64) -> f64 {
    let s = family.support();
    x.max(s.lower + eta).min(s.upper - eta)
}

#[derive(Clone, Copy, Debug)]
pub struct ErrorReportOptions {
    pub phi_rule: PhiRule,
    pub mode: DerivativeMode,
    pub eta: f64,
    /// Composite Gauss–Legendre panels for the L₂ error.
    pub l2_panels: usize,
}

impl Default for ErrorReportOptions {
    fn default() -> Self {
        ErrorReportOptions { phi_rule: PhiRule::default(), mode: DerivativeMode::default(), eta: ETA, l2_panels: 64 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ErrorRow {
    pub family: WeightFamily,
    pub basis: Basis,
    pub n: usize,
    pub deriv: usize,
    pub sup_err: f64,
    pub l2_err: f64,
}

impl ErrorRow {
    pub fn log10_sup(&self) -> f64 {
        self.sup_err.log10()
    }

    pub fn log10_l2(&self) -> f64 {
        self.l2_err.log10()
    }
}

/// Sup and L₂ errors of F_N^{(deriv)} against f^{(deriv)} for each N.
pub fn error_report(
    f: TestFunction,
    family: WeightFamily,
    basis: Basis,
    n_list: &[usize],
    grid: &[f64],
    deriv: usize,
) -> Result<Vec<ErrorRow>> {
    error_report_with(f, family, basis, n_list, grid, deriv, &ErrorReportOptions::default())
}

pub fn error_report_with(
    f: TestFunction,
    family: WeightFamily,
    basis: Basis,
    n_list: &[usize],
    grid: &[f64],
    deriv: usize,
    opts: &ErrorReportOptions,
) -> Result<Vec<ErrorRow>> {
    if deriv > 2 {
        return Err(Error::InvalidArgument(format!("derivative order {deriv} > 2")));
    }
    let s = family.support();
    if grid.iter().any(|&x| !s.contains_closed(x)) {
        return Err(Error::InvalidArgument("grid leaves the support".into()));
    }
    let pts: Vec<f64> = grid.iter().map(|&x| clamp_to_support(family, x, opts.eta)).collect();
    let (lo, hi) = pts
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &x| (l.min(x), h.max(x)));
    let l2_rule = if hi > lo { Some(composite_legendre(lo, hi, opts.l2_panels)?) } else { None };
    n_list
        .iter()
        .map(|&n| {
            let evaluator = derivative_evaluator(f, family, basis, n, deriv, opts)?;
            let err = |x: f64| -> Result<f64> { Ok(evaluator.eval(x, evaluator_order(deriv, opts))? - f.eval(x, deriv)) };
            let sup_err = pts.iter().try_fold(0.0f64, |m, &x| Ok::<_, Error>(m.max(err(x)?.abs())))?;
            let l2_err = match &l2_rule {
                Some((nodes, weights)) => nodes
                    .iter()
                    .zip(weights)
                    .try_fold(0.0, |acc, (&x, &w)| Ok::<_, Error>(acc + w * err(x)?.powi(2)))?
                    .sqrt(),
                None => 0.0,
            };
            Ok(ErrorRow { family, basis, n, deriv, sup_err, l2_err })
        })
        .collect()
}

fn evaluator_order(deriv: usize, opts: &ErrorReportOptions) -> usize {
    match opts.mode {
        DerivativeMode::PartialSum => deriv,
        _ => 0,
    }
}

fn derivative_evaluator(
    f: TestFunction,
    family: WeightFamily,
    basis: Basis,
    n: usize,
    deriv: usize,
    opts: &ErrorReportOptions,
) -> Result<PartialSum> {
    let coeffs = match (opts.mode, deriv) {
        (DerivativeMode::ExpandDerivative, d) if d > 0 => {
            expand_with(&|x: f64| f.eval(x, d), basis, family, n, opts.phi_rule)?
        }
        (DerivativeMode::ViaMatrix { extra }, d) => {
            let c = expand_with(&f, basis, family, n, opts.phi_rule)?;
            derivative_coefficients(&c, d as u32, extra)?
        }
        _ => expand_with(&f, basis, family, n, opts.phi_rule)?,
    };
    PartialSum::new(coeffs)
}

/// Nodes and weights of a composite Gauss–Legendre rule on [a, b].
fn composite_legendre(a: f64, b: f64, panels: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let base = gauss_rule(WeightFamily::ultraspherical(0.0)?, 16)?;
    let h = (b - a) / panels.max(1) as f64;
    let mut nodes = Vec::with_capacity(panels * base.len());
    let mut weights = Vec::with_capacity(panels * base.len());
    for p in 0..panels.max(1) {
        let mid = a + h * (p as f64 + 0.5);
        for (t, w) in base.nodes.iter().zip(&base.weights) {
            nodes.push(mid + 0.5 * h * t);
            weights.push(0.5 * h * w);
        }
    }
    Ok((nodes, weights))
}
