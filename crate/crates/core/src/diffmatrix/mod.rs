//! Differentiation matrices D_{m,n} = ∫ φ′_m φ_n dx.
//!
//! Closed forms exist for the Laguerre, ultraspherical and generalized Hermite
//! weights; every family also has a quadrature constructor that evaluates the
//! defining integral exactly with Gauss rules for shifted weights.

mod jacobi_integrals;
mod kernel;
mod matrix;
mod separability;

pub use jacobi_integrals::{e_o_closed, e_o_recursion, ultraspherical_s};
pub use kernel::d2_entry_kernel;
pub use matrix::{neumaier_sum, DenseMatrix};
pub use separability::{
    generalized_hermite_iota, iota, iota_check, iota_decay_probe, konoplev_iota_check_30,
    separability_scan, SeparabilityReport,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::orthopoly::{gauss_rule, recurrence_coeffs, PolySystem, RecurrenceCoeffs};
use crate::special::ln_gamma_ratio;
use crate::weights::{FamilyKind, WeightFamily, WeightTerm};

/// Which off-diagonal pattern the factors describe.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Structure {
    /// D_{m,n} = −𝔞_m 𝔟_n for m > n, skew completion above.
    Separable,
    /// D_{m,n} = 𝔞_m 𝔟_n for m > n with m + n odd, zero for m + n even.
    SymmetricSeparable,
}

/// Sequences 𝔞, 𝔟 of a separable or symmetrically separable matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SeparableFactors {
    a: Vec<f64>,
    b: Vec<f64>,
    structure: Structure,
}

impl SeparableFactors {
    pub fn new(a: Vec<f64>, b: Vec<f64>, structure: Structure) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::LengthMismatch { expected: a.len(), got: b.len() });
        }
        Ok(SeparableFactors { a, b, structure })
    }

    pub fn a(&self) -> &[f64] {
        &self.a
    }

    pub fn b(&self) -> &[f64] {
        &self.b
    }

    pub fn structure(&self) -> Structure {
        self.structure
    }

    pub fn is_parity_structured(&self) -> bool {
        self.structure == Structure::SymmetricSeparable
    }

    /// Largest index covered.
    pub fn n_max(&self) -> usize {
        self.a.len().saturating_sub(1)
    }

    /// The matrix entry these factors describe.
    pub fn entry(&self, m: usize, n: usize) -> f64 {
        use std::cmp::Ordering::*;
        match self.structure {
            Structure::Separable => match m.cmp(&n) {
                Greater => -self.a[m] * self.b[n],
                Less => self.a[n] * self.b[m],
                Equal => 0.0,
            },
            Structure::SymmetricSeparable => {
                if (m + n) % 2 == 0 {
                    0.0
                } else if m > n {
                    self.a[m] * self.b[n]
                } else {
                    -self.a[n] * self.b[m]
                }
            }
        }
    }

    pub fn to_dense(&self, rows: usize, cols: usize) -> DenseMatrix {
        DenseMatrix::from_fn(rows, cols, |m, n| self.entry(m, n))
    }
}

/// 𝔞_0..𝔞_{n_max}, 𝔟_0..𝔟_{n_max} for the two separable families.
///
/// Both are formed from one Gamma ratio r so that the products 𝔞_m𝔟_m come out
/// at full precision: Laguerre 𝔞 = √(r/2), 𝔟 = √(1/(2r)) with
/// r = m!/Γ(m+1+α); ultraspherical adds the factor (2m+2α+1) and uses
/// r = m!/Γ(m+1+2α).
pub fn separable_factors(family: WeightFamily, n_max: usize) -> Result<SeparableFactors> {
    family.require_vanishing_endpoints()?;
    let alpha = family.alpha();
    let (shift, structure) = match family.kind() {
        FamilyKind::Laguerre => (alpha, Structure::Separable),
        FamilyKind::Ultraspherical => (2.0 * alpha, Structure::SymmetricSeparable),
        _ => {
            return Err(Error::Unsupported(format!(
                "{family} is not separable; use the dense constructors"
            )))
        }
    };
    let (a, b) = (0..=n_max)
        .map(|m| {
            let mf = m as f64;
            let r = ln_gamma_ratio(mf + 1.0, mf + 1.0 + shift).exp();
            let c = match structure {
                Structure::Separable => 1.0,
                Structure::SymmetricSeparable => 2.0 * mf + 2.0 * alpha + 1.0,
            };
            ((0.5 * c * r).sqrt(), (0.5 * c / r).sqrt())
        })
        .unzip();
    SeparableFactors::new(a, b, structure)
}

/// A finite section of D or of one of its powers.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixSection {
    entries: DenseMatrix,
    truncation: usize,
    family: WeightFamily,
    power: u32,
}

/// JSON sidecar describing a stored section.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SectionMeta {
    pub family: WeightFamily,
    pub s: u32,
    pub display: usize,
    pub internal: usize,
    pub max_abs: f64,
}

impl MatrixSection {
    pub fn new(entries: DenseMatrix, truncation: usize, family: WeightFamily, power: u32) -> Self {
        MatrixSection { entries, truncation, family, power }
    }

    pub fn entries(&self) -> &DenseMatrix {
        &self.entries
    }

    pub fn into_entries(self) -> DenseMatrix {
        self.entries
    }

    pub fn get(&self, m: usize, n: usize) -> f64 {
        self.entries.get(m, n)
    }

    pub fn rows(&self) -> usize {
        self.entries.rows()
    }

    pub fn cols(&self) -> usize {
        self.entries.cols()
    }

    /// Size of the internal matrices used to form products.
    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn family(&self) -> WeightFamily {
        self.family
    }

    pub fn power(&self) -> u32 {
        self.power
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.max_abs()
    }

    pub fn meta(&self) -> SectionMeta {
        SectionMeta {
            family: self.family,
            s: self.power,
            display: self.rows(),
            internal: self.truncation,
            max_abs: self.max_abs(),
        }
    }
}

fn ln_factorial_ratio(m: usize, n: usize) -> f64 {
    ln_gamma_ratio(m as f64 + 1.0, n as f64 + 1.0)
}

/// Lower-triangle entry (m > n) from the closed forms.
fn closed_lower(family: WeightFamily, m: usize, n: usize) -> f64 {
    let (mf, nf) = (m as f64, n as f64);
    match family.kind() {
        FamilyKind::Laguerre => {
            let a = family.alpha();
            -0.5 * (0.5 * (ln_gamma_ratio(mf + 1.0, mf + 1.0 + a) + ln_gamma_ratio(nf + 1.0 + a, nf + 1.0)))
                .exp()
        }
        FamilyKind::Ultraspherical => {
            if (m + n) % 2 == 0 {
                return 0.0;
            }
            let a = family.alpha();
            let c = (2.0 * mf + 2.0 * a + 1.0) * (2.0 * nf + 2.0 * a + 1.0);
            0.5 * c.sqrt()
                * (0.5 * (ln_gamma_ratio(mf + 1.0, mf + 1.0 + 2.0 * a)
                    + ln_gamma_ratio(nf + 1.0 + 2.0 * a, nf + 1.0)))
                .exp()
        }
        FamilyKind::GeneralizedHermite => {
            let mu = family.mu();
            match (m % 2, n % 2) {
                (0, 1) => {
                    let (i, j) = (m / 2, (n + 1) / 2);
                    if i == j {
                        (j as f64).sqrt()
                    } else {
                        0.0
                    }
                }
                (1, 0) => {
                    let (i, j) = (m / 2, n / 2);
                    let h = j as f64 + mu + 0.5;
                    if i == j {
                        (2.0 * j as f64 + 1.0) / (2.0 * h.sqrt())
                    } else {
                        let sign = if (i + j) % 2 == 1 { 1.0 } else { -1.0 };
                        let ln = ln_factorial_ratio(i, j) - ln_gamma_ratio(h + (i + 1 - j) as f64, h);
                        sign * mu * (0.5 * ln).exp()
                    }
                }
                _ => 0.0,
            }
        }
        FamilyKind::Konoplev => unreachable!("no closed form"),
    }
}

/// Rows 0..=m_max, columns 0..=n_max of D from the closed forms.
pub fn dense_diff_matrix_closed(family: WeightFamily, m_max: usize, n_max: usize) -> Result<MatrixSection> {
    family.require_vanishing_endpoints()?;
    if family.kind() == FamilyKind::Konoplev {
        return Err(Error::Unsupported(format!(
            "{family} has no closed form; use dense_diff_matrix_quadrature"
        )));
    }
    let entries = DenseMatrix::from_fn(m_max + 1, n_max + 1, |m, n| {
        use std::cmp::Ordering::*;
        match m.cmp(&n) {
            Greater => closed_lower(family, m, n),
            Less => -closed_lower(family, n, m),
            Equal => 0.0,
        }
    });
    Ok(MatrixSection::new(entries, m_max.max(n_max) + 1, family, 1))
}

/// Accumulates out[i][j] += ∑_k left[k][i] · right[k][j].
fn accumulate_products(out: &mut DenseMatrix, left: &[Vec<f64>], right: &[Vec<f64>]) {
    for (l, r) in left.iter().zip(right) {
        for i in 0..out.rows() {
            let li = l[i];
            if li == 0.0 {
                continue;
            }
            for (o, rj) in out.row_mut(i).iter_mut().zip(r) {
                *o += li * rj;
            }
        }
    }
}

/// √ω_k · p_i(x_k) (or p′_i), scaled safely, for every node of a rule.
fn weighted_values(sys: &PolySystem, nodes: &[f64], ln_weights: &[f64], order: usize, len: usize) -> Vec<Vec<f64>> {
    nodes
        .iter()
        .zip(ln_weights)
        .map(|(&x, &lw)| {
            let s = sys.scaled(x, order);
            let v = if order == 0 { &s.p } else { &s.dp };
            (0..len).map(|i| v[i] * (0.5 * lw + s.ln_scale[i]).exp()).collect()
        })
        .collect()
}

/// ∑_terms coef ∫ w_t x^power p_i p_j dx for i < rows, j < cols.
pub(crate) fn term_gram(
    family: WeightFamily,
    terms: &[WeightTerm],
    rows: usize,
    cols: usize,
) -> Result<DenseMatrix> {
    let len = rows.max(cols);
    let sys = PolySystem::new(family, len.saturating_sub(1));
    let mut out = DenseMatrix::zeros(rows, cols);
    for term in terms {
        let t = term.normalized()?;
        let n_pts = len + 3 + (len + 3) % 2;
        let rule = gauss_rule(t.family, n_pts)?;
        let right = weighted_values(&sys, &rule.nodes, &rule.ln_weights, 0, len);
        let left: Vec<Vec<f64>> = right
            .iter()
            .zip(&rule.nodes)
            .map(|(v, &x)| {
                let c = t.coef * x.powi(t.power);
                v[..rows].iter().map(|p| c * p).collect()
            })
            .collect();
        accumulate_products(&mut out, &left, &right);
    }
    Ok(out)
}

/// Rows 0..=m_max, columns 0..=n_max of D from the defining integral
/// ∫ (½ w′ p_m + w p′_m) p_n dx, evaluated exactly for every entry.
///
/// w′ is expanded into weights of the same kind with shifted parameters, so
/// each piece is a polynomial against a Gauss rule. Skew symmetry is not
/// imposed; it is a property of the result.
pub fn dense_diff_matrix_quadrature(family: WeightFamily, m_max: usize, n_max: usize) -> Result<MatrixSection> {
    family.require_vanishing_endpoints()?;
    let (rows, cols) = (m_max + 1, n_max + 1);
    let len = rows.max(cols);
    let terms: Vec<WeightTerm> = family
        .derivative_terms()
        .into_iter()
        .map(|t| WeightTerm { coef: 0.5 * t.coef, ..t })
        .collect();
    let mut entries = term_gram(family, &terms, rows, cols)?;
    let dp = derivative_gram(&recurrence_coeffs(family, len), len);
    for m in 0..rows {
        for (e, c) in entries.row_mut(m).iter_mut().zip(&dp[m]) {
            *e += c;
        }
    }
    Ok(MatrixSection::new(entries, len, family, 1))
}

/// ∫ w p′_m p_n dx for m, n < len: the coefficients of p′_m in the
/// orthonormal basis, from the differentiated recurrence
/// β_k p′_{k+1} = p_k + (x + α_k) p′_k − β_{k−1} p′_{k−1}.
///
/// Evaluating p′ at Gauss nodes close to a finite endpoint loses about n²
/// ulps; this route needs no nodes at all.
pub(crate) fn derivative_gram(rec: &RecurrenceCoeffs, len: usize) -> Vec<Vec<f64>> {
    let (a, b) = (rec.alpha(), rec.beta());
    let mut rows: Vec<Vec<f64>> = vec![vec![0.0; len]];
    for k in 0..len.saturating_sub(1) {
        let cur = &rows[k];
        let b_prev = if k == 0 { 0.0 } else { b[k - 1] };
        let mut next = vec![0.0; len];
        for (j, nx) in next.iter_mut().enumerate().take(k + 1) {
            // (x p′_k) projected on p_j.
            let lower = if j > 0 { b[j - 1] * cur[j - 1] } else { 0.0 };
            let upper = if j + 1 < len { b[j] * cur[j + 1] } else { 0.0 };
            let x_cur = lower - a[j] * cur[j] + upper;
            let prev = if k > 0 { rows[k - 1][j] } else { 0.0 };
            let unit = if j == k { 1.0 } else { 0.0 };
            *nx = (unit + x_cur + a[k] * cur[j] - b_prev * prev) / b[k];
        }
        rows.push(next);
    }
    if rec.alternating() {
        for (m, row) in rows.iter_mut().enumerate() {
            for (n, v) in row.iter_mut().enumerate() {
                if (m + n) % 2 == 1 {
                    *v = -*v;
                }
            }
        }
    }
    rows
}

/// Closed form where one exists, quadrature otherwise.
pub fn dense_diff_matrix(family: WeightFamily, m_max: usize, n_max: usize) -> Result<MatrixSection> {
    match family.kind() {
        FamilyKind::Konoplev => dense_diff_matrix_quadrature(family, m_max, n_max),
        _ => dense_diff_matrix_closed(family, m_max, n_max),
    }
}

/// Top-left display×display block of D^s, with D truncated to internal×internal
/// before forming the power.
pub fn power_section(family: WeightFamily, s: u32, display: usize, internal: usize) -> Result<MatrixSection> {
    if s == 0 {
        return Err(Error::InvalidArgument("power s must be at least 1".into()));
    }
    if display == 0 || internal < display {
        return Err(Error::InvalidArgument(format!(
            "need 0 < display ≤ internal, got display = {display}, internal = {internal}"
        )));
    }
    let d = dense_diff_matrix(family, internal - 1, internal - 1)?.into_entries();
    let mut acc = d.clone();
    for _ in 1..s {
        acc = acc.matmul(&d);
    }
    Ok(MatrixSection::new(acc.block(display, display), internal, family, s))
}
