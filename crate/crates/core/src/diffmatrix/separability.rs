use serde::Serialize;

use super::{dense_diff_matrix, MatrixSection};
use crate::error::{Error, Result};
use crate::weights::WeightFamily;

fn check_margin(d: &MatrixSection, m: usize, n: usize, margin: usize) -> Result<()> {
    if m + margin < d.rows() && n + margin < d.cols() {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange(format!(
            "({m}, {n}) needs a margin of {margin} inside a {}×{} section",
            d.rows(),
            d.cols()
        )))
    }
}

/// ι_{m,n} = D_{m,n} D_{m+1,n+1} − D_{m+1,n} D_{m,n+1}.
pub fn iota(d: &MatrixSection, m: usize, n: usize) -> Result<f64> {
    check_margin(d, m, n, 1)?;
    Ok(d.get(m, n) * d.get(m + 1, n + 1) - d.get(m + 1, n) * d.get(m, n + 1))
}

/// ι̌_{m,n} = D_{m,n} D_{m+2,n+2} − D_{m+2,n} D_{m,n+2}.
pub fn iota_check(d: &MatrixSection, m: usize, n: usize) -> Result<f64> {
    check_margin(d, m, n, 2)?;
    Ok(d.get(m, n) * d.get(m + 2, n + 2) - d.get(m + 2, n) * d.get(m, n + 2))
}

/// Outcome of scanning a square section for separable structure.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeparabilityReport {
    pub size: usize,
    pub max_abs: f64,
    /// max |ι_{m,n}| over m ≥ n + 2.
    pub max_iota: f64,
    /// max |ι̌_{m,n}| over m ≥ n + 2, m + n odd.
    pub max_iota_check: f64,
    /// max |D_{m,n}| over m + n even.
    pub max_even_entry: f64,
    /// Location and value of the largest |ι|.
    pub iota_witness: Option<(usize, usize, f64)>,
    pub iota_check_witness: Option<(usize, usize, f64)>,
    /// Threshold applied to ι and ι̌: 1e−10 · max|D|².
    pub tolerance: f64,
    pub separable: bool,
    pub symmetric_separable: bool,
}

const RELATIVE_TOL: f64 = 1e-10;

fn argmax_abs(values: impl Iterator<Item = (usize, usize, f64)>) -> Option<(usize, usize, f64)> {
    values.fold(None, |best, cur| match best {
        Some(b) if b.2.abs() >= cur.2.abs() => Some(b),
        _ => Some(cur),
    })
}

/// Scans every ι and ι̌ that fits in the section.
///
/// ι and ι̌ are quadratic in D, so the threshold is relative to max|D|². The
/// symmetric verdict also requires the checkerboard of zeros.
pub fn separability_scan(d: &MatrixSection) -> Result<SeparabilityReport> {
    let size = d.rows();
    if d.cols() != size || size < 4 {
        return Err(Error::InvalidArgument(format!(
            "separability scan needs a square section of size ≥ 4, got {}×{}",
            d.rows(),
            d.cols()
        )));
    }
    let max_abs = d.max_abs();
    let tolerance = RELATIVE_TOL * max_abs * max_abs;
    let pairs = |margin: usize| {
        (0..size - margin).flat_map(move |m| (0..=m.saturating_sub(2)).filter(move |&n| m >= n + 2).map(move |n| (m, n)))
    };
    let iota_witness = argmax_abs(pairs(1).map(|(m, n)| (m, n, iota(d, m, n).unwrap_or(0.0))));
    let iota_check_witness = argmax_abs(
        pairs(2).filter(|(m, n)| (m + n) % 2 == 1).map(|(m, n)| (m, n, iota_check(d, m, n).unwrap_or(0.0))),
    );
    let max_iota = iota_witness.map_or(0.0, |w| w.2.abs());
    let max_iota_check = iota_check_witness.map_or(0.0, |w| w.2.abs());
    let max_even_entry = (0..size)
        .flat_map(|m| (0..size).map(move |n| (m, n)))
        .filter(|(m, n)| (m + n) % 2 == 0)
        .map(|(m, n)| d.get(m, n).abs())
        .fold(0.0, f64::max);
    Ok(SeparabilityReport {
        size,
        max_abs,
        max_iota,
        max_iota_check,
        max_even_entry,
        iota_witness,
        iota_check_witness,
        tolerance,
        separable: max_iota <= tolerance,
        symmetric_separable: max_iota_check <= tolerance && max_even_entry <= RELATIVE_TOL * max_abs,
    })
}

/// |ι_{m,n}| at fixed n for each requested m.
pub fn iota_decay_probe(family: WeightFamily, n: usize, m_values: &[usize]) -> Result<Vec<f64>> {
    let Some(&top) = m_values.iter().max() else {
        return Ok(Vec::new());
    };
    let size = top.max(n) + 1;
    let d = dense_diff_matrix(family, size, size)?;
    m_values.iter().map(|&m| iota(&d, m, n).map(f64::abs)).collect()
}

/// Closed form of ι_{2n,2n−1} for the generalized Hermite weight:
/// (n + ½) √(n / (n + μ + ½)).
pub fn generalized_hermite_iota(mu: f64, n: usize) -> f64 {
    let nf = n as f64;
    (nf + 0.5) * (nf / (nf + mu + 0.5)).sqrt()
}

/// Closed form of ι̌_{3,0} for the Konoplev weight.
pub fn konoplev_iota_check_30(alpha: f64, gamma: f64) -> f64 {
    let s = alpha + gamma;
    let num = (4.0 + s) * (6.0 + s);
    let den = 2.0 * (1.0 + alpha) * (2.0 + alpha) * (1.0 + gamma) * (3.0 + gamma);
    (5.0 + s) * (2.0 * gamma + 1.0) * (num / den).sqrt()
}
