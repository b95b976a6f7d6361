//! Linear-time products with separable and symmetrically separable matrices.
//!
//! Flops are counted with a multiply and the add that accumulates it as one
//! operation; a lone multiply or add also counts one. Building the plan
//! (the factors 𝔞, 𝔟) is not counted.

use crate::diffmatrix::{separable_factors, SeparableFactors, Structure};
use crate::error::{Error, Result};
use crate::weights::WeightFamily;

/// Product plan for rows 0..=M of D_N f, f of length N + 1.
#[derive(Clone, Debug)]
pub struct FastProductPlan {
    factors: SeparableFactors,
    m: usize,
    n: usize,
    zero_padding: bool,
    flops: u64,
}

impl FastProductPlan {
    pub fn new(factors: SeparableFactors, m: usize, n: usize) -> Result<Self> {
        if m > n {
            return Err(Error::InvalidArgument(format!("need M ≤ N, got M = {m}, N = {n}")));
        }
        if factors.n_max() < n {
            return Err(Error::LengthMismatch { expected: n + 1, got: factors.a().len() });
        }
        Ok(FastProductPlan { factors, m, n, zero_padding: false, flops: 0 })
    }

    /// Plan for a separable family, with factors to N + 1 so that odd sizes
    /// can be padded on request.
    pub fn for_family(family: WeightFamily, m: usize, n: usize) -> Result<Self> {
        Self::new(separable_factors(family, n + 1)?, m, n)
    }

    /// Allow odd M or N in the symmetric scheme by appending one zero
    /// coefficient.
    pub fn with_zero_padding(mut self, on: bool) -> Self {
        self.zero_padding = on;
        self
    }

    pub fn factors(&self) -> &SeparableFactors {
        &self.factors
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn flops(&self) -> u64 {
        self.flops
    }

    pub fn reset_flops(&mut self) {
        self.flops = 0;
    }

    fn check_input(&self, f: &[f64]) -> Result<()> {
        if f.len() == self.n + 1 {
            Ok(())
        } else {
            Err(Error::LengthMismatch { expected: self.n + 1, got: f.len() })
        }
    }

    /// Rows 0..=M of D f, dispatched on the factor structure.
    pub fn matvec(&mut self, f: &[f64]) -> Result<Vec<f64>> {
        match self.factors.structure() {
            Structure::Separable => self.matvec_separable(f),
            Structure::SymmetricSeparable => self.matvec_symmetric_separable(f),
        }
    }

    /// h_0 = 𝔟_0ρ_0, h_m = −𝔞_mσ_m + 𝔟_mρ_m with σ_m = ∑_{n<m} 𝔟_n f_n and
    /// ρ_m = ∑_{n>m} 𝔞_n f_n; ρ is accumulated from the tail.
    pub fn matvec_separable(&mut self, f: &[f64]) -> Result<Vec<f64>> {
        if self.factors.structure() != Structure::Separable {
            return Err(Error::InvalidArgument("factors are parity structured".into()));
        }
        self.check_input(f)?;
        Ok(self.separable(f, self.m))
    }

    fn separable(&mut self, f: &[f64], m_out: usize) -> Vec<f64> {
        let (a, b) = (self.factors.a(), self.factors.b());
        let n = f.len() - 1;
        let mut rho_at = vec![0.0; m_out + 1];
        let mut rho = 0.0;
        for k in (m_out + 1..=n).rev() {
            rho += a[k] * f[k];
        }
        rho_at[m_out] = rho;
        for m in (0..m_out).rev() {
            rho += a[m + 1] * f[m + 1];
            rho_at[m] = rho;
        }
        let mut h = Vec::with_capacity(m_out + 1);
        h.push(b[0] * rho_at[0]);
        let mut sigma = 0.0;
        for m in 1..=m_out {
            sigma += b[m - 1] * f[m - 1];
            h.push(b[m] * rho_at[m] - a[m] * sigma);
        }
        self.flops += (n - m_out) as u64 + m_out as u64 + 1 + 3 * m_out as u64;
        h
    }

    /// h_i = 𝔞_i ∑_{j<i, j≢i} 𝔟_j f_j − 𝔟_i ∑_{j>i, j≢i} 𝔞_j f_j (mod 2).
    ///
    /// M and N must be even unless zero padding was requested.
    pub fn matvec_symmetric_separable(&mut self, f: &[f64]) -> Result<Vec<f64>> {
        if self.factors.structure() != Structure::SymmetricSeparable {
            return Err(Error::InvalidArgument("factors are not parity structured".into()));
        }
        self.check_input(f)?;
        self.symmetric_padded(f, self.m)
    }

    fn symmetric_padded(&mut self, f: &[f64], m_out: usize) -> Result<Vec<f64>> {
        let n = f.len() - 1;
        if n % 2 == 0 && m_out % 2 == 0 {
            return Ok(self.symmetric(f, m_out));
        }
        if !self.zero_padding {
            return Err(Error::InvalidArgument(format!(
                "the symmetric scheme needs even M and N (got M = {m_out}, N = {n}); enable zero padding"
            )));
        }
        let mut padded = f.to_vec();
        if n % 2 == 1 {
            if self.factors.n_max() < n + 1 {
                return Err(Error::LengthMismatch { expected: n + 2, got: self.factors.a().len() });
            }
            padded.push(0.0);
        }
        let m_even = m_out + m_out % 2;
        let mut h = self.symmetric(&padded, m_even.min(padded.len() - 1));
        h.truncate(m_out + 1);
        Ok(h)
    }

    fn symmetric(&mut self, f: &[f64], m_out: usize) -> Vec<f64> {
        let (a, b) = (self.factors.a(), self.factors.b());
        let n = f.len() - 1;
        let mut rho_at = vec![0.0; m_out + 1];
        let mut rho = [0.0; 2];
        for j in (1..=n).rev() {
            if j <= m_out {
                rho_at[j] = rho[1 - j % 2];
            }
            rho[j % 2] += a[j] * f[j];
        }
        rho_at[0] = rho[1];
        let mut sigma = [0.0; 2];
        let mut h = Vec::with_capacity(m_out + 1);
        for i in 0..=m_out {
            let p = i % 2;
            h.push(a[i] * sigma[1 - p] - b[i] * rho_at[i]);
            if i < m_out {
                sigma[p] += b[i] * f[i];
            }
        }
        self.flops += n as u64 + 2 * (m_out as u64 + 1) + m_out as u64;
        h
    }

    /// Rows 0..=M of D_N^r f. Intermediate vectors keep length N + 1.
    pub fn apply_power(&mut self, f: &[f64], r: u32) -> Result<Vec<f64>> {
        if r == 0 {
            return Err(Error::InvalidArgument("power r must be at least 1".into()));
        }
        self.check_input(f)?;
        let mut v = f.to_vec();
        for step in 0..r {
            let m_out = if step + 1 == r { self.m } else { self.n };
            v = match self.factors.structure() {
                Structure::Separable => self.separable(&v, m_out),
                Structure::SymmetricSeparable => self.symmetric_padded(&v, m_out)?,
            };
        }
        Ok(v)
    }
}
