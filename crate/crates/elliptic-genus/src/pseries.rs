//! Polynomials in p of bounded degree with [`QYSeries`] coefficients.
//!
//! These carry the generating series over the number of points n: the
//! coefficient of pⁿ is the expansion attached to X^[n] (or to the n-th
//! generalised Kummer variety). Formal log and exp use the standard
//! derivative recursions F' = G'F, which stay inside exact arithmetic.

use crate::rat::{rat, rat_int, Rat};
use crate::series::QYSeries;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PSeries {
    coeffs: Vec<QYSeries>,
}

impl PSeries {
    pub fn zero(p_max: usize, q_max: i64) -> Self {
        Self {
            coeffs: (0..=p_max).map(|_| QYSeries::zero(q_max)).collect(),
        }
    }

    pub fn one(p_max: usize, q_max: i64) -> Self {
        let mut s = Self::zero(p_max, q_max);
        s.coeffs[0] = QYSeries::one(q_max);
        s
    }

    pub fn new(coeffs: Vec<QYSeries>) -> Self {
        assert!(!coeffs.is_empty());
        let q_max = coeffs[0].q_max();
        assert!(
            coeffs.iter().all(|c| c.q_max() == q_max),
            "p-series coefficients must share a q_max"
        );
        Self { coeffs }
    }

    pub fn p_max(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn q_max(&self) -> i64 {
        self.coeffs[0].q_max()
    }

    pub fn coeff(&self, n: usize) -> &QYSeries {
        &self.coeffs[n]
    }

    pub fn coeff_mut(&mut self, n: usize) -> &mut QYSeries {
        &mut self.coeffs[n]
    }

    pub fn add(&self, other: &Self) -> Self {
        let p_max = self.p_max().min(other.p_max());
        Self::new(
            (0..=p_max)
                .map(|n| self.coeffs[n].add(&other.coeffs[n]))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let p_max = self.p_max().min(other.p_max());
        Self::new(
            (0..=p_max)
                .map(|n| self.coeffs[n].sub(&other.coeffs[n]))
                .collect(),
        )
    }

    pub fn scaled(&self, s: &Rat) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.scaled(s)).collect())
    }

    /// Truncated Cauchy product in p.
    pub fn mul(&self, other: &Self) -> Self {
        let p_max = self.p_max().min(other.p_max());
        let q_max = self.q_max().min(other.q_max());
        let mut out = Self::zero(p_max, q_max);
        for i in 0..=p_max {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=p_max - i {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                out.coeffs[i + j] = out.coeffs[i + j].add(&self.coeffs[i].mul(&other.coeffs[j]));
            }
        }
        out
    }

    /// Formal logarithm of a series with constant term 1:
    /// Gₙ = Fₙ − (1/n) Σ_{j=1}^{n−1} j Gⱼ Fₙ₋ⱼ.
    pub fn log(&self) -> Result<Self> {
        if self.coeffs[0] != QYSeries::one(self.q_max()) {
            return Err(Error::NotUnit);
        }
        let mut out = Self::zero(self.p_max(), self.q_max());
        for n in 1..=self.p_max() {
            let mut g = self.coeffs[n].clone();
            for j in 1..n {
                if out.coeffs[j].is_zero() || self.coeffs[n - j].is_zero() {
                    continue;
                }
                let term = out.coeffs[j].mul(&self.coeffs[n - j]).scaled(&rat(j as i64, n as i64));
                g = g.sub(&term);
            }
            out.coeffs[n] = g;
        }
        Ok(out)
    }

    /// Formal exponential of a series with constant term 0:
    /// Fₙ = (1/n) Σ_{j=1}^{n} j Gⱼ Fₙ₋ⱼ.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let mut out = Self::one(self.p_max(), self.q_max());
        for n in 1..=self.p_max() {
            let mut f = QYSeries::zero(self.q_max());
            for j in 1..=n {
                if self.coeffs[j].is_zero() || out.coeffs[n - j].is_zero() {
                    continue;
                }
                let term = self.coeffs[j].mul(&out.coeffs[n - j]).scaled(&rat(j as i64, n as i64));
                f = f.add(&term);
            }
            out.coeffs[n] = f;
        }
        Ok(out)
    }

    /// The operator (p d/dp)²: the pⁿ coefficient is multiplied by n².
    pub fn pdp_squared(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| c.scaled(&rat_int((n * n) as i64)))
                .collect(),
        )
    }
}
