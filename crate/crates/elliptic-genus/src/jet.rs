//! Truncated jets in a formal variable x with [`QYSeries`] coefficients.
//!
//! The theta-quotient expansion of the genus pipeline only ever needs the
//! coefficients of x⁰..x², but the division by the sinh-type denominator
//! x·(1 + x²/24 + …) costs one order of accuracy, so jets carry degree 3
//! by default ([`JET_DEGREE`]).

use crate::rat::{inv_factorial, Rat};
use crate::series::QYSeries;
use crate::{Error, Result};

pub const JET_DEGREE: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Jet {
    coeffs: Vec<QYSeries>,
}

impl Jet {
    /// Jet with the given x-coefficients; all must share one q_max.
    pub fn new(coeffs: Vec<QYSeries>) -> Self {
        assert!(!coeffs.is_empty());
        let q_max = coeffs[0].q_max();
        assert!(
            coeffs.iter().all(|c| c.q_max() == q_max),
            "jet coefficients must share a q_max"
        );
        Self { coeffs }
    }

    pub fn zero(degree: usize, q_max: i64) -> Self {
        Self {
            coeffs: (0..=degree).map(|_| QYSeries::zero(q_max)).collect(),
        }
    }

    pub fn one(degree: usize, q_max: i64) -> Self {
        let mut jet = Self::zero(degree, q_max);
        jet.coeffs[0] = QYSeries::one(q_max);
        jet
    }

    /// Jet of 1 + c · qⁿ y^{l2/2} e^{s·x} (a single theta-product factor):
    /// the x^j coefficient is c sʲ/j! · qⁿ y^{l2/2}, plus 1 at j = 0.
    pub fn product_factor(n: i64, l2: i64, c: Rat, s: i64, degree: usize, q_max: i64) -> Self {
        let mut jet = Self::zero(degree, q_max);
        for j in 0..=degree {
            let scale = inv_factorial(j as u32) * crate::rat::rat_int(s).pow(j as i32) * &c;
            jet.coeffs[j] = QYSeries::monomial(n, l2, scale, q_max);
        }
        jet.coeffs[0] = jet.coeffs[0].add(&QYSeries::one(q_max));
        jet
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn q_max(&self) -> i64 {
        self.coeffs[0].q_max()
    }

    pub fn coeff(&self, j: usize) -> &QYSeries {
        &self.coeffs[j]
    }

    /// Truncated Cauchy product in x.
    pub fn mul(&self, other: &Self) -> Self {
        let degree = self.degree().min(other.degree());
        let q_max = self.q_max().min(other.q_max());
        let mut out = Self::zero(degree, q_max);
        for i in 0..=degree {
            for j in 0..=degree - i {
                if self.coeffs[i].is_zero() || other.coeffs[j].is_zero() {
                    continue;
                }
                let prod = self.coeffs[i].mul(&other.coeffs[j]);
                out.coeffs[i + j].add_assign_within_window(&prod);
            }
        }
        out
    }

    /// self · other^{-1} where other's x⁰ coefficient is a unit series
    /// (inverted order by order in q). Solved by the quotient recursion
    /// c_j = (a_j − Σ_{i≥1} b_i c_{j−i}) / b₀.
    pub fn div_unit(&self, other: &Self) -> Result<Self> {
        let degree = self.degree().min(other.degree());
        let q_max = self.q_max().min(other.q_max());
        let b0 = &other.coeffs[0];
        if b0.is_zero() {
            return Err(Error::NotUnit);
        }
        let mut out = Self::zero(degree, q_max);
        for j in 0..=degree {
            let mut num = self.coeffs[j].truncated(q_max);
            for i in 1..=j {
                if other.coeffs[i].is_zero() || out.coeffs[j - i].is_zero() {
                    continue;
                }
                num.sub_assign_within_window(&other.coeffs[i].mul(&out.coeffs[j - i]));
            }
            out.coeffs[j] = num.div_exact(b0)?.truncated(q_max);
        }
        Ok(out)
    }

    /// Divide by x: shift coefficients down one slot. Requires a vanishing
    /// x⁰ coefficient; the top slot of the result is unknown and set to 0.
    pub fn shift_down(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let mut coeffs: Vec<QYSeries> = self.coeffs[1..].to_vec();
        coeffs.push(QYSeries::zero(self.q_max()));
        Ok(Self { coeffs })
    }

    /// Drop slots above `degree`. Sound whenever the dropped slots are not
    /// consumed: Cauchy products and quotient recursions never feed higher
    /// slots into lower ones.
    pub fn truncate_degree(&self, degree: usize) -> Self {
        assert!(degree < self.coeffs.len());
        Self {
            coeffs: self.coeffs[..=degree].to_vec(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    fn const_jet(vals: &[Rat], q_max: i64) -> Jet {
        Jet::new(
            vals.iter()
                .map(|v| QYSeries::monomial(0, 0, v.clone(), q_max))
                .collect(),
        )
    }

    #[test]
    fn mul_truncates_in_x() {
        // (1 + x)(1 − x) at degree 3 → 1 − x².
        let a = const_jet(&[rat_int(1), rat_int(1), rat_int(0), rat_int(0)], 2);
        let b = const_jet(&[rat_int(1), rat_int(-1), rat_int(0), rat_int(0)], 2);
        let p = a.mul(&b);
        assert_eq!(p.coeff(0), &QYSeries::one(2));
        assert!(p.coeff(1).is_zero());
        assert_eq!(p.coeff(2), &QYSeries::monomial(0, 0, rat_int(-1), 2));
        assert!(p.coeff(3).is_zero());
    }

    #[test]
    fn shift_down_sinh_denominator() {
        // x + x³/24 → 1 + x²/24.
        let sinh = const_jet(&[rat_int(0), rat_int(1), rat_int(0), rat(1, 24)], 2);
        let shifted = sinh.shift_down().unwrap();
        assert_eq!(shifted.coeff(0), &QYSeries::one(2));
        assert!(shifted.coeff(1).is_zero());
        assert_eq!(shifted.coeff(2), &QYSeries::monomial(0, 0, rat(1, 24), 2));
        assert!(shifted.coeff(3).is_zero());
    }

    #[test]
    fn shift_down_requires_zero_constant() {
        let a = const_jet(&[rat_int(1), rat_int(0), rat_int(0), rat_int(0)], 2);
        assert_eq!(a.shift_down(), Err(Error::NonzeroConstantTerm));
    }

    #[test]
    fn div_unit_inverts_to_requested_order() {
        // 1 / (1 + x²/24) = 1 − x²/24 + O(x⁴); multiply back to 1 + O(x⁴).
        let d = const_jet(&[rat_int(1), rat_int(0), rat(1, 24), rat_int(0)], 2);
        let inv = Jet::one(3, 2).div_unit(&d).unwrap();
        assert_eq!(inv.coeff(2), &QYSeries::monomial(0, 0, rat(-1, 24), 2));
        let back = inv.mul(&d);
        assert_eq!(back.coeff(0), &QYSeries::one(2));
        for j in 1..=3 {
            assert!(back.coeff(j).is_zero(), "x^{j} residue");
        }
    }

    #[test]
    fn div_unit_rejects_zero_leading_series() {
        let d = Jet::zero(3, 2);
        assert_eq!(Jet::one(3, 2).div_unit(&d), Err(Error::NotUnit));
    }

    #[test]
    fn div_unit_inverts_q_series_leading_coefficient() {
        // Divisor with x⁰ coefficient 1 − q: inversion is order-by-order in q.
        let mut d = Jet::one(3, 3);
        d.coeffs[0] = QYSeries::from_terms([(0, 0, rat_int(1)), (1, 0, rat_int(-1))], 3);
        let inv = Jet::one(3, 3).div_unit(&d).unwrap();
        let geom = QYSeries::from_terms(
            (0..=3).map(|m| (m, 0, rat_int(1))),
            3,
        );
        assert_eq!(inv.coeff(0), &geom);
        let back = inv.mul(&d);
        assert_eq!(back.coeff(0), &QYSeries::one(3));
    }
}
