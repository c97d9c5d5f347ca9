//! Truncated Fourier expansions in q and y^{1/2}.
//!
//! A [`QYSeries`] stores the coefficients of Σ c(m, l) qᵐ y^l for
//! 2l ∈ ℤ as sparse q-slices of [`YPoly`], each slice a Laurent polynomial
//! in y^{1/2} keyed by the doubled exponent l2 = 2l. The field `q_max` is a
//! validity bound: coefficients with m ≤ q_max are exact, absent means zero;
//! nothing is claimed beyond q_max. q-exponents may be negative (twisted
//! logarithms produce them transiently).
//!
//! Truncation discipline: a binary operation never claims more q-orders
//! than its inputs determine. For series supported in m ≥ 0 this is the
//! usual `min(q_max)`; when an operand has negative q-exponents the bound
//! tightens accordingly (see [`QYSeries::mul`] and [`QYSeries::div_exact`]).

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::rat::Rat;
use crate::ypoly::YPoly;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QYSeries {
    slices: BTreeMap<i64, YPoly>,
    q_max: i64,
}

impl QYSeries {
    /// The zero series, valid through `q_max`.
    pub fn zero(q_max: i64) -> Self {
        Self {
            slices: BTreeMap::new(),
            q_max,
        }
    }

    /// The constant series 1.
    pub fn one(q_max: i64) -> Self {
        Self::monomial(0, 0, crate::rat::rat_int(1), q_max)
    }

    /// Single term c · qᵐ y^{l2/2}.
    pub fn monomial(m: i64, l2: i64, c: Rat, q_max: i64) -> Self {
        let mut s = Self::zero(q_max);
        s.add_term(m, l2, c);
        s
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, i64, Rat)>>(terms: I, q_max: i64) -> Self {
        let mut s = Self::zero(q_max);
        for (m, l2, c) in terms {
            s.add_term(m, l2, c);
        }
        s
    }

    /// Build from a single q-slice.
    pub fn from_slice(m: i64, slice: YPoly, q_max: i64) -> Self {
        let mut s = Self::zero(q_max);
        if m <= q_max && !slice.is_zero() {
            s.slices.insert(m, slice);
        }
        s
    }

    pub fn q_max(&self) -> i64 {
        self.q_max
    }

    /// Lowest stored q-exponent; None for the zero series.
    pub fn q_min(&self) -> Option<i64> {
        self.slices.keys().next().copied()
    }

    fn q_min_eff(&self) -> i64 {
        // For validity bookkeeping the zero series behaves like support ≥ 0.
        self.q_min().unwrap_or(0).min(0)
    }

    pub fn is_zero(&self) -> bool {
        self.slices.is_empty()
    }

    pub fn coeff(&self, m: i64, l2: i64) -> Rat {
        self.slices
            .get(&m)
            .map(|s| s.coeff(l2))
            .unwrap_or_else(Rat::zero)
    }

    pub fn slice(&self, m: i64) -> Option<&YPoly> {
        self.slices.get(&m)
    }

    /// Iterate stored terms as (m, l2, coefficient), ordered.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64, &Rat)> {
        self.slices
            .iter()
            .flat_map(|(&m, s)| s.iter().map(move |(l2, c)| (m, l2, c)))
    }

    pub fn term_count(&self) -> usize {
        self.slices.values().map(|s| s.iter().count()).sum()
    }

    /// Add one term in place, respecting the truncation window.
    pub fn add_term(&mut self, m: i64, l2: i64, c: Rat) {
        if c.is_zero() || m > self.q_max {
            return;
        }
        let slice = self.slices.entry(m).or_default();
        slice.add_term(l2, c);
        if slice.is_zero() {
            self.slices.remove(&m);
        }
    }

    /// Termwise sum; the result is valid through min(q_max).
    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.truncated(self.q_max.min(other.q_max));
        out.add_assign_within_window(other);
        out
    }

    /// In-place accumulation of `other` into the existing validity window.
    /// The window does not move: callers must have arranged
    /// other.q_max ≥ self.q_max (terms beyond the window are ignored).
    pub(crate) fn add_assign_within_window(&mut self, other: &Self) {
        debug_assert!(other.q_max >= self.q_max);
        for (&m, s) in other.slices.range(..=self.q_max) {
            let slice = self.slices.entry(m).or_default();
            slice.add_assign(s);
            if slice.is_zero() {
                self.slices.remove(&m);
            }
        }
    }

    /// In-place subtraction, same window contract as
    /// [`QYSeries::add_assign_within_window`].
    pub(crate) fn sub_assign_within_window(&mut self, other: &Self) {
        debug_assert!(other.q_max >= self.q_max);
        for (&m, s) in other.slices.range(..=self.q_max) {
            let slice = self.slices.entry(m).or_default();
            slice.sub_assign(s);
            if slice.is_zero() {
                self.slices.remove(&m);
            }
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(self.q_max);
        for (m, s) in &self.slices {
            out.slices.insert(*m, s.neg());
        }
        out
    }

    pub fn scaled(&self, s: &Rat) -> Self {
        let mut out = Self::zero(self.q_max);
        if s.is_zero() {
            return out;
        }
        for (m, sl) in &self.slices {
            out.slices.insert(*m, sl.scaled(s));
        }
        out
    }

    /// Exponentwise convolution. For operands supported in m ≥ 0 the result
    /// is valid through min(q_max); negative supports tighten the bound to
    /// min(a.q_max + min(b.q_min, 0), b.q_max + min(a.q_min, 0)), since a
    /// product coefficient at order M draws on a up to M − b.q_min.
    pub fn mul(&self, other: &Self) -> Self {
        let q_max = (self.q_max.min(other.q_max))
            .min(self.q_max + other.q_min_eff())
            .min(other.q_max + self.q_min_eff());
        let mut out = Self::zero(q_max);
        let Some(b_first) = other.q_min() else {
            return out;
        };
        for (&ma, sa) in &self.slices {
            if ma + b_first > q_max {
                break;
            }
            for (&mb, sb) in &other.slices {
                let m = ma + mb;
                if m > q_max {
                    break;
                }
                let slice = out.slices.entry(m).or_default();
                for (la, ca) in sa.iter() {
                    slice.add_scaled_shifted(sb, ca, la);
                }
            }
        }
        out.slices.retain(|_, s| !s.is_zero());
        out
    }

    /// Exact division: find c with `other` · c = `self` through the joint
    /// validity window, order by order in q; each step divides a q-slice
    /// exactly by the divisor's lowest slice. Fails loudly with
    /// [`Error::NonExactDivision`] if any order leaves a remainder.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let Some(b_min) = divisor.q_min() else {
            return Err(Error::NotUnit);
        };
        let b_lead = divisor.slice(b_min).expect("q_min slice exists");
        if self.is_zero() {
            return Ok(Self::zero(self.q_max - b_min));
        }
        let a_min = self.q_min().expect("nonzero");
        // Solving order d consumes a at d + b_min and divisor slices up to
        // d + 2 b_min − a_min; both must lie inside the known windows.
        let out_q_max = (self.q_max - b_min).min(divisor.q_max + a_min - 2 * b_min);
        let c_min = a_min - b_min;
        let mut out = Self::zero(out_q_max);
        for d in c_min..=out_q_max {
            let target = d + b_min;
            let mut rem = self.slice(target).cloned().unwrap_or_default();
            if target - c_min > b_min {
                for (&j, bj) in divisor.slices.range(b_min + 1..=target - c_min) {
                    if let Some(cj) = out.slice(target - j) {
                        let mut prod = YPoly::new();
                        for (lb, cb) in bj.iter() {
                            prod.add_scaled_shifted(cj, cb, lb);
                        }
                        rem.sub_assign(&prod);
                    }
                }
            }
            if rem.is_zero() {
                continue;
            }
            let q = rem
                .div_exact(b_lead)
                .ok_or(Error::NonExactDivision { order: target })?;
            out.slices.insert(d, q);
        }
        Ok(out)
    }

    /// Substitute q → q^s, y → y^s (every exponent multiplied by s ≥ 1).
    pub fn scale_exponents(&self, s: i64) -> Self {
        assert!(s >= 1, "exponent scale must be positive");
        let mut out = Self::zero(self.q_max * s);
        for (m, l2, c) in self.terms() {
            out.add_term(m * s, l2 * s, c.clone());
        }
        out
    }

    /// Restrict the validity window (dropping now-invalid terms).
    pub fn truncated(&self, q_max: i64) -> Self {
        let mut out = Self::zero(q_max.min(self.q_max));
        for (&m, s) in self.slices.range(..=q_max.min(self.q_max)) {
            out.slices.insert(m, s.clone());
        }
        out
    }

    /// The q = 0 slice as a q-degree-0 series. Errors with
    /// [`Error::NegativePowers`] when the q → 0 limit does not exist.
    pub fn q0_slice(&self) -> Result<Self> {
        if self.q_min().is_some_and(|m| m < 0) {
            return Err(Error::NegativePowers);
        }
        let mut out = Self::zero(0);
        if let Some(s) = self.slice(0) {
            out.slices.insert(0, s.clone());
        }
        Ok(out)
    }

    /// Multiply by y^{d/2}: shift every l2 by d.
    pub fn shift_l2(&self, d: i64) -> Self {
        let mut out = Self::zero(self.q_max);
        for (&m, s) in &self.slices {
            out.slices
                .insert(m, YPoly::from_terms(s.iter().map(|(l2, c)| (l2 + d, c.clone()))));
        }
        out
    }

    /// All stored coefficients are integers.
    pub fn is_integral(&self) -> bool {
        self.slices.values().all(|s| s.is_integral())
    }

    /// c(m, −l) = c(m, l) for every stored term.
    pub fn is_y_symmetric(&self) -> bool {
        self.slices.values().all(|s| s.is_symmetric())
    }

    /// Stored terms all have even l2 (integer y-powers).
    pub fn has_integer_y_powers(&self) -> bool {
        self.terms().all(|(_, l2, _)| l2 % 2 == 0)
    }

    /// Check the internal invariants (no zero coefficients, window respected).
    pub fn assert_normalized(&self) {
        for (&m, s) in &self.slices {
            assert!(m <= self.q_max, "stored q-exponent beyond q_max");
            assert!(!s.is_zero(), "empty slice stored");
            for (_, c) in s.iter() {
                assert!(!c.is_zero(), "zero coefficient stored");
            }
        }
    }
}

impl std::ops::Add for &QYSeries {
    type Output = QYSeries;
    fn add(self, rhs: &QYSeries) -> QYSeries {
        QYSeries::add(self, rhs)
    }
}

impl std::ops::Sub for &QYSeries {
    type Output = QYSeries;
    fn sub(self, rhs: &QYSeries) -> QYSeries {
        QYSeries::sub(self, rhs)
    }
}

impl std::ops::Mul for &QYSeries {
    type Output = QYSeries;
    fn mul(self, rhs: &QYSeries) -> QYSeries {
        QYSeries::mul(self, rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_int;

    fn s(terms: &[(i64, i64, i64)], q_max: i64) -> QYSeries {
        QYSeries::from_terms(
            terms.iter().map(|&(m, l2, c)| (m, l2, rat_int(c))),
            q_max,
        )
    }

    #[test]
    fn add_cancellation() {
        let a = s(&[(0, 1, 1)], 4);
        let b = s(&[(0, 1, -1)], 4);
        assert!(a.add(&b).is_zero());
    }

    #[test]
    fn add_identity_and_partial_cancellation() {
        let a = s(&[(0, -1, 1), (0, 1, -1)], 4);
        assert_eq!(a.add(&QYSeries::zero(4)), a);
        let b = s(&[(0, 1, 1)], 4);
        assert_eq!(a.add(&b), s(&[(0, -1, 1)], 4));
    }

    #[test]
    fn mul_binomial_square() {
        let alpha = s(&[(0, -1, 1), (0, 1, -1)], 4);
        let sq = alpha.mul(&alpha);
        assert_eq!(sq, s(&[(0, -2, 1), (0, 0, -2), (0, 2, 1)], 4));
    }

    #[test]
    fn mul_identity() {
        let a = s(&[(1, 2, 3), (2, -4, 7)], 5);
        assert_eq!(a.mul(&QYSeries::one(5)), a);
    }

    #[test]
    fn mul_truncates_beyond_window() {
        // (1 − q y)(1 − q y^{-1}) at q_max = 1: the q² term is discarded.
        let a = s(&[(0, 0, 1), (1, 2, -1)], 1);
        let b = s(&[(0, 0, 1), (1, -2, -1)], 1);
        let p = a.mul(&b);
        assert_eq!(p, s(&[(0, 0, 1), (1, 2, -1), (1, -2, -1)], 1));
    }

    #[test]
    fn mul_validity_with_negative_exponents() {
        // a known to q^3 with support from q^{-2}: a product with itself is
        // only determined through q^{3 + (−2)} = q^1.
        let a = s(&[(-2, 0, 1), (3, 0, 1)], 3);
        let p = a.mul(&a);
        assert_eq!(p.q_max(), 1);
        assert_eq!(p, s(&[(-4, 0, 1), (1, 0, 2)], 1));
    }

    #[test]
    fn div_exact_square_root_factor() {
        let alpha = s(&[(0, -1, 1), (0, 1, -1)], 5);
        let sq = alpha.mul(&alpha);
        assert_eq!(sq.div_exact(&alpha).unwrap(), alpha);
    }

    #[test]
    fn div_exact_by_one() {
        let a = s(&[(0, -2, 1), (2, 4, 5)], 5);
        assert_eq!(a.div_exact(&QYSeries::one(5)).unwrap(), a);
    }

    #[test]
    fn div_exact_quartic_by_quadratic() {
        // (y² − 2 + y^{-2}) ÷ (y − 2 + y^{-1}) = y + 2 + y^{-1}; verified by
        // multiplying back.
        let a = s(&[(0, 4, 1), (0, 0, -2), (0, -4, 1)], 3);
        let b = s(&[(0, 2, 1), (0, 0, -2), (0, -2, 1)], 3);
        let q = a.div_exact(&b).unwrap();
        assert_eq!(q, s(&[(0, 2, 1), (0, 0, 2), (0, -2, 1)], 3));
        assert_eq!(q.mul(&b), a);
    }

    #[test]
    fn div_exact_order_by_order_in_q() {
        let b = s(&[(0, 2, 1), (0, 0, -2), (0, -2, 1), (1, 0, 5)], 6);
        let c = s(&[(0, -2, 3), (2, 2, 1)], 6);
        let a = b.mul(&c);
        assert_eq!(a.div_exact(&b).unwrap(), c);
    }

    #[test]
    fn div_exact_reports_failing_order() {
        // y + y^{-1} is not a multiple of y − 2 + y^{-1}.
        let a = s(&[(1, 2, 1), (1, -2, 1)], 4);
        let b = s(&[(0, 2, 1), (0, 0, -2), (0, -2, 1)], 4);
        match a.div_exact(&b) {
            Err(Error::NonExactDivision { order }) => assert_eq!(order, 1),
            other => panic!("expected NonExactDivision, got {other:?}"),
        }
    }

    #[test]
    fn scale_exponents_examples() {
        let a = s(&[(1, 2, 5)], 3);
        assert_eq!(a.scale_exponents(3), s(&[(3, 6, 5)], 9));
        assert_eq!(a.scale_exponents(1), a);
        let b = s(&[(0, 2, 1), (0, 0, -2), (0, -2, 1)], 2);
        assert_eq!(
            b.scale_exponents(2).truncated(2),
            s(&[(0, 4, 1), (0, 0, -2), (0, -4, 1)], 2)
        );
    }

    #[test]
    fn q0_slice_examples() {
        assert!(QYSeries::zero(3).q0_slice().unwrap().is_zero());
        let a = s(&[(0, 0, 1), (1, 2, 7)], 3);
        assert_eq!(a.q0_slice().unwrap(), s(&[(0, 0, 1)], 0));
        let neg = s(&[(-1, 0, 1)], 3);
        assert_eq!(neg.q0_slice(), Err(Error::NegativePowers));
    }

    #[test]
    fn division_by_zero_is_not_unit() {
        let a = s(&[(0, 0, 1)], 3);
        assert_eq!(a.div_exact(&QYSeries::zero(3)), Err(Error::NotUnit));
    }
}
