//! Laurent polynomials in y^{1/2}.
//!
//! A [`YPoly`] is one q-slice of a Fourier expansion: finitely many terms
//! c · y^{l2/2} keyed by the doubled exponent l2, so that half-integer
//! y-powers stay integer keys. Exact division of slices is what makes the
//! order-by-order series division in [`crate::series`] exact.
//!
//! Slices stay small (the support bounds keep them at a few dozen terms),
//! so terms live in a sorted Vec and binary ops are two-pointer merges.

use num_traits::{One, Zero};

use crate::rat::Rat;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct YPoly {
    terms: Vec<(i64, Rat)>,
}

impl YPoly {
    pub fn new() -> Self {
        Self::default()
    }

    /// Single term c · y^{l2/2}.
    pub fn monomial(l2: i64, c: Rat) -> Self {
        let mut p = Self::new();
        p.add_term(l2, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Rat)>>(terms: I) -> Self {
        let mut p = Self::new();
        for (l2, c) in terms {
            p.add_term(l2, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, l2: i64) -> Rat {
        match self.terms.binary_search_by_key(&l2, |&(e, _)| e) {
            Ok(idx) => self.terms[idx].1.clone(),
            Err(_) => Rat::zero(),
        }
    }

    /// Lowest (exponent, coefficient), if nonzero.
    pub fn lowest(&self) -> Option<(i64, &Rat)> {
        self.terms.first().map(|(e, c)| (*e, c))
    }

    /// Highest (exponent, coefficient), if nonzero.
    pub fn highest(&self) -> Option<(i64, &Rat)> {
        self.terms.last().map(|(e, c)| (*e, c))
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &Rat)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    /// Add c · y^{l2/2}, dropping the term if it cancels to zero.
    pub fn add_term(&mut self, l2: i64, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.binary_search_by_key(&l2, |&(e, _)| e) {
            Ok(idx) => {
                self.terms[idx].1 += c;
                if self.terms[idx].1.is_zero() {
                    self.terms.remove(idx);
                }
            }
            Err(idx) => self.terms.insert(idx, (l2, c)),
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        self.merge(other, None, 0);
    }

    pub fn sub_assign(&mut self, other: &Self) {
        let minus_one = -Rat::from_integer(1.into());
        self.merge(other, Some(&minus_one), 0);
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }

    pub fn scaled(&self, s: &Rat) -> Self {
        if s.is_zero() {
            return Self::new();
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c * s)).collect(),
        }
    }

    /// self += s · (other shifted by y^{l2_shift/2}).
    pub fn add_scaled_shifted(&mut self, other: &Self, s: &Rat, l2_shift: i64) {
        if s.is_zero() || other.is_zero() {
            return;
        }
        self.merge(other, Some(s), l2_shift);
    }

    /// Two-pointer merge of `self` and scale · (other << shift).
    /// Scales of ±1 skip the rational multiply (and its gcd) entirely.
    fn merge(&mut self, other: &Self, scale: Option<&Rat>, l2_shift: i64) {
        enum Scale<'a> {
            One,
            NegOne,
            General(&'a Rat),
        }
        let scale = match scale {
            None => Scale::One,
            Some(s) if s.is_one() => Scale::One,
            Some(s) if (-s).is_one() => Scale::NegOne,
            Some(s) => Scale::General(s),
        };
        let apply = |c: &Rat| match &scale {
            Scale::One => c.clone(),
            Scale::NegOne => -c.clone(),
            Scale::General(s) => c * *s,
        };
        let lhs = std::mem::take(&mut self.terms);
        let mut out = Vec::with_capacity(lhs.len() + other.terms.len());
        let mut a = lhs.into_iter().peekable();
        let mut b = other.terms.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some(&(ea, _)), Some(&&(eb, _))) => {
                    let eb = eb + l2_shift;
                    if ea < eb {
                        out.push(a.next().unwrap());
                    } else if ea > eb {
                        let (_, c) = b.next().unwrap();
                        out.push((eb, apply(c)));
                    } else {
                        let (_, ca) = a.next().unwrap();
                        let (_, cb) = b.next().unwrap();
                        let v = ca + apply(cb);
                        if !v.is_zero() {
                            out.push((ea, v));
                        }
                    }
                }
                (Some(_), None) => out.push(a.next().unwrap()),
                (None, Some(_)) => {
                    let (e, c) = b.next().unwrap();
                    out.push((e + l2_shift, apply(c)));
                }
                (None, None) => break,
            }
        }
        self.terms = out;
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::new();
        for (la, ca) in self.iter() {
            out.add_scaled_shifted(other, ca, la);
        }
        out
    }

    /// Exact Laurent division: returns q with q · d == self, or None if the
    /// remainder is nonzero. Works from the lowest exponent upward; the
    /// dividend's top never grows, so inexactness is detected as soon as a
    /// quotient term would overshoot the admissible window.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (d_lo, _) = d.lowest()?;
        let (d_hi, _) = d.highest().expect("nonzero divisor has a top term");
        if d_lo == d_hi {
            // Monomial divisor: a plain shift-and-scale.
            let (e, c) = d.lowest().expect("nonzero");
            let inv = Rat::from_integer(1.into()) / c;
            return Some(Self {
                terms: self
                    .terms
                    .iter()
                    .map(|(l2, v)| (l2 - e, v * &inv))
                    .collect(),
            });
        }
        let d_lead = d.coeff(d_lo);
        let mut rem = self.clone();
        let mut quot = Self::new();
        while let Some((r_lo, r_coef)) = rem.lowest().map(|(e, c)| (e, c.clone())) {
            let r_hi = rem.highest().map(|(e, _)| e).expect("nonzero remainder");
            if r_lo - d_lo > r_hi - d_hi {
                return None;
            }
            let q_exp = r_lo - d_lo;
            let q_coef = r_coef / &d_lead;
            rem.add_scaled_shifted(d, &(-q_coef.clone()), q_exp);
            quot.add_term(q_exp, q_coef);
        }
        Some(quot)
    }

    /// Sum of all coefficients (formal evaluation at y = 1).
    pub fn eval_at_one(&self) -> Rat {
        let mut s = Rat::zero();
        for (_, c) in self.iter() {
            s += c;
        }
        s
    }

    /// All stored coefficients are integers.
    pub fn is_integral(&self) -> bool {
        self.iter().all(|(_, c)| crate::rat::is_integer(c))
    }

    /// Invariant under l2 → −l2.
    pub fn is_symmetric(&self) -> bool {
        self.iter().all(|(l2, c)| self.coeff(-l2) == *c)
    }
}
