//! Elliptic genus of a smooth projective surface from its Chern numbers.
//!
//! The genus is assembled from the degree-3 jet of the theta quotient
//!
//!   h(x) = [x / (e^{x/2} − e^{-x/2})] · (e^{x/2} y^{-1/2} − e^{-x/2} y^{1/2})
//!          · ∏_{n≥1} (1 − qⁿ eˣ y^{-1})(1 − qⁿ e^{-x} y)
//!                    / [(1 − qⁿ eˣ)(1 − qⁿ e^{-x})],
//!
//! whose x⁰ coefficient is ψ. The q^{1/8} and 2∏(1−qⁿ) theta prefactors
//! cancel in the quotient and are never materialised, which keeps all
//! q-exponents integral. For a surface only the symmetric functions
//! x₁² + x₂² = c₁² − 2c₂ and x₁x₂ = c₂ of the Chern roots survive, so
//!
//!   Ell(X) = h₀h₂ · (c₁² − 2c₂) + h₁² · c₂.
//!
//! A [`SurfaceOracle`] caches the expansion and serves plain and twisted
//! Fourier coefficients, extending its order on demand (append-only).

use std::sync::RwLock;

use num_traits::Zero;

use crate::jet::{Jet, JET_DEGREE};
use crate::rat::{inv_factorial, isqrt, rat, rat_int, Rat};
use crate::series::QYSeries;
use crate::Result;

/// A surface, identified by the only data a genus can see: ∫c₁² and ∫c₂.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceSpec {
    pub name: String,
    pub c1sq: i64,
    pub c2: i64,
}

impl SurfaceSpec {
    pub fn new(name: impl Into<String>, c1sq: i64, c2: i64) -> Self {
        Self {
            name: name.into(),
            c1sq,
            c2,
        }
    }

    pub fn p2() -> Self {
        Self::new("P2", 9, 3)
    }

    pub fn p1xp1() -> Self {
        Self::new("P1xP1", 8, 4)
    }

    pub fn k3() -> Self {
        Self::new("K3", 0, 24)
    }

    pub fn abelian() -> Self {
        Self::new("Abelian", 0, 0)
    }

    /// Preset lookup for the CLI surface names.
    pub fn by_name(name: &str) -> Option<Self> {
        match name {
            "P2" => Some(Self::p2()),
            "P1xP1" => Some(Self::p1xp1()),
            "K3" => Some(Self::k3()),
            "Abelian" => Some(Self::abelian()),
            _ => None,
        }
    }
}

/// The theta quotient h(x) as a degree-3 jet, exact through q^q_max.
pub fn theta_quotient_jet(q_max: i64) -> Jet {
    theta_quotient_jet_to_degree(q_max, JET_DEGREE)
}

/// Same quotient carried only to x^degree. The leading 1/(sinh-type)
/// factor must be inverted at full degree 3 before truncating; after that
/// the product phase is closed under the requested degree.
fn theta_quotient_jet_to_degree(q_max: i64, degree: usize) -> Jet {
    assert!(q_max >= 0);
    assert!(degree <= JET_DEGREE);
    // e^{x/2} − e^{-x/2}: x^j coefficient 1/(2^{j−1} j!) for odd j, else 0.
    // The series is odd, so after shifting down by x the jet [1, 0, 1/24, 0]
    // is still exact through x³.
    let sinh = Jet::new(
        (0..=JET_DEGREE)
            .map(|j| {
                let c = if j % 2 == 1 {
                    inv_factorial(j as u32) * rat(1, 1 << (j - 1))
                } else {
                    Rat::zero()
                };
                QYSeries::monomial(0, 0, c, q_max)
            })
            .collect(),
    );
    let prefactor = Jet::one(JET_DEGREE, q_max)
        .div_unit(&sinh.shift_down().expect("sinh jet has zero constant term"))
        .expect("shifted sinh jet is a unit");

    // e^{x/2} y^{-1/2} − e^{-x/2} y^{1/2}: x^j coefficient
    // (y^{-1/2} − (−1)^j y^{1/2}) / (2^j j!).
    let lead = Jet::new(
        (0..=JET_DEGREE)
            .map(|j| {
                let scale = inv_factorial(j as u32) * rat(1, 1 << j);
                let sign = if j % 2 == 0 { -1 } else { 1 };
                QYSeries::from_terms(
                    [(0, -1, scale.clone()), (0, 1, scale * rat_int(sign))],
                    q_max,
                )
            })
            .collect(),
    );

    let mut h = prefactor.mul(&lead).truncate_degree(degree);
    for n in 1..=q_max {
        let num1 = Jet::product_factor(n, -2, rat_int(-1), 1, degree, q_max);
        let num2 = Jet::product_factor(n, 2, rat_int(-1), -1, degree, q_max);
        let den1 = Jet::product_factor(n, 0, rat_int(-1), 1, degree, q_max);
        let den2 = Jet::product_factor(n, 0, rat_int(-1), -1, degree, q_max);
        h = h.mul(&num1).mul(&num2);
        h = h
            .div_unit(&den1)
            .and_then(|h| h.div_unit(&den2))
            .expect("1 − qⁿe^{±x} has unit constant term");
    }
    h
}

/// Elliptic genus of the surface, exact through q^q_max; weight 0, index 1.
/// Only h₀..h₂ enter, so the jet is carried at degree 2 here.
pub fn elliptic_genus(spec: &SurfaceSpec, q_max: i64) -> QYSeries {
    let h = theta_quotient_jet_to_degree(q_max, 2);
    let chern_part = h
        .coeff(0)
        .mul(h.coeff(2))
        .scaled(&rat_int(spec.c1sq - 2 * spec.c2));
    let tangent_part = h.coeff(1).mul(h.coeff(1)).scaled(&rat_int(spec.c2));
    chern_part.add(&tangent_part)
}

/// Largest k with k(k+1)/2 ≤ w: the most distinct positive parts a y-charge
/// of q-weight w can use within one theta-product copy.
pub(crate) fn max_distinct_parts(w: i64) -> i64 {
    if w <= 0 {
        return 0;
    }
    (isqrt(8 * w + 1) - 1) / 2
}

/// Support bound for the surface genus: a nonzero coefficient at q-order m
/// has |l| ≤ charge_bound(m). Each of the two theta-quotient copies in
/// h₀h₂ and h₁² draws its y-charge from factors with distinct q-weights,
/// so each contributes at most max_distinct_parts of its share of m; the
/// two leading factors add one whole charge between them.
pub(crate) fn charge_bound(m: i64) -> i64 {
    if m < 0 {
        return 0;
    }
    let mut best = 0;
    for w in 0..=m / 2 {
        best = best.max(max_distinct_parts(w) + max_distinct_parts(m - w));
    }
    best + 1
}

struct OracleState {
    genus: QYSeries,
    order: i64,
}

/// Cached surface genus with append-only order extension and twisted
/// coefficient access. Reads are repeatable: extension recomputes at a
/// higher order and verifies the overlap is unchanged.
pub struct SurfaceOracle {
    spec: SurfaceSpec,
    state: RwLock<OracleState>,
}

impl SurfaceOracle {
    pub fn new(spec: SurfaceSpec) -> Self {
        let genus = elliptic_genus(&spec, 0);
        assert_support_bound(&genus);
        Self {
            spec,
            state: RwLock::new(OracleState { genus, order: 0 }),
        }
    }

    pub fn spec(&self) -> &SurfaceSpec {
        &self.spec
    }

    pub fn order(&self) -> i64 {
        self.state.read().expect("oracle lock").order
    }

    /// Extend the cached expansion to at least `order`. Previously served
    /// coefficients never change.
    pub fn ensure_order(&self, order: i64) {
        if order <= self.order() {
            return;
        }
        let mut state = self.state.write().expect("oracle lock");
        if order <= state.order {
            return;
        }
        let genus = elliptic_genus(&self.spec, order);
        assert_support_bound(&genus);
        assert!(
            genus.truncated(state.order) == state.genus,
            "oracle extension must preserve previously computed coefficients"
        );
        *state = OracleState { genus, order };
    }

    /// Fourier coefficient c(m, l2/2), extending the cache on demand.
    /// Negative m is out of weak-form support and returns 0.
    pub fn coeff(&self, m: i64, l2: i64) -> Rat {
        if m < 0 {
            return Rat::zero();
        }
        self.ensure_order(m);
        self.state.read().expect("oracle lock").genus.coeff(m, l2)
    }

    /// Twisted Fourier coefficient c_t(m, l2/2) = c(m − lt + t², l2/2 − 2t)
    /// (coefficient-shift rule at n = 1, the surface case).
    pub fn twisted_coeff(&self, t: i64, m: i64, l2: i64) -> Rat {
        assert!(l2 % 2 == 0, "surface genera have integer y-powers");
        let l = l2 / 2;
        let m_shift = m - l * t + t * t;
        if m_shift < 0 {
            return Rat::zero();
        }
        self.coeff(m_shift, l2 - 4 * t)
    }

    /// Run `f` against the cached genus, first extended to `order`.
    /// `f` must not call back into the oracle.
    pub fn with_genus<R>(&self, order: i64, f: impl FnOnce(&QYSeries) -> R) -> R {
        self.ensure_order(order);
        let state = self.state.read().expect("oracle lock");
        f(&state.genus)
    }

    /// Test hook: bump one cached coefficient to exercise negative controls.
    #[cfg(test)]
    pub(crate) fn corrupt_coeff(&self, m: i64, l2: i64, delta: Rat) {
        let mut state = self.state.write().expect("oracle lock");
        state.genus.add_term(m, l2, delta);
    }
}

fn assert_support_bound(genus: &QYSeries) {
    for (m, l2, _) in genus.terms() {
        assert!(
            l2.abs() <= 2 * charge_bound(m),
            "surface genus coefficient ({m}, {l2}) violates the support bound"
        );
    }
}

/// Formal evaluation of the q⁰ slice at y = 1 (the Euler number of the
/// underlying manifold, when the series is a genus).
pub fn euler_from_genus(genus: &QYSeries) -> Result<Rat> {
    let q0 = genus.q0_slice()?;
    Ok(q0
        .slice(0)
        .map(|s| s.eval_at_one())
        .unwrap_or_else(Rat::zero))
}
