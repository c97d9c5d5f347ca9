//! The weight −1 form ψ, its square, Hecke operators and coefficient laws.
//!
//! ψ = (y^{-1/2} − y^{1/2}) ∏_{n≥1} (1 − qⁿy)(1 − qⁿy^{-1})/(1 − qⁿ)²
//! is expanded here directly from the product; the theta-quotient jet in
//! [`crate::surface`] provides an independent construction of the same
//! series, and the two are compared in tests.

use num_traits::Zero;

use crate::rat::{isqrt, rat, rat_int, Rat};
use crate::series::QYSeries;
use crate::ypoly::YPoly;
use crate::{Error, Report, Result};

/// Weight and doubled index carried alongside an expansion. Metadata only:
/// it never alters arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JacobiMeta {
    pub weight: i64,
    pub index2: i64,
}

impl JacobiMeta {
    pub fn new(weight: i64, index2: i64) -> Self {
        Self { weight, index2 }
    }

    /// Index bookkeeping of the Hecke operator V(n): J_{k,r} → J_{k,nr}.
    pub fn hecke(self, n: i64) -> Self {
        Self {
            weight: self.weight,
            index2: self.index2 * n,
        }
    }
}

/// Metadata of ψ: weight −1, index 1/2.
pub fn psi_meta() -> JacobiMeta {
    JacobiMeta::new(-1, 1)
}

/// Metadata of ψ²: weight −2, index 1.
pub fn psi_squared_meta() -> JacobiMeta {
    JacobiMeta::new(-2, 2)
}

/// y^{-1/2} − y^{1/2} as a q-degree-0 series.
pub(crate) fn leading_alpha(q_max: i64) -> QYSeries {
    QYSeries::from_terms([(0, -1, rat_int(1)), (0, 1, rat_int(-1))], q_max)
}

/// ψ expanded exactly through q^q_max from its infinite product; factors
/// with n > q_max cannot contribute inside the window.
pub fn psi(q_max: i64) -> QYSeries {
    assert!(q_max >= 0);
    let mut out = leading_alpha(q_max);
    for n in 1..=q_max {
        let f1 = QYSeries::from_terms([(0, 0, rat_int(1)), (n, 2, rat_int(-1))], q_max);
        let f2 = QYSeries::from_terms([(0, 0, rat_int(1)), (n, -2, rat_int(-1))], q_max);
        out = out.mul(&f1).mul(&f2).mul(&inverse_square_factor(n, q_max));
    }
    out
}

/// (1 − qⁿ)^{-2} = Σ_j (j+1) q^{nj}, truncated.
fn inverse_square_factor(n: i64, q_max: i64) -> QYSeries {
    QYSeries::from_terms(
        (0..=q_max / n).map(|j| (n * j, 0, rat_int(j + 1))),
        q_max,
    )
}

/// ψ², the weight −2, index 1 generator; its coefficients are the u(m, l)
/// family entering the Kummer formulas.
pub fn psi_squared(q_max: i64) -> QYSeries {
    let p = psi(q_max);
    p.mul(&p)
}

/// The Hecke operator V(n) on Fourier coefficients:
/// (φ|_k V(n)) = Σ_{a|n} a^{k−1} Σ_{m,l} c(mn/a, l) q^{am} y^{al}.
///
/// Producing output through q^out_q_max draws on φ up to order
/// out_q_max · n (the a = 1 summand), so the input must be at least that
/// wide or the call fails with [`Error::InsufficientOrder`].
pub fn hecke_v(phi: &QYSeries, weight: i64, n: i64, out_q_max: i64) -> Result<QYSeries> {
    assert!(n >= 1, "Hecke operator needs a positive index");
    assert!(
        phi.q_min().is_none_or(|m| m >= 0),
        "Hecke operator input must be supported in m >= 0"
    );
    let need = out_q_max * n;
    if phi.q_max() < need {
        return Err(Error::InsufficientOrder {
            have: phi.q_max(),
            need,
        });
    }
    let mut out = QYSeries::zero(out_q_max);
    for a in 1..=n {
        if n % a != 0 {
            continue;
        }
        // a^{k−1} with k possibly negative.
        let weight_factor = int_pow(a, weight - 1);
        let ratio = n / a;
        for m in 0..=out_q_max / a {
            let Some(slice) = phi.slice(m * ratio) else {
                continue;
            };
            for (l2, c) in slice.iter() {
                out.add_term(a * m, a * l2, c * &weight_factor);
            }
        }
    }
    Ok(out)
}

/// χ_{−y}(X) = y^{d/2} · Ell(X)|_{q=0} for a genus of a d-dimensional
/// manifold: the q⁰ slice with every l2 shifted by d.
pub fn chi_from_genus(e: &QYSeries, d: i64) -> Result<QYSeries> {
    assert!(d % 2 == 0, "complex dimension doubling must be even");
    Ok(e.q0_slice()?.shift_l2(d))
}

/// Coefficient-level weak-Jacobi-form laws for a series with integer index
/// r = meta.index2 / 2 ≥ 1:
///
/// (a) c(m, l) = c(m', l') whenever 4rm − l² = 4rm' − l'² and
///     l ≡ l' (mod 2r), for pairs inside the computed window;
/// (b) c(m, −l) = (−1)^k c(m, l).
///
/// For r = 0 the discriminant classes degenerate and only (b) is checked.
pub fn jacobi_property_check(phi: &QYSeries, meta: JacobiMeta) -> Report {
    assert!(meta.index2 % 2 == 0, "check requires an integer index");
    assert!(meta.index2 >= 0);
    assert!(phi.q_min().is_none_or(|m| m >= 0));
    let r = meta.index2 / 2;
    let q_max = phi.q_max();
    let mut report = Report::new(format!(
        "weak-Jacobi coefficient laws (k={}, r={}) through q^{}",
        meta.weight, r, q_max
    ));

    let parity_sign = if meta.weight % 2 == 0 { 1 } else { -1 };
    for (m, l2, c) in phi.terms() {
        let mirrored = phi.coeff(m, -l2) * rat_int(parity_sign);
        if *c != mirrored {
            report.record(format!(
                "parity: c({m}, {l2}) = {} but (−1)^k c({m}, {}) = {}",
                crate::rat::format_rat(c),
                -l2,
                crate::rat::format_rat(&mirrored),
            ));
        }
    }
    if r == 0 {
        return report;
    }

    // Discriminant classes: partners of stored (m, l) are (m + lj + rj²,
    // l + 2rj) for j ∈ ℤ, plus the parity mirror handled above. Any
    // violating pair has at least one stored member, so scanning partners
    // of stored terms inside the window sees every violation.
    for (m, l2, c) in phi.terms() {
        if l2 % 2 != 0 {
            report.record(format!("half-integer y-power ({m}, {l2}) with integer index"));
            continue;
        }
        let l = l2 / 2;
        let j_span = (l.abs() + isqrt(l * l + 4 * r * q_max)) / (2 * r) + 2;
        for j in -j_span..=j_span {
            let m2 = m + l * j + r * j * j;
            let l2b = l2 + 4 * r * j;
            if !(0..=q_max).contains(&m2) || (m2, l2b) == (m, l2) {
                continue;
            }
            let partner = phi.coeff(m2, l2b);
            if *c != partner {
                // Report each unordered pair once.
                if (m, l2) < (m2, l2b) || partner.is_zero() {
                    report.record(format!(
                        "discriminant: c({m}, {l2}) = {} but c({m2}, {l2b}) = {}",
                        crate::rat::format_rat(c),
                        crate::rat::format_rat(&partner),
                    ));
                }
            }
        }
    }
    report
}

/// Exact Laurent polynomial (yᵃ + y^{−a} − 2)/(y + y^{−1} − 2)
/// = (1 + y + ... + y^{a−1})² · y^{1−a}, as a q-degree-0 series.
pub(crate) fn cusp_ratio(a: i64) -> YPoly {
    let ones = YPoly::from_terms((0..a).map(|j| (2 * j, rat_int(1))));
    let mut sq = ones.mul(&ones);
    sq = YPoly::from_terms(sq.iter().map(|(l2, c)| (l2 + 2 * (1 - a), c.clone())));
    sq
}

/// a^{k} as an exact rational for possibly negative k.
pub(crate) fn int_pow(a: i64, k: i64) -> Rat {
    if k >= 0 {
        rat_int(a).pow(k as i32)
    } else {
        rat(1, 1) / rat_int(a).pow((-k) as i32)
    }
}
