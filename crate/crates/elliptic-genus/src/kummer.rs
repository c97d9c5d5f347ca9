//! Elliptic genera of generalised Kummer varieties, by three routes.
//!
//! Hecke route:      Ell(A^[[n]]) = n⁴ ψ^{-2} (ψ²|₋₂ V(n)).
//!
//! Hilbert route:    ψ^{-2} (1/c₁²) (p d/dp)² [L(1) + L(−1) − 2L(0)] with
//!                   L(t) = ln Ell_{tψ}(H_X(p)), for any surface with
//!                   c₁² ≠ 0; the pⁿ coefficient is Ell(A^[[n]]). The ψ^{-2}
//!                   conversion between the plain and ψ-normalised twist is
//!                   p-independent, so it commutes with (p d/dp)².
//!
//! χ_y route:        χ_{−y}(A^[[n]]) = y^{n−1} n⁴ Σ_{a|n} a^{−3}
//!                   (yᵃ + y^{−a} − 2)/(y + y^{−1} − 2), a closed Laurent
//!                   polynomial matching the q⁰ slice of the other two.
//!
//! The first two must agree coefficientwise, for every admissible surface:
//! that identity is the crate's central cross-check, run by
//! [`routes_compare`] and the acceptance suite.

use num_traits::ToPrimitive;

use crate::rat::{rat, rat_int};
use crate::series::QYSeries;
use crate::surface::{SurfaceOracle, SurfaceSpec};
use crate::theta::{
    chi_from_genus, cusp_ratio, hecke_v, int_pow, jacobi_property_check, psi_squared, JacobiMeta,
};
use crate::ypoly::YPoly;
use crate::{Error, Report, Result};

/// Which pipeline produced a Kummer genus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Hecke,
    Hilbert,
    ChiClosed,
}

/// Ell(A^[[n]]) to some q-order, tagged with its provenance.
/// Metadata: weight 0, index n − 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KummerResult {
    pub n: i64,
    pub genus: QYSeries,
    pub route: Route,
}

impl KummerResult {
    pub fn meta(&self) -> JacobiMeta {
        JacobiMeta::new(0, 2 * (self.n - 1))
    }
}

/// The Hecke route: ψ² is expanded to order n·q_max, pushed through
/// V(n) at weight −2, scaled by n⁴ and divided exactly by ψ².
/// A division failure would falsify the divisibility the route rests on,
/// so it surfaces as [`Error::NonExactDivision`].
pub fn via_hecke(n: i64, q_max: i64) -> Result<KummerResult> {
    assert!(n >= 1);
    assert!(q_max >= 0);
    let wide = psi_squared(n * q_max);
    let transformed = hecke_v(&wide, -2, n, q_max)?;
    let scaled = transformed.scaled(&int_pow(n, 4));
    let genus = scaled.div_exact(&wide.truncated(q_max))?;
    debug_assert!(genus.q_min().is_none_or(|m| m >= 0));
    Ok(KummerResult {
        n,
        genus,
        route: Route::Hecke,
    })
}

/// The Hilbert route, for any surface with c₁² ≠ 0: second finite
/// difference of the twisted log, (p d/dp)², 1/c₁², then one exact ψ²
/// division per p-slot. Returns Ell(A^[[n]]) for n = 1..=n_max.
///
/// Negative q-exponents may flow through the twisted logs; they must have
/// cancelled by the end, otherwise [`Error::NegativePowersRemain`].
pub fn via_hilbert(spec: &SurfaceSpec, n_max: usize, q_max: i64) -> Result<Vec<KummerResult>> {
    let oracle = SurfaceOracle::new(spec.clone());
    via_hilbert_on(&oracle, n_max, q_max)
}

/// Hilbert route against an existing oracle, so repeated checks on the
/// same surface share the cached expansion.
pub fn via_hilbert_on(
    oracle: &SurfaceOracle,
    n_max: usize,
    q_max: i64,
) -> Result<Vec<KummerResult>> {
    assert!(n_max >= 1);
    assert!(q_max >= 0);
    if oracle.spec().c1sq == 0 {
        return Err(Error::ZeroC1Sq);
    }
    let diff = crate::hilbert::twist_second_difference(oracle, n_max, q_max);
    let scaled = diff.pdp_squared().scaled(&rat(1, oracle.spec().c1sq));
    let depth = (1..=n_max)
        .filter_map(|n| scaled.coeff(n).q_min())
        .min()
        .unwrap_or(0)
        .min(0);
    let divisor = psi_squared(q_max - depth);
    let mut out = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let quotient = scaled.coeff(n).div_exact(&divisor)?;
        if quotient.q_min().is_some_and(|m| m < 0) {
            return Err(Error::NegativePowersRemain);
        }
        out.push(KummerResult {
            n: n as i64,
            genus: quotient.truncated(q_max),
            route: Route::Hilbert,
        });
    }
    Ok(out)
}

/// The closed χ_y form: an exact Laurent polynomial in y (a q-degree-0
/// series), each divisor ratio expanded as (1 + y + … + y^{a−1})² y^{1−a}.
pub fn chi_y_closed(n: i64) -> QYSeries {
    assert!(n >= 1);
    let mut total = YPoly::new();
    for a in 1..=n {
        if n % a != 0 {
            continue;
        }
        let scale = int_pow(n, 4) * int_pow(a, -3);
        total.add_scaled_shifted(&cusp_ratio(a), &scale, 0);
    }
    QYSeries::from_slice(0, total, 0).shift_l2(2 * (n - 1))
}

/// Euler number of A^[[n]]: the χ_y form at y = 1, which is n³σ(n).
pub fn euler_number(n: i64) -> i64 {
    let chi = chi_y_closed(n);
    let value = chi
        .slice(0)
        .map(|s| s.eval_at_one())
        .unwrap_or_else(|| rat_int(0));
    assert!(crate::rat::is_integer(&value));
    value
        .numer()
        .to_i64()
        .expect("Euler number fits a machine integer")
}

/// Divisor sum σ(n).
pub fn divisor_sigma(n: i64) -> i64 {
    (1..=n).filter(|a| n % a == 0).sum()
}

fn describe_mismatch(label: &str, lhs: &QYSeries, rhs: &QYSeries, report: &mut Report) {
    if lhs == rhs {
        return;
    }
    let mut shown = 0;
    let window = lhs.q_max().min(rhs.q_max());
    let mut seen = std::collections::BTreeSet::new();
    for (m, l2, _) in lhs.terms().chain(rhs.terms()) {
        if m > window || !seen.insert((m, l2)) {
            continue;
        }
        let a = lhs.coeff(m, l2);
        let b = rhs.coeff(m, l2);
        if a != b {
            report.record(format!(
                "{label}: coefficient ({m}, {l2}) is {} vs {}",
                crate::rat::format_rat(&a),
                crate::rat::format_rat(&b)
            ));
            shown += 1;
            if shown >= 8 {
                report.record(format!("{label}: further mismatches suppressed"));
                return;
            }
        }
    }
    if shown == 0 {
        report.record(format!("{label}: series differ only in validity window"));
    }
}

/// Cross-validate the three routes:
/// (a) Hecke = Hilbert for every n ≤ n_max and every listed surface,
/// (b) y^{n−1} · (q⁰ slice of the Hecke route) equals the closed χ_y form,
/// (c) the weak-Jacobi coefficient laws hold at (k = 0, r = n − 1), n ≥ 2.
pub fn routes_compare(n_max: usize, q_max: i64, surfaces: &[SurfaceSpec]) -> Result<Report> {
    let oracles: Vec<SurfaceOracle> = surfaces
        .iter()
        .map(|spec| SurfaceOracle::new(spec.clone()))
        .collect();
    routes_compare_on(n_max, q_max, &oracles.iter().collect::<Vec<_>>())
}

/// [`routes_compare`] against existing oracles (shared expansions).
pub fn routes_compare_on(
    n_max: usize,
    q_max: i64,
    oracles: &[&SurfaceOracle],
) -> Result<Report> {
    let mut report = Report::new(format!(
        "Kummer route comparison (n ≤ {n_max}, q_max = {q_max})"
    ));
    let hecke: Vec<KummerResult> = (1..=n_max as i64)
        .map(|n| via_hecke(n, q_max))
        .collect::<Result<_>>()?;

    for oracle in oracles {
        let hilbert = via_hilbert_on(oracle, n_max, q_max)?;
        for (h, k) in hecke.iter().zip(&hilbert) {
            describe_mismatch(
                &format!("hecke vs hilbert[{}], n={}", oracle.spec().name, h.n),
                &h.genus,
                &k.genus,
                &mut report,
            );
        }
    }

    for h in &hecke {
        let chi = chi_from_genus(&h.genus, 2 * (h.n - 1))?;
        describe_mismatch(
            &format!("chi specialisation, n={}", h.n),
            &chi,
            &chi_y_closed(h.n),
            &mut report,
        );
    }

    for h in hecke.iter().filter(|h| h.n >= 2) {
        report.absorb(jacobi_property_check(&h.genus, h.meta()));
    }
    Ok(report)
}

/// Integrality, positivity of the q-window and y-parity of a batch of
/// Kummer genera; the structural invariants every route must satisfy.
pub fn structural_check(results: &[KummerResult]) -> Report {
    let mut report = Report::new("Kummer structural invariants (integrality, window, parity)");
    for r in results {
        if !r.genus.is_integral() {
            report.record(format!("n={}: non-integer coefficient present", r.n));
        }
        if r.genus.q_min().is_some_and(|m| m < 0) {
            report.record(format!("n={}: negative q-exponent present", r.n));
        }
        if !r.genus.is_y_symmetric() {
            report.record(format!("n={}: c(m, −l) ≠ c(m, l) somewhere", r.n));
        }
        if !r.genus.has_integer_y_powers() {
            report.record(format!("n={}: half-integer y-power present", r.n));
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_int;
    use crate::surface::elliptic_genus;

    fn terms(ts: &[(i64, i64, i64)], q_max: i64) -> QYSeries {
        QYSeries::from_terms(ts.iter().map(|&(m, l2, c)| (m, l2, rat_int(c))), q_max)
    }

    #[test]
    fn first_kummer_variety_is_a_point() {
        let r = via_hecke(1, 3).unwrap();
        assert_eq!(r.genus, QYSeries::one(3));
        let h = via_hilbert(&SurfaceSpec::p2(), 1, 2).unwrap();
        assert_eq!(h[0].genus, QYSeries::one(2));
    }

    #[test]
    fn hecke_route_n2_q0_slice() {
        let r = via_hecke(2, 1).unwrap();
        assert_eq!(
            r.genus.q0_slice().unwrap(),
            terms(&[(0, -2, 2), (0, 0, 20), (0, 2, 2)], 0)
        );
    }

    #[test]
    fn second_kummer_variety_is_k3() {
        let r = via_hecke(2, 3).unwrap();
        assert_eq!(r.genus, elliptic_genus(&SurfaceSpec::k3(), 3));
    }

    #[test]
    fn hilbert_route_n2_q0_matches_hecke() {
        let h = via_hilbert(&SurfaceSpec::p2(), 2, 1).unwrap();
        assert_eq!(
            h[1].genus.q0_slice().unwrap(),
            terms(&[(0, -2, 2), (0, 0, 20), (0, 2, 2)], 0)
        );
    }

    #[test]
    fn hilbert_route_rejects_degenerate_surface() {
        assert_eq!(
            via_hilbert(&SurfaceSpec::abelian(), 2, 1),
            Err(Error::ZeroC1Sq)
        );
    }

    #[test]
    fn chi_closed_small_values() {
        assert_eq!(chi_y_closed(1), QYSeries::one(0));
        assert_eq!(chi_y_closed(2), terms(&[(0, 0, 2), (0, 2, 20), (0, 4, 2)], 0));
        assert_eq!(
            chi_y_closed(3),
            terms(
                &[(0, 0, 3), (0, 2, 6), (0, 4, 90), (0, 6, 6), (0, 8, 3)],
                0
            )
        );
    }

    #[test]
    fn chi_closed_is_palindromic() {
        for n in 1..=8 {
            let chi = chi_y_closed(n);
            let top = 4 * (n - 1);
            for (m, l2, c) in chi.terms() {
                assert_eq!(m, 0);
                assert_eq!(&chi.coeff(0, top - l2), c, "n={n} l2={l2}");
            }
        }
    }

    #[test]
    fn euler_numbers_match_divisor_sums() {
        assert_eq!(euler_number(1), 1);
        assert_eq!(euler_number(2), 24);
        assert_eq!(euler_number(6), 2592);
        for n in 1..=20 {
            assert_eq!(euler_number(n), n * n * n * divisor_sigma(n), "n={n}");
        }
    }

    #[test]
    fn routes_agree_small_frame() {
        let report = routes_compare(3, 1, &[SurfaceSpec::p2()]).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn trivial_frame_passes() {
        let report = routes_compare(1, 0, &[SurfaceSpec::p2(), SurfaceSpec::p1xp1()]).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn corrupted_hecke_weight_is_detected() {
        // Run the Hecke route with weight −1 instead of −2: either the ψ²
        // division already fails, or the result disagrees with the Hilbert
        // route. Both count as detection.
        let q_max = 1;
        let n = 2;
        let wide = psi_squared(n * q_max);
        let wrong = hecke_v(&wide, -1, n, q_max)
            .unwrap()
            .scaled(&int_pow(n, 4));
        match wrong.div_exact(&wide.truncated(q_max)) {
            Err(Error::NonExactDivision { .. }) => {}
            Err(other) => panic!("unexpected error {other:?}"),
            Ok(wrong_genus) => {
                let good = via_hilbert(&SurfaceSpec::p2(), 2, q_max).unwrap();
                let mut report = Report::new("corrupted hecke weight");
                describe_mismatch("n=2", &wrong_genus, &good[1].genus, &mut report);
                assert!(!report.passed());
            }
        }
    }

    #[test]
    fn structural_invariants_hold() {
        let results: Vec<_> = (1..=3).map(|n| via_hecke(n, 2).unwrap()).collect();
        let report = structural_check(&results);
        assert!(report.passed(), "{report}");
    }
}
