//! Exact computer algebra for elliptic genera.
//!
//! The crate computes truncated Fourier expansions, with arbitrary-precision
//! rational coefficients, of
//!
//! - the elliptic genus of a smooth projective surface given by its Chern
//!   numbers (c₁², c₂),
//! - the generating series of elliptic genera of Hilbert schemes of points
//!   X^[n] on such a surface,
//! - the elliptic genus of the generalised Kummer varieties, by three
//!   independent routes (a Hecke-operator formula, a twisted Hilbert-scheme
//!   formula, and a closed χ_y specialisation),
//!
//! together with coefficient-level consistency checks (weak-Jacobi-form
//! coefficient laws, quadraticity of twisted logarithms, route agreement).
//!
//! All expansions live in the ring ℚ[[q]][y^{±1/2}]; see [`series::QYSeries`].
//! Everything is exact: there is no floating point anywhere in the pipeline.

pub mod hilbert;
pub mod jet;
pub mod kummer;
pub mod pseries;
pub mod rat;
pub mod report;
pub mod series;
pub mod surface;
pub mod theta;
pub mod verify;
pub mod ypoly;

pub use rat::Rat;
pub use report::Report;
pub use series::QYSeries;

/// Errors shared by the series operations and the genus pipelines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// An exact series division left a nonzero remainder at some q-order.
    /// In the Kummer pipeline this would falsify the divisibility asserted
    /// by the weak-Jacobi-form structure, so it is always loud.
    #[error("exact division failed: nonzero remainder at q-order {order}")]
    NonExactDivision { order: i64 },
    /// A q → 0 limit was requested of a series with negative q-exponents.
    #[error("series has negative q-exponents; q = 0 slice does not exist")]
    NegativePowers,
    /// Division by a series whose leading coefficient is not invertible.
    #[error("leading coefficient is not a unit")]
    NotUnit,
    /// A constant term had to vanish (jet shift, formal exp) but did not.
    #[error("constant term is nonzero")]
    NonzeroConstantTerm,
    /// An operation needed more q-orders of its input than were computed.
    #[error("series known to q-order {have}, but order {need} is required")]
    InsufficientOrder { have: i64, need: i64 },
    /// The twisted Hilbert-scheme route requires a surface with c₁² ≠ 0.
    #[error("surface has c1^2 = 0; the Kummer comparison theorem does not apply")]
    ZeroC1Sq,
    /// Negative q-exponents survived into a final genus, where they must
    /// have cancelled.
    #[error("negative q-exponents remain in the final series")]
    NegativePowersRemain,
}

pub type Result<T> = std::result::Result<T, Error>;
