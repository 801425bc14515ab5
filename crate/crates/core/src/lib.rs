//! Exponential-sum machinery for maximal-operator lower bounds.
//!
//! The crate builds, at desk scale, every ingredient of a degree-`k`
//! counterexample family for the generalized Schrödinger maximal operator
//! `f ↦ sup_{0<t<1} |T_t f|` with symbol `ξ₁ᵏ + … + ξₙᵏ`:
//!
//! * [`modular`] — deterministic primality, modular powering, prime windows;
//! * [`expsum`] — exact complete sums `T(a;q)`, their DFT-built magnitude
//!   tables, Parseval and square-root-cancellation audits, the good sets of
//!   coefficient tuples with large sum products, and the rational-top-phase
//!   decomposition of long incomplete sums;
//! * [`bump`] — a fixed even Schwartz bump `φ = |ψ̌|²` with compactly
//!   supported `φ̂`, tabulated once and interpolated everywhere;
//! * [`counterexample`] — the modulated lattice-mode data function, its
//!   norms, the factorized evolution integral, and the reduction of
//!   `|T_t f|` to a product of one-dimensional exponential sums;
//! * [`omega`] — unions of boxes centered at rationals with prime
//!   denominators, exact and Monte-Carlo union measure, overlap censuses,
//!   and the pullback to physical points with their distinguished times;
//! * [`optimizer`] — the closed-form exponent selection and the grid-search
//!   certificate of its optimality.
//!
//! All phase arithmetic that must survive frequencies near 2⁷⁰ goes through
//! exact integer reduction (rational phases) or double-double argument
//! reduction ([`dd`]); nothing in the evaluation path ever forms `L^k t` as
//! a bare `f64`.

pub mod audit;
pub mod bump;
pub mod counterexample;
pub mod dd;
pub mod error;
pub mod expsum;
pub mod modular;
pub mod omega;
pub mod optimizer;
pub mod quad;

pub use error::Error;

/// Crate version embedded in every serialized report.
pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

/// `Result` alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
