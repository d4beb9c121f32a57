//! Analysis of continuous conventional powers `A^α` of generalized doubly
//! nonnegative (GDN) matrices.
//!
//! A real square matrix is GDN when it is entrywise nonnegative,
//! diagonalizable, and has nonnegative real eigenvalues. For such a matrix
//! the continuous powers `A^α = S D^α S⁻¹` are well defined for `α > 0`, and
//! every entry of `A^α` is an exponential polynomial `Σ aᵢ λᵢ^α` in `α`.
//! Entries can dip below zero at non-integer powers; the per-matrix critical
//! exponent is the supremum of the set of powers where that happens.
//!
//! The crate provides:
//!
//! - [`spectral`]: dense eigendecomposition into merged spectral projectors,
//!   plus GDN validation with explicit tolerances;
//! - [`exppoly`]: exponential polynomials with Descartes sign-change counting
//!   and certified root / negativity-interval isolation;
//! - [`powers`]: conventional powers `A^α`, Hadamard powers `A^{(α)}`, and
//!   entry trajectories;
//! - [`ce`]: per-matrix critical exponents as certified brackets;
//! - [`primitivity`]: zero-nonzero pattern analytics (index of primitivity,
//!   irreducibility, trace-coefficient necessities);
//! - [`bounds`]: the sign-change matrix and closed-form critical-exponent
//!   bounds;
//! - [`constructions`]: parameterized extremal families and named example
//!   matrices, each with self-verification;
//! - [`search`]: seeded hill-climbing search for matrices with large critical
//!   exponent or index of primitivity.
//!
//! The crate is `no_std`-compatible (with `alloc`); enable the `libm` feature
//! in place of `std` for float math on bare targets.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("gdn-core requires either the `std` or the `libm` feature");

pub mod bounds;
pub mod ce;
pub mod constructions;
pub mod corpus;
pub mod exppoly;
mod fp;
pub mod matrix;
pub mod powers;
pub mod primitivity;
pub mod search;
pub mod spectral;

mod eig;

pub use matrix::RealMatrix;
pub use spectral::{decompose, validate_gdn, GdnReport, SpectralData};

/// Numerical tolerances shared across the analysis pipeline.
///
/// All fields are strictly positive. Relative tolerances are applied against
/// the natural scale of the quantity they guard (spectral radius for
/// eigenvalue tests, max entry magnitude for entry tests).
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ToleranceConfig {
    /// Entry nonnegativity: entries down to `-entry_tol·max(1, ‖A‖_max)` are
    /// clamped to zero with a warning.
    pub entry_tol: f64,
    /// Eigenvalue nonnegativity: eigenvalues in `[-eig_tol·ρ(A), 0)` are
    /// clamped to zero with a warning; anything lower rejects.
    pub eig_tol: f64,
    /// Eigenvalues closer than `merge_tol·max(1, ρ(A))` are merged and their
    /// spectral projectors summed.
    pub merge_tol: f64,
    /// Imaginary parts up to `imag_tol·ρ(A)` are dropped; anything larger is
    /// a complex spectrum.
    pub imag_tol: f64,
    /// Width to which root brackets and interval endpoints are refined.
    pub isolation_tol: f64,
    /// Relative dip (against the polynomial's local term magnitude) below
    /// which an extremum counts as a touching root.
    pub touch_tol: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            entry_tol: 1e-12,
            eig_tol: 1e-9,
            merge_tol: 1e-8,
            imag_tol: 1e-8,
            isolation_tol: 1e-6,
            touch_tol: 1e-10,
        }
    }
}

impl ToleranceConfig {
    /// True when every tolerance is finite and strictly positive.
    pub fn is_valid(&self) -> bool {
        [
            self.entry_tol,
            self.eig_tol,
            self.merge_tol,
            self.imag_tol,
            self.isolation_tol,
            self.touch_tol,
        ]
        .iter()
        .all(|t| t.is_finite() && *t > 0.0)
    }
}
