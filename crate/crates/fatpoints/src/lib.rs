//! Exact tools for linear systems of degree-`d` hypersurfaces of `P^n` with
//! assigned multiple base points in general position.
//!
//! The crate computes, at desk scale:
//!
//! - exact integer invariants of divisor classes on the blow-up of `P^n` at
//!   `r` points (virtual/expected dimension, intersection pairing, top
//!   self-intersection, secant-variety dimensions), see [`divisor`];
//! - Cremona reductions of divisor classes with a full audit trace, see
//!   [`cremona`];
//! - section counts `h0` by exact interpolation at random (or user-supplied)
//!   points over a prime field, with one-sided certification semantics, see
//!   [`interpolation`];
//! - speciality lower bounds predicted by catalog rational curves, see
//!   [`curves`];
//! - Monte Carlo probes for the dimension of base loci via random linear
//!   sections and brute-force zero enumeration, see [`baselocus`].
//!
//! The crate is `no_std`-compatible (it requires `alloc`); the default
//! `std` feature enables `std::error::Error` impls and, together with
//! `parallel`, optional rayon-backed data parallelism. Every computation is
//! deterministic for a fixed seed regardless of the execution mode.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod baselocus;
pub mod cremona;
pub mod curves;
pub mod divisor;
pub mod error;
pub mod field;
pub mod interpolation;
pub mod linalg;
pub mod poly;

pub use error::{Error, Result};
pub use field::PrimeField;

/// Execution mode for the internally data-parallel operations.
///
/// Results are bit-identical across modes; `Parallel` only changes how the
/// work is scheduled. Without the `parallel` feature it degrades to
/// sequential execution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    #[default]
    Sequential,
    Parallel,
}
