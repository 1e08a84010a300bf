//! zetavals: an exact-arithmetic workbench for zeta functions of schemes
//! over prime fields.
//!
//! The crate reconstructs `Z(X,t)` as an exact rational function from point
//! counts, extracts special values `C(X,n)` with their p-adic valuations,
//! and checks the p-power shape of those values against the Hodge-theoretic
//! correction exponent, together with the lattice/cokernel identities the
//! check rests on and a small dévissage calculus for open and singular
//! schemes.
//!
//! Modules:
//! - [`numerics`]: big rationals, integer polynomials, p-adic valuation,
//!   Smith normal form.
//! - [`schemes`]: a symbolic catalog of schemes and brute-force point
//!   counting over `F_{p^k}`.
//! - [`zeta`]: rational-function reconstruction from counts, weight
//!   factorization, Weil bound checks.
//! - [`hodge`]: Hodge diamonds and the correction exponents built from
//!   them.
//! - [`special`]: special values, valuations, and the full verification
//!   pipeline.
//! - [`lattice`]: lattice/cokernel determinant identities and the graded
//!   torsion bookkeeping.
//! - [`devissage`]: decomposition and blowup identities for zeta values,
//!   and fixpoint propagation of the verified-formula property.
//! - [`catalog`]: named schemes and degree-bound metadata gluing the
//!   pipeline together.

pub mod catalog;
pub mod cli;
pub mod devissage;
pub mod error;
pub mod hodge;
pub mod lattice;
pub mod numerics;
pub mod schemes;
pub mod ser;
pub mod special;
pub mod zeta;

pub use error::{Error, Result};
