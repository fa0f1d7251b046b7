//! Exact computations in the super Fock space of `U_q(gl_infinity)`:
//! Laurent polynomials, tuple combinatorics, the Hecke algebra action, the
//! bar involution, canonical and dual-canonical bases, their q-symmetrized
//! counterparts, and character-level reports for `gl(m|n)`.

pub mod error;
pub mod fock;
pub mod hecke;
pub mod barinv;
pub mod canonical;
pub mod laurent;
pub mod qsym;
pub mod reports;
pub mod verify;
pub mod weightlat;

pub use error::{Error, Result};
pub use laurent::{LaurentError, LaurentPoly};
