//! Polynomial functions over finite rings.
//!
//! The crate tabulates functions induced by polynomials over `Z_m`, `F_q` and
//! the dual numbers `R[al]`, decides whether they are null, unit-valued or
//! permutations, builds the semidirect product of polynomial permutations
//! with unit-valued functions, and computes canonical forms and exact counts
//! of (unit-valued) polynomial functions modulo `p^n`.

mod arith;
pub mod canonical;
pub mod dual;
pub mod error;
pub mod funcspace;
pub mod groups;
pub mod limits;
pub mod poly;
pub mod ring;
pub mod verify;

pub use arith::{gcd, inv_mod, is_prime, prime_power};
pub use error::{Error, Result};
pub use limits::Limits;
pub use poly::{Coefficients, Poly, RingPoly};
pub use ring::{find_irreducible, make_ring, Elem, Ring, RingDescriptor};
