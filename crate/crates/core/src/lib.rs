//! Maximum-kernel criteria for linearized polynomials over finite fields.
//!
//! A q^s-polynomial f(x) = a_0 x + a_1 x^{q^s} + ... + a_k x^{q^{sk}} over
//! F_{q^n} (gcd(s, n) = 1) is an F_q-linear map of F_{q^n} whose kernel has
//! dimension at most k. This crate decides when the bound is attained, through
//! several independent routes (companion-matrix products, the e_0 shortcut,
//! the Q-recursion and plain linear algebra), and builds the derived tooling:
//! fixed spaces of semilinear maps, splitting-field degrees, the closed-form
//! families for small n, and Gabidulin/MRD verification.

pub mod cli;
pub mod error;
pub mod families;
pub mod gf;
pub mod linalg;
pub mod linpoly;
pub mod maxkernel;
pub mod mrd;

pub use error::{Error, Result};
pub use gf::{Elem, Embedding, FieldCtx, FieldSpec};
pub use linalg::Mat;
pub use linpoly::{LinearizedPoly, SubspaceBasis};
pub use maxkernel::{CompanionMatrix, Method, QState};
