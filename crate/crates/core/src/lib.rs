//! Permutation rational functions `x ↦ L(x) + c/(Tr(x) + b)` over `F_{q^n}`.
//!
//! The crate is organised bottom-up:
//!
//! * [`gf`]: the tower `F_p ⊂ F_q ⊂ F_{q^n}` with Frobenius, trace, norm and
//!   dual bases;
//! * [`linmaps`]: `q`-linear polynomials as `F_q`-linear maps;
//! * [`ratfunc`]: the rational functions themselves, the three equivalent
//!   permutation criteria and the closed-form coefficients;
//! * [`bivariate`]: the auxiliary curves `f(X, Y)`, their conjugate
//!   factorisations and off-diagonal point counts;
//! * [`verify`]: named exhaustive verification suites with JSON-ready reports.

pub mod error;
pub mod bivariate;
pub mod gf;
pub mod linmaps;
pub mod ratfunc;
pub mod verify;

pub use error::{Error, Result};
pub use gf::{Element, FieldTower, Level, TowerSpec};
