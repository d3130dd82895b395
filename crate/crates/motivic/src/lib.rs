//! Exact computer algebra for motivic measures of strata in arc and function
//! spaces on the plane.
//!
//! The crate provides:
//!
//! - [`gring`] — exact arithmetic in the localized Grothendieck ring of
//!   varieties, represented by rational functions in the Lefschetz class `L`;
//! - [`series`] — truncated formal power series over exact coefficient rings;
//! - [`powstruct`] — the power structure over `Z[L, L^-1]`: the primitive
//!   `(1-t)^-m`, general powers `A(t)^m`, symmetric-power classes, and the
//!   Moebius-inversion identities for Euler-characteristic integrals;
//! - [`curves`] — plane-branch geometry from parametrizations: blow-ups,
//!   multiplicity sequences, intersection numbers, delta, Milnor number and
//!   the correspondence factor between function- and arc-space measures;
//! - [`lifting`] — Newton iteration lifting approximate arcs to exact
//!   solutions of `f = 0` modulo a target power of `t`;
//! - [`strata`] — a cylinder-measure DSL for jet strata, worked singularity
//!   families (smooth tuples, the A-series, quasihomogeneous cusps), and a
//!   finite-field point-counting oracle;
//! - [`genfun`] — the resolution-driven multivariable generating function of
//!   order tuples along a fixed collection of arcs.
//!
//! All arithmetic is exact: integer coefficients are arbitrary precision and
//! every identity is checked as an algebraic equality, never numerically.

pub mod error;
pub mod gring;
pub mod series;
pub mod powstruct;
pub mod curves;
pub mod lifting;
pub mod ffield;
pub mod strata;
pub mod genfun;
pub mod json;
pub mod verify;

pub use error::{Error, Result};
pub use gring::GClass;
pub use series::TruncSeries;
