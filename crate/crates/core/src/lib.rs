//! Minimal degree and base size of transitive permutation groups.
//!
//! The central family is `G_b = B_{a(p-1)-b} x| V` acting on `F_p x F_p^a`,
//! where `B_d` is the space of polynomial functions of degree at most
//! `a(p-1) - d`. Closed forms for `mu(G_b)` and `b(G_b)` are checked against
//! exhaustive oracles, and the exponent `log_n(mu b)` is evaluated both
//! exactly and through its asymptotic formulas.

pub mod asymptotics;
pub mod binomials;
mod chain;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod filtration;
pub mod group;
pub mod linalg;
pub mod output;
pub mod ring;
pub mod verify;

pub use error::{Error, Result};
pub use filtration::GroupParams;
pub use group::{Caps, GeneratedGroup, InvariantReport, Permutation};
pub use ring::{Degree, RingElement, Vector};
