//! Irreducibility of Deligne-Lusztig varieties `X_I(w)`, decided on the Weyl
//! group, together with a brute-force flag-geometry model over small finite
//! fields that checks the combinatorics point by point.
//!
//! Layers, bottom up:
//!
//! * [`coxeter`]: finite Weyl groups acting on their root systems, lengths,
//!   reduced words, Bruhat order, supports.
//! * [`parabolic`]: standard parabolic subgroups and double cosets
//!   `W_I \ W / W_J`.
//! * [`twist`] and [`decision`]: the automorphism induced by Frobenius on
//!   `(W, S)`, F-stable closures, the irreducibility verdict and the
//!   component-count polynomial.
//! * [`flag`]: type-A flag varieties over `F_q`, relative positions,
//!   Deligne-Lusztig point sets and their compactifications.
//!
//! Point counts never certify irreducibility on their own. The flag model only
//! checks set-level identities and fibration counts that the combinatorial
//! verdict implies.

pub mod coxeter;
pub mod decision;
pub mod error;
pub mod flag;
pub mod guard;
pub mod parabolic;
pub mod poly;
pub mod twist;

pub use coxeter::{CartanType, CoxeterSystem, Element, GenSet, Word};
pub use decision::{
    component_count_poly, coset_closure, decide_irreducible, f_closure, f_orbits, CosetRoute,
    IrredVerdict,
};
pub use error::{Error, ParseError, Result};
pub use poly::QPoly;
pub use twist::{Twist, TwistKind};
