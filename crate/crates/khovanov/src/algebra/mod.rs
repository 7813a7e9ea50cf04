//! Exact coefficient rings, sparse matrices, rank, Smith normal form and
//! Laurent polynomials.

mod integer;
mod laurent;
mod rank;
mod rational;
mod ring;
mod snf;
mod sparse;

pub use integer::Integer;
pub use laurent::LaurentPoly;
pub use rank::{rank_over_field, BitMatrix};
pub use rational::Rational;
pub use ring::{CoeffRing, Fp, Integers, Rationals, Ring, F2};
pub use snf::{smith_normal_form, smith_normal_form_with, PivotStrategy, SnfResult};
pub use sparse::SparseMatrix;
