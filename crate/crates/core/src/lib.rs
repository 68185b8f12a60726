//! Exact computations with suspensive Lie algebras, rigid bialgebras, their
//! enveloping bialgebras, and the Dyer-Lashof algebra.

pub mod dyer_lashof;
pub mod monoid;
pub mod linalg;
pub mod suspensive;
pub mod bialgebra;
pub mod enveloping;
pub mod fixtures;
pub mod milnor_moore;
