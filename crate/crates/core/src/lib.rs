//! Exact-arithmetic toolkit for frieze patterns.

pub mod cli;
pub mod deformation;
pub mod frieze;
pub mod geometry;
pub mod io;
pub mod scalar;
pub mod search;
pub mod sign;
pub mod triangulation;

pub use frieze::{build_from_first_row, validate, ExactFrieze, FloatFrieze, Frieze, FriezeError};
pub use scalar::{Rational, Scalar};
