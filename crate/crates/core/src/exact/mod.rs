//! Exact scalar, polynomial and piecewise-polynomial arithmetic.
//!
//! Everything here works over arbitrary-precision rationals. No verdict
//! produced by this crate ever passes through floating point.

mod interval;
mod piecewise;
mod poly;
mod rational;
mod sturm;

pub use interval::{Bound, Interval};
pub use piecewise::PiecewisePoly;
pub use poly::{Degree, UniPoly};
pub use rational::{int, parse_rational, rat, Rational, RationalParseError};
pub use sturm::{count_roots, sign_on_interval, SignVerdict, SturmSequence};
