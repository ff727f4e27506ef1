//! Exact analysis of polynomial maps `R^n -> R^n`: quasi-homogeneous
//! decompositions, sufficient criteria for global injectivity, a
//! branch-and-bound certifier for "vanishes only at the origin", and
//! floating-point tools for zeros, gradient flows and non-injectivity
//! witnesses.

pub mod criteria;
pub mod fpoly;
pub mod interval;
pub mod numflow;
pub mod par;
pub mod parse;
pub mod poly;
pub mod quasihomog;
pub mod rational;
pub mod sequence;
pub mod zero_cert;

pub use parse::{parse_expr, parse_map_file, parse_system_file, print_poly, MapFile};
pub use poly::{PolyMap, Polynomial, RationalPoint};
pub use quasihomog::Weight;
