//! Cubical chains and cochains over F₂, cup products, Lebesgue and Hurewicz
//! tilings, and the cubical Sperner lemmas of Kuhn and Ky Fan.
//!
//! Everything here is exact and combinatorial. Points are integer vectors,
//! cubes are `(root, direction)` pairs, chains are sets of cubes. Tile
//! geometry uses exact rationals. Axis indices are 0-based.
#![no_std]

extern crate alloc;

pub mod chains;
pub mod complex;
pub mod cube;
pub mod duality;
pub mod error;
pub mod freudenthal;
pub mod gen;
pub mod hurewicz;
pub mod kyfan;
pub mod lebesgue;
pub mod products;
pub mod rng;
pub mod sphere;
pub mod tilings;
pub mod util;

pub use chains::{Chain, Cochain};
pub use complex::SimplicialComplex;
pub use cube::{Ambient, Cube, Kind, Norm, PivotSeq, Point};
pub use error::{Error, Result};
pub use rng::Lcg;
pub use tilings::{Interval, Rational, TilingParams};
