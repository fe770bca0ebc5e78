pub mod analysis;
pub mod apps;
pub mod cli;
pub mod direct;
pub mod error;
pub mod fast;
pub mod grid;
pub mod linalg;
pub mod params;
pub mod selftest;

pub use error::{Error, Result};
pub use fast::Algorithm;
pub use grid::{ComplexGrid, Geometry};
pub use params::{ParamSet, SymplecticSpec};
