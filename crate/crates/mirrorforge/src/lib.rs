//! Computer-algebra engine for toric Landau–Ginzburg mirrors, finite
//! A∞-categories, matrix factorizations and Hochschild cohomology.

pub mod ainfty;
pub mod bimod;
pub mod hoch;
pub mod coeff;
pub mod laurent;
pub mod linalg;
pub mod mf;
pub mod mirror;
pub mod report;
pub mod ring;
pub mod signs;
pub mod toric;

pub use coeff::{ComplexNum, NovScalar, Rational};
pub use ring::Ring;
