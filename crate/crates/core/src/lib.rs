//! Matroidal Cayley–Bacharach workbench.

pub mod arrangement;
pub mod bitset;
pub mod catalog;
pub mod chow;
pub mod claims;
pub mod cli;
pub mod cover;
pub mod descriptor;
pub mod linalg;
pub mod matroid;
pub mod nest;
pub mod paving;
pub mod poly;

pub use bitset::{ElemSet, SetFamily};
pub use cover::{Degree, McbEngine, McbProfile, McbReport, Witness};
pub use matroid::{FlatLattice, Matroid, MatroidError};
pub use poly::IntPolynomial;
