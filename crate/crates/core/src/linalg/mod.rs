//! Exact integer and rational linear algebra.
//!
//! Subgroups of finite abelian groups and ℤ_p-lattices are both carried as
//! full-rank integer lattices in column Hermite normal form, so lattice
//! equality is matrix equality.

mod hnf;
mod matrix;
mod rational;
mod snf;

pub use hnf::{
    diagonal_lattice, hnf, integer_kernel, intersect_lattices, preimage_lattice, sum_lattices,
    HnfBasis,
};
pub use matrix::IntMatrix;
pub use rational::{format_rational, parse_rational, QMatrix};
pub use snf::{snf, SmithForm};
