//! Exact integer and rational linear algebra.
//!
//! Everything here works over `BigInt` / `BigRational`; there is no floating
//! point anywhere in the crate.

pub mod lattice;
pub mod lp;
pub mod matrix;
pub mod normal_form;

pub use lattice::{lattice_contains, solve_in_lattice, LatticeSolution};
pub use lp::{lp_feasible, lp_solve, Constraint, FarkasCertificate, Feasibility, LinearProgram, LpSolution};
pub use matrix::{determinant, IntMatrix, IntVector};
pub use normal_form::{hermite_normal_form, rank, smith_normal_form, Hermite, Smith};
