//! Exact certificates for the K-theoretic MF criteria of reduced crossed
//! products `A ⋊ F_r` of free-group actions on unital AF algebras.
//!
//! The ordered group `K₀(A)` is presented as an inductive system of
//! simplicial groups `Zᵖ` ([`dimgroup`]), loaded from JSON documents
//! ([`bratteli`]). An action of `F_r` is supplied as compatible stage maps
//! ([`kaction`]). The engines in [`certify`] search for
//!
//! * a nonzero positive element of the coboundary subgroup
//!   `H_σ = im σ`, `σ(g₁,…,g_r) = Σ (g_j − α̂_j(g_j))`, which proves the
//!   crossed product is not stably finite (hence not MF);
//! * locally invariant faithful integer functionals (`K₀`-QD data), and
//!   globally invariant ones for stationary systems (`K₀`-RFD data).
//!
//! All arithmetic is exact ([`linalg`]).

pub mod bratteli;
pub mod certify;
pub mod cli;
pub mod dimgroup;
mod error;
pub mod json;
pub mod kaction;
pub mod linalg;

pub use error::{Error, Result};
