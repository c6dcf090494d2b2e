//! Left-invariant G2-structure calculus on 7-dimensional nilpotent Lie algebras.
//!
//! The crate provides:
//!
//! - exact arithmetic in the field Q(√2, √3) with a floating-point fallback
//!   ([`scalar`]), plus exact linear algebra ([`matrix`]);
//! - the exterior algebra of a fixed 7-dimensional space: wedge, interior
//!   product and the GL action on forms ([`exterior`]);
//! - Lie algebras by structure constants, the Chevalley–Eilenberg
//!   differential, derivation spaces and Lie derivatives ([`liealg`]);
//! - positivity testing of 3-forms, the induced metric and volume, and the
//!   Hodge star ([`metric`]);
//! - torsion, Hodge Laplacian, Ricci and Q operators ([`torsion`]);
//! - an exact decision procedure for semi-algebraic Laplacian solitons
//!   together with homothety transforms and invariants ([`soliton`]);
//! - a fixed-step integrator for the Laplacian flow with self-similarity
//!   diagnostics ([`flow`]);
//! - a built-in catalog of the twelve nilpotent Lie algebras carrying closed
//!   G2-structures, their candidate 3-forms and reference soliton data
//!   ([`catalog`]);
//! - JSON file formats for algebras and forms ([`fileio`]).

pub mod catalog;
pub mod error;
pub mod exterior;
pub mod fileio;
pub mod flow;
pub mod liealg;
pub mod matrix;
pub mod metric;
pub mod sampling;
pub mod scalar;
pub mod soliton;
pub mod torsion;

pub use error::{Error, Result};
pub use exterior::{KForm, Vector};
pub use liealg::LieAlgebra;
pub use matrix::Matrix;
pub use scalar::{Mode, Scalar};
