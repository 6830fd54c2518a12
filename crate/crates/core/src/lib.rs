//! Exact symbolic tensor calculus for torsion-free affine connections with
//! polynomial Christoffel symbols and for the neutral-signature Riemannian
//! extensions they induce on the cotangent bundle.
//!
//! The main entry points:
//!
//! - [`symexpr`]: polynomials over Q, parsing and printing.
//! - [`affine`]: curvature, Ricci, Szabó operators and nilpotency certificates.
//! - [`extension`]: classical and twisted Riemannian extensions, their
//!   Levi-Civita connection (two independent routes) and the pseudo-Riemannian
//!   Szabó checks.
//! - [`numcheck`]: numeric and exact-at-a-point oracles.
//! - [`problem`] and [`cli`]: problem files and the `szabo` command line.

pub mod affine;
pub mod chart;
pub mod cli;
pub mod extension;
pub mod matrix;
pub mod numcheck;
pub mod problem;
pub mod report;
pub mod symexpr;
pub mod tensor;

pub use affine::{AffineConnection, CharPolyCertificate, SymbolicVector};
pub use chart::Chart;
pub use extension::{ExtensionMetric, SymmetricBilinear};
pub use matrix::PolyMatrix;
pub use symexpr::{Polynomial, Rational};
pub use tensor::{Slot, TensorField};
