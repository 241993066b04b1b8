//! Numerical toolkit for harmonic-function growth on rotationally symmetric
//! cones and surfaces.
//!
//! A cone over a closed (n−1)-manifold carries the metric dr² + φ(r)² g_ω,
//! where the warping function φ satisfies φ(0) = 0, φ′(0) = 1. Separation of
//! variables reduces harmonic functions to radial modes φ_m solving
//!
//! ```text
//! φ_m″ + (n−1)(φ′/φ) φ_m′ − (λ_m²/φ²) φ_m = 0,
//! ```
//!
//! one mode per link eigenvalue λ_m². This crate provides:
//!
//! * [`warp`] — warping functions: a parsed expression language with exact
//!   symbolic derivatives, plus a catalog of closed-form metrics;
//! * [`geometry`] — radial curvature, geodesic-ball volumes, doubling ratios,
//!   and total curvature of the associated surfaces;
//! * [`modes`] — overflow-safe integration of radial modes in log scale,
//!   the associated Riccati variable, and growth-class fitting;
//! * [`liouville`] — explicit growth bounds and Liouville / strong-Liouville
//!   verdicts derived from the mode data;
//! * [`spectral`] — two-dimensional harmonic extension from circle Fourier
//!   data, with a finite-difference solver as an independent oracle;
//! * [`pbarrier`] — radial p-Laplacian evaluation and the (z, h) barrier pair
//!   used for nonlinear Liouville theorems under curvature lower bounds.
//!
//! The crate is `no_std`-compatible (with `alloc`); all transcendental math
//! goes through `libm`, so results are bit-identical across platforms.

#![cfg_attr(not(feature = "std"), no_std)]
// Guards are written `!(x > 0.0)` on purpose: the negation rejects NaN,
// which `x <= 0.0` would let through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod bump;
pub mod expr;
pub mod float;
pub mod geometry;
pub mod liouville;
pub mod modes;
pub mod ode;
pub mod pbarrier;
pub mod quad;
pub mod spectral;
pub mod warp;

pub use expr::{Expr, ParseError};
pub use geometry::{ConeSpec, DoublingReport, Link};
pub use modes::{GrowthClass, GrowthFit, RadialMode};
pub use spectral::{BoundaryData, HarmonicField};
pub use warp::{builtin_catalog, smooth_bump, WarpFn};
