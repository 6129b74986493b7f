//! Growth and relaxation equations of the general fractional calculus.
//!
//! For a kernel `k` with Laplace symbol `Φ(p) = p K(p)` (a complete Bernstein
//! function) the crate solves
//!
//! ```text
//! d/dt ∫₀ᵗ k(t-τ) u(τ) dτ - k(t) u(0) = ±λ u(t),   u(0) = 1,
//! ```
//!
//! and checks the growth solution against its leading asymptote
//! `λ/(Φ′(p₀)p₀) · e^{p₀ t}` where `Φ(p₀) = λ`. Independent routes compute the
//! same solution:
//!
//! * [`invert`]: Laplace inversion, either split into the residue at `p₀` plus
//!   a remainder on a line left of the pole, or directly on a Bromwich line;
//! * [`subordination`]: the integral of `e^{λs}` against the subordination
//!   kernel `G(s, t)`;
//! * [`timestep`]: product-integration time stepping on a graded mesh;
//! * [`mlf`]: Mittag-Leffler closed forms for power-law kernels.

// Negated comparisons are how NaN is rejected; node tables keep their published digits.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod cli;
mod contour;
pub mod error;
pub mod invert;
pub mod kernel;
pub mod mlf;
pub mod quad;
pub mod rootfind;
pub mod special;
pub mod subordination;
pub mod timestep;

pub use error::{Error, Result};
pub use kernel::{builtin_kernels, AdmissibilityReport, DistributedOrder, KernelSymbol, StieltjesMeasure};
