//! Complex formulation of macroscopic electrodynamics on Minkowski space.
//!
//! The electromagnetic field is packed into two complex 3-vectors,
//! `F = E + iH` and `G = D + iB`, and equivalently into a pair of dual
//! antisymmetric four-tensors `Q` and `P`. In these variables both pairs of
//! the macroscopic Maxwell equations collapse into single expressions, the
//! energy-momentum tensor becomes a bilinear form in `P` and `Q`, and the
//! differential balance laws (energy, momentum, angular momentum) are
//! obtained by index gymnastics alone.
//!
//! This crate implements that algebra over `f64`/`Complex64` values together
//! with the analytic machinery needed to *verify* it numerically:
//!
//! - [`tensor`]: metric, Levi-Civita symbol, antisymmetric complex
//!   four-tensors and their dual maps;
//! - [`fields`]: the `(E, D, H, B)` to `(F, G)` packaging and the pointwise
//!   tensor/matrix identities it satisfies;
//! - [`lorentz`]: boosts of events, fields and tensors, in three equivalent
//!   forms;
//! - [`grid`]: sampled fields with exact-derivative and finite-difference
//!   channels, plus vector-calculus identity checks;
//! - [`maxwell`]: residuals of the field equations in all equivalent forms;
//! - [`balance`]: stress tensors, ponderomotive force and balance-law
//!   residuals;
//! - [`media`]: constitutive relations for isotropic media at rest and in
//!   uniform motion;
//! - [`potentials`]: four-potential and antisymmetric tensor potentials with
//!   their wave equations;
//! - [`lagrangian`]: quadratic Lagrangian densities and Euler-Lagrange
//!   residuals;
//! - [`scenarios`]: analytic field configurations (plane waves, Coulomb
//!   field, random trigonometric fields) with closed-form derivatives.
//!
//! Everything is a pure function of plain values; the crate is `no_std`
//! compatible (with `alloc`) when built without the `std` feature.

#![cfg_attr(not(feature = "std"), no_std)]
// Index loops mirror the tensor index notation throughout.
#![allow(clippy::needless_range_loop)]
// `!(x > 0.0)` guards reject NaN as well as the out-of-range sign.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod balance;
mod error;
pub mod fields;
pub mod grid;
pub mod lagrangian;
pub mod lorentz;
pub mod math;
pub mod maxwell;
pub mod media;
pub mod potentials;
pub mod scenarios;
pub mod tensor;
pub mod vec3;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// A spacetime event `x^mu = (ct, x, y, z)`.
pub type Event = [f64; 4];

/// Tolerance for "exact" checks: `1e-13` relative to the magnitude scale,
/// with an absolute floor so that zero-field cases compare against a finite
/// bound.
pub fn exact_tol(scale: f64) -> f64 {
    math::max(1e-13 * scale, 1e-300)
}
