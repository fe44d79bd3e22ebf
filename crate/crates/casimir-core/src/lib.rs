//! Physics of a rigid Casimir cavity in a weak gravitational field.
//!
//! The library is organized as a pipeline from idealized closed forms to
//! laboratory-grade estimates:
//!
//! * [`ideal`]: parallel-plate vacuum energy, pressure, force, and the lowest
//!   resonant frequency for perfectly conducting mirrors.
//! * [`regularize`]: the divergent mode sum behind those closed forms, made
//!   finite by two independent numerical methods that must agree.
//! * [`gravity`]: the red-shift correction for a cavity held rigid in a
//!   Schwarzschild field, and the weak-field force it implies.
//! * [`mirrors`]: finite-conductivity and dielectric-spacer corrections via
//!   the zero-temperature Lifshitz formula in the plasma model.
//! * [`stack`]: many-layer force totals, detectability against a reference
//!   force sensitivity, and gap optimization under fabrication constraints.
//!
//! All quantities are SI. Forces from [`gravity`] and [`stack`] are reported
//! as magnitudes of the net outward push, i.e. the direction opposing the
//! local gravitational acceleration.

pub mod constants;
pub mod error;
pub mod geometry;
pub mod gravity;
pub mod ideal;
pub mod mirrors;
pub mod quadrature;
pub mod regularize;
pub mod stack;

pub use constants::PhysicalConstants;
pub use error::{Error, Result};
pub use geometry::CavityGeometry;
