//! Finite 2-truncated shapes, quiver constructions, and matrix
//! representations over prime fields, the rationals, and floats.
//!
//! The pieces fit together like this:
//!
//! - [`sset`] holds the combinatorics: vertices, edges, and triangle
//!   witnesses asserting that one edge is the composite of two others.
//! - [`quiver`] derives new shapes from a classical quiver: framing
//!   ([`quiver::frame`]), doubling ([`quiver::double`]), the gauge
//!   extension ([`quiver::tilde`]), and the integrability diagram shape
//!   ([`quiver::higgs_shape`]).
//! - [`rep`] assigns matrices to edges and checks every triangle
//!   multiplicatively; [`enumerate`] walks all representations over a
//!   prime field, and [`action`] implements base change, point counts,
//!   and orbit censuses.
//! - [`moment`] assembles the moment map of a doubled framed quiver and
//!   [`solve`] drives its residual to a prescribed level over floats.
//! - [`higgs`] translates tuples of endomorphisms into diagram
//!   representations whose validity is exactly pairwise integrability.
//! - [`dsl`] reads and writes the `.qv` text format, [`json`] prints
//!   canonical JSON, [`report`] wraps command output, and [`verify`]
//!   bundles randomized self-checks.

pub mod action;
pub mod cli;
pub mod dsl;
pub mod enumerate;
pub mod error;
pub mod higgs;
pub mod json;
pub mod matrix;
pub mod moment;
pub mod quiver;
pub mod rep;
pub mod report;
pub mod scalar;
pub mod solve;
pub mod sset;
pub mod verify;

pub use error::{Error, Result};
pub use matrix::Matrix;
pub use scalar::{Ring, Scalar};
pub use sset::SSet2;
