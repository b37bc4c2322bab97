//! Deterministic generative-aesthetics engine.
//!
//! Every generator is a pure function of its parameters and an explicit
//! [`rng::RngState`], so any output can be regenerated byte-for-byte from
//! the [`manifest::GenerationManifest`] written beside it.
//!
//! - [`measures`]: entropy, redundancy and block statistics of symbol grids,
//!   and binary-property semantic spaces.
//! - [`graphics`]: random polygons, motif grids, density compositions and
//!   the two-level hatched mesh, emitted as SVG.
//! - [`text`]: template-and-lexicon stochastic sentences.
//! - [`wave`]: random-phase sea surfaces from directional spectra.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod graphics;
pub mod jobs;
pub mod manifest;
pub mod measures;
pub mod raster;
pub mod rng;
pub mod text;
pub mod wave;

pub use error::{Error, Result};
pub use manifest::{GenerationManifest, ENGINE_VERSION};
pub use rng::RngState;
