//! Shape-from-polarization data tooling.
//!
//! - [`polar`]: four-angle intensities, Stokes planes, DoLP and AoLP.
//! - [`augment`]: sensor-aware degradation of Stokes renders (blur, read
//!   noise, ADC quantization) before or after cue extraction.
//! - [`metrics`]: masked cosine loss, angular error, accuracy thresholds.
//! - [`imageio`]: PFM / PNG formats, normal and mask encodings, manifests.
//! - [`scenegen`]: scene sampling, scene-spec text format, toy renderer.
//! - [`cli`]: the `sfpkit` command line.

// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod augment;
pub mod cli;
pub mod error;
pub mod image;
pub mod imageio;
pub mod metrics;
pub mod polar;
pub mod rng;
pub mod scenegen;
pub mod stats;

pub use error::{Error, FormatError, Result};
pub use image::ImageBuf;
