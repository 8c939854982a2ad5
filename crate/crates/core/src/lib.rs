//! q-ary 2-deletion correcting codes.
//!
//! The construction turns a q-ary string into a binary skeleton via an
//! indicator transform, protects the skeleton with a pluggable binary
//! 2-deletion sketch, and adds three short modular sketches (symbol sum,
//! sum of squares, and a run-weighted sum) that pin down the deleted
//! values and their placement. On top of that sit a unique decoder, a
//! list decoder that drops the run-weighted sketch, an encoder into
//! d-regular strings, and a systematic code that ships the sketch inside
//! the codeword itself.

pub mod error;
pub mod strings;
pub mod phi;
pub mod modular;
pub mod base;
pub mod sketch;

pub use error::{Error, Result};
pub use strings::{BinaryString, QaryString};
