//! Distance spectra of short concatenated polar and cyclic codes, and
//! union bounds on their block-error probability over the binary erasure
//! channel.

pub mod code;
pub mod cyclic;
pub mod descriptor;
pub mod error;
pub mod bounds;
pub mod cli;
pub mod ensemble;
pub mod exact;
pub mod gf2;
pub mod io;
pub mod mcsim;
pub mod polar;
pub mod recipes;
pub mod rng;
pub mod spectrum;

pub use code::LinearCode;
pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVector, Permutation};
