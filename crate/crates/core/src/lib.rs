//! Multiple zeta values through the alternating block decomposition of
//! iterated integral words.

pub mod derivation;
pub mod error;
pub mod identities;
pub mod linear;
pub mod numerics;
mod parse;
pub mod rank;
pub mod reflect;
pub mod regularise;
pub mod word;

pub use error::{Error, Result};
pub use linear::{LinComb, PiRational, Term};
pub use word::{BlockDecomposition, Word, ZetaComposition};
