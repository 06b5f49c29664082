//! Arbitrary precision evaluation and numerical verification.

pub mod bigreal;
pub mod mzv;
pub mod verify;

pub use bigreal::{bits_for_digits, pi, recognize_rational, BigReal};
pub use mzv::MzvEvaluator;
pub use verify::{verify, Status, VerificationReport};
