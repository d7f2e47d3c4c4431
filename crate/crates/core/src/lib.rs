//! Finite-field arithmetic, Reed-Solomon codes, and the coding schemes built
//! on them: packet erasure recovery, random-access signatures, tandem-link
//! capacity models, modem concatenations, wiretap encoders, biometric
//! vaults, constrained codes and defect-matching memories.

pub mod biometrics;
pub mod capacity_models;
pub mod constrained;
pub mod defect_memory;
pub mod entropy;
pub mod error;
pub mod galois;
pub mod matrix;
pub mod modem_concat;
pub mod packet_codes;
pub mod poly;
pub mod random_access;
pub mod rs_core;
pub mod sim;
pub mod wiretap;

pub use error::{Error, Result};
pub use galois::{FieldElement, FieldKind, GaloisField};
pub use matrix::Matrix;
pub use rs_core::{DecodeResult, DecodeStatus, RsCode, Variant};
