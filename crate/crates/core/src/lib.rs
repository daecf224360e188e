// Copyright 2026 The ncgd Authors
// SPDX-License-Identifier: Apache-2.0

//! Certification of coherence generation and detection in open quantum
//! system dynamics.
//!
//! A dynamics is NCGD (non-coherence-generating-and-detecting) when inserting
//! a complete dephasing at an intermediate time never changes the statistics
//! of measurements in the incoherent basis. For time-independent generators
//! this is decided exactly by a finite family of block products of the
//! generator, see [`certify::ncgd_time_independent`].

// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod catalog;
pub mod certify;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod linalg;
pub mod lindblad;
pub mod schema;
pub mod superop;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, C64, DEFAULT_TOLERANCE};
