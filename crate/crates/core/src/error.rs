// Copyright 2026 The ncgd Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors produced while building, validating or analysing generators.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("{what} is not Hermitian (residual {residual:.3e})")]
    NotHermitian { what: String, residual: f64 },

    #[error("incoherent basis is not unitary (residual {residual:.3e})")]
    NotUnitary { residual: f64 },

    #[error("operator basis is invalid: {0}")]
    InvalidOperatorBasis(String),

    #[error("unsupported for this generator: {0}")]
    Unsupported(String),

    #[error("invalid time arguments: {0}")]
    InvalidTime(String),

    #[error("input is not a valid state: {0}")]
    NotAState(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed generator file: {0}")]
    Schema(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
