// Copyright 2026 The ncgd Authors
// SPDX-License-Identifier: Apache-2.0

//! Built-in generators.
//!
//! Qubit examples use `H = ωσ₃` with `ω = 1`, so all times and rates are in
//! units of `ω`. Paulis are normalized, `tr σᵢσⱼ = δᵢⱼ`.

use crate::linalg::{c, re, real_matrix, ComplexMatrix};
use crate::lindblad::{
    gell_mann_basis, qubit_coefficient_matrix, GeneratorSpec, TimeDependentGenerator,
};
use crate::superop::{normalized_paulis, IncoherentBasis};
use crate::{Error, Result};

/// Knobs shared by the parameterized examples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExampleParams {
    /// Dephasing rate of the Ramsey examples.
    pub gamma: f64,
    /// `(γ₁₁ = γ₂₂, γ₃₃; γ₁₂, γ₁₃, γ₂₃)` for `fig2`.
    pub rates: [f64; 5],
}

impl Default for ExampleParams {
    fn default() -> Self {
        Self {
            gamma: 1.0,
            rates: [1.0, 0.0, 0.0, 0.0, 0.0],
        }
    }
}

#[derive(Debug, Clone)]
pub enum Generator {
    Constant(GeneratorSpec),
    TimeDependent(TimeDependentGenerator),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExampleInfo {
    pub name: &'static str,
    pub description: &'static str,
}

pub const FIG2_PRESETS: [[f64; 5]; 4] = [
    [1.0, 0.0, 0.0, 0.0, 0.0],
    [1.0, 0.0, 1.0, 0.0, 0.0],
    [2.0, 0.0, 2.0, 0.0, 0.0],
    [0.65, 0.65, 1.0, 2.1, -1.0],
];

pub const EXAMPLES: [ExampleInfo; 10] = [
    ExampleInfo {
        name: "ramsey-dephasing-sigma3basis",
        description: "H = ωσ₃ with σ₃ dephasing at rate --gamma, measured in the σ₃ eigenbasis",
    },
    ExampleInfo {
        name: "ramsey-dephasing-sigma1basis",
        description: "Ramsey scheme: H = ωσ₃ with σ₃ dephasing at rate --gamma, measured in the σ₁ eigenbasis",
    },
    ExampleInfo {
        name: "ramsey",
        description: "alias of ramsey-dephasing-sigma1basis",
    },
    ExampleInfo {
        name: "fig2",
        description: "Ramsey scheme with real Pauli rates --rates γ₁₁=γ₂₂,γ₃₃,γ₁₂,γ₁₃,γ₂₃ in the σ₁ eigenbasis",
    },
    ExampleInfo {
        name: "fig2-1",
        description: "fig2 with rates (1, 0; 0, 0, 0), orthogonal noise",
    },
    ExampleInfo {
        name: "fig2-2",
        description: "fig2 with rates (1, 0; 1, 0, 0), orthogonal noise",
    },
    ExampleInfo {
        name: "fig2-3",
        description: "fig2 with rates (2, 0; 2, 0, 0), orthogonal noise",
    },
    ExampleInfo {
        name: "fig2-4",
        description: "fig2 with rates (0.65, 0.65; 1, 2.1, -1), not completely positive",
    },
    ExampleInfo {
        name: "five-level-appendix",
        description: "five levels, rank-3 noise: NCGD to third order in time, CGD at fourth",
    },
    ExampleInfo {
        name: "modulated-orthogonal",
        description: "time-dependent qubit, generation and detection in orthogonal coherences",
    },
];

pub fn example_names() -> Vec<&'static str> {
    EXAMPLES.iter().map(|e| e.name).collect()
}

pub fn load_example(name: &str, params: &ExampleParams) -> Result<Generator> {
    let spec = match name {
        "ramsey-dephasing-sigma3basis" => {
            ramsey_dephasing(IncoherentBasis::computational(2)?, 1.0, params.gamma)?
        }
        "ramsey-dephasing-sigma1basis" | "ramsey" => {
            ramsey_dephasing(IncoherentBasis::sigma1_eigenbasis(), 1.0, params.gamma)?
        }
        "fig2" => ramsey_pauli_rates(1.0, params.rates)?,
        "fig2-1" | "fig2-2" | "fig2-3" | "fig2-4" => {
            let k: usize = name[5..].parse().expect("preset index");
            ramsey_pauli_rates(1.0, FIG2_PRESETS[k - 1])?
        }
        "five-level-appendix" => five_level(),
        "modulated-orthogonal" => return Ok(Generator::TimeDependent(modulated_orthogonal())),
        _ => {
            return Err(Error::InvalidArgument(format!(
                "unknown example `{name}`, expected one of: {}",
                example_names().join(", ")
            )))
        }
    };
    Ok(Generator::Constant(spec))
}

/// `−iω[σ₃, ρ] + γ(σ₃ρσ₃ − ρ/2)`.
pub fn ramsey_dephasing(basis: IncoherentBasis, omega: f64, gamma: f64) -> Result<GeneratorSpec> {
    if !(gamma >= 0.0) || !gamma.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "dephasing rate must be non-negative, got {gamma}"
        )));
    }
    let s = normalized_paulis();
    Ok(GeneratorSpec::jumps(
        basis,
        &s[3] * re(omega),
        vec![&s[3] * re(gamma.sqrt())],
    ))
}

/// `H = ωσ₃` with the real, symmetric Pauli rate matrix built from
/// `(γ₁₁ = γ₂₂, γ₃₃; γ₁₂, γ₁₃, γ₂₃)`, measured in the σ₁ eigenbasis.
pub fn ramsey_pauli_rates(omega: f64, rates: [f64; 5]) -> Result<GeneratorSpec> {
    if rates.iter().any(|r| !r.is_finite()) {
        return Err(Error::InvalidArgument("rates must be finite".into()));
    }
    let [g11, g33, g12, g13, g23] = rates;
    let d = real_matrix(3, 3, &[g11, g12, g13, g12, g11, g23, g13, g23, g33]);
    let s = normalized_paulis();
    Ok(GeneratorSpec::new(
        IncoherentBasis::sigma1_eigenbasis(),
        crate::lindblad::GeneratorForm::Hd {
            hamiltonian: &s[3] * re(omega),
            rates: d,
            operator_basis: Some(gell_mann_basis(2)),
        },
    ))
}

fn matrix5(entries: [[C; 5]; 5]) -> ComplexMatrix {
    ComplexMatrix::from_fn(5, 5, |i, j| entries[i][j].value())
}

#[derive(Clone, Copy)]
enum C {
    R(f64),
    I(f64),
}

impl C {
    fn value(self) -> crate::C64 {
        match self {
            C::R(x) => re(x),
            C::I(y) => c(0.0, y),
        }
    }
}

pub fn five_level_hamiltonian() -> ComplexMatrix {
    let h = 0.5;
    real_matrix(
        5,
        5,
        &[
            h, -h, 0.0, 0.0, 0.0, //
            -h, h, 0.0, 0.0, 0.0, //
            0.0, 0.0, 0.0, 0.0, 0.0, //
            0.0, 0.0, 0.0, h, h, //
            0.0, 0.0, 0.0, h, -h,
        ],
    )
}

pub fn five_level_jumps() -> [ComplexMatrix; 3] {
    use C::{I, R};
    let z = R(0.0);
    let j1 = matrix5([
        [R(1.0), I(-1.0), z, z, z],
        [I(1.0), R(-1.0), z, z, z],
        [z, z, z, z, z],
        [z, z, z, R(1.0), I(-1.0)],
        [z, z, z, I(1.0), R(-1.0)],
    ]) * re(std::f64::consts::FRAC_1_SQRT_2);
    let mut j2 = ComplexMatrix::zeros(5, 5);
    j2[(0, 0)] = re(1.0);
    j2[(2, 1)] = re(1.0);
    let mut j3 = ComplexMatrix::zeros(5, 5);
    j3[(3, 0)] = re(1.0);
    j3[(4, 2)] = re(1.0);
    [j1, j2, j3]
}

pub fn five_level() -> GeneratorSpec {
    GeneratorSpec::jumps(
        IncoherentBasis::computational(5).expect("dimension 5"),
        five_level_hamiltonian(),
        five_level_jumps().to_vec(),
    )
}

/// Qubit coefficient matrix whose generation block only feeds the σ₁
/// coherence while detection only reads σ₂, with modulated strengths.
pub fn modulated_orthogonal_coefficients(t: f64) -> ComplexMatrix {
    let (a, b) = (0.5 + 0.25 * t.sin(), 0.3 * t.cos());
    let (coh, h, kappa) = (0.2, 0.4, 2.0);
    let rates = ComplexMatrix::from_row_slice(
        3,
        3,
        &[
            re(kappa),
            re(-h),
            re(a),
            re(-h),
            re(kappa),
            c(b, coh),
            re(a),
            c(b, -coh),
            re(kappa),
        ],
    );
    let mut l = qubit_coefficient_matrix([0.0, 0.0, 0.0], &rates);
    for (j, im) in [(1, b), (2, a), (3, h)] {
        l[(0, j)] = c(0.0, im);
        l[(j, 0)] = c(0.0, -im);
    }
    l
}

pub fn modulated_orthogonal() -> TimeDependentGenerator {
    TimeDependentGenerator::new(
        |t| {
            GeneratorSpec::qubit_pauli(
                IncoherentBasis::computational(2).expect("dimension 2"),
                modulated_orthogonal_coefficients(t),
            )
        },
        "modulated-orthogonal",
    )
}
