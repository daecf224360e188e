// Copyright 2026 The ncgd Authors
// SPDX-License-Identifier: Apache-2.0

#![allow(dead_code)]

use ncgd::dynamics::matrix_exp;
use ncgd::linalg::{c, dagger, re};
use ncgd::lindblad::{gell_mann_basis, GeneratorSpec};
use ncgd::superop::{IncoherentBasis, Superoperator};
use ncgd::ComplexMatrix;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn uniform(rng: &mut StdRng) -> f64 {
    rng.random_range(-1.0..1.0)
}

pub fn random_complex(rng: &mut StdRng, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| c(uniform(rng), uniform(rng)))
}

pub fn random_hermitian(rng: &mut StdRng, n: usize) -> ComplexMatrix {
    let a = random_complex(rng, n, n);
    (&a + dagger(&a)) * re(0.5)
}

pub fn random_unitary(rng: &mut StdRng, n: usize) -> ComplexMatrix {
    let h = random_hermitian(rng, n);
    matrix_exp(&(h * c(0.0, 2.0)))
}

pub fn random_basis(rng: &mut StdRng, d: usize) -> IncoherentBasis {
    if rng.random_bool(0.5) {
        IncoherentBasis::computational(d).unwrap()
    } else {
        IncoherentBasis::new(random_unitary(rng, d)).unwrap()
    }
}

/// Hermitian orthonormal operators `[𝟙/√d, diagonal…, off-diagonal…]`, so
/// the first `d` span the populations and the rest the coherences.
pub fn hermitian_basis(d: usize) -> Vec<ComplexMatrix> {
    let g = gell_mann_basis(d);
    let off = d * d - d;
    let mut out = vec![ComplexMatrix::identity(d, d) * re(1.0 / (d as f64).sqrt())];
    out.extend(g[off..].iter().cloned());
    out.extend(g[..off].iter().cloned());
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// No structure beyond trace and hermiticity preservation.
    Generic,
    /// Populations never feed coherences.
    NoGeneration,
    /// Coherences never feed populations.
    NoDetection,
    /// Generation and detection live in complementary coherence subspaces.
    Orthogonal,
}

pub const NCGD_FAMILIES: [Family; 3] = [
    Family::NoGeneration,
    Family::NoDetection,
    Family::Orthogonal,
];

/// `L(X) = Σ R_ab B_a tr(B_b X)` with real `R` and first row zero, in the
/// frame of `basis`. Entries are scaled so that `‖R‖ ≲ 1`.
pub fn generator_from_real(basis: IncoherentBasis, r: &[Vec<f64>]) -> Superoperator {
    let d = basis.dim();
    let b = hermitian_basis(d);
    let frame = basis.clone();
    Superoperator::from_map(basis, move |x| {
        let y = frame.to_frame(x);
        let coords: Vec<_> = b.iter().map(|bk| (bk * &y).trace()).collect();
        let mut out = ComplexMatrix::zeros(d, d);
        for (a, row) in r.iter().enumerate() {
            let s: ncgd::C64 = row.iter().zip(&coords).map(|(rab, cb)| cb * *rab).sum();
            out += &b[a] * s;
        }
        frame.from_frame(&out)
    })
}

pub fn random_real_generator(rng: &mut StdRng, d: usize, family: Family) -> Superoperator {
    let n = d * d;
    let half = d + (n - d) / 2;
    let scale = 1.0 / d as f64;
    let mut r = vec![vec![0.0; n]; n];
    for (a, row) in r.iter_mut().enumerate().skip(1) {
        for (b, x) in row.iter_mut().enumerate() {
            let pop_row = a < d;
            let pop_col = b < d;
            let v_row = !pop_row && a < half;
            let v_col = !pop_col && b < half;
            let zero = match family {
                Family::Generic => false,
                Family::NoGeneration => !pop_row && pop_col,
                Family::NoDetection => pop_row && !pop_col,
                // cp lands in V, cc keeps V, pc reads only W
                Family::Orthogonal => {
                    (!pop_row && !v_row && (pop_col || v_col)) || (pop_row && v_col)
                }
            };
            if !zero {
                *x = scale * uniform(rng);
            }
        }
    }
    generator_from_real(random_basis(rng, d), &r)
}

pub fn random_ncgd_generator(rng: &mut StdRng, d: usize) -> Superoperator {
    let family = NCGD_FAMILIES[rng.random_range(0..3)];
    random_real_generator(rng, d, family)
}

/// Random `H` and one to three random jump operators.
pub fn random_gksl_spec(rng: &mut StdRng, d: usize) -> GeneratorSpec {
    let h = random_hermitian(rng, d);
    let k = rng.random_range(1..=3);
    let jumps = (0..k)
        .map(|_| random_complex(rng, d, d) * re(0.5))
        .collect();
    GeneratorSpec::jumps(random_basis(rng, d), h, jumps)
}

/// Random `(H, D)` with `D = AA†` in the Gell-Mann basis.
pub fn random_hd_spec(rng: &mut StdRng, d: usize) -> GeneratorSpec {
    let n = d * d - 1;
    let a = random_complex(rng, n, n) * re(0.5);
    GeneratorSpec::hd(
        random_basis(rng, d),
        random_hermitian(rng, d),
        &a * dagger(&a),
    )
}

/// Random Hermitian qubit coefficient matrix.
pub fn random_qubit_l(rng: &mut StdRng) -> ComplexMatrix {
    random_hermitian(rng, 4)
}

fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a * b - b * a
}

/// Right-hand side of `ρ̇ = −iω[σ₃, ρ] + γ(σ₃ρσ₃ − ρ/2)` with `σ₃` normalized.
fn ramsey_rhs(omega: f64, gamma: f64, rho: &ComplexMatrix) -> ComplexMatrix {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let s3 = ComplexMatrix::from_row_slice(2, 2, &[re(h), re(0.0), re(0.0), re(-h)]);
    commutator(&s3, rho) * c(0.0, -omega) + (&s3 * rho * &s3 - rho * re(0.5)) * re(gamma)
}

/// Classical RK4 for the Ramsey master equation.
pub fn ramsey_rk4(
    omega: f64,
    gamma: f64,
    rho: &ComplexMatrix,
    t: f64,
    steps: usize,
) -> ComplexMatrix {
    let dt = t / steps as f64;
    let mut x = rho.clone();
    for _ in 0..steps {
        let k1 = ramsey_rhs(omega, gamma, &x);
        let k2 = ramsey_rhs(omega, gamma, &(&x + &k1 * re(dt / 2.0)));
        let k3 = ramsey_rhs(omega, gamma, &(&x + &k2 * re(dt / 2.0)));
        let k4 = ramsey_rhs(omega, gamma, &(&x + &k3 * re(dt)));
        x += (k1 + k2 * re(2.0) + k3 * re(2.0) + k4) * re(dt / 6.0);
    }
    x
}

fn plus_minus() -> [ComplexMatrix; 2] {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let plus = ComplexMatrix::from_row_slice(2, 1, &[re(h), re(h)]);
    let minus = ComplexMatrix::from_row_slice(2, 1, &[re(h), re(-h)]);
    [&plus * dagger(&plus), &minus * dagger(&minus)]
}

/// Witness for the Ramsey scheme in the σ₁ eigenbasis, `t₁ = 0`, by direct
/// integration of the master equation on density matrices.
pub fn ramsey_witness_ode(omega: f64, gamma: f64, t2: f64, t3: f64) -> f64 {
    let proj = plus_minus();
    let steps_per_unit = 2000.0;
    let n = |t: f64| ((t * steps_per_unit).ceil() as usize).max(1);
    let mut best: f64 = 0.0;
    for rho0 in &proj {
        let direct = ramsey_rk4(omega, gamma, rho0, t3, n(t3));
        let mid = ramsey_rk4(omega, gamma, rho0, t2, n(t2));
        let dephased = proj.iter().fold(ComplexMatrix::zeros(2, 2), |acc, p| {
            acc + p * (p * &mid).trace()
        });
        let two_step = ramsey_rk4(omega, gamma, &dephased, t3 - t2, n(t3 - t2));
        let dist: f64 = proj
            .iter()
            .map(|p| ((p * &direct).trace().re - (p * &two_step).trace().re).abs())
            .sum();
        best = best.max(0.5 * dist);
    }
    best
}

/// `½ e^{−γt₃}|cos(√2ωt₃) − cos(√2ωt₂) cos(√2ω(t₃ − t₂))|` at `ω = γ = 1`,
/// `t₂ = 1.5`, `t₃ = 3`.
pub fn ramsey_midpoint_closed_form() -> f64 {
    let r2 = std::f64::consts::SQRT_2;
    0.5 * (-3.0f64).exp() * ((3.0 * r2).cos() - (1.5 * r2).cos().powi(2)).abs()
}
