// Copyright 2026 The ncgd Authors
// SPDX-License-Identifier: Apache-2.0

//! Construction and validation of master-equation generators.
//!
//! Three presentations are supported:
//!
//! * `(H, D, {Fᵢ})`: `ρ ↦ −i[H,ρ] + Σᵢⱼ Dᵢⱼ (Fᵢ ρ Fⱼ† − ½{Fⱼ†Fᵢ, ρ})` with a
//!   traceless orthonormal operator basis `{Fᵢ}` of size `d² − 1`;
//! * `(H, {Jₖ})`: `ρ ↦ −i[H,ρ] + Σₖ (Jₖ ρ Jₖ† − ½{Jₖ†Jₖ, ρ})`;
//! * the qubit coefficient matrix `L` (4×4 Hermitian) acting as
//!   `ρ ↦ ½ Σᵢⱼ Lᵢⱼ ([σᵢρ, σⱼ] + [σᵢ, ρσⱼ])` on normalized Paulis.
//!
//! Every presentation carries the incoherent basis its superoperator is
//! expressed in.

use std::fmt;
use std::sync::Arc;

use crate::linalg::{
    anticommutator, c, check_hermitian, commutator, hermitian_eigenvalues, hermiticity_residual,
    hs_inner, re, spectral_norm, within, ComplexMatrix,
};
use crate::superop::{
    hermiticity_preservation_residual, normalized_paulis, trace_row_residual, BlockSplit,
    IncoherentBasis, Superoperator,
};
use crate::{Error, Result, DEFAULT_TOLERANCE};

/// The dynamical part of a generator, in one of its presentations.
#[derive(Debug, Clone, PartialEq)]
pub enum GeneratorForm {
    Hd {
        hamiltonian: ComplexMatrix,
        rates: ComplexMatrix,
        /// Traceless orthonormal basis; `None` selects [`gell_mann_basis`].
        operator_basis: Option<Vec<ComplexMatrix>>,
    },
    Jumps {
        hamiltonian: ComplexMatrix,
        jumps: Vec<ComplexMatrix>,
    },
    QubitPauli {
        coefficients: ComplexMatrix,
    },
}

/// A time-independent generator together with its incoherent basis.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSpec {
    pub basis: IncoherentBasis,
    pub form: GeneratorForm,
}

impl GeneratorSpec {
    pub fn new(basis: IncoherentBasis, form: GeneratorForm) -> Self {
        Self { basis, form }
    }

    pub fn hd(basis: IncoherentBasis, hamiltonian: ComplexMatrix, rates: ComplexMatrix) -> Self {
        Self::new(
            basis,
            GeneratorForm::Hd {
                hamiltonian,
                rates,
                operator_basis: None,
            },
        )
    }

    pub fn jumps(
        basis: IncoherentBasis,
        hamiltonian: ComplexMatrix,
        jumps: Vec<ComplexMatrix>,
    ) -> Self {
        Self::new(basis, GeneratorForm::Jumps { hamiltonian, jumps })
    }

    pub fn qubit_pauli(basis: IncoherentBasis, coefficients: ComplexMatrix) -> Self {
        Self::new(basis, GeneratorForm::QubitPauli { coefficients })
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// Superoperator of this generator in matrix-unit coordinates.
    pub fn build(&self) -> Result<Superoperator> {
        match &self.form {
            GeneratorForm::Hd {
                hamiltonian,
                rates,
                operator_basis,
            } => {
                let default;
                let f = match operator_basis {
                    Some(f) => f.as_slice(),
                    None => {
                        default = gell_mann_basis(self.dim());
                        default.as_slice()
                    }
                };
                build_from_hd(hamiltonian, rates, f, &self.basis)
            }
            GeneratorForm::Jumps { hamiltonian, jumps } => {
                build_from_jumps(hamiltonian, jumps, &self.basis)
            }
            GeneratorForm::QubitPauli { coefficients } => {
                build_qubit_pauli(coefficients, &self.basis)
            }
        }
    }
}

/// Normalized generalized Gell-Mann matrices: symmetric pairs, antisymmetric
/// pairs, then diagonals. For `d = 2` this is `(σ₁, σ₂, σ₃)` normalized.
pub fn gell_mann_basis(d: usize) -> Vec<ComplexMatrix> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut out = Vec::with_capacity(d * d - 1);
    for j in 0..d {
        for k in j + 1..d {
            let mut m = ComplexMatrix::zeros(d, d);
            m[(j, k)] = re(h);
            m[(k, j)] = re(h);
            out.push(m);
        }
    }
    for j in 0..d {
        for k in j + 1..d {
            let mut m = ComplexMatrix::zeros(d, d);
            m[(j, k)] = c(0.0, -h);
            m[(k, j)] = c(0.0, h);
            out.push(m);
        }
    }
    for l in 1..d {
        let norm = ((l * (l + 1)) as f64).sqrt();
        let mut m = ComplexMatrix::zeros(d, d);
        for k in 0..l {
            m[(k, k)] = re(1.0 / norm);
        }
        m[(l, l)] = re(-(l as f64) / norm);
        out.push(m);
    }
    out
}

fn check_square(m: &ComplexMatrix, d: usize, what: &str) -> Result<()> {
    if m.nrows() != d || m.ncols() != d {
        return Err(Error::DimensionMismatch(format!(
            "{what} must be {d}x{d}, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    Ok(())
}

fn check_operator_basis(f: &[ComplexMatrix], d: usize) -> Result<()> {
    if f.len() != d * d - 1 {
        return Err(Error::InvalidOperatorBasis(format!(
            "expected {} operators, got {}",
            d * d - 1,
            f.len()
        )));
    }
    for (i, fi) in f.iter().enumerate() {
        check_square(fi, d, &format!("F[{i}]"))?;
        if fi.trace().norm() > DEFAULT_TOLERANCE {
            return Err(Error::InvalidOperatorBasis(format!(
                "F[{i}] is not traceless"
            )));
        }
        for (j, fj) in f.iter().enumerate() {
            let expected = if i == j { 1.0 } else { 0.0 };
            if (hs_inner(fi, fj) - re(expected)).norm() > DEFAULT_TOLERANCE {
                return Err(Error::InvalidOperatorBasis(format!(
                    "tr(F[{i}]† F[{j}]) should be {expected}"
                )));
            }
        }
    }
    Ok(())
}

pub fn build_from_hd(
    hamiltonian: &ComplexMatrix,
    rates: &ComplexMatrix,
    operator_basis: &[ComplexMatrix],
    basis: &IncoherentBasis,
) -> Result<Superoperator> {
    let d = basis.dim();
    check_square(hamiltonian, d, "H")?;
    check_square(rates, d * d - 1, "D")?;
    check_hermitian(hamiltonian, "H", DEFAULT_TOLERANCE)?;
    check_hermitian(rates, "D", DEFAULT_TOLERANCE)?;
    check_operator_basis(operator_basis, d)?;

    let minus_i = c(0.0, -1.0);
    let terms: Vec<(
        crate::linalg::C64,
        &ComplexMatrix,
        ComplexMatrix,
        ComplexMatrix,
    )> = (0..d * d - 1)
        .flat_map(|i| (0..d * d - 1).map(move |j| (i, j)))
        .filter(|&(i, j)| rates[(i, j)].norm() != 0.0)
        .map(|(i, j)| {
            let fj_dag = operator_basis[j].adjoint();
            let product = &fj_dag * &operator_basis[i];
            (rates[(i, j)], &operator_basis[i], fj_dag, product)
        })
        .collect();

    Ok(Superoperator::from_map(basis.clone(), |rho| {
        let mut out = commutator(hamiltonian, rho) * minus_i;
        for (rate, fi, fj_dag, product) in &terms {
            out += (*fi * rho * fj_dag - anticommutator(product, rho) * re(0.5)) * *rate;
        }
        out
    }))
}

pub fn build_from_jumps(
    hamiltonian: &ComplexMatrix,
    jumps: &[ComplexMatrix],
    basis: &IncoherentBasis,
) -> Result<Superoperator> {
    let d = basis.dim();
    check_square(hamiltonian, d, "H")?;
    check_hermitian(hamiltonian, "H", DEFAULT_TOLERANCE)?;
    for (k, j) in jumps.iter().enumerate() {
        check_square(j, d, &format!("J[{k}]"))?;
    }
    let minus_i = c(0.0, -1.0);
    let prepared: Vec<(&ComplexMatrix, ComplexMatrix, ComplexMatrix)> = jumps
        .iter()
        .map(|j| {
            let dag = j.adjoint();
            let product = &dag * j;
            (j, dag, product)
        })
        .collect();
    Ok(Superoperator::from_map(basis.clone(), |rho| {
        let mut out = commutator(hamiltonian, rho) * minus_i;
        for (j, dag, product) in &prepared {
            out += *j * rho * dag - anticommutator(product, rho) * re(0.5);
        }
        out
    }))
}

fn check_qubit_coefficients(coefficients: &ComplexMatrix, basis: &IncoherentBasis) -> Result<()> {
    if basis.dim() != 2 {
        return Err(Error::Unsupported(format!(
            "qubit coefficient form needs d = 2, got d = {}",
            basis.dim()
        )));
    }
    check_square(coefficients, 4, "L")?;
    check_hermitian(coefficients, "L", DEFAULT_TOLERANCE)
}

pub fn build_qubit_pauli(
    coefficients: &ComplexMatrix,
    basis: &IncoherentBasis,
) -> Result<Superoperator> {
    check_qubit_coefficients(coefficients, basis)?;
    let sigma = normalized_paulis();
    Ok(Superoperator::from_map(basis.clone(), |rho| {
        let mut out = ComplexMatrix::zeros(2, 2);
        for i in 0..4 {
            for j in 0..4 {
                let lij = coefficients[(i, j)];
                if lij.norm() == 0.0 {
                    continue;
                }
                let si_rho = &sigma[i] * rho;
                let rho_sj = rho * &sigma[j];
                out +=
                    (commutator(&si_rho, &sigma[j]) + commutator(&sigma[i], &rho_sj)) * (lij * 0.5);
            }
        }
        out
    }))
}

/// `C[k, i] = tr(to_k† from_i)`, so that `fromᵢ = Σₖ C[k,i] toₖ`.
fn operator_basis_change(from: &[ComplexMatrix], to: &[ComplexMatrix]) -> ComplexMatrix {
    ComplexMatrix::from_fn(to.len(), from.len(), |k, i| hs_inner(&to[k], &from[i]))
}

/// Hamiltonian and rate matrix with respect to [`gell_mann_basis`].
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalGenerator {
    pub hamiltonian: ComplexMatrix,
    pub rates: ComplexMatrix,
}

/// Rewrites any presentation as `(H, D)` in the Gell-Mann operator basis.
///
/// Jump operators are expanded as `Jₖ = cₖ𝟙 + Σᵢ aₖᵢ Gᵢ`; their identity
/// components move into the Hamiltonian as `(i/2)(c̄ₖ Kₖ − cₖ Kₖ†)` with
/// `Kₖ` the traceless part. For the qubit coefficient matrix the row and
/// column 0 are read as Hamiltonian terms and the 3×3 lower block as `D`.
pub fn canonical_form(spec: &GeneratorSpec) -> Result<CanonicalGenerator> {
    let d = spec.dim();
    let g = gell_mann_basis(d);
    match &spec.form {
        GeneratorForm::Hd {
            hamiltonian,
            rates,
            operator_basis,
        } => {
            check_square(hamiltonian, d, "H")?;
            check_square(rates, d * d - 1, "D")?;
            check_hermitian(hamiltonian, "H", DEFAULT_TOLERANCE)?;
            check_hermitian(rates, "D", DEFAULT_TOLERANCE)?;
            let rates = match operator_basis {
                None => rates.clone(),
                Some(f) => {
                    check_operator_basis(f, d)?;
                    let change = operator_basis_change(f, &g);
                    &change * rates * change.adjoint()
                }
            };
            Ok(CanonicalGenerator {
                hamiltonian: hamiltonian.clone(),
                rates,
            })
        }
        GeneratorForm::Jumps { hamiltonian, jumps } => {
            check_square(hamiltonian, d, "H")?;
            check_hermitian(hamiltonian, "H", DEFAULT_TOLERANCE)?;
            let n = d * d - 1;
            let mut rates = ComplexMatrix::zeros(n, n);
            let mut h = hamiltonian.clone();
            for (k, jump) in jumps.iter().enumerate() {
                check_square(jump, d, &format!("J[{k}]"))?;
                let ident = jump.trace() / d as f64;
                let traceless = jump - ComplexMatrix::identity(d, d) * ident;
                let coeffs: Vec<_> = g.iter().map(|gi| hs_inner(gi, &traceless)).collect();
                for i in 0..n {
                    for j in 0..n {
                        rates[(i, j)] += coeffs[i] * coeffs[j].conj();
                    }
                }
                h += (&traceless * ident.conj() - traceless.adjoint() * ident) * c(0.0, 0.5);
            }
            Ok(CanonicalGenerator {
                hamiltonian: h,
                rates,
            })
        }
        GeneratorForm::QubitPauli { coefficients } => {
            check_qubit_coefficients(coefficients, &spec.basis)?;
            let sigma = normalized_paulis();
            let mut h = ComplexMatrix::zeros(2, 2);
            for j in 1..4 {
                h += &sigma[j] * re(coefficients[(0, j)].im / std::f64::consts::SQRT_2);
            }
            let rates = coefficients.view((1, 1), (3, 3)).into_owned();
            Ok(CanonicalGenerator {
                hamiltonian: h,
                rates,
            })
        }
    }
}

/// The rate matrix `D` in the Gell-Mann basis, for any presentation.
pub fn rate_matrix(spec: &GeneratorSpec) -> Result<ComplexMatrix> {
    Ok(canonical_form(spec)?.rates)
}

/// Number of eigenvalues of `D` above tolerance in magnitude.
pub fn noise_rank(spec: &GeneratorSpec) -> Result<usize> {
    let d = rate_matrix(spec)?;
    let threshold = DEFAULT_TOLERANCE * spectral_norm(&d).max(1.0);
    Ok(hermitian_eigenvalues(&d)
        .into_iter()
        .filter(|x| x.abs() > threshold)
        .count())
}

/// Whether `D ⪰ 0` within tolerance.
pub fn is_gksl(spec: &GeneratorSpec) -> Result<bool> {
    let d = rate_matrix(spec)?;
    let threshold = DEFAULT_TOLERANCE * spectral_norm(&d).max(1.0);
    Ok(hermitian_eigenvalues(&d)
        .first()
        .is_none_or(|&min| min >= -threshold))
}

/// Qubit coefficient matrix `L` from `H = Σⱼ hⱼ σⱼ` (normalized Paulis) and
/// a 3×3 rate matrix: `L₀ⱼ = i√2 hⱼ`, `Lⱼ₀ = L̄₀ⱼ`, lower block = rates.
pub fn qubit_coefficient_matrix(hamiltonian: [f64; 3], rates: &ComplexMatrix) -> ComplexMatrix {
    let mut l = ComplexMatrix::zeros(4, 4);
    for j in 0..3 {
        let v = c(0.0, std::f64::consts::SQRT_2 * hamiltonian[j]);
        l[(0, j + 1)] = v;
        l[(j + 1, 0)] = v.conj();
    }
    l.view_mut((1, 1), (3, 3)).copy_from(rates);
    l
}

/// The qubit coefficient matrix of `spec` relative to Paulis rotated into the
/// incoherent frame, so that σ₃ of the result is diagonal in the incoherent basis.
pub fn qubit_coefficients_in_frame(spec: &GeneratorSpec) -> Result<ComplexMatrix> {
    if spec.dim() != 2 {
        return Err(Error::Unsupported(format!(
            "qubit classification needs d = 2, got d = {}",
            spec.dim()
        )));
    }
    let canonical = canonical_form(spec)?;
    let basis = &spec.basis;
    let paulis = normalized_paulis();
    let h = basis.to_frame(&canonical.hamiltonian);
    let coefficients = [1, 2, 3].map(|j| hs_inner(&paulis[j], &h).re);
    let g = gell_mann_basis(2);
    let rotated: Vec<ComplexMatrix> = g.iter().map(|gi| basis.to_frame(gi)).collect();
    let change = operator_basis_change(&rotated, &g);
    let rates = &change * canonical.rates * change.adjoint();
    Ok(qubit_coefficient_matrix(coefficients, &rates))
}

/// Closed-form population/coherence blocks of the qubit coefficient form,
/// using `(σ₀, σ₃)` as population and `(σ₁, σ₂)` as coherence coordinates.
pub fn qubit_blocks_closed_form(l: &ComplexMatrix) -> Result<BlockSplit> {
    check_square(l, 4, "L")?;
    check_hermitian(l, "L", DEFAULT_TOLERANCE)?;
    let r = |i: usize, j: usize| l[(i, j)].re;
    let im = |i: usize, j: usize| l[(i, j)].im;
    let m = |a: f64, b: f64, cc: f64, dd: f64| {
        ComplexMatrix::from_row_slice(2, 2, &[re(a), re(b), re(cc), re(dd)])
    };
    Ok(BlockSplit {
        pp: -m(0.0, 0.0, 2.0 * im(1, 2), r(1, 1) + r(2, 2)),
        pc: m(0.0, 0.0, r(1, 3) - im(0, 2), r(2, 3) + im(0, 1)),
        cp: m(
            -2.0 * im(2, 3),
            r(1, 3) + im(0, 2),
            2.0 * im(1, 3),
            r(2, 3) - im(0, 1),
        ),
        cc: -m(
            r(2, 2) + r(3, 3),
            im(0, 3) - r(1, 2),
            -r(1, 2) - im(0, 3),
            r(1, 1) + r(3, 3),
        ),
    })
}

/// Outcome of the trace- and hermiticity-preservation checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationReport {
    pub trace_residual: f64,
    pub hermiticity_residual: f64,
    pub tolerance: f64,
    pub trace_preserving: bool,
    pub hermiticity_preserving: bool,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.trace_preserving && self.hermiticity_preserving
    }
}

pub fn validate(s: &Superoperator) -> ValidationReport {
    validate_with_tolerance(s, DEFAULT_TOLERANCE)
}

pub fn validate_with_tolerance(s: &Superoperator, tolerance: f64) -> ValidationReport {
    let scale = spectral_norm(s.matrix());
    let trace_residual = trace_row_residual(s);
    let hermiticity_residual = hermiticity_preservation_residual(s);
    ValidationReport {
        trace_residual,
        hermiticity_residual,
        tolerance,
        trace_preserving: within(trace_residual, tolerance, scale),
        hermiticity_preserving: within(hermiticity_residual, tolerance, scale),
    }
}

/// A generator sampled as a function of time.
///
/// The sampler is assumed analytic on the analysis window; nothing here
/// enforces that.
#[derive(Clone)]
pub struct TimeDependentGenerator {
    sampler: Arc<dyn Fn(f64) -> GeneratorSpec + Send + Sync>,
    pub note: String,
}

impl fmt::Debug for TimeDependentGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TimeDependentGenerator")
            .field("note", &self.note)
            .finish_non_exhaustive()
    }
}

impl TimeDependentGenerator {
    pub fn new<F>(sampler: F, note: impl Into<String>) -> Self
    where
        F: Fn(f64) -> GeneratorSpec + Send + Sync + 'static,
    {
        Self {
            sampler: Arc::new(sampler),
            note: note.into(),
        }
    }

    pub fn constant(spec: GeneratorSpec) -> Self {
        Self::new(move |_| spec.clone(), "constant")
    }

    pub fn sample(&self, t: f64) -> GeneratorSpec {
        (self.sampler)(t)
    }

    pub fn superop_at(&self, t: f64) -> Result<Superoperator> {
        if !(t >= 0.0) {
            return Err(Error::InvalidTime(format!("generator sampled at t = {t}")));
        }
        self.sample(t).build()
    }
}

/// Whether `h` is Hermitian within the default tolerance.
pub fn is_hermitian(h: &ComplexMatrix) -> bool {
    within(hermiticity_residual(h), DEFAULT_TOLERANCE, spectral_norm(h))
}
