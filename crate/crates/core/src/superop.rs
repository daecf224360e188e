// Copyright 2026 The ncgd Authors
// SPDX-License-Identifier: Apache-2.0

//! Matrix representations of linear maps on operators.
//!
//! Operators on a `d`-dimensional space are coordinatised in the matrix-unit
//! basis `|i⟩⟨j|` of a chosen incoherent basis. The first `d` coordinates are
//! the populations `|i⟩⟨i|`; the remaining `d² − d` are the coherences
//! `|i⟩⟨j|`, `i ≠ j`, in lexicographic order of the pair `(i, j)`. With that
//! ordering the complete dephasing map is the 0/1 diagonal projector onto the
//! first `d` coordinates, and splitting a superoperator into its
//! population/coherence blocks is plain index slicing.
//!
//! For qubits a second, population-first ordering built from normalized Pauli
//! operators (`tr σᵢσⱼ = δᵢⱼ`) is available through [`pauli_coordinates`].

use crate::linalg::{c, identity, re, spectral_norm, ComplexMatrix, ComplexVector, C64};
use crate::{Error, Result, DEFAULT_TOLERANCE};

/// The orthonormal basis `{|i⟩}` whose diagonal states count as incoherent.
#[derive(Debug, Clone, PartialEq)]
pub struct IncoherentBasis {
    change: ComplexMatrix,
}

impl IncoherentBasis {
    /// `change` holds the basis vectors as columns, in computational coordinates.
    pub fn new(change: ComplexMatrix) -> Result<Self> {
        if !change.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "incoherent basis must be square, got {}x{}",
                change.nrows(),
                change.ncols()
            )));
        }
        let d = change.nrows();
        if d < 2 {
            return Err(Error::DimensionMismatch(format!(
                "dimension must be at least 2, got {d}"
            )));
        }
        let residual = spectral_norm(&(change.adjoint() * &change - identity(d)));
        if residual > DEFAULT_TOLERANCE {
            return Err(Error::NotUnitary { residual });
        }
        Ok(Self { change })
    }

    pub fn computational(d: usize) -> Result<Self> {
        Self::new(identity(d))
    }

    /// Eigenbasis `(|+⟩, |−⟩)` of σ₁.
    pub fn sigma1_eigenbasis() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self {
            change: ComplexMatrix::from_row_slice(2, 2, &[re(h), re(h), re(h), re(-h)]),
        }
    }

    pub fn dim(&self) -> usize {
        self.change.nrows()
    }

    pub fn change(&self) -> &ComplexMatrix {
        &self.change
    }

    pub fn is_computational(&self) -> bool {
        spectral_norm(&(&self.change - identity(self.dim()))) <= DEFAULT_TOLERANCE
    }

    /// `U† X U`: the operator expressed in the incoherent frame.
    pub fn to_frame(&self, op: &ComplexMatrix) -> ComplexMatrix {
        self.change.adjoint() * op * &self.change
    }

    /// `U Y U†`: back from the incoherent frame to computational coordinates.
    pub fn from_frame(&self, op: &ComplexMatrix) -> ComplexMatrix {
        &self.change * op * self.change.adjoint()
    }
}

/// Ordered list of the `d²` matrix units: populations first, then coherences.
pub fn coordinate_pairs(d: usize) -> Vec<(usize, usize)> {
    let mut pairs: Vec<(usize, usize)> = (0..d).map(|i| (i, i)).collect();
    pairs.extend(coherence_pairs(d));
    pairs
}

/// Coherence pairs `(i, j)`, `i ≠ j`, lexicographic.
pub fn coherence_pairs(d: usize) -> Vec<(usize, usize)> {
    (0..d)
        .flat_map(|i| (0..d).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect()
}

/// Selection of normalized Pauli operators for the qubit coordinate system.
///
/// `PauliOrder([0, 3, 1, 2])` lists `(σ₀, σ₃ | σ₁, σ₂)`. The first two entries
/// must be diagonal in the incoherent basis so that the ordering stays
/// population-first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PauliOrder(pub [usize; 4]);

impl PauliOrder {
    /// `(σ₀, σ₃ | σ₁, σ₂)`, for the σ₃ eigenbasis.
    pub const SIGMA3_POPULATION: PauliOrder = PauliOrder([0, 3, 1, 2]);
    /// `(σ₀, σ₁ | σ₂, σ₃)`, for the σ₁ eigenbasis.
    pub const SIGMA1_POPULATION: PauliOrder = PauliOrder([0, 1, 2, 3]);

    pub fn new(order: [usize; 4]) -> Result<Self> {
        let mut seen = [false; 4];
        for &k in &order {
            if k > 3 || seen[k] {
                return Err(Error::InvalidArgument(format!(
                    "{order:?} is not a permutation of 0..4"
                )));
            }
            seen[k] = true;
        }
        Ok(Self(order))
    }
}

/// Coordinate system of a [`Superoperator`]. Both variants are population-first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ordering {
    MatrixUnits,
    Pauli(PauliOrder),
}

/// Vectorized operator in the coordinate ordering of [`coordinate_pairs`].
#[derive(Debug, Clone, PartialEq)]
pub struct CoordinateVector(pub ComplexVector);

impl CoordinateVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &ComplexVector {
        &self.0
    }

    /// Population coordinates (the first `d` entries).
    pub fn populations(&self, d: usize) -> Vec<C64> {
        self.0.iter().take(d).copied().collect()
    }

    /// The basis state `|i⟩⟨i|`.
    pub fn basis_state(d: usize, i: usize) -> Self {
        let mut v = ComplexVector::zeros(d * d);
        v[i] = re(1.0);
        Self(v)
    }
}

/// A linear map on operators as a `d² × d²` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Superoperator {
    matrix: ComplexMatrix,
    basis: IncoherentBasis,
    ordering: Ordering,
}

impl Superoperator {
    /// Wraps a matrix given in matrix-unit coordinates.
    pub fn new(matrix: ComplexMatrix, basis: IncoherentBasis) -> Result<Self> {
        Self::with_ordering(matrix, basis, Ordering::MatrixUnits)
    }

    pub fn with_ordering(
        matrix: ComplexMatrix,
        basis: IncoherentBasis,
        ordering: Ordering,
    ) -> Result<Self> {
        let n = basis.dim() * basis.dim();
        if matrix.nrows() != n || matrix.ncols() != n {
            return Err(Error::DimensionMismatch(format!(
                "superoperator must be {n}x{n}, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        if let Ordering::Pauli(order) = ordering {
            check_pauli_order(&basis, order)?;
        }
        Ok(Self {
            matrix,
            basis,
            ordering,
        })
    }

    /// Representation of the linear map `f` in matrix-unit coordinates of `basis`.
    pub fn from_map<F>(basis: IncoherentBasis, f: F) -> Self
    where
        F: Fn(&ComplexMatrix) -> ComplexMatrix,
    {
        let d = basis.dim();
        let pairs = coordinate_pairs(d);
        let mut matrix = ComplexMatrix::zeros(d * d, d * d);
        for (col, &(i, j)) in pairs.iter().enumerate() {
            let mut unit = ComplexMatrix::zeros(d, d);
            unit[(i, j)] = re(1.0);
            let image = basis.to_frame(&f(&basis.from_frame(&unit)));
            for (row, &(k, l)) in pairs.iter().enumerate() {
                matrix[(row, col)] = image[(k, l)];
            }
        }
        Self {
            matrix,
            basis,
            ordering: Ordering::MatrixUnits,
        }
    }

    pub fn identity(basis: IncoherentBasis) -> Self {
        let n = basis.dim() * basis.dim();
        Self {
            matrix: identity(n),
            basis,
            ordering: Ordering::MatrixUnits,
        }
    }

    pub fn zero(basis: IncoherentBasis) -> Self {
        let n = basis.dim() * basis.dim();
        Self {
            matrix: ComplexMatrix::zeros(n, n),
            basis,
            ordering: Ordering::MatrixUnits,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn basis(&self) -> &IncoherentBasis {
        &self.basis
    }

    pub fn ordering(&self) -> Ordering {
        self.ordering
    }

    /// Same coordinates, new matrix.
    pub fn with_matrix(&self, matrix: ComplexMatrix) -> Result<Self> {
        Self::with_ordering(matrix, self.basis.clone(), self.ordering)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            matrix: &self.matrix * re(factor),
            basis: self.basis.clone(),
            ordering: self.ordering,
        }
    }

    /// `self ∘ other`; both must share coordinates.
    pub fn compose(&self, other: &Superoperator) -> Result<Self> {
        self.check_compatible(other)?;
        self.with_matrix(&self.matrix * &other.matrix)
    }

    pub fn check_compatible(&self, other: &Superoperator) -> Result<()> {
        if self.ordering != other.ordering || self.basis != other.basis {
            return Err(Error::DimensionMismatch(
                "superoperators use different coordinate systems".into(),
            ));
        }
        Ok(())
    }

    pub fn apply(&self, v: &CoordinateVector) -> Result<CoordinateVector> {
        if v.len() != self.matrix.ncols() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for a {}-dimensional superoperator",
                v.len(),
                self.matrix.ncols()
            )));
        }
        Ok(CoordinateVector(&self.matrix * &v.0))
    }

    /// Converts to matrix-unit coordinates (a no-op when already there).
    pub fn to_matrix_units(&self) -> Self {
        match self.ordering {
            Ordering::MatrixUnits => self.clone(),
            Ordering::Pauli(order) => {
                let w = pauli_transform(&self.basis, order);
                Self {
                    matrix: w.adjoint() * &self.matrix * w,
                    basis: self.basis.clone(),
                    ordering: Ordering::MatrixUnits,
                }
            }
        }
    }
}

/// Normalized Pauli operators `σ₀ … σ₃` with `tr σᵢσⱼ = δᵢⱼ`.
///
/// These are the textbook Pauli matrices divided by √2, so `σ₃² = 𝟙/2`.
pub fn normalized_paulis() -> [ComplexMatrix; 4] {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let z = c(0.0, 0.0);
    [
        ComplexMatrix::from_row_slice(2, 2, &[re(h), z, z, re(h)]),
        ComplexMatrix::from_row_slice(2, 2, &[z, re(h), re(h), z]),
        ComplexMatrix::from_row_slice(2, 2, &[z, c(0.0, -h), c(0.0, h), z]),
        ComplexMatrix::from_row_slice(2, 2, &[re(h), z, z, re(-h)]),
    ]
}

fn check_pauli_order(basis: &IncoherentBasis, order: PauliOrder) -> Result<()> {
    if basis.dim() != 2 {
        return Err(Error::Unsupported(format!(
            "Pauli coordinates need d = 2, got d = {}",
            basis.dim()
        )));
    }
    let paulis = normalized_paulis();
    for &k in &order.0[..2] {
        let in_frame = basis.to_frame(&paulis[k]);
        let off = in_frame[(0, 1)].norm().max(in_frame[(1, 0)].norm());
        if off > DEFAULT_TOLERANCE {
            return Err(Error::InvalidArgument(format!(
                "σ{k} is not diagonal in the incoherent basis and cannot be a population coordinate"
            )));
        }
    }
    Ok(())
}

/// Unitary `W` with `W[c, b] = tr(σ_order[c] E_b)`, mapping matrix-unit
/// coordinates to Pauli coordinates. A superoperator transforms as `W M W†`.
pub fn pauli_transform(basis: &IncoherentBasis, order: PauliOrder) -> ComplexMatrix {
    let paulis = normalized_paulis();
    let pairs = coordinate_pairs(2);
    ComplexMatrix::from_fn(4, 4, |row, col| {
        let (i, j) = pairs[col];
        let mut unit = ComplexMatrix::zeros(2, 2);
        unit[(i, j)] = re(1.0);
        let e = basis.from_frame(&unit);
        (&paulis[order.0[row]] * e).trace()
    })
}

/// Re-expresses a qubit superoperator in the normalized-Pauli ordering `order`.
pub fn pauli_coordinates(s: &Superoperator, order: PauliOrder) -> Result<Superoperator> {
    check_pauli_order(&s.basis, order)?;
    let units = s.to_matrix_units();
    let w = pauli_transform(&s.basis, order);
    Superoperator::with_ordering(
        &w * units.matrix * w.adjoint(),
        s.basis.clone(),
        Ordering::Pauli(order),
    )
}

pub fn vectorize(op: &ComplexMatrix, basis: &IncoherentBasis) -> Result<CoordinateVector> {
    let d = basis.dim();
    if op.nrows() != d || op.ncols() != d {
        return Err(Error::DimensionMismatch(format!(
            "operator is {}x{}, basis has dimension {d}",
            op.nrows(),
            op.ncols()
        )));
    }
    let frame = basis.to_frame(op);
    let entries: Vec<C64> = coordinate_pairs(d).into_iter().map(|p| frame[p]).collect();
    Ok(CoordinateVector(ComplexVector::from_vec(entries)))
}

pub fn unvectorize(v: &CoordinateVector, basis: &IncoherentBasis) -> Result<ComplexMatrix> {
    let d = basis.dim();
    if v.len() != d * d {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} for dimension {d}",
            v.len()
        )));
    }
    let mut frame = ComplexMatrix::zeros(d, d);
    for (k, p) in coordinate_pairs(d).into_iter().enumerate() {
        frame[p] = v.0[k];
    }
    Ok(basis.from_frame(&frame))
}

/// The complete dephasing map `Δ` in the given incoherent basis.
pub fn dephasing_superop(basis: &IncoherentBasis) -> Superoperator {
    let d = basis.dim();
    let diag = ComplexVector::from_fn(d * d, |k, _| if k < d { re(1.0) } else { re(0.0) });
    Superoperator {
        matrix: ComplexMatrix::from_diagonal(&diag),
        basis: basis.clone(),
        ordering: Ordering::MatrixUnits,
    }
}

/// The four population/coherence blocks of a superoperator.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockSplit {
    /// populations → populations, `d × d`
    pub pp: ComplexMatrix,
    /// coherences → populations, `d × (d² − d)`
    pub pc: ComplexMatrix,
    /// populations → coherences, `(d² − d) × d`
    pub cp: ComplexMatrix,
    /// coherences → coherences
    pub cc: ComplexMatrix,
}

impl BlockSplit {
    pub fn dim(&self) -> usize {
        self.pp.nrows()
    }

    pub fn reassemble(&self) -> ComplexMatrix {
        let d = self.pp.nrows();
        let l = self.cc.nrows();
        let mut m = ComplexMatrix::zeros(d + l, d + l);
        m.view_mut((0, 0), (d, d)).copy_from(&self.pp);
        m.view_mut((0, d), (d, l)).copy_from(&self.pc);
        m.view_mut((d, 0), (l, d)).copy_from(&self.cp);
        m.view_mut((d, d), (l, l)).copy_from(&self.cc);
        m
    }
}

pub fn block_split(s: &Superoperator) -> BlockSplit {
    let d = s.dim();
    let l = d * d - d;
    let m = &s.matrix;
    BlockSplit {
        pp: m.view((0, 0), (d, d)).into_owned(),
        pc: m.view((0, d), (d, l)).into_owned(),
        cp: m.view((d, 0), (l, d)).into_owned(),
        cc: m.view((d, d), (l, l)).into_owned(),
    }
}

/// Choi matrix `Σᵢⱼ |i⟩⟨j| ⊗ Φ(|i⟩⟨j|)`, built in the incoherent frame.
pub fn choi_matrix(s: &Superoperator) -> ComplexMatrix {
    let units = s.to_matrix_units();
    let d = s.dim();
    let pairs = coordinate_pairs(d);
    let mut choi = ComplexMatrix::zeros(d * d, d * d);
    for (col, &(i, j)) in pairs.iter().enumerate() {
        for (row, &(k, l)) in pairs.iter().enumerate() {
            choi[(i * d + k, j * d + l)] = units.matrix[(row, col)];
        }
    }
    choi
}

/// Residual of `Φ(X†) = Φ(X)†` over all inputs, in matrix-unit coordinates.
pub(crate) fn hermiticity_preservation_residual(s: &Superoperator) -> f64 {
    let units = s.to_matrix_units();
    let d = s.dim();
    let pairs = coordinate_pairs(d);
    let index = |p: (usize, usize)| pairs.iter().position(|&q| q == p).expect("pair present");
    let swap: Vec<usize> = pairs.iter().map(|&(i, j)| index((j, i))).collect();
    let m = &units.matrix;
    let mirrored =
        ComplexMatrix::from_fn(m.nrows(), m.ncols(), |r, c| m[(swap[r], swap[c])].conj());
    spectral_norm(&(m - mirrored))
}

/// Norm of the trace functional row `tr ∘ Φ`.
pub(crate) fn trace_row_residual(s: &Superoperator) -> f64 {
    let units = s.to_matrix_units();
    let d = s.dim();
    let row = units.matrix.rows(0, d).row_sum();
    row.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}
