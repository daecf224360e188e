// Copyright 2026 The ncgd Authors
// SPDX-License-Identifier: Apache-2.0

//! Propagation and the sequential-measurement witness.
//!
//! The witness compares two distributions of a final measurement in the
//! incoherent basis: `p`, obtained when the state is only dephased at `t₁`,
//! and `q`, obtained when it is additionally dephased at an intermediate time
//! `t₂`. Their trace distance, maximized over incoherent inputs, vanishes for
//! NCGD dynamics.

use rayon::prelude::*;
use serde::Serialize;

use crate::linalg::{identity, re, spectral_norm, ComplexMatrix, ComplexVector};
use crate::lindblad::TimeDependentGenerator;
use crate::superop::{CoordinateVector, IncoherentBasis, Superoperator};
use crate::{Error, Result};

/// Entries below this are reported as negative probabilities.
pub const PROBABILITY_FLOOR: f64 = -1e-12;
/// Allowed deviation of a probability vector's sum from one.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-10;

/// `exp(M)` by scaling and squaring with a Padé approximant.
pub fn matrix_exp(m: &ComplexMatrix) -> ComplexMatrix {
    if m.iter().all(|z| z.norm() == 0.0) {
        return identity(m.nrows());
    }
    m.clone().exp()
}

/// A propagator `E(t_end, t_start)` in matrix-unit coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Propagator {
    pub matrix: ComplexMatrix,
    pub t_start: f64,
    pub t_end: f64,
    pub basis: IncoherentBasis,
    /// Step-doubling estimate for time-ordered products; `None` when exact.
    pub error_estimate: Option<f64>,
}

impl Propagator {
    pub fn as_superoperator(&self) -> Superoperator {
        Superoperator::new(self.matrix.clone(), self.basis.clone()).expect("propagator is d²×d²")
    }

    /// `later ∘ self`, spanning both intervals.
    pub fn then(&self, later: &Propagator) -> Result<Propagator> {
        if self.basis != later.basis {
            return Err(Error::DimensionMismatch(
                "propagators use different bases".into(),
            ));
        }
        let error_estimate = match (self.error_estimate, later.error_estimate) {
            (None, None) => None,
            (a, b) => Some(a.unwrap_or(0.0) + b.unwrap_or(0.0)),
        };
        Ok(Propagator {
            matrix: &later.matrix * &self.matrix,
            t_start: self.t_start,
            t_end: later.t_end,
            basis: self.basis.clone(),
            error_estimate,
        })
    }
}

/// `exp(t S)` for a time-independent generator.
pub fn propagate_const(s: &Superoperator, t: f64) -> Result<Propagator> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::InvalidTime(format!(
            "propagation time must be nonnegative, got {t}"
        )));
    }
    let units = s.to_matrix_units();
    Ok(Propagator {
        matrix: matrix_exp(&(units.matrix() * re(t))),
        t_start: 0.0,
        t_end: t,
        basis: s.basis().clone(),
        error_estimate: None,
    })
}

fn ordered_product(
    gen: &TimeDependentGenerator,
    t_start: f64,
    t_end: f64,
    steps: usize,
) -> Result<ComplexMatrix> {
    let h = (t_end - t_start) / steps as f64;
    let mut product: Option<ComplexMatrix> = None;
    for k in 0..steps {
        let mid = t_start + (k as f64 + 0.5) * h;
        let step = matrix_exp(&(gen.superop_at(mid)?.to_matrix_units().matrix() * re(h)));
        product = Some(match product {
            None => step,
            Some(p) => step * p,
        });
    }
    Ok(product.expect("at least one step"))
}

/// Time-ordered product of midpoint exponentials over `[t_start, t_end]`.
///
/// The returned matrix uses `2·steps` steps; the error estimate is the
/// distance to the `steps`-step product.
pub fn propagate_timedep(
    gen: &TimeDependentGenerator,
    t_start: f64,
    t_end: f64,
    steps: usize,
) -> Result<Propagator> {
    if !(t_start >= 0.0) || !(t_end >= t_start) || !t_end.is_finite() {
        return Err(Error::InvalidTime(format!(
            "invalid interval [{t_start}, {t_end}]"
        )));
    }
    if steps == 0 {
        return Err(Error::InvalidArgument("steps must be at least 1".into()));
    }
    let basis = gen.sample(t_start).basis;
    if t_end == t_start {
        let d = basis.dim();
        return Ok(Propagator {
            matrix: identity(d * d),
            t_start,
            t_end,
            basis,
            error_estimate: Some(0.0),
        });
    }
    let coarse = ordered_product(gen, t_start, t_end, steps)?;
    let fine = ordered_product(gen, t_start, t_end, 2 * steps)?;
    let error = spectral_norm(&(&fine - &coarse));
    Ok(Propagator {
        matrix: fine,
        t_start,
        t_end,
        basis,
        error_estimate: Some(error),
    })
}

/// Final-measurement distributions without (`p`) and with (`q`) the
/// intermediate dephasing.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SequentialDistributions {
    pub p: Vec<f64>,
    pub q: Vec<f64>,
    /// False when either vector has negative entries or a wrong sum, which
    /// can happen for generators that are not completely positive.
    pub probability_vectors: bool,
}

struct SequentialMaps {
    d: usize,
    direct: ComplexMatrix,
    first: ComplexMatrix,
    second: ComplexMatrix,
}

impl SequentialMaps {
    fn new(s: &Superoperator, t1: f64, t2: f64, t3: f64) -> Result<Self> {
        check_times(t1, t2, t3)?;
        let units = s.to_matrix_units();
        let m = units.matrix();
        Ok(Self {
            d: s.dim(),
            direct: matrix_exp(&(m * re(t3 - t1))),
            first: matrix_exp(&(m * re(t2 - t1))),
            second: matrix_exp(&(m * re(t3 - t2))),
        })
    }

    fn dephase(&self, v: &ComplexVector) -> ComplexVector {
        ComplexVector::from_fn(v.len(), |k, _| if k < self.d { v[k] } else { re(0.0) })
    }

    fn distributions(&self, populations: &[f64]) -> SequentialDistributions {
        let d = self.d;
        let rho = ComplexVector::from_fn(
            d * d,
            |k, _| if k < d { re(populations[k]) } else { re(0.0) },
        );
        let p_vec = &self.direct * &rho;
        let q_vec = &self.second * self.dephase(&(&self.first * &rho));
        let p: Vec<f64> = p_vec.iter().take(d).map(|z| z.re).collect();
        let q: Vec<f64> = q_vec.iter().take(d).map(|z| z.re).collect();
        let imaginary = p_vec
            .iter()
            .chain(q_vec.iter())
            .take(d)
            .map(|z| z.im.abs())
            .fold(0.0, f64::max);
        let probability_vectors = is_probability_vector(&p)
            && is_probability_vector(&q)
            && imaginary <= NORMALIZATION_TOLERANCE;
        SequentialDistributions {
            p,
            q,
            probability_vectors,
        }
    }
}

fn is_probability_vector(v: &[f64]) -> bool {
    v.iter().all(|&x| x >= PROBABILITY_FLOOR)
        && (v.iter().sum::<f64>() - 1.0).abs() <= NORMALIZATION_TOLERANCE
}

fn check_times(t1: f64, t2: f64, t3: f64) -> Result<()> {
    if !(t1 >= 0.0 && t2 >= t1 && t3 >= t2 && t3.is_finite()) {
        return Err(Error::InvalidTime(format!(
            "need 0 ≤ t1 ≤ t2 ≤ t3, got ({t1}, {t2}, {t3})"
        )));
    }
    Ok(())
}

pub fn sequential_distributions(
    s: &Superoperator,
    rho0: &CoordinateVector,
    t1: f64,
    t2: f64,
    t3: f64,
) -> Result<SequentialDistributions> {
    let d = s.dim();
    if rho0.len() != d * d {
        return Err(Error::DimensionMismatch(format!(
            "state of length {} for dimension {d}",
            rho0.len()
        )));
    }
    let populations = rho0.populations(d);
    if populations
        .iter()
        .any(|z| z.im.abs() > NORMALIZATION_TOLERANCE || z.re < PROBABILITY_FLOOR)
    {
        return Err(Error::NotAState(
            "populations must be real and nonnegative".into(),
        ));
    }
    let real: Vec<f64> = populations.iter().map(|z| z.re).collect();
    if (real.iter().sum::<f64>() - 1.0).abs() > NORMALIZATION_TOLERANCE {
        return Err(Error::NotAState("populations must sum to one".into()));
    }
    Ok(SequentialMaps::new(s, t1, t2, t3)?.distributions(&real))
}

/// `½ Σ |pᵢ − qᵢ|`.
pub fn trace_distance(p: &[f64], q: &[f64]) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::DimensionMismatch(format!(
            "distributions of lengths {} and {}",
            p.len(),
            q.len()
        )));
    }
    Ok(0.5 * p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum::<f64>())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WitnessValue {
    pub value: f64,
    /// Index `i` of the maximizing input `|i⟩⟨i|`.
    pub argmax_state: usize,
}

/// Trace-distance witness maximized over incoherent inputs.
///
/// The map from input populations to `p − q` is linear and the trace distance
/// is convex, so the maximum sits at one of the `d` pure incoherent states.
pub fn witness(s: &Superoperator, t1: f64, t2: f64, t3: f64) -> Result<WitnessValue> {
    let maps = SequentialMaps::new(s, t1, t2, t3)?;
    let mut best = WitnessValue {
        value: f64::NEG_INFINITY,
        argmax_state: 0,
    };
    for i in 0..maps.d {
        let mut populations = vec![0.0; maps.d];
        populations[i] = 1.0;
        let dist = maps.distributions(&populations);
        let value = trace_distance(&dist.p, &dist.q)?;
        if value > best.value {
            best = WitnessValue {
                value,
                argmax_state: i,
            };
        }
    }
    Ok(best)
}

/// All points of the barycentric grid with `divisions` steps per edge.
pub fn simplex_grid(d: usize, divisions: usize) -> Vec<Vec<f64>> {
    fn fill(prefix: &mut Vec<usize>, remaining: usize, slots: usize, out: &mut Vec<Vec<usize>>) {
        if slots == 1 {
            prefix.push(remaining);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in 0..=remaining {
            prefix.push(k);
            fill(prefix, remaining - k, slots - 1, out);
            prefix.pop();
        }
    }
    let mut raw = Vec::new();
    fill(&mut Vec::with_capacity(d), divisions, d, &mut raw);
    raw.into_iter()
        .map(|w| w.into_iter().map(|k| k as f64 / divisions as f64).collect())
        .collect()
}

/// Witness maximized over a barycentric grid of incoherent states; a
/// cross-check for [`witness`].
pub fn witness_simplex_grid(
    s: &Superoperator,
    t1: f64,
    t2: f64,
    t3: f64,
    divisions: usize,
) -> Result<f64> {
    if divisions == 0 {
        return Err(Error::InvalidArgument(
            "grid needs at least one division".into(),
        ));
    }
    let maps = SequentialMaps::new(s, t1, t2, t3)?;
    let mut best = f64::NEG_INFINITY;
    for w in simplex_grid(maps.d, divisions) {
        let dist = maps.distributions(&w);
        best = best.max(trace_distance(&dist.p, &dist.q)?);
    }
    Ok(best)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurveSample {
    pub t2: f64,
    pub value: f64,
}

/// Witness as a function of the intermediate time for fixed `t₁`, `t₃`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessCurve {
    pub t1: f64,
    pub t3: f64,
    pub samples: Vec<CurveSample>,
    pub generator: String,
    pub basis: String,
}

/// 17 significant digits.
fn format_sig17(x: f64) -> String {
    format!("{x:.16e}")
}

impl WitnessCurve {
    pub fn max_sample(&self) -> Option<CurveSample> {
        self.samples
            .iter()
            .copied()
            .max_by(|a, b| a.value.total_cmp(&b.value))
    }

    /// Two whitespace-separated columns `t2 value`.
    pub fn to_dat(&self) -> String {
        let mut out = String::new();
        for s in &self.samples {
            out.push_str(&format_sig17(s.t2));
            out.push(' ');
            out.push_str(&format_sig17(s.value));
            out.push('\n');
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("t2,value\n");
        for s in &self.samples {
            out.push_str(&format_sig17(s.t2));
            out.push(',');
            out.push_str(&format_sig17(s.value));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("curve serializes");
        s.push('\n');
        s
    }
}

/// Curve over `t₂ ∈ [0, t₃]` with `t₁ = 0`.
pub fn witness_curve(s: &Superoperator, t3: f64, n_samples: usize) -> Result<WitnessCurve> {
    witness_curve_from(s, 0.0, t3, n_samples)
}

/// Curve over a uniform grid of `n_samples` points `t₂ ∈ [t₁, t₃]`, inclusive.
pub fn witness_curve_from(
    s: &Superoperator,
    t1: f64,
    t3: f64,
    n_samples: usize,
) -> Result<WitnessCurve> {
    if n_samples < 2 {
        return Err(Error::InvalidArgument(format!(
            "need at least 2 samples, got {n_samples}"
        )));
    }
    check_times(t1, t1, t3)?;
    let last = n_samples - 1;
    let times: Vec<f64> = (0..n_samples)
        .map(|k| {
            if k == last {
                t3
            } else {
                t1 + (t3 - t1) * k as f64 / last as f64
            }
        })
        .collect();
    let samples = times
        .par_iter()
        .map(|&t2| witness(s, t1, t2, t3).map(|w| CurveSample { t2, value: w.value }))
        .collect::<Result<Vec<_>>>()?;
    Ok(WitnessCurve {
        t1,
        t3,
        samples,
        generator: format!("superoperator (d = {})", s.dim()),
        basis: describe_basis(s.basis()),
    })
}

pub fn describe_basis(basis: &IncoherentBasis) -> String {
    if basis.is_computational() {
        format!("computational (d = {})", basis.dim())
    } else if basis == &IncoherentBasis::sigma1_eigenbasis() {
        "sigma1 eigenbasis".to_string()
    } else {
        format!("custom unitary (d = {})", basis.dim())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::real_matrix;
    use crate::lindblad::GeneratorSpec;
    use crate::superop::normalized_paulis;

    fn ramsey(omega: f64, gamma: f64) -> Superoperator {
        let s = normalized_paulis();
        GeneratorSpec::jumps(
            IncoherentBasis::sigma1_eigenbasis(),
            &s[3] * re(omega),
            vec![&s[3] * re(gamma.sqrt())],
        )
        .build()
        .unwrap()
    }

    #[test]
    fn zero_time_is_identity() {
        let p = propagate_const(&ramsey(1.0, 1.0), 0.0).unwrap();
        assert_eq!(p.matrix, identity(4));
        assert!(propagate_const(&ramsey(1.0, 1.0), -1.0).is_err());
    }

    #[test]
    fn semigroup_law() {
        let s = ramsey(0.8, 0.3);
        for (a, b) in [(0.1, 0.4), (1.3, 0.7), (2.0, 1.9)] {
            let ab = propagate_const(&s, a + b).unwrap();
            let composed = propagate_const(&s, a)
                .unwrap()
                .then(&propagate_const(&s, b).unwrap())
                .unwrap();
            assert!((ab.matrix - composed.matrix).norm() < 1e-11);
        }
    }

    #[test]
    fn rotation_damping_block_closed_form() {
        let (omega, gamma, t) = (1.0, 0.6, 1.7);
        let s = ramsey(omega, gamma);
        let p = crate::superop::pauli_coordinates(
            &propagate_const(&s, t).unwrap().as_superoperator(),
            crate::superop::PauliOrder::SIGMA1_POPULATION,
        )
        .unwrap();
        let w = std::f64::consts::SQRT_2 * omega * t;
        let decay = (-gamma * t).exp();
        let expected = real_matrix(
            4,
            4,
            &[
                1.0,
                0.0,
                0.0,
                0.0, //
                0.0,
                decay * w.cos(),
                -decay * w.sin(),
                0.0, //
                0.0,
                decay * w.sin(),
                decay * w.cos(),
                0.0, //
                0.0,
                0.0,
                0.0,
                1.0,
            ],
        );
        assert!((p.matrix() - expected).norm() < 1e-12);
    }

    #[test]
    fn timedep_reduces_to_const() {
        let s = normalized_paulis();
        let spec = GeneratorSpec::jumps(
            IncoherentBasis::sigma1_eigenbasis(),
            &s[3] * re(1.0),
            vec![&s[1] * re(0.5)],
        );
        let gen = TimeDependentGenerator::constant(spec.clone());
        let td = propagate_timedep(&gen, 0.0, 2.0, 200).unwrap();
        let exact = propagate_const(&spec.build().unwrap(), 2.0).unwrap();
        assert!((td.matrix - exact.matrix).norm() < 1e-9);
        assert!(td.error_estimate.unwrap() < 1e-9);
        assert!(propagate_timedep(&gen, 1.0, 0.5, 10).is_err());
        assert!(propagate_timedep(&gen, 0.0, 1.0, 0).is_err());
    }

    #[test]
    fn timedep_zero_generator() {
        let b = IncoherentBasis::computational(2).unwrap();
        let gen = TimeDependentGenerator::constant(GeneratorSpec::jumps(
            b,
            ComplexMatrix::zeros(2, 2),
            vec![],
        ));
        let td = propagate_timedep(&gen, 0.0, 1.0, 5).unwrap();
        assert_eq!(td.matrix, identity(4));
    }

    #[test]
    fn endpoints_give_equal_distributions() {
        let s = ramsey(1.0, 1.0);
        let rho = CoordinateVector::basis_state(2, 0);
        let a = sequential_distributions(&s, &rho, 0.5, 0.5, 2.0).unwrap();
        assert_eq!(a.p, a.q);
        let b = sequential_distributions(&s, &rho, 0.5, 2.0, 2.0).unwrap();
        assert_eq!(b.p, b.q);
        assert!(a.probability_vectors && b.probability_vectors);
    }

    #[test]
    fn distribution_errors() {
        let s = ramsey(1.0, 1.0);
        let rho = CoordinateVector::basis_state(2, 0);
        assert!(matches!(
            sequential_distributions(&s, &rho, 1.0, 0.5, 2.0),
            Err(Error::InvalidTime(_))
        ));
        let bad = CoordinateVector(ComplexVector::from_vec(vec![
            re(0.7),
            re(0.7),
            re(0.0),
            re(0.0),
        ]));
        assert!(matches!(
            sequential_distributions(&s, &bad, 0.0, 0.5, 2.0),
            Err(Error::NotAState(_))
        ));
        let neg = CoordinateVector(ComplexVector::from_vec(vec![
            re(1.5),
            re(-0.5),
            re(0.0),
            re(0.0),
        ]));
        assert!(matches!(
            sequential_distributions(&s, &neg, 0.0, 0.5, 2.0),
            Err(Error::NotAState(_))
        ));
    }

    #[test]
    fn ramsey_witness_value() {
        let s = ramsey(1.0, 1.0);
        let w = witness(&s, 0.0, 1.5, 3.0).unwrap();
        let r2 = std::f64::consts::SQRT_2;
        let expected = 0.5 * (-3.0f64).exp() * ((3.0 * r2).cos() - (1.5 * r2).cos().powi(2)).abs();
        assert!((w.value - expected).abs() < 1e-12);
        assert!((w.value - 0.0181).abs() < 1e-4);
    }

    #[test]
    fn trace_distance_basics() {
        assert_eq!(trace_distance(&[0.3, 0.7], &[0.3, 0.7]).unwrap(), 0.0);
        assert_eq!(trace_distance(&[1.0, 0.0], &[0.0, 1.0]).unwrap(), 1.0);
        assert!((trace_distance(&[0.8, 0.2], &[0.5, 0.5]).unwrap() - 0.3).abs() < 1e-15);
        assert!(trace_distance(&[1.0], &[0.5, 0.5]).is_err());
    }

    #[test]
    fn curve_shape_and_formats() {
        let curve = witness_curve(&ramsey(1.0, 1.0), 3.0, 7).unwrap();
        assert_eq!(curve.samples.len(), 7);
        assert_eq!(curve.samples[0].t2, 0.0);
        assert_eq!(curve.samples[6].t2, 3.0);
        assert!(curve.samples[0].value.abs() < 1e-10 && curve.samples[6].value.abs() < 1e-10);
        let dat = curve.to_dat();
        assert_eq!(dat.lines().count(), 7);
        assert!(dat.starts_with("0.0000000000000000e0 "));
        assert!(curve.to_csv().starts_with("t2,value\n"));
        assert!(witness_curve(&ramsey(1.0, 1.0), 3.0, 1).is_err());
    }

    #[test]
    fn simplex_grid_counts() {
        assert_eq!(simplex_grid(2, 20).len(), 21);
        assert_eq!(simplex_grid(3, 5).len(), 21);
        for w in simplex_grid(3, 4) {
            assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-15);
        }
    }
}
