// Copyright 2026 The ncgd Authors
// SPDX-License-Identifier: Apache-2.0

//! NCGD certification.
//!
//! With `Δ` the complete dephasing and `pp, pc, cp, cc` the blocks of the
//! generator, a time-independent dynamics is NCGD exactly when
//! `pc · ccʲ · cp = 0` for `j = 0 … d² − d − 1`. Higher powers of `cc` are
//! linear combinations of these by Cayley–Hamilton, so the family is finite.
//!
//! For time-dependent generators the conditions become chain products
//! `pc(tₙ) cc(tₙ₋₁) ⋯ cc(t₂) cp(t₁)` over all ordered times; sampling a grid
//! can refute NCGD but never prove it, hence the `Inconclusive` verdict.

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::dynamics::matrix_exp;
use crate::linalg::{re, spectral_norm, within, ComplexMatrix};
use crate::lindblad::{qubit_blocks_closed_form, TimeDependentGenerator};
use crate::superop::{block_split, dephasing_superop, BlockSplit, Superoperator};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "NCGD")]
    Ncgd,
    #[serde(rename = "CGD")]
    Cgd,
    #[serde(rename = "INCONCLUSIVE")]
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Method {
    /// The finite family of generator block products.
    #[serde(rename = "theorem1")]
    BlockProducts,
    /// Chain products on a sample grid of a time-dependent generator.
    #[serde(rename = "theorem2_sampled")]
    SampledChains,
    /// Direct evaluation of the dephasing-sandwich definition on a time grid.
    #[serde(rename = "definition_bruteforce")]
    DefinitionBruteforce,
    /// A sufficient condition held on every sample.
    #[serde(rename = "sufficient_conditions")]
    SufficientCondition,
}

/// Which condition a residual belongs to.
#[derive(Debug, Clone, PartialEq)]
pub enum Condition {
    /// `pc · ccʲ · cp`
    Order(usize),
    /// A tuple of sample times (chain products) or the two gaps of a
    /// brute-force pair, in chronological order.
    Times(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionResidual {
    pub condition: Condition,
    pub residual: f64,
}

impl Serialize for ConditionResidual {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(2))?;
        match &self.condition {
            Condition::Order(j) => map.serialize_entry("j", j)?,
            Condition::Times(t) => map.serialize_entry("times", t)?,
        }
        map.serialize_entry("residual", &self.residual)?;
        map.end()
    }
}

/// Verdict with the conditions that failed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub verdict: Verdict,
    pub method: Method,
    pub tolerance: f64,
    pub violations: Vec<ConditionResidual>,
    /// Every evaluated condition, passing or not.
    #[serde(skip)]
    pub evaluated: Vec<ConditionResidual>,
}

impl Certificate {
    pub fn conditions_checked(&self) -> usize {
        self.evaluated.len()
    }

    pub fn residual_of_order(&self, j: usize) -> Option<f64> {
        self.evaluated
            .iter()
            .find(|r| r.condition == Condition::Order(j))
            .map(|r| r.residual)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate serializes");
        s.push('\n');
        s
    }
}

fn check_tolerance(tol: f64) -> Result<()> {
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    Ok(())
}

/// Orders `j = 0 … count − 1` of `pc · ccʲ · cp`, residual and threshold
/// scale `‖L‖ʲ⁺²`. Rounding in any block is relative to `‖L‖`, not to the block
/// itself, so a block that is zero up to noise must not shrink the threshold.
fn order_residuals(blocks: &BlockSplit, count: usize) -> Vec<(usize, f64, f64)> {
    let norm = spectral_norm(&blocks.reassemble());
    let mut right = blocks.cp.clone();
    let mut out = Vec::with_capacity(count);
    for j in 0..count {
        if j > 0 {
            right = &blocks.cc * right;
        }
        let residual = spectral_norm(&(&blocks.pc * &right));
        out.push((j, residual, norm.powi(j as i32 + 2)));
    }
    out
}

/// The finite generator-level NCGD test for time-independent generators.
///
/// Order `j` passes when `‖pc · ccʲ · cp‖ ≤ tolerance · (1 + ‖L‖ʲ⁺²)` in the
/// spectral norm, which makes the verdict invariant under rescaling `L`.
pub fn ncgd_time_independent(s: &Superoperator, tolerance: f64) -> Result<Certificate> {
    let d = s.dim();
    ncgd_conditions(s, tolerance, d * d - d)
}

/// As [`ncgd_time_independent`] but checking `orders` powers of `cc`
/// (`j = 0 … orders − 1`). Only `d² − d` of them are independent.
pub fn ncgd_conditions(s: &Superoperator, tolerance: f64, orders: usize) -> Result<Certificate> {
    check_tolerance(tolerance)?;
    let blocks = block_split(s);
    let mut evaluated = Vec::with_capacity(orders);
    let mut violations = Vec::new();
    for (j, residual, scale) in order_residuals(&blocks, orders) {
        let entry = ConditionResidual {
            condition: Condition::Order(j),
            residual,
        };
        if !within(residual, tolerance, 1.0 + scale) {
            violations.push(entry.clone());
        }
        evaluated.push(entry);
    }
    Ok(Certificate {
        verdict: if violations.is_empty() {
            Verdict::Ncgd
        } else {
            Verdict::Cgd
        },
        method: Method::BlockProducts,
        tolerance,
        violations,
        evaluated,
    })
}

/// Default gap grid: 8 log-spaced points in `[0.05, 3] / ‖L‖`.
pub fn default_bruteforce_grid(s: &Superoperator) -> Vec<f64> {
    let norm = spectral_norm(s.matrix()).max(1e-12);
    let (lo, hi) = ((0.05 / norm).ln(), (3.0 / norm).ln());
    (0..8)
        .map(|k| (lo + (hi - lo) * k as f64 / 7.0).exp())
        .collect()
}

/// Direct check of `Δ e^{tL} Δ⊥ e^{τL} Δ = 0` over all gap pairs from `gaps`.
pub fn ncgd_definition_bruteforce(
    s: &Superoperator,
    gaps: &[f64],
    tolerance: f64,
) -> Result<Certificate> {
    check_tolerance(tolerance)?;
    if gaps.is_empty() {
        return Err(Error::InvalidArgument("time grid is empty".into()));
    }
    if let Some(t) = gaps.iter().find(|t| !(**t >= 0.0) || !t.is_finite()) {
        return Err(Error::InvalidTime(format!("grid time {t} is negative")));
    }
    let units = s.to_matrix_units();
    let m = units.matrix();
    let n = m.nrows();
    let delta = dephasing_superop(s.basis()).matrix().clone();
    let perp = ComplexMatrix::identity(n, n) - &delta;
    let exps: Vec<ComplexMatrix> = gaps.iter().map(|&t| matrix_exp(&(m * re(t)))).collect();
    let norms: Vec<f64> = exps.iter().map(spectral_norm).collect();
    let left: Vec<ComplexMatrix> = exps.iter().map(|e| &delta * e * &perp).collect();
    let right: Vec<ComplexMatrix> = exps.iter().map(|e| e * &delta).collect();

    let mut evaluated = Vec::new();
    let mut violations = Vec::new();
    for (a, first) in right.iter().enumerate() {
        for (b, second) in left.iter().enumerate() {
            let residual = spectral_norm(&(second * first));
            let entry = ConditionResidual {
                condition: Condition::Times(vec![gaps[a], gaps[b]]),
                residual,
            };
            if !within(residual, tolerance, 1.0 + norms[a] * norms[b]) {
                violations.push(entry.clone());
            }
            evaluated.push(entry);
        }
    }
    Ok(Certificate {
        verdict: if violations.is_empty() {
            Verdict::Ncgd
        } else {
            Verdict::Cgd
        },
        method: Method::DefinitionBruteforce,
        tolerance,
        violations,
        evaluated,
    })
}

fn sampled_blocks(
    gen: &TimeDependentGenerator,
    grid: &[f64],
) -> Result<Vec<(Superoperator, BlockSplit)>> {
    if grid.is_empty() {
        return Err(Error::InvalidArgument("time grid is empty".into()));
    }
    if grid.windows(2).any(|w| !(w[0] <= w[1])) {
        return Err(Error::InvalidArgument(
            "time grid must be sorted ascending".into(),
        ));
    }
    grid.iter()
        .map(|&t| {
            let s = gen.superop_at(t)?.to_matrix_units();
            let b = block_split(&s);
            Ok((s, b))
        })
        .collect()
}

/// Sufficient NCGD conditions, each evaluated on the sample grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SufficientConditions {
    /// `pc(t) = 0` for every sample.
    pub non_activating: bool,
    /// `cp(t) = 0` for every sample.
    pub non_generating: bool,
    /// `L(t₂) Δ L(t₁) = L(t₂) L(t₁)` for all ordered sample pairs.
    pub dephasing_transparent: bool,
    /// `[L(t), Δ] = 0` for every sample.
    pub commutes_with_dephasing: bool,
}

impl SufficientConditions {
    pub fn any(&self) -> bool {
        self.non_activating
            || self.non_generating
            || self.dephasing_transparent
            || self.commutes_with_dephasing
    }
}

fn vanishes(m: &ComplexMatrix, tolerance: f64, scale: f64) -> bool {
    within(spectral_norm(m), tolerance, scale)
}

fn screen_samples(samples: &[(Superoperator, BlockSplit)], tolerance: f64) -> SufficientConditions {
    let delta = dephasing_superop(samples[0].0.basis()).matrix().clone();
    let n = delta.nrows();
    let perp = ComplexMatrix::identity(n, n) - &delta;
    let norms: Vec<f64> = samples
        .iter()
        .map(|(s, _)| spectral_norm(s.matrix()))
        .collect();
    let non_activating = samples
        .iter()
        .zip(&norms)
        .all(|((_, b), &n)| vanishes(&b.pc, tolerance, n));
    let non_generating = samples
        .iter()
        .zip(&norms)
        .all(|((_, b), &n)| vanishes(&b.cp, tolerance, n));
    let commutes_with_dephasing = samples.iter().zip(&norms).all(|((s, _), &n)| {
        let m = s.matrix();
        vanishes(&(m * &delta - &delta * m), tolerance, n)
    });
    let mut dephasing_transparent = true;
    'outer: for (a, (first, _)) in samples.iter().enumerate() {
        for (b, (second, _)) in samples.iter().enumerate().skip(a) {
            let gap = second.matrix() * &perp * first.matrix();
            if !vanishes(&gap, tolerance, norms[a] * norms[b]) {
                dephasing_transparent = false;
                break 'outer;
            }
        }
    }
    SufficientConditions {
        non_activating,
        non_generating,
        dephasing_transparent,
        commutes_with_dephasing,
    }
}

pub fn sufficient_conditions(
    gen: &TimeDependentGenerator,
    grid: &[f64],
    tolerance: f64,
) -> Result<SufficientConditions> {
    check_tolerance(tolerance)?;
    Ok(screen_samples(&sampled_blocks(gen, grid)?, tolerance))
}

/// Sampled chain-product test for time-dependent generators.
///
/// Checks every non-decreasing tuple of grid times of length
/// `2 ≤ n ≤ n_max`. A failing tuple proves CGD. If none fails, the result is
/// NCGD only when the sampler is constant on the grid (then the finite
/// time-independent test decides) or a sufficient condition of
/// [`sufficient_conditions`] holds; otherwise it is `Inconclusive`.
pub fn ncgd_time_dependent_sampled(
    gen: &TimeDependentGenerator,
    grid: &[f64],
    n_max: usize,
    tolerance: f64,
) -> Result<Certificate> {
    check_tolerance(tolerance)?;
    if n_max < 2 {
        return Err(Error::InvalidArgument(format!(
            "chain length must be at least 2, got {n_max}"
        )));
    }
    let samples = sampled_blocks(gen, grid)?;
    let norms: Vec<f64> = samples
        .iter()
        .map(|(s, _)| spectral_norm(s.matrix()))
        .collect();

    let mut evaluated = Vec::new();
    let mut violations = Vec::new();
    // chains hold cc(t_k) ⋯ cc(t_2) cp(t_1) with the index of the latest time
    struct Chain {
        product: ComplexMatrix,
        scale: f64,
        last: usize,
        times: Vec<f64>,
    }
    let mut chains: Vec<Chain> = samples
        .iter()
        .enumerate()
        .map(|(i, (_, b))| Chain {
            product: b.cp.clone(),
            scale: norms[i],
            last: i,
            times: vec![grid[i]],
        })
        .collect();
    for length in 2..=n_max {
        for chain in &chains {
            for k in chain.last..samples.len() {
                let residual = spectral_norm(&(&samples[k].1.pc * &chain.product));
                let mut times = chain.times.clone();
                times.push(grid[k]);
                let entry = ConditionResidual {
                    condition: Condition::Times(times),
                    residual,
                };
                if !within(residual, tolerance, 1.0 + norms[k] * chain.scale) {
                    violations.push(entry.clone());
                }
                evaluated.push(entry);
            }
        }
        if length == n_max {
            break;
        }
        chains = chains
            .iter()
            .flat_map(|chain| (chain.last..samples.len()).map(move |k| (chain, k)))
            .map(|(chain, k)| {
                let mut times = chain.times.clone();
                times.push(grid[k]);
                Chain {
                    product: &samples[k].1.cc * &chain.product,
                    scale: chain.scale * norms[k],
                    last: k,
                    times,
                }
            })
            .collect();
    }

    if !violations.is_empty() {
        return Ok(Certificate {
            verdict: Verdict::Cgd,
            method: Method::SampledChains,
            tolerance,
            violations,
            evaluated,
        });
    }

    let first = samples[0].0.matrix();
    let constant = samples
        .iter()
        .all(|(s, _)| vanishes(&(s.matrix() - first), tolerance, spectral_norm(first)));
    if constant {
        return ncgd_time_independent(&samples[0].0, tolerance);
    }
    let verdict = if screen_samples(&samples, tolerance).any() {
        (Verdict::Ncgd, Method::SufficientCondition)
    } else {
        (Verdict::Inconclusive, Method::SampledChains)
    };
    Ok(Certificate {
        verdict: verdict.0,
        method: verdict.1,
        tolerance,
        violations,
        evaluated,
    })
}

/// Qubit classification in the `(σ₀, σ₃ | σ₁, σ₂)` convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QubitClass {
    pub non_generating: bool,
    pub non_activating: bool,
    /// NCGD although both generation and detection blocks are nonzero.
    pub orthogonal_ncgd: bool,
    pub overall: Verdict,
}

/// Classifies a qubit coefficient matrix `L`.
///
/// The scalar conditions for non-activation and non-generation are evaluated
/// on the entries of `L`; overall NCGD uses the block products
/// `pc·cp` and `pc·cc·cp`, as the ratio form of the orthogonal-subspace
/// condition is undefined when its denominators vanish.
pub fn classify_qubit(l: &ComplexMatrix, tolerance: f64) -> Result<QubitClass> {
    check_tolerance(tolerance)?;
    let blocks = qubit_blocks_closed_form(l)?;
    let scale = spectral_norm(l);
    let zero = |x: f64| within(x.abs(), tolerance, scale);
    let r = |i: usize, j: usize| l[(i, j)].re;
    let im = |i: usize, j: usize| l[(i, j)].im;

    let non_activating = zero(r(1, 3) - im(0, 2)) && zero(r(2, 3) + im(0, 1));
    let non_generating =
        zero(r(1, 3) + im(0, 2)) && zero(r(2, 3) - im(0, 1)) && zero(im(1, 3)) && zero(im(2, 3));

    let products_vanish = order_residuals(&blocks, 2)
        .into_iter()
        .all(|(_, residual, s)| within(residual, tolerance, 1.0 + s));
    let overall = if non_activating || non_generating || products_vanish {
        Verdict::Ncgd
    } else {
        Verdict::Cgd
    };
    Ok(QubitClass {
        non_generating,
        non_activating,
        orthogonal_ncgd: !non_activating && !non_generating && products_vanish,
        overall,
    })
}

/// NCGD condition for the real-rate Ramsey family with Hamiltonian `ωσ₃` and
/// incoherent basis of σ₁: `2ω² = γ₁₂² + γ₁₃²` and
/// `γ₁₃² (γ₂₂ − γ₃₃) = 2 γ₁₂ γ₁₃ γ₂₃`. Indices of `rates` start at 0.
pub fn ramsey_ncgd_condition(omega: f64, rates: &[[f64; 3]; 3], tolerance: f64) -> bool {
    let g = |i: usize, j: usize| rates[i - 1][j - 1];
    let mixing = [2.0 * omega * omega, g(1, 2).powi(2), g(1, 3).powi(2)];
    let first = mixing[0] - mixing[1] - mixing[2];
    let second_terms = [
        g(1, 3).powi(2) * (g(2, 2) - g(3, 3)),
        2.0 * g(1, 2) * g(1, 3) * g(2, 3),
    ];
    let second = second_terms[0] - second_terms[1];
    let scale1 = mixing.iter().fold(0.0f64, |a, b| a.max(b.abs()));
    let scale2 = second_terms.iter().fold(0.0f64, |a, b| a.max(b.abs()));
    within(first.abs(), tolerance, scale1) && within(second.abs(), tolerance, scale2)
}
