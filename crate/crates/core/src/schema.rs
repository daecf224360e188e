// Copyright 2026 The ncgd Authors
// SPDX-License-Identifier: Apache-2.0

//! Generator files.
//!
//! ```json
//! {
//!   "dimension": 2,
//!   "incoherent_basis": [[[0.7071067811865476, 0], [0.7071067811865476, 0]],
//!                        [[0.7071067811865476, 0], [-0.7071067811865476, 0]]],
//!   "jumps": { "H": [[[1, 0], [0, 0]], [[0, 0], [-1, 0]]], "J": [] }
//! }
//! ```
//!
//! Matrices are row-major lists of rows, complex entries are `[re, im]`.
//! Exactly one of `hd: {H, D, F?}`, `jumps: {H, J}` or `qubit_pauli: {L}` must
//! be present. `incoherent_basis` holds the basis vectors as columns and
//! defaults to the identity. Writing and re-reading a spec reproduces every
//! entry bit for bit.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::linalg::{c, ComplexMatrix};
use crate::lindblad::{GeneratorForm, GeneratorSpec};
use crate::superop::IncoherentBasis;
use crate::{Error, Result};

type MatrixDoc = Vec<Vec<[f64; 2]>>;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GeneratorDoc {
    dimension: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    incoherent_basis: Option<MatrixDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    hd: Option<HdDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    jumps: Option<JumpsDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    qubit_pauli: Option<QubitPauliDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
#[allow(non_snake_case)]
struct HdDoc {
    H: MatrixDoc,
    D: MatrixDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    F: Option<Vec<MatrixDoc>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
#[allow(non_snake_case)]
struct JumpsDoc {
    H: MatrixDoc,
    J: Vec<MatrixDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
#[allow(non_snake_case)]
struct QubitPauliDoc {
    L: MatrixDoc,
}

fn matrix_from_doc(doc: &MatrixDoc, size: usize, field: &str) -> Result<ComplexMatrix> {
    if doc.len() != size {
        return Err(Error::Schema(format!(
            "{field}: expected {size} rows, got {}",
            doc.len()
        )));
    }
    for (i, row) in doc.iter().enumerate() {
        if row.len() != size {
            return Err(Error::Schema(format!(
                "{field}[{i}]: expected {size} entries, got {}",
                row.len()
            )));
        }
        if let Some(j) = row
            .iter()
            .position(|z| !z[0].is_finite() || !z[1].is_finite())
        {
            return Err(Error::Schema(format!(
                "{field}[{i}][{j}]: entry is not finite"
            )));
        }
    }
    Ok(ComplexMatrix::from_fn(size, size, |i, j| {
        c(doc[i][j][0], doc[i][j][1])
    }))
}

fn matrix_to_doc(m: &ComplexMatrix) -> MatrixDoc {
    (0..m.nrows())
        .map(|i| {
            (0..m.ncols())
                .map(|j| [m[(i, j)].re, m[(i, j)].im])
                .collect()
        })
        .collect()
}

fn spec_from_doc(doc: GeneratorDoc) -> Result<GeneratorSpec> {
    let d = doc.dimension;
    if d < 2 {
        return Err(Error::Schema(format!(
            "dimension: must be at least 2, got {d}"
        )));
    }
    let basis = match &doc.incoherent_basis {
        Some(u) => IncoherentBasis::new(matrix_from_doc(u, d, "incoherent_basis")?)
            .map_err(|e| Error::Schema(format!("incoherent_basis: {e}")))?,
        None => IncoherentBasis::computational(d)?,
    };
    let present: Vec<&str> = [
        doc.hd.as_ref().map(|_| "hd"),
        doc.jumps.as_ref().map(|_| "jumps"),
        doc.qubit_pauli.as_ref().map(|_| "qubit_pauli"),
    ]
    .into_iter()
    .flatten()
    .collect();
    if present.len() != 1 {
        return Err(Error::Schema(format!(
            "expected exactly one of `hd`, `jumps`, `qubit_pauli`, found {}",
            if present.is_empty() {
                "none".to_string()
            } else {
                present.join(", ")
            }
        )));
    }
    let form = if let Some(hd) = doc.hd {
        let operator_basis = match &hd.F {
            Some(fs) => Some(
                fs.iter()
                    .enumerate()
                    .map(|(k, f)| matrix_from_doc(f, d, &format!("hd.F[{k}]")))
                    .collect::<Result<Vec<_>>>()?,
            ),
            None => None,
        };
        GeneratorForm::Hd {
            hamiltonian: matrix_from_doc(&hd.H, d, "hd.H")?,
            rates: matrix_from_doc(&hd.D, d * d - 1, "hd.D")?,
            operator_basis,
        }
    } else if let Some(jumps) = doc.jumps {
        GeneratorForm::Jumps {
            hamiltonian: matrix_from_doc(&jumps.H, d, "jumps.H")?,
            jumps: jumps
                .J
                .iter()
                .enumerate()
                .map(|(k, j)| matrix_from_doc(j, d, &format!("jumps.J[{k}]")))
                .collect::<Result<_>>()?,
        }
    } else {
        if d != 2 {
            return Err(Error::Schema(format!(
                "qubit_pauli: requires dimension 2, got {d}"
            )));
        }
        let l = doc.qubit_pauli.expect("one form present");
        GeneratorForm::QubitPauli {
            coefficients: matrix_from_doc(&l.L, 4, "qubit_pauli.L")?,
        }
    };
    Ok(GeneratorSpec::new(basis, form))
}

/// Parses a generator file. Shape errors name the offending field; physical
/// checks such as hermiticity happen when the spec is built.
pub fn parse_generator(text: &str) -> Result<GeneratorSpec> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let doc: GeneratorDoc = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        if path == "." {
            Error::Schema(inner.to_string())
        } else {
            Error::Schema(format!("{path}: {inner}"))
        }
    })?;
    spec_from_doc(doc)
}

pub fn load_generator(path: &Path) -> Result<GeneratorSpec> {
    let text = std::fs::read_to_string(path)?;
    parse_generator(&text)
}

/// Serializes a spec to the generator file format.
pub fn generator_to_json(spec: &GeneratorSpec) -> Result<String> {
    let d = spec.dim();
    let identity = ComplexMatrix::identity(d, d);
    let mut doc = GeneratorDoc {
        dimension: d,
        incoherent_basis: (spec.basis.change() != &identity)
            .then(|| matrix_to_doc(spec.basis.change())),
        hd: None,
        jumps: None,
        qubit_pauli: None,
    };
    let mut all: Vec<&ComplexMatrix> = vec![spec.basis.change()];
    match &spec.form {
        GeneratorForm::Hd {
            hamiltonian,
            rates,
            operator_basis,
        } => {
            all.extend([hamiltonian, rates]);
            all.extend(operator_basis.iter().flatten());
            doc.hd = Some(HdDoc {
                H: matrix_to_doc(hamiltonian),
                D: matrix_to_doc(rates),
                F: operator_basis
                    .as_ref()
                    .map(|f| f.iter().map(matrix_to_doc).collect()),
            });
        }
        GeneratorForm::Jumps { hamiltonian, jumps } => {
            all.push(hamiltonian);
            all.extend(jumps);
            doc.jumps = Some(JumpsDoc {
                H: matrix_to_doc(hamiltonian),
                J: jumps.iter().map(matrix_to_doc).collect(),
            });
        }
        GeneratorForm::QubitPauli { coefficients } => {
            all.push(coefficients);
            doc.qubit_pauli = Some(QubitPauliDoc {
                L: matrix_to_doc(coefficients),
            });
        }
    }
    if all
        .iter()
        .any(|m| m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()))
    {
        return Err(Error::Schema("cannot serialize non-finite entries".into()));
    }
    let mut out = serde_json::to_string_pretty(&doc)?;
    out.push('\n');
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::re;
    use crate::superop::normalized_paulis;

    fn err_text(text: &str) -> String {
        parse_generator(text).unwrap_err().to_string()
    }

    #[test]
    fn parses_jumps() {
        let text = r#"{"dimension": 2,
            "jumps": {"H": [[[1,0],[0,0]],[[0,0],[-1,0]]], "J": [[[[0,0],[1,0]],[[0,0],[0,0]]]]}}"#;
        let spec = parse_generator(text).unwrap();
        assert!(spec.basis.is_computational());
        match &spec.form {
            GeneratorForm::Jumps { hamiltonian, jumps } => {
                assert_eq!(hamiltonian[(1, 1)], re(-1.0));
                assert_eq!(jumps[0][(0, 1)], re(1.0));
            }
            other => panic!("unexpected form {other:?}"),
        }
        spec.build().unwrap();
    }

    #[test]
    fn round_trip_is_bit_exact() {
        let s = normalized_paulis();
        let h = &s[3] * re(0.1 + 0.2) + &s[1] * c(1e-300, -0.0);
        let spec = GeneratorSpec::jumps(
            IncoherentBasis::sigma1_eigenbasis(),
            h,
            vec![
                &s[2] * re(std::f64::consts::PI),
                &s[1] * c(1.0 / 3.0, 2.0f64.sqrt()),
            ],
        );
        let text = generator_to_json(&spec).unwrap();
        let back = parse_generator(&text).unwrap();
        assert_eq!(back, spec);
        assert_eq!(generator_to_json(&back).unwrap(), text);
        let bits = |sp: &GeneratorSpec| match &sp.form {
            GeneratorForm::Jumps { hamiltonian, .. } => hamiltonian[(0, 1)].im.to_bits(),
            _ => unreachable!(),
        };
        assert_eq!(bits(&back), bits(&spec));
    }

    #[test]
    fn round_trip_hd_with_basis_and_qubit() {
        let f = crate::lindblad::gell_mann_basis(3);
        let spec = GeneratorSpec::new(
            IncoherentBasis::computational(3).unwrap(),
            GeneratorForm::Hd {
                hamiltonian: ComplexMatrix::identity(3, 3) * re(0.7),
                rates: ComplexMatrix::identity(8, 8) * re(0.3),
                operator_basis: Some(f),
            },
        );
        let text = generator_to_json(&spec).unwrap();
        assert!(!text.contains("incoherent_basis"));
        assert_eq!(parse_generator(&text).unwrap(), spec);

        let spec = GeneratorSpec::qubit_pauli(
            IncoherentBasis::sigma1_eigenbasis(),
            ComplexMatrix::identity(4, 4),
        );
        assert_eq!(
            parse_generator(&generator_to_json(&spec).unwrap()).unwrap(),
            spec
        );
    }

    #[test]
    fn errors_name_the_field() {
        let e = err_text(
            r#"{"dimension": 2, "jumps": {"H": [[[1,0],[0,0]],[[0,0],[-1,0]]], "J": [], "K": 1}}"#,
        );
        assert!(e.contains("K"), "{e}");
        let e = err_text(
            r#"{"dimension": 2, "jumps": {"H": [[[1,0],[0,0]],[[0,0],["x",0]]], "J": []}}"#,
        );
        assert!(e.contains("jumps.H"), "{e}");
        let e = err_text(r#"{"dimension": 2, "jumps": {"J": []}}"#);
        assert!(e.contains("H"), "{e}");
        let e = err_text(
            r#"{"dimension": 3, "jumps": {"H": [[[1,0],[0,0]],[[0,0],[-1,0]]], "J": []}}"#,
        );
        assert!(e.contains("jumps.H"), "{e}");
        let e = err_text(
            r#"{"dimension": 2, "hd": {"H": [[[0,0],[0,0]],[[0,0],[0,0]]], "D": [[[0,0]]]}}"#,
        );
        assert!(e.contains("hd.D"), "{e}");
        let e = err_text(r#"{"dimension": 2}"#);
        assert!(e.contains("exactly one"), "{e}");
        let e = err_text(r#"{"dimension": 3, "qubit_pauli": {"L": []}}"#);
        assert!(e.contains("qubit_pauli"), "{e}");
        let e = err_text(
            r#"{"dimension": 2, "incoherent_basis": [[[1,0],[1,0]],[[0,0],[1,0]]],
                "jumps": {"H": [[[0,0],[0,0]],[[0,0],[0,0]]], "J": []}}"#,
        );
        assert!(e.contains("incoherent_basis"), "{e}");
        let e = err_text(r#"{"dimension": 1, "jumps": {"H": [[[0,0]]], "J": []}}"#);
        assert!(e.contains("dimension"), "{e}");
        assert!(err_text("{").contains("EOF"));
    }

    #[test]
    fn non_finite_rejected_on_write() {
        let spec = GeneratorSpec::jumps(
            IncoherentBasis::computational(2).unwrap(),
            ComplexMatrix::identity(2, 2) * re(f64::NAN),
            vec![],
        );
        assert!(generator_to_json(&spec).is_err());
    }
}
