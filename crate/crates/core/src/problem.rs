//! Problem-file schema: a structured JSON document carrying the available
//! Hamiltonians (and optionally group generators and candidate codes).
//!
//! Complex numbers are serialized as two-element `[re, im]` arrays and
//! matrices as row-major nested arrays, so any language can produce or
//! consume the format without a binary dependency.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{fnorm, is_hermitian, is_unitary, CMatrix, C64};
use crate::tolerances::{TOL_HERMITIAN, TOL_UNITARY};

pub const SCHEMA_VERSION: &str = "1";

pub type MatrixData = Vec<Vec<[f64; 2]>>;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NamedMatrix {
    pub name: String,
    pub matrix: MatrixData,
}

/// A candidate code subspace: either a set of computational basis indices or
/// an explicit frame given as a list of basis column vectors.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CodeSpec {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub indices: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frame: Option<Vec<Vec<[f64; 2]>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProblemFile {
    pub schema_version: String,
    pub dimension: usize,
    pub hamiltonians: Vec<NamedMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group_generators: Option<Vec<NamedMatrix>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub codes: Option<Vec<CodeSpec>>,
}

pub fn matrix_to_data(m: &CMatrix) -> MatrixData {
    (0..m.nrows())
        .map(|i| {
            (0..m.ncols())
                .map(|j| [m[[i, j]].re, m[[i, j]].im])
                .collect()
        })
        .collect()
}

pub fn matrix_from_data(data: &MatrixData, dim: usize, path: &str) -> Result<CMatrix> {
    if data.len() != dim {
        return Err(Error::Schema(format!(
            "{path}: has {} rows, expected {dim}",
            data.len()
        )));
    }
    let mut m = CMatrix::zeros((dim, dim));
    for (i, row) in data.iter().enumerate() {
        if row.len() != dim {
            return Err(Error::Schema(format!(
                "{path}: row {i} has {} entries, expected {dim}",
                row.len()
            )));
        }
        for (j, &[re, im]) in row.iter().enumerate() {
            if !re.is_finite() || !im.is_finite() {
                return Err(Error::Schema(format!(
                    "{path}: entry ({i}, {j}) is not finite"
                )));
            }
            m[[i, j]] = C64::new(re, im);
        }
    }
    Ok(m)
}

impl ProblemFile {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: ProblemFile = serde_json::from_str(text)
            .map_err(|e| Error::Schema(format!("invalid problem JSON: {e}")))?;
        file.validate()?;
        Ok(file)
    }

    /// Deterministic pretty-printed serialization (byte-identical per input).
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("problem files always serialize");
        s.push('\n');
        s
    }

    pub fn validate(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::Schema(format!(
                "schema_version: unsupported value {:?}, expected {SCHEMA_VERSION:?}",
                self.schema_version
            )));
        }
        if self.dimension == 0 {
            return Err(Error::Schema("dimension: must be positive".into()));
        }
        for (k, h) in self.hamiltonians.iter().enumerate() {
            let m = matrix_from_data(
                &h.matrix,
                self.dimension,
                &format!("hamiltonians[{k}].matrix"),
            )?;
            if !is_hermitian(&m, TOL_HERMITIAN) {
                return Err(Error::Schema(format!(
                    "hamiltonians[{k}].matrix ({}): not Hermitian",
                    h.name
                )));
            }
        }
        if let Some(gens) = &self.group_generators {
            for (k, g) in gens.iter().enumerate() {
                let m = matrix_from_data(
                    &g.matrix,
                    self.dimension,
                    &format!("group_generators[{k}].matrix"),
                )?;
                if !is_unitary(&m, TOL_UNITARY) {
                    return Err(Error::Schema(format!(
                        "group_generators[{k}].matrix ({}): not unitary",
                        g.name
                    )));
                }
            }
        }
        if let Some(codes) = &self.codes {
            for (k, code) in codes.iter().enumerate() {
                self.code_frame(code)
                    .map_err(|e| Error::Schema(format!("codes[{k}] ({}): {e}", code.name)))?;
            }
        }
        Ok(())
    }

    pub fn hamiltonian_matrices(&self) -> Result<Vec<CMatrix>> {
        self.hamiltonians
            .iter()
            .enumerate()
            .map(|(k, h)| {
                matrix_from_data(
                    &h.matrix,
                    self.dimension,
                    &format!("hamiltonians[{k}].matrix"),
                )
            })
            .collect()
    }

    pub fn group_matrices(&self) -> Result<Vec<CMatrix>> {
        let gens = self.group_generators.as_ref().ok_or_else(|| {
            Error::Schema("group_generators: missing (required for the group pipeline)".into())
        })?;
        if gens.is_empty() {
            return Err(Error::Schema("group_generators: must not be empty".into()));
        }
        gens.iter()
            .enumerate()
            .map(|(k, g)| {
                matrix_from_data(
                    &g.matrix,
                    self.dimension,
                    &format!("group_generators[{k}].matrix"),
                )
            })
            .collect()
    }

    /// Resolve a code spec into an orthonormal n×d frame.
    pub fn code_frame(&self, code: &CodeSpec) -> Result<CMatrix> {
        let n = self.dimension;
        match (&code.indices, &code.frame) {
            (Some(indices), None) => {
                if indices.is_empty() {
                    return Err(Error::Schema("indices: must not be empty".into()));
                }
                let mut seen = std::collections::BTreeSet::new();
                for &i in indices {
                    if i >= n {
                        return Err(Error::Schema(format!(
                            "indices: {i} out of range for dimension {n}"
                        )));
                    }
                    if !seen.insert(i) {
                        return Err(Error::Schema(format!("indices: {i} repeated")));
                    }
                }
                let mut f = CMatrix::zeros((n, indices.len()));
                for (c, &r) in indices.iter().enumerate() {
                    f[[r, c]] = C64::new(1.0, 0.0);
                }
                Ok(f)
            }
            (None, Some(columns)) => {
                if columns.is_empty() || columns.len() > n {
                    return Err(Error::Schema(format!(
                        "frame: needs between 1 and {n} basis vectors, got {}",
                        columns.len()
                    )));
                }
                let d = columns.len();
                let mut f = CMatrix::zeros((n, d));
                for (c, col) in columns.iter().enumerate() {
                    if col.len() != n {
                        return Err(Error::Schema(format!(
                            "frame: vector {c} has {} entries, expected {n}",
                            col.len()
                        )));
                    }
                    for (r, &[re, im]) in col.iter().enumerate() {
                        if !re.is_finite() || !im.is_finite() {
                            return Err(Error::Schema(format!(
                                "frame: entry ({c}, {r}) is not finite"
                            )));
                        }
                        f[[r, c]] = C64::new(re, im);
                    }
                }
                let gram = crate::linalg::dagger(&f).dot(&f);
                let resid = fnorm(&(gram - crate::linalg::eye(d)));
                if resid > 1e-8 * (d as f64).sqrt().max(1.0) {
                    return Err(Error::Schema(format!(
                        "frame: columns are not orthonormal (residual {resid:.3e})"
                    )));
                }
                Ok(f)
            }
            _ => Err(Error::Schema(
                "exactly one of `indices` or `frame` must be given".into(),
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{example1_generators, sigma_x};

    fn example_problem() -> ProblemFile {
        ProblemFile {
            schema_version: SCHEMA_VERSION.into(),
            dimension: 4,
            hamiltonians: example1_generators()
                .iter()
                .enumerate()
                .map(|(k, g)| NamedMatrix {
                    name: format!("h{k}"),
                    matrix: matrix_to_data(g),
                })
                .collect(),
            group_generators: None,
            codes: Some(vec![CodeSpec {
                name: "h1".into(),
                indices: Some(vec![1, 2]),
                frame: None,
            }]),
        }
    }

    #[test]
    fn roundtrip_preserves_matrices() {
        let p = example_problem();
        let text = p.to_json();
        let back = ProblemFile::from_json(&text).unwrap();
        let orig = p.hamiltonian_matrices().unwrap();
        let again = back.hamiltonian_matrices().unwrap();
        for (a, b) in orig.iter().zip(again.iter()) {
            assert!(fnorm(&(a - b)) == 0.0);
        }
        assert_eq!(text, back.to_json());
    }

    #[test]
    fn rejects_non_hermitian_hamiltonian() {
        let mut p = example_problem();
        p.hamiltonians[0].matrix[0][1] = [5.0, 0.0];
        let err = ProblemFile::from_json(&p.to_json()).unwrap_err();
        assert!(matches!(err, Error::Schema(_)));
        assert!(err.to_string().contains("hamiltonians[0]"));
    }

    #[test]
    fn rejects_bad_shapes_and_values() {
        let mut p = example_problem();
        p.hamiltonians[1].matrix[2].pop();
        assert!(ProblemFile::from_json(&p.to_json()).is_err());

        let mut p = example_problem();
        p.dimension = 0;
        assert!(p.validate().is_err());

        let mut p = example_problem();
        p.hamiltonians[0].matrix[0][0] = [f64::NAN, 0.0];
        assert!(p.validate().is_err());
    }

    #[test]
    fn rejects_bad_codes() {
        let mut p = example_problem();
        p.codes = Some(vec![CodeSpec {
            name: "bad".into(),
            indices: Some(vec![1, 9]),
            frame: None,
        }]);
        assert!(p.validate().is_err());
        p.codes = Some(vec![CodeSpec {
            name: "dup".into(),
            indices: Some(vec![1, 1]),
            frame: None,
        }]);
        assert!(p.validate().is_err());
        p.codes = Some(vec![CodeSpec {
            name: "both".into(),
            indices: Some(vec![1]),
            frame: Some(vec![vec![[1.0, 0.0]; 4]]),
        }]);
        assert!(p.validate().is_err());
    }

    #[test]
    fn frame_orthonormality_enforced() {
        let mut p = example_problem();
        let s = 1.0 / 2f64.sqrt();
        p.codes = Some(vec![CodeSpec {
            name: "bell".into(),
            indices: None,
            frame: Some(vec![vec![[s, 0.0], [0.0, 0.0], [0.0, 0.0], [s, 0.0]]]),
        }]);
        assert!(p.validate().is_ok());
        p.codes = Some(vec![CodeSpec {
            name: "skew".into(),
            indices: None,
            frame: Some(vec![vec![[1.0, 0.0], [1.0, 0.0], [0.0, 0.0], [0.0, 0.0]]]),
        }]);
        assert!(p.validate().is_err());
    }

    #[test]
    fn group_matrices_require_field() {
        let p = example_problem();
        assert!(p.group_matrices().is_err());
        let mut p = example_problem();
        p.group_generators = Some(vec![NamedMatrix {
            name: "x".into(),
            matrix: matrix_to_data(&crate::linalg::kron(&sigma_x(), &sigma_x())),
        }]);
        assert!(p.validate().is_ok());
        assert_eq!(p.group_matrices().unwrap().len(), 1);
    }

    #[test]
    fn rejects_non_unitary_group_generator() {
        let mut p = example_problem();
        let stretched = crate::linalg::kron(&sigma_x(), &sigma_x()).mapv(|z| 2.0 * z);
        p.group_generators = Some(vec![NamedMatrix {
            name: "bad".into(),
            matrix: matrix_to_data(&stretched),
        }]);
        let err = p.validate().unwrap_err();
        assert!(matches!(err, Error::Schema(_)));
        assert!(err.to_string().contains("not unitary"));
    }
}
