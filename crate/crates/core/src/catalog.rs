//! Ready-made problem files for the bundled models, addressable by name.

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::models;
use crate::problem::{matrix_to_data, CodeSpec, NamedMatrix, ProblemFile, SCHEMA_VERSION};

/// Names accepted by [`problem_for`], for error messages and docs.
pub const CATALOG: &[&str] = &[
    "example1",
    "example1-prime",
    "swap:<n>",
    "boson:<L>:<N>",
    "dihedral",
    "z2-commutant",
];

fn named(prefix: &str, mats: &[CMatrix]) -> Vec<NamedMatrix> {
    mats.iter()
        .enumerate()
        .map(|(k, m)| NamedMatrix {
            name: format!("{prefix}{k}"),
            matrix: matrix_to_data(m),
        })
        .collect()
}

fn parse_fields(name: &str) -> Vec<&str> {
    name.split(':').collect()
}

fn parse_usize(s: &str, what: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::Schema(format!("{what}: expected an integer, got {s:?}")))
}

/// Builds the named model's problem file; output is bit-identical across
/// runs.
pub fn problem_for(name: &str) -> Result<ProblemFile> {
    let fields = parse_fields(name);
    match fields.as_slice() {
        ["example1"] | ["example1-prime"] => {
            let prime = fields[0] == "example1-prime";
            let gens = if prime {
                models::example1_prime_generators()
            } else {
                models::example1_generators()
            };
            let names = ["xx_plus_yy", "xy_minus_yx", "z_imbalance"];
            let prime_names = ["xx_minus_yy", "xy_plus_yx", "z_total"];
            let hamiltonians = gens
                .iter()
                .zip(if prime { prime_names } else { names })
                .map(|(m, n)| NamedMatrix {
                    name: n.into(),
                    matrix: matrix_to_data(m),
                })
                .collect();
            Ok(ProblemFile {
                schema_version: SCHEMA_VERSION.into(),
                dimension: 4,
                hamiltonians,
                group_generators: None,
                codes: Some(vec![
                    CodeSpec {
                        name: "odd-parity".into(),
                        indices: Some(vec![1, 2]),
                        frame: None,
                    },
                    CodeSpec {
                        name: "even-parity".into(),
                        indices: Some(vec![0, 3]),
                        frame: None,
                    },
                ]),
            })
        }
        ["swap", n] => {
            let n_qubits = parse_usize(n, "swap qubit count")?;
            let gens = models::swap_generators(n_qubits)?;
            let mut hamiltonians = Vec::new();
            let mut idx = 0;
            for i in 0..n_qubits {
                for j in (i + 1)..n_qubits {
                    hamiltonians.push(NamedMatrix {
                        name: format!("swap_{i}{j}"),
                        matrix: matrix_to_data(&gens[idx]),
                    });
                    idx += 1;
                }
            }
            Ok(ProblemFile {
                schema_version: SCHEMA_VERSION.into(),
                dimension: 1 << n_qubits,
                hamiltonians: hamiltonians.clone(),
                // transpositions are unitary, so the same matrices drive the
                // group pipeline
                group_generators: Some(hamiltonians),
                codes: None,
            })
        }
        ["boson", l, n] => {
            let modes = parse_usize(l, "boson mode count")?;
            let particles = parse_usize(n, "boson particle number")?;
            let (sector, _) = models::boson_sector(modes, particles)?;
            let gens = models::boson_hermitian_generators(modes, particles)?;
            let mut names = Vec::new();
            for i in 0..modes {
                for j in (i + 1)..modes {
                    names.push(format!("hop_re_{i}{j}"));
                    names.push(format!("hop_im_{i}{j}"));
                }
            }
            for i in 0..modes {
                names.push(format!("number_{i}"));
            }
            Ok(ProblemFile {
                schema_version: SCHEMA_VERSION.into(),
                dimension: sector.dim,
                hamiltonians: gens
                    .iter()
                    .zip(names)
                    .map(|(m, name)| NamedMatrix {
                        name,
                        matrix: matrix_to_data(m),
                    })
                    .collect(),
                group_generators: None,
                codes: None,
            })
        }
        ["dihedral"] => {
            let (r, p) = models::dihedral_rep();
            let herm = models::dihedral_hermitian_generators();
            Ok(ProblemFile {
                schema_version: SCHEMA_VERSION.into(),
                dimension: 3,
                hamiltonians: vec![
                    NamedMatrix {
                        name: "reflection".into(),
                        matrix: matrix_to_data(&herm[0]),
                    },
                    NamedMatrix {
                        name: "rotation_re".into(),
                        matrix: matrix_to_data(&herm[1]),
                    },
                    NamedMatrix {
                        name: "rotation_im".into(),
                        matrix: matrix_to_data(&herm[2]),
                    },
                ],
                group_generators: Some(vec![
                    NamedMatrix {
                        name: "R".into(),
                        matrix: matrix_to_data(&r),
                    },
                    NamedMatrix {
                        name: "P".into(),
                        matrix: matrix_to_data(&p),
                    },
                ]),
                codes: None,
            })
        }
        ["z2-commutant"] => {
            let gens = models::z2_generators();
            Ok(ProblemFile {
                schema_version: SCHEMA_VERSION.into(),
                dimension: 4,
                hamiltonians: named("parity_", &gens),
                group_generators: Some(vec![NamedMatrix {
                    name: "zz".into(),
                    matrix: matrix_to_data(&gens[1]),
                }]),
                codes: None,
            })
        }
        _ => Err(Error::Schema(format!(
            "unknown example {name:?}; the catalog is: {}",
            CATALOG.join(", ")
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_catalog_entry_builds_and_validates() {
        for name in [
            "example1",
            "example1-prime",
            "swap:2",
            "swap:3",
            "boson:2:2",
            "boson:3:1",
            "dihedral",
            "z2-commutant",
        ] {
            let p = problem_for(name).unwrap();
            p.validate().unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }

    #[test]
    fn emission_is_bit_identical() {
        let a = problem_for("dihedral").unwrap().to_json();
        let b = problem_for("dihedral").unwrap().to_json();
        assert_eq!(a, b);
    }

    #[test]
    fn unknown_names_list_the_catalog() {
        let err = problem_for("nope").unwrap_err();
        assert!(err.to_string().contains("example1"));
        let err = problem_for("boson:x:1").unwrap_err();
        assert!(matches!(err, Error::Schema(_)));
    }

    #[test]
    fn boson_dimension_matches_sector() {
        let p = problem_for("boson:3:2").unwrap();
        assert_eq!(p.dimension, 6);
        assert_eq!(p.hamiltonians.len(), 9);
    }
}
