//! Finite-group machinery: closure of a matrix group from unitary
//! generators, seeded Hermitian group-algebra samples, and the generic
//! group-algebra universality pipeline.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{ensure_finite, ensure_square, eye, fnorm, is_unitary, CMatrix, C64};
use crate::tolerances::{Tolerances, TOL_UNITARY};
use crate::universality::{analyze, UniversalityReport};

/// A finite group of unitary matrices closed under multiplication.
///
/// Elements are identified *as matrices*: an unfaithful input presentation
/// collapses to its image group, which is exactly what the represented group
/// algebra needs.
#[derive(Debug, Clone)]
pub struct FiniteGroupRep {
    /// Element 0 is the identity.
    pub elements: Vec<CMatrix>,
    /// `mult_table[i][j]` is the index of `elements[i] · elements[j]`.
    pub mult_table: Vec<Vec<usize>>,
    pub order: usize,
    pub dim: usize,
}

impl FiniteGroupRep {
    /// Index of the inverse of element `i`, read off the multiplication table.
    pub fn inverse_of(&self, i: usize) -> usize {
        self.mult_table[i]
            .iter()
            .position(|&p| p == 0)
            .expect("closed group row must contain the identity")
    }
}

fn find_element(elements: &[CMatrix], candidate: &CMatrix, tol: f64) -> Option<usize> {
    elements.iter().position(|e| fnorm(&(e - candidate)) <= tol)
}

/// Breadth-first product closure of the group generated by unitary matrices,
/// with duplicate detection by matrix distance.
pub fn group_closure(
    generator_unitaries: &[CMatrix],
    tol: Option<f64>,
    max_order: usize,
) -> Result<FiniteGroupRep> {
    if generator_unitaries.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    let dim = ensure_square(&generator_unitaries[0])?;
    let tol = tol.unwrap_or_else(|| Tolerances::group_tol(dim));
    for (k, g) in generator_unitaries.iter().enumerate() {
        if ensure_square(g)? != dim {
            return Err(Error::Dimension(format!(
                "generator {k} has a different dimension"
            )));
        }
        ensure_finite(g)?;
        if !is_unitary(g, TOL_UNITARY) {
            return Err(Error::NonUnitary {
                residual: crate::linalg::unitarity_residual(g),
            });
        }
    }

    let mut elements = vec![eye(dim)];
    for g in generator_unitaries {
        if find_element(&elements, g, tol).is_none() {
            if elements.len() >= max_order {
                return Err(Error::BudgetExceeded(format!(
                    "group closure exceeded max_order = {max_order}"
                )));
            }
            elements.push(g.clone());
        }
    }
    let mut frontier_start = 0;
    while frontier_start < elements.len() {
        let frontier_end = elements.len();
        for i in frontier_start..frontier_end {
            for j in 0..=i {
                for prod in [elements[i].dot(&elements[j]), elements[j].dot(&elements[i])] {
                    if find_element(&elements, &prod, tol).is_none() {
                        if elements.len() >= max_order {
                            return Err(Error::BudgetExceeded(format!(
                                "group closure exceeded max_order = {max_order}"
                            )));
                        }
                        elements.push(prod);
                    }
                }
            }
        }
        frontier_start = frontier_end;
    }

    let order = elements.len();
    let mut mult_table = vec![vec![0usize; order]; order];
    for i in 0..order {
        for j in 0..order {
            let prod = elements[i].dot(&elements[j]);
            mult_table[i][j] = find_element(&elements, &prod, tol).ok_or_else(|| {
                Error::Numerical(format!(
                    "product of group elements {i}, {j} matches no element; tolerance too tight"
                ))
            })?;
        }
    }
    let rep = FiniteGroupRep {
        elements,
        mult_table,
        order,
        dim,
    };
    for i in 0..order {
        if !rep.mult_table[i].contains(&0) {
            return Err(Error::Numerical(format!(
                "element {i} has no inverse in the closure"
            )));
        }
    }
    Ok(rep)
}

/// Seeded Hermitian element of the represented group algebra:
/// `H = Σ_g c_g U_g` with `c_{g⁻¹} = conj(c_g)`.
pub fn hermitian_group_sample(group: &FiniteGroupRep, seed: u64) -> CMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    hermitian_group_sample_with(group, &mut rng)
}

pub(crate) fn hermitian_group_sample_with(group: &FiniteGroupRep, rng: &mut ChaCha8Rng) -> CMatrix {
    let n = group.dim;
    let mut h = CMatrix::zeros((n, n));
    let mut used = vec![false; group.order];
    for i in 0..group.order {
        if used[i] {
            continue;
        }
        let inv = group.inverse_of(i);
        if inv == i {
            // involutions (and the identity) take real coefficients
            let c: f64 = rng.sample(rand_distr::StandardNormal);
            h = h + group.elements[i].mapv(|z| z * c);
            used[i] = true;
        } else {
            let re: f64 = rng.sample(rand_distr::StandardNormal);
            let im: f64 = rng.sample(rand_distr::StandardNormal);
            let c = C64::new(re, im) / 2f64.sqrt();
            h = h + group.elements[i].mapv(|z| z * c) + group.elements[inv].mapv(|z| z * c.conj());
            used[i] = true;
            used[inv] = true;
        }
    }
    h
}

fn derive_seed(seed: u64, k: u64) -> u64 {
    seed ^ 0x9E37_79B9_7F4A_7C15u64.wrapping_mul(k.wrapping_add(1))
}

/// Generic group-algebra universality pipeline: draw seeded Hermitian
/// samples from the represented group algebra and analyze them. If any
/// component with d ≥ 2 comes back non-universal (a non-generic draw),
/// resample once with a fresh seed and report that run.
pub fn group_algebra_analyze(
    group: &FiniteGroupRep,
    seed: u64,
    samples: u32,
    tols: &Tolerances,
) -> Result<UniversalityReport> {
    if samples < 2 {
        return Err(Error::Shape(format!("samples must be ≥ 2, got {samples}")));
    }
    let run = |base: u64| -> Result<UniversalityReport> {
        let gens: Vec<CMatrix> = (0..samples as u64)
            .map(|k| hermitian_group_sample(group, derive_seed(base, k)))
            .collect();
        analyze(&gens, base, tols)
    };
    let mut report = run(seed)?;
    let generic = |r: &UniversalityReport| r.verdicts.iter().all(|v| v.dim < 2 || v.universal);
    if !generic(&report) {
        report = run(derive_seed(seed, 0xFFFF))?;
    }
    report.group_order = Some(group.order);
    report.samples = Some(samples);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{dagger, is_hermitian};
    use crate::models::{dihedral_rep, sigma_x, swap_generators};

    #[test]
    fn dihedral_closure_has_order_six() {
        let (r, p) = dihedral_rep();
        let rep = group_closure(&[r, p], None, 64).unwrap();
        assert_eq!(rep.order, 6);
        assert_eq!(rep.dim, 3);
        // identity first
        assert!(fnorm(&(rep.elements[0].clone() - eye(3))) < 1e-12);
    }

    #[test]
    fn mult_table_is_a_latin_square() {
        let (r, p) = dihedral_rep();
        let rep = group_closure(&[r, p], None, 64).unwrap();
        for i in 0..rep.order {
            let mut row: Vec<usize> = rep.mult_table[i].clone();
            let mut col: Vec<usize> = (0..rep.order).map(|j| rep.mult_table[j][i]).collect();
            row.sort_unstable();
            col.sort_unstable();
            let want: Vec<usize> = (0..rep.order).collect();
            assert_eq!(row, want);
            assert_eq!(col, want);
        }
        // identity row and column are identity permutations
        assert_eq!(rep.mult_table[0], (0..rep.order).collect::<Vec<_>>());
        for j in 0..rep.order {
            assert_eq!(rep.mult_table[j][0], j);
        }
    }

    #[test]
    fn trivial_group_closure() {
        let rep = group_closure(&[eye(2)], None, 8).unwrap();
        assert_eq!(rep.order, 1);
    }

    #[test]
    fn swap_transpositions_close_to_s3_image() {
        let gens = swap_generators(3).unwrap();
        let rep = group_closure(&gens, None, 64).unwrap();
        assert_eq!(rep.order, 6);
    }

    #[test]
    fn closure_rejects_non_unitary() {
        let bad = sigma_x().mapv(|z| 2.0 * z);
        assert!(matches!(
            group_closure(&[bad], None, 8),
            Err(Error::NonUnitary { .. })
        ));
    }

    #[test]
    fn closure_budget() {
        let (r, p) = dihedral_rep();
        assert!(matches!(
            group_closure(&[r, p], None, 3),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn group_samples_are_hermitian() {
        let (r, p) = dihedral_rep();
        let rep = group_closure(&[r, p], None, 64).unwrap();
        for seed in 0..5 {
            let h = hermitian_group_sample(&rep, seed);
            assert!(is_hermitian(&h, 1e-12));
        }
        let trivial = group_closure(&[eye(3)], None, 4).unwrap();
        let h = hermitian_group_sample(&trivial, 3);
        // real multiple of the identity
        let c = h[[0, 0]];
        assert!(c.im.abs() < 1e-14);
        assert!(fnorm(&(h - eye(3).mapv(|z| z * c))) < 1e-14);
    }

    #[test]
    fn sample_lies_in_the_group_span() {
        let (r, p) = dihedral_rep();
        let rep = group_closure(&[r.clone(), p.clone()], None, 64).unwrap();
        let h = hermitian_group_sample(&rep, 11);
        // project onto the span of the six permutation matrices
        let mut basis: Vec<CMatrix> = Vec::new();
        for e in &rep.elements {
            if let Some(b) = crate::linalg::orthonormal_extend_complex(&basis, e, 1e-9).unwrap() {
                basis.push(b);
            }
        }
        let mut resid = h.clone();
        for b in &basis {
            let c = crate::linalg::frobenius_inner(b, &resid).unwrap();
            resid = &resid - &b.mapv(|z| z * c);
        }
        assert!(fnorm(&resid) < 1e-10);
        let _ = dagger(&r);
    }

    #[test]
    fn generic_samples_on_dihedral() {
        let (r, p) = dihedral_rep();
        let rep = group_closure(&[r, p], None, 64).unwrap();
        let report = group_algebra_analyze(&rep, 0, 2, &Tolerances::default()).unwrap();
        assert_eq!(report.group_order, Some(6));
        assert_eq!(report.closure_dim, 5);
        assert_eq!(report.decomposition.shape(), vec![(1, 1), (2, 1)]);
        let top = report.verdicts.iter().find(|v| v.dim == 2).unwrap();
        assert!(top.universal);
    }

    #[test]
    fn generic_samples_on_exchange_image() {
        let gens = swap_generators(3).unwrap();
        let rep = group_closure(&gens, None, 64).unwrap();
        let report = group_algebra_analyze(&rep, 1, 2, &Tolerances::default()).unwrap();
        assert_eq!(report.closure_dim, 5);
        assert_eq!(report.decomposition.shape(), vec![(1, 4), (2, 2)]);
        let two = report.verdicts.iter().find(|v| v.dim == 2).unwrap();
        assert!(two.universal);
        let one = report.verdicts.iter().find(|v| v.dim == 1).unwrap();
        assert!(one.trivial_code && !one.universal);
    }

    #[test]
    fn generic_closure_fills_the_represented_algebra() {
        // The closure of generic Hermitian samples is the full anti-Hermitian
        // part of the represented group algebra, whose real dimension equals
        // the complex dimension of the algebra's span.
        let (r, p) = dihedral_rep();
        for (rep, expected_span) in [
            (group_closure(&[r, p], None, 64).unwrap(), 5usize),
            (
                group_closure(&swap_generators(3).unwrap(), None, 64).unwrap(),
                5,
            ),
        ] {
            let span = crate::lie::associative_closure(&rep.elements, 1e-9).unwrap();
            assert_eq!(span.dim(), expected_span);
            let report = group_algebra_analyze(&rep, 2, 2, &Tolerances::default()).unwrap();
            assert_eq!(report.closure_dim, span.dim());
        }
    }

    #[test]
    fn generic_samples_on_trivial_group_have_no_universal_codes() {
        let rep = group_closure(&[eye(2)], None, 4).unwrap();
        let report = group_algebra_analyze(&rep, 0, 2, &Tolerances::default()).unwrap();
        assert!(report.verdicts.iter().all(|v| !v.universal));
    }

    #[test]
    fn group_analyze_rejects_single_sample() {
        let rep = group_closure(&[eye(2)], None, 4).unwrap();
        assert!(matches!(
            group_algebra_analyze(&rep, 0, 1, &Tolerances::default()),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn group_analyze_verdicts_seed_independent() {
        let (r, p) = dihedral_rep();
        let rep = group_closure(&[r, p], None, 64).unwrap();
        for seed in 0..5 {
            let report = group_algebra_analyze(&rep, seed, 2, &Tolerances::default()).unwrap();
            let top = report.verdicts.iter().find(|v| v.dim == 2).unwrap();
            assert!(top.universal, "seed {seed}");
        }
    }
}
