//! Generation of the dynamical Lie algebra by iterated-commutator closure,
//! plus the associative (product) closure and span-dimension utilities.

use crate::error::{Error, Result};
use crate::linalg::{
    commutator, dagger, ensure_finite, ensure_square, eye, fnorm, frobenius_inner, hermitian_eig,
    is_hermitian, orthonormal_extend, orthonormal_extend_complex, CMatrix, C64, I,
};
use crate::tolerances::{ABS_FLOOR, TOL_HERMITIAN};

/// Orthonormal basis (real span, inner product `Re tr(A†B)`) of the Lie
/// algebra generated by `i·H_k` for the input Hamiltonians `H_k`.
#[derive(Debug, Clone)]
pub struct LieAlgebraBasis {
    pub dim_space: usize,
    pub elements: Vec<CMatrix>,
    pub closed: bool,
}

impl LieAlgebraBasis {
    /// Number of basis elements, i.e. the real dimension of the algebra.
    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    /// Residual norm of `x` after projection onto the real span of the basis.
    pub fn membership_residual(&self, x: &CMatrix) -> Result<f64> {
        let mut v = x.clone();
        for _ in 0..2 {
            for b in &self.elements {
                let c = frobenius_inner(b, &v)?.re;
                v.zip_mut_with(b, |x, &y| *x -= y * c);
            }
        }
        Ok(fnorm(&v))
    }

    /// Seeded random element `Σ c_k B_k` with standard-normal coefficients.
    pub fn random_element<R: rand::Rng>(&self, rng: &mut R) -> CMatrix {
        let mut out = CMatrix::zeros((self.dim_space, self.dim_space));
        for b in &self.elements {
            let c: f64 = rng.sample(rand_distr::StandardNormal);
            out.zip_mut_with(b, |x, &y| *x += y * c);
        }
        out
    }
}

/// Orthonormal basis (complex span, inner product `tr(A†B)`) of the unital
/// associative algebra generated by the inputs.
#[derive(Debug, Clone)]
pub struct AssociativeAlgebraBasis {
    pub dim_space: usize,
    pub elements: Vec<CMatrix>,
    pub contains_identity: bool,
}

impl AssociativeAlgebraBasis {
    pub fn dim(&self) -> usize {
        self.elements.len()
    }
}

fn validated_generators(generators: &[CMatrix], hermitian: bool) -> Result<usize> {
    if generators.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    let n = ensure_square(&generators[0])?;
    for (k, g) in generators.iter().enumerate() {
        let m = ensure_square(g)?;
        if m != n {
            return Err(Error::Dimension(format!(
                "generator {k} has dimension {m}, expected {n}"
            )));
        }
        ensure_finite(g)?;
        if hermitian && !is_hermitian(g, TOL_HERMITIAN) {
            return Err(Error::Shape(format!("generator {k} is not Hermitian")));
        }
    }
    Ok(n)
}

/// Iterated-commutator closure of `{i·H_k}`.
///
/// Seeds with the normalized anti-Hermitian generators and then sweeps:
/// every element of the newest frontier is commutated against all earlier
/// elements, residuals are appended in discovery order, and the process
/// repeats until a full sweep adds nothing.
pub fn lie_closure(generators: &[CMatrix], tol: f64, max_dim: usize) -> Result<LieAlgebraBasis> {
    let n = validated_generators(generators, true)?;
    let mut basis: Vec<CMatrix> = Vec::new();
    for g in generators {
        let candidate = g.mapv(|z| I * z);
        if let Some(e) = orthonormal_extend(&basis, &candidate, tol)? {
            if basis.len() >= max_dim {
                return Err(Error::BudgetExceeded(format!(
                    "Lie closure reached max_dim = {max_dim} before closing"
                )));
            }
            basis.push(e);
        }
    }
    let mut frontier_start = 0;
    while frontier_start < basis.len() {
        let frontier_end = basis.len();
        for i in frontier_start..frontier_end {
            // Pair i against everything older; antisymmetry makes the other
            // orientation redundant.
            for j in 0..i {
                let c = commutator(&basis[i], &basis[j])?;
                if let Some(e) = orthonormal_extend(&basis, &c, tol)? {
                    if basis.len() >= max_dim {
                        return Err(Error::BudgetExceeded(format!(
                            "Lie closure reached max_dim = {max_dim} before closing"
                        )));
                    }
                    basis.push(e);
                }
            }
        }
        frontier_start = frontier_end;
    }
    Ok(LieAlgebraBasis {
        dim_space: n,
        elements: basis,
        closed: true,
    })
}

/// Product closure of the unital associative algebra generated by the inputs
/// (identity adjoined first), over the complex span.
pub fn associative_closure(generators: &[CMatrix], tol: f64) -> Result<AssociativeAlgebraBasis> {
    let n = validated_generators(generators, false)?;
    let mut basis: Vec<CMatrix> = Vec::new();
    let id = eye(n);
    if let Some(e) = orthonormal_extend_complex(&basis, &id, tol)? {
        basis.push(e);
    }
    for g in generators {
        if let Some(e) = orthonormal_extend_complex(&basis, g, tol)? {
            basis.push(e);
        }
    }
    let cap = n * n;
    let mut frontier_start = 0;
    while frontier_start < basis.len() {
        let frontier_end = basis.len();
        for i in frontier_start..frontier_end {
            for j in 0..=i {
                // Products in both orders; the algebra is not commutative.
                for prod in [basis[i].dot(&basis[j]), basis[j].dot(&basis[i])] {
                    if let Some(e) = orthonormal_extend_complex(&basis, &prod, tol)? {
                        if basis.len() >= cap {
                            return Err(Error::Numerical(format!(
                                "associative closure exceeded the n² = {cap} cap; tolerance too tight"
                            )));
                        }
                        basis.push(e);
                    }
                }
            }
        }
        frontier_start = frontier_end;
    }
    Ok(AssociativeAlgebraBasis {
        dim_space: n,
        elements: basis,
        contains_identity: true,
    })
}

/// Real-span dimension of `{A_k − (tr A_k / n)·I}`, computed by Gram-matrix
/// eigenvalue thresholding.
pub fn traceless_dim(elements: &[CMatrix], tol: f64) -> Result<usize> {
    if elements.is_empty() {
        return Ok(0);
    }
    let n = ensure_square(&elements[0])?;
    let mut traceless = Vec::with_capacity(elements.len());
    for (k, a) in elements.iter().enumerate() {
        let m = ensure_square(a)?;
        if m != n {
            return Err(Error::Dimension(format!(
                "element {k} has dimension {m}, expected {n}"
            )));
        }
        let tr = a.diag().sum() / (n as f64);
        traceless.push(a - &eye(n).mapv(|z| z * tr));
    }
    let k = traceless.len();
    let mut gram = CMatrix::zeros((k, k));
    for i in 0..k {
        for j in 0..k {
            let g = frobenius_inner(&traceless[i], &traceless[j])?.re;
            gram[[i, j]] = C64::new(g, 0.0);
        }
    }
    // Gram matrices of real spans are real symmetric; symmetrize roundoff.
    let gram = (&gram + &dagger(&gram)).mapv(|z| 0.5 * z);
    let (w, _) = hermitian_eig(&gram)?;
    let top = w.last().copied().unwrap_or(0.0).max(0.0);
    let cutoff = (tol * top).max(ABS_FLOOR);
    Ok(w.iter().filter(|&&x| x > cutoff).count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{is_anti_hermitian, kron};
    use crate::models::{example1_generators, sigma_x, sigma_y, sigma_z, swap_generators};
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn closure_of_two_paulis_is_su2() {
        let basis = lie_closure(&[sigma_x(), sigma_y()], 1e-9, 4).unwrap();
        assert_eq!(basis.dim(), 3);
        assert!(basis.closed);
    }

    #[test]
    fn closure_example1_is_three_dimensional() {
        let basis = lie_closure(&example1_generators(), 1e-9, 16).unwrap();
        assert_eq!(basis.dim(), 3);
    }

    #[test]
    fn closure_of_commuting_generators() {
        let gens = vec![kron(&sigma_z(), &eye(2)), kron(&eye(2), &sigma_z())];
        let basis = lie_closure(&gens, 1e-9, 16).unwrap();
        assert_eq!(basis.dim(), 2);
    }

    #[test]
    fn closure_of_three_qubit_swaps() {
        // The three transpositions are a non-generic subset of the permutation
        // algebra: their closure misses one trace direction, landing at 4
        // rather than the full anti-Hermitian dimension 5 of the image.
        let basis = lie_closure(&swap_generators(3).unwrap(), 1e-9, 64).unwrap();
        assert_eq!(basis.dim(), 4);
    }

    #[test]
    fn closure_elements_are_orthonormal_antihermitian() {
        let basis = lie_closure(&example1_generators(), 1e-9, 16).unwrap();
        for (i, a) in basis.elements.iter().enumerate() {
            assert!(is_anti_hermitian(a, 1e-10));
            for (j, b) in basis.elements.iter().enumerate() {
                let g = frobenius_inner(a, b).unwrap().re;
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((g - want).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn closure_membership_of_all_commutators() {
        let basis = lie_closure(&swap_generators(3).unwrap(), 1e-9, 64).unwrap();
        for a in &basis.elements {
            for b in &basis.elements {
                let c = commutator(a, b).unwrap();
                assert!(basis.membership_residual(&c).unwrap() < 1e-9);
            }
        }
    }

    #[test]
    fn closure_idempotence() {
        let basis = lie_closure(&example1_generators(), 1e-9, 16).unwrap();
        // Re-close on Hermitian representatives of the closed basis.
        let hermitian: Vec<CMatrix> = basis.elements.iter().map(|a| a.mapv(|z| -I * z)).collect();
        let again = lie_closure(&hermitian, 1e-9, 16).unwrap();
        assert_eq!(again.dim(), basis.dim());
    }

    #[test]
    fn closure_conjugation_covariance() {
        let gens = example1_generators();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let h = {
            let a = CMatrix::from_shape_fn((4, 4), |_| {
                C64::new(
                    rng.sample(rand_distr::StandardNormal),
                    rng.sample(rand_distr::StandardNormal),
                )
            });
            (&a + &dagger(&a)).mapv(|z| 0.5 * z)
        };
        let w = crate::linalg::matrix_exp(&h.mapv(|z| I * z)).unwrap();
        let conj: Vec<CMatrix> = gens.iter().map(|g| w.dot(g).dot(&dagger(&w))).collect();
        let d0 = lie_closure(&gens, 1e-9, 16).unwrap().dim();
        let d1 = lie_closure(&conj, 1e-9, 16).unwrap().dim();
        assert_eq!(d0, d1);
    }

    #[test]
    fn closure_budget_exceeded() {
        let err = lie_closure(&[sigma_x(), sigma_y()], 1e-9, 2).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded(_)));
    }

    #[test]
    fn closure_rejects_empty_input() {
        assert!(matches!(
            lie_closure(&[], 1e-9, 4),
            Err(Error::EmptyGenerators)
        ));
    }

    #[test]
    fn associative_closure_examples() {
        let alg = associative_closure(&[sigma_z()], 1e-9).unwrap();
        assert_eq!(alg.dim(), 2);
        assert!(alg.contains_identity);
        let alg = associative_closure(&[sigma_x(), sigma_z()], 1e-9).unwrap();
        assert_eq!(alg.dim(), 4);
        let alg = associative_closure(&example1_generators(), 1e-9).unwrap();
        assert_eq!(alg.dim(), 5);
    }

    #[test]
    fn associative_closure_of_swaps() {
        let alg = associative_closure(&swap_generators(3).unwrap(), 1e-9).unwrap();
        assert_eq!(alg.dim(), 5);
    }

    #[test]
    fn traceless_dim_rejects_mixed_dimensions() {
        let err = traceless_dim(&[eye(2), eye(3)], 1e-9).unwrap_err();
        assert!(matches!(err, Error::Dimension(_)));
    }

    #[test]
    fn traceless_dim_examples() {
        let i_only = vec![eye(2).mapv(|z| I * z)];
        assert_eq!(traceless_dim(&i_only, 1e-9).unwrap(), 0);
        let paulis = vec![
            sigma_x().mapv(|z| I * z),
            sigma_y().mapv(|z| I * z),
            sigma_z().mapv(|z| I * z),
        ];
        assert_eq!(traceless_dim(&paulis, 1e-9).unwrap(), 3);
        let mixed = vec![
            sigma_x().mapv(|z| I * z),
            sigma_x().mapv(|z| I * z) + eye(2).mapv(|z| I * z),
        ];
        assert_eq!(traceless_dim(&mixed, 1e-9).unwrap(), 1);
    }
}
