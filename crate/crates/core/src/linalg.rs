//! Dense complex linear algebra: inner products, commutators, a Hermitian
//! eigensolver, the matrix exponential, real- and complex-span
//! orthonormalization, and piecewise-constant time evolution.
//!
//! Everything is sized for desk-scale problems (dimensions up to a few
//! hundred); accuracy is preferred over speed throughout.

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tolerances::{ABS_FLOOR, TOL_HERMITIAN, TOL_UNITARY};

pub type C64 = Complex64;
/// Dense square complex matrix, the universal carrier for Hamiltonians,
/// unitaries and algebra elements.
pub type CMatrix = Array2<C64>;

pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// n×n identity.
pub fn eye(n: usize) -> CMatrix {
    CMatrix::eye(n)
}

/// Conjugate transpose.
pub fn dagger(a: &CMatrix) -> CMatrix {
    a.t().map(|z| z.conj())
}

/// Frobenius norm.
pub fn fnorm(a: &CMatrix) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Kronecker product.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    ndarray::linalg::kron(a, b)
}

pub fn ensure_square(a: &CMatrix) -> Result<usize> {
    let (r, c) = a.dim();
    if r != c || r == 0 {
        return Err(Error::Shape(format!(
            "expected a nonempty square matrix, got {r}x{c}"
        )));
    }
    Ok(r)
}

pub fn ensure_same_dim(a: &CMatrix, b: &CMatrix) -> Result<usize> {
    let n = ensure_square(a)?;
    let m = ensure_square(b)?;
    if n != m {
        return Err(Error::Dimension(format!(
            "operands have dimensions {n} and {m}"
        )));
    }
    Ok(n)
}

pub fn ensure_finite(a: &CMatrix) -> Result<()> {
    if a.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Shape("matrix has non-finite entries".into()));
    }
    Ok(())
}

/// Hilbert–Schmidt inner product `tr(A†B)`.
pub fn frobenius_inner(a: &CMatrix, b: &CMatrix) -> Result<C64> {
    ensure_same_dim(a, b)?;
    Ok(a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum())
}

/// `AB − BA`.
pub fn commutator(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    ensure_same_dim(a, b)?;
    Ok(a.dot(b) - b.dot(a))
}

/// `‖A − A†‖_F ≤ tol · max(1, ‖A‖_F)`.
pub fn is_hermitian(a: &CMatrix, tol: f64) -> bool {
    if a.nrows() != a.ncols() {
        return false;
    }
    fnorm(&(a - &dagger(a))) <= tol * fnorm(a).max(1.0)
}

/// `‖A + A†‖_F ≤ tol · max(1, ‖A‖_F)`.
pub fn is_anti_hermitian(a: &CMatrix, tol: f64) -> bool {
    if a.nrows() != a.ncols() {
        return false;
    }
    fnorm(&(a + &dagger(a))) <= tol * fnorm(a).max(1.0)
}

/// Unitarity residual `‖A†A − I‖_F`.
pub fn unitarity_residual(a: &CMatrix) -> f64 {
    let n = a.nrows();
    fnorm(&(dagger(a).dot(a) - eye(n)))
}

pub fn is_unitary(a: &CMatrix, tol: f64) -> bool {
    a.nrows() == a.ncols() && unitarity_residual(a) <= tol * fnorm(a).max(1.0)
}

const MAX_JACOBI_SWEEPS: usize = 60;

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations.
///
/// Returns eigenvalues in ascending order and the matching unitary of column
/// eigenvectors, so that `H V = V diag(w)`.
pub fn hermitian_eig(h: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    let n = ensure_square(h)?;
    if !is_hermitian(h, TOL_HERMITIAN) {
        return Err(Error::Shape(
            "hermitian_eig requires a Hermitian matrix".into(),
        ));
    }
    // Work on the exactly-Hermitian part so roundoff in the input cannot
    // leak into complex diagonal entries.
    let mut a = h.clone();
    for i in 0..n {
        a[[i, i]] = C64::new(a[[i, i]].re, 0.0);
        for j in 0..i {
            let m = 0.5 * (a[[i, j]] + a[[j, i]].conj());
            a[[i, j]] = m;
            a[[j, i]] = m.conj();
        }
    }
    let mut v = eye(n);
    let scale = fnorm(&a).max(1.0);
    let target = (1e-14 * scale).max(1e-300);

    let mut converged = false;
    for _sweep in 0..MAX_JACOBI_SWEEPS {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[[p, q]].norm_sqr();
            }
        }
        if (2.0 * off).sqrt() <= target {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[[p, q]];
                let abs = apq.norm();
                if abs <= target / (2.0 * n as f64) {
                    continue;
                }
                // Phase factor turning the pivot real: a_pq = |a_pq| e^{iφ}.
                let phase = apq / abs;
                let app = a[[p, p]].re;
                let aqq = a[[q, q]].re;
                let tau = (app - aqq) / (2.0 * abs);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    1.0 / (tau - (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let eiphi_conj = phase.conj();
                let eiphi = phase;
                // A <- J† A J with J the phased rotation in the (p,q) plane.
                for r in 0..n {
                    let mp = a[[r, p]];
                    let mq = a[[r, q]] * eiphi_conj;
                    a[[r, p]] = c * mp + s * mq;
                    a[[r, q]] = -s * mp + c * mq;
                }
                for r in 0..n {
                    let mp = a[[p, r]];
                    let mq = a[[q, r]] * eiphi;
                    a[[p, r]] = c * mp + s * mq;
                    a[[q, r]] = -s * mp + c * mq;
                }
                a[[p, q]] = C64::new(0.0, 0.0);
                a[[q, p]] = C64::new(0.0, 0.0);
                a[[p, p]] = C64::new(a[[p, p]].re, 0.0);
                a[[q, q]] = C64::new(a[[q, q]].re, 0.0);
                for r in 0..n {
                    let mp = v[[r, p]];
                    let mq = v[[r, q]] * eiphi_conj;
                    v[[r, p]] = c * mp + s * mq;
                    v[[r, q]] = -s * mp + c * mq;
                }
            }
        }
    }
    if !converged {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[[p, q]].norm_sqr();
            }
        }
        if (2.0 * off).sqrt() > target {
            return Err(Error::Numerical(format!(
                "Jacobi eigensolver did not converge in {MAX_JACOBI_SWEEPS} sweeps (n = {n})"
            )));
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[[i, i]].re.partial_cmp(&a[[j, j]].re).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| a[[i, i]].re).collect();
    let mut vectors = CMatrix::zeros((n, n));
    for (col, &i) in order.iter().enumerate() {
        for r in 0..n {
            vectors[[r, col]] = v[[r, i]];
        }
    }
    Ok((values, vectors))
}

/// Matrix exponential by scaling-and-squaring around a truncated Taylor
/// series. Dimensions here are small, so plain series summation to machine
/// precision is accurate and fast.
pub fn matrix_exp(a: &CMatrix) -> Result<CMatrix> {
    let n = ensure_square(a)?;
    ensure_finite(a)?;
    let norm = fnorm(a);
    let squarings = if norm > 0.25 {
        (norm / 0.25).log2().ceil() as u32
    } else {
        0
    };
    let scaled = a.mapv(|z| z / (2f64.powi(squarings as i32)));
    let mut term = eye(n);
    let mut sum = eye(n);
    for k in 1..=80u32 {
        term = term.dot(&scaled).mapv(|z| z / (k as f64));
        sum += &term;
        if fnorm(&term) <= 1e-18 * fnorm(&sum) {
            break;
        }
    }
    let mut result = sum;
    for _ in 0..squarings {
        result = result.dot(&result);
    }
    Ok(result)
}

fn project_out<F>(basis: &[CMatrix], v: &mut CMatrix, inner: F)
where
    F: Fn(&CMatrix, &CMatrix) -> C64,
{
    // Classical Gram-Schmidt applied twice keeps the residual orthogonal to
    // working precision.
    for _ in 0..2 {
        for b in basis {
            let c = inner(b, v);
            if c.norm_sqr() == 0.0 {
                continue;
            }
            v.zip_mut_with(b, |x, &y| *x -= y * c);
        }
    }
}

fn extend_with<F>(
    basis: &[CMatrix],
    candidate: &CMatrix,
    tol: f64,
    inner: F,
) -> Result<Option<CMatrix>>
where
    F: Fn(&CMatrix, &CMatrix) -> C64,
{
    for b in basis {
        ensure_same_dim(b, candidate)?;
    }
    ensure_square(candidate)?;
    let scale = fnorm(candidate).max(1.0);
    let mut v = candidate.clone();
    project_out(basis, &mut v, &inner);
    let norm = fnorm(&v);
    if norm <= (tol * scale).max(ABS_FLOOR) {
        return Ok(None);
    }
    Ok(Some(v.mapv(|z| z / norm)))
}

/// Gram–Schmidt step over the *real* span with inner product `Re tr(A†B)`.
///
/// Returns the normalized residual of `candidate` after projection onto the
/// span of `basis`, or `None` when the residual is below `tol · max(1, ‖c‖)`.
pub fn orthonormal_extend(
    basis: &[CMatrix],
    candidate: &CMatrix,
    tol: f64,
) -> Result<Option<CMatrix>> {
    extend_with(basis, candidate, tol, |b, v| {
        let c: C64 = b.iter().zip(v.iter()).map(|(x, y)| x.conj() * y).sum();
        C64::new(c.re, 0.0)
    })
}

/// Gram–Schmidt step over the complex span with inner product `tr(A†B)`.
pub fn orthonormal_extend_complex(
    basis: &[CMatrix],
    candidate: &CMatrix,
    tol: f64,
) -> Result<Option<CMatrix>> {
    extend_with(basis, candidate, tol, |b, v| {
        b.iter().zip(v.iter()).map(|(x, y)| x.conj() * y).sum()
    })
}

/// A piecewise-constant control schedule: ordered `(H_k, t_k)` segments on a
/// fixed-dimension space.
#[derive(Debug, Clone)]
pub struct PiecewiseSchedule {
    dim: usize,
    segments: Vec<(CMatrix, f64)>,
}

impl PiecewiseSchedule {
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Shape("schedule dimension must be positive".into()));
        }
        Ok(PiecewiseSchedule {
            dim,
            segments: Vec::new(),
        })
    }

    pub fn push(&mut self, hamiltonian: CMatrix, duration: f64) -> Result<()> {
        let n = ensure_square(&hamiltonian)?;
        if n != self.dim {
            return Err(Error::Dimension(format!(
                "segment dimension {n} does not match schedule dimension {}",
                self.dim
            )));
        }
        ensure_finite(&hamiltonian)?;
        if !is_hermitian(&hamiltonian, TOL_HERMITIAN) {
            return Err(Error::Shape("schedule segments must be Hermitian".into()));
        }
        if !duration.is_finite() || duration < 0.0 {
            return Err(Error::Shape(format!(
                "segment duration must be ≥ 0, got {duration}"
            )));
        }
        self.segments.push((hamiltonian, duration));
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn segments(&self) -> &[(CMatrix, f64)] {
        &self.segments
    }
}

/// Evolution under a piecewise-constant schedule: the ordered product
/// `exp(−i H_k t_k) ··· exp(−i H_1 t_1)`.
pub fn evolve_piecewise(schedule: &PiecewiseSchedule) -> Result<CMatrix> {
    let mut u = eye(schedule.dim);
    for (h, t) in &schedule.segments {
        let gen = h.mapv(|z| -I * z * *t);
        u = matrix_exp(&gen)?.dot(&u);
    }
    debug_assert!(unitarity_residual(&u) <= TOL_UNITARY * (schedule.dim as f64));
    Ok(u)
}

/// The swap unitary on `ℂ^d ⊗ ℂ^d`.
pub fn swap_unitary(d: usize) -> CMatrix {
    let mut s = CMatrix::zeros((d * d, d * d));
    for i in 0..d {
        for j in 0..d {
            s[[j * d + i, i * d + j]] = ONE;
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{sigma_x, sigma_y, sigma_z};
    use proptest::prelude::*;
    use rand::{Rng as _, SeedableRng as _};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(n: usize, seed: u64) -> CMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        CMatrix::from_shape_fn((n, n), |_| {
            C64::new(
                rng.sample(rand_distr::StandardNormal),
                rng.sample(rand_distr::StandardNormal),
            )
        })
    }

    fn random_hermitian(n: usize, seed: u64) -> CMatrix {
        let a = random_matrix(n, seed);
        (&a + &dagger(&a)).mapv(|z| 0.5 * z)
    }

    #[test]
    fn frobenius_inner_examples() {
        let id = eye(2);
        assert!((frobenius_inner(&id, &id).unwrap() - C64::new(2.0, 0.0)).norm() < 1e-14);
        assert!(frobenius_inner(&sigma_x(), &sigma_y()).unwrap().norm() < 1e-14);
        assert!(
            (frobenius_inner(&sigma_x(), &sigma_x()).unwrap() - C64::new(2.0, 0.0)).norm() < 1e-14
        );
    }

    #[test]
    fn frobenius_inner_conjugate_symmetry() {
        let a = random_matrix(3, 1);
        let b = random_matrix(3, 2);
        let ab = frobenius_inner(&a, &b).unwrap();
        let ba = frobenius_inner(&b, &a).unwrap();
        assert!((ab - ba.conj()).norm() < 1e-12);
    }

    #[test]
    fn frobenius_inner_dimension_mismatch() {
        let a = eye(2);
        let b = eye(3);
        assert!(matches!(frobenius_inner(&a, &b), Err(Error::Dimension(_))));
    }

    #[test]
    fn commutator_pauli_algebra() {
        let lhs = commutator(&sigma_x(), &sigma_y()).unwrap();
        let rhs = sigma_z().mapv(|z| C64::new(0.0, 2.0) * z);
        assert!(fnorm(&(lhs - rhs)) < 1e-14);
    }

    #[test]
    fn commutator_with_self_vanishes() {
        let a = random_matrix(4, 3);
        assert!(fnorm(&commutator(&a, &a).unwrap()) < 1e-12);
    }

    #[test]
    fn commutator_disjoint_supports() {
        let zi = kron(&sigma_z(), &eye(2));
        let iz = kron(&eye(2), &sigma_z());
        assert!(fnorm(&commutator(&zi, &iz).unwrap()) < 1e-14);
    }

    #[test]
    fn commutator_antisymmetry() {
        let a = random_matrix(5, 4);
        let b = random_matrix(5, 5);
        let ab = commutator(&a, &b).unwrap();
        let ba = commutator(&b, &a).unwrap();
        assert!(fnorm(&(&ab + &ba)) <= 1e-14 * fnorm(&ab).max(1.0));
    }

    #[test]
    fn eig_sigma_z() {
        let (w, _) = hermitian_eig(&sigma_z()).unwrap();
        assert!((w[0] + 1.0).abs() < 1e-12 && (w[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn eig_identity_threefold() {
        let (w, v) = hermitian_eig(&eye(3)).unwrap();
        assert!(w.iter().all(|x| (x - 1.0).abs() < 1e-12));
        assert!(unitarity_residual(&v) < 1e-12);
    }

    #[test]
    fn eig_sigma_x_vectors() {
        let (w, v) = hermitian_eig(&sigma_x()).unwrap();
        assert!((w[0] + 1.0).abs() < 1e-12 && (w[1] - 1.0).abs() < 1e-12);
        // columns are (|0⟩ ∓ |1⟩)/√2 up to phase
        for (col, sign) in [(0usize, -1.0), (1usize, 1.0)] {
            let ratio = v[[1, col]] / v[[0, col]];
            assert!((ratio - C64::new(sign, 0.0)).norm() < 1e-10);
        }
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let a = random_matrix(3, 9);
        assert!(matches!(hermitian_eig(&a), Err(Error::Shape(_))));
    }

    #[test]
    fn eig_reconstructs_random_hermitian() {
        for seed in 0..5 {
            let n = 2 + (seed as usize % 7);
            let h = random_hermitian(n, 100 + seed);
            let (w, v) = hermitian_eig(&h).unwrap();
            let mut lambda = CMatrix::zeros((n, n));
            for (i, x) in w.iter().enumerate() {
                lambda[[i, i]] = C64::new(*x, 0.0);
            }
            let rebuilt = v.dot(&lambda).dot(&dagger(&v));
            assert!(fnorm(&(&rebuilt - &h)) <= 1e-10 * fnorm(&h).max(1.0));
            assert!(unitarity_residual(&v) < 1e-12);
        }
    }

    #[test]
    fn exp_zero_is_identity() {
        let z = CMatrix::zeros((3, 3));
        assert!(fnorm(&(matrix_exp(&z).unwrap() - eye(3))) < 1e-14);
    }

    #[test]
    fn exp_half_period_x_rotation() {
        let gen = sigma_x().mapv(|z| -I * std::f64::consts::FRAC_PI_2 * z);
        let got = matrix_exp(&gen).unwrap();
        let want = sigma_x().mapv(|z| -I * z);
        assert!(fnorm(&(got - want)) < 1e-12);
    }

    #[test]
    fn exp_diagonal_phases() {
        let theta = 0.7313;
        let gen = sigma_z().mapv(|z| I * theta * z);
        let got = matrix_exp(&gen).unwrap();
        assert!((got[[0, 0]] - C64::from_polar(1.0, theta)).norm() < 1e-13);
        assert!((got[[1, 1]] - C64::from_polar(1.0, -theta)).norm() < 1e-13);
        assert!(got[[0, 1]].norm() < 1e-14);
    }

    #[test]
    fn exp_inverse_property() {
        for seed in 0..4 {
            let n = 2 + seed as usize;
            let mut a = random_matrix(n, 200 + seed);
            let norm = fnorm(&a);
            if norm > 10.0 {
                a = a.mapv(|z| z * (10.0 / norm));
            }
            let pos = matrix_exp(&a).unwrap();
            let neg = matrix_exp(&a.mapv(|z| -z)).unwrap();
            assert!(fnorm(&(pos.dot(&neg) - eye(n))) <= 1e-10 * n as f64);
        }
    }

    #[test]
    fn orthonormal_extend_examples() {
        let inv_sqrt2 = 1.0 / 2f64.sqrt();
        let b0 = sigma_x().mapv(|z| I * inv_sqrt2 * z);
        let basis = vec![b0];
        let in_span = sigma_x().mapv(|z| I * z);
        assert!(orthonormal_extend(&basis, &in_span, 1e-9)
            .unwrap()
            .is_none());
        let orth = sigma_y().mapv(|z| I * z);
        let got = orthonormal_extend(&basis, &orth, 1e-9).unwrap().unwrap();
        let want = sigma_y().mapv(|z| I * inv_sqrt2 * z);
        assert!(fnorm(&(got - want)) < 1e-12);
        let zero = CMatrix::zeros((2, 2));
        assert!(orthonormal_extend(&[], &zero, 1e-9).unwrap().is_none());
    }

    #[test]
    fn real_span_distinguishes_i_multiples() {
        // iA and A are independent over the reals but not over ℂ.
        let a = sigma_x().mapv(|z| z / 2f64.sqrt());
        let ia = a.mapv(|z| I * z);
        let real_ext = orthonormal_extend(std::slice::from_ref(&a), &ia, 1e-9).unwrap();
        assert!(real_ext.is_some());
        let cx_ext = orthonormal_extend_complex(&[a], &ia, 1e-9).unwrap();
        assert!(cx_ext.is_none());
    }

    #[test]
    fn evolve_empty_schedule() {
        let sched = PiecewiseSchedule::new(3).unwrap();
        assert!(fnorm(&(evolve_piecewise(&sched).unwrap() - eye(3))) < 1e-14);
    }

    #[test]
    fn evolve_half_turn() {
        let mut sched = PiecewiseSchedule::new(2).unwrap();
        sched.push(sigma_z(), std::f64::consts::PI).unwrap();
        let u = evolve_piecewise(&sched).unwrap();
        assert!(fnorm(&(u + eye(2))) < 1e-12);
    }

    #[test]
    fn evolve_commuting_segments_add() {
        let (a, b) = (0.31, 1.27);
        let mut sched = PiecewiseSchedule::new(2).unwrap();
        sched.push(sigma_z(), a).unwrap();
        sched.push(sigma_z(), b).unwrap();
        let u = evolve_piecewise(&sched).unwrap();
        let direct = matrix_exp(&sigma_z().mapv(|z| -I * (a + b) * z)).unwrap();
        assert!(fnorm(&(u - direct)) < 1e-10);
    }

    #[test]
    fn evolve_rejects_mixed_dims() {
        let mut sched = PiecewiseSchedule::new(2).unwrap();
        assert!(matches!(sched.push(eye(3), 1.0), Err(Error::Dimension(_))));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn prop_exp_of_antihermitian_is_unitary(seed in 0u64..500) {
            let n = 2 + (seed % 5) as usize;
            let h = random_hermitian(n, seed);
            let u = matrix_exp(&h.mapv(|z| I * z)).unwrap();
            prop_assert!(unitarity_residual(&u) <= 1e-10 * n as f64);
        }

        #[test]
        fn prop_eig_residual(seed in 0u64..500) {
            let n = 2 + (seed % 6) as usize;
            let h = random_hermitian(n, seed.wrapping_add(7000));
            let (w, v) = hermitian_eig(&h).unwrap();
            let mut lambda = CMatrix::zeros((n, n));
            for (i, x) in w.iter().enumerate() {
                lambda[[i, i]] = C64::new(*x, 0.0);
            }
            let resid = fnorm(&(v.dot(&lambda).dot(&dagger(&v)) - &h));
            prop_assert!(resid <= 1e-10 * fnorm(&h).max(1.0));
            for i in 1..n {
                prop_assert!(w[i] >= w[i - 1]);
            }
        }

        #[test]
        fn prop_commuting_split_matches_sum(a in 0.0f64..3.0, b in 0.0f64..3.0) {
            let h1 = kron(&sigma_z(), &eye(2));
            let h2 = kron(&eye(2), &sigma_z());
            let mut sched = PiecewiseSchedule::new(4).unwrap();
            sched.push(h1.clone(), a).unwrap();
            sched.push(h2.clone(), b).unwrap();
            let u = evolve_piecewise(&sched).unwrap();
            let sum = (h1.mapv(|z| z * a) + h2.mapv(|z| z * b)).mapv(|z| -I * z);
            let direct = matrix_exp(&sum).unwrap();
            prop_assert!(fnorm(&(u - direct)) < 1e-10);
        }
    }
}
