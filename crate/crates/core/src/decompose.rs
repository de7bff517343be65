//! Decomposition of the state space into irreducible invariant subspaces and
//! isotypic components, driven by the commutant of the generator set.
//!
//! The commutant is computed as the kernel of the positive semidefinite map
//! `X ↦ Σ_k [H_k, [H_k†, X]]`; a generic Hermitian commutant element is then
//! drawn and its eigenspaces are the candidate irreducible subspaces. Two
//! independent draws must agree on the block structure before the result is
//! accepted.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lie::{associative_closure, AssociativeAlgebraBasis};
use crate::linalg::{dagger, ensure_square, eye, fnorm, hermitian_eig, kron, CMatrix, C64};
use crate::tolerances::{Tolerances, ABS_FLOOR};

/// Isometry onto an irreducible invariant subspace.
#[derive(Debug, Clone)]
pub struct InvariantSubspace {
    /// n×d orthonormal column frame spanning the subspace.
    pub frame: CMatrix,
    /// Subspace dimension d.
    pub dim: usize,
    /// Isotypic label J, assigned by [`isotypic_grouping`].
    pub isotypic_label: Option<usize>,
    /// Largest relative invariance residual over the generators.
    pub invariance_residual: f64,
}

impl InvariantSubspace {
    pub fn projector(&self) -> CMatrix {
        self.frame.dot(&dagger(&self.frame))
    }
}

/// All subspaces carrying one equivalence class of irreducibles.
#[derive(Debug, Clone)]
pub struct IsotypicComponent {
    pub label: usize,
    /// Irreducible dimension d_J.
    pub dim: usize,
    /// Multiplicity n_J.
    pub multiplicity: usize,
    pub members: Vec<InvariantSubspace>,
}

/// Complete decomposition of the space into isotypic components.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub components: Vec<IsotypicComponent>,
    pub total_dim: usize,
}

impl Decomposition {
    /// Multiset of (d_J, n_J) pairs, sorted for comparisons.
    pub fn shape(&self) -> Vec<(usize, usize)> {
        let mut s: Vec<(usize, usize)> = self
            .components
            .iter()
            .map(|c| (c.dim, c.multiplicity))
            .collect();
        s.sort();
        s
    }
}

fn validated_same_dim(generators: &[CMatrix]) -> Result<usize> {
    if generators.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    let n = ensure_square(&generators[0])?;
    for g in generators {
        if ensure_square(g)? != n {
            return Err(Error::Dimension("generators have mixed dimensions".into()));
        }
    }
    Ok(n)
}

/// Row-major vectorization index helpers: matrices on ℂⁿ become vectors of
/// length n², and `X ↦ HX − XH` becomes `H⊗I − I⊗Hᵀ`.
fn adjoint_action_matrix(h: &CMatrix) -> CMatrix {
    let n = h.nrows();
    kron(h, &eye(n)) - kron(&eye(n), &h.t().to_owned())
}

fn unvec(v: ndarray::ArrayView1<C64>, n: usize) -> CMatrix {
    CMatrix::from_shape_fn((n, n), |(i, j)| v[i * n + j])
}

/// Orthonormal Hermitian basis of `{X : [H_k, X] = 0 for all k}`.
///
/// The kernel of `Σ_k ad_{H_k}† ad_{H_k}` is extracted from a Hermitian
/// eigendecomposition of its n²×n² matrix; kernel vectors are split into
/// Hermitian and anti-Hermitian-over-i parts and re-orthonormalized, which
/// yields exactly one Hermitian basis element per complex kernel dimension.
pub fn commutant(generators: &[CMatrix], tol: f64) -> Result<Vec<CMatrix>> {
    let n = validated_same_dim(generators)?;
    let nn = n * n;
    let mut map = CMatrix::zeros((nn, nn));
    for h in generators {
        let a = adjoint_action_matrix(h);
        map = map + dagger(&a).dot(&a);
    }
    let map = (&map + &dagger(&map)).mapv(|z| 0.5 * z);
    let (w, v) = hermitian_eig(&map)?;
    let top = w.last().copied().unwrap_or(0.0).max(0.0);
    let cutoff = (tol * top).max(ABS_FLOOR);
    let kernel_dim = w.iter().filter(|&&x| x <= cutoff).count();

    let mut basis: Vec<CMatrix> = Vec::with_capacity(kernel_dim);
    for idx in 0..kernel_dim {
        let x = unvec(v.column(idx), n);
        let herm = (&x + &dagger(&x)).mapv(|z| 0.5 * z);
        let anti = (&x - &dagger(&x)).mapv(|z| z * C64::new(0.0, -0.5));
        for cand in [herm, anti] {
            if let Some(e) = crate::linalg::orthonormal_extend(&basis, &cand, tol)? {
                basis.push(e);
            }
        }
    }
    if basis.len() != kernel_dim {
        return Err(Error::Numerical(format!(
            "commutant Hermitianization produced {} basis elements for a kernel of dimension {}",
            basis.len(),
            kernel_dim
        )));
    }
    Ok(basis)
}

fn random_hermitian_combo(basis: &[CMatrix], n: usize, rng: &mut ChaCha8Rng) -> CMatrix {
    let mut c = CMatrix::zeros((n, n));
    for b in basis {
        let coeff: f64 = rng.sample(rand_distr::StandardNormal);
        c.zip_mut_with(b, |x, &y| *x += y * coeff);
    }
    c
}

/// Eigenvalue clustering: sorted eigenvalues are cut wherever the gap exceeds
/// `max(cluster_gap, 1e-6 · spread)`.
fn cluster_frames(c: &CMatrix, tols: &Tolerances) -> Result<Vec<CMatrix>> {
    let (w, v) = hermitian_eig(c)?;
    let n = w.len();
    let spread = w[n - 1] - w[0];
    let gap = tols.cluster_gap.max(1e-6 * spread);
    let mut frames = Vec::new();
    let mut start = 0;
    for i in 1..=n {
        if i == n || w[i] - w[i - 1] > gap {
            frames.push(v.slice(ndarray::s![.., start..i]).to_owned());
            start = i;
        }
    }
    Ok(frames)
}

fn restricted_ops(generators: &[CMatrix], frame: &CMatrix) -> Vec<CMatrix> {
    let fd = dagger(frame);
    generators.iter().map(|g| fd.dot(g).dot(frame)).collect()
}

fn invariance_residual(generators: &[CMatrix], frame: &CMatrix) -> f64 {
    let n = frame.nrows();
    let proj_out = eye(n) - frame.dot(&dagger(frame));
    let mut worst: f64 = 0.0;
    for g in generators {
        let r = fnorm(&proj_out.dot(g).dot(frame)) / fnorm(g).max(1.0);
        worst = worst.max(r);
    }
    worst
}

fn is_irreducible(generators: &[CMatrix], frame: &CMatrix, tol: f64) -> Result<bool> {
    let d = frame.ncols();
    let alg = associative_closure(&restricted_ops(generators, frame), tol)?;
    Ok(alg.dim() == d * d)
}

const RETRY_LIMIT: usize = 5;

/// Splits the space into irreducible invariant subspaces via the eigenspaces
/// of a generic Hermitian commutant element.
///
/// Two independent draws must produce the same multiset of block dimensions
/// and every block must pass the invariance and irreducibility checks;
/// otherwise the draw is deemed non-generic and resampled, up to a retry
/// limit.
pub fn invariant_irreducible_subspaces(
    generators: &[CMatrix],
    commutant_basis: &[CMatrix],
    seed: u64,
    tols: &Tolerances,
) -> Result<Vec<InvariantSubspace>> {
    let n = validated_same_dim(generators)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last_detail = String::new();
    for _attempt in 0..RETRY_LIMIT {
        let first = random_hermitian_combo(commutant_basis, n, &mut rng);
        let second = random_hermitian_combo(commutant_basis, n, &mut rng);
        let frames = cluster_frames(&first, tols)?;
        let frames_check = cluster_frames(&second, tols)?;
        let mut dims: Vec<usize> = frames.iter().map(|f| f.ncols()).collect();
        let mut dims_check: Vec<usize> = frames_check.iter().map(|f| f.ncols()).collect();
        dims.sort_unstable();
        dims_check.sort_unstable();
        if dims != dims_check {
            last_detail = format!("independent draws split into blocks {dims:?} vs {dims_check:?}");
            continue;
        }

        let mut subspaces = Vec::with_capacity(frames.len());
        let mut reducible = None;
        for frame in frames {
            let residual = invariance_residual(generators, &frame);
            if residual > tols.invariance {
                return Err(Error::InvarianceViolation {
                    residual,
                    tol: tols.invariance,
                });
            }
            if !is_irreducible(generators, &frame, tols.rank)? {
                reducible = Some(frame.ncols());
                break;
            }
            subspaces.push(InvariantSubspace {
                dim: frame.ncols(),
                frame,
                isotypic_label: None,
                invariance_residual: residual,
            });
        }
        match reducible {
            Some(d) => {
                last_detail =
                    format!("a {d}-dimensional eigen-cluster failed the d² irreducibility check");
                continue;
            }
            None => return Ok(subspaces),
        }
    }
    Err(Error::Genericity {
        retries: RETRY_LIMIT,
        detail: last_detail,
    })
}

/// Schur test: two irreducible invariant subspaces carry equivalent actions
/// iff the intertwiner space `{T : T A_k = B_k T}` of the restricted
/// generators is exactly one-dimensional.
pub fn are_equivalent(
    a: &InvariantSubspace,
    b: &InvariantSubspace,
    generators: &[CMatrix],
    tol: f64,
) -> Result<bool> {
    for (name, s) in [("first", a), ("second", b)] {
        if !is_irreducible(generators, &s.frame, tol)? {
            return Err(Error::NotIrreducible(format!(
                "{name} subspace (dim {}) fails the d² associative-dimension check",
                s.dim
            )));
        }
    }
    if a.dim != b.dim {
        return Ok(false);
    }
    let ra = restricted_ops(generators, &a.frame);
    let rb = restricted_ops(generators, &b.frame);
    let (da, db) = (a.dim, b.dim);
    let mut map = CMatrix::zeros((da * db, da * db));
    for (ak, bk) in ra.iter().zip(rb.iter()) {
        // T is d_B×d_A; row-major vec of B T − T A is (B⊗I) − (I⊗Aᵀ).
        let m = kron(bk, &eye(da)) - kron(&eye(db), &ak.t().to_owned());
        map = map + dagger(&m).dot(&m);
    }
    let map = (&map + &dagger(&map)).mapv(|z| 0.5 * z);
    let (w, _) = hermitian_eig(&map)?;
    let top = w.last().copied().unwrap_or(0.0).max(0.0);
    let cutoff = (tol * top).max(ABS_FLOOR);
    let kernel = w.iter().filter(|&&x| x <= cutoff).count();
    if kernel > 1 {
        return Err(Error::Numerical(format!(
            "intertwiner space between irreducible subspaces has dimension {kernel}"
        )));
    }
    Ok(kernel == 1)
}

/// Partition invariant subspaces into equivalence classes and label them
/// J = 0, 1, ... by decreasing irreducible dimension (ties in discovery
/// order).
pub fn isotypic_grouping(
    subspaces: Vec<InvariantSubspace>,
    generators: &[CMatrix],
    tols: &Tolerances,
) -> Result<Decomposition> {
    let n = validated_same_dim(generators)?;
    let total: usize = subspaces.iter().map(|s| s.dim).sum();
    if total != n {
        return Err(Error::IncompleteDecomposition(format!(
            "subspace dimensions sum to {total}, expected {n}"
        )));
    }
    // Concatenated frames must assemble into an n×n unitary.
    let mut joint = CMatrix::zeros((n, n));
    let mut col = 0;
    for s in &subspaces {
        for c in 0..s.dim {
            for r in 0..n {
                joint[[r, col]] = s.frame[[r, c]];
            }
            col += 1;
        }
    }
    let resid = fnorm(&(dagger(&joint).dot(&joint) - eye(n)));
    if resid > 1e-9 * (n as f64).sqrt().max(1.0) {
        return Err(Error::IncompleteDecomposition(format!(
            "joint frame unitarity residual {resid:.3e}"
        )));
    }

    let mut classes: Vec<Vec<InvariantSubspace>> = Vec::new();
    'outer: for sub in subspaces {
        for class in classes.iter_mut() {
            if are_equivalent(&class[0], &sub, generators, tols.rank)? {
                class.push(sub);
                continue 'outer;
            }
        }
        classes.push(vec![sub]);
    }
    // Decreasing d_J; stable sort keeps discovery order among ties.
    classes.sort_by_key(|c| std::cmp::Reverse(c[0].dim));
    let components = classes
        .into_iter()
        .enumerate()
        .map(|(label, mut members)| {
            for m in members.iter_mut() {
                m.isotypic_label = Some(label);
            }
            IsotypicComponent {
                label,
                dim: members[0].dim,
                multiplicity: members.len(),
                members,
            }
        })
        .collect();
    Ok(Decomposition {
        components,
        total_dim: n,
    })
}

/// Structure-theorem bookkeeping comparing measured algebra dimensions with
/// the sums implied by a decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WedderburnDiagnostics {
    pub alg_dim: usize,
    pub sum_d_sq: usize,
    pub comm_dim: usize,
    pub sum_n_sq: usize,
    pub sum_nd: usize,
    pub total_dim: usize,
    pub algebra_ok: bool,
    pub commutant_ok: bool,
    pub completeness_ok: bool,
}

impl WedderburnDiagnostics {
    pub fn pass(&self) -> bool {
        self.algebra_ok && self.commutant_ok && self.completeness_ok
    }
}

/// Checks `dim(algebra) = Σ d_J²`, `dim(commutant) = Σ n_J²` and
/// `Σ n_J d_J = n` for a decomposition derived from the same generators.
pub fn wedderburn_check(
    dec: &Decomposition,
    alg: &AssociativeAlgebraBasis,
    commutant_basis: &[CMatrix],
) -> WedderburnDiagnostics {
    let sum_d_sq: usize = dec.components.iter().map(|c| c.dim * c.dim).sum();
    let sum_n_sq: usize = dec
        .components
        .iter()
        .map(|c| c.multiplicity * c.multiplicity)
        .sum();
    let sum_nd: usize = dec.components.iter().map(|c| c.multiplicity * c.dim).sum();
    WedderburnDiagnostics {
        alg_dim: alg.dim(),
        sum_d_sq,
        comm_dim: commutant_basis.len(),
        sum_n_sq,
        sum_nd,
        total_dim: dec.total_dim,
        algebra_ok: alg.dim() == sum_d_sq,
        commutant_ok: commutant_basis.len() == sum_n_sq,
        completeness_ok: sum_nd == dec.total_dim,
    }
}
