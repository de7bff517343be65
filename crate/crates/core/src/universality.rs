//! Universality verdicts: restriction of the generated algebra to candidate
//! codes, the dimension criterion on each isotypic component, the end-to-end
//! analysis pipeline, and the operator-Schmidt entangling tests.

use sha2::{Digest, Sha256};

use crate::decompose::{
    commutant, invariant_irreducible_subspaces, isotypic_grouping, wedderburn_check, Decomposition,
    InvariantSubspace, WedderburnDiagnostics,
};
use crate::error::{Error, Result};
use crate::lie::{associative_closure, lie_closure, traceless_dim, LieAlgebraBasis};
use crate::linalg::{
    dagger, ensure_finite, ensure_square, eye, fnorm, hermitian_eig, is_hermitian, swap_unitary,
    unitarity_residual, CMatrix,
};
use crate::tolerances::{Tolerances, ABS_FLOOR, TOL_HERMITIAN, TOL_SCHMIDT, TOL_UNITARY};

/// Verdict for one isotypic component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeVerdict {
    pub label: usize,
    /// Irreducible code dimension d_J.
    pub dim: usize,
    /// Multiplicity n_J (parameter count of the code family).
    pub multiplicity: usize,
    /// Traceless real dimension of the closure restricted to the code.
    pub restricted_dim: usize,
    /// `(d² − 1) − restricted_dim`; zero means full special-unitary control.
    pub deficiency: usize,
    pub universal: bool,
    /// One-dimensional codes carry no controllable degrees of freedom.
    pub trivial_code: bool,
}

/// Everything the analysis pipeline produces for one generator set.
#[derive(Debug, Clone)]
pub struct UniversalityReport {
    pub input_digest: String,
    pub closure_dim: usize,
    pub decomposition: Decomposition,
    pub verdicts: Vec<CodeVerdict>,
    pub wedderburn: WedderburnDiagnostics,
    pub globally_universal: bool,
    pub seed: u64,
    pub tolerances: Tolerances,
    /// Present when the report came from the finite-group pipeline.
    pub group_order: Option<usize>,
    /// Samples drawn by the group pipeline, when applicable.
    pub samples: Option<u32>,
}

/// SHA-256 digest of a generator set, stable across runs.
pub fn input_digest(matrices: &[CMatrix]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(b"encuniv-problem-v1");
    hasher.update((matrices.len() as u64).to_le_bytes());
    for m in matrices {
        hasher.update((m.nrows() as u64).to_le_bytes());
        for z in m.iter() {
            hasher.update(z.re.to_bits().to_le_bytes());
            hasher.update(z.im.to_bits().to_le_bytes());
        }
    }
    hex::encode(hasher.finalize())
}

/// Compression of an operator onto a subspace frame: returns
/// `(frame† · op · frame, ‖(I − FF†) · op · F‖_F)`. The caller decides
/// whether the residual qualifies as invariant.
pub fn restrict(op: &CMatrix, frame: &CMatrix) -> Result<(CMatrix, f64)> {
    let n = ensure_square(op)?;
    if frame.nrows() != n {
        return Err(Error::Dimension(format!(
            "frame has {} rows, operator dimension is {n}",
            frame.nrows()
        )));
    }
    if frame.ncols() == 0 || frame.ncols() > n {
        return Err(Error::Shape(format!(
            "frame has invalid width {}",
            frame.ncols()
        )));
    }
    let fd = dagger(frame);
    let restricted = fd.dot(op).dot(frame);
    let proj_out = eye(n) - frame.dot(&fd);
    let residual = fnorm(&proj_out.dot(op).dot(frame));
    Ok((restricted, residual))
}

/// Dimension criterion on one invariant subspace: restrict every closure
/// element, count the traceless real span, and compare with d² − 1.
pub fn code_universality(
    closure: &LieAlgebraBasis,
    subspace: &InvariantSubspace,
    tols: &Tolerances,
) -> Result<CodeVerdict> {
    let d = subspace.dim;
    let mut restrictions = Vec::with_capacity(closure.elements.len());
    for l in &closure.elements {
        let (r, residual) = restrict(l, &subspace.frame)?;
        let rel = residual / fnorm(l).max(1.0);
        if rel > tols.invariance {
            return Err(Error::InvarianceViolation {
                residual: rel,
                tol: tols.invariance,
            });
        }
        restrictions.push(r);
    }
    let restricted_dim = traceless_dim(&restrictions, tols.rank)?;
    let target = d * d - 1;
    let deficiency = target - restricted_dim.min(target);
    Ok(CodeVerdict {
        label: subspace.isotypic_label.unwrap_or(0),
        dim: d,
        multiplicity: 1,
        restricted_dim,
        deficiency,
        universal: deficiency == 0 && d >= 2,
        trivial_code: d == 1,
    })
}

fn validate_hamiltonians(generators: &[CMatrix]) -> Result<usize> {
    if generators.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    let n = ensure_square(&generators[0])?;
    for (k, g) in generators.iter().enumerate() {
        if ensure_square(g)? != n {
            return Err(Error::Dimension(format!(
                "generator {k} has a different dimension"
            )));
        }
        ensure_finite(g)?;
        if !is_hermitian(g, TOL_HERMITIAN) {
            return Err(Error::Shape(format!("generator {k} is not Hermitian")));
        }
    }
    Ok(n)
}

/// End-to-end protocol: Lie closure, commutant, irreducible decomposition,
/// isotypic grouping, one dimension verdict per component, and the
/// structure-theorem consistency checks.
pub fn analyze(generators: &[CMatrix], seed: u64, tols: &Tolerances) -> Result<UniversalityReport> {
    let n = validate_hamiltonians(generators).map_err(|e| e.at_stage("validate"))?;
    let digest = input_digest(generators);
    let closure =
        lie_closure(generators, tols.rank, n * n).map_err(|e| e.at_stage("lie_closure"))?;
    let comm = commutant(generators, tols.rank).map_err(|e| e.at_stage("commutant"))?;
    let subspaces = invariant_irreducible_subspaces(generators, &comm, seed, tols)
        .map_err(|e| e.at_stage("decompose"))?;
    let decomposition =
        isotypic_grouping(subspaces, generators, tols).map_err(|e| e.at_stage("grouping"))?;
    let alg = associative_closure(generators, tols.rank)
        .map_err(|e| e.at_stage("associative_closure"))?;
    let wedderburn = wedderburn_check(&decomposition, &alg, &comm);

    let mut verdicts = Vec::with_capacity(decomposition.components.len());
    for comp in &decomposition.components {
        let mut verdict = code_universality(&closure, &comp.members[0], tols)
            .map_err(|e| e.at_stage("code_universality"))?;
        verdict.label = comp.label;
        verdict.multiplicity = comp.multiplicity;
        if comp.multiplicity >= 2 {
            // Schur equivalence makes member verdicts isomorphic; spot-check
            // the second member.
            let second = code_universality(&closure, &comp.members[1], tols)
                .map_err(|e| e.at_stage("code_universality"))?;
            if (second.restricted_dim, second.deficiency)
                != (verdict.restricted_dim, verdict.deficiency)
            {
                return Err(Error::Numerical(format!(
                    "equivalent members of component {} disagree: {} vs {}",
                    comp.label, verdict.restricted_dim, second.restricted_dim
                )));
            }
        }
        verdicts.push(verdict);
    }
    let globally_universal = n >= 2 && (closure.dim() == n * n || closure.dim() == n * n - 1);
    Ok(UniversalityReport {
        input_digest: digest,
        closure_dim: closure.dim(),
        decomposition,
        verdicts,
        wedderburn,
        globally_universal,
        seed,
        tolerances: *tols,
        group_order: None,
        samples: None,
    })
}

/// Operator Schmidt rank of `X` on `ℂ^{d₁} ⊗ ℂ^{d₂}`: the number of
/// significant singular values of the realigned matrix
/// `M[(i,i′),(j,j′)] = X[(i,j),(i′,j′)]`.
pub fn schmidt_rank(x: &CMatrix, dims: (usize, usize), tol: f64) -> Result<usize> {
    let (d1, d2) = dims;
    let n = ensure_square(x)?;
    if d1 == 0 || d2 == 0 || d1 * d2 != n {
        return Err(Error::Shape(format!(
            "dims ({d1}, {d2}) do not factor the matrix dimension {n}"
        )));
    }
    let mut m = CMatrix::zeros((d1 * d1, d2 * d2));
    for i in 0..d1 {
        for ip in 0..d1 {
            for j in 0..d2 {
                for jp in 0..d2 {
                    m[[i * d1 + ip, j * d2 + jp]] = x[[i * d2 + j, ip * d2 + jp]];
                }
            }
        }
    }
    // Singular values via the Gram matrix; the rank gaps here are O(1).
    let gram = dagger(&m).dot(&m);
    let (w, _) = hermitian_eig(&gram)?;
    let sigma: Vec<f64> = w.iter().rev().map(|&x| x.max(0.0).sqrt()).collect();
    let top = sigma[0];
    if top <= ABS_FLOOR {
        return Ok(0);
    }
    Ok(sigma.iter().filter(|&&s| s > tol * top).count())
}

/// A bipartite unitary fails to entangle exactly when it is a product of
/// local operators, or such a product composed with the swap.
pub fn is_entangling(x: &CMatrix, dims: (usize, usize), tol: f64) -> Result<bool> {
    let residual = unitarity_residual(x);
    if residual > TOL_UNITARY * fnorm(x).max(1.0) {
        return Err(Error::NonUnitary { residual });
    }
    if schmidt_rank(x, dims, tol)? == 1 {
        return Ok(false);
    }
    if dims.0 == dims.1 {
        let swapped = x.dot(&swap_unitary(dims.0));
        if schmidt_rank(&swapped, dims, tol)? == 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of the two-cluster coupling test.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingVerdict {
    /// X acts as the identity on every cluster outside the chosen pair.
    pub identity_elsewhere: bool,
    pub identity_residual: f64,
    /// The code product is invariant under the extracted two-cluster block.
    pub code_invariant: bool,
    pub invariance_residual: f64,
    /// The restriction to the code product is an entangling unitary.
    pub entangling: bool,
}

impl CouplingVerdict {
    pub fn pass(&self) -> bool {
        self.identity_elsewhere && self.code_invariant && self.entangling
    }
}

fn decompose_index(mut idx: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for k in (0..dims.len()).rev() {
        out[k] = idx % dims[k];
        idx /= dims[k];
    }
    out
}

/// Partial trace keeping clusters `i` and `j` (i < j), normalized by the
/// dimension of the traced factors.
fn extract_pair_block(x: &CMatrix, dims: &[usize], i: usize, j: usize) -> CMatrix {
    let (di, dj) = (dims[i], dims[j]);
    let rest: usize = dims
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != i && *k != j)
        .map(|(_, d)| d)
        .product();
    let total: usize = dims.iter().product();
    let mut block = CMatrix::zeros((di * dj, di * dj));
    for row in 0..total {
        let rt = decompose_index(row, dims);
        for col in 0..total {
            let ct = decompose_index(col, dims);
            let elsewhere_equal = (0..dims.len()).all(|k| k == i || k == j || rt[k] == ct[k]);
            if elsewhere_equal {
                block[[rt[i] * dj + rt[j], ct[i] * dj + ct[j]]] += x[[row, col]];
            }
        }
    }
    block.mapv(|z| z / rest as f64)
}

/// Rebuilds `block ⊗ I_rest` in the original factor ordering.
fn embed_pair_block(block: &CMatrix, dims: &[usize], i: usize, j: usize) -> CMatrix {
    let dj = dims[j];
    let total: usize = dims.iter().product();
    let mut out = CMatrix::zeros((total, total));
    for row in 0..total {
        let rt = decompose_index(row, dims);
        for col in 0..total {
            let ct = decompose_index(col, dims);
            let elsewhere_equal = (0..dims.len()).all(|k| k == i || k == j || rt[k] == ct[k]);
            if elsewhere_equal {
                out[[row, col]] = block[[rt[i] * dj + rt[j], ct[i] * dj + ct[j]]];
            }
        }
    }
    out
}

/// Checks the two conditions a cross-cluster coupling must satisfy to extend
/// local encoded universality: (i) it is the identity outside clusters
/// `(i, j)`; (ii) the code product for that pair is invariant and the
/// restriction is entangling. The local-universality premise of the codes is
/// the caller's responsibility.
pub fn cluster_coupling_check(
    x: &CMatrix,
    cluster_codes: &[CMatrix],
    cluster_assignment: (usize, usize),
    full_dims: &[usize],
    tol: f64,
) -> Result<CouplingVerdict> {
    let (i, j) = cluster_assignment;
    if full_dims.is_empty() || cluster_codes.len() != full_dims.len() {
        return Err(Error::Shape(
            "cluster_codes and full_dims must list every cluster".into(),
        ));
    }
    if i >= j || j >= full_dims.len() {
        return Err(Error::Shape(format!(
            "cluster assignment ({i}, {j}) must satisfy i < j < {}",
            full_dims.len()
        )));
    }
    let total: usize = full_dims.iter().product();
    if ensure_square(x)? != total {
        return Err(Error::Shape(format!(
            "operator dimension {} does not match the cluster product {total}",
            x.nrows()
        )));
    }
    for (k, code) in cluster_codes.iter().enumerate() {
        if code.nrows() != full_dims[k] {
            return Err(Error::Shape(format!(
                "code frame {k} has {} rows, cluster dimension is {}",
                code.nrows(),
                full_dims[k]
            )));
        }
    }

    let block = extract_pair_block(x, full_dims, i, j);
    let embedded = embed_pair_block(&block, full_dims, i, j);
    let identity_residual = fnorm(&(x - &embedded));
    let identity_elsewhere = identity_residual <= tol * fnorm(x).max(1.0);

    let code_pair = crate::linalg::kron(&cluster_codes[i], &cluster_codes[j]);
    let (restricted, inv_abs) = restrict(&block, &code_pair)?;
    let invariance_residual = inv_abs / fnorm(&block).max(1.0);
    let code_invariant = invariance_residual <= tol;

    let dims_pair = (cluster_codes[i].ncols(), cluster_codes[j].ncols());
    let entangling = if code_invariant
        && unitarity_residual(&restricted) <= TOL_UNITARY * fnorm(&restricted).max(1.0)
    {
        is_entangling(&restricted, dims_pair, TOL_SCHMIDT)?
    } else {
        false
    };

    Ok(CouplingVerdict {
        identity_elsewhere,
        identity_residual,
        code_invariant,
        invariance_residual,
        entangling,
    })
}
