//! Constructors for the bundled physical systems: Pauli strings, the
//! two-qubit XY model and its primed variant, exchange (swap) generators,
//! fixed-number bosonic hopping sectors, the triangle-symmetry permutation
//! representation, and the two-element parity group.

use crate::error::{Error, Result};
use crate::linalg::{eye, kron, CMatrix, C64, I, ONE};

pub fn sigma_x() -> CMatrix {
    let mut m = CMatrix::zeros((2, 2));
    m[[0, 1]] = ONE;
    m[[1, 0]] = ONE;
    m
}

pub fn sigma_y() -> CMatrix {
    let mut m = CMatrix::zeros((2, 2));
    m[[0, 1]] = -I;
    m[[1, 0]] = I;
    m
}

pub fn sigma_z() -> CMatrix {
    let mut m = CMatrix::zeros((2, 2));
    m[[0, 0]] = ONE;
    m[[1, 1]] = -ONE;
    m
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PauliAxis {
    I,
    X,
    Y,
    Z,
}

impl PauliAxis {
    fn matrix(self) -> CMatrix {
        match self {
            PauliAxis::I => eye(2),
            PauliAxis::X => sigma_x(),
            PauliAxis::Y => sigma_y(),
            PauliAxis::Z => sigma_z(),
        }
    }
}

/// A weighted tensor product of single-qubit Paulis.
#[derive(Debug, Clone)]
pub struct PauliString {
    pub axes: Vec<PauliAxis>,
    pub coefficient: f64,
}

/// Kronecker product in qubit order, scaled by the coefficient.
pub fn pauli_string(spec: &PauliString, n_qubits: usize) -> Result<CMatrix> {
    if spec.axes.len() != n_qubits {
        return Err(Error::LengthMismatch(format!(
            "Pauli string has {} axes for {n_qubits} qubits",
            spec.axes.len()
        )));
    }
    let mut m = CMatrix::from_elem((1, 1), ONE);
    for axis in &spec.axes {
        m = kron(&m, &axis.matrix());
    }
    Ok(m.mapv(|z| z * spec.coefficient))
}

/// The two-qubit interaction set {XX+YY, XY−YX, ZI−IZ}; its dynamics act
/// only on span{|01⟩, |10⟩}.
pub fn example1_generators() -> Vec<CMatrix> {
    vec![
        kron(&sigma_x(), &sigma_x()) + kron(&sigma_y(), &sigma_y()),
        kron(&sigma_x(), &sigma_y()) - kron(&sigma_y(), &sigma_x()),
        kron(&sigma_z(), &eye(2)) - kron(&eye(2), &sigma_z()),
    ]
}

/// The sign-flipped variant {XX−YY, XY+YX, ZI+IZ}, which swaps the roles of
/// span{|00⟩, |11⟩} and span{|01⟩, |10⟩}.
pub fn example1_prime_generators() -> Vec<CMatrix> {
    vec![
        kron(&sigma_x(), &sigma_x()) - kron(&sigma_y(), &sigma_y()),
        kron(&sigma_x(), &sigma_y()) + kron(&sigma_y(), &sigma_x()),
        kron(&sigma_z(), &eye(2)) + kron(&eye(2), &sigma_z()),
    ]
}

/// All transposition swap matrices on n qubits, i < j in lexicographic order.
pub fn swap_generators(n_qubits: usize) -> Result<Vec<CMatrix>> {
    if n_qubits < 2 {
        return Err(Error::Shape(
            "need at least two qubits for exchange generators".into(),
        ));
    }
    if n_qubits > 9 {
        return Err(Error::BudgetExceeded(format!(
            "swap model on {n_qubits} qubits exceeds the dimension cap"
        )));
    }
    let dim = 1usize << n_qubits;
    let mut out = Vec::new();
    for i in 0..n_qubits {
        for j in (i + 1)..n_qubits {
            let mut m = CMatrix::zeros((dim, dim));
            for b in 0..dim {
                let bi = (b >> (n_qubits - 1 - i)) & 1;
                let bj = (b >> (n_qubits - 1 - j)) & 1;
                let mut t = b & !(1 << (n_qubits - 1 - i)) & !(1 << (n_qubits - 1 - j));
                t |= bj << (n_qubits - 1 - i);
                t |= bi << (n_qubits - 1 - j);
                m[[t, b]] = ONE;
            }
            out.push(m);
        }
    }
    Ok(out)
}

/// Cap on generated sector dimensions; closure work grows like dim⁴.
pub const SECTOR_DIM_CAP: usize = 512;

/// Occupation-number basis of the fixed-total-number sector of L modes.
#[derive(Debug, Clone)]
pub struct BosonSector {
    pub modes: usize,
    pub particles: usize,
    /// Occupation tuples, lexicographically descending in n₁.
    pub basis: Vec<Vec<u32>>,
    pub dim: usize,
}

/// Exact sector dimension `binom(N+L−1, L−1)`.
pub fn sector_dimension(modes: usize, particles: usize) -> Result<usize> {
    if modes < 1 {
        return Err(Error::Shape("need at least one mode".into()));
    }
    let (n, k) = ((particles + modes - 1) as u128, (modes - 1) as u128);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc
            .checked_mul(n - i)
            .ok_or_else(|| Error::Arithmetic("sector dimension overflows".into()))?;
        acc /= i + 1;
    }
    usize::try_from(acc).map_err(|_| Error::Arithmetic("sector dimension overflows usize".into()))
}

fn occupations(modes: usize, particles: usize) -> Vec<Vec<u32>> {
    // descending lexicographic order in the first mode
    fn rec(modes: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if modes == 1 {
            let mut s = prefix.clone();
            s.push(left);
            out.push(s);
            return;
        }
        for n1 in (0..=left).rev() {
            prefix.push(n1);
            rec(modes - 1, left - n1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(modes, particles as u32, &mut Vec::new(), &mut out);
    out
}

/// Builds the N-particle sector of L modes together with all number-
/// conserving hopping matrices: `hoppings[i][j]` carries amplitudes
/// `√((n_i + 1) n_j)` for i ≠ j and the occupation `n_i` on the diagonal for
/// i = j. Every hopping preserves the sector exactly.
pub fn boson_sector(modes: usize, particles: usize) -> Result<(BosonSector, Vec<Vec<CMatrix>>)> {
    let dim = sector_dimension(modes, particles)?;
    if dim > SECTOR_DIM_CAP {
        return Err(Error::BudgetExceeded(format!(
            "sector dimension {dim} exceeds the cap {SECTOR_DIM_CAP}"
        )));
    }
    let basis = occupations(modes, particles);
    debug_assert_eq!(basis.len(), dim);
    let index = |occ: &[u32]| basis.iter().position(|b| b == occ).unwrap();

    let mut hoppings = vec![vec![CMatrix::zeros((dim, dim)); modes]; modes];
    for (col, occ) in basis.iter().enumerate() {
        for i in 0..modes {
            hoppings[i][i][[col, col]] = C64::new(occ[i] as f64, 0.0);
            for j in 0..modes {
                if i != j && occ[j] > 0 {
                    let mut moved = occ.clone();
                    moved[i] += 1;
                    moved[j] -= 1;
                    let row = index(&moved);
                    let amp = (((occ[i] + 1) * occ[j]) as f64).sqrt();
                    hoppings[i][j][[row, col]] = C64::new(amp, 0.0);
                }
            }
        }
    }
    Ok((
        BosonSector {
            modes,
            particles,
            basis,
            dim,
        },
        hoppings,
    ))
}

/// The L² Hermitian combinations exposed as physical generators:
/// `E_ij + E_ji` and `i(E_ij − E_ji)` for i < j, then the diagonal `E_ii`.
pub fn boson_hermitian_generators(modes: usize, particles: usize) -> Result<Vec<CMatrix>> {
    let (_, hoppings) = boson_sector(modes, particles)?;
    let mut out = Vec::with_capacity(modes * modes);
    for i in 0..modes {
        for j in (i + 1)..modes {
            out.push(&hoppings[i][j] + &hoppings[j][i]);
            out.push((&hoppings[i][j] - &hoppings[j][i]).mapv(|z| I * z));
        }
    }
    for i in 0..modes {
        out.push(hoppings[i][i].clone());
    }
    Ok(out)
}

/// The 3×3 coordinate permutation representation of the triangle symmetries:
/// the rotation (z₁,z₂,z₃) → (z₃,z₁,z₂) and the reflection
/// (z₁,z₂,z₃) → (z₂,z₁,z₃).
pub fn dihedral_rep() -> (CMatrix, CMatrix) {
    let mut r = CMatrix::zeros((3, 3));
    r[[0, 2]] = ONE;
    r[[1, 0]] = ONE;
    r[[2, 1]] = ONE;
    let mut p = CMatrix::zeros((3, 3));
    p[[0, 1]] = ONE;
    p[[1, 0]] = ONE;
    p[[2, 2]] = ONE;
    (r, p)
}

/// Frame of the two-dimensional irreducible subspace in the Fourier
/// convention `v_k = (1/√3) Σ_j ω^{kj} |j⟩` (k = 1, 2, ω = e^{2πi/3}),
/// which puts the reflection restriction exactly at σx.
pub fn dihedral_fourier_frame() -> CMatrix {
    let omega = C64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
    let s = 1.0 / 3f64.sqrt();
    let mut f = CMatrix::zeros((3, 2));
    for (col, k) in [(0usize, 1u32), (1, 2)] {
        for j in 1..=3u32 {
            f[[(j - 1) as usize, col]] = omega.powu(k * j) * s;
        }
    }
    f
}

/// Hermitian combinations of the triangle generators, spanning the same
/// dynamics as the one-parameter family λ₁P + λ₂R + conj(λ₂)R⁻¹.
pub fn dihedral_hermitian_generators() -> Vec<CMatrix> {
    let (r, p) = dihedral_rep();
    let rt = crate::linalg::dagger(&r);
    vec![p, &r + &rt, (&r - &rt).mapv(|z| I * z)]
}

/// The parity group {I, σz⊗σz} on two qubits.
pub fn z2_generators() -> Vec<CMatrix> {
    vec![eye(4), kron(&sigma_z(), &sigma_z())]
}
