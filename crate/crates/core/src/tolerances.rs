//! Numerical policy: every threshold used by the pipelines lives here.

/// Absolute floor below which any quantity is treated as zero, regardless of
/// relative scale.
pub const ABS_FLOOR: f64 = 1e-12;

/// Relative tolerance for unitarity checks (`‖U†U − I‖_F` against
/// `max(1, ‖U‖_F)`).
pub const TOL_UNITARY: f64 = 1e-8;

/// Relative tolerance used when validating Hermiticity of inputs.
pub const TOL_HERMITIAN: f64 = 1e-8;

/// Scale factor for the finite-group duplicate threshold: two elements are
/// identified when `‖A − B‖_F ≤ GROUP_TOL_SCALE · √dim`.
pub const GROUP_TOL_SCALE: f64 = 1e-8;

/// Default singular/eigenvalue threshold for operator Schmidt ranks.
pub const TOL_SCHMIDT: f64 = 1e-7;

/// Tunable tolerances carried through the analysis pipelines and echoed in
/// reports.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Rank cutoff: eigen/singular values below `rank · largest` do not count.
    /// Also the Gram–Schmidt residual threshold during closures.
    pub rank: f64,
    /// Invariance residual threshold, relative to `max(1, ‖op‖_F)`.
    pub invariance: f64,
    /// Floor for the eigenvalue clustering gap; the effective gap is
    /// `max(cluster_gap, 1e-6 · spread)`.
    pub cluster_gap: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            rank: 1e-9,
            invariance: 1e-8,
            cluster_gap: 1e-7,
        }
    }
}

impl Tolerances {
    /// Duplicate-detection threshold for group closure at the given matrix
    /// dimension.
    pub fn group_tol(dim: usize) -> f64 {
        GROUP_TOL_SCALE * (dim as f64).sqrt()
    }
}
