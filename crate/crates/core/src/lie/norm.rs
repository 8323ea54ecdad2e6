//! The two operator norms and the bi-invariant metric.
//!
//! `|g|_G` is the largest angle through which `Ad_g` rotates a unit vector of
//! the algebra, equivalently the largest `|arg λ|` over the eigenvalues of
//! `Ad_g`. `|x|_𝔤` is the operator norm of `ad_x`. Both are computed twice:
//! once from the adjoint matrices and once from the eigenvalues of the
//! defining matrices. The two routes are independent and are cross-checked
//! in the tests.

use super::{ad_matrix, adjoint_matrix, AlgebraVector, GroupElement, GroupKind};
use crate::error::Result;
use crate::linalg::{
    circular_distance, eigenphases, hermitian_eigen, op_norm_real, orthogonal_max_angle, RMatrix,
};

const SOLVER_PANIC: &str = "eigensolver failed on an orthogonal matrix";

/// `|g|_G` in radians, in `[0, π]`, from the eigenvalues of `Ad_g`.
pub fn op_norm_group(g: &GroupElement) -> f64 {
    adjoint_angle(&adjoint_matrix(g).matrix)
}

/// Largest rotation angle of an adjoint matrix.
pub(crate) fn adjoint_angle(ad: &RMatrix) -> f64 {
    orthogonal_max_angle(ad).expect(SOLVER_PANIC)
}

/// `|g|_G` from the defining-representation eigenphases.
///
/// Unitary blocks: the largest circular distance of a phase difference
/// `θ_j − θ_k`. Orthogonal blocks: the largest circular distance of a sum
/// `θ_a + θ_b` over distinct eigenvalue slots, since `so(d) ≅ Λ²(ℝ^d)`.
/// Products take the maximum over blocks.
pub fn op_norm_group_eigenphases(g: &GroupElement) -> f64 {
    let mut best = 0.0f64;
    for (i, block) in g.kind().blocks().iter().enumerate() {
        let f = g.factor(i).expect("block index in range");
        let phases = eigenphases(f.matrix()).expect(SOLVER_PANIC);
        let v = match block.kind {
            GroupKind::SpecialUnitary(_) => pairwise_max(&phases, |a, b| a - b),
            GroupKind::SpecialOrthogonal(_) => pairwise_max(&phases, |a, b| a + b),
            GroupKind::Product(_) => unreachable!(),
        };
        best = best.max(v);
    }
    best
}

fn pairwise_max(phases: &[f64], combine: impl Fn(f64, f64) -> f64) -> f64 {
    let mut best = 0.0f64;
    for (a, &pa) in phases.iter().enumerate() {
        for &pb in &phases[a + 1..] {
            best = best.max(circular_distance(combine(pa, pb)));
        }
    }
    best
}

/// `|x|_𝔤`: largest singular value of `ad_x`.
pub fn op_norm_algebra(x: &AlgebraVector) -> f64 {
    op_norm_real(&ad_matrix(x)).expect("SVD failed on ad_x")
}

/// `|x|_𝔤` from the eigenvalues `iθ_j` of `x`: the spread `max θ − min θ`
/// for unitary blocks, `max |θ_a + θ_b|` for orthogonal blocks.
pub fn op_norm_algebra_spectral(x: &AlgebraVector) -> f64 {
    let mut best = 0.0f64;
    for block in x.kind().blocks() {
        let d = block.kind.matrix_dim();
        let sub = x.matrix().view((block.offset, block.offset), (d, d)).into_owned();
        let herm = sub * crate::linalg::c(0.0, -1.0);
        let (theta, _) = hermitian_eigen(&herm).expect("Hermitian eigensolver failed");
        let v = match block.kind {
            GroupKind::SpecialUnitary(_) => {
                let max = theta.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                let min = theta.iter().copied().fold(f64::INFINITY, f64::min);
                max - min
            }
            GroupKind::SpecialOrthogonal(_) => {
                let mut m = 0.0f64;
                for (a, &ta) in theta.iter().enumerate() {
                    for &tb in &theta[a + 1..] {
                        m = m.max((ta + tb).abs());
                    }
                }
                m
            }
            GroupKind::Product(_) => unreachable!(),
        };
        best = best.max(v);
    }
    best
}

/// `d_G(g, h) = |g⁻¹h|_G`.
pub fn distance(g: &GroupElement, h: &GroupElement) -> Result<f64> {
    Ok(op_norm_group(&g.inverse().try_mul(h)?))
}

/// Upper bound `c` with `|x|_𝔤 ≤ c·‖x‖` for the orthonormal basis in use:
/// `√2` for `su(d)`, `1/√2` for `so(3)`, `1` for `so(d)` with `d ≥ 4`, and the
/// maximum over factors for products.
pub fn euclidean_to_operator_constant(kind: &GroupKind) -> f64 {
    match kind {
        GroupKind::SpecialUnitary(_) => std::f64::consts::SQRT_2,
        GroupKind::SpecialOrthogonal(3) => std::f64::consts::FRAC_1_SQRT_2,
        GroupKind::SpecialOrthogonal(_) => 1.0,
        GroupKind::Product(fs) => fs
            .iter()
            .map(euclidean_to_operator_constant)
            .fold(0.0, f64::max),
    }
}

/// Upper bound `r` with `‖x‖ ≤ r·|x|_𝔤`: `√d` for `su(d)`, `√(2⌊d/2⌋)` for `so(d)`.
pub fn operator_to_euclidean_constant(kind: &GroupKind) -> f64 {
    match kind {
        GroupKind::SpecialUnitary(d) => (*d as f64).sqrt(),
        GroupKind::SpecialOrthogonal(d) => ((2 * (d / 2)) as f64).sqrt(),
        GroupKind::Product(fs) => fs
            .iter()
            .map(operator_to_euclidean_constant)
            .fold(0.0, f64::max),
    }
}
