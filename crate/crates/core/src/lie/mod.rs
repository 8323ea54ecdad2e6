//! Group and algebra arithmetic: validated elements, the adjoint
//! representation, the operator norms, the metric `d_G`, exp/log on the
//! norm-preserving region, and Haar sampling.

mod adjoint;
pub(crate) mod basis;
mod element;
mod explog;
mod haar;
mod kind;
mod norm;

pub use adjoint::{ad_matrix, adjoint_matrix, AdjointMatrix};
pub use basis::algebra_basis;
pub use element::{
    complex_matrix, AlgebraVector, GroupElement, TOL_ALGEBRA, TOL_DET, TOL_REAL, TOL_UNITARY,
};
pub use explog::{exp_map, log_domain_limit, log_map, path_length, LOG_DOMAIN_MARGIN};
pub use haar::{
    haar_sample, haar_sample_rng, random_algebra, random_algebra_with_norm, rng_from_seed,
    split_seed,
};
pub use kind::{Block, GroupKind};
pub use norm::{
    distance, euclidean_to_operator_constant, op_norm_algebra, op_norm_algebra_spectral,
    op_norm_group, op_norm_group_eigenphases, operator_to_euclidean_constant,
};
pub(crate) use norm::adjoint_angle;

/// Rotation of SO(3) by `angle` about coordinate axis `axis` (0 = x, 1 = y, 2 = z).
pub fn rotation_so3(axis: usize, angle: f64) -> GroupElement {
    let (a, b) = match axis {
        0 => (1, 2),
        1 => (2, 0),
        _ => (0, 1),
    };
    exp_map(&AlgebraVector::rotation_generator(&GroupKind::so(3), a, b, angle).expect("valid plane"))
}

/// Rotation of SO(3) by `angle` about the unit vector `axis` (Rodrigues).
pub fn rotation_about(axis: [f64; 3], angle: f64) -> GroupElement {
    let n = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
    let [x, y, z] = axis.map(|v| v * angle / n);
    let k = crate::linalg::RMatrix::from_row_slice(3, 3, &[0.0, -z, y, z, 0.0, -x, -y, x, 0.0]);
    let x = AlgebraVector::new(crate::linalg::complexify(&k), GroupKind::so(3)).expect("antisymmetric generator");
    exp_map(&x)
}
