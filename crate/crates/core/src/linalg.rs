//! Small dense linear-algebra helpers shared across modules.

use nalgebra::{DMatrix, DVector, Schur, SymmetricEigen, SVD};
use num_complex::Complex64;
use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type RMatrix = DMatrix<f64>;

const SCHUR_MAX_ITER: usize = 10_000;

pub(crate) fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub(crate) fn complexify(m: &RMatrix) -> CMatrix {
    m.map(|x| c(x, 0.0))
}

pub(crate) fn max_abs_entry(m: &CMatrix) -> f64 {
    m.iter().fold(0.0f64, |acc, z| acc.max(z.norm()))
}

pub(crate) fn max_abs_entry_real(m: &RMatrix) -> f64 {
    m.iter().fold(0.0f64, |acc, x| acc.max(x.abs()))
}

/// Complex Schur factorization `m = q t q†` of a normal matrix, returning `q`
/// and the diagonal of `t`.
pub(crate) fn normal_schur(m: &CMatrix) -> Result<(CMatrix, Vec<Complex64>)> {
    // At eps = f64::EPSILON the iteration can stall on nearly repeated
    // eigenvalues; slightly looser thresholds converge.
    let schur = [f64::EPSILON, 1e-15, 1e-14, 1e-13]
        .into_iter()
        .find_map(|eps| Schur::try_new(m.clone(), eps, SCHUR_MAX_ITER))
        .ok_or_else(|| Error::Numerical("Schur iteration did not converge".into()))?;
    let (q, t) = schur.unpack();
    let diag = (0..t.nrows()).map(|i| t[(i, i)]).collect();
    Ok((q, diag))
}

/// Argument in (-π, π]; `-π` is folded onto `π`.
pub(crate) fn principal_arg(z: Complex64) -> f64 {
    let a = z.arg();
    if a <= -PI {
        PI
    } else {
        a
    }
}

/// Eigenphases of a unitary (or real orthogonal) matrix, each in (-π, π].
pub(crate) fn eigenphases(m: &CMatrix) -> Result<Vec<f64>> {
    let (_, diag) = normal_schur(m)?;
    Ok(diag.into_iter().map(principal_arg).collect())
}

/// Distance of an angle to 0 on the circle, in [0, π].
pub fn circular_distance(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    r.min(TAU - r)
}

/// Largest rotation angle of a real orthogonal matrix: max |arg λ| over its
/// eigenvalues.
///
/// With `S = (M + Mᵀ)/2` and `A = (M − Mᵀ)/2`, every eigenvector `v` of `S`
/// with eigenvalue `cos θ` has `|Av| = sin θ`, so the angles come out of a
/// symmetric eigenproblem as `atan2(|Av|, cos θ)`.
pub(crate) fn orthogonal_max_angle(m: &RMatrix) -> Result<f64> {
    if m.nrows() == 3 {
        return Ok(rotation3_angle(m));
    }
    let mt = m.transpose();
    let sym = (m + &mt) * 0.5;
    let anti = (m - &mt) * 0.5;
    let eig = SymmetricEigen::try_new(sym, f64::EPSILON, SCHUR_MAX_ITER)
        .ok_or_else(|| Error::Numerical("symmetric eigensolver did not converge".into()))?;
    let mut best = 0.0f64;
    for (i, &cos) in eig.eigenvalues.iter().enumerate() {
        let sin = (&anti * eig.eigenvectors.column(i)).norm();
        best = best.max(sin.atan2(cos));
    }
    Ok(best)
}

/// Rotation angle of a 3×3 rotation matrix via `atan2(sin, cos)`, accurate
/// near both 0 and π.
pub(crate) fn rotation3_angle(m: &RMatrix) -> f64 {
    let cos = 0.5 * (m[(0, 0)] + m[(1, 1)] + m[(2, 2)] - 1.0);
    let ax = m[(2, 1)] - m[(1, 2)];
    let ay = m[(0, 2)] - m[(2, 0)];
    let az = m[(1, 0)] - m[(0, 1)];
    let sin = 0.5 * (ax * ax + ay * ay + az * az).sqrt();
    sin.atan2(cos)
}

/// Eigen-decomposition of a Hermitian matrix.
pub(crate) fn hermitian_eigen(m: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    let eig = SymmetricEigen::try_new(m.clone(), f64::EPSILON, SCHUR_MAX_ITER)
        .ok_or_else(|| Error::Numerical("Hermitian eigensolver did not converge".into()))?;
    Ok((eig.eigenvalues.iter().copied().collect(), eig.eigenvectors))
}

pub(crate) fn singular_values(m: &CMatrix) -> Result<Vec<f64>> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Ok(Vec::new());
    }
    let svd = SVD::try_new(m.clone(), false, false, f64::EPSILON, SCHUR_MAX_ITER)
        .ok_or_else(|| Error::Numerical("SVD did not converge".into()))?;
    Ok(svd.singular_values.iter().copied().collect())
}

pub(crate) fn singular_values_real(m: &RMatrix) -> Result<Vec<f64>> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Ok(Vec::new());
    }
    let svd = SVD::try_new(m.clone(), false, false, f64::EPSILON, SCHUR_MAX_ITER)
        .ok_or_else(|| Error::Numerical("SVD did not converge".into()))?;
    Ok(svd.singular_values.iter().copied().collect())
}

/// Operator (spectral) norm.
pub fn op_norm(m: &CMatrix) -> Result<f64> {
    Ok(singular_values(m)?.into_iter().fold(0.0, f64::max))
}

pub(crate) fn op_norm_real(m: &RMatrix) -> Result<f64> {
    Ok(singular_values_real(m)?.into_iter().fold(0.0, f64::max))
}

/// Unsigned angle between two nonzero vectors, `2·atan2(|â − b̂|, |â + b̂|)`.
pub fn vector_angle(a: &DVector<Complex64>, b: &DVector<Complex64>) -> Option<f64> {
    let na = a.norm();
    let nb = b.norm();
    if na == 0.0 || nb == 0.0 {
        return None;
    }
    let ua = a / c(na, 0.0);
    let ub = b / c(nb, 0.0);
    Some(2.0 * (&ua - &ub).norm().atan2((&ua + &ub).norm()))
}

#[cfg(test)]
pub(crate) fn real_vector_angle(a: &DVector<f64>, b: &DVector<f64>) -> Option<f64> {
    let na = a.norm();
    let nb = b.norm();
    if na == 0.0 || nb == 0.0 {
        return None;
    }
    let ua = a / na;
    let ub = b / nb;
    Some(2.0 * (&ua - &ub).norm().atan2((&ua + &ub).norm()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circular_distance_reduces_into_zero_pi() {
        assert!((circular_distance(0.3) - 0.3).abs() < 1e-15);
        assert!((circular_distance(-0.3) - 0.3).abs() < 1e-15);
        assert!((circular_distance(TAU - 0.1) - 0.1).abs() < 1e-12);
        assert!((circular_distance(PI) - PI).abs() < 1e-15);
        assert!((circular_distance(3.0 * PI) - PI).abs() < 1e-12);
    }

    #[test]
    fn principal_arg_keeps_pi() {
        assert_eq!(principal_arg(c(-1.0, -0.0)), PI);
        assert_eq!(principal_arg(c(-1.0, 0.0)), PI);
    }

    #[test]
    fn rotation3_angle_matches_trace_formula() {
        for &t in &[0.0, 1e-9, 0.4, 2.0, PI - 1e-7] {
            let m = RMatrix::from_row_slice(
                3,
                3,
                &[t.cos(), -t.sin(), 0.0, t.sin(), t.cos(), 0.0, 0.0, 0.0, 1.0],
            );
            assert!((rotation3_angle(&m) - t).abs() < 1e-12, "{t}");
        }
    }

    #[test]
    fn vector_angle_handles_extremes() {
        let a = DVector::from_vec(vec![c(1.0, 0.0), c(0.0, 0.0)]);
        let b = DVector::from_vec(vec![c(-1.0, 0.0), c(0.0, 0.0)]);
        assert!((vector_angle(&a, &b).unwrap() - PI).abs() < 1e-15);
        assert_eq!(vector_angle(&a, &a).unwrap(), 0.0);
        let z = DVector::from_vec(vec![c(0.0, 0.0), c(0.0, 0.0)]);
        assert!(vector_angle(&a, &z).is_none());
    }
}
