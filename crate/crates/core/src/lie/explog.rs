//! Exponential and logarithm on the region where they are inverse bijections
//! preserving operator norms (`|x|_𝔤 < 2π/3` and `|g|_G < 2π/3`).

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use super::{op_norm_algebra, op_norm_group, AlgebraVector, GroupElement, GroupKind};
use crate::error::{Error, Result};
use crate::linalg::{c, hermitian_eigen, normal_schur, principal_arg, CMatrix};

/// Logarithms are only taken strictly inside `2π/3`, minus this margin.
pub const LOG_DOMAIN_MARGIN: f64 = 1e-6;

/// Upper limit (exclusive) of `|g|_G` accepted by [`log_map`].
pub fn log_domain_limit() -> f64 {
    2.0 * PI / 3.0 - LOG_DOMAIN_MARGIN
}

/// Matrix exponential of `x`, via the Hermitian eigendecomposition of `−ix`.
pub fn exp_map(x: &AlgebraVector) -> GroupElement {
    let kind = x.kind();
    let n = kind.matrix_dim();
    let mut out = CMatrix::zeros(n, n);
    for block in kind.blocks() {
        let d = block.kind.matrix_dim();
        let sub = x.matrix().view((block.offset, block.offset), (d, d)).into_owned();
        let (theta, v) = hermitian_eigen(&(sub * c(0.0, -1.0))).expect("Hermitian eigensolver failed");
        let phases = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            d,
            theta.iter().map(|&t| Complex64::from_polar(1.0, t)),
        ));
        let mut e = &v * phases * v.adjoint();
        if matches!(block.kind, GroupKind::SpecialOrthogonal(_)) {
            e.iter_mut().for_each(|z| z.im = 0.0);
        }
        out.view_mut((block.offset, block.offset), (d, d)).copy_from(&e);
    }
    GroupElement::from_parts_unchecked(out, kind.clone())
}

/// The unique logarithm `x` of `g` with `|x|_𝔤 = |g|_G`, for `|g|_G` below
/// [`log_domain_limit`].
///
/// Elements stand for their classes modulo the center, so `exp_map(log_map(g))`
/// equals `g` up to a central factor (a `d`-th root of unity for `SU(d)`,
/// `±1` for `SO(d)` with even `d`). It equals `g` exactly whenever `g` is
/// itself the exponential of a small algebra element.
pub fn log_map(g: &GroupElement) -> Result<AlgebraVector> {
    let norm = op_norm_group(g);
    let limit = log_domain_limit();
    if norm >= limit {
        return Err(Error::LogDomain { norm, limit });
    }
    let kind = g.kind();
    let n = kind.matrix_dim();
    let mut out = CMatrix::zeros(n, n);
    for (i, block) in kind.blocks().iter().enumerate() {
        let d = block.kind.matrix_dim();
        let f = g.factor(i)?;
        let x = match block.kind {
            GroupKind::SpecialUnitary(_) => su_log(f.matrix())?,
            GroupKind::SpecialOrthogonal(_) => so_log(f.matrix())?,
            GroupKind::Product(_) => unreachable!(),
        };
        out.view_mut((block.offset, block.offset), (d, d)).copy_from(&x);
    }
    let x = AlgebraVector::new(out, kind.clone())
        .map_err(|e| Error::Numerical(format!("logarithm left the algebra: {e}")))?;
    let xn = op_norm_algebra(&x);
    if (xn - norm).abs() > 1e-6 {
        return Err(Error::Numerical(format!(
            "logarithm norm {xn:.9} does not match group norm {norm:.9}"
        )));
    }
    Ok(x)
}

/// Chooses lifts of the eigenphases that sit inside one arc (cut at the
/// largest circular gap) and centers them so the result is traceless.
fn su_log(m: &CMatrix) -> Result<CMatrix> {
    let (q, diag) = normal_schur(m)?;
    let d = diag.len();
    let phases: Vec<f64> = diag.iter().map(|&z| principal_arg(z)).collect();
    let mut sorted = phases.clone();
    sorted.sort_by(f64::total_cmp);
    let mut gap_end = 0;
    let mut widest = f64::NEG_INFINITY;
    for i in 0..d {
        let next = if i + 1 == d { sorted[0] + TAU } else { sorted[i + 1] };
        let gap = next - sorted[i];
        if gap > widest {
            widest = gap;
            gap_end = (i + 1) % d;
        }
    }
    let start = sorted[gap_end];
    let lifted: Vec<f64> = phases
        .iter()
        .map(|&p| if p < start { p + TAU } else { p })
        .collect();
    let mean = lifted.iter().sum::<f64>() / d as f64;
    let centered: Vec<f64> = lifted.iter().map(|p| p - mean).collect();
    let x = reassemble(&q, &centered);
    let mut x = (&x - x.adjoint()) * c(0.5, 0.0);
    let tr = x.trace() / c(d as f64, 0.0);
    for i in 0..d {
        x[(i, i)] -= tr;
    }
    Ok(x)
}

/// Principal logarithm of `m` or, in even dimension, of `−m`, whichever has
/// all eigenphases closer to zero.
fn so_log(m: &CMatrix) -> Result<CMatrix> {
    let d = m.nrows();
    let mut best: Option<(f64, CMatrix, Vec<f64>)> = None;
    let candidates: &[f64] = if d.is_multiple_of(2) { &[1.0, -1.0] } else { &[1.0] };
    for &sign in candidates {
        let cand = m * c(sign, 0.0);
        let (q, diag) = normal_schur(&cand)?;
        let phases: Vec<f64> = diag.iter().map(|&z| principal_arg(z)).collect();
        let spread = phases.iter().fold(0.0f64, |a, p| a.max(p.abs()));
        if best.as_ref().is_none_or(|(s, _, _)| spread < *s) {
            best = Some((spread, q, phases));
        }
    }
    let (_, q, phases) = best.expect("at least one candidate");
    let x = reassemble(&q, &phases);
    let mut x = x.map(|z| c(z.re, 0.0));
    x = (&x - x.transpose()) * c(0.5, 0.0);
    Ok(x)
}

fn reassemble(q: &CMatrix, phases: &[f64]) -> CMatrix {
    let diag = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        phases.len(),
        phases.iter().map(|&p| c(0.0, p)),
    ));
    q * diag * q.adjoint()
}

/// Discrete path length `Σ |log(p_i⁻¹ p_{i+1})|_𝔤` of a sampled path.
pub fn path_length(samples: &[GroupElement]) -> Result<f64> {
    let mut total = 0.0;
    for (i, pair) in samples.windows(2).enumerate() {
        let step = pair[0].inverse().try_mul(&pair[1])?;
        let gap = op_norm_group(&step);
        if gap >= log_domain_limit() {
            return Err(Error::Precondition(format!(
                "gap {gap:.6} between samples {i} and {} exceeds the logarithm domain",
                i + 1
            )));
        }
        total += op_norm_algebra(&log_map(&step)?);
    }
    Ok(total)
}
