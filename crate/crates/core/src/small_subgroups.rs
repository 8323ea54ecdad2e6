//! Iterated commutators and their contraction, and the SO(3) witness pair
//! whose perturbations can never commute.
//!
//! For `|h| < π/2` and `|k| < α` the sequence `h₀ = h`, `hₙ₊₁ = [hₙ, k]`
//! shrinks geometrically with ratio at most `C = 2√(2 − 2cos|k|) < 1`.
//! The witness pair is `h = rot_z(π/2 − β)`, `k = rot_x(α − β)` with
//! `v = e_z`; then `∠(hkv, khv) = 4β`.

use std::f64::consts::FRAC_PI_2;

use nalgebra::Vector3;
use rand::Rng;
use serde::Serialize;

use crate::constants::{contraction_constant, BetaSolution};
use crate::error::{Error, Result};
use crate::lie::{
    distance, exp_map, op_norm_group, random_algebra_with_norm, rotation_so3, GroupElement,
    GroupKind,
};

/// Norm below which an iterated commutator counts as the identity.
pub const DEFAULT_HALT_TOL: f64 = 1e-12;

/// `a·b·a⁻¹·b⁻¹`.
pub fn commutator(a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
    a.kind().ensure_same(b.kind())?;
    Ok(&(&(a * b) * &a.inverse()) * &b.inverse())
}

#[derive(Clone, Debug, Serialize)]
pub struct CommutatorTrace {
    #[serde(skip)]
    pub elements: Vec<GroupElement>,
    pub norms: Vec<f64>,
    /// `norms[i+1] / norms[i]`.
    pub contraction_ratios: Vec<f64>,
    /// The contraction constant `C(|k|)` the ratios are bounded by.
    pub contraction_constant: f64,
    pub converged: bool,
}

impl CommutatorTrace {
    pub fn max_ratio(&self) -> f64 {
        self.contraction_ratios.iter().copied().fold(0.0, f64::max)
    }

    /// Whether every ratio is at most `C + 1e-9` and every norm at most
    /// `Cⁿ·π/2 + 1e-9`.
    pub fn within_bounds(&self) -> bool {
        let c = self.contraction_constant;
        self.contraction_ratios.iter().all(|&r| r <= c + 1e-9)
            && self
                .norms
                .iter()
                .enumerate()
                .all(|(n, &x)| x <= c.powi(n as i32) * FRAC_PI_2 + 1e-9)
    }
}

/// Iterates `hₙ₊₁ = [hₙ, k]` until the norm drops below `halt_tol` or
/// `max_iter` commutators have been taken.
pub fn commutator_sequence(
    h: &GroupElement,
    k: &GroupElement,
    max_iter: usize,
    halt_tol: f64,
) -> Result<CommutatorTrace> {
    h.kind().ensure_same(k.kind())?;
    let alpha = crate::constants::alpha();
    let nh = op_norm_group(h);
    let nk = op_norm_group(k);
    if nh >= FRAC_PI_2 {
        return Err(Error::Precondition(format!("|h| = {nh:.6} is not below π/2")));
    }
    if nk >= alpha {
        return Err(Error::Precondition(format!("|k| = {nk:.6} is not below α = {alpha:.6}")));
    }
    let c = contraction_constant(nk)?;
    let mut elements = vec![h.clone()];
    let mut norms = vec![nh];
    let mut ratios = Vec::new();
    while norms[norms.len() - 1] >= halt_tol && elements.len() <= max_iter {
        // Without re-projection the unitarity defect roughly doubles per step.
        let next = commutator(&elements[elements.len() - 1], k)?.reprojected()?;
        let n = op_norm_group(&next);
        ratios.push(n / norms[norms.len() - 1]);
        norms.push(n);
        elements.push(next);
    }
    let converged = norms[norms.len() - 1] < halt_tol;
    Ok(CommutatorTrace {
        elements,
        norms,
        contraction_ratios: ratios,
        contraction_constant: c,
        converged,
    })
}

#[derive(Clone, Debug)]
pub struct WitnessPair {
    pub h: GroupElement,
    pub k: GroupElement,
    pub v: Vector3<f64>,
}

/// `h = rot_z(π/2 − β)`, `k = rot_x(α − β)`, `v = e_z`.
pub fn construct_witness_pair(sol: &BetaSolution) -> WitnessPair {
    WitnessPair {
        h: rotation_so3(2, FRAC_PI_2 - sol.beta),
        k: rotation_so3(0, sol.alpha - sol.beta),
        v: Vector3::z(),
    }
}

fn so3_matrix(g: &GroupElement) -> Result<nalgebra::Matrix3<f64>> {
    if *g.kind() != GroupKind::so(3) {
        return Err(Error::KindMismatch {
            left: g.kind().to_string(),
            right: GroupKind::so(3).to_string(),
        });
    }
    let m = g.real_matrix();
    Ok(nalgebra::Matrix3::from_fn(|i, j| m[(i, j)]))
}

/// Angle between two 3-vectors, `2·atan2(|â − b̂|, |â + b̂|)`.
fn angle3(a: &Vector3<f64>, b: &Vector3<f64>) -> Result<f64> {
    let (na, nb) = (a.norm(), b.norm());
    if na == 0.0 || nb == 0.0 {
        return Err(Error::InvalidInput("zero vector".into()));
    }
    let (a, b) = (a / na, b / nb);
    Ok(2.0 * (a - b).norm().atan2((a + b).norm()))
}

/// `∠(h·k·v, k·h·v)` for rotations `h, k` of SO(3).
pub fn witness_angle(h: &GroupElement, k: &GroupElement, v: &Vector3<f64>) -> Result<f64> {
    let (mh, mk) = (so3_matrix(h)?, so3_matrix(k)?);
    angle3(&(mh * mk * v), &(mk * mh * v))
}

/// Perturbations of the witness pair by less than `β` still satisfy the
/// contraction hypotheses and fail to commute: returns `∠(h'k'v, k'h'v)`.
///
/// Errors if either perturbation is at distance `≥ β`, or if the perturbed
/// elements leave the regions `|h'| < π/2`, `|k'| < α`.
pub fn perturbation_noncommutation_check(
    sol: &BetaSolution,
    pair: &WitnessPair,
    h_pert: &GroupElement,
    k_pert: &GroupElement,
) -> Result<f64> {
    let dh = distance(&pair.h, h_pert)?;
    let dk = distance(&pair.k, k_pert)?;
    if dh >= sol.beta || dk >= sol.beta {
        return Err(Error::Precondition(format!(
            "perturbation distances ({dh:.6}, {dk:.6}) must be below β = {:.6}",
            sol.beta
        )));
    }
    let nh = op_norm_group(h_pert);
    let nk = op_norm_group(k_pert);
    if nh >= FRAC_PI_2 || nk >= sol.alpha {
        return Err(Error::Numerical(format!(
            "perturbed norms ({nh:.6}, {nk:.6}) escaped (π/2, α)"
        )));
    }
    witness_angle(h_pert, k_pert, &pair.v)
}

/// `g·exp(x)` with `x` uniformly oriented and `|x|_𝔤 = radius`, so that the
/// result lies at distance exactly `radius` from `g` (for `radius < 2π/3`).
pub fn random_perturbation<R: Rng + ?Sized>(g: &GroupElement, radius: f64, rng: &mut R) -> GroupElement {
    let x = random_algebra_with_norm(g.kind(), radius, rng);
    g * &exp_map(&x)
}
