//! The universal diameter constant `β` and the commutator contraction constant.
//!
//! `α` is the smallest positive solution of `cos α = 7/8`, and `β` the
//! smallest positive root of
//!
//! ```text
//! cos²(α − β) + sin²(α − β)·sin β = cos 4β
//! ```
//!
//! (`β ≈ 0.124332`). The contraction constant for commutators with `k` is
//! `C = 2·√(2 − 2 cos |k|_G)`, which equals 1 exactly at `|k|_G = α`.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Step of the sign-bracketing scan preceding bisection.
pub const SCAN_STEP: f64 = 1e-3;

/// `α = arccos(7/8)`.
pub fn alpha() -> f64 {
    (7.0f64 / 8.0).acos()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BetaSolution {
    pub alpha: f64,
    pub beta: f64,
    /// `|LHS − RHS|` of the defining equation at `beta`.
    pub residual: f64,
    pub solver_tolerance: f64,
}

/// `cos²(α − b) + sin²(α − b)·sin b − cos 4b`.
pub fn beta_equation_residual(b: f64) -> f64 {
    let a = alpha();
    let (s, c) = (a - b).sin_cos();
    c * c + s * s * b.sin() - (4.0 * b).cos()
}

/// The same residual written with `cos(π/2 − b)` in place of `sin b`, the
/// form in which it arises from the witness-pair trigonometry.
pub fn beta_equation_residual_witness_form(b: f64) -> f64 {
    let a = alpha();
    let (s, c) = (a - b).sin_cos();
    c * c + s * s * (FRAC_PI_2 - b).cos() - (4.0 * b).cos()
}

/// Smallest positive root of the `β` equation: a scan over `(0, α)` with
/// step [`SCAN_STEP`] to bracket the first sign change, then bisection until
/// the bracket is narrower than `tolerance` and the residual is at most
/// `tolerance`.
pub fn solve_beta(tolerance: f64) -> Result<BetaSolution> {
    if !(tolerance > 0.0 && tolerance < 1e-6) {
        return Err(Error::InvalidInput(format!(
            "tolerance {tolerance} must lie in (0, 1e-6)"
        )));
    }
    let a = alpha();
    let mut lo = 0.0;
    let mut f_lo = beta_equation_residual(lo);
    let mut bracket = None;
    let mut i = 1usize;
    loop {
        let hi = (i as f64 * SCAN_STEP).min(a);
        let f_hi = beta_equation_residual(hi);
        if f_hi == 0.0 {
            bracket = Some((hi, hi));
            break;
        }
        if f_lo.signum() != f_hi.signum() {
            bracket = Some((lo, hi));
            break;
        }
        if hi >= a {
            break;
        }
        lo = hi;
        f_lo = f_hi;
        i += 1;
    }
    let (mut lo, mut hi) = bracket.ok_or(Error::NoBracket)?;
    let mut f_lo = beta_equation_residual(lo);
    loop {
        let mid = 0.5 * (lo + hi);
        let f_mid = beta_equation_residual(mid);
        let narrow = hi - lo < tolerance;
        if (narrow && f_mid.abs() <= tolerance) || mid <= lo || mid >= hi || f_mid == 0.0 {
            return Ok(BetaSolution {
                alpha: a,
                beta: mid,
                residual: f_mid.abs(),
                solver_tolerance: tolerance,
            });
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
}

/// `C = 2·√(2 − 2 cos κ)` for `κ ∈ [0, π]`.
pub fn contraction_constant(kappa: f64) -> Result<f64> {
    if !(0.0..=PI).contains(&kappa) {
        return Err(Error::InvalidInput(format!(
            "kappa {kappa} outside [0, π]"
        )));
    }
    Ok(2.0 * (2.0 - 2.0 * kappa.cos()).max(0.0).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_value() {
        assert!((alpha().cos() - 0.875).abs() < 1e-15);
        assert!((alpha() - 0.5053605).abs() < 1e-7);
    }

    #[test]
    fn residual_at_zero() {
        assert!((beta_equation_residual(0.0) + 15.0 / 64.0).abs() < 1e-15);
    }

    #[test]
    fn residual_changes_sign_between_012_and_013() {
        // Values from a brute-force evaluation of the equation.
        assert!(beta_equation_residual(0.12) < 0.0);
        assert!(beta_equation_residual(0.13) > 0.0);
    }

    #[test]
    fn no_root_below_the_first_bracket() {
        let mut b = 1e-6;
        while b < 0.124 {
            assert!(beta_equation_residual(b) < 0.0, "{b}");
            b += 1e-5;
        }
    }

    #[test]
    fn solve_beta_reproduces_published_value() {
        let sol = solve_beta(1e-10).unwrap();
        assert!((sol.beta - 0.124332).abs() < 1e-5, "{}", sol.beta);
        assert!(sol.residual <= 1e-10);
        assert!(beta_equation_residual(sol.beta).abs() <= 1e-9);
        assert!(0.0 < sol.beta && sol.beta < sol.alpha && sol.alpha < FRAC_PI_2);
        assert!(4.0 * sol.beta < FRAC_PI_2);
    }

    #[test]
    fn solve_beta_is_deterministic_and_nested() {
        let a = solve_beta(1e-10).unwrap();
        assert_eq!(a, solve_beta(1e-10).unwrap());
        let coarse = solve_beta(1e-7).unwrap();
        let fine = solve_beta(1e-12).unwrap();
        assert!((coarse.beta - fine.beta).abs() < 1e-7);
    }

    #[test]
    fn solve_beta_rejects_bad_tolerance() {
        assert!(solve_beta(0.0).is_err());
        assert!(solve_beta(1e-3).is_err());
    }

    #[test]
    fn both_residual_forms_agree() {
        for i in 0..1000 {
            let b = i as f64 * (PI / 4.0) / 1000.0;
            let d = beta_equation_residual(b) - beta_equation_residual_witness_form(b);
            assert!(d.abs() < 1e-15, "{b}: {d}");
        }
    }

    #[test]
    fn contraction_constant_values() {
        assert_eq!(contraction_constant(0.0).unwrap(), 0.0);
        assert!((contraction_constant(alpha()).unwrap() - 1.0).abs() < 1e-15);
        assert!((contraction_constant(PI / 3.0).unwrap() - 2.0).abs() < 1e-14);
        assert!(contraction_constant(-0.1).is_err());
        assert!(contraction_constant(3.2).is_err());
        let mut prev = -1.0;
        for i in 0..=100 {
            let k = PI * i as f64 / 100.0;
            let v = contraction_constant(k).unwrap();
            assert!(v > prev);
            assert_eq!(v < 1.0, k < alpha());
            prev = v;
        }
    }
}
