//! Angles between subspaces of a finite-dimensional inner-product space,
//! Schur averaging of projections, and the search for a group element that
//! moves a subspace by at least `π/4`.
//!
//! The angle `∠(U, W)` is the larger of the two directed angles
//! `sup_{u∈U} inf_{w∈W} ∠(u, w)`. For a directed pair the sine is the
//! largest singular value of `Π_{W⊥}·basis_U` and the cosine the smallest
//! singular value of `basis_W†·basis_U` (zero when `dim U > dim W`); the
//! angle is recovered with `atan2` so it stays accurate near `0` and `π/2`.

use std::f64::consts::FRAC_PI_4;

use nalgebra::DVector;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::{adjoint_matrix, haar_sample, split_seed, GroupElement, GroupKind};
use crate::linalg::{c, complexify, max_abs_entry, op_norm, singular_values, CMatrix, RMatrix};
use crate::search::{argmax, maximize_locally, par_map, LocalSearch};

/// Orthonormality tolerance (max entry of `B†B − I`).
pub const TOL_ORTHONORMAL: f64 = 1e-10;

/// Proper nontrivial subspace given by an orthonormal column basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace {
    basis: CMatrix,
}

impl Subspace {
    /// Wraps an `n×k` matrix with orthonormal columns, `1 ≤ k ≤ n − 1`.
    pub fn new(basis: CMatrix) -> Result<Self> {
        let (n, k) = basis.shape();
        if k == 0 || k >= n {
            return Err(Error::DegenerateSubspace { k, n });
        }
        let defect = max_abs_entry(&(basis.adjoint() * &basis - CMatrix::identity(k, k)));
        if defect > TOL_ORTHONORMAL {
            return Err(Error::InvalidInput(format!(
                "basis columns are not orthonormal (deviation {defect:.3e})"
            )));
        }
        Ok(Subspace { basis })
    }

    /// Span of the columns of `m`, orthonormalized by QR.
    pub fn span(m: &CMatrix) -> Result<Self> {
        let (n, k) = m.shape();
        if k == 0 || k >= n {
            return Err(Error::DegenerateSubspace { k, n });
        }
        let qr = m.clone().qr();
        let r = qr.r();
        let scale = (0..k).map(|i| r[(i, i)].norm()).fold(0.0, f64::max);
        if (0..k).any(|i| r[(i, i)].norm() <= 1e-10 * scale.max(f64::MIN_POSITIVE)) {
            return Err(Error::InvalidInput("spanning vectors are linearly dependent".into()));
        }
        Subspace::new(qr.q())
    }

    pub fn span_real(m: &RMatrix) -> Result<Self> {
        Subspace::span(&complexify(m))
    }

    /// Span of the given vectors.
    pub fn from_vectors(vectors: &[DVector<Complex64>]) -> Result<Self> {
        let n = vectors.first().map_or(0, |v| v.len());
        if vectors.iter().any(|v| v.len() != n) {
            return Err(Error::InvalidInput("vectors have different lengths".into()));
        }
        Subspace::span(&CMatrix::from_columns(vectors))
    }

    pub fn basis(&self) -> &CMatrix {
        &self.basis
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    /// Orthogonal projection `Π = B B†`.
    pub fn projector(&self) -> CMatrix {
        &self.basis * self.basis.adjoint()
    }

    /// Image `A·W` under an invertible map, re-orthonormalized.
    pub fn transformed(&self, a: &CMatrix) -> Result<Subspace> {
        if a.ncols() != self.ambient_dim() || a.nrows() != self.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim(),
                got: a.ncols(),
            });
        }
        Subspace::span(&(a * &self.basis))
    }
}

fn directed_angle(u: &Subspace, w: &Subspace) -> Result<f64> {
    let cross = w.basis.adjoint() * &u.basis;
    let residual = &u.basis - &w.basis * &cross;
    let sin = op_norm(&residual)?.min(1.0);
    let cos = if u.dim() > w.dim() {
        0.0
    } else {
        singular_values(&cross)?
            .into_iter()
            .fold(f64::INFINITY, f64::min)
            .clamp(0.0, 1.0)
    };
    Ok(sin.atan2(cos))
}

/// `∠(U, W) ∈ [0, π/2]`.
pub fn angle_between(u: &Subspace, w: &Subspace) -> Result<f64> {
    if u.ambient_dim() != w.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: u.ambient_dim(),
            got: w.ambient_dim(),
        });
    }
    Ok(directed_angle(u, w)?.max(directed_angle(w, u)?))
}

/// Orthogonal complement, completed by QR of `[basis | I]` and then
/// re-orthonormalized against the basis.
pub fn perp(w: &Subspace) -> Result<Subspace> {
    let (n, k) = w.basis.shape();
    let mut aug = CMatrix::zeros(n, k + n);
    aug.view_mut((0, 0), (n, k)).copy_from(&w.basis);
    aug.view_mut((0, k), (n, n)).copy_from(&CMatrix::identity(n, n));
    let q = aug.qr().q();
    let rest = q.columns(k, n - k).into_owned();
    let cleaned = &rest - &w.basis * (w.basis.adjoint() * &rest);
    Subspace::new(cleaned.qr().q())
}

/// `tr(AB)`.
pub fn trace_of_product(a: &CMatrix, b: &CMatrix) -> Result<Complex64> {
    if a.ncols() != b.nrows() || a.nrows() != b.ncols() {
        return Err(Error::DimensionMismatch {
            expected: a.ncols(),
            got: b.nrows(),
        });
    }
    Ok((a * b).trace())
}

/// A finite-dimensional unitary (or orthogonal) representation of a group kind.
pub trait Representation: Sync {
    fn group_kind(&self) -> &GroupKind;
    fn dim(&self) -> usize;
    fn action(&self, g: &GroupElement) -> CMatrix;
    /// Caller-asserted irreducibility over the complex numbers.
    fn is_irreducible(&self) -> bool;
}

/// The adjoint representation on the Lie algebra.
#[derive(Clone, Debug)]
pub struct AdjointRepresentation {
    kind: GroupKind,
}

impl AdjointRepresentation {
    pub fn new(kind: GroupKind) -> Result<Self> {
        kind.validate()?;
        Ok(AdjointRepresentation { kind })
    }
}

impl Representation for AdjointRepresentation {
    fn group_kind(&self) -> &GroupKind {
        &self.kind
    }

    fn dim(&self) -> usize {
        self.kind.algebra_dim()
    }

    fn action(&self, g: &GroupElement) -> CMatrix {
        complexify(&adjoint_matrix(g).matrix)
    }

    /// The complexified adjoint representation is irreducible exactly when
    /// the algebra is simple.
    fn is_irreducible(&self) -> bool {
        self.kind.is_simple()
    }
}

/// The defining representation `g ↦ g`.
#[derive(Clone, Debug)]
pub struct DefiningRepresentation {
    kind: GroupKind,
}

impl DefiningRepresentation {
    pub fn new(kind: GroupKind) -> Result<Self> {
        kind.validate()?;
        Ok(DefiningRepresentation { kind })
    }
}

impl Representation for DefiningRepresentation {
    fn group_kind(&self) -> &GroupKind {
        &self.kind
    }

    fn dim(&self) -> usize {
        self.kind.matrix_dim()
    }

    fn action(&self, g: &GroupElement) -> CMatrix {
        g.matrix().clone()
    }

    fn is_irreducible(&self) -> bool {
        !self.kind.is_product()
    }
}

/// Largest homomorphism defect `max(|ρ(e) − I|, |ρ(gh) − ρ(g)ρ(h)|)` over
/// `pairs` random pairs.
pub fn representation_defect(rep: &dyn Representation, pairs: usize, seed: u64) -> f64 {
    let kind = rep.group_kind();
    let n = rep.dim();
    let e = rep.action(&GroupElement::identity(kind));
    let mut worst = max_abs_entry(&(e - CMatrix::identity(n, n)));
    for i in 0..pairs as u64 {
        let g = haar_sample(kind, split_seed(seed, 2 * i));
        let h = haar_sample(kind, split_seed(seed, 2 * i + 1));
        let lhs = rep.action(&(&g * &h));
        let rhs = rep.action(&g) * rep.action(&h);
        worst = worst.max(max_abs_entry(&(lhs - rhs)));
    }
    worst
}

/// Result of [`schur_average`].
#[derive(Clone, Debug, Serialize)]
pub struct SchurAverage {
    #[serde(skip)]
    pub matrix: CMatrix,
    /// `‖M − (k/n)·I‖_op`.
    pub deviation: f64,
    /// The scalar `k/n` predicted by Schur's lemma.
    pub expected_scalar: f64,
    pub trace: f64,
    pub num_samples: usize,
}

/// `(1/m)·Σ Π_{ρ(g_i) W}` over the given elements.
pub fn average_projection(rep: &dyn Representation, w: &Subspace, elements: &[GroupElement]) -> Result<CMatrix> {
    check_ambient(rep, w)?;
    let n = rep.dim();
    let projections = par_map(elements.len(), |i| {
        let b = rep.action(&elements[i]) * w.basis();
        &b * b.adjoint()
    });
    let mut sum = CMatrix::zeros(n, n);
    for p in projections {
        sum += p;
    }
    Ok(sum / c(elements.len().max(1) as f64, 0.0))
}

/// Monte-Carlo estimate of `∫_G Π_{gW} dg` over `num_samples` Haar samples
/// (seeded with [`split_seed`]`(seed, i)`), and its distance to `(k/n)·I`.
pub fn schur_average(rep: &dyn Representation, w: &Subspace, num_samples: usize, seed: u64) -> Result<SchurAverage> {
    if !rep.is_irreducible() {
        return Err(Error::Precondition("representation is not flagged irreducible".into()));
    }
    if num_samples < 100 {
        return Err(Error::Precondition(format!("num_samples {num_samples} < 100")));
    }
    check_ambient(rep, w)?;
    let kind = rep.group_kind();
    let n = rep.dim();
    const CHUNK: usize = 256;
    let chunks = num_samples.div_ceil(CHUNK);
    let partial = par_map(chunks, |ci| {
        let mut acc = CMatrix::zeros(n, n);
        for i in ci * CHUNK..((ci + 1) * CHUNK).min(num_samples) {
            let g = haar_sample(kind, split_seed(seed, i as u64));
            let b = rep.action(&g) * w.basis();
            acc += &b * b.adjoint();
        }
        acc
    });
    let mut m = CMatrix::zeros(n, n);
    for p in partial {
        m += p;
    }
    m /= c(num_samples as f64, 0.0);
    let lambda = w.dim() as f64 / n as f64;
    let deviation = op_norm(&(&m - CMatrix::identity(n, n) * c(lambda, 0.0)))?;
    let trace = m.trace().re;
    Ok(SchurAverage {
        matrix: m,
        deviation,
        expected_scalar: lambda,
        trace,
        num_samples,
    })
}

/// Best element found by [`find_large_angle`].
#[derive(Clone, Debug)]
pub struct LargeAngle {
    pub element: GroupElement,
    pub angle: f64,
    /// Best angle among the random probes, before refinement.
    pub probe_angle: f64,
}

/// Target angle of the search: `π/4 − 10⁻³`.
pub fn large_angle_target() -> f64 {
    FRAC_PI_4 - 1e-3
}

/// Searches for `g` with `∠(W, gW) ≥ π/4`: `budget` Haar probes, then 200
/// steps of multiplicative coordinate ascent from the best probe. Returns
/// [`Error::SearchExhausted`] if the best angle stays below
/// [`large_angle_target`].
pub fn find_large_angle(rep: &dyn Representation, w: &Subspace, budget: usize, seed: u64) -> Result<LargeAngle> {
    if !rep.is_irreducible() {
        return Err(Error::Precondition("representation is not flagged irreducible".into()));
    }
    if budget == 0 {
        return Err(Error::Precondition("budget must be positive".into()));
    }
    check_ambient(rep, w)?;
    let kind = rep.group_kind();
    let objective = |g: &GroupElement| -> f64 {
        w.transformed(&rep.action(g))
            .and_then(|gw| angle_between(w, &gw))
            .unwrap_or(0.0)
    };
    let probes = par_map(budget, |i| {
        let g = haar_sample(kind, split_seed(seed, i as u64));
        let v = objective(&g);
        (g, v)
    });
    let values: Vec<f64> = probes.iter().map(|p| p.1).collect();
    let best = argmax(&values).expect("budget > 0");
    let (start, probe_angle) = probes.into_iter().nth(best).expect("index in range");
    let settings = LocalSearch {
        ceiling: std::f64::consts::FRAC_PI_2 - 1e-12,
        ..LocalSearch::default()
    };
    let (element, angle) = maximize_locally(kind, start, probe_angle, objective, settings);
    let target = large_angle_target();
    if angle < target {
        return Err(Error::SearchExhausted { best: angle, target });
    }
    Ok(LargeAngle {
        element,
        angle,
        probe_angle,
    })
}

fn check_ambient(rep: &dyn Representation, w: &Subspace) -> Result<()> {
    if rep.dim() != w.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: rep.dim(),
            got: w.ambient_dim(),
        });
    }
    Ok(())
}
