//! Distances in quotients `G/H`: coset distances, lower estimates of the
//! diameter, the icosahedral subgroup of SO(3), the diagonal subgroup of
//! `H×H`, projection monotonicity and the Killing-metric comparison.
//!
//! Since `G` acts transitively by isometries, `diam(G/H) = sup_g d(gH, H)`
//! with `d(gH, H) = min_{h∈H} |g·h|_G`.

use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::{Quaternion, Rotation3, UnitQuaternion};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::{
    adjoint_angle, adjoint_matrix, distance, exp_map, haar_sample, log_domain_limit, log_map,
    op_norm_group, rotation_about, rotation_so3, split_seed, AlgebraVector, GroupElement,
    GroupKind,
};
use crate::linalg::{max_abs_entry_real, RMatrix};
use crate::search::{argmax, maximize_locally, par_map, LocalSearch};

/// Tolerance for identifying group elements (max entry of the adjoint difference).
pub const DEDUP_TOL: f64 = 1e-9;

/// A finite subgroup, or a finite sample of an infinite one.
#[derive(Clone, Debug)]
pub struct SubgroupSample {
    elements: Vec<GroupElement>,
    adjoints: Vec<RMatrix>,
    exact: bool,
}

impl SubgroupSample {
    /// Validates that the list is non-empty, of one kind, contains the
    /// identity and is closed under inversion (modulo the center).
    pub fn new(elements: Vec<GroupElement>, exact: bool) -> Result<Self> {
        let first = elements
            .first()
            .ok_or_else(|| Error::InvalidInput("empty subgroup sample".into()))?;
        let kind = first.kind().clone();
        for g in &elements {
            kind.ensure_same(g.kind())?;
        }
        let adjoints: Vec<RMatrix> = elements.iter().map(|g| adjoint_matrix(g).matrix).collect();
        let n = kind.algebra_dim();
        let id = RMatrix::identity(n, n);
        if !adjoints.iter().any(|a| max_abs_entry_real(&(a - &id)) <= DEDUP_TOL) {
            return Err(Error::InvalidInput("subgroup sample lacks the identity".into()));
        }
        let missing = (0..adjoints.len()).into_par_iter().find_any(|&i| {
            let inv = adjoints[i].transpose();
            !adjoints.iter().any(|b| max_abs_entry_real(&(b - &inv)) <= DEDUP_TOL)
        });
        if let Some(i) = missing {
            return Err(Error::InvalidInput(format!(
                "subgroup sample is not closed under inversion (element {i})"
            )));
        }
        Ok(SubgroupSample {
            elements,
            adjoints,
            exact,
        })
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    /// Whether the list is the entire subgroup.
    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn kind(&self) -> &GroupKind {
        self.elements[0].kind()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The images under projection onto product factor `i`, with repeats
    /// removed.
    pub fn projected(&self, i: usize) -> Result<SubgroupSample> {
        let mut out: Vec<GroupElement> = Vec::new();
        let mut ads: Vec<RMatrix> = Vec::new();
        for g in &self.elements {
            let f = g.factor(i)?;
            let a = adjoint_matrix(&f).matrix;
            if !ads.iter().any(|b| max_abs_entry_real(&(b - &a)) <= DEDUP_TOL) {
                ads.push(a);
                out.push(f);
            }
        }
        SubgroupSample::new(out, self.exact)
    }
}

/// `d(gH, H) = min_{h∈H} |g·h|_G` (an upper bound when `H` is only sampled).
pub fn coset_distance(g: &GroupElement, h: &SubgroupSample) -> Result<f64> {
    g.kind().ensure_same(h.kind())?;
    let ag = adjoint_matrix(g).matrix;
    Ok(coset_distance_adjoint(&ag, h))
}

fn coset_distance_adjoint(ag: &RMatrix, h: &SubgroupSample) -> f64 {
    h.adjoints
        .iter()
        .map(|ah| adjoint_angle(&(ag * ah)))
        .fold(f64::INFINITY, f64::min)
}

/// Closes a generating set under multiplication, identifying elements with
/// equal adjoint action. Errors once more than `cap` elements appear.
pub fn close_under_products(generators: &[GroupElement], cap: usize) -> Result<Vec<GroupElement>> {
    let kind = generators
        .first()
        .ok_or_else(|| Error::InvalidInput("no generators".into()))?
        .kind()
        .clone();
    let mut elements = vec![GroupElement::identity(&kind)];
    let mut ads = vec![adjoint_matrix(&elements[0]).matrix];
    let mut frontier = 0;
    while frontier < elements.len() {
        let g = elements[frontier].clone();
        frontier += 1;
        for s in generators {
            let p = g.try_mul(s)?;
            let a = adjoint_matrix(&p).matrix;
            if !ads.iter().any(|b| max_abs_entry_real(&(b - &a)) <= DEDUP_TOL) {
                if elements.len() == cap {
                    return Err(Error::CapacityExceeded(format!(
                        "closure exceeds {cap} elements"
                    )));
                }
                ads.push(a);
                elements.push(p);
            }
        }
    }
    Ok(elements)
}

/// Generators of the icosahedral rotation group: the fifth turn about the
/// 5-fold axis `e_z`, and the half turn about the 2-fold axis in the
/// `xz`-plane halfway between `e_z` and an adjacent 5-fold axis.
pub fn icosahedral_generators() -> [GroupElement; 2] {
    let half = 0.5 * (1.0 / 5.0f64.sqrt()).acos();
    [
        rotation_so3(2, 2.0 * PI / 5.0),
        rotation_about([half.sin(), 0.0, half.cos()], PI),
    ]
}

/// The 60 rotations of the icosahedral group `I ≅ A₅`.
pub fn icosahedral_group() -> Result<SubgroupSample> {
    let elements = close_under_products(&icosahedral_generators(), 1000)?;
    if elements.len() != 60 {
        return Err(Error::Numerical(format!(
            "icosahedral closure produced {} elements",
            elements.len()
        )));
    }
    SubgroupSample::new(elements, true)
}

/// `{(g, g)}` for `n` Haar samples `g` of `factor`, their inverses and the
/// identity: a sample of the diagonal subgroup of `factor × factor`.
pub fn diagonal_sample(factor: &GroupKind, n: usize, seed: u64) -> Result<SubgroupSample> {
    factor.validate()?;
    let kind = GroupKind::product(vec![factor.clone(), factor.clone()]);
    let mut elements = vec![GroupElement::identity(&kind)];
    for i in 0..n {
        let g = haar_sample(factor, split_seed(seed, i as u64));
        let gi = g.inverse();
        elements.push(GroupElement::from_blocks(&kind, &[g.clone(), g])?);
        elements.push(GroupElement::from_blocks(&kind, &[gi.clone(), gi])?);
    }
    SubgroupSample::new(elements, false)
}

#[derive(Clone, Debug, Serialize)]
pub struct DiameterEstimate {
    /// `max_g d(gH, H)` over the probes after refinement.
    pub estimate: f64,
    /// Best value among the unrefined Haar probes.
    pub probe_estimate: f64,
    /// True when `H` is exact, so the estimate is a lower bound on the diameter.
    pub lower_bound: bool,
    pub num_probes: usize,
    #[serde(skip)]
    pub witness: GroupElement,
}

/// Number of top probes refined by local search.
const REFINED_PROBES: usize = 4;

/// Haar probes of `d(gH, H)`, the best few refined by local ascent.
pub fn diameter_lower_estimate(
    kind: &GroupKind,
    h: &SubgroupSample,
    num_probes: usize,
    seed: u64,
) -> Result<DiameterEstimate> {
    if num_probes < 100 {
        return Err(Error::Precondition(format!("num_probes {num_probes} < 100")));
    }
    kind.ensure_same(h.kind())?;
    let objective = |g: &GroupElement| coset_distance_adjoint(&adjoint_matrix(g).matrix, h);
    let probes = par_map(num_probes, |i| {
        let g = haar_sample(kind, split_seed(seed, i as u64));
        let v = objective(&g);
        (g, v)
    });
    let mut order: Vec<usize> = (0..num_probes).collect();
    order.sort_by(|&a, &b| probes[b].1.total_cmp(&probes[a].1).then(a.cmp(&b)));
    let probe_estimate = probes[order[0]].1;
    let refined: Vec<(GroupElement, f64)> = order[..REFINED_PROBES]
        .iter()
        .map(|&i| {
            let (g, v) = probes[i].clone();
            maximize_locally(kind, g, v, objective, LocalSearch::default())
        })
        .collect();
    let values: Vec<f64> = refined.iter().map(|r| r.1).collect();
    let best = argmax(&values).expect("non-empty");
    Ok(DiameterEstimate {
        estimate: values[best].max(probe_estimate),
        probe_estimate,
        lower_bound: h.is_exact(),
        num_probes,
        witness: refined[best].0.clone(),
    })
}

/// Brute-force `sup_g min_{h∈H} |g h|` over a ZYZ Euler-angle grid of SO(3)
/// with the given step, using unit quaternions: the rotation angle of
/// `p⁻¹q` is `2·acos|⟨p, q⟩|`.
pub fn so3_grid_diameter(h: &SubgroupSample, resolution: f64) -> Result<f64> {
    if *h.kind() != GroupKind::so(3) {
        return Err(Error::UnsupportedKind(h.kind().to_string()));
    }
    if !(resolution > 0.0 && resolution <= 1.0) {
        return Err(Error::InvalidInput(format!("resolution {resolution} outside (0, 1]")));
    }
    let quats: Vec<Quaternion<f64>> = h
        .elements
        .iter()
        .map(|g| {
            let m = g.real_matrix();
            let r = Rotation3::from_matrix_unchecked(nalgebra::Matrix3::from_fn(|i, j| m[(i, j)]));
            *UnitQuaternion::from_rotation_matrix(&r).quaternion()
        })
        .collect();
    let na = (2.0 * PI / resolution).ceil() as usize;
    let nb = (PI / resolution).ceil() as usize + 1;
    let z = nalgebra::Vector3::z_axis();
    let y = nalgebra::Vector3::y_axis();
    let worst = (0..na * nb)
        .into_par_iter()
        .map(|ij| {
            let a = (ij / nb) as f64 * 2.0 * PI / na as f64;
            let b = ((ij % nb) as f64 * resolution).min(PI);
            let qab = UnitQuaternion::from_axis_angle(&z, a) * UnitQuaternion::from_axis_angle(&y, b);
            let mut worst = 0.0f64;
            for k in 0..na {
                let c = k as f64 * 2.0 * PI / na as f64;
                let q = *(qab * UnitQuaternion::from_axis_angle(&z, c)).quaternion();
                let best = quats.iter().map(|p| p.dot(&q).abs()).fold(0.0, f64::max);
                worst = worst.max(2.0 * best.min(1.0).acos());
            }
            worst
        })
        .reduce(|| 0.0, f64::max);
    Ok(worst)
}

/// An element of norm `π` on a one-parameter subgroup of `factor`.
pub fn norm_pi_element(factor: &GroupKind) -> Result<GroupElement> {
    factor.validate()?;
    let x = match factor {
        GroupKind::SpecialUnitary(d) => {
            let mut m = crate::linalg::CMatrix::zeros(*d, *d);
            m[(0, 0)] = crate::linalg::c(0.0, FRAC_PI_2);
            m[(d - 1, d - 1)] = crate::linalg::c(0.0, -FRAC_PI_2);
            AlgebraVector::new(m, factor.clone())?
        }
        GroupKind::SpecialOrthogonal(_) => AlgebraVector::rotation_generator(factor, 0, 1, PI)?,
        GroupKind::Product(_) => return Err(Error::UnsupportedKind(factor.to_string())),
    };
    Ok(exp_map(&x))
}

#[derive(Clone, Debug, Serialize)]
pub struct DiagonalEstimate {
    /// `min_{h'} max(d(h, h'), |h'|)` over the sampled and refined `h'`.
    pub value: f64,
    /// `|h|_G` of the chosen element, `π` up to rounding.
    pub h_norm: f64,
    pub num_probes: usize,
    #[serde(skip)]
    pub h: GroupElement,
    #[serde(skip)]
    pub best: GroupElement,
}

/// Distance from the coset of `(h, e)` to the diagonal in `factor × factor`,
/// where `|h| = π`: the minimum over `h'` of
/// `|(h, e)·(h', h')⁻¹| = max(d(h, h'), |h'|)`, probed at `e`, `h`, `num_probes`
/// Haar samples, and refined by local descent from the best few.
pub fn diagonal_quotient_estimate(factor: &GroupKind, num_probes: usize, seed: u64) -> Result<DiagonalEstimate> {
    let h = norm_pi_element(factor)?;
    let kind = GroupKind::product(vec![factor.clone(), factor.clone()]);
    let he = GroupElement::from_blocks(&kind, &[h.clone(), GroupElement::identity(factor)])?;
    let objective = |hp: &GroupElement| -> f64 {
        let diag = GroupElement::from_blocks(&kind, &[hp.clone(), hp.clone()]).expect("same factor kind");
        distance(&diag, &he).expect("same kind")
    };
    let mut candidates = vec![GroupElement::identity(factor), h.clone()];
    candidates.extend((0..num_probes).map(|i| haar_sample(factor, split_seed(seed, i as u64))));
    let values = par_map(candidates.len(), |i| objective(&candidates[i]));
    let mut order: Vec<usize> = (0..candidates.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
    let mut best = (candidates[order[0]].clone(), values[order[0]]);
    for &i in order.iter().take(REFINED_PROBES) {
        let (g, neg) = maximize_locally(
            factor,
            candidates[i].clone(),
            -values[i],
            |g| -objective(g),
            LocalSearch::default(),
        );
        if -neg < best.1 {
            best = (g, -neg);
        }
    }
    Ok(DiagonalEstimate {
        value: best.1,
        h_norm: op_norm_group(&h),
        num_probes,
        h,
        best: best.0,
    })
}

/// `(d(gH, H), d(π(g)π(H), π(H)))` with `π` the projection onto the first
/// factor of a two-factor product.
pub fn projection_monotonicity_check(g: &GroupElement, h: &SubgroupSample) -> Result<(f64, f64)> {
    match g.kind() {
        GroupKind::Product(fs) if fs.len() == 2 => {}
        other => {
            return Err(Error::InvalidInput(format!(
                "expected a product of two factors, got {other}"
            )))
        }
    }
    let full = coset_distance(g, h)?;
    let projected = coset_distance(&g.factor(0)?, &h.projected(0)?)?;
    Ok((full, projected))
}

#[derive(Clone, Debug, Serialize)]
pub struct KillingComparison {
    /// `|g|_G`.
    pub d: f64,
    /// `√(−B(x, x))` for `x = log g`.
    pub d_killing: f64,
    /// `dim 𝔤`.
    pub algebra_dim: usize,
    /// `d ≤ d_K + 1e-9`.
    pub lower_holds: bool,
    /// `d_K ≤ (3√N/2)·d + 1e-9`.
    pub upper_holds: bool,
}

/// Compares `|g|_G` with the Killing-form length of `log g`, using
/// `B(x, y) = 2d·tr(xy)` on `su(d)` and `(d − 2)·tr(xy)` on `so(d)`, summed
/// over the factors of a product.
pub fn killing_comparison(g: &GroupElement) -> Result<KillingComparison> {
    let d = op_norm_group(g);
    let limit = log_domain_limit();
    if d >= limit {
        return Err(Error::LogDomain { norm: d, limit });
    }
    let x = log_map(g)?;
    let mut b = 0.0;
    for block in g.kind().blocks() {
        let n = block.kind.matrix_dim();
        let sub = x.matrix().view((block.offset, block.offset), (n, n));
        let tr = (sub * sub).trace().re;
        let scale = match block.kind {
            GroupKind::SpecialUnitary(m) => 2.0 * m as f64,
            GroupKind::SpecialOrthogonal(m) => m as f64 - 2.0,
            GroupKind::Product(_) => unreachable!(),
        };
        b += scale * tr;
    }
    let d_killing = (-b).max(0.0).sqrt();
    let algebra_dim = g.kind().algebra_dim();
    Ok(KillingComparison {
        d,
        d_killing,
        algebra_dim,
        lower_holds: d <= d_killing + 1e-9,
        upper_holds: d_killing <= 1.5 * (algebra_dim as f64).sqrt() * d + 1e-9,
    })
}
