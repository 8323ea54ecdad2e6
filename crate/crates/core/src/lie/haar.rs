//! Haar sampling and deterministic seeding.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{op_norm_algebra_spectral, AlgebraVector, GroupElement, GroupKind};
use crate::linalg::{c, CMatrix, RMatrix};

/// SplitMix64 finalizer.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives the seed of task `index` from a parent seed:
/// `splitmix64(seed ⊕ splitmix64(index + 1))`. All data-parallel Monte-Carlo
/// loops seed their per-sample generators this way, so results do not
/// depend on thread scheduling.
pub fn split_seed(seed: u64, index: u64) -> u64 {
    splitmix64(seed ^ splitmix64(index.wrapping_add(1)))
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Haar-distributed element of `kind`, deterministic in `seed`.
pub fn haar_sample(kind: &GroupKind, seed: u64) -> GroupElement {
    haar_sample_rng(kind, &mut rng_from_seed(seed))
}

/// Haar sample drawn from an existing generator. Product factors are drawn
/// in order from the same stream.
///
/// # Panics
/// Panics if `kind` is unsupported.
pub fn haar_sample_rng<R: Rng + ?Sized>(kind: &GroupKind, rng: &mut R) -> GroupElement {
    kind.validate().expect("supported group kind");
    let n = kind.matrix_dim();
    let mut m = CMatrix::zeros(n, n);
    for block in kind.blocks() {
        let d = block.kind.matrix_dim();
        let sub = match block.kind {
            GroupKind::SpecialUnitary(_) => haar_unitary(d, rng),
            GroupKind::SpecialOrthogonal(_) => haar_orthogonal(d, rng).map(|x| c(x, 0.0)),
            GroupKind::Product(_) => unreachable!(),
        };
        m.view_mut((block.offset, block.offset), (d, d)).copy_from(&sub);
    }
    GroupElement::new(m, kind.clone()).expect("QR factor is unitary")
}

/// QR of a complex Ginibre matrix with the phases of `diag(R)` moved into `Q`.
fn haar_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> CMatrix {
    let z = CMatrix::from_fn(d, d, |_, _| {
        c(rng.sample::<f64, _>(StandardNormal), rng.sample::<f64, _>(StandardNormal))
    });
    let qr = z.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..d {
        let rjj = r[(j, j)];
        let ph = if rjj.norm() > 0.0 { rjj / rjj.norm() } else { c(1.0, 0.0) };
        for i in 0..d {
            q[(i, j)] *= ph;
        }
    }
    q
}

/// Real analogue, with a column flip to land in the identity component.
fn haar_orthogonal<R: Rng + ?Sized>(d: usize, rng: &mut R) -> RMatrix {
    let z = RMatrix::from_fn(d, d, |_, _| rng.sample::<f64, _>(StandardNormal));
    let qr = z.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..d {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    if q.determinant() < 0.0 {
        q.column_mut(0).neg_mut();
    }
    q
}

/// Algebra element with i.i.d. standard Gaussian coordinates.
pub fn random_algebra<R: Rng + ?Sized>(kind: &GroupKind, rng: &mut R) -> AlgebraVector {
    let coords: Vec<f64> = (0..kind.algebra_dim())
        .map(|_| rng.sample(StandardNormal))
        .collect();
    AlgebraVector::from_coords(kind, &coords).expect("supported group kind")
}

/// Random algebra element rescaled to operator norm `norm`.
pub fn random_algebra_with_norm<R: Rng + ?Sized>(
    kind: &GroupKind,
    norm: f64,
    rng: &mut R,
) -> AlgebraVector {
    loop {
        let x = random_algebra(kind, rng);
        let n = op_norm_algebra_spectral(&x);
        if n > 1e-12 {
            return x.scale(norm / n);
        }
    }
}
