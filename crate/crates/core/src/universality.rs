//! Gate-set universality by covering: enumerate the words in the gates,
//! build a net of the `2β`-ball about the identity, and check that every net
//! point lies within `β − spacing` of some word.
//!
//! Everything is computed through adjoint matrices, so global phases of the
//! gates are invisible and `SU(d)` is treated as `PSU(d)`.
//!
//! Covering argument. The net is built in algebra coordinates: a cubic
//! lattice of step `δ = spacing/(c·√N)`, where `|x|_𝔤 ≤ c·‖x‖` in the
//! orthonormal coordinates, keeps every point with `|y|_𝔤 ≤ r + spacing/2`
//! and pulls those beyond `r` radially back onto the sphere of radius `r`.
//! A point `x` of the ball is within `spacing/2` of a lattice point, which
//! moves by at most another `spacing/2` when pulled back, and `exp` does not
//! increase distances (`d(exp x, exp y) ≤ |x − y|_𝔤`). So every element of
//! norm at most `r` is within `spacing` of a net point, and a net point at
//! distance `≤ β − spacing` from a word certifies its whole neighborhood.

use std::collections::HashMap;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::constants::solve_beta;
use crate::error::{Error, Result};
use crate::io::MatrixJson;
use crate::lie::{
    adjoint_angle, adjoint_matrix, euclidean_to_operator_constant, exp_map, log_domain_limit,
    op_norm_algebra_spectral, operator_to_euclidean_constant, random_algebra_with_norm,
    rng_from_seed, rotation_so3, split_seed, AlgebraVector, GroupElement, GroupKind,
};
use crate::linalg::{rotation3_angle, RMatrix};
use crate::quotient::icosahedral_generators;

pub const DEFAULT_WORD_CAP: usize = 2_000_000;
pub const DEFAULT_DEDUP_TOL: f64 = 1e-9;
/// Largest net accepted by [`ball_net`].
pub const NET_CAP: usize = 2_000_000;
/// Largest lattice box scanned by [`ball_net`].
const LATTICE_CAP: usize = 50_000_000;
/// Frontier elements multiplied per parallel batch.
const BATCH: usize = 1 << 15;
const NO_PARENT: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub struct GateSet {
    kind: GroupKind,
    gates: Vec<GroupElement>,
    labels: Vec<String>,
    include_inverses: bool,
}

impl GateSet {
    pub fn new(kind: GroupKind, gates: Vec<GroupElement>, labels: Vec<String>, include_inverses: bool) -> Result<Self> {
        kind.validate()?;
        if gates.is_empty() {
            return Err(Error::InvalidInput("empty gate set".into()));
        }
        if labels.len() != gates.len() {
            return Err(Error::InvalidInput(format!(
                "{} labels for {} gates",
                labels.len(),
                gates.len()
            )));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::InvalidInput(format!("duplicate label {l:?}")));
            }
        }
        for g in &gates {
            kind.ensure_same(g.kind())?;
        }
        Ok(GateSet {
            kind,
            gates,
            labels,
            include_inverses,
        })
    }

    /// Rotations by 1 radian about the `z` and `x` axes of SO(3).
    pub fn two_rotations() -> Self {
        GateSet::new(
            GroupKind::so(3),
            vec![rotation_so3(2, 1.0), rotation_so3(0, 1.0)],
            vec!["Rz(1)".into(), "Rx(1)".into()],
            true,
        )
        .expect("valid built-in gate set")
    }

    /// A 5-fold and a 2-fold rotation generating the icosahedral group.
    pub fn icosahedral() -> Self {
        let [a, b] = icosahedral_generators();
        GateSet::new(GroupKind::so(3), vec![a, b], vec!["C5".into(), "C2".into()], true)
            .expect("valid built-in gate set")
    }

    pub fn identity(kind: &GroupKind) -> Result<Self> {
        GateSet::new(kind.clone(), vec![GroupElement::identity(kind)], vec!["I".into()], true)
    }

    /// The same gates, each multiplied by `exp(i·phase)`. Unitary kinds only.
    pub fn with_global_phases(&self, phases: &[f64]) -> Result<Self> {
        if self.kind.is_orthogonal() || phases.len() != self.gates.len() {
            return Err(Error::InvalidInput(
                "global phases need a unitary kind and one phase per gate".into(),
            ));
        }
        let gates = self
            .gates
            .iter()
            .zip(phases)
            .map(|(g, &p)| g.with_global_phase(p))
            .collect();
        Ok(GateSet { gates, ..self.clone() })
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn gates(&self) -> &[GroupElement] {
        &self.gates
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn include_inverses(&self) -> bool {
        self.include_inverses
    }

    /// The letters words are spelled in: the gates, then their inverses.
    fn letters(&self) -> Vec<(String, GroupElement)> {
        let mut out: Vec<(String, GroupElement)> = self
            .labels
            .iter()
            .cloned()
            .zip(self.gates.iter().cloned())
            .collect();
        if self.include_inverses {
            out.extend(
                self.labels
                    .iter()
                    .zip(&self.gates)
                    .map(|(l, g)| (format!("{l}^-1"), g.inverse())),
            );
        }
        out
    }
}

/// `c = a·b` for column-major `n×n` slices.
fn mul_into(a: &[f64], b: &[f64], n: usize, c: &mut [f64]) {
    for j in 0..n {
        for i in 0..n {
            let mut s = 0.0;
            for k in 0..n {
                s += a[k * n + i] * b[j * n + k];
            }
            c[j * n + i] = s;
        }
    }
}

/// `c = aᵀ·b` for column-major `n×n` slices.
fn tmul_into(a: &[f64], b: &[f64], n: usize, c: &mut [f64]) {
    for j in 0..n {
        for i in 0..n {
            let mut s = 0.0;
            for k in 0..n {
                s += a[i * n + k] * b[j * n + k];
            }
            c[j * n + i] = s;
        }
    }
}

/// Largest rotation angle of a column-major orthogonal `n×n` slice.
fn slice_angle(m: &[f64], n: usize) -> f64 {
    let r = RMatrix::from_column_slice(n, n, m);
    if n == 3 {
        rotation3_angle(&r)
    } else {
        adjoint_angle(&r)
    }
}

/// Deduplicated breadth-first enumeration of the words in a gate set,
/// stored as adjoint matrices with parent pointers.
#[derive(Clone, Debug)]
pub struct WordStore {
    kind: GroupKind,
    n: usize,
    ads: Vec<f64>,
    parent: Vec<u32>,
    letter: Vec<u16>,
    length: Vec<u16>,
    letters: Vec<(String, GroupElement)>,
    dedup_tol: f64,
    index: HashMap<[i64; 3], u32>,
    chain: Vec<u32>,
    level_sizes: Vec<usize>,
    closure_detected: bool,
    truncated: bool,
}

impl WordStore {
    fn empty(gates: &GateSet, dedup_tol: f64) -> Self {
        let n = gates.kind.algebra_dim();
        WordStore {
            kind: gates.kind.clone(),
            n,
            ads: Vec::new(),
            parent: Vec::new(),
            letter: Vec::new(),
            length: Vec::new(),
            letters: gates.letters(),
            dedup_tol,
            index: HashMap::new(),
            chain: Vec::new(),
            level_sizes: Vec::new(),
            closure_detected: false,
            truncated: false,
        }
    }

    fn key(&self, ad: &[f64]) -> [i64; 3] {
        [0, 1, 2].map(|i| (ad[i] / self.dedup_tol).floor() as i64)
    }

    /// Index of a stored element whose adjoint matrix is within the dedup
    /// tolerance (entry-wise) of `ad`.
    pub fn find(&self, ad: &[f64]) -> Option<usize> {
        let nn = self.n * self.n;
        let key = self.key(ad);
        for dx in -1..=1 {
            for dy in -1..=1 {
                for dz in -1..=1 {
                    let k = [key[0] + dx, key[1] + dy, key[2] + dz];
                    let mut cur = self.index.get(&k).copied().unwrap_or(NO_PARENT);
                    while cur != NO_PARENT {
                        let i = cur as usize;
                        let stored = &self.ads[i * nn..(i + 1) * nn];
                        if stored.iter().zip(ad).all(|(a, b)| (a - b).abs() <= self.dedup_tol) {
                            return Some(i);
                        }
                        cur = self.chain[i];
                    }
                }
            }
        }
        None
    }

    fn push(&mut self, ad: &[f64], parent: u32, letter: u16, length: u16) {
        let i = self.parent.len() as u32;
        let key = self.key(ad);
        let head = self.index.insert(key, i).unwrap_or(NO_PARENT);
        self.chain.push(head);
        self.ads.extend_from_slice(ad);
        self.parent.push(parent);
        self.letter.push(letter);
        self.length.push(length);
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn adjoint(&self, i: usize) -> RMatrix {
        let nn = self.n * self.n;
        RMatrix::from_column_slice(self.n, self.n, &self.ads[i * nn..(i + 1) * nn])
    }

    /// Letter indices of the shortest word found for element `i`.
    fn word_letters(&self, i: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.length[i] as usize);
        let mut cur = i;
        while self.parent[cur] != NO_PARENT {
            out.push(self.letter[cur] as usize);
            cur = self.parent[cur] as usize;
        }
        out.reverse();
        out
    }

    /// Labels of the word for element `i`, leftmost factor first.
    pub fn word(&self, i: usize) -> Vec<String> {
        self.word_letters(i)
            .into_iter()
            .map(|l| self.letters[l].0.clone())
            .collect()
    }

    pub fn word_length(&self, i: usize) -> usize {
        self.length[i] as usize
    }

    /// The element obtained by multiplying out the word of `i`.
    pub fn element(&self, i: usize) -> GroupElement {
        self.word_letters(i)
            .into_iter()
            .fold(GroupElement::identity(&self.kind), |acc, l| &acc * &self.letters[l].1)
    }

    /// Number of elements first reached at each word length `1, 2, …`.
    pub fn level_sizes(&self) -> &[usize] {
        &self.level_sizes
    }

    /// Number of BFS levels run.
    pub fn levels_run(&self) -> usize {
        self.level_sizes.len()
    }

    pub fn max_word_length(&self) -> usize {
        self.length.iter().copied().max().unwrap_or(0) as usize
    }

    /// Set when a full level added nothing: the store is then the whole
    /// generated group.
    pub fn closure_detected(&self) -> bool {
        self.closure_detected
    }

    /// Set when the store hit its capacity.
    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn group_order(&self) -> Option<usize> {
        self.closure_detected.then(|| self.len())
    }

    pub fn dedup_tol(&self) -> f64 {
        self.dedup_tol
    }

    /// `|w|_G` for every stored element, in parallel.
    pub fn norms(&self) -> Vec<f64> {
        let nn = self.n * self.n;
        self.ads.par_chunks(nn).map(|m| slice_angle(m, self.n)).collect()
    }

    /// Largest entry-wise gap between a stored adjoint matrix and the
    /// adjoint matrix of its multiplied-out word, over the given indices.
    pub fn word_reproduction_error(&self, indices: &[usize]) -> f64 {
        indices
            .par_iter()
            .map(|&i| {
                let a = adjoint_matrix(&self.element(i)).matrix;
                (a - self.adjoint(i)).amax()
            })
            .reduce(|| 0.0, f64::max)
    }

    /// Whether every product of two stored elements is stored. Quadratic,
    /// limited to stores of at most 10 000 elements.
    pub fn is_closed_under_products(&self) -> Result<bool> {
        let m = self.len();
        if m > 10_000 {
            return Err(Error::CapacityExceeded(format!("{m} elements is too many for a pairwise check")));
        }
        let nn = self.n * self.n;
        Ok((0..m).into_par_iter().all(|i| {
            let mut buf = vec![0.0; nn];
            (0..m).all(|j| {
                mul_into(&self.ads[i * nn..(i + 1) * nn], &self.ads[j * nn..(j + 1) * nn], self.n, &mut buf);
                self.find(&buf).is_some()
            })
        }))
    }
}

/// [`generate_words_capped`] with the default capacity.
pub fn generate_words(gates: &GateSet, max_length: usize, dedup_tol: f64) -> Result<WordStore> {
    generate_words_capped(gates, max_length, dedup_tol, DEFAULT_WORD_CAP)
}

/// Level-synchronous BFS over words of length `1..=max_length`: each level
/// multiplies the previous level's new elements on the right by every
/// letter (in parallel), then inserts the unseen products in order. Stops
/// early when a level adds nothing (closure) or the store reaches `cap`
/// (truncation).
pub fn generate_words_capped(gates: &GateSet, max_length: usize, dedup_tol: f64, cap: usize) -> Result<WordStore> {
    if max_length == 0 {
        return Err(Error::Precondition("max_length must be at least 1".into()));
    }
    if !(1e-9..=1e-3).contains(&dedup_tol) {
        return Err(Error::Precondition(format!("dedup_tol {dedup_tol} outside [1e-9, 1e-3]")));
    }
    if cap == 0 || cap >= NO_PARENT as usize {
        return Err(Error::Precondition(format!("capacity {cap} out of range")));
    }
    let mut store = WordStore::empty(gates, dedup_tol);
    let n = store.n;
    let nn = n * n;
    let letter_ads: Vec<Vec<f64>> = store
        .letters
        .iter()
        .map(|(_, g)| adjoint_matrix(g).matrix.as_slice().to_vec())
        .collect();
    let nl = letter_ads.len();
    let id = RMatrix::identity(n, n);
    store.push(id.as_slice(), NO_PARENT, 0, 0);

    let (mut start, mut end) = (0usize, 1usize);
    'levels: for level in 1..=max_length {
        let mut added = 0;
        let mut batch_start = start;
        while batch_start < end {
            let batch_end = (batch_start + BATCH).min(end);
            let mut products = vec![0.0; (batch_end - batch_start) * nl * nn];
            products
                .par_chunks_mut(nl * nn)
                .enumerate()
                .for_each(|(j, slot)| {
                    let w = batch_start + j;
                    let a = &store.ads[w * nn..(w + 1) * nn];
                    for (l, b) in letter_ads.iter().enumerate() {
                        mul_into(a, b, n, &mut slot[l * nn..(l + 1) * nn]);
                    }
                });
            for (p, ad) in products.chunks(nn).enumerate() {
                if store.find(ad).is_some() {
                    continue;
                }
                if store.len() >= cap {
                    store.truncated = true;
                    store.level_sizes.push(added);
                    break 'levels;
                }
                let parent = (batch_start + p / nl) as u32;
                store.push(ad, parent, (p % nl) as u16, level as u16);
                added += 1;
            }
            batch_start = batch_end;
        }
        store.level_sizes.push(added);
        if added == 0 {
            store.closure_detected = true;
            break;
        }
        start = end;
        end = store.len();
    }
    Ok(store)
}

/// Lattice points, in algebra coordinates, of the net described in the
/// module docs.
pub fn ball_net_coords(kind: &GroupKind, radius: f64, spacing: f64) -> Result<Vec<Vec<f64>>> {
    kind.validate()?;
    if !(spacing > 0.0 && radius >= 0.0) {
        return Err(Error::Precondition("radius must be ≥ 0 and spacing > 0".into()));
    }
    if radius + spacing >= log_domain_limit() {
        return Err(Error::Precondition(format!(
            "radius + spacing = {} reaches the logarithm domain",
            radius + spacing
        )));
    }
    let dim = kind.algebra_dim();
    if radius == 0.0 {
        return Ok(vec![vec![0.0; dim]]);
    }
    let c = euclidean_to_operator_constant(kind);
    let r = operator_to_euclidean_constant(kind);
    let step = spacing / (c * (dim as f64).sqrt());
    let keep = radius + 0.5 * spacing;
    let reach = r * keep;
    let m = (reach / step).floor() as i64;
    let side = (2 * m + 1) as usize;
    let boxed = (side as f64).powi(dim as i32);
    if boxed > LATTICE_CAP as f64 {
        return Err(Error::CapacityExceeded(format!(
            "lattice box of {boxed:.3e} points for {kind} at spacing {spacing}"
        )));
    }
    let total = side.pow(dim as u32);
    let candidates: Vec<Vec<f64>> = (0..total)
        .into_par_iter()
        .filter_map(|mut idx| {
            let mut y = vec![0.0; dim];
            let mut sq = 0.0;
            for v in y.iter_mut() {
                *v = ((idx % side) as i64 - m) as f64 * step;
                idx /= side;
                sq += *v * *v;
            }
            (sq.sqrt() <= reach).then_some(y)
        })
        .collect();
    let net: Vec<Vec<f64>> = candidates
        .into_par_iter()
        .filter_map(|y| {
            let x = AlgebraVector::from_coords(kind, &y).expect("validated kind");
            let norm = op_norm_algebra_spectral(&x);
            if norm > keep {
                None
            } else if norm > radius {
                Some(y.iter().map(|v| v * radius / norm).collect())
            } else {
                Some(y)
            }
        })
        .collect();
    if net.len() > NET_CAP {
        return Err(Error::CapacityExceeded(format!("net of {} points", net.len())));
    }
    Ok(net)
}

/// A `spacing`-net of `{g : |g|_G ≤ radius}`.
pub fn ball_net(kind: &GroupKind, radius: f64, spacing: f64) -> Result<Vec<GroupElement>> {
    let coords = ball_net_coords(kind, radius, spacing)?;
    Ok(coords
        .par_iter()
        .map(|y| exp_map(&AlgebraVector::from_coords(kind, y).expect("validated kind")))
        .collect())
}

/// Distances from a batch of points to the nearest stored word.
#[derive(Clone, Debug)]
pub struct NearestWords {
    pub distances: Vec<f64>,
    pub nearest: Vec<usize>,
}

/// For each point, the distance to the nearest stored word and its index.
///
/// Only words of norm at most twice the largest point norm can be nearest,
/// since the identity is always stored. Candidates are sorted by norm and
/// scanned inside the triangle-inequality window `||w| − |b|| < best`, with
/// a trace lower bound on the angle before the exact computation.
pub fn nearest_words(points: &[GroupElement], words: &WordStore) -> Result<NearestWords> {
    for p in points {
        words.kind.ensure_same(p.kind())?;
    }
    let n = words.n;
    let nn = n * n;
    let point_ads: Vec<Vec<f64>> = points
        .par_iter()
        .map(|p| adjoint_matrix(p).matrix.as_slice().to_vec())
        .collect();
    let point_norms: Vec<f64> = point_ads.par_iter().map(|a| slice_angle(a, n)).collect();
    let reach = 2.0 * point_norms.iter().copied().fold(0.0, f64::max) + 1e-9;
    let norms = words.norms();
    let mut order: Vec<usize> = (0..words.len()).filter(|&i| norms[i] <= reach).collect();
    order.sort_by(|&a, &b| norms[a].total_cmp(&norms[b]).then(a.cmp(&b)));
    let cand_norms: Vec<f64> = order.iter().map(|&i| norms[i]).collect();
    let cand_ads: Vec<f64> = order
        .iter()
        .flat_map(|&i| words.ads[i * nn..(i + 1) * nn].iter().copied())
        .collect();
    let identity = order
        .iter()
        .position(|&i| words.parent[i] == NO_PARENT)
        .expect("identity is always stored");

    let results: Vec<(f64, usize)> = point_ads
        .par_iter()
        .zip(point_norms.par_iter())
        .map(|(pa, &pn)| {
            let mut best = pn;
            let mut best_idx = identity;
            let mut buf = vec![0.0; nn];
            let lo = cand_norms.partition_point(|&x| x < pn - best);
            for j in lo..cand_norms.len() {
                let gap = cand_norms[j] - pn;
                if gap >= best {
                    break;
                }
                if -gap >= best {
                    continue;
                }
                let wa = &cand_ads[j * nn..(j + 1) * nn];
                let tr: f64 = pa.iter().zip(wa).map(|(a, b)| a * b).sum();
                let lower = if n == 3 {
                    (0.5 * (tr - 1.0)).clamp(-1.0, 1.0).acos() - 1e-7
                } else {
                    (tr / n as f64).clamp(-1.0, 1.0).acos() - 1e-7
                };
                if lower >= best {
                    continue;
                }
                tmul_into(pa, wa, n, &mut buf);
                let d = slice_angle(&buf, n);
                if d < best {
                    best = d;
                    best_idx = j;
                }
            }
            (best, order[best_idx])
        })
        .collect();
    Ok(NearestWords {
        distances: results.iter().map(|r| r.0).collect(),
        nearest: results.iter().map(|r| r.1).collect(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Coverage {
    pub net_size: usize,
    pub covered: usize,
    /// Largest distance from a net point to its nearest word.
    pub max_distance: f64,
    /// `β − spacing − max_distance`.
    pub certified_margin: f64,
    #[serde(skip)]
    pub worst_point: GroupElement,
    #[serde(skip)]
    pub worst_word: usize,
}

/// Checks every net point against the word store: covered iff its nearest
/// word is within `beta − spacing`.
pub fn coverage_check(net: &[GroupElement], words: &WordStore, beta: f64, spacing: f64) -> Result<Coverage> {
    if !(spacing < beta && spacing.is_finite()) {
        return Err(Error::Precondition(format!("spacing {spacing} must be below β {beta}")));
    }
    if net.is_empty() {
        return Err(Error::InvalidInput("empty net".into()));
    }
    let near = nearest_words(net, words)?;
    let threshold = beta - spacing;
    let covered = near.distances.iter().filter(|&&d| d <= threshold).count();
    let worst = near
        .distances
        .iter()
        .enumerate()
        .fold(0, |w, (i, &d)| if d > near.distances[w] { i } else { w });
    let max_distance = near.distances[worst];
    Ok(Coverage {
        net_size: net.len(),
        covered,
        max_distance,
        certified_margin: threshold - max_distance,
        worst_point: net[worst].clone(),
        worst_word: near.nearest[worst],
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Universal,
    NotUniversal,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct UniversalityConfig {
    pub max_length: usize,
    pub spacing: f64,
    pub dedup_tol: f64,
    pub word_cap: usize,
    /// Random ball points checked after the net (0 disables the spot check).
    pub spot_checks: usize,
    pub seed: u64,
}

impl Default for UniversalityConfig {
    fn default() -> Self {
        UniversalityConfig {
            max_length: 12,
            spacing: 0.02,
            dedup_tol: DEFAULT_DEDUP_TOL,
            word_cap: DEFAULT_WORD_CAP,
            spot_checks: 1000,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WordStats {
    pub count: usize,
    pub max_length: usize,
    pub levels_run: usize,
    pub level_sizes: Vec<usize>,
    pub closure_detected: bool,
    pub truncated: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpotCheck {
    pub samples: usize,
    pub max_distance: f64,
    pub all_within_beta: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverageReport {
    pub verdict: Verdict,
    pub kind: String,
    pub beta: f64,
    pub radius: f64,
    pub net_spacing: f64,
    pub net_size: usize,
    pub covered: usize,
    pub max_distance: f64,
    pub certified_margin: f64,
    pub worst_point: MatrixJson,
    pub worst_point_norm: f64,
    pub worst_point_nearest_word: Vec<String>,
    pub words: WordStats,
    pub group_order: Option<usize>,
    pub spot_check: Option<SpotCheck>,
}

/// Uniformly scaled random points of the ball `{|g|_G ≤ radius}`:
/// random direction, norm `radius·u^{1/N}`.
pub fn random_ball_points(kind: &GroupKind, radius: f64, count: usize, seed: u64) -> Vec<GroupElement> {
    let dim = kind.algebra_dim() as f64;
    (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_from_seed(split_seed(seed, i as u64));
            let u: f64 = rng.random();
            let x = random_algebra_with_norm(kind, radius * u.powf(1.0 / dim), &mut rng);
            exp_map(&x)
        })
        .collect()
}

/// Words, then the `2β`-ball net, then coverage. The verdict is
/// `NotUniversal` exactly when the words closed up into a finite group,
/// `Universal` when every net point is covered with positive margin, and
/// `Inconclusive` otherwise.
pub fn test_universality(gates: &GateSet, config: &UniversalityConfig) -> Result<CoverageReport> {
    let sol = solve_beta(1e-12)?;
    let beta = sol.beta;
    let radius = 2.0 * beta;
    if !(config.spacing > 0.0 && config.spacing < beta) {
        return Err(Error::Precondition(format!(
            "spacing {} must lie in (0, β)",
            config.spacing
        )));
    }
    let words = generate_words_capped(gates, config.max_length, config.dedup_tol, config.word_cap)?;
    let net = ball_net(gates.kind(), radius, config.spacing)?;
    let cov = coverage_check(&net, &words, beta, config.spacing)?;
    let spot_check = if config.spot_checks > 0 {
        let points = random_ball_points(gates.kind(), radius, config.spot_checks, config.seed);
        let near = nearest_words(&points, &words)?;
        let max_distance = near.distances.iter().copied().fold(0.0, f64::max);
        Some(SpotCheck {
            samples: points.len(),
            max_distance,
            all_within_beta: max_distance <= beta,
        })
    } else {
        None
    };
    let verdict = if words.closure_detected() {
        Verdict::NotUniversal
    } else if cov.covered == cov.net_size && cov.certified_margin > 0.0 {
        Verdict::Universal
    } else {
        Verdict::Inconclusive
    };
    Ok(CoverageReport {
        verdict,
        kind: gates.kind().to_string(),
        beta,
        radius,
        net_spacing: config.spacing,
        net_size: cov.net_size,
        covered: cov.covered,
        max_distance: cov.max_distance,
        certified_margin: cov.certified_margin,
        worst_point: MatrixJson::from_element(&cov.worst_point),
        worst_point_norm: adjoint_angle(&adjoint_matrix(&cov.worst_point).matrix),
        worst_point_nearest_word: words.word(cov.worst_word),
        words: WordStats {
            count: words.len(),
            max_length: words.max_word_length(),
            levels_run: words.levels_run(),
            level_sizes: words.level_sizes().to_vec(),
            closure_detected: words.closure_detected(),
            truncated: words.truncated(),
        },
        group_order: words.group_order(),
        spot_check,
    })
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;
    use super::*;
    use crate::lie::{distance, op_norm_group};

    #[test]
    fn identity_gates_close_immediately() {
        let store = generate_words(&GateSet::identity(&GroupKind::su(2)).unwrap(), 5, 1e-9).unwrap();
        assert_eq!(store.len(), 1);
        assert!(store.closure_detected());
        assert_eq!(store.group_order(), Some(1));
    }

    #[test]
    fn icosahedral_gates_close_at_sixty() {
        let store = generate_words(&GateSet::icosahedral(), 12, 1e-9).unwrap();
        assert!(store.closure_detected());
        assert_eq!(store.group_order(), Some(60));
        assert!(store.is_closed_under_products().unwrap());
        let all: Vec<usize> = (0..store.len()).collect();
        assert!(store.word_reproduction_error(&all) < 1e-8);
    }

    #[test]
    fn two_rotations_keep_growing() {
        let store = generate_words(&GateSet::two_rotations(), 8, 1e-9).unwrap();
        assert!(!store.closure_detected());
        let sizes = store.level_sizes();
        assert_eq!(sizes.len(), 8);
        assert!(sizes.windows(2).all(|w| w[1] > w[0]), "{sizes:?}");
        // Free-group count 4·3^(L−1) of reduced words at each length.
        assert_eq!(sizes[0], 4);
        assert!(sizes[7] <= 4 * 3usize.pow(7));
    }

    #[test]
    fn store_has_no_near_duplicates() {
        let store = generate_words(&GateSet::two_rotations(), 5, 1e-9).unwrap();
        for i in 0..store.len() {
            for j in 0..i {
                assert!((store.adjoint(i) - store.adjoint(j)).amax() > 1e-9);
            }
        }
    }

    #[test]
    fn word_store_preconditions() {
        let g = GateSet::two_rotations();
        assert!(generate_words(&g, 0, 1e-9).is_err());
        assert!(generate_words(&g, 3, 1e-10).is_err());
        assert!(generate_words(&g, 3, 1e-2).is_err());
        let capped = generate_words_capped(&g, 10, 1e-9, 50).unwrap();
        assert!(capped.truncated() && !capped.closure_detected());
        assert_eq!(capped.len(), 50);
    }

    #[test]
    fn net_points_stay_in_the_ball() {
        let radius = 2.0 * 0.124332;
        let net = ball_net(&GroupKind::so(3), radius, 0.05).unwrap();
        // Lattice count ≈ volume of the coordinate ball of radius √2·(r + s/2)
        // over the cell volume δ³, δ = s/(√3/√2).
        let step = 0.05 / (std::f64::consts::FRAC_1_SQRT_2 * 3f64.sqrt());
        let volume = 4.0 / 3.0 * PI * (std::f64::consts::SQRT_2 * (radius + 0.025)).powi(3);
        let expected = volume / step.powi(3);
        assert!((net.len() as f64 / expected - 1.0).abs() < 0.05, "{} vs {expected}", net.len());
        assert!(net.iter().all(|p| op_norm_group(p) <= radius + 1e-9));
        let zero = ball_net(&GroupKind::su(2), 0.0, 0.05).unwrap();
        assert_eq!(zero.len(), 1);
        assert!(op_norm_group(&zero[0]) < 1e-15);
        assert!(ball_net(&GroupKind::so(3), 2.0, 0.2).is_err());
    }

    #[test]
    fn net_covers_random_ball_points() {
        // Oracle: brute-force nearest net point for random ball points.
        let kind = GroupKind::so(3);
        let (radius, spacing) = (0.2, 0.05);
        let net = ball_net(&kind, radius, spacing).unwrap();
        for p in random_ball_points(&kind, radius, 200, 3) {
            let best = net
                .iter()
                .map(|q| distance(&p, q).unwrap())
                .fold(f64::INFINITY, f64::min);
            assert!(best <= spacing + 1e-12, "{best}");
        }
    }

    #[test]
    fn nearest_words_matches_brute_force() {
        let store = generate_words(&GateSet::two_rotations(), 6, 1e-9).unwrap();
        let points = random_ball_points(&GroupKind::so(3), 0.25, 100, 9);
        let near = nearest_words(&points, &store).unwrap();
        for (k, p) in points.iter().enumerate() {
            let brute = (0..store.len())
                .map(|i| distance(p, &store.element(i)).unwrap())
                .fold(f64::INFINITY, f64::min);
            assert!((near.distances[k] - brute).abs() < 1e-9, "{} vs {brute}", near.distances[k]);
        }
    }

    #[test]
    fn coverage_of_net_by_itself_and_by_identity() {
        let kind = GroupKind::so(3);
        let net = ball_net(&kind, 0.24, 0.05).unwrap();
        let only_identity = generate_words(&GateSet::identity(&kind).unwrap(), 1, 1e-9).unwrap();
        let cov = coverage_check(&net, &only_identity, 0.124332, 0.05).unwrap();
        assert!((cov.max_distance - 0.24).abs() < 1e-9);
        assert!(cov.covered < cov.net_size);
        assert!(coverage_check(&net, &only_identity, 0.05, 0.05).is_err());
    }

    #[test]
    fn icosahedral_verdict() {
        let config = UniversalityConfig {
            spacing: 0.05,
            spot_checks: 50,
            ..UniversalityConfig::default()
        };
        let report = test_universality(&GateSet::icosahedral(), &config).unwrap();
        assert_eq!(report.verdict, Verdict::NotUniversal);
        assert_eq!(report.group_order, Some(60));
        assert!(report.covered < report.net_size);
    }

    #[test]
    fn global_phases_change_nothing() {
        let kind = GroupKind::su(2);
        let a = exp_map(&AlgebraVector::from_coords(&kind, &[0.0, 0.0, 1.0]).unwrap());
        let b = exp_map(&AlgebraVector::from_coords(&kind, &[1.0, 0.0, 0.0]).unwrap());
        let gates = GateSet::new(kind, vec![a, b], vec!["A".into(), "B".into()], true).unwrap();
        let phased = gates.with_global_phases(&[0.7, -2.1]).unwrap();
        let config = UniversalityConfig {
            max_length: 5,
            spacing: 0.05,
            spot_checks: 20,
            ..UniversalityConfig::default()
        };
        let r1 = test_universality(&gates, &config).unwrap();
        let r2 = test_universality(&phased, &config).unwrap();
        assert_eq!(r1.verdict, r2.verdict);
        assert_eq!(r1.words.count, r2.words.count);
        assert!((r1.max_distance - r2.max_distance).abs() < 1e-10);
        let s1 = r1.spot_check.unwrap().max_distance;
        let s2 = r2.spot_check.unwrap().max_distance;
        assert!((s1 - s2).abs() < 1e-10);
    }
}
