//! Deterministic data-parallel helpers and the multiplicative local search
//! shared by the large-angle and diameter probes.

use rayon::prelude::*;

use crate::lie::{algebra_basis, exp_map, GroupElement, GroupKind};

/// `f(0), …, f(n − 1)` evaluated in parallel, returned in index order.
pub(crate) fn par_map<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).into_par_iter().map(f).collect()
}

/// Index of the largest value; ties resolve to the smallest index.
pub(crate) fn argmax(values: &[f64]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (i, &v) in values.iter().enumerate() {
        if best.is_none_or(|b| v > values[b]) {
            best = Some(i);
        }
    }
    best
}

/// Settings of [`maximize_locally`].
#[derive(Clone, Copy, Debug)]
pub struct LocalSearch {
    pub steps: usize,
    pub initial_step: f64,
    /// Stop as soon as the objective reaches this value.
    pub ceiling: f64,
}

impl Default for LocalSearch {
    fn default() -> Self {
        LocalSearch {
            steps: 200,
            initial_step: 0.1,
            ceiling: f64::INFINITY,
        }
    }
}

/// Coordinate-wise ascent on the group: each step tries `g·exp(±ε e_i)` for
/// every basis direction and keeps the best improvement; `ε` halves when
/// nothing improves.
pub(crate) fn maximize_locally<F>(
    kind: &GroupKind,
    start: GroupElement,
    start_value: f64,
    objective: F,
    settings: LocalSearch,
) -> (GroupElement, f64)
where
    F: Fn(&GroupElement) -> f64 + Sync,
{
    let basis = algebra_basis(kind).expect("validated kind");
    let mut g = start;
    let mut value = start_value;
    let mut eps = settings.initial_step;
    for _ in 0..settings.steps {
        if value >= settings.ceiling {
            break;
        }
        let moves: Vec<GroupElement> = basis
            .iter()
            .flat_map(|e| [exp_map(&e.scale(eps)), exp_map(&e.scale(-eps))])
            .collect();
        let candidates = par_map(moves.len(), |i| {
            let cand = &g * &moves[i];
            let v = objective(&cand);
            (cand, v)
        });
        let values: Vec<f64> = candidates.iter().map(|(_, v)| *v).collect();
        match argmax(&values) {
            Some(i) if values[i] > value => {
                value = values[i];
                g = candidates.into_iter().nth(i).expect("index in range").0;
            }
            _ => eps *= 0.5,
        }
    }
    (g, value)
}
