//! Orthonormal bases of the Lie algebras under `⟨x, y⟩ = −Re tr(xy)`.
//!
//! Ordering is deterministic:
//!
//! * `su(d)`: generalized Gell-Mann order. For each pair `j < k` in
//!   lexicographic order the symmetric generator `i(E_jk + E_kj)/√2` comes
//!   first, then the antisymmetric one `(E_jk − E_kj)/√2`. The `d − 1`
//!   diagonal generators follow, `l = 1..d`, proportional to
//!   `i·diag(1, …, 1, −l, 0, …, 0)`.
//! * `so(d)`: `(E_jk − E_kj)/√2` for `j < k` in lexicographic order.
//! * products: the factor bases concatenated, each placed in its block.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use super::{AlgebraVector, GroupKind};
use crate::error::Result;
use crate::linalg::{c, CMatrix};

type Entry = (usize, usize, Complex64);

/// Basis stored as sparse entry lists; used for fast coordinate extraction.
#[derive(Clone, Debug)]
pub(crate) struct SparseBasis {
    kind: GroupKind,
    dim: usize,
    elements: Vec<Vec<Entry>>,
}

impl SparseBasis {
    pub(crate) fn new(kind: &GroupKind) -> Result<Self> {
        kind.validate()?;
        let mut elements = Vec::with_capacity(kind.algebra_dim());
        for block in kind.blocks() {
            let off = block.offset;
            let local = match block.kind {
                GroupKind::SpecialUnitary(d) => su_entries(d),
                GroupKind::SpecialOrthogonal(d) => so_entries(d),
                GroupKind::Product(_) => unreachable!("validated kinds do not nest"),
            };
            elements.extend(local.into_iter().map(|e| {
                e.into_iter()
                    .map(|(a, b, v)| (a + off, b + off, v))
                    .collect::<Vec<_>>()
            }));
        }
        Ok(SparseBasis {
            kind: kind.clone(),
            dim: kind.matrix_dim(),
            elements,
        })
    }

    pub(crate) fn len(&self) -> usize {
        self.elements.len()
    }

    pub(crate) fn dense(&self, i: usize) -> CMatrix {
        let mut m = CMatrix::zeros(self.dim, self.dim);
        for &(a, b, v) in &self.elements[i] {
            m[(a, b)] += v;
        }
        m
    }

    /// `⟨e_i, m⟩ = −Re tr(e_i m)`.
    pub(crate) fn coord(&self, i: usize, m: &CMatrix) -> f64 {
        -self.elements[i]
            .iter()
            .map(|&(a, b, v)| (v * m[(b, a)]).re)
            .sum::<f64>()
    }

    pub(crate) fn coords(&self, m: &CMatrix) -> Vec<f64> {
        (0..self.len()).map(|i| self.coord(i, m)).collect()
    }

    /// `g e_i g†` computed from the sparse entries.
    pub(crate) fn conjugated(&self, g: &CMatrix, i: usize) -> CMatrix {
        let n = self.dim;
        let mut out = CMatrix::zeros(n, n);
        for &(a, b, v) in &self.elements[i] {
            for r in 0..n {
                let left = g[(r, a)] * v;
                if left == Complex64::ZERO {
                    continue;
                }
                for s in 0..n {
                    out[(r, s)] += left * g[(s, b)].conj();
                }
            }
        }
        out
    }

    pub(crate) fn kind(&self) -> &GroupKind {
        &self.kind
    }
}

fn su_entries(d: usize) -> Vec<Vec<Entry>> {
    let mut out = Vec::with_capacity(d * d - 1);
    let s = FRAC_1_SQRT_2;
    for j in 0..d {
        for k in (j + 1)..d {
            out.push(vec![(j, k, c(0.0, s)), (k, j, c(0.0, s))]);
            out.push(vec![(j, k, c(s, 0.0)), (k, j, c(-s, 0.0))]);
        }
    }
    for l in 1..d {
        let lf = l as f64;
        let scale = (2.0 / (lf * (lf + 1.0))).sqrt() * s;
        let mut e: Vec<Entry> = (0..l).map(|j| (j, j, c(0.0, scale))).collect();
        e.push((l, l, c(0.0, -lf * scale)));
        out.push(e);
    }
    out
}

fn so_entries(d: usize) -> Vec<Vec<Entry>> {
    let s = FRAC_1_SQRT_2;
    let mut out = Vec::with_capacity(d * (d - 1) / 2);
    for j in 0..d {
        for k in (j + 1)..d {
            out.push(vec![(j, k, c(s, 0.0)), (k, j, c(-s, 0.0))]);
        }
    }
    out
}

/// Orthonormal basis of the Lie algebra of `kind` (see module docs for the order).
pub fn algebra_basis(kind: &GroupKind) -> Result<Vec<AlgebraVector>> {
    let basis = SparseBasis::new(kind)?;
    Ok((0..basis.len())
        .map(|i| AlgebraVector::from_parts_unchecked(basis.dense(i), kind.clone()))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gram(kind: &GroupKind) -> Vec<Vec<f64>> {
        let b = algebra_basis(kind).unwrap();
        b.iter()
            .map(|x| b.iter().map(|y| x.inner(y)).collect())
            .collect()
    }

    #[test]
    fn bases_are_orthonormal() {
        let kinds = [
            GroupKind::su(2),
            GroupKind::su(3),
            GroupKind::su(5),
            GroupKind::so(3),
            GroupKind::so(6),
            GroupKind::product(vec![GroupKind::su(2), GroupKind::so(3)]),
        ];
        for kind in &kinds {
            let g = gram(kind);
            assert_eq!(g.len(), kind.algebra_dim());
            for (i, row) in g.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    let expected = if i == j { 1.0 } else { 0.0 };
                    assert!((v - expected).abs() < 1e-14, "{kind} ({i},{j}) = {v}");
                }
            }
        }
    }

    #[test]
    fn basis_counts() {
        assert_eq!(algebra_basis(&GroupKind::su(2)).unwrap().len(), 3);
        assert_eq!(algebra_basis(&GroupKind::su(3)).unwrap().len(), 8);
        assert_eq!(algebra_basis(&GroupKind::so(3)).unwrap().len(), 3);
        assert!(algebra_basis(&GroupKind::so(2)).is_err());
    }

    #[test]
    fn basis_vectors_are_valid_algebra_elements() {
        for kind in [GroupKind::su(4), GroupKind::so(5)] {
            for x in algebra_basis(&kind).unwrap() {
                AlgebraVector::new(x.matrix().clone(), kind.clone()).unwrap();
            }
        }
    }

    #[test]
    fn coordinates_recover_basis() {
        let kind = GroupKind::su(3);
        let sb = SparseBasis::new(&kind).unwrap();
        for i in 0..sb.len() {
            let coords = sb.coords(&sb.dense(i));
            for (j, v) in coords.iter().enumerate() {
                assert!((v - if i == j { 1.0 } else { 0.0 }).abs() < 1e-14);
            }
        }
    }
}
