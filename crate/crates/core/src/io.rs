//! JSON formats for matrices, gate sets, subgroups and subspaces.
//!
//! A matrix is `{"kind": "su"|"so"|"product", "d": n, "re": [[..]], "im": [[..]]}`
//! with row-major arrays; `"im"` may be omitted for real matrices. Products
//! additionally list their factors, `"factors": [{"kind": "so", "d": 3}, ..]`,
//! and `"d"` is then the size of the whole block-diagonal matrix.

use std::path::Path;

use nalgebra::DVector;
use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::{AlgebraVector, GroupElement, GroupKind};
use crate::linalg::{c, CMatrix};
use crate::subspace::Subspace;
use crate::universality::GateSet;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FactorJson {
    pub kind: String,
    pub d: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub kind: String,
    pub d: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factors: Option<Vec<FactorJson>>,
    pub re: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im: Option<Vec<Vec<f64>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GateSetJson {
    pub kind: String,
    pub d: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factors: Option<Vec<FactorJson>>,
    pub gates: Vec<MatrixJson>,
    pub labels: Vec<String>,
    #[serde(default = "default_true")]
    pub include_inverses: bool,
}

fn default_true() -> bool {
    true
}

/// `basis` lists the `k` spanning vectors, each of length `ambient`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubspaceJson {
    pub ambient: usize,
    pub basis: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis_im: Option<Vec<Vec<f64>>>,
}

fn simple_kind(kind: &str, d: usize) -> Result<GroupKind> {
    let k = match kind {
        "su" => GroupKind::su(d),
        "so" => GroupKind::so(d),
        other => return Err(Error::InvalidInput(format!("unknown kind {other:?}"))),
    };
    k.validate()?;
    Ok(k)
}

/// Decodes the `kind`/`d`/`factors` header.
pub fn kind_from_json(kind: &str, d: usize, factors: Option<&[FactorJson]>) -> Result<GroupKind> {
    match (kind, factors) {
        ("product", Some(fs)) => {
            let k = GroupKind::product(
                fs.iter()
                    .map(|f| simple_kind(&f.kind, f.d))
                    .collect::<Result<Vec<_>>>()?,
            );
            k.validate()?;
            if k.matrix_dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: k.matrix_dim(),
                    got: d,
                });
            }
            Ok(k)
        }
        ("product", None) => Err(Error::InvalidInput("product kind without \"factors\"".into())),
        (k, _) => simple_kind(k, d),
    }
}

/// Encodes a kind as its `(kind, d, factors)` header.
pub fn kind_to_json(kind: &GroupKind) -> (String, usize, Option<Vec<FactorJson>>) {
    let simple = |k: &GroupKind| match k {
        GroupKind::SpecialUnitary(d) => FactorJson { kind: "su".into(), d: *d },
        GroupKind::SpecialOrthogonal(d) => FactorJson { kind: "so".into(), d: *d },
        GroupKind::Product(_) => unreachable!("products do not nest"),
    };
    match kind {
        GroupKind::Product(fs) => (
            "product".into(),
            kind.matrix_dim(),
            Some(fs.iter().map(simple).collect()),
        ),
        k => {
            let f = simple(k);
            (f.kind, f.d, None)
        }
    }
}

fn rows_to_matrix(re: &[Vec<f64>], im: Option<&[Vec<f64>]>, rows: usize, cols: usize) -> Result<CMatrix> {
    let shape_ok = |m: &[Vec<f64>]| m.len() == rows && m.iter().all(|r| r.len() == cols);
    if !shape_ok(re) || im.is_some_and(|m| !shape_ok(m)) {
        return Err(Error::InvalidInput(format!("expected a {rows}×{cols} array")));
    }
    Ok(CMatrix::from_fn(rows, cols, |i, j| {
        c(re[i][j], im.map_or(0.0, |m| m[i][j]))
    }))
}

fn matrix_to_rows(m: &CMatrix) -> (Vec<Vec<f64>>, Option<Vec<Vec<f64>>>) {
    let re = (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| m[(i, j)].re).collect()).collect();
    let real = m.iter().all(|z| z.im == 0.0);
    let im = (!real).then(|| (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| m[(i, j)].im).collect()).collect());
    (re, im)
}

impl MatrixJson {
    pub fn group_kind(&self) -> Result<GroupKind> {
        kind_from_json(&self.kind, self.d, self.factors.as_deref())
    }

    fn complex(&self) -> Result<(GroupKind, CMatrix)> {
        let kind = self.group_kind()?;
        let n = kind.matrix_dim();
        Ok((kind, rows_to_matrix(&self.re, self.im.as_deref(), n, n)?))
    }

    fn from_parts(kind: &GroupKind, m: &CMatrix) -> Self {
        let (k, d, factors) = kind_to_json(kind);
        let (re, im) = matrix_to_rows(m);
        MatrixJson { kind: k, d, factors, re, im }
    }

    pub fn to_element(&self) -> Result<GroupElement> {
        let (kind, m) = self.complex()?;
        GroupElement::new(m, kind)
    }

    pub fn to_algebra(&self) -> Result<AlgebraVector> {
        let (kind, m) = self.complex()?;
        AlgebraVector::new(m, kind)
    }

    pub fn from_element(g: &GroupElement) -> Self {
        Self::from_parts(g.kind(), g.matrix())
    }

    pub fn from_algebra(x: &AlgebraVector) -> Self {
        Self::from_parts(x.kind(), x.matrix())
    }
}

impl GateSetJson {
    pub fn to_gate_set(&self) -> Result<GateSet> {
        let kind = kind_from_json(&self.kind, self.d, self.factors.as_deref())?;
        let gates = self
            .gates
            .iter()
            .map(|m| {
                let g = m.to_element()?;
                kind.ensure_same(g.kind())?;
                Ok(g)
            })
            .collect::<Result<Vec<_>>>()?;
        GateSet::new(kind, gates, self.labels.clone(), self.include_inverses)
    }

    pub fn from_gate_set(gates: &GateSet) -> Self {
        let (kind, d, factors) = kind_to_json(gates.kind());
        GateSetJson {
            kind,
            d,
            factors,
            gates: gates.gates().iter().map(MatrixJson::from_element).collect(),
            labels: gates.labels().to_vec(),
            include_inverses: gates.include_inverses(),
        }
    }
}

impl SubspaceJson {
    pub fn to_subspace(&self) -> Result<Subspace> {
        let k = self.basis.len();
        let im_ok = self.basis_im.as_ref().is_none_or(|m| m.len() == k);
        if !im_ok {
            return Err(Error::InvalidInput("basis_im has a different vector count".into()));
        }
        let vectors = (0..k)
            .map(|j| {
                let re = &self.basis[j];
                let im = self.basis_im.as_ref().map(|m| &m[j]);
                if re.len() != self.ambient || im.is_some_and(|v| v.len() != self.ambient) {
                    return Err(Error::DimensionMismatch {
                        expected: self.ambient,
                        got: re.len(),
                    });
                }
                Ok(DVector::from_iterator(
                    self.ambient,
                    (0..self.ambient).map(|i| Complex64::new(re[i], im.map_or(0.0, |v| v[i]))),
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        if vectors.is_empty() {
            return Err(Error::DegenerateSubspace { k: 0, n: self.ambient });
        }
        Subspace::from_vectors(&vectors)
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

pub fn read_element(path: &Path) -> Result<GroupElement> {
    read_json::<MatrixJson>(path)?.to_element()
}

/// A subgroup file: a JSON array of matrices.
pub fn read_elements(path: &Path) -> Result<Vec<GroupElement>> {
    read_json::<Vec<MatrixJson>>(path)?
        .iter()
        .map(MatrixJson::to_element)
        .collect()
}
