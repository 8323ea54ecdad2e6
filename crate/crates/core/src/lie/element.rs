use std::ops::Mul;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::basis::SparseBasis;
use super::GroupKind;
use crate::error::{Error, Result};
use crate::linalg::{c, max_abs_entry, CMatrix, RMatrix};

/// Max-entry tolerance on `M†M − I` for accepting a matrix as unitary.
pub const TOL_UNITARY: f64 = 1e-10;
/// Tolerance on imaginary parts for orthogonal kinds.
pub const TOL_REAL: f64 = 1e-12;
/// Tolerance on the determinant.
pub const TOL_DET: f64 = 1e-9;
/// Tolerance for skew-Hermitian / traceless checks on algebra elements.
pub const TOL_ALGEBRA: f64 = 1e-12;

/// A validated element of SU(d), SO(d) or a block product of those.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupElement {
    matrix: CMatrix,
    kind: GroupKind,
}

impl GroupElement {
    /// Validates `matrix` as an element of `kind`.
    ///
    /// Special-unitary blocks are multiplied by the global phase
    /// `det^{-1/d}` (principal branch) so that their determinant is 1.
    pub fn new(mut matrix: CMatrix, kind: GroupKind) -> Result<Self> {
        kind.validate()?;
        let n = kind.matrix_dim();
        if matrix.nrows() != n || matrix.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: matrix.nrows().max(matrix.ncols()),
            });
        }
        if kind.is_product() {
            let off_block = off_block_max(&matrix, &kind);
            if off_block > TOL_UNITARY {
                return Err(Error::NotBlockDiagonal(off_block));
            }
            zero_off_block(&mut matrix, &kind);
        }
        for block in kind.blocks() {
            let d = block.kind.matrix_dim();
            let mut sub = matrix.view((block.offset, block.offset), (d, d)).into_owned();
            let defect = unitarity_defect(&sub);
            if defect > TOL_UNITARY {
                return Err(Error::NotUnitary(defect));
            }
            match block.kind {
                GroupKind::SpecialOrthogonal(_) => {
                    let imag = sub.iter().fold(0.0f64, |acc, z| acc.max(z.im.abs()));
                    if imag > TOL_REAL {
                        return Err(Error::NotReal(imag));
                    }
                    sub.iter_mut().for_each(|z| z.im = 0.0);
                    let det = sub.map(|z| z.re).determinant();
                    if (det - 1.0).abs() > TOL_DET {
                        return Err(Error::WrongDeterminant(det));
                    }
                }
                GroupKind::SpecialUnitary(d) => {
                    let det = sub.determinant();
                    let phase = Complex64::from_polar(1.0, -det.arg() / d as f64);
                    sub *= phase;
                    let det = sub.determinant();
                    if (det - c(1.0, 0.0)).norm() > TOL_DET {
                        return Err(Error::WrongDeterminant(det.re));
                    }
                }
                GroupKind::Product(_) => unreachable!(),
            }
            matrix.view_mut((block.offset, block.offset), (d, d)).copy_from(&sub);
        }
        Ok(GroupElement { matrix, kind })
    }

    /// Convenience constructor from a real matrix.
    pub fn from_real(matrix: &RMatrix, kind: GroupKind) -> Result<Self> {
        Self::new(matrix.map(|x| c(x, 0.0)), kind)
    }

    pub(crate) fn from_parts_unchecked(matrix: CMatrix, kind: GroupKind) -> Self {
        GroupElement { matrix, kind }
    }

    pub fn identity(kind: &GroupKind) -> Self {
        let n = kind.matrix_dim();
        GroupElement {
            matrix: CMatrix::identity(n, n),
            kind: kind.clone(),
        }
    }

    /// Assembles a product element from one element per factor.
    pub fn from_blocks(kind: &GroupKind, blocks: &[GroupElement]) -> Result<Self> {
        kind.validate()?;
        let layout = kind.blocks();
        if !kind.is_product() || layout.len() != blocks.len() {
            return Err(Error::InvalidInput(format!(
                "{} blocks supplied for kind {kind}",
                blocks.len()
            )));
        }
        let n = kind.matrix_dim();
        let mut m = CMatrix::zeros(n, n);
        for (slot, el) in layout.iter().zip(blocks) {
            slot.kind.ensure_same(&el.kind)?;
            let d = slot.kind.matrix_dim();
            m.view_mut((slot.offset, slot.offset), (d, d)).copy_from(&el.matrix);
        }
        Ok(GroupElement {
            matrix: m,
            kind: kind.clone(),
        })
    }

    /// The `i`-th factor of a product element (the element itself for simple kinds).
    pub fn factor(&self, i: usize) -> Result<GroupElement> {
        let blocks = self.kind.blocks();
        let block = blocks.get(i).ok_or_else(|| {
            Error::InvalidInput(format!("factor {i} out of range for {}", self.kind))
        })?;
        let d = block.kind.matrix_dim();
        Ok(GroupElement {
            matrix: self
                .matrix
                .view((block.offset, block.offset), (d, d))
                .into_owned(),
            kind: block.kind.clone(),
        })
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// Real part of the matrix; meaningful for orthogonal kinds.
    pub fn real_matrix(&self) -> RMatrix {
        self.matrix.map(|z| z.re)
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement {
            matrix: self.matrix.adjoint(),
            kind: self.kind.clone(),
        }
    }

    pub fn try_mul(&self, rhs: &GroupElement) -> Result<GroupElement> {
        self.kind.ensure_same(&rhs.kind)?;
        Ok(GroupElement {
            matrix: &self.matrix * &rhs.matrix,
            kind: self.kind.clone(),
        })
    }

    /// Multiplies the defining matrix by a global phase, bypassing det
    /// normalization. Used to exercise phase-blindness.
    pub fn with_global_phase(&self, phase: f64) -> GroupElement {
        GroupElement {
            matrix: &self.matrix * Complex64::from_polar(1.0, phase),
            kind: self.kind.clone(),
        }
    }

    /// Nearest element of the group: each block is replaced by the unitary
    /// polar factor `U V†` of its SVD, then det-normalized as in [`Self::new`].
    pub fn reprojected(&self) -> Result<GroupElement> {
        let mut m = self.matrix.clone();
        for block in self.kind.blocks() {
            let d = block.kind.matrix_dim();
            let sub = m.view((block.offset, block.offset), (d, d)).into_owned();
            let svd = nalgebra::SVD::try_new(sub, true, true, f64::EPSILON, 0)
                .ok_or_else(|| Error::Numerical("SVD did not converge".into()))?;
            let polar = svd.u.expect("requested") * svd.v_t.expect("requested");
            m.view_mut((block.offset, block.offset), (d, d)).copy_from(&polar);
        }
        GroupElement::new(m, self.kind.clone())
    }

    /// Max-entry deviation of `M†M` from the identity.
    pub fn unitarity_defect(&self) -> f64 {
        unitarity_defect(&self.matrix)
    }
}

impl Mul for &GroupElement {
    type Output = GroupElement;

    /// # Panics
    /// Panics if the operands have different kinds; use [`GroupElement::try_mul`]
    /// for a fallible product.
    fn mul(self, rhs: &GroupElement) -> GroupElement {
        self.try_mul(rhs).expect("group kinds must match")
    }
}

fn unitarity_defect(m: &CMatrix) -> f64 {
    let n = m.nrows();
    max_abs_entry(&(m.adjoint() * m - CMatrix::identity(n, n)))
}

fn off_block_max(m: &CMatrix, kind: &GroupKind) -> f64 {
    let owner = block_owner(kind);
    let mut worst = 0.0f64;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            if owner[i] != owner[j] {
                worst = worst.max(m[(i, j)].norm());
            }
        }
    }
    worst
}

fn zero_off_block(m: &mut CMatrix, kind: &GroupKind) {
    let owner = block_owner(kind);
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            if owner[i] != owner[j] {
                m[(i, j)] = Complex64::ZERO;
            }
        }
    }
}

fn block_owner(kind: &GroupKind) -> Vec<usize> {
    let mut owner = Vec::with_capacity(kind.matrix_dim());
    for (i, b) in kind.blocks().iter().enumerate() {
        owner.extend(std::iter::repeat_n(i, b.kind.matrix_dim()));
    }
    owner
}

/// A traceless skew-Hermitian matrix: an element of the Lie algebra in the
/// defining representation.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraVector {
    matrix: CMatrix,
    kind: GroupKind,
}

impl AlgebraVector {
    pub fn new(matrix: CMatrix, kind: GroupKind) -> Result<Self> {
        kind.validate()?;
        let n = kind.matrix_dim();
        if matrix.nrows() != n || matrix.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: matrix.nrows().max(matrix.ncols()),
            });
        }
        let skew = max_abs_entry(&(&matrix + matrix.adjoint()));
        if skew > TOL_ALGEBRA {
            return Err(Error::NotInAlgebra(format!(
                "not skew-Hermitian (deviation {skew:.3e})"
            )));
        }
        if kind.is_product() {
            let off = off_block_max(&matrix, &kind);
            if off > TOL_ALGEBRA {
                return Err(Error::NotBlockDiagonal(off));
            }
        }
        for block in kind.blocks() {
            let d = block.kind.matrix_dim();
            let tr = matrix.view((block.offset, block.offset), (d, d)).trace();
            if tr.norm() > TOL_ALGEBRA {
                return Err(Error::NotInAlgebra(format!(
                    "trace {:.3e} is not zero",
                    tr.norm()
                )));
            }
        }
        if kind.is_orthogonal() {
            let imag = matrix.iter().fold(0.0f64, |acc, z| acc.max(z.im.abs()));
            if imag > TOL_ALGEBRA {
                return Err(Error::NotReal(imag));
            }
        }
        Ok(AlgebraVector { matrix, kind })
    }

    pub(crate) fn from_parts_unchecked(matrix: CMatrix, kind: GroupKind) -> Self {
        AlgebraVector { matrix, kind }
    }

    pub fn zero(kind: &GroupKind) -> Self {
        let n = kind.matrix_dim();
        AlgebraVector {
            matrix: CMatrix::zeros(n, n),
            kind: kind.clone(),
        }
    }

    /// `Σ coords[i]·e_i` in the orthonormal basis of [`super::algebra_basis`].
    pub fn from_coords(kind: &GroupKind, coords: &[f64]) -> Result<Self> {
        let basis = SparseBasis::new(kind)?;
        if coords.len() != basis.len() {
            return Err(Error::DimensionMismatch {
                expected: basis.len(),
                got: coords.len(),
            });
        }
        let n = kind.matrix_dim();
        let mut m = CMatrix::zeros(n, n);
        for (i, &x) in coords.iter().enumerate() {
            if x != 0.0 {
                m += basis.dense(i) * c(x, 0.0);
            }
        }
        Ok(AlgebraVector {
            matrix: m,
            kind: kind.clone(),
        })
    }

    /// Infinitesimal rotation by `angle` in the `(a, b)` coordinate plane of an
    /// orthogonal kind.
    pub fn rotation_generator(kind: &GroupKind, a: usize, b: usize, angle: f64) -> Result<Self> {
        let n = kind.matrix_dim();
        if !kind.is_orthogonal() || a >= n || b >= n || a == b {
            return Err(Error::InvalidInput(format!(
                "no rotation plane ({a},{b}) in {kind}"
            )));
        }
        let mut m = CMatrix::zeros(n, n);
        m[(b, a)] = c(angle, 0.0);
        m[(a, b)] = c(-angle, 0.0);
        AlgebraVector::new(m, kind.clone())
    }

    /// Coordinates in the orthonormal basis.
    pub fn coords(&self) -> Vec<f64> {
        SparseBasis::new(&self.kind)
            .map(|b| b.coords(&self.matrix))
            .unwrap_or_default()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    /// `⟨x, y⟩ = −Re tr(xy)`.
    pub fn inner(&self, other: &AlgebraVector) -> f64 {
        -(&self.matrix * &other.matrix).trace().re
    }

    /// Euclidean norm induced by [`AlgebraVector::inner`].
    pub fn euclidean_norm(&self) -> f64 {
        self.inner(self).max(0.0).sqrt()
    }

    pub fn scale(&self, s: f64) -> AlgebraVector {
        AlgebraVector {
            matrix: &self.matrix * c(s, 0.0),
            kind: self.kind.clone(),
        }
    }

    pub fn add(&self, other: &AlgebraVector) -> Result<AlgebraVector> {
        self.kind.ensure_same(&other.kind)?;
        Ok(AlgebraVector {
            matrix: &self.matrix + &other.matrix,
            kind: self.kind.clone(),
        })
    }

    /// Lie bracket `[x, y] = xy − yx`.
    pub fn bracket(&self, other: &AlgebraVector) -> Result<AlgebraVector> {
        self.kind.ensure_same(&other.kind)?;
        Ok(AlgebraVector {
            matrix: &self.matrix * &other.matrix - &other.matrix * &self.matrix,
            kind: self.kind.clone(),
        })
    }

    /// `Ad_g x = g x g⁻¹`.
    pub fn conjugate_by(&self, g: &GroupElement) -> Result<AlgebraVector> {
        self.kind.ensure_same(g.kind())?;
        Ok(AlgebraVector {
            matrix: g.matrix() * &self.matrix * g.matrix().adjoint(),
            kind: self.kind.clone(),
        })
    }
}

/// Builds a complex matrix from row-major real and imaginary parts.
pub fn complex_matrix(n: usize, re: &[f64], im: Option<&[f64]>) -> CMatrix {
    DMatrix::from_fn(n, n, |i, j| {
        c(re[i * n + j], im.map_or(0.0, |im| im[i * n + j]))
    })
}
