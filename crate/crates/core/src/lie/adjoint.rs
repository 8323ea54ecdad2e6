use super::basis::SparseBasis;
use super::{AlgebraVector, GroupElement};
use crate::linalg::RMatrix;

/// Matrix of `Ad_g` in the orthonormal algebra basis.
#[derive(Clone, Debug, PartialEq)]
pub struct AdjointMatrix {
    pub matrix: RMatrix,
    pub basis_id: String,
}

/// `Ad_g` with entries `⟨e_i, g e_j g⁻¹⟩`.
pub fn adjoint_matrix(g: &GroupElement) -> AdjointMatrix {
    let basis = SparseBasis::new(g.kind()).expect("group elements carry validated kinds");
    let n = basis.len();
    let mut m = RMatrix::zeros(n, n);
    for j in 0..n {
        let conj = basis.conjugated(g.matrix(), j);
        for i in 0..n {
            m[(i, j)] = basis.coord(i, &conj);
        }
    }
    AdjointMatrix {
        matrix: m,
        basis_id: basis.kind().basis_id(),
    }
}

/// Matrix of `ad_x = [x, ·]` in the orthonormal algebra basis.
pub fn ad_matrix(x: &AlgebraVector) -> RMatrix {
    let basis = SparseBasis::new(x.kind()).expect("algebra vectors carry validated kinds");
    let n = basis.len();
    let mut m = RMatrix::zeros(n, n);
    for j in 0..n {
        let e = basis.dense(j);
        let br = x.matrix() * &e - &e * x.matrix();
        for i in 0..n {
            m[(i, j)] = basis.coord(i, &br);
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{complex_matrix, GroupKind};
    use crate::linalg::max_abs_entry_real;
    use num_complex::Complex64;
    use std::f64::consts::PI;

    #[test]
    fn identity_maps_to_identity() {
        for kind in [GroupKind::su(3), GroupKind::so(4)] {
            let ad = adjoint_matrix(&GroupElement::identity(&kind));
            let n = kind.algebra_dim();
            assert!(max_abs_entry_real(&(ad.matrix - RMatrix::identity(n, n))) < 1e-15);
        }
    }

    #[test]
    fn central_phase_acts_trivially() {
        // A scalar unitary, deliberately not det-normalized.
        let phase = Complex64::from_polar(1.0, 0.913);
        let m = crate::linalg::CMatrix::identity(3, 3) * phase;
        let g = GroupElement::from_parts_unchecked(m, GroupKind::su(3));
        let ad = adjoint_matrix(&g);
        assert!(max_abs_entry_real(&(ad.matrix - RMatrix::identity(8, 8))) < 1e-15);
    }

    #[test]
    fn diagonal_su2_element_rotates_off_diagonal_plane() {
        // Conjugating E_12 by diag(e^{iπ/8}, e^{-iπ/8}) multiplies it by e^{iπ/4}.
        // In the (symmetric, antisymmetric) basis pair that is a rotation by π/4;
        // the diagonal generator is fixed.
        let t = PI / 8.0;
        let m = complex_matrix(2, &[t.cos(), 0.0, 0.0, t.cos()], Some(&[t.sin(), 0.0, 0.0, -t.sin()]));
        let g = GroupElement::new(m, GroupKind::su(2)).unwrap();
        let ad = adjoint_matrix(&g).matrix;
        let (cq, sq) = ((PI / 4.0).cos(), (PI / 4.0).sin());
        // e_0 = i(E12+E21)/√2, e_1 = (E12−E21)/√2. g e_1 g† = (e^{iπ/4}E12 − e^{-iπ/4}E21)/√2
        // = cos(π/4) e_1 + sin(π/4) e_0.
        let expected = RMatrix::from_row_slice(3, 3, &[cq, sq, 0.0, -sq, cq, 0.0, 0.0, 0.0, 1.0]);
        assert!(max_abs_entry_real(&(ad - expected)) < 1e-14);
    }

    #[test]
    fn ad_matrix_is_antisymmetric() {
        let x = AlgebraVector::from_coords(&GroupKind::su(3), &[0.1, -0.3, 0.2, 0.05, 0.7, -0.2, 0.4, 0.3]).unwrap();
        let m = ad_matrix(&x);
        assert!(max_abs_entry_real(&(&m + m.transpose())) < 1e-14);
    }
}
