use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

/// The compact groups the toolkit knows how to handle.
///
/// Elements of `SpecialUnitary(d)` stand for elements of the centerless
/// quotient PSU(d): everything downstream is computed through the adjoint
/// action, which cannot see central phases.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupKind {
    SpecialUnitary(usize),
    SpecialOrthogonal(usize),
    /// Block-diagonal product of simple factors (no nesting).
    Product(Vec<GroupKind>),
}

/// Location of one simple factor inside a (possibly product) kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub kind: GroupKind,
    /// Row/column offset in the defining matrix.
    pub offset: usize,
    /// Offset of the factor's coordinates in the algebra basis.
    pub algebra_offset: usize,
}

impl GroupKind {
    pub fn su(d: usize) -> Self {
        GroupKind::SpecialUnitary(d)
    }

    pub fn so(d: usize) -> Self {
        GroupKind::SpecialOrthogonal(d)
    }

    pub fn product(factors: Vec<GroupKind>) -> Self {
        GroupKind::Product(factors)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            GroupKind::SpecialUnitary(d) if (2..=8).contains(d) => Ok(()),
            GroupKind::SpecialOrthogonal(d) if (3..=8).contains(d) => Ok(()),
            GroupKind::Product(fs) if !fs.is_empty() => {
                for f in fs {
                    if matches!(f, GroupKind::Product(_)) {
                        return Err(Error::UnsupportedKind(format!(
                            "nested product {self}"
                        )));
                    }
                    f.validate()?;
                }
                Ok(())
            }
            _ => Err(Error::UnsupportedKind(self.to_string())),
        }
    }

    /// Size of the defining matrices.
    pub fn matrix_dim(&self) -> usize {
        match self {
            GroupKind::SpecialUnitary(d) | GroupKind::SpecialOrthogonal(d) => *d,
            GroupKind::Product(fs) => fs.iter().map(GroupKind::matrix_dim).sum(),
        }
    }

    /// Dimension N of the Lie algebra.
    pub fn algebra_dim(&self) -> usize {
        match self {
            GroupKind::SpecialUnitary(d) => d * d - 1,
            GroupKind::SpecialOrthogonal(d) => d * (d - 1) / 2,
            GroupKind::Product(fs) => fs.iter().map(GroupKind::algebra_dim).sum(),
        }
    }

    pub fn is_orthogonal(&self) -> bool {
        match self {
            GroupKind::SpecialOrthogonal(_) => true,
            GroupKind::SpecialUnitary(_) => false,
            GroupKind::Product(fs) => fs.iter().all(GroupKind::is_orthogonal),
        }
    }

    pub fn is_product(&self) -> bool {
        matches!(self, GroupKind::Product(_))
    }

    /// Whether the Lie algebra is simple, i.e. the adjoint representation
    /// is irreducible over the complex numbers.
    pub fn is_simple(&self) -> bool {
        match self {
            GroupKind::SpecialUnitary(_) => true,
            GroupKind::SpecialOrthogonal(d) => *d != 4,
            GroupKind::Product(fs) => fs.len() == 1 && fs[0].is_simple(),
        }
    }

    /// The simple factors with their offsets. A simple kind is its own single block.
    pub fn blocks(&self) -> Vec<Block> {
        match self {
            GroupKind::Product(fs) => {
                let mut offset = 0;
                let mut algebra_offset = 0;
                fs.iter()
                    .map(|f| {
                        let b = Block {
                            kind: f.clone(),
                            offset,
                            algebra_offset,
                        };
                        offset += f.matrix_dim();
                        algebra_offset += f.algebra_dim();
                        b
                    })
                    .collect()
            }
            simple => vec![Block {
                kind: simple.clone(),
                offset: 0,
                algebra_offset: 0,
            }],
        }
    }

    /// Identifier of the orthonormal algebra basis used for adjoint matrices.
    pub fn basis_id(&self) -> String {
        match self {
            GroupKind::SpecialUnitary(d) => format!("gell-mann/su({d})"),
            GroupKind::SpecialOrthogonal(d) => format!("elementary/so({d})"),
            GroupKind::Product(fs) => fs
                .iter()
                .map(GroupKind::basis_id)
                .collect::<Vec<_>>()
                .join("+"),
        }
    }

    pub(crate) fn ensure_same(&self, other: &GroupKind) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::KindMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::SpecialUnitary(d) => write!(f, "su({d})"),
            GroupKind::SpecialOrthogonal(d) => write!(f, "so({d})"),
            GroupKind::Product(fs) => {
                let parts: Vec<String> = fs.iter().map(ToString::to_string).collect();
                write!(f, "{}", parts.join("x"))
            }
        }
    }
}
