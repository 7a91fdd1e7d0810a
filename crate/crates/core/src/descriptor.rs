//! Algebra descriptors: which simple algebra, and its dimensions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The two implemented kinds of simple Euclidean Jordan algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlgebraKind {
    /// Real symmetric `r x r` matrices with the symmetrized product.
    SymReal,
    /// `R x R^n` with the Lorentz product, `n >= 2`.
    Lorentz,
}

/// Identifies one algebra instance: kind, rank `r`, ambient dimension `N`
/// and Peirce constant `d`, tied together by `N = r + d * r * (r - 1) / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AlgebraDescriptor {
    kind: AlgebraKind,
    rank: usize,
    ambient_dim: usize,
    peirce_constant: usize,
}

impl AlgebraDescriptor {
    /// `S_r(R)`: rank `r`, dimension `r(r+1)/2`, Peirce constant 1.
    pub fn sym_real(r: usize) -> Result<Self> {
        if r < 1 {
            return Err(Error::InvalidInput("sym_real requires r >= 1".into()));
        }
        Ok(AlgebraDescriptor {
            kind: AlgebraKind::SymReal,
            rank: r,
            ambient_dim: r * (r + 1) / 2,
            peirce_constant: 1,
        })
    }

    /// Lorentz algebra on `R x R^n`: rank 2, dimension `n + 1`, Peirce
    /// constant `n - 1`.
    pub fn lorentz(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput("lorentz requires n >= 2".into()));
        }
        Ok(AlgebraDescriptor {
            kind: AlgebraKind::Lorentz,
            rank: 2,
            ambient_dim: n + 1,
            peirce_constant: n - 1,
        })
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn peirce_constant(&self) -> usize {
        self.peirce_constant
    }

    /// Matrix size for `sym_real` (equals the rank).
    pub fn sym_size(&self) -> Result<usize> {
        match self.kind {
            AlgebraKind::SymReal => Ok(self.rank),
            AlgebraKind::Lorentz => Err(Error::InvalidInput(
                "sym_size is only defined for sym_real".into(),
            )),
        }
    }

    /// Spatial dimension `n` for the Lorentz algebra.
    pub fn lorentz_n(&self) -> Result<usize> {
        match self.kind {
            AlgebraKind::Lorentz => Ok(self.ambient_dim - 1),
            AlgebraKind::SymReal => Err(Error::InvalidInput(
                "lorentz_n is only defined for lorentz".into(),
            )),
        }
    }

    pub(crate) fn check_same(&self, other: &AlgebraDescriptor) -> Result<()> {
        if self != other {
            return Err(Error::DimensionMismatch(format!(
                "{:?} rank {} dim {} vs {:?} rank {} dim {}",
                self.kind, self.rank, self.ambient_dim, other.kind, other.rank, other.ambient_dim
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sym_real_dimensions() {
        let d = AlgebraDescriptor::sym_real(3).unwrap();
        assert_eq!(d.rank(), 3);
        assert_eq!(d.ambient_dim(), 6);
        assert_eq!(d.peirce_constant(), 1);
        // rank/dimension relation
        let r = d.rank();
        assert_eq!(d.ambient_dim(), r + d.peirce_constant() * r * (r - 1) / 2);
    }

    #[test]
    fn lorentz_dimensions() {
        let d = AlgebraDescriptor::lorentz(4).unwrap();
        assert_eq!(d.rank(), 2);
        assert_eq!(d.ambient_dim(), 5);
        assert_eq!(d.peirce_constant(), 3);
        let r = d.rank();
        assert_eq!(d.ambient_dim(), r + d.peirce_constant() * r * (r - 1) / 2);
    }

    #[test]
    fn rejects_degenerate_sizes() {
        assert!(AlgebraDescriptor::sym_real(0).is_err());
        assert!(AlgebraDescriptor::lorentz(1).is_err());
    }
}
