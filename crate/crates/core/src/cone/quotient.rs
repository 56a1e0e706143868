//! Change of lattice coordinates adapted to the linear hull and the
//! lineality space of a cone.

use super::Cone;
use crate::lattice::{complete_basis, saturation, IntegerMatrix, LatticeVector};

/// A unimodular basis of `Z^n` (rows of `basis`) whose first `split` rows
/// span a saturated sublattice.
#[derive(Clone, Debug)]
pub struct AdaptedBasis {
    pub basis: IntegerMatrix,
    pub inverse: IntegerMatrix,
    pub split: usize,
}

impl AdaptedBasis {
    pub fn new(sub: &[LatticeVector], n: usize) -> AdaptedBasis {
        let basis = complete_basis(sub, n)
            .expect("uniform rank")
            .expect("saturated sublattice basis");
        let inverse = basis.unimodular_inverse().expect("completed basis is unimodular");
        AdaptedBasis {
            basis,
            inverse,
            split: sub.len(),
        }
    }

    /// `c` with `x = sum c_i basis_i`.
    pub fn coordinates(&self, x: &LatticeVector) -> LatticeVector {
        crate::lattice::coordinates(x, &self.inverse)
    }

    fn slice(&self, x: &LatticeVector, range: std::ops::Range<usize>) -> LatticeVector {
        LatticeVector::new(self.coordinates(x).coords()[range].to_vec())
    }

    /// Coordinates along the sublattice.
    pub fn head(&self, x: &LatticeVector) -> LatticeVector {
        self.slice(x, 0..self.split)
    }

    /// Coordinates modulo the sublattice.
    pub fn tail(&self, x: &LatticeVector) -> LatticeVector {
        self.slice(x, self.split..self.basis.rows())
    }
}

impl Cone {
    /// The cone as a full-dimensional cone in coordinates of the lattice
    /// points of its linear hull.
    pub fn restrict_to_hull(&self) -> (Cone, AdaptedBasis) {
        let hull = saturation(&self.generators()).expect("uniform rank");
        let adapted = AdaptedBasis::new(&hull, self.rank());
        let gens: Vec<_> = self.generators().iter().map(|g| adapted.head(g)).collect();
        let cone = if hull.is_empty() {
            Cone::full_space(0)
        } else {
            Cone::from_rays(hull.len(), &gens).expect("generators are nonzero")
        };
        (cone, adapted)
    }

    /// The pointed cone `C / (C ∩ -C)` in coordinates of `Z^n / L`.
    pub fn quotient_by_lineality(&self) -> (Cone, AdaptedBasis) {
        let adapted = AdaptedBasis::new(self.lineality_basis(), self.rank());
        let m = self.rank() - self.lineality_dim();
        let rays: Vec<_> = self.rays().iter().map(|r| adapted.tail(r)).collect();
        let cone = Cone::from_rays(m, &rays).expect("rays leave the lineality space");
        (cone, adapted)
    }
}
