//! The four-case classification of moment cones.
//!
//! * rank 2, full plane: `T^3` with `alpha_n = cos(nt) dθ1 + sin(nt) dθ2`;
//!   the cone does not see `n`, so it is supplied (default 1, flagged).
//! * rank 2, proper wedge: a lens space, recorded by the lattice pair
//!   `(q, p)` of its rays together with `H^1`, `H^2`. The classical
//!   parametrization by two rationals `0 <= r < 1, r < q` is not
//!   constructed here; how it relates to `(q, p)` or to the angle interval
//!   of the wedge is left undecided.
//! * rank >= 3, full space: a principal `T^n`-bundle over `S^(n-1)`,
//!   counted by `H^2(S^(n-1), Z^n)`.
//! * rank >= 3, proper cone: realizable iff good, in which case the cone is
//!   the complete invariant. Cones with lineality `0 < k < n` give
//!   `T^k x S^(2n-1-k)`.

mod equivalence;
mod lens;

pub use equivalence::{cones_equivalent, EquivalenceOutcome, RAY_CAP};
pub use lens::{homology_3d, lens_canonical_form, LensPair};

use serde::Serialize;

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::goodness::{is_good_facewise, GoodnessReport};
use crate::lattice::{is_basis_of_saturation, FiniteAbelianGroup, LatticeVector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentInput {
    pub cone: Cone,
    pub winding: Option<u64>,
}

impl MomentInput {
    pub fn new(cone: Cone, winding: Option<u64>) -> Result<MomentInput> {
        if cone.rank() < 2 {
            return Err(Error::InvalidInput(format!(
                "rank must be at least 2, got {}",
                cone.rank()
            )));
        }
        if let Some(w) = winding {
            if w == 0 {
                return Err(Error::InvalidInput("winding must be positive".into()));
            }
            if cone.rank() != 2 || !cone.is_full_space() {
                return Err(Error::InvalidInput(
                    "winding applies only to the full plane in rank 2".into(),
                ));
            }
        }
        Ok(MomentInput { cone, winding })
    }

    pub fn rank(&self) -> usize {
        self.cone.rank()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Obstruction {
    /// The cone spans a proper subspace, so it is no moment cone.
    NotFullDimensional { dimension: usize },
    NotGood { report: GoodnessReport },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "case")]
pub enum ClassificationRecord {
    Free3D {
        winding: u64,
        winding_defaulted: bool,
    },
    Lens3D {
        mu1: LatticeVector,
        mu2: LatticeVector,
        #[serde(flatten)]
        lens: LensPair,
        h1: FiniteAbelianGroup,
        h2: FiniteAbelianGroup,
    },
    FreeBundle {
        base_sphere_dim: usize,
        class_group: FiniteAbelianGroup,
    },
    GoodCone {
        cone: Cone,
    },
    SplitProduct {
        /// Torus factor `T^k`, `k` the lineality dimension.
        torus_dim: usize,
        sphere_dim: usize,
        /// The cone modulo its lineality space.
        projected: Cone,
    },
    NotRealizable {
        obstruction: Obstruction,
    },
}

impl ClassificationRecord {
    pub fn case_name(&self) -> &'static str {
        match self {
            ClassificationRecord::Free3D { .. } => "Free3D",
            ClassificationRecord::Lens3D { .. } => "Lens3D",
            ClassificationRecord::FreeBundle { .. } => "FreeBundle",
            ClassificationRecord::GoodCone { .. } => "GoodCone",
            ClassificationRecord::SplitProduct { .. } => "SplitProduct",
            ClassificationRecord::NotRealizable { .. } => "NotRealizable",
        }
    }

    pub fn is_realizable(&self) -> bool {
        !matches!(self, ClassificationRecord::NotRealizable { .. })
    }
}

/// `H^2(S^d, Z^n)`.
fn sphere_h2(d: usize, n: usize) -> FiniteAbelianGroup {
    if d == 2 {
        FiniteAbelianGroup::free(n)
    } else {
        FiniteAbelianGroup::trivial()
    }
}

/// A cone with lineality is good iff its pointed quotient is good and the
/// normals there (all vanishing on the apex, i.e. on the lineality face
/// upstairs) are a basis of `Z^(n-k)`.
fn split_product(cone: &Cone) -> Result<ClassificationRecord> {
    let (projected, _) = cone.quotient_by_lineality();
    let m = projected.rank();
    let apex_basis =
        projected.normals().len() == m && is_basis_of_saturation(projected.normals())?;
    let good = apex_basis && is_good_facewise(&projected)?.is_good;
    if !good {
        return not_good(cone);
    }
    let k = cone.lineality_dim();
    Ok(ClassificationRecord::SplitProduct {
        torus_dim: k,
        sphere_dim: 2 * cone.rank() - 1 - k,
        projected,
    })
}

fn not_good(cone: &Cone) -> Result<ClassificationRecord> {
    let report = is_good_facewise(cone)?;
    debug_assert!(!report.is_good);
    Ok(ClassificationRecord::NotRealizable {
        obstruction: Obstruction::NotGood { report },
    })
}

pub fn classify(input: &MomentInput) -> Result<ClassificationRecord> {
    let cone = &input.cone;
    let n = cone.rank();
    if cone.is_full_space() {
        return Ok(if n == 2 {
            ClassificationRecord::Free3D {
                winding: input.winding.unwrap_or(1),
                winding_defaulted: input.winding.is_none(),
            }
        } else {
            ClassificationRecord::FreeBundle {
                base_sphere_dim: n - 1,
                class_group: sphere_h2(n - 1, n),
            }
        });
    }
    if !cone.is_full_dimensional() {
        return Ok(ClassificationRecord::NotRealizable {
            obstruction: Obstruction::NotFullDimensional {
                dimension: cone.dimension(),
            },
        });
    }
    if !cone.is_pointed() {
        return split_product(cone);
    }
    if n == 2 {
        let (mu1, mu2) = (&cone.rays()[0], &cone.rays()[1]);
        let lens = lens_canonical_form(mu1, mu2)?;
        let (h1, h2) = homology_3d(mu1, mu2)?;
        return Ok(ClassificationRecord::Lens3D {
            mu1: mu1.clone(),
            mu2: mu2.clone(),
            lens,
            h1,
            h2,
        });
    }
    let report = is_good_facewise(cone)?;
    Ok(if report.is_good {
        ClassificationRecord::GoodCone { cone: cone.clone() }
    } else {
        ClassificationRecord::NotRealizable {
            obstruction: Obstruction::NotGood { report },
        }
    })
}
