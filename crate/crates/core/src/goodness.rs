//! The good-cone condition, decided two ways.
//!
//! A full-dimensional cone is good when, on every nonzero proper face, the
//! active normals are a `Z`-basis of the lattice points of their real span.
//! [`is_good_facewise`] checks this directly on each face;
//! [`is_good_via_isotropy`] instead computes the isotropy groups of the
//! reduction presentation and asks that all of them be trivial. The
//! subtorus attached to a face is the one whose Lie algebra is the real
//! span of its active normals.
//!
//! Faces are selected by equality on the active normals. (A literal reading
//! with `>=` on the selected normals would describe the whole cone.)

use serde::Serialize;

use crate::cone::{faces_of, Cone, Face};
use crate::error::{Error, Result};
use crate::lattice::{
    is_basis_of_saturation, quotient_invariants, saturation, FiniteAbelianGroup, LatticeVector,
    RationalMatrix,
};
use crate::reduction::build_reduction;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum FailureReason {
    /// More normals vanish on the face than its codimension (non-simplicial).
    ActiveExceedsCodimension,
    /// Independent, but their span has index > 1 in its saturation.
    NotSaturated,
}

impl FailureReason {
    pub fn describe(self) -> &'static str {
        match self {
            FailureReason::ActiveExceedsCodimension => "active normals exceed codimension",
            FailureReason::NotSaturated => "active normals do not span their saturated lattice",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceFailure {
    pub face: Face,
    pub reason: FailureReason,
    /// `Z^(|J| - codim)` for the relations among the active normals plus
    /// the torsion `saturation / span`. Equals the character group of the
    /// isotropy of the face.
    pub obstruction: FiniteAbelianGroup,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoodnessReport {
    pub is_good: bool,
    pub failures: Vec<FaceFailure>,
    pub checked_faces: usize,
}

impl GoodnessReport {
    fn from_failures(mut failures: Vec<FaceFailure>, checked_faces: usize) -> Self {
        failures.sort_by(|a, b| a.face.active.cmp(&b.face.active));
        GoodnessReport {
            is_good: failures.is_empty(),
            failures,
            checked_faces,
        }
    }
}

fn require_full_dimensional(cone: &Cone) -> Result<()> {
    if cone.is_full_dimensional() {
        Ok(())
    } else {
        Err(Error::NotFullDimensional)
    }
}

/// `saturation(gens) / span_Z(gens)`, computed in coordinates of a
/// saturation basis.
fn saturation_index_group(gens: &[LatticeVector]) -> Result<FiniteAbelianGroup> {
    let sat = saturation(gens)?;
    if sat.is_empty() {
        return Ok(FiniteAbelianGroup::trivial());
    }
    let n = gens[0].rank();
    let basis_t = RationalMatrix::from_rows(
        &sat.iter().map(LatticeVector::to_rational).collect::<Vec<_>>(),
        n,
    )
    .transpose();
    let coords = gens
        .iter()
        .map(|g| {
            basis_t
                .solve(&g.to_rational())
                .and_then(|c| c.to_lattice())
                .expect("generators lie in their saturation")
        })
        .collect::<Vec<_>>();
    let quotient = quotient_invariants(&coords, sat.len())?;
    debug_assert!(quotient.is_finite());
    Ok(quotient)
}

pub fn is_good_facewise(cone: &Cone) -> Result<GoodnessReport> {
    require_full_dimensional(cone)?;
    let faces = faces_of(cone);
    let checked = faces.len();
    let mut failures = Vec::new();
    for face in faces {
        let active = face.active_normals(cone);
        let excess = active.len() - face.codim;
        let is_basis = excess == 0 && is_basis_of_saturation(&active)?;
        if is_basis {
            continue;
        }
        let torsion = saturation_index_group(&active)?;
        let reason = if excess > 0 {
            FailureReason::ActiveExceedsCodimension
        } else {
            FailureReason::NotSaturated
        };
        failures.push(FaceFailure {
            obstruction: FiniteAbelianGroup::new(excess, torsion.invariant_factors().to_vec()),
            reason,
            face,
        });
    }
    Ok(GoodnessReport::from_failures(failures, checked))
}

pub fn is_good_via_isotropy(cone: &Cone) -> Result<GoodnessReport> {
    require_full_dimensional(cone)?;
    if cone.normals().is_empty() {
        return Ok(GoodnessReport::from_failures(Vec::new(), 0));
    }
    let reduction = build_reduction(cone)?;
    let checked = reduction.face_isotropies.len();
    let failures = reduction
        .face_isotropies
        .into_iter()
        .filter(|iso| !iso.group.is_trivial())
        .map(|iso| FaceFailure {
            reason: if iso.group.free_rank() > 0 {
                FailureReason::ActiveExceedsCodimension
            } else {
                FailureReason::NotSaturated
            },
            obstruction: iso.group,
            face: iso.face,
        })
        .collect();
    Ok(GoodnessReport::from_failures(failures, checked))
}

/// Goodness through the facewise check.
pub fn is_good(cone: &Cone) -> Result<bool> {
    Ok(is_good_facewise(cone)?.is_good)
}
