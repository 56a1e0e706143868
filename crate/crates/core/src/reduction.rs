//! The symplectic-cut presentation of a cone: `C^N` with the standard
//! torus `T^N`, moment map `z -> sum |z_j|^2 e_j*`, and the subtorus
//! `T = ker(T^N -> G)` induced by the normal matrix `W` (columns `v_j`).
//!
//! The contact manifold is `M = (Phi_T^{-1}(0) ∩ S^{2N-1}) / T`. It is
//! reported symbolically; only the lattice data is computed. Level-set
//! points are checked through `t_j = |z_j|^2`, which is all that
//! membership depends on.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::cone::{faces_of, Cone, Face};
use crate::error::{Error, Result};
use crate::lattice::{
    kernel_torus, FiniteAbelianGroup, IntegerMatrix, KernelTorus, RationalVector,
};

/// Isotropy `T_z` of a point `z` whose zero coordinates are exactly the
/// face's active set: `{a in R^J : sum a_j v_j in Z^n} / Z^J`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceIsotropy {
    pub face: Face,
    /// Character group of `T_z`; its free rank is the dimension of `T_z`.
    pub group: FiniteAbelianGroup,
    /// Representatives in `[0,1)^N` of generators of `pi_0(T_z)`.
    pub component_generators: Vec<RationalVector>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionData {
    pub rank: usize,
    pub normal_count: usize,
    /// `n x N`, `W e_j = v_j`.
    pub matrix: IntegerMatrix,
    pub torus: KernelTorus,
    pub face_isotropies: Vec<FaceIsotropy>,
}

impl ReductionData {
    pub fn kernel_basis(&self) -> &[RationalVector] {
        &self.torus.kernel_basis
    }

    pub fn component_group(&self) -> &FiniteAbelianGroup {
        &self.torus.component_group
    }

    /// `T` acts freely on the nonzero level set.
    pub fn is_free(&self) -> bool {
        self.face_isotropies.iter().all(|f| f.group.is_trivial())
    }

    pub fn sphere_dimension(&self) -> usize {
        2 * self.normal_count - 1
    }

    pub fn manifold_dimension(&self) -> usize {
        2 * self.rank - 1
    }
}

pub fn build_reduction(cone: &Cone) -> Result<ReductionData> {
    if !cone.is_full_dimensional() {
        return Err(Error::NotFullDimensional);
    }
    if cone.normals().is_empty() {
        return Err(Error::NoNormals);
    }
    let matrix = cone.normal_matrix();
    let torus = kernel_torus(&matrix);
    let n_normals = cone.normals().len();
    let face_isotropies = faces_of(cone)
        .into_iter()
        .map(|face| {
            let sub = kernel_torus(&matrix.select_columns(&face.active));
            let component_generators = sub
                .component_generators
                .iter()
                .map(|g| {
                    let mut full = vec![num_rational::BigRational::zero(); n_normals];
                    for (k, &j) in face.active.iter().enumerate() {
                        full[j] = g[k].clone();
                    }
                    RationalVector::new(full)
                })
                .collect();
            FaceIsotropy {
                group: sub.as_group(),
                component_generators,
                face,
            }
        })
        .collect();
    Ok(ReductionData {
        rank: cone.rank(),
        normal_count: n_normals,
        matrix,
        torus,
        face_isotropies,
    })
}

/// A point to test against the identity `Phi_T^{-1}(0) = Phi^{-1}(W^T(C))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum LevelSample {
    /// `eta` in `g*`; its image `t = W^T eta` is checked.
    Moment(RationalVector),
    /// `t = (|z_1|^2, ..., |z_N|^2)`; a preimage `eta` is solved for.
    Level(RationalVector),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SampleCheck {
    pub sample: LevelSample,
    /// `Moment`: whether `eta` is in the cone. `Level`: whether `t` is on the level set.
    pub inside: bool,
    /// `Moment`: the image `t`. `Level`: a solution `eta` of `W^T eta = t`, if any.
    pub witness: Option<RationalVector>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationOutcome {
    pub checks: Vec<SampleCheck>,
}

impl VerificationOutcome {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn annihilates(t: &RationalVector, kernel: &[RationalVector]) -> bool {
    kernel.iter().all(|k| t.dot(k).is_zero())
}

fn nonnegative(t: &RationalVector) -> bool {
    !t.has_negative()
}

pub fn verify_level_set_samples(
    reduction: &ReductionData,
    cone: &Cone,
    samples: &[LevelSample],
) -> Result<VerificationOutcome> {
    let w = reduction.matrix.to_rational();
    let wt = w.transpose();
    let kernel = reduction.kernel_basis();
    let mut checks = Vec::with_capacity(samples.len());
    for sample in samples {
        let check = match sample {
            LevelSample::Moment(eta) => {
                expect_rank(eta, reduction.rank)?;
                let t = wt.mul_vector(eta);
                let inside = cone.contains(eta);
                let passed = if inside {
                    nonnegative(&t) && annihilates(&t, kernel)
                } else {
                    t.coords().iter().any(Signed::is_negative)
                };
                SampleCheck {
                    sample: sample.clone(),
                    inside,
                    witness: Some(t),
                    passed,
                }
            }
            LevelSample::Level(t) => {
                expect_rank(t, reduction.normal_count)?;
                let in_image = annihilates(t, kernel);
                let eta = wt.solve(t);
                let on_level_set = in_image && nonnegative(t);
                let passed = match &eta {
                    Some(eta) => {
                        in_image && wt.mul_vector(eta) == *t && cone.contains(eta) == nonnegative(t)
                    }
                    None => !in_image,
                };
                SampleCheck {
                    sample: sample.clone(),
                    inside: on_level_set,
                    witness: eta,
                    passed,
                }
            }
        };
        checks.push(check);
    }
    Ok(VerificationOutcome { checks })
}

fn expect_rank(v: &RationalVector, rank: usize) -> Result<()> {
    if v.rank() == rank {
        Ok(())
    } else {
        Err(Error::RankMismatch {
            expected: rank,
            found: v.rank(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::LatticeVector;

    fn v(c: &[i64]) -> LatticeVector {
        LatticeVector::from_i64s(c)
    }

    fn q(c: &[i64]) -> RationalVector {
        v(c).to_rational()
    }

    #[test]
    fn orthant_reduction() {
        let c = Cone::from_normals(2, &[v(&[1, 0]), v(&[0, 1])]).unwrap();
        let r = build_reduction(&c).unwrap();
        assert_eq!(r.normal_count, 2);
        // stored lexicographic order puts e2 before e1
        assert_eq!(r.matrix, IntegerMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]));
        assert!(r.matrix.is_unimodular());
        assert!(r.torus.is_trivial());
        assert!(r.is_free());
        assert_eq!(r.sphere_dimension(), 3);
    }

    #[test]
    fn rp3_reduction() {
        let c = Cone::from_normals(2, &[v(&[1, 0]), v(&[1, 2])]).unwrap();
        let r = build_reduction(&c).unwrap();
        assert_eq!(r.component_group(), &FiniteAbelianGroup::cyclic(2));
        assert_eq!(
            r.torus.component_generators,
            vec![RationalVector::from_ratios(&[(1, 2), (1, 2)])]
        );
        assert!(r.kernel_basis().is_empty());
        assert!(r.is_free());
    }

    #[test]
    fn nongood_reduction_not_free() {
        let c = Cone::from_normals(3, &[v(&[1, 0, 0]), v(&[-1, 0, 2])]).unwrap();
        let r = build_reduction(&c).unwrap();
        assert!(!r.is_free());
        let bad: Vec<_> = r.face_isotropies.iter().filter(|f| !f.group.is_trivial()).collect();
        assert_eq!(bad.len(), 1);
        assert_eq!(bad[0].face.codim, 2);
        assert_eq!(bad[0].group, FiniteAbelianGroup::cyclic(2));
    }

    #[test]
    fn reduction_errors() {
        assert_eq!(build_reduction(&Cone::full_space(3)), Err(Error::NoNormals));
        let flat = Cone::from_normals(2, &[v(&[1, 0]), v(&[-1, 0])]).unwrap();
        assert_eq!(build_reduction(&flat), Err(Error::NotFullDimensional));
    }

    #[test]
    fn level_set_examples() {
        let orthant = Cone::from_normals(2, &[v(&[1, 0]), v(&[0, 1])]).unwrap();
        let r = build_reduction(&orthant).unwrap();
        let out = verify_level_set_samples(&r, &orthant, &[LevelSample::Moment(q(&[1, 1]))]).unwrap();
        assert!(out.all_passed());
        assert_eq!(out.checks[0].witness, Some(q(&[1, 1])));

        let wedge = Cone::from_normals(2, &[v(&[1, 0]), v(&[1, 2])]).unwrap();
        let r = build_reduction(&wedge).unwrap();
        let out = verify_level_set_samples(
            &r,
            &wedge,
            &[LevelSample::Moment(q(&[1, 0])), LevelSample::Moment(q(&[-1, 0]))],
        )
        .unwrap();
        assert!(out.all_passed());
        assert!(out.checks[0].inside);
        assert_eq!(out.checks[0].witness, Some(q(&[1, 1])));
        assert!(!out.checks[1].inside);
        assert_eq!(out.checks[1].witness, Some(q(&[-1, -1])));
    }

    #[test]
    fn level_samples_outside_image() {
        let c = Cone::from_rays(3, &[v(&[1, 0, 1]), v(&[-1, 0, 1]), v(&[0, 1, 1]), v(&[0, -1, 1])])
            .unwrap();
        let r = build_reduction(&c).unwrap();
        assert_eq!(r.kernel_basis().len(), 1);
        let t = r.matrix.transpose().to_rational().mul_vector(&q(&[0, 0, 1]));
        let mut off = t.coords().to_vec();
        off[0] += num_rational::BigRational::from_integer(1.into());
        let out = verify_level_set_samples(
            &r,
            &c,
            &[LevelSample::Level(t), LevelSample::Level(RationalVector::new(off))],
        )
        .unwrap();
        assert!(out.all_passed());
        assert!(out.checks[0].inside);
        assert_eq!(out.checks[0].witness, Some(q(&[0, 0, 1])));
        assert!(!out.checks[1].inside);
        assert!(out.checks[1].witness.is_none());
    }

    #[test]
    fn level_sample_rank_mismatch() {
        let c = Cone::from_normals(2, &[v(&[1, 0]), v(&[0, 1])]).unwrap();
        let r = build_reduction(&c).unwrap();
        assert!(matches!(
            verify_level_set_samples(&r, &c, &[LevelSample::Moment(q(&[1, 1, 1]))]),
            Err(Error::RankMismatch { .. })
        ));
    }
}
