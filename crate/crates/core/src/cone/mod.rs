//! Rational polyhedral cones `{eta : <eta, v_i> >= 0}` with both
//! representations cached at construction.
//!
//! Normals are inward. Rays are stored modulo the lineality space `C ∩ -C`,
//! as primitive generators of `C ∩ L^perp` (orthogonal complement for the
//! standard pairing), so that both representations are canonical.

mod dd;
mod face;
mod quotient;

pub use face::{faces_of, Face};
pub use quotient::AdaptedBasis;

use std::fmt;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{
    check_rank, saturation, IntegerMatrix, LatticeVector, RationalMatrix,
    RationalVector,
};
use dd::{double_description, Generators};

#[derive(Clone, Serialize)]
pub struct Cone {
    rank: usize,
    normals: Vec<LatticeVector>,
    rays: Vec<LatticeVector>,
    lineality: Vec<LatticeVector>,
    dimension: usize,
}

impl Cone {
    /// The whole space `Q^rank` (no normals).
    pub fn full_space(rank: usize) -> Cone {
        Cone {
            rank,
            normals: Vec::new(),
            rays: Vec::new(),
            lineality: (0..rank).map(|i| LatticeVector::unit(rank, i)).collect(),
            dimension: rank,
        }
    }

    /// Builds the cone cut out by `raw_normals`, reducing them to a minimal
    /// primitive set in lexicographic order.
    pub fn from_normals(rank: usize, raw_normals: &[LatticeVector]) -> Result<Cone> {
        check_rank(raw_normals, rank)?;
        let mut normals = raw_normals
            .iter()
            .map(LatticeVector::primitivize)
            .collect::<Result<Vec<_>>>()?;
        normals.sort();
        normals.dedup();

        let gens = double_description(rank, &normals);
        let dimension = generator_rank(rank, &gens);
        let (normals, gens) = if dimension == rank {
            let kept = normals
                .into_iter()
                .filter(|v| defines_facet(rank, v, &gens))
                .collect();
            (kept, gens)
        } else {
            drop_redundant(rank, normals)
        };
        Ok(Self::assemble(rank, normals, gens, dimension))
    }

    /// The cone generated by `raw_rays` (nonnegative combinations).
    pub fn from_rays(rank: usize, raw_rays: &[LatticeVector]) -> Result<Cone> {
        check_rank(raw_rays, rank)?;
        if raw_rays.iter().any(LatticeVector::is_zero) {
            return Err(Error::ZeroVector);
        }
        let dual = double_description(rank, raw_rays);
        let mut normals = dual.rays;
        for l in &dual.lineality {
            normals.push(-l);
            normals.push(l.clone());
        }
        Self::from_normals(rank, &normals)
    }

    fn assemble(rank: usize, normals: Vec<LatticeVector>, gens: Generators, dimension: usize) -> Cone {
        let lineality = if gens.lineality.is_empty() {
            Vec::new()
        } else {
            saturation(&gens.lineality).expect("uniform rank")
        };
        let mut rays: Vec<LatticeVector> = gens
            .rays
            .iter()
            .map(|r| project_off(r, &lineality))
            .collect();
        rays.sort();
        rays.dedup();
        Cone {
            rank,
            normals,
            rays,
            lineality,
            dimension,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Minimal primitive inward normals, sorted lexicographically.
    pub fn normals(&self) -> &[LatticeVector] {
        &self.normals
    }

    /// Primitive extreme rays modulo lineality, sorted lexicographically.
    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    /// Hermite basis of the lattice points of `C ∩ -C`.
    pub fn lineality_basis(&self) -> &[LatticeVector] {
        &self.lineality
    }

    pub fn lineality_dim(&self) -> usize {
        self.lineality.len()
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dimension == self.rank
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_full_space(&self) -> bool {
        self.lineality.len() == self.rank
    }

    /// The `rank x N` matrix whose columns are the normals.
    pub fn normal_matrix(&self) -> IntegerMatrix {
        IntegerMatrix::from_columns(&self.normals, self.rank)
    }

    /// Rays together with both orientations of each lineality generator.
    pub fn generators(&self) -> Vec<LatticeVector> {
        let mut g = self.rays.clone();
        for l in &self.lineality {
            g.push(l.clone());
            g.push(-l);
        }
        g
    }

    pub fn contains(&self, eta: &RationalVector) -> bool {
        self.normals
            .iter()
            .all(|v| !v.dot_rational(eta).is_negative())
    }

    pub fn contains_lattice(&self, eta: &LatticeVector) -> bool {
        self.normals.iter().all(|v| !v.dot(eta).is_negative())
    }

    /// `A·C = {A eta : eta in C}` for unimodular `A`.
    pub fn transform(&self, a: &IntegerMatrix) -> Result<Cone> {
        if a.rows() != self.rank || a.cols() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: a.rows(),
            });
        }
        let inv = a
            .unimodular_inverse()
            .ok_or_else(|| Error::InvalidInput("transform matrix is not unimodular".into()))?;
        // <A eta, w> = <eta, A^T w>, so normals map by A^{-T}.
        let inv_t = inv.transpose();
        let normals: Vec<_> = self.normals.iter().map(|v| inv_t.mul_vector(v)).collect();
        Cone::from_normals(self.rank, &normals)
    }
}

impl PartialEq for Cone {
    fn eq(&self, other: &Cone) -> bool {
        self.rank == other.rank && self.rays == other.rays && self.lineality == other.lineality
    }
}

impl Eq for Cone {}

impl fmt::Debug for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Cone")
            .field("rank", &self.rank)
            .field("normals", &self.normals)
            .field("rays", &self.rays)
            .field("lineality", &self.lineality)
            .finish()
    }
}

fn generator_rank(rank: usize, gens: &Generators) -> usize {
    let mut all = gens.rays.clone();
    all.extend(gens.lineality.iter().cloned());
    IntegerMatrix::from_rows(&all, rank).rank()
}

/// For a full-dimensional cone, `v` is irredundant iff the generators it
/// makes tight span a hyperplane.
fn defines_facet(rank: usize, v: &LatticeVector, gens: &Generators) -> bool {
    let mut tight: Vec<LatticeVector> = gens
        .rays
        .iter()
        .filter(|r| v.dot(r).is_zero())
        .cloned()
        .collect();
    tight.extend(gens.lineality.iter().cloned());
    IntegerMatrix::from_rows(&tight, rank).rank() + 1 == rank
}

/// Greedy redundancy removal for cones without interior, where facets
/// alone do not determine the cone.
fn drop_redundant(rank: usize, normals: Vec<LatticeVector>) -> (Vec<LatticeVector>, Generators) {
    let mut current = normals;
    let mut i = 0;
    while i < current.len() {
        let mut rest = current.clone();
        let v = rest.remove(i);
        let g = double_description(rank, &rest);
        let implied = g.rays.iter().all(|r| !v.dot(r).is_negative())
            && g.lineality.iter().all(|l| v.dot(l).is_zero());
        if implied {
            current = rest;
        } else {
            i += 1;
        }
    }
    let gens = double_description(rank, &current);
    (current, gens)
}

/// Primitive generator of the orthogonal projection of `r` onto `span(basis)^perp`.
fn project_off(r: &LatticeVector, basis: &[LatticeVector]) -> LatticeVector {
    if basis.is_empty() {
        return r.clone();
    }
    let n = r.rank();
    let b = RationalMatrix::from_rows(
        &basis.iter().map(LatticeVector::to_rational).collect::<Vec<_>>(),
        n,
    );
    let gram = b.mul(&b.transpose());
    let coeffs = gram
        .inverse()
        .expect("lineality basis is independent")
        .mul_vector(&b.mul_vector(&r.to_rational()));
    let shift = b.transpose().mul_vector(&coeffs);
    let projected = RationalVector::new(
        r.to_rational()
            .coords()
            .iter()
            .zip(shift.coords())
            .map(|(x, s)| x - s)
            .collect(),
    );
    projected
        .clear_denominators()
        .expect("extreme rays are not in the lineality space")
}

/// Reports an `eta` that lies in the cone cut out by all normals except `skip`
/// but violates normal `skip`, witnessing that it is irredundant.
pub fn irredundancy_witness(cone: &Cone, skip: usize) -> Option<LatticeVector> {
    let rest: Vec<_> = cone
        .normals
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != skip)
        .map(|(_, v)| v.clone())
        .collect();
    let v = &cone.normals[skip];
    let g = double_description(cone.rank, &rest);
    g.rays
        .iter()
        .find(|r| v.dot(r).is_negative())
        .cloned()
        .or_else(|| {
            g.lineality.iter().find_map(|l| {
                let d = v.dot(l);
                if d.is_zero() {
                    None
                } else if d.is_negative() {
                    Some(l.clone())
                } else {
                    Some(-l)
                }
            })
        })
}
