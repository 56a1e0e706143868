use std::collections::{BTreeMap, VecDeque};

use fixedbitset::FixedBitSet;
use num_traits::Zero;
use serde::Serialize;

use super::Cone;
use crate::lattice::{saturation, LatticeVector};

/// A nonzero proper face `F = C ∩ {<eta, v_j> = 0, j in J}` with `J` maximal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Face {
    /// Indices into [`Cone::normals`], sorted.
    pub active: Vec<usize>,
    pub codim: usize,
    /// Basis of `span_R(F) ∩ Z^n`.
    pub span_basis: Vec<LatticeVector>,
    /// Indices into [`Cone::rays`] of the rays lying in the face.
    pub rays: Vec<usize>,
}

impl Face {
    pub fn dim(&self) -> usize {
        self.span_basis.len()
    }

    pub fn active_normals(&self, cone: &Cone) -> Vec<LatticeVector> {
        self.active.iter().map(|&i| cone.normals()[i].clone()).collect()
    }
}

struct Incidence<'a> {
    cone: &'a Cone,
    /// For each ray, the normals vanishing on it.
    tight: Vec<FixedBitSet>,
}

struct Closure {
    active: FixedBitSet,
    rays: Vec<usize>,
}

impl Incidence<'_> {
    fn new(cone: &Cone) -> Incidence<'_> {
        let n = cone.normals().len();
        let tight = cone
            .rays()
            .iter()
            .map(|r| {
                let mut s = FixedBitSet::with_capacity(n);
                for (i, v) in cone.normals().iter().enumerate() {
                    if v.dot(r).is_zero() {
                        s.insert(i);
                    }
                }
                s
            })
            .collect();
        Incidence { cone, tight }
    }

    /// The face cut out by `j`, with its maximal active set.
    fn close(&self, j: &FixedBitSet) -> Closure {
        let n = self.cone.normals().len();
        let rays: Vec<usize> = (0..self.tight.len())
            .filter(|&r| j.is_subset(&self.tight[r]))
            .collect();
        let mut active = FixedBitSet::with_capacity(n);
        active.insert_range(..);
        for &r in &rays {
            active.intersect_with(&self.tight[r]);
        }
        Closure { active, rays }
    }

    fn is_zero_face(&self, c: &Closure) -> bool {
        c.rays.is_empty() && self.cone.lineality_dim() == 0
    }
}

/// All nonzero proper faces of `cone`, sorted by active index set.
///
/// Faces are generated upward from the facets by closing active sets, so
/// each geometric face appears exactly once with its maximal active set.
pub fn faces_of(cone: &Cone) -> Vec<Face> {
    let n = cone.normals().len();
    let inc = Incidence::new(cone);
    let improper = inc.close(&FixedBitSet::with_capacity(n)).active;

    let mut seen: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    let mut queue: VecDeque<FixedBitSet> = VecDeque::new();
    for i in 0..n {
        let mut s = FixedBitSet::with_capacity(n);
        s.insert(i);
        queue.push_back(s);
    }
    while let Some(j) = queue.pop_front() {
        let c = inc.close(&j);
        if inc.is_zero_face(&c) || c.active == improper {
            continue;
        }
        let key: Vec<usize> = c.active.ones().collect();
        if seen.contains_key(&key) {
            continue;
        }
        for i in 0..n {
            if !c.active.contains(i) {
                let mut next = c.active.clone();
                next.insert(i);
                queue.push_back(next);
            }
        }
        seen.insert(key, c.rays);
    }

    seen.into_iter()
        .map(|(active, rays)| {
            let mut gens: Vec<LatticeVector> = rays.iter().map(|&r| cone.rays()[r].clone()).collect();
            gens.extend(cone.lineality_basis().iter().cloned());
            let span_basis = saturation(&gens).expect("uniform rank");
            Face {
                active,
                codim: cone.rank() - span_basis.len(),
                span_basis,
                rays,
            }
        })
        .collect()
}
