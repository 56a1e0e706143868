//! `GL(n,Z)` equivalence of cones by exact ray matching.
//!
//! Both cones are first written in coordinates of their linear hull and then
//! modulo their lineality space, which leaves pointed full-dimensional cones
//! in `Z^m`. A unimodular `B` between those is determined by the images of
//! any `m` independent rays, so it suffices to fix one independent subset of
//! the first cone's rays and try every ordered choice of targets. The
//! resulting `B` is lifted back to `Z^n` through the adapted bases.

use num_traits::One;
use serde::Serialize;

use super::lens::lens_canonical_form;
use crate::cone::{AdaptedBasis, Cone};
use crate::error::{Error, Result};
use crate::lattice::{IntegerMatrix, LatticeVector, RationalMatrix};

/// Searches are refused beyond this many rays.
pub const RAY_CAP: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum EquivalenceOutcome {
    /// Unimodular `A` with `A·C1 = C2`, with `det A = 1` when possible.
    Equivalent(IntegerMatrix),
    NotEquivalent,
    CapExceeded { rays: usize },
}

impl EquivalenceOutcome {
    pub fn witness(&self) -> Option<&IntegerMatrix> {
        match self {
            EquivalenceOutcome::Equivalent(a) => Some(a),
            _ => None,
        }
    }
}

fn block_diagonal(a: &IntegerMatrix, b: &IntegerMatrix) -> IntegerMatrix {
    let n = a.rows() + b.rows();
    let mut rows = Vec::with_capacity(n);
    for i in 0..a.rows() {
        let mut r = a.row(i).into_coords();
        r.resize(n, 0.into());
        rows.push(LatticeVector::new(r));
    }
    for i in 0..b.rows() {
        let mut r = vec![0.into(); a.rows()];
        r.extend(b.row(i).into_coords());
        rows.push(LatticeVector::new(r));
    }
    IntegerMatrix::from_rows(&rows, n)
}

/// `x -> Q2^T diag(I, B) Q1^{-T} x`: the map acting as `B` on coordinates
/// beyond `split` and as the identity on the first `split`.
fn lift(b: &IntegerMatrix, from: &AdaptedBasis, to: &AdaptedBasis) -> IntegerMatrix {
    let inner = block_diagonal(&IntegerMatrix::identity(from.split), b);
    let to_basis = to.basis.transpose();
    let from_coords = from.inverse.transpose();
    &(&to_basis * &inner) * &from_coords
}

/// The same, with `B` acting on the first `split` coordinates.
fn lift_head(b: &IntegerMatrix, from: &AdaptedBasis, to: &AdaptedBasis) -> IntegerMatrix {
    let rest = from.basis.rows() - from.split;
    let inner = block_diagonal(b, &IntegerMatrix::identity(rest));
    &(&to.basis.transpose() * &inner) * &from.inverse.transpose()
}

/// Greedy choice of `m` linearly independent vectors.
fn independent_subset(vs: &[LatticeVector], m: usize) -> Vec<LatticeVector> {
    let mut chosen: Vec<LatticeVector> = Vec::new();
    for v in vs {
        let mut trial = chosen.clone();
        trial.push(v.clone());
        if IntegerMatrix::from_rows(&trial, m).rank() == trial.len() {
            chosen = trial;
            if chosen.len() == m {
                break;
            }
        }
    }
    chosen
}

/// Unimodular `B` with `B(x1) = x2` as sets, for ray sets of pointed
/// full-dimensional cones in `Z^m`. Candidates are passed to `accept`.
fn match_rays(
    x1: &[LatticeVector],
    x2: &[LatticeVector],
    m: usize,
    accept: &mut dyn FnMut(&IntegerMatrix) -> bool,
) -> Option<IntegerMatrix> {
    if m == 0 {
        let b = IntegerMatrix::identity(0);
        return accept(&b).then_some(b);
    }
    let basis = independent_subset(x1, m);
    debug_assert_eq!(basis.len(), m);
    let x_inv = IntegerMatrix::from_columns(&basis, m)
        .to_rational()
        .inverse()
        .expect("independent subset");
    let mut target_set = x2.to_vec();
    target_set.sort();

    let mut used = vec![false; x2.len()];
    let mut chosen: Vec<usize> = Vec::with_capacity(m);
    search(x1, x2, m, &x_inv, &target_set, &mut used, &mut chosen, accept)
}

#[allow(clippy::too_many_arguments)]
fn search(
    x1: &[LatticeVector],
    x2: &[LatticeVector],
    m: usize,
    x_inv: &RationalMatrix,
    target_set: &[LatticeVector],
    used: &mut [bool],
    chosen: &mut Vec<usize>,
    accept: &mut dyn FnMut(&IntegerMatrix) -> bool,
) -> Option<IntegerMatrix> {
    if chosen.len() == m {
        let ys: Vec<_> = chosen.iter().map(|&i| x2[i].clone()).collect();
        let y = IntegerMatrix::from_columns(&ys, m).to_rational();
        let b = y.mul(x_inv).to_integer()?;
        if !b.is_unimodular() {
            return None;
        }
        let mut image: Vec<_> = x1.iter().map(|x| b.mul_vector(x)).collect();
        image.sort();
        if image == target_set && accept(&b) {
            return Some(b);
        }
        return None;
    }
    for i in 0..x2.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        chosen.push(i);
        let found = search(x1, x2, m, x_inv, target_set, used, chosen, accept);
        chosen.pop();
        used[i] = false;
        if found.is_some() {
            return found;
        }
    }
    None
}

fn is_wedge(c: &Cone) -> bool {
    c.rank() == 2 && c.is_pointed() && c.is_full_dimensional()
}

pub fn cones_equivalent(c1: &Cone, c2: &Cone) -> Result<EquivalenceOutcome> {
    if c1.rank() != c2.rank() {
        return Err(Error::RankMismatch {
            expected: c1.rank(),
            found: c2.rank(),
        });
    }
    if c1.dimension() != c2.dimension()
        || c1.lineality_dim() != c2.lineality_dim()
        || c1.rays().len() != c2.rays().len()
        || c1.normals().len() != c2.normals().len()
    {
        return Ok(EquivalenceOutcome::NotEquivalent);
    }
    if is_wedge(c1) && is_wedge(c2) {
        let l1 = lens_canonical_form(&c1.rays()[0], &c1.rays()[1])?;
        let l2 = lens_canonical_form(&c2.rays()[0], &c2.rays()[1])?;
        if l1 != l2 {
            return Ok(EquivalenceOutcome::NotEquivalent);
        }
    }
    if c1.rays().len() > RAY_CAP {
        return Ok(EquivalenceOutcome::CapExceeded {
            rays: c1.rays().len(),
        });
    }

    let (h1, p1) = c1.restrict_to_hull();
    let (h2, p2) = c2.restrict_to_hull();
    let (k1, q1) = h1.quotient_by_lineality();
    let (k2, q2) = h2.quotient_by_lineality();
    let m = k1.rank();

    // Orientation-preserving witnesses are preferred; the first reversing
    // one is kept in case none exists.
    let mut reversing: Option<IntegerMatrix> = None;
    let mut accept = |b: &IntegerMatrix| {
        let a = lift_head(&lift(b, &q1, &q2), &p1, &p2);
        if !c1.transform(&a).map(|img| img == *c2).unwrap_or(false) {
            return false;
        }
        if a.determinant().is_one() {
            return true;
        }
        reversing.get_or_insert(a);
        false
    };
    let preserving = match_rays(k1.rays(), k2.rays(), m, &mut accept);
    Ok(match preserving
        .map(|b| lift_head(&lift(&b, &q1, &q2), &p1, &p2))
        .or(reversing)
    {
        Some(a) => EquivalenceOutcome::Equivalent(a),
        None => EquivalenceOutcome::NotEquivalent,
    })
}
