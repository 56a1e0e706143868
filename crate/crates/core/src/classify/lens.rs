//! Invariants of a rank-2 wedge spanned by two primitive weights.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{det2, quotient_invariants, FiniteAbelianGroup, IntegerMatrix, LatticeVector};

/// Lattice-canonical pair of a wedge: `q = |det(mu1, mu2)|` and the residue
/// `p in [0, q)` fixing its `GL(2,Z)` orbit, normalized over the swap
/// `(q, p) ~ (q, p^-1 mod q)` by taking the smaller representative.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct LensPair {
    #[serde(serialize_with = "crate::lattice::serialize_bigint")]
    pub q: BigInt,
    #[serde(serialize_with = "crate::lattice::serialize_bigint")]
    pub p: BigInt,
}

fn check_pair(mu1: &LatticeVector, mu2: &LatticeVector) -> Result<()> {
    for mu in [mu1, mu2] {
        if mu.rank() != 2 {
            return Err(Error::RankMismatch {
                expected: 2,
                found: mu.rank(),
            });
        }
        if !mu.is_primitive() {
            return Err(Error::NotPrimitive);
        }
    }
    Ok(())
}

/// `p` for the ordered pair: with `w` completing `mu1` to a basis oriented
/// so that `mu2 = a mu1 + q w`, the class of `a` mod `q`.
fn ordered_residue(mu1: &LatticeVector, mu2: &LatticeVector, q: &BigInt) -> BigInt {
    if q.is_one() {
        return BigInt::zero();
    }
    let g = mu1[0].extended_gcd(&mu1[1]);
    let (s, t) = if g.gcd.is_negative() { (-g.x, -g.y) } else { (g.x, g.y) };
    // det(mu1, w0) = 1
    let w0 = LatticeVector::new(vec![-t, s]);
    let sign = det2(mu1, mu2).signum();
    let w = w0.scale(&sign);
    let a = &sign * det2(mu2, &w);
    a.mod_floor(q)
}

pub fn lens_canonical_form(mu1: &LatticeVector, mu2: &LatticeVector) -> Result<LensPair> {
    check_pair(mu1, mu2)?;
    let d = det2(mu1, mu2);
    if d.is_zero() {
        return Err(Error::DegenerateWedge);
    }
    let q = d.abs();
    let p12 = ordered_residue(mu1, mu2, &q);
    let p21 = ordered_residue(mu2, mu1, &q);
    Ok(LensPair {
        p: p12.min(p21),
        q,
    })
}

/// Cohomology of the 3-manifold glued from `T^2 x [0,1]` by collapsing the
/// circles `ker mu1`, `ker mu2`: `H^1` is the relation lattice of the pair,
/// `H^2 = Z^2 / (Z mu1 + Z mu2)`.
pub fn homology_3d(
    mu1: &LatticeVector,
    mu2: &LatticeVector,
) -> Result<(FiniteAbelianGroup, FiniteAbelianGroup)> {
    check_pair(mu1, mu2)?;
    let pair = [mu1.clone(), mu2.clone()];
    let relations = crate::lattice::integer_kernel(&IntegerMatrix::from_columns(&pair, 2));
    let h1 = FiniteAbelianGroup::free(relations.len());
    let h2 = quotient_invariants(&pair, 2)?;
    Ok((h1, h2))
}
