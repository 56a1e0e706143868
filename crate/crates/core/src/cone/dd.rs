//! Double description method over the integers.
//!
//! Starts from the whole space (lineality basis `e_1..e_n`, no rays) and
//! intersects with one half-space `<a, x> >= 0` at a time. Rays carry the
//! set of processed constraints they make tight; two rays of opposite sign
//! are combined only if they are adjacent, which is decided combinatorially
//! (no third ray is tight on everything both are tight on).

use fixedbitset::FixedBitSet;
use num_traits::{Signed, Zero};

use crate::lattice::LatticeVector;

pub(crate) struct Generators {
    pub rays: Vec<LatticeVector>,
    pub lineality: Vec<LatticeVector>,
}

struct Ray {
    v: LatticeVector,
    tight: FixedBitSet,
}

fn primitive(v: LatticeVector) -> LatticeVector {
    v.primitivize().expect("combination of independent generators is nonzero")
}

/// Extreme rays and a lineality basis of `{x : <a, x> >= 0 for a in constraints}`.
pub(crate) fn double_description(rank: usize, constraints: &[LatticeVector]) -> Generators {
    let m = constraints.len();
    let mut lineality: Vec<LatticeVector> = (0..rank).map(|i| LatticeVector::unit(rank, i)).collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (k, a) in constraints.iter().enumerate() {
        if let Some(pos) = lineality.iter().position(|b| !a.dot(b).is_zero()) {
            let mut b0 = lineality.swap_remove(pos);
            let mut s = a.dot(&b0);
            if s.is_negative() {
                b0 = -&b0;
                s = -s;
            }
            for b in lineality.iter_mut() {
                let t = a.dot(b);
                if !t.is_zero() {
                    *b = primitive(b.combine(&s, &b0, &(-t)));
                }
            }
            for r in rays.iter_mut() {
                let t = a.dot(&r.v);
                if !t.is_zero() {
                    r.v = primitive(r.v.combine(&s, &b0, &(-t)));
                }
                r.tight.insert(k);
            }
            // b0 was in the lineality of the previous cone, so every earlier
            // constraint is tight on it.
            let mut tight = FixedBitSet::with_capacity(m);
            tight.insert_range(..k);
            rays.push(Ray { v: b0, tight });
            continue;
        }

        let values: Vec<_> = rays.iter().map(|r| a.dot(&r.v)).collect();
        let mut next: Vec<Ray> = Vec::new();
        for (i, r) in rays.iter().enumerate() {
            if values[i].is_negative() {
                continue;
            }
            for (j, q) in rays.iter().enumerate() {
                if !values[j].is_negative() || !values[i].is_positive() {
                    continue;
                }
                let common = {
                    let mut c = r.tight.clone();
                    c.intersect_with(&q.tight);
                    c
                };
                let blocked = rays
                    .iter()
                    .enumerate()
                    .any(|(l, o)| l != i && l != j && common.is_subset(&o.tight));
                if blocked {
                    continue;
                }
                let v = primitive(q.v.combine(&values[i], &r.v, &(-&values[j])));
                let mut tight = common;
                tight.insert(k);
                next.push(Ray { v, tight });
            }
        }
        for (i, r) in rays.into_iter().enumerate() {
            if values[i].is_negative() {
                continue;
            }
            let mut r = r;
            if values[i].is_zero() {
                r.tight.insert(k);
            }
            next.push(r);
        }
        rays = next;
    }

    Generators {
        rays: rays.into_iter().map(|r| r.v).collect(),
        lineality,
    }
}
