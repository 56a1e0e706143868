//! Smith and Hermite normal forms over `Z`.
//!
//! Pivots are always the nonzero entry of smallest absolute value in the
//! active block, ties broken by lowest row index and then lowest column
//! index, so the transforms are deterministic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntegerMatrix;

/// `diagonal = left * A * right` with `left`, `right` unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub left: IntegerMatrix,
    pub diagonal: IntegerMatrix,
    pub right: IntegerMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries, in divisibility order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let d = &self.diagonal;
        (0..d.rows().min(d.cols()))
            .map(|i| d[(i, i)].clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// `hermite = transform * A` with `transform` unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteForm {
    pub hermite: IntegerMatrix,
    pub transform: IntegerMatrix,
}

impl HermiteForm {
    /// The nonzero rows of the Hermite form, a canonical basis of the row lattice.
    pub fn nonzero_rows(&self) -> Vec<super::LatticeVector> {
        self.hermite
            .row_vectors()
            .into_iter()
            .filter(|r| !r.is_zero())
            .collect()
    }
}

fn smallest_pivot(m: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..m.rows() {
        for j in t..m.cols() {
            let x = &m[(i, j)];
            if x.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if m[(bi, bj)].abs() <= x.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

pub fn smith_normal_form(a: &IntegerMatrix) -> SmithForm {
    let (r, c) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut left = IntegerMatrix::identity(r);
    let mut right = IntegerMatrix::identity(c);

    for t in 0..r.min(c) {
        while let Some((pi, pj)) = smallest_pivot(&d, t) {
            d.swap_rows(t, pi);
            left.swap_rows(t, pi);
            d.swap_cols(t, pj);
            right.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..r {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -(&d[(i, t)] / &d[(t, t)]);
                d.add_row_multiple(i, t, &q);
                left.add_row_multiple(i, t, &q);
                clean &= d[(i, t)].is_zero();
            }
            for j in t + 1..c {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -(&d[(t, j)] / &d[(t, t)]);
                d.add_col_multiple(j, t, &q);
                right.add_col_multiple(j, t, &q);
                clean &= d[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }

            // Row and column are clear; enforce divisibility of the rest.
            let offending = (t + 1..r).find(|&i| {
                (t + 1..c).any(|j| !d[(i, j)].is_multiple_of(&d[(t, t)]))
            });
            match offending {
                Some(i) => {
                    let one = BigInt::from(1);
                    d.add_row_multiple(t, i, &one);
                    left.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            left.negate_row(t);
        }
    }
    SmithForm {
        left,
        diagonal: d,
        right,
    }
}

pub fn hermite_normal_form(a: &IntegerMatrix) -> HermiteForm {
    let (r, c) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut u = IntegerMatrix::identity(r);
    let mut row = 0;

    for col in 0..c {
        if row == r {
            break;
        }
        loop {
            let pivot = (row..r)
                .filter(|&i| !h[(i, col)].is_zero())
                .min_by(|&x, &y| h[(x, col)].abs().cmp(&h[(y, col)].abs()).then(x.cmp(&y)));
            let Some(p) = pivot else { break };
            h.swap_rows(row, p);
            u.swap_rows(row, p);
            let mut clean = true;
            for i in row + 1..r {
                if h[(i, col)].is_zero() {
                    continue;
                }
                let q = -(&h[(i, col)] / &h[(row, col)]);
                h.add_row_multiple(i, row, &q);
                u.add_row_multiple(i, row, &q);
                clean &= h[(i, col)].is_zero();
            }
            if clean {
                break;
            }
        }
        if h[(row, col)].is_zero() {
            continue;
        }
        if h[(row, col)].is_negative() {
            h.negate_row(row);
            u.negate_row(row);
        }
        for i in 0..row {
            let q = -h[(i, col)].div_floor(&h[(row, col)]);
            h.add_row_multiple(i, row, &q);
            u.add_row_multiple(i, row, &q);
        }
        row += 1;
    }
    HermiteForm {
        hermite: h,
        transform: u,
    }
}
