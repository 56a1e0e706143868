//! Shared generators and brute-force oracles. The oracles deliberately use
//! none of the crate's algorithms: determinants by cofactor expansion,
//! invariant factors by determinantal divisors, faces by sampling lattice
//! points.

#![allow(dead_code)]

use std::collections::BTreeSet;

use conetoric::cone::Cone;
use conetoric::lattice::{IntegerMatrix, LatticeVector};
use num_traits::ToPrimitive;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn v(c: &[i64]) -> LatticeVector {
    LatticeVector::from_i64s(c)
}

pub fn to_i64(m: &IntegerMatrix) -> Vec<Vec<i64>> {
    (0..m.rows())
        .map(|i| m.row(i).coords().iter().map(|x| x.to_i64().unwrap()).collect())
        .collect()
}

pub fn random_vector(rng: &mut impl Rng, n: usize, bound: i64) -> Vec<i64> {
    loop {
        let v: Vec<i64> = (0..n).map(|_| rng.gen_range(-bound..=bound)).collect();
        if v.iter().any(|&x| x != 0) {
            return v;
        }
    }
}

pub fn random_normals(rng: &mut impl Rng, n: usize, count: usize, bound: i64) -> Vec<LatticeVector> {
    (0..count).map(|_| v(&random_vector(rng, n, bound))).collect()
}

/// A full-dimensional cone of rank `2..=max_rank` with `1..=max_normals`
/// normals, entries in `[-bound, bound]`.
pub fn random_full_cone(rng: &mut impl Rng, max_rank: usize, max_normals: usize, bound: i64) -> Cone {
    loop {
        let n = rng.gen_range(2..=max_rank);
        let k = rng.gen_range(1..=max_normals);
        let c = Cone::from_normals(n, &random_normals(rng, n, k, bound)).unwrap();
        if c.is_full_dimensional() {
            return c;
        }
    }
}

/// Product of random elementary operations, row swaps and sign flips.
pub fn random_unimodular(rng: &mut impl Rng, n: usize) -> IntegerMatrix {
    let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    for _ in 0..(3 * n) {
        match rng.gen_range(0..3) {
            0 => {
                let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
                m.swap(a, b);
            }
            1 => {
                let a = rng.gen_range(0..n);
                for x in m[a].iter_mut() {
                    *x = -*x;
                }
            }
            _ => {
                let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
                if a != b {
                    let k = rng.gen_range(-2..=2);
                    let src = m[b].clone();
                    for (x, y) in m[a].iter_mut().zip(src) {
                        *x += k * y;
                    }
                }
            }
        }
    }
    let rows: Vec<&[i64]> = m.iter().map(Vec::as_slice).collect();
    IntegerMatrix::from_i64_rows(&rows)
}

pub fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| *x).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

pub fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// gcd of all `k x k` minors of `rows`.
pub fn minor_gcd(rows: &[Vec<i64>], k: usize) -> i128 {
    if k == 0 {
        return 1;
    }
    let cols = rows.first().map_or(0, Vec::len);
    let mut g = 0;
    for rs in subsets(rows.len(), k) {
        for cs in subsets(cols, k) {
            let m: Vec<Vec<i128>> = rs
                .iter()
                .map(|&r| cs.iter().map(|&c| i128::from(rows[r][c])).collect())
                .collect();
            g = gcd(g, det(&m));
        }
    }
    g
}

/// Rank and nonunit invariant factors, from determinantal divisors.
pub fn invariants(rows: &[Vec<i64>]) -> (usize, Vec<i128>) {
    let max = rows.len().min(rows.first().map_or(0, Vec::len));
    let mut divisors = vec![1i128];
    for k in 1..=max {
        let g = minor_gcd(rows, k);
        if g == 0 {
            break;
        }
        divisors.push(g);
    }
    let rank = divisors.len() - 1;
    let factors = (1..=rank)
        .map(|k| divisors[k] / divisors[k - 1])
        .filter(|&d| d != 1)
        .collect();
    (rank, factors)
}

/// An oracle face: maximal active set, its rank (= codimension), and the
/// obstruction `Z^(|J| - rank) + torsion`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct OracleFace {
    pub active: Vec<usize>,
    pub codim: usize,
    pub excess: usize,
    pub torsion: Vec<i128>,
}

impl OracleFace {
    pub fn is_good(&self) -> bool {
        self.excess == 0 && self.torsion.is_empty()
    }
}

fn for_each_point(n: usize, bound: i64, f: &mut dyn FnMut(&[i64])) {
    let mut x = vec![-bound; n];
    loop {
        f(&x);
        let mut i = 0;
        loop {
            if i == n {
                return;
            }
            if x[i] < bound {
                x[i] += 1;
                break;
            }
            x[i] = -bound;
            i += 1;
        }
    }
}

/// Active sets of nonzero proper faces, found as the tight sets of lattice
/// points of `C ∩ [-bound, bound]^n`.
pub fn oracle_faces(normals: &[Vec<i64>], n: usize, bound: i64) -> Vec<OracleFace> {
    let mut tight_sets: BTreeSet<Vec<usize>> = BTreeSet::new();
    for_each_point(n, bound, &mut |x| {
        if x.iter().all(|&c| c == 0) {
            return;
        }
        let vals: Vec<i64> = normals
            .iter()
            .map(|v| v.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect();
        if vals.iter().any(|&t| t < 0) {
            return;
        }
        let tight: Vec<usize> = (0..normals.len()).filter(|&j| vals[j] == 0).collect();
        if !tight.is_empty() {
            tight_sets.insert(tight);
        }
    });
    tight_sets
        .into_iter()
        .map(|active| {
            let rows: Vec<Vec<i64>> = active.iter().map(|&j| normals[j].clone()).collect();
            let (rank, torsion) = invariants(&rows);
            OracleFace {
                excess: active.len() - rank,
                codim: rank,
                torsion,
                active,
            }
        })
        .collect()
}

pub fn normals_i64(c: &Cone) -> Vec<Vec<i64>> {
    c.normals().iter().map(|v| v.to_i64s().unwrap()).collect()
}

pub fn random_matrix(rng: &mut impl Rng, max_dim: usize, bound: i64) -> IntegerMatrix {
    let r = rng.gen_range(1..=max_dim);
    let c = rng.gen_range(1..=max_dim);
    let rows: Vec<Vec<i64>> = (0..r)
        .map(|_| (0..c).map(|_| rng.gen_range(-bound..=bound)).collect())
        .collect();
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    IntegerMatrix::from_i64_rows(&refs)
}

/// `D = U A V`, `U`, `V` unimodular, `D` diagonal with a nonnegative
/// divisibility chain, and factors equal to the determinantal oracle.
pub fn check_smith(a: &IntegerMatrix) -> Result<(), String> {
    use conetoric::lattice::smith_normal_form;
    use num_integer::Integer;
    use num_traits::{Signed, Zero};
    let s = smith_normal_form(a);
    if &(&s.left * a) * &s.right != s.diagonal {
        return Err(format!("D != UAV for {a}"));
    }
    if !s.left.is_unimodular() || !s.right.is_unimodular() {
        return Err(format!("non-unimodular transform for {a}"));
    }
    if !s.diagonal.is_diagonal() {
        return Err(format!("D not diagonal for {a}"));
    }
    let k = a.rows().min(a.cols());
    let diag: Vec<_> = (0..k).map(|i| s.diagonal[(i, i)].clone()).collect();
    if diag.iter().any(Signed::is_negative) {
        return Err(format!("negative diagonal for {a}"));
    }
    for w in diag.windows(2) {
        let ok = if w[0].is_zero() { w[1].is_zero() } else { w[1].is_multiple_of(&w[0]) };
        if !ok {
            return Err(format!("divisibility chain broken for {a}: {}", s.diagonal));
        }
    }
    let (rank, factors) = invariants(&to_i64(a));
    let got: Vec<i128> = s
        .invariant_factors()
        .iter()
        .map(|d| d.to_i128().unwrap())
        .filter(|&d| d != 1)
        .collect();
    if s.rank() != rank || got != factors {
        return Err(format!("factors {got:?} (rank {}) vs oracle {factors:?} (rank {rank}) for {a}", s.rank()));
    }
    Ok(())
}

/// `H = U A`, `U` unimodular, `H` in row echelon form with positive pivots
/// and reduced entries above them.
pub fn check_hermite(a: &IntegerMatrix) -> Result<(), String> {
    use conetoric::lattice::hermite_normal_form;
    use num_traits::{Signed, Zero};
    let h = hermite_normal_form(a);
    if &h.transform * a != h.hermite {
        return Err(format!("H != UA for {a}"));
    }
    if !h.transform.is_unimodular() {
        return Err(format!("non-unimodular transform for {a}"));
    }
    let m = &h.hermite;
    let mut last_pivot: Option<usize> = None;
    let mut seen_zero = false;
    for i in 0..m.rows() {
        let pivot = (0..m.cols()).find(|&j| !m[(i, j)].is_zero());
        match pivot {
            None => seen_zero = true,
            Some(p) => {
                if seen_zero {
                    return Err(format!("nonzero row below a zero row in {m}"));
                }
                if last_pivot.is_some_and(|q| p <= q) {
                    return Err(format!("pivots not increasing in {m}"));
                }
                if !m[(i, p)].is_positive() {
                    return Err(format!("nonpositive pivot in {m}"));
                }
                for r in 0..i {
                    let x = &m[(r, p)];
                    if x.is_negative() || x >= &m[(i, p)] {
                        return Err(format!("entry above pivot not reduced in {m}"));
                    }
                }
                last_pivot = Some(p);
            }
        }
    }
    Ok(())
}

pub fn det_of(m: &IntegerMatrix) -> i128 {
    let rows: Vec<Vec<i128>> = to_i64(m)
        .iter()
        .map(|r| r.iter().map(|&x| i128::from(x)).collect())
        .collect();
    det(&rows)
}

/// Lattice points of the closed parallelogram on `a`, `b`, by scanning its
/// bounding box and testing `x = s a + t b` with `s, t in [0, 1]` through
/// Cramer's rule.
pub fn parallelogram_oracle(a: [i64; 2], b: [i64; 2]) -> i64 {
    let d = a[0] * b[1] - a[1] * b[0];
    assert_ne!(d, 0);
    let xs = [0, a[0], b[0], a[0] + b[0]];
    let ys = [0, a[1], b[1], a[1] + b[1]];
    let mut count = 0;
    for x in *xs.iter().min().unwrap()..=*xs.iter().max().unwrap() {
        for y in *ys.iter().min().unwrap()..=*ys.iter().max().unwrap() {
            // s = det(p, b) / d, t = det(a, p) / d
            let sn = x * b[1] - y * b[0];
            let tn = a[0] * y - a[1] * x;
            let inside = |num: i64| if d > 0 { (0..=d).contains(&num) } else { (d..=0).contains(&num) };
            if inside(sn) && inside(tn) {
                count += 1;
            }
        }
    }
    count
}
