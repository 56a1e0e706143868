//! Exact integer linear algebra over `Z^n`.

mod group;
mod matrix;
mod normal_form;
mod rational;
mod vector;

pub use group::FiniteAbelianGroup;
pub use matrix::IntegerMatrix;
pub use normal_form::{hermite_normal_form, smith_normal_form, HermiteForm, SmithForm};
pub use rational::RationalMatrix;
pub use vector::{LatticeVector, RationalVector};

pub(crate) use vector::serialize_bigint;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

pub fn primitivize(v: &LatticeVector) -> Result<LatticeVector> {
    v.primitivize()
}

pub(crate) fn check_rank(gens: &[LatticeVector], rank: usize) -> Result<()> {
    match gens.iter().find(|g| g.rank() != rank) {
        Some(g) => Err(Error::RankMismatch {
            expected: rank,
            found: g.rank(),
        }),
        None => Ok(()),
    }
}

fn common_rank(gens: &[LatticeVector]) -> Result<Option<usize>> {
    let Some(first) = gens.first() else {
        return Ok(None);
    };
    check_rank(gens, first.rank())?;
    Ok(Some(first.rank()))
}

/// Canonical (Hermite) basis of the lattice spanned by the rows of `m`.
pub fn row_lattice_basis(m: &IntegerMatrix) -> Vec<LatticeVector> {
    hermite_normal_form(m).nonzero_rows()
}

/// Basis of `{x in Z^cols : W x = 0}` in Hermite form.
pub fn integer_kernel(w: &IntegerMatrix) -> Vec<LatticeVector> {
    let snf = smith_normal_form(w);
    let r = snf.rank();
    let gens: Vec<LatticeVector> = (r..w.cols()).map(|j| snf.right.column(j)).collect();
    row_lattice_basis(&IntegerMatrix::from_rows(&gens, w.cols()))
}

/// Basis of `span_R(gens) ∩ Z^n`, canonicalized in Hermite form.
///
/// Computed as the integer kernel of the integer kernel: the saturation is
/// exactly the set of lattice points orthogonal to every relation vector
/// of `ker(G)`.
pub fn saturation(gens: &[LatticeVector]) -> Result<Vec<LatticeVector>> {
    let Some(n) = common_rank(gens)? else {
        return Ok(Vec::new());
    };
    let g = IntegerMatrix::from_rows(gens, n);
    let perp = integer_kernel(&g);
    if perp.is_empty() {
        return Ok((0..n).map(|i| LatticeVector::unit(n, i)).collect());
    }
    Ok(integer_kernel(&IntegerMatrix::from_rows(&perp, n)))
}

/// True iff `gens` are independent and their `Z`-span is saturated.
pub fn is_basis_of_saturation(gens: &[LatticeVector]) -> Result<bool> {
    let Some(n) = common_rank(gens)? else {
        return Ok(true);
    };
    let snf = smith_normal_form(&IntegerMatrix::from_rows(gens, n));
    let factors = snf.invariant_factors();
    Ok(factors.len() == gens.len() && factors.iter().all(One::is_one))
}

/// `Z^rank / span_Z(gens)`.
pub fn quotient_invariants(gens: &[LatticeVector], rank: usize) -> Result<FiniteAbelianGroup> {
    check_rank(gens, rank)?;
    let snf = smith_normal_form(&IntegerMatrix::from_rows(gens, rank));
    let factors = snf.invariant_factors();
    Ok(FiniteAbelianGroup::new(rank - factors.len(), factors))
}

/// The closed subgroup `T = {[a] in R^N/Z^N : W a in Z^n}` of the standard torus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelTorus {
    /// Integral basis of `ker(W)`; spans the Lie algebra of the identity component.
    pub kernel_basis: Vec<RationalVector>,
    /// `pi_0(T)`.
    pub component_group: FiniteAbelianGroup,
    /// Representatives in `[0,1)^N` of cyclic generators of `pi_0(T)`, one per invariant factor.
    pub component_generators: Vec<RationalVector>,
}

impl KernelTorus {
    pub fn dimension(&self) -> usize {
        self.kernel_basis.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.kernel_basis.is_empty() && self.component_group.is_trivial()
    }

    /// The group as an abelian group via its characters: `Z^dim + pi_0`.
    pub fn as_group(&self) -> FiniteAbelianGroup {
        FiniteAbelianGroup::new(
            self.dimension(),
            self.component_group.invariant_factors().to_vec(),
        )
    }
}

/// Kernel of `R^N/Z^N -> R^n/Z^n` induced by the `n x N` matrix `w`.
pub fn kernel_torus(w: &IntegerMatrix) -> KernelTorus {
    let snf = smith_normal_form(w);
    let factors = snf.invariant_factors();
    let kernel_basis = integer_kernel(w).iter().map(LatticeVector::to_rational).collect();
    let mut component_generators = Vec::new();
    for (i, d) in factors.iter().enumerate() {
        if d.is_one() {
            continue;
        }
        // W (V e_i / d_i) = U^{-1} e_i is integral.
        let col = snf.right.column(i);
        let gen = RationalVector::new(
            col.coords()
                .iter()
                .map(|c| BigRational::new(c.clone(), d.clone()))
                .collect(),
        );
        component_generators.push(gen.fractional_part());
    }
    KernelTorus {
        kernel_basis,
        component_group: FiniteAbelianGroup::new(0, factors),
        component_generators,
    }
}

pub fn det2(a: &LatticeVector, b: &LatticeVector) -> BigInt {
    &a[0] * &b[1] - &a[1] * &b[0]
}

/// Number of lattice points in `{a1*mu1 + a2*mu2 : 0 <= a1, a2 <= 1}`.
pub fn parallelogram_lattice_points(mu1: &LatticeVector, mu2: &LatticeVector) -> Result<BigInt> {
    check_rank(&[mu1.clone(), mu2.clone()], 2)?;
    let det = det2(mu1, mu2);
    if det.is_zero() {
        return Err(Error::DegenerateParallelogram);
    }
    let corners = [
        LatticeVector::zero(2),
        mu1.clone(),
        mu2.clone(),
        mu1.add(mu2),
    ];
    let lo = |k: usize| corners.iter().map(|c| c[k].clone()).min().unwrap();
    let hi = |k: usize| corners.iter().map(|c| c[k].clone()).max().unwrap();
    // a1 = det(p, mu2)/det and a2 = det(mu1, p)/det must lie in [0, 1]
    let in_unit = |x: &BigInt| {
        if det.is_positive() {
            !x.is_negative() && x <= &det
        } else {
            !x.is_positive() && x >= &det
        }
    };
    let mut count = BigInt::zero();
    let mut x = lo(0);
    while x <= hi(0) {
        let mut y = lo(1);
        while y <= hi(1) {
            let p = LatticeVector::new(vec![x.clone(), y.clone()]);
            if in_unit(&det2(&p, mu2)) && in_unit(&det2(mu1, &p)) {
                count += 1;
            }
            y += 1;
        }
        x += 1;
    }
    Ok(count)
}

/// Extends a basis of a saturated sublattice to a unimodular matrix whose
/// first rows are `basis`. `None` if `basis` is not a basis of its saturation.
pub fn complete_basis(basis: &[LatticeVector], n: usize) -> Result<Option<IntegerMatrix>> {
    check_rank(basis, n)?;
    if !is_basis_of_saturation(basis)? {
        return Ok(None);
    }
    let snf = smith_normal_form(&IntegerMatrix::from_rows(basis, n));
    let right_inv = snf
        .right
        .unimodular_inverse()
        .expect("Smith transforms are unimodular");
    let mut rows = basis.to_vec();
    rows.extend((basis.len()..n).map(|i| right_inv.row(i)));
    Ok(Some(IntegerMatrix::from_rows(&rows, n)))
}

/// Coordinates of `x` in the basis given by the rows of unimodular `p`,
/// where `p_inv` is its inverse: `x = c * p`.
pub(crate) fn coordinates(x: &LatticeVector, p_inv: &IntegerMatrix) -> LatticeVector {
    p_inv.transpose().mul_vector(x)
}
