use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::matrix::IntegerMatrix;
use super::normal_form::smith_normal_form;
use super::vector::serialize_bigint;

/// A finitely generated abelian group `Z^free_rank + Z/d1 + ... + Z/dk`
/// in invariant-factor form: every `di >= 2` and `di | d(i+1)`.
///
/// Isotropy groups of torus actions are compact (`T^r x finite`); they are
/// stored through their character group, so `free_rank` then counts circle
/// factors.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FiniteAbelianGroup {
    free_rank: usize,
    invariant_factors: Vec<BigInt>,
}

impl FiniteAbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        FiniteAbelianGroup {
            free_rank: rank,
            invariant_factors: Vec::new(),
        }
    }

    pub fn cyclic(order: u64) -> Self {
        Self::new(0, vec![BigInt::from(order)])
    }

    /// Normalizes arbitrary cyclic orders into invariant-factor form.
    /// Factors `0` are counted as free summands, factors `±1` dropped.
    pub fn new(free_rank: usize, orders: Vec<BigInt>) -> Self {
        let mut free_rank = free_rank;
        let mut finite: Vec<BigInt> = Vec::new();
        for o in orders {
            if o.is_zero() {
                free_rank += 1;
            } else if !o.abs().is_one() {
                finite.push(o.abs());
            }
        }
        let already_chained = finite.windows(2).all(|w| (&w[1] % &w[0]).is_zero());
        let invariant_factors = if already_chained {
            finite
        } else {
            let k = finite.len();
            let diag = IntegerMatrix::diagonal(&finite, k, k);
            smith_normal_form(&diag)
                .invariant_factors()
                .into_iter()
                .filter(|d| !d.is_one())
                .collect()
        };
        FiniteAbelianGroup {
            free_rank,
            invariant_factors,
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion_order())
    }

    pub fn torsion(&self) -> FiniteAbelianGroup {
        FiniteAbelianGroup {
            free_rank: 0,
            invariant_factors: self.invariant_factors.clone(),
        }
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.invariant_factors.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join("+"))
    }
}

impl fmt::Debug for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

struct Factors<'a>(&'a [BigInt]);

impl Serialize for Factors<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        struct One<'b>(&'b BigInt);
        impl Serialize for One<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                serialize_bigint(self.0, s)
            }
        }
        s.collect_seq(self.0.iter().map(One))
    }
}

impl Serialize for FiniteAbelianGroup {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FiniteAbelianGroup", 3)?;
        st.serialize_field("free_rank", &self.free_rank)?;
        st.serialize_field("invariant_factors", &Factors(&self.invariant_factors))?;
        st.serialize_field("display", &self.to_string())?;
        st.end()
    }
}
