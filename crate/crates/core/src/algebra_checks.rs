//! Inclusion matrices between interval-union powers and value sets, and
//! exact checks of the identities that make them invertible.
//!
//! Every function here works in the reduced value-set coordinates: a point
//! set that is a union of classes `V(T)` is determined by which `T` it
//! contains, so sums of power indicators are evaluated once per value set
//! rather than once per point of `[n]^d`.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{argument, Error, Result};
use crate::gf2::{Gf2Matrix, Gf2Vector};
use crate::interval_union::{enumerate_unions, Interval, IntervalUnion};
use crate::value_space::{
    all_points, inclusion_vector, member_power, representative_point, valueset_of, ValueSet,
    ValueSpaceIndex,
};

/// Rows `S ∈ I_k` (enumeration order), columns value sets of `[n]^d`,
/// entry `[T ⊆ S]`.
#[derive(Debug, Clone)]
pub struct InclusionSystem {
    pub unions: Vec<IntervalUnion>,
    pub index: ValueSpaceIndex,
    pub matrix: Gf2Matrix,
}

impl InclusionSystem {
    pub fn new(n: u32, d: usize, k: usize) -> Result<Self> {
        if n == 0 || d == 0 || k == 0 {
            return argument("inclusion matrix needs n, d, k >= 1");
        }
        let index = ValueSpaceIndex::new(n, d)?;
        let unions = enumerate_unions(n, k);
        let rows: Vec<Gf2Vector> = unions
            .par_iter()
            .map(|s| inclusion_vector(s, &index))
            .collect();
        let matrix = Gf2Matrix::from_rows(index.len(), &rows)?;
        Ok(InclusionSystem {
            unions,
            index,
            matrix,
        })
    }
}

pub fn build_inclusion_matrix(n: u32, d: usize, k: usize) -> Result<Gf2Matrix> {
    Ok(InclusionSystem::new(n, d, k)?.matrix)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndependenceReport {
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    pub independent: bool,
    pub square: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

pub fn verify_independence(n: u32, d: usize, k: usize) -> Result<IndependenceReport> {
    let start = Instant::now();
    let m = build_inclusion_matrix(n, d, k)?;
    let rank = m.rank();
    Ok(IndependenceReport {
        rows: m.rows(),
        cols: m.cols(),
        rank,
        independent: rank == m.rows(),
        square: m.rows() == m.cols(),
        elapsed_ms: Some(start.elapsed().as_millis() as u64),
    })
}

/// One term `sign · 𝟙_{S^d}` of a signed sum; `base == None` is the empty
/// set, whose power indicator is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedPower {
    pub sign: i64,
    pub base: Option<IntervalUnion>,
}

/// Integer value of `Σ sign·[T ⊆ S]` at every value set, in column order.
pub fn signed_sum_over_value_sets(terms: &[SignedPower], index: &ValueSpaceIndex) -> Vec<i64> {
    let tables: Vec<(i64, Vec<bool>)> = terms
        .iter()
        .filter_map(|t| t.base.as_ref().map(|s| (t.sign, s.membership_table())))
        .collect();
    index
        .iter()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|t| {
            tables
                .iter()
                .filter(|(_, table)| t.elems().iter().all(|&x| table[x as usize]))
                .map(|(sign, _)| sign)
                .sum()
        })
        .collect()
}

fn validate_omega_args(n: u32, d: usize, a: &[u32], l: &[usize]) -> Result<()> {
    if d == 0 || d % 2 == 1 {
        return argument(format!("d must be even and positive, got {d}"));
    }
    if a.len() != d {
        return argument(format!("expected {d} endpoints, got {}", a.len()));
    }
    if a.windows(2).any(|w| w[0] >= w[1]) {
        return argument("endpoints must be strictly increasing");
    }
    if a[0] == 0 || a[d - 1] > n {
        return argument(format!("endpoints must lie in [1, {n}]"));
    }
    if let Some(&bad) = l.iter().find(|&&i| i == 0 || i > d) {
        return argument(format!("index {bad} of L is outside [1, {d}]"));
    }
    Ok(())
}

/// `S_ω = [a₁+ω₁, a₂−ω₂] ∪ … ∪ [a_{d−1}+ω_{d−1}, a_d−ω_d]` with empty
/// intervals dropped; `None` when all of them are empty.
fn shifted_union(n: u32, a: &[u32], omega: &[bool]) -> Result<Option<IntervalUnion>> {
    let mut parts = Vec::with_capacity(a.len() / 2);
    for pair in 0..a.len() / 2 {
        let lo = a[2 * pair] + u32::from(omega[2 * pair]);
        let hi = a[2 * pair + 1] - u32::from(omega[2 * pair + 1]);
        if lo <= hi {
            parts.push(Interval::new(lo, hi)?);
        }
    }
    if parts.is_empty() {
        return Ok(None);
    }
    crate::interval_union::canonicalize(&parts, n).map(Some)
}

/// The `2^|L|` terms `(−1)^{|ω|} 𝟙_{S_ω^d}` for `ω ∈ {0,1}^L`. `L` holds
/// 1-based positions into `a`.
pub fn omega_terms(n: u32, d: usize, a: &[u32], l: &[usize]) -> Result<Vec<SignedPower>> {
    validate_omega_args(n, d, a, l)?;
    let mut positions: Vec<usize> = l.iter().map(|&i| i - 1).collect();
    positions.sort_unstable();
    positions.dedup();
    let mut terms = Vec::with_capacity(1 << positions.len());
    for mask in 0u64..(1u64 << positions.len()) {
        let mut omega = vec![false; d];
        for (bit, &pos) in positions.iter().enumerate() {
            omega[pos] = mask >> bit & 1 == 1;
        }
        terms.push(SignedPower {
            sign: if mask.count_ones() % 2 == 0 { 1 } else { -1 },
            base: shifted_union(n, a, &omega)?,
        });
    }
    Ok(terms)
}

/// Checks, with integer coefficients and at every value set `T`, that
/// `Σ_{ω ∈ {0,1}^L} (−1)^{|ω|} [T ⊆ S_ω] = [E ⊆ T ⊆ J]` where
/// `J = [a₁,a₂] ∪ … ∪ [a_{d−1},a_d]` and `E = {a_l : l ∈ L}`.
pub fn check_omega_identity(n: u32, d: usize, a: &[u32], l: &[usize]) -> Result<bool> {
    let terms = omega_terms(n, d, a, l)?;
    let index = ValueSpaceIndex::new(n, d)?;
    let lhs = signed_sum_over_value_sets(&terms, &index);
    let rhs = vej_indicator(n, d, a, l, &index)?;
    Ok(lhs == rhs)
}

/// `[E ⊆ T ⊆ J]` at every value set, in column order.
pub fn vej_indicator(
    n: u32,
    d: usize,
    a: &[u32],
    l: &[usize],
    index: &ValueSpaceIndex,
) -> Result<Vec<i64>> {
    validate_omega_args(n, d, a, l)?;
    let pairs: Vec<(u32, u32)> = a.chunks_exact(2).map(|p| (p[0], p[1])).collect();
    let j = IntervalUnion::from_pairs(&pairs, n)?.membership_table();
    let e: Vec<u32> = l.iter().map(|&i| a[i - 1]).collect();
    Ok(index
        .iter()
        .map(|t| {
            let inside = t.elems().iter().all(|&x| j[x as usize]);
            let covers = e.iter().all(|x| t.elems().binary_search(x).is_ok());
            i64::from(inside && covers)
        })
        .collect())
}

/// Writes `𝟙_{V(T)}` as a GF(2) sum of powers `𝟙_{S^d}`, `S ∈ I_{d/2}`, by
/// solving the transposed inclusion system. Built once per `(n, d)`.
#[derive(Debug, Clone)]
pub struct ValueSetExpander {
    system: InclusionSystem,
    transposed: Gf2Matrix,
}

impl ValueSetExpander {
    pub fn new(n: u32, d: usize) -> Result<Self> {
        if d == 0 || d % 2 == 1 {
            return argument(format!("d must be even and positive, got {d}"));
        }
        if (n as usize) < d {
            return argument(format!("need n >= d, got n={n}, d={d}"));
        }
        let system = InclusionSystem::new(n, d, d / 2)?;
        let transposed = system.matrix.transpose();
        Ok(ValueSetExpander { system, transposed })
    }

    pub fn index(&self) -> &ValueSpaceIndex {
        &self.system.index
    }

    pub fn expand(&self, t: &ValueSet) -> Result<Vec<IntervalUnion>> {
        let index = &self.system.index;
        let col = index.column_of(t)?;
        let coeffs = match self.transposed.solve(&Gf2Vector::unit(index.len(), col)) {
            Ok(c) => c,
            Err(Error::Inconsistent) => {
                return Err(Error::Internal(format!(
                    "V({t}) is not spanned although n >= d = 2k"
                )))
            }
            Err(e) => return Err(e),
        };
        let unions: Vec<IntervalUnion> = coeffs
            .iter_ones()
            .map(|i| self.system.unions[i].clone())
            .collect();
        if !xor_of_powers_is_value_set(&unions, t, index.n(), index.d())? {
            return Err(Error::Internal(format!(
                "expansion of V({t}) failed pointwise evaluation"
            )));
        }
        Ok(unions)
    }
}

pub fn expand_valueset(t: &ValueSet, n: u32, d: usize) -> Result<Vec<IntervalUnion>> {
    ValueSetExpander::new(n, d)?.expand(t)
}

/// Points of `[n]^d` beyond which the pointwise check falls back to one
/// representative per value set.
const POINTWISE_LIMIT: usize = 1 << 16;

/// Evaluates `⊕ 𝟙_{S^d}` against `𝟙_{V(T)}` point by point.
fn xor_of_powers_is_value_set(
    unions: &[IntervalUnion],
    t: &ValueSet,
    n: u32,
    d: usize,
) -> Result<bool> {
    let check = |x: &crate::value_space::Point| {
        let parity = unions.iter().filter(|s| member_power(x, s)).count() % 2 == 1;
        parity == (valueset_of(x) == *t)
    };
    let total = (n as usize).checked_pow(d as u32);
    if total.is_some_and(|p| p <= POINTWISE_LIMIT) {
        Ok(all_points(n, d)?.all(|x| check(&x)))
    } else {
        let index = ValueSpaceIndex::new(n, d)?;
        for class in index.iter() {
            if !check(&representative_point(&class, d)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Checks `Σ_{∅≠S⊆[d+1]} (−1)^{|S|} 𝟙_{S^d} = 0` at every value set of
/// `[n]^d`, and that each such `S` is a union of at most `⌈(d+1)/2⌉`
/// intervals.
pub fn check_inclusion_exclusion_zero(d: usize, n: u32) -> Result<bool> {
    if d == 0 {
        return argument("d must be positive");
    }
    if (n as usize) < d + 1 {
        return argument(format!("need n >= d + 1, got n={n}, d={d}"));
    }
    let terms = inclusion_exclusion_terms(d, n)?;
    let bound = (d + 1).div_ceil(2);
    let few_parts = terms
        .iter()
        .all(|t| t.base.as_ref().is_some_and(|s| s.part_count() <= bound));
    let index = ValueSpaceIndex::new(n, d)?;
    let vanishes = signed_sum_over_value_sets(&terms, &index)
        .iter()
        .all(|&v| v == 0);
    Ok(few_parts && vanishes)
}

/// `(−1)^{|S|} 𝟙_{S^d}` for the non-empty `S ⊆ [d+1]`, in increasing
/// binary encoding (bit `i` set iff `i+1 ∈ S`).
pub fn inclusion_exclusion_terms(d: usize, n: u32) -> Result<Vec<SignedPower>> {
    if d + 1 >= 64 {
        return Err(Error::TooLarge(format!("2^{} subsets", d + 1)));
    }
    (1u64..(1u64 << (d + 1)))
        .map(|mask| {
            let elems: Vec<u32> = (0..=d as u32)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| i + 1)
                .collect();
            Ok(SignedPower {
                sign: if elems.len().is_multiple_of(2) { 1 } else { -1 },
                base: Some(IntervalUnion::from_elements(&elems, n)?),
            })
        })
        .collect()
}
