//! Unions of intervals of `[n]` in canonical form.
//!
//! A union is stored as its maximal runs: sorted, pairwise disjoint and
//! non-adjacent intervals. The number of parts is therefore the least number
//! of intervals whose union is the set.

use std::fmt;

use itertools::Itertools;
use num_bigint::BigUint;

use crate::binom;
use crate::error::{argument, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    lo: u32,
    hi: u32,
}

impl Interval {
    pub fn new(lo: u32, hi: u32) -> Result<Self> {
        if lo == 0 {
            return Err(Error::Range {
                value: 0,
                lo: 1,
                hi: u64::from(hi.max(1)),
            });
        }
        if lo > hi {
            return argument(format!("interval [{lo},{hi}] has lo > hi"));
        }
        Ok(Interval { lo, hi })
    }

    pub fn lo(&self) -> u32 {
        self.lo
    }

    pub fn hi(&self) -> u32 {
        self.hi
    }

    pub fn len(&self) -> u32 {
        self.hi - self.lo + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, x: u32) -> bool {
        self.lo <= x && x <= self.hi
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntervalUnion {
    n: u32,
    parts: Vec<Interval>,
}

/// Sorts and merges overlapping or adjacent intervals.
pub fn canonicalize(intervals: &[Interval], n: u32) -> Result<IntervalUnion> {
    if intervals.is_empty() {
        return Err(Error::EmptySet);
    }
    if let Some(bad) = intervals.iter().find(|iv| iv.hi > n) {
        return Err(Error::Range {
            value: u64::from(bad.hi),
            lo: 1,
            hi: u64::from(n),
        });
    }
    let mut sorted = intervals.to_vec();
    sorted.sort_unstable();
    let mut parts: Vec<Interval> = Vec::with_capacity(sorted.len());
    for iv in sorted {
        match parts.last_mut() {
            Some(last) if iv.lo <= last.hi + 1 => last.hi = last.hi.max(iv.hi),
            _ => parts.push(iv),
        }
    }
    Ok(IntervalUnion { n, parts })
}

impl IntervalUnion {
    /// Union of the given `(lo, hi)` pairs; a convenience over
    /// [`canonicalize`].
    pub fn from_pairs(pairs: &[(u32, u32)], n: u32) -> Result<Self> {
        let intervals = pairs
            .iter()
            .map(|&(lo, hi)| Interval::new(lo, hi))
            .collect::<Result<Vec<_>>>()?;
        canonicalize(&intervals, n)
    }

    /// The union whose elements are exactly `elems` (any order, duplicates
    /// allowed).
    pub fn from_elements(elems: &[u32], n: u32) -> Result<Self> {
        let intervals = elems
            .iter()
            .map(|&x| Interval::new(x, x))
            .collect::<Result<Vec<_>>>()?;
        canonicalize(&intervals, n)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn parts(&self) -> &[Interval] {
        &self.parts
    }

    pub fn part_count(&self) -> usize {
        self.parts.len()
    }

    /// Number of elements of `[n]` covered.
    pub fn cardinality(&self) -> usize {
        self.parts.iter().map(|p| p.len() as usize).sum()
    }

    pub fn contains(&self, x: u32) -> bool {
        // parts are sorted; find the last part starting at or before x
        let idx = self.parts.partition_point(|p| p.lo <= x);
        idx > 0 && self.parts[idx - 1].hi >= x
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> + '_ {
        self.parts.iter().flat_map(|p| p.lo..=p.hi)
    }

    /// Membership table indexed by `0..=n`; entry 0 is always false.
    pub fn membership_table(&self) -> Vec<bool> {
        let mut table = vec![false; self.n as usize + 1];
        for x in self.elements() {
            table[x as usize] = true;
        }
        table
    }

    /// `{a₁−1, b₁, …, a_j−1, b_j}` for the parts `[a₁,b₁] ∪ … ∪ [a_j,b_j]`.
    pub fn to_boundary_set(&self) -> BoundarySet {
        BoundarySet {
            n: self.n,
            elems: self.parts.iter().flat_map(|p| [p.lo - 1, p.hi]).collect(),
        }
    }

    pub fn from_boundary_set(b: &BoundarySet) -> Result<Self> {
        if b.elems.len() % 2 == 1 {
            return Err(Error::Parity(b.elems.len()));
        }
        if b.elems.is_empty() {
            return Err(Error::EmptySet);
        }
        // Strictly increasing boundaries give a₁−1 < b₁ < a₂−1 < b₂ …, i.e.
        // non-empty parts with b_i + 1 < a_{i+1}.
        let parts = b
            .elems
            .chunks_exact(2)
            .map(|pair| Interval {
                lo: pair[0] + 1,
                hi: pair[1],
            })
            .collect();
        Ok(IntervalUnion { n: b.n, parts })
    }

    /// Parses the `a1-b1,a2-b2,…` rendering and canonicalizes it.
    pub fn parse(text: &str, n: u32) -> Result<Self> {
        let intervals = text
            .split(',')
            .map(|piece| {
                let (lo, hi) = piece
                    .trim()
                    .split_once('-')
                    .ok_or_else(|| Error::Parse(format!("expected a-b, got {piece:?}")))?;
                let lo = lo
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad endpoint {lo:?}")))?;
                let hi = hi
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad endpoint {hi:?}")))?;
                Interval::new(lo, hi)
            })
            .collect::<Result<Vec<_>>>()?;
        canonicalize(&intervals, n)
    }
}

impl fmt::Display for IntervalUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}-{}", p.lo, p.hi)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoundarySet {
    n: u32,
    elems: Vec<u32>,
}

impl BoundarySet {
    /// Validates a strictly increasing sequence inside `{0, …, n}`. Parity is
    /// checked when converting to a union.
    pub fn new(elems: Vec<u32>, n: u32) -> Result<Self> {
        if let Some(&bad) = elems.iter().find(|&&e| e > n) {
            return Err(Error::Range {
                value: u64::from(bad),
                lo: 0,
                hi: u64::from(n),
            });
        }
        if elems.windows(2).any(|w| w[0] >= w[1]) {
            return argument("boundary set must be strictly increasing");
        }
        Ok(BoundarySet { n, elems })
    }

    pub fn elems(&self) -> &[u32] {
        &self.elems
    }

    pub fn n(&self) -> u32 {
        self.n
    }
}

/// Every non-empty union of at most `k` intervals of `[n]`, ordered by part
/// count and then lexicographically on the endpoint sequence.
pub fn enumerate_unions(n: u32, k: usize) -> Vec<IntervalUnion> {
    let mut out = Vec::new();
    let max_parts = k.min(n.div_ceil(2) as usize);
    for j in 1..=max_parts {
        // Lexicographic order on boundary sets equals lexicographic order on
        // endpoints, since a ↦ a−1 is monotone position by position.
        for combo in (0..=n).combinations(2 * j) {
            let b = BoundarySet { n, elems: combo };
            out.push(IntervalUnion::from_boundary_set(&b).expect("even, non-empty"));
        }
    }
    out
}

/// `|I_k| = Σ_{j=1..k} C(n+1, 2j)`, cross-checked against
/// `Σ_{i=1..2k} C(n, i)` whenever `2k <= n`.
pub fn count_unions(n: u32, k: usize) -> BigUint {
    let by_boundaries = count_by_boundary_sets(n, k);
    if 2 * k as u64 <= u64::from(n) {
        assert_eq!(
            by_boundaries,
            count_by_pascal(n, k),
            "Pascal identity failed"
        );
    }
    by_boundaries
}

pub fn count_by_boundary_sets(n: u32, k: usize) -> BigUint {
    (1..=k as u64)
        .map(|j| binom::big(u64::from(n) + 1, 2 * j))
        .sum()
}

pub fn count_by_pascal(n: u32, k: usize) -> BigUint {
    (1..=2 * k as u64)
        .map(|i| binom::big(u64::from(n), i))
        .sum()
}
