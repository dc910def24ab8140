//! Points of `[n]^d`, their value sets, and subsets of `[n]^d`.
//!
//! Whether a point lies in a power `S^d` depends only on its value set, the
//! set of distinct coordinates. [`ValueSpaceIndex`] numbers the possible value
//! sets (all non-empty `T ⊆ [n]` with `|T| <= d`), ordered by size and then
//! lexicographically; this is the column space of the inclusion matrices.
//!
//! Point sets index points in row-major order with the first coordinate most
//! significant: `index(x) = Σ (x_i − 1)·n^{d−i}`.

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::binom;
use crate::error::{argument, Error, Result};
use crate::gf2::Gf2Vector;
use crate::interval_union::IntervalUnion;

/// Largest `n^d` a [`PointSet`] will materialize.
pub const MAX_POINTS: u64 = 1 << 32;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point(Vec<u32>);

impl Point {
    pub fn new(coords: Vec<u32>, n: u32) -> Result<Self> {
        if coords.is_empty() {
            return argument("a point needs at least one coordinate");
        }
        if let Some(&bad) = coords.iter().find(|&&c| c == 0 || c > n) {
            return Err(Error::Range {
                value: u64::from(bad),
                lo: 1,
                hi: u64::from(n),
            });
        }
        Ok(Point(coords))
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn into_coords(self) -> Vec<u32> {
        self.0
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ValueSet(Vec<u32>);

impl ValueSet {
    /// Accepts a strictly increasing, non-empty sequence inside `[n]`.
    pub fn new(elems: Vec<u32>, n: u32) -> Result<Self> {
        if elems.is_empty() {
            return Err(Error::EmptySet);
        }
        if let Some(&bad) = elems.iter().find(|&&c| c == 0 || c > n) {
            return Err(Error::Range {
                value: u64::from(bad),
                lo: 1,
                hi: u64::from(n),
            });
        }
        if elems.windows(2).any(|w| w[0] >= w[1]) {
            return argument("value set must be strictly increasing");
        }
        Ok(ValueSet(elems))
    }

    pub fn elems(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_subset_of(&self, s: &IntervalUnion) -> bool {
        self.0.iter().all(|&x| s.contains(x))
    }
}

impl fmt::Display for ValueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.iter().join(","))
    }
}

pub fn valueset_of(x: &Point) -> ValueSet {
    let mut v = x.0.clone();
    v.sort_unstable();
    v.dedup();
    ValueSet(v)
}

/// The elements of `T` in increasing order, padded with copies of `max(T)`
/// up to length `d`.
pub fn representative_point(t: &ValueSet, d: usize) -> Result<Point> {
    if t.len() > d {
        return Err(Error::Size { size: t.len(), d });
    }
    let mut coords = t.0.clone();
    let top = *coords.last().expect("value sets are non-empty");
    coords.resize(d, top);
    Ok(Point(coords))
}

/// `x ∈ S^d`: every coordinate lies in `S`.
pub fn member_power(x: &Point, s: &IntervalUnion) -> bool {
    x.0.iter().all(|&c| s.contains(c))
}

/// `x ∈ V(E, J)`: the coordinates cover `E` and stay inside `J`.
pub fn member_vej(x: &Point, e: &[u32], j: &[u32]) -> bool {
    x.0.iter().all(|c| j.contains(c)) && e.iter().all(|v| x.0.contains(v))
}

/// Bijection between value sets of `[n]^d` and columns `0..M`,
/// `M = Σ_{i=1..d} C(n, i)`.
#[derive(Debug, Clone)]
pub struct ValueSpaceIndex {
    n: u32,
    d: usize,
    /// `offsets[m]` is the first column of value sets of size `m`;
    /// `offsets[max_size + 1] = M`.
    offsets: Vec<usize>,
    binom: binom::Table,
}

impl ValueSpaceIndex {
    pub fn new(n: u32, d: usize) -> Result<Self> {
        if n == 0 || d == 0 {
            return argument("value space needs n >= 1 and d >= 1");
        }
        let max_size = d.min(n as usize);
        let binom = binom::Table::new(n as usize, max_size + 1);
        let mut offsets = vec![0usize; max_size + 2];
        for m in 1..=max_size {
            let count = binom
                .checked(n as usize, m)
                .and_then(|c| usize::try_from(c).ok())
                .ok_or_else(|| Error::TooLarge(format!("C({n},{m}) overflows")))?;
            offsets[m + 1] = offsets[m]
                .checked_add(count)
                .ok_or_else(|| Error::TooLarge("value space size overflows".into()))?;
        }
        Ok(ValueSpaceIndex {
            n,
            d,
            offsets,
            binom,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    fn max_size(&self) -> usize {
        self.offsets.len() - 2
    }

    /// Number of columns `M`.
    pub fn len(&self) -> usize {
        *self.offsets.last().expect("offsets non-empty")
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn column_of(&self, t: &ValueSet) -> Result<usize> {
        if t.len() > self.d {
            return Err(Error::Size {
                size: t.len(),
                d: self.d,
            });
        }
        if let Some(&last) = t.0.last() {
            if last > self.n {
                return Err(Error::Range {
                    value: u64::from(last),
                    lo: 1,
                    hi: u64::from(self.n),
                });
            }
        }
        Ok(self.column_of_sorted(&t.0))
    }

    /// Column of a strictly increasing slice of size `1..=min(d, n)`.
    pub(crate) fn column_of_sorted(&self, elems: &[u32]) -> usize {
        let m = elems.len();
        let n = self.n as usize;
        let mut rank = 0u64;
        let mut prev = 0usize;
        for (i, &c) in elems.iter().enumerate() {
            let c = c as usize;
            let rest = m - i - 1;
            // Σ_{v=prev+1}^{c−1} C(n−v, rest) = C(n−prev, rest+1) − C(n−c+1, rest+1)
            rank += self.binom.get(n - prev, rest + 1) - self.binom.get(n + 1 - c, rest + 1);
            prev = c;
        }
        self.offsets[m] + rank as usize
    }

    pub fn value_set(&self, column: usize) -> Result<ValueSet> {
        if column >= self.len() {
            return Err(Error::Range {
                value: column as u64,
                lo: 0,
                hi: self.len() as u64 - 1,
            });
        }
        let m = (1..=self.max_size())
            .find(|&m| column < self.offsets[m + 1])
            .expect("column below M");
        let mut rank = (column - self.offsets[m]) as u64;
        let n = self.n as usize;
        let mut elems = Vec::with_capacity(m);
        let mut v = 1usize;
        for i in 0..m {
            let rest = m - i - 1;
            loop {
                let block = self.binom.get(n - v, rest);
                if rank < block {
                    break;
                }
                rank -= block;
                v += 1;
            }
            elems.push(v as u32);
            v += 1;
        }
        Ok(ValueSet(elems))
    }

    /// All value sets in column order.
    pub fn iter(&self) -> impl Iterator<Item = ValueSet> + '_ {
        (1..=self.max_size()).flat_map(move |m| (1..=self.n).combinations(m).map(ValueSet))
    }
}

/// Bit `column_of(T)` is set iff `T ⊆ S`; equivalently the coordinates of
/// `𝟙_{S^d}` in the basis `{𝟙_{V(T)}}`.
pub fn inclusion_vector(s: &IntervalUnion, idx: &ValueSpaceIndex) -> Gf2Vector {
    let mut v = Gf2Vector::zeros(idx.len());
    let elems: Vec<u32> = s.elements().collect();
    for m in 1..=idx.d().min(elems.len()) {
        for combo in elems.iter().copied().combinations(m) {
            v.set(idx.column_of_sorted(&combo), true);
        }
    }
    v
}

fn point_count(n: u32, d: usize) -> Result<usize> {
    let mut total: u64 = 1;
    for _ in 0..d {
        total = total
            .checked_mul(u64::from(n))
            .filter(|&t| t <= MAX_POINTS)
            .ok_or_else(|| Error::TooLarge(format!("{n}^{d} points")))?;
    }
    Ok(total as usize)
}

/// A subset of `[n]^d` stored as one bit per point.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointSet {
    n: u32,
    d: usize,
    bits: Gf2Vector,
}

impl PointSet {
    pub fn empty(n: u32, d: usize) -> Result<Self> {
        if n == 0 || d == 0 {
            return argument("point sets need n >= 1 and d >= 1");
        }
        Ok(PointSet {
            n,
            d,
            bits: Gf2Vector::zeros(point_count(n, d)?),
        })
    }

    pub fn full(n: u32, d: usize) -> Result<Self> {
        let mut s = Self::empty(n, d)?;
        s.bits = Gf2Vector::ones(s.bits.len());
        Ok(s)
    }

    pub fn from_points<'a>(
        n: u32,
        d: usize,
        points: impl IntoIterator<Item = &'a Point>,
    ) -> Result<Self> {
        let mut s = Self::empty(n, d)?;
        for p in points {
            s.insert(p)?;
        }
        Ok(s)
    }

    /// From coordinate lists; the sparse JSON form.
    pub fn from_sparse(n: u32, d: usize, points: &[Vec<u32>]) -> Result<Self> {
        let mut s = Self::empty(n, d)?;
        for coords in points {
            let p = Point::new(coords.clone(), n)?;
            s.insert(&p)?;
        }
        Ok(s)
    }

    /// Bits of `word` are the first 64 points in index order.
    pub fn from_word(n: u32, d: usize, word: u64) -> Result<Self> {
        let mut s = Self::empty(n, d)?;
        s.bits = Gf2Vector::from_words(s.bits.len(), vec![word]);
        Ok(s)
    }

    pub fn from_bits(n: u32, d: usize, bits: Gf2Vector) -> Result<Self> {
        let expected = point_count(n, d)?;
        if bits.len() != expected {
            return argument(format!("expected {expected} bits, got {}", bits.len()));
        }
        Ok(PointSet { n, d, bits })
    }

    /// `S^d`.
    pub fn power(s: &IntervalUnion, d: usize) -> Result<Self> {
        let mut out = Self::empty(s.n(), d)?;
        let elems: Vec<u32> = s.elements().collect();
        for coords in std::iter::repeat_n(elems.iter().copied(), d).multi_cartesian_product() {
            let i = out.index_of_coords(&coords);
            out.bits.set(i, true);
        }
        Ok(out)
    }

    pub fn random<R: rand::Rng + ?Sized>(n: u32, d: usize, rng: &mut R) -> Result<Self> {
        let mut s = Self::empty(n, d)?;
        s.bits.fill_random(rng);
        Ok(s)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn bits(&self) -> &Gf2Vector {
        &self.bits
    }

    /// `n^d`.
    pub fn universe_size(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_zero()
    }

    fn check_point(&self, x: &Point) -> Result<()> {
        if x.dim() != self.d {
            return argument(format!("point {x} is not in dimension {}", self.d));
        }
        if let Some(&bad) = x.0.iter().find(|&&c| c == 0 || c > self.n) {
            return Err(Error::Range {
                value: u64::from(bad),
                lo: 1,
                hi: u64::from(self.n),
            });
        }
        Ok(())
    }

    fn index_of_coords(&self, coords: &[u32]) -> usize {
        coords
            .iter()
            .fold(0usize, |acc, &c| acc * self.n as usize + (c as usize - 1))
    }

    pub fn index_of(&self, x: &Point) -> Result<usize> {
        self.check_point(x)?;
        Ok(self.index_of_coords(&x.0))
    }

    pub fn point_at(&self, index: usize) -> Point {
        point_at(self.n, self.d, index)
    }

    pub fn contains(&self, x: &Point) -> Result<bool> {
        Ok(self.bits.get(self.index_of(x)?))
    }

    pub fn insert(&mut self, x: &Point) -> Result<()> {
        let i = self.index_of(x)?;
        self.bits.set(i, true);
        Ok(())
    }

    pub fn toggle(&mut self, x: &Point) -> Result<()> {
        let i = self.index_of(x)?;
        self.bits.flip(i);
        Ok(())
    }

    fn check_same_space(&self, other: &PointSet) -> Result<()> {
        if (self.n, self.d) != (other.n, other.d) {
            return argument(format!(
                "point sets over [{}]^{} and [{}]^{}",
                self.n, self.d, other.n, other.d
            ));
        }
        Ok(())
    }

    pub fn symmetric_difference(&self, other: &PointSet) -> Result<PointSet> {
        self.check_same_space(other)?;
        Ok(PointSet {
            n: self.n,
            d: self.d,
            bits: self.bits.xor(&other.bits),
        })
    }

    pub fn is_subset_of(&self, other: &PointSet) -> Result<bool> {
        self.check_same_space(other)?;
        Ok(self.bits.is_subset_of(&other.bits))
    }

    /// Members in increasing index order.
    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        self.bits.iter_ones().map(|i| self.point_at(i))
    }

    pub fn sparse(&self) -> Vec<Vec<u32>> {
        self.points().map(Point::into_coords).collect()
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PointSet[{}]^{}{{", self.n, self.d)?;
        for (i, p) in self.points().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

/// JSON form of a [`PointSet`]: header plus the list of member points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparsePointSet {
    pub n: u32,
    pub d: usize,
    pub points: Vec<Vec<u32>>,
}

impl From<&PointSet> for SparsePointSet {
    fn from(s: &PointSet) -> Self {
        SparsePointSet {
            n: s.n,
            d: s.d,
            points: s.sparse(),
        }
    }
}

impl TryFrom<&SparsePointSet> for PointSet {
    type Error = Error;

    fn try_from(s: &SparsePointSet) -> Result<Self> {
        PointSet::from_sparse(s.n, s.d, &s.points)
    }
}

pub fn point_at(n: u32, d: usize, mut index: usize) -> Point {
    let mut coords = vec![0u32; d];
    for slot in coords.iter_mut().rev() {
        *slot = (index % n as usize) as u32 + 1;
        index /= n as usize;
    }
    Point(coords)
}

/// Every point of `[n]^d` in index order.
pub fn all_points(n: u32, d: usize) -> Result<impl Iterator<Item = Point>> {
    let total = point_count(n, d)?;
    Ok((0..total).map(move |i| point_at(n, d, i)))
}

/// `(x₁, …, x_d) ↦ (x₁, …, x₁, x₂, …, x_d)` with `x₁` repeated `D − d + 1`
/// times.
pub fn embed(x: &Point, target_dim: usize) -> Result<Point> {
    let d = x.dim();
    if d > target_dim {
        return argument(format!("cannot embed dimension {d} into {target_dim}"));
    }
    let mut coords = Vec::with_capacity(target_dim);
    coords.extend(std::iter::repeat_n(x.0[0], target_dim - d + 1));
    coords.extend_from_slice(&x.0[1..]);
    Ok(Point(coords))
}

/// `{x ∈ [n]^d : embed(x) ∈ X}`.
pub fn pullback(big: &PointSet, d: usize) -> Result<PointSet> {
    if d > big.d {
        return argument(format!("cannot pull back dimension {} to {d}", big.d));
    }
    let mut out = PointSet::empty(big.n, d)?;
    for (i, x) in all_points(big.n, d)?.enumerate() {
        if big.contains(&embed(&x, big.d)?)? {
            out.bits.set(i, true);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval_union::enumerate_unions;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn pt(c: &[u32], n: u32) -> Point {
        Point::new(c.to_vec(), n).unwrap()
    }

    fn vs(e: &[u32], n: u32) -> ValueSet {
        ValueSet::new(e.to_vec(), n).unwrap()
    }

    #[test]
    fn valueset_examples() {
        assert_eq!(valueset_of(&pt(&[1, 1], 2)).elems(), &[1]);
        assert_eq!(valueset_of(&pt(&[2, 1, 2], 2)).elems(), &[1, 2]);
        assert_eq!(valueset_of(&pt(&[3, 1, 2], 3)).elems(), &[1, 2, 3]);
    }

    #[test]
    fn representative_examples() {
        assert_eq!(
            representative_point(&vs(&[1, 2], 2), 2).unwrap().coords(),
            &[1, 2]
        );
        assert_eq!(
            representative_point(&vs(&[2], 2), 3).unwrap().coords(),
            &[2, 2, 2]
        );
        assert_eq!(
            representative_point(&vs(&[1, 3], 3), 4).unwrap().coords(),
            &[1, 3, 3, 3]
        );
        assert_eq!(
            representative_point(&vs(&[1, 2, 3], 3), 2),
            Err(Error::Size { size: 3, d: 2 })
        );
    }

    #[test]
    fn representative_has_its_value_set() {
        let idx = ValueSpaceIndex::new(6, 4).unwrap();
        for t in idx.iter() {
            assert_eq!(valueset_of(&representative_point(&t, 4).unwrap()), t);
        }
    }

    #[test]
    fn inclusion_vector_examples() {
        let idx = ValueSpaceIndex::new(2, 2).unwrap();
        let s = IntervalUnion::from_pairs(&[(1, 2)], 2).unwrap();
        assert_eq!(inclusion_vector(&s, &idx).to_string(), "111");
        let s = IntervalUnion::from_pairs(&[(1, 1)], 2).unwrap();
        assert_eq!(inclusion_vector(&s, &idx).to_string(), "100");
    }

    #[test]
    fn inclusion_vector_popcount() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..100 {
            let n = rng.gen_range(1..=14u32);
            let d = rng.gen_range(1..=5usize);
            let elems: Vec<u32> = (1..=n).filter(|_| rng.gen_bool(0.5)).collect();
            if elems.is_empty() {
                continue;
            }
            let s = IntervalUnion::from_elements(&elems, n).unwrap();
            let idx = ValueSpaceIndex::new(n, d).unwrap();
            let size = elems.len() as u64;
            let expected: u64 = (1..=d.min(elems.len()) as u64)
                .map(|i| u64::try_from(crate::binom::big(size, i)).unwrap())
                .sum();
            assert_eq!(inclusion_vector(&s, &idx).count_ones() as u64, expected);
        }
    }

    #[test]
    fn inclusion_vector_respects_value_set_reduction() {
        for n in 1..=4 {
            for d in 1..=3 {
                let idx = ValueSpaceIndex::new(n, d).unwrap();
                for s in enumerate_unions(n, 3) {
                    let v = inclusion_vector(&s, &idx);
                    for x in all_points(n, d).unwrap() {
                        let col = idx.column_of(&valueset_of(&x)).unwrap();
                        assert_eq!(member_power(&x, &s), v.get(col));
                    }
                }
            }
        }
    }

    #[test]
    fn membership_examples() {
        let s = IntervalUnion::from_pairs(&[(1, 2)], 3).unwrap();
        assert!(member_power(&pt(&[1, 2], 3), &s));
        assert!(!member_power(&pt(&[1, 3], 3), &s));
        assert!(!member_vej(&pt(&[1, 3], 3), &[1], &[1, 2]));
        assert!(!member_vej(&pt(&[2, 2], 3), &[1], &[1, 2]));
        assert!(member_vej(&pt(&[2, 1], 3), &[1], &[1, 2]));
        assert!(member_vej(&pt(&[2, 2], 3), &[], &[1, 2]));
    }

    #[test]
    fn column_order_and_bijection() {
        let idx = ValueSpaceIndex::new(3, 2).unwrap();
        let listed: Vec<String> = idx.iter().map(|t| t.to_string()).collect();
        assert_eq!(listed, ["{1}", "{2}", "{3}", "{1,2}", "{1,3}", "{2,3}"]);
        for n in 1..=9 {
            for d in 1..=6 {
                let idx = ValueSpaceIndex::new(n, d).unwrap();
                let expected: usize = (1..=d as u64)
                    .map(|i| usize::try_from(crate::binom::big(u64::from(n), i)).unwrap())
                    .sum();
                assert_eq!(idx.len(), expected);
                for (col, t) in idx.iter().enumerate() {
                    assert_eq!(idx.column_of(&t).unwrap(), col);
                    assert_eq!(idx.value_set(col).unwrap(), t);
                }
            }
        }
        assert!(idx.value_set(6).is_err());
        assert!(idx.column_of(&vs(&[1, 2, 3], 3)).is_err());
    }

    #[test]
    fn value_set_class_sizes_are_surjection_counts() {
        // surjections [d] → T, counted by inclusion-exclusion
        fn surjections(d: u32, m: u32) -> u64 {
            (0..=m)
                .map(|j| {
                    let sign = if j % 2 == 0 { 1i64 } else { -1 };
                    let c = u64::try_from(crate::binom::big(u64::from(m), u64::from(j))).unwrap();
                    sign * c as i64 * i64::from(m - j).pow(d)
                })
                .sum::<i64>() as u64
        }
        for n in 1..=4u32 {
            for d in 1..=4usize {
                let idx = ValueSpaceIndex::new(n, d).unwrap();
                let mut counts = vec![0u64; idx.len()];
                for x in all_points(n, d).unwrap() {
                    counts[idx.column_of(&valueset_of(&x)).unwrap()] += 1;
                }
                for (col, t) in idx.iter().enumerate() {
                    assert_eq!(counts[col], surjections(d as u32, t.len() as u32));
                }
            }
        }
    }

    #[test]
    fn powers_of_distinct_sets_differ() {
        for n in 1..=4 {
            for d in 1..=3 {
                let all = enumerate_unions(n, n as usize);
                let powers: Vec<PointSet> =
                    all.iter().map(|s| PointSet::power(s, d).unwrap()).collect();
                for i in 0..powers.len() {
                    for j in i + 1..powers.len() {
                        assert_ne!(powers[i], powers[j]);
                    }
                }
            }
        }
    }

    #[test]
    fn power_matches_membership() {
        let s = IntervalUnion::from_pairs(&[(1, 1), (3, 4)], 4).unwrap();
        let p = PointSet::power(&s, 3).unwrap();
        assert_eq!(p.len(), 27);
        for x in all_points(4, 3).unwrap() {
            assert_eq!(p.contains(&x).unwrap(), member_power(&x, &s));
        }
    }

    #[test]
    fn point_indexing() {
        let s = PointSet::empty(3, 2).unwrap();
        assert_eq!(s.index_of(&pt(&[1, 1], 3)).unwrap(), 0);
        assert_eq!(s.index_of(&pt(&[2, 3], 3)).unwrap(), 5);
        assert_eq!(s.point_at(5).coords(), &[2, 3]);
        assert!(s.index_of(&pt(&[1, 1, 1], 3)).is_err());
        for i in 0..9 {
            assert_eq!(s.index_of(&s.point_at(i)).unwrap(), i);
        }
    }

    #[test]
    fn sparse_json_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let a = PointSet::random(3, 3, &mut rng).unwrap();
        let json = serde_json::to_string(&SparsePointSet::from(&a)).unwrap();
        let back: SparsePointSet = serde_json::from_str(&json).unwrap();
        assert_eq!(PointSet::try_from(&back).unwrap(), a);
        let bad = SparsePointSet {
            n: 2,
            d: 2,
            points: vec![vec![1, 3]],
        };
        assert!(PointSet::try_from(&bad).is_err());
    }

    #[test]
    fn embed_examples() {
        assert_eq!(embed(&pt(&[4, 7], 7), 3).unwrap().coords(), &[4, 4, 7]);
        assert_eq!(embed(&pt(&[4, 7], 7), 2).unwrap().coords(), &[4, 7]);
        assert!(embed(&pt(&[4, 7, 1], 7), 2).is_err());
    }

    #[test]
    fn pullback_inverts_embedding() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let a = PointSet::random(3, 2, &mut rng).unwrap();
        let mut image = PointSet::empty(3, 4).unwrap();
        for x in a.points() {
            image.insert(&embed(&x, 4).unwrap()).unwrap();
        }
        assert_eq!(pullback(&image, 2).unwrap(), a);
        assert_eq!(pullback(&image, 4).unwrap(), image);
    }

    #[test]
    fn pullback_carries_power_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..100 {
            let n = rng.gen_range(1..=4u32);
            let d = rng.gen_range(1..=3usize);
            let big_d = rng.gen_range(d..=4usize);
            let unions = enumerate_unions(n, n as usize);
            let s = &unions[rng.gen_range(0..unions.len())];
            let a_big = PointSet::random(n, big_d, &mut rng).unwrap();
            let b_big = a_big
                .symmetric_difference(&PointSet::power(s, big_d).unwrap())
                .unwrap();
            let a = pullback(&a_big, d).unwrap();
            let b = pullback(&b_big, d).unwrap();
            assert_eq!(
                a.symmetric_difference(&b).unwrap(),
                PointSet::power(s, d).unwrap()
            );
        }
    }
}
