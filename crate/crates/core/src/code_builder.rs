//! The half-density family as an explicit parity code.
//!
//! For `d = 2k` and `n >= d` the inclusion matrix between `I_k` and the
//! value sets of `[n]^d` is square and invertible over GF(2), so there is a
//! unique weight vector `w` with `Σ_{T ⊆ S} w_T = 1` for every `S ∈ I_k`.
//! Picking one representative point of `V(T)` for each `w_T = 1` gives a
//! witness set `W` with `|S^d ∩ W|` odd for every such `S`. The family
//! `{A : |A ∩ W| even}` has density exactly one half and never contains two
//! sets differing by a forbidden power.
//!
//! Odd `d` is handled by building the code in dimension `d − 1` and lifting
//! the witness points with [`embed`].

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra_checks::InclusionSystem;
use crate::error::{argument, Error, Result};
use crate::gf2::{Gf2Matrix, Gf2Vector};
use crate::interval_union::{enumerate_unions, IntervalUnion};
use crate::value_space::{
    embed, member_power, point_at, representative_point, Point, PointSet, ValueSet, ValueSpaceIndex,
};

/// Solution `w` of the parity system, indexed by value set.
#[derive(Debug, Clone)]
pub struct ParityWeights {
    index: ValueSpaceIndex,
    weights: Gf2Vector,
}

impl ParityWeights {
    pub fn index(&self) -> &ValueSpaceIndex {
        &self.index
    }

    pub fn weight(&self, t: &ValueSet) -> Result<bool> {
        Ok(self.weights.get(self.index.column_of(t)?))
    }

    pub fn as_vector(&self) -> &Gf2Vector {
        &self.weights
    }

    /// Value sets with weight one, in column order.
    pub fn support(&self) -> Vec<ValueSet> {
        self.weights
            .iter_ones()
            .map(|c| self.index.value_set(c).expect("column in range"))
            .collect()
    }
}

fn check_even_params(n: u32, d: usize, k: usize) -> Result<()> {
    if d < 2 || d % 2 == 1 {
        return argument(format!("d must be even and at least 2, got {d}"));
    }
    if (n as usize) < d {
        return argument(format!("need n >= d, got n={n}, d={d}"));
    }
    if k == 0 || k > d / 2 {
        return argument(format!("need 1 <= k <= d/2, got k={k}, d={d}"));
    }
    Ok(())
}

/// Solves `Σ_{T ⊆ S, 1 ≤ |T| ≤ d} w_T = 1` for all `S ∈ I_k`. With
/// `k = d/2` the system is square and the solution unique; with smaller `k`
/// free variables are zero.
pub fn solve_parity_weights(n: u32, d: usize, k: usize) -> Result<ParityWeights> {
    check_even_params(n, d, k)?;
    let system = InclusionSystem::new(n, d, k)?;
    let ones = Gf2Vector::ones(system.matrix.rows());
    let weights = match system.matrix.solve(&ones) {
        Ok(w) => w,
        Err(Error::Inconsistent) => {
            return Err(Error::Internal(format!(
                "parity system singular for n={n}, d={d}, k={k}"
            )))
        }
        Err(e) => return Err(e),
    };
    Ok(ParityWeights {
        index: system.index,
        weights,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityCode {
    n: u32,
    d: usize,
    k: usize,
    witness: Vec<Point>,
}

/// JSON certificate of a [`ParityCode`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeCertificate {
    pub n: u32,
    pub d: usize,
    pub k: usize,
    pub witness_points: Vec<Vec<u32>>,
}

/// Builds the parity code for `[n]^d` against unions of at most `k`
/// intervals. Requires `d >= 2`, `n >= 2⌊d/2⌋` and `1 <= k <= ⌊d/2⌋`.
pub fn build_code(n: u32, d: usize, k: usize) -> Result<ParityCode> {
    if d < 2 {
        return argument(format!("d must be at least 2, got {d}"));
    }
    let even_d = 2 * (d / 2);
    if (n as usize) < even_d {
        return argument(format!("need n >= 2⌊d/2⌋, got n={n}, d={d}"));
    }
    if k == 0 || k > d / 2 {
        return argument(format!("need 1 <= k <= ⌊d/2⌋, got k={k}, d={d}"));
    }
    let weights = solve_parity_weights(n, even_d, k)?;
    let mut witness = weights
        .support()
        .iter()
        .map(|t| representative_point(t, even_d).and_then(|p| embed(&p, d)))
        .collect::<Result<Vec<_>>>()?;
    let probe = PointSet::empty(n, d)?;
    witness.sort_by_cached_key(|p| probe.index_of(p).expect("valid point"));
    let code = ParityCode { n, d, k, witness };
    if let Some(bad) = code.parity_violations().first() {
        return Err(Error::Internal(format!(
            "constructed witness meets {bad}^{d} evenly"
        )));
    }
    Ok(code)
}

impl ParityCode {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn witness(&self) -> &[Point] {
        &self.witness
    }

    pub fn witness_set(&self) -> Result<PointSet> {
        PointSet::from_points(self.n, self.d, &self.witness)
    }

    /// `|S^d ∩ W|` is odd.
    pub fn power_parity(&self, s: &IntervalUnion) -> bool {
        self.witness.iter().filter(|w| member_power(w, s)).count() % 2 == 1
    }

    /// Unions `S ∈ I_k` whose power meets the witness an even number of
    /// times. Empty for a valid code.
    pub fn parity_violations(&self) -> Vec<IntervalUnion> {
        enumerate_unions(self.n, self.k)
            .into_par_iter()
            .filter(|s| !self.power_parity(s))
            .collect()
    }

    fn check_dims(&self, a: &PointSet) -> Result<()> {
        if (a.n(), a.d()) != (self.n, self.d) {
            return argument(format!(
                "point set over [{}]^{} but code is over [{}]^{}",
                a.n(),
                a.d(),
                self.n,
                self.d
            ));
        }
        Ok(())
    }

    /// Parity of `|A ∩ W|`; the family is the sets with parity `false`.
    pub fn membership(&self, a: &PointSet) -> Result<bool> {
        self.check_dims(a)?;
        let mut parity = false;
        for w in &self.witness {
            parity ^= a.contains(w)?;
        }
        Ok(parity)
    }

    /// Parity of `|(A Δ S^d) ∩ W|`, evaluated at the witness points without
    /// materializing `S^d`.
    pub fn membership_after_flip(&self, a: &PointSet, s: &IntervalUnion) -> Result<bool> {
        self.check_dims(a)?;
        if s.n() != self.n {
            return argument(format!(
                "union over [{}] but code is over [{}]",
                s.n(),
                self.n
            ));
        }
        let mut parity = false;
        for w in &self.witness {
            parity ^= a.contains(w)? ^ member_power(w, s);
        }
        Ok(parity)
    }

    pub fn to_certificate(&self) -> CodeCertificate {
        CodeCertificate {
            n: self.n,
            d: self.d,
            k: self.k,
            witness_points: self.witness.iter().map(|p| p.coords().to_vec()).collect(),
        }
    }

    /// Checks shape only: points in range, strictly increasing index order,
    /// non-empty. The parity property is checked by [`Self::parity_violations`].
    pub fn from_certificate(cert: &CodeCertificate) -> Result<Self> {
        if cert.n == 0 || cert.d == 0 || cert.k == 0 {
            return argument("certificate needs n, d, k >= 1");
        }
        if cert.witness_points.is_empty() {
            return argument("certificate has no witness points");
        }
        let probe = PointSet::empty(cert.n, cert.d)?;
        let mut witness = Vec::with_capacity(cert.witness_points.len());
        let mut last = None;
        for coords in &cert.witness_points {
            let p = Point::new(coords.clone(), cert.n)?;
            let i = probe.index_of(&p)?;
            if last.is_some_and(|l| l >= i) {
                return argument("witness points must be strictly increasing in index order");
            }
            last = Some(i);
            witness.push(p);
        }
        Ok(ParityCode {
            n: cert.n,
            d: cert.d,
            k: cert.k,
            witness,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExhaustiveReport {
    pub subsets: u64,
    pub members: u64,
    pub generators: u64,
    pub violations: u64,
}

/// Largest `n^d` swept exhaustively.
pub const EXHAUSTIVE_MAX_POINTS: usize = 30;

fn word_of(set: &PointSet) -> u64 {
    set.bits().words().first().copied().unwrap_or(0)
}

/// Visits every `A ⊆ [n]^d` and every `S ∈ I_k`, checking that `A` and
/// `A Δ S^d` have different membership.
pub fn sweep_exhaustive(code: &ParityCode) -> Result<ExhaustiveReport> {
    let points = (code.n as usize)
        .checked_pow(code.d as u32)
        .filter(|&p| p <= EXHAUSTIVE_MAX_POINTS)
        .ok_or_else(|| {
            Error::TooLarge(format!(
                "{}^{} points exceeds the exhaustive limit of {EXHAUSTIVE_MAX_POINTS}",
                code.n, code.d
            ))
        })?;
    let witness = word_of(&code.witness_set()?);
    let generators = enumerate_unions(code.n, code.k)
        .iter()
        .map(|s| PointSet::power(s, code.d).map(|p| word_of(&p)))
        .collect::<Result<Vec<u64>>>()?;
    let parity = |a: u64| (a & witness).count_ones() & 1 == 1;
    let (members, violations) = (0u64..1 << points)
        .into_par_iter()
        .map(|a| {
            let m = parity(a);
            let bad = generators.iter().filter(|&&g| parity(a ^ g) == m).count() as u64;
            (u64::from(!m), bad)
        })
        .reduce(|| (0, 0), |x, y| (x.0 + y.0, x.1 + y.1));
    Ok(ExhaustiveReport {
        subsets: 1 << points,
        members,
        generators: generators.len() as u64,
        violations,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleReport {
    pub samples: u64,
    pub members: u64,
    pub member_fraction: f64,
    pub violations: u64,
}

/// Draws `samples` uniform pairs `(A, S)` with `A ⊆ [n]^d` and `S ∈ I_k` and
/// checks the membership flip. Deterministic in `seed`.
pub fn sample_check(code: &ParityCode, samples: u64, seed: u64) -> Result<SampleReport> {
    if samples == 0 {
        return argument("need at least one sample");
    }
    let unions = enumerate_unions(code.n, code.k);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut members = 0u64;
    let mut violations = 0u64;
    for _ in 0..samples {
        let a = PointSet::random(code.n, code.d, &mut rng)?;
        let s = &unions[rng.gen_range(0..unions.len())];
        let before = code.membership(&a)?;
        if !before {
            members += 1;
        }
        if code.membership_after_flip(&a, s)? == before {
            violations += 1;
        }
    }
    Ok(SampleReport {
        samples,
        members,
        member_fraction: members as f64 / samples as f64,
        violations,
    })
}

/// Graph version: edge weights with an odd number of weighted edges inside
/// every clique on an interval of at least two vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphParityCode {
    n: u32,
    witness_edges: Vec<(u32, u32)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphCertificate {
    pub n: u32,
    pub witness_edges: Vec<[u32; 2]>,
}

/// Edges `{u < v}` of `[n]` in lexicographic order.
pub fn edges(n: u32) -> Vec<(u32, u32)> {
    (1..=n)
        .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
        .collect()
}

fn edge_index(n: u32, u: u32, v: u32) -> usize {
    // edges before row u: Σ_{i<u} (n − i)
    let (n, u, v) = (n as usize, u as usize, v as usize);
    (u - 1) * n - (u - 1) * u / 2 + (v - u - 1)
}

/// Intervals `[a, b]` with `a < b`, ordered by `b − a` then `a`.
pub fn clique_intervals(n: u32) -> Vec<(u32, u32)> {
    (1..n)
        .flat_map(|len| (1..=n - len).map(move |a| (a, a + len)))
        .collect()
}

/// Edge-indicator vector of the clique on `[a, b]`.
pub fn clique_vector(n: u32, a: u32, b: u32) -> Gf2Vector {
    let mut v = Gf2Vector::zeros(edges(n).len());
    for u in a..=b {
        for w in u + 1..=b {
            v.set(edge_index(n, u, w), true);
        }
    }
    v
}

pub fn build_graph_code(n: u32) -> Result<GraphParityCode> {
    if n < 2 {
        return argument(format!("need n >= 2, got {n}"));
    }
    let rows: Vec<Gf2Vector> = clique_intervals(n)
        .iter()
        .map(|&(a, b)| clique_vector(n, a, b))
        .collect();
    let all_edges = edges(n);
    let system = Gf2Matrix::from_rows(all_edges.len(), &rows)?;
    let w = match system.solve(&Gf2Vector::ones(rows.len())) {
        Ok(w) => w,
        Err(Error::Inconsistent) => {
            return Err(Error::Internal(format!("clique system singular for n={n}")))
        }
        Err(e) => return Err(e),
    };
    let code = GraphParityCode {
        n,
        witness_edges: w.iter_ones().map(|i| all_edges[i]).collect(),
    };
    if let Some((a, b)) = code.parity_violations().first() {
        return Err(Error::Internal(format!("clique [{a},{b}] has even parity")));
    }
    Ok(code)
}

impl GraphParityCode {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn witness_edges(&self) -> &[(u32, u32)] {
        &self.witness_edges
    }

    pub fn witness_vector(&self) -> Gf2Vector {
        let mut v = Gf2Vector::zeros(edges(self.n).len());
        for &(u, w) in &self.witness_edges {
            v.set(edge_index(self.n, u, w), true);
        }
        v
    }

    pub fn clique_parity(&self, a: u32, b: u32) -> bool {
        self.witness_edges
            .iter()
            .filter(|&&(u, v)| a <= u && v <= b)
            .count()
            % 2
            == 1
    }

    pub fn parity_violations(&self) -> Vec<(u32, u32)> {
        clique_intervals(self.n)
            .into_iter()
            .filter(|&(a, b)| !self.clique_parity(a, b))
            .collect()
    }

    /// Parity of the number of witness edges in the graph; the family is the
    /// graphs with parity `false`.
    pub fn membership(&self, graph: &Gf2Vector) -> Result<bool> {
        if graph.len() != edges(self.n).len() {
            return argument(format!(
                "graph has {} edge slots, expected {}",
                graph.len(),
                edges(self.n).len()
            ));
        }
        Ok(graph.dot(&self.witness_vector()))
    }

    pub fn to_certificate(&self) -> GraphCertificate {
        GraphCertificate {
            n: self.n,
            witness_edges: self.witness_edges.iter().map(|&(u, v)| [u, v]).collect(),
        }
    }

    pub fn from_certificate(cert: &GraphCertificate) -> Result<Self> {
        if cert.n < 2 {
            return argument("graph certificate needs n >= 2");
        }
        let mut seen = BTreeSet::new();
        for &[u, v] in &cert.witness_edges {
            if !(1 <= u && u < v && v <= cert.n) {
                return argument(format!("invalid edge [{u},{v}]"));
            }
            if !seen.insert((u, v)) {
                return argument(format!("duplicate edge [{u},{v}]"));
            }
        }
        Ok(GraphParityCode {
            n: cert.n,
            witness_edges: seen.into_iter().collect(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphSweepReport {
    pub graphs: u64,
    pub members: u64,
    pub forbidden_pairs: u64,
}

/// Largest number of edge slots swept exhaustively.
pub const GRAPH_SWEEP_MAX_EDGES: usize = 24;

/// Counts the member graphs and the ordered pairs of distinct members whose
/// edge sets differ by an interval clique.
pub fn graph_family_sweep(code: &GraphParityCode) -> Result<GraphSweepReport> {
    let m = edges(code.n).len();
    if m > GRAPH_SWEEP_MAX_EDGES {
        return Err(Error::TooLarge(format!("2^{m} graphs")));
    }
    let witness = code.witness_vector().words().first().copied().unwrap_or(0);
    let cliques: Vec<u64> = clique_intervals(code.n)
        .iter()
        .map(|&(a, b)| clique_vector(code.n, a, b).words()[0])
        .collect();
    let member = |g: u64| (g & witness).count_ones().is_multiple_of(2);
    let (members, forbidden) = (0u64..1 << m)
        .into_par_iter()
        .filter(|&g| member(g))
        .map(|g| {
            let bad = cliques.iter().filter(|&&c| member(g ^ c)).count() as u64;
            (1u64, bad)
        })
        .reduce(|| (0, 0), |x, y| (x.0 + y.0, x.1 + y.1));
    Ok(GraphSweepReport {
        graphs: 1 << m,
        members,
        forbidden_pairs: forbidden,
    })
}

/// Result of restricting a family to `[N]^d` along its most popular outside
/// part.
#[derive(Debug, Clone)]
pub struct Slice {
    /// Common intersection of the chosen members with `[n]^d ∖ [N]^d`.
    pub outside: PointSet,
    /// The `[N]^d` parts of the chosen members, in increasing bit order.
    pub subfamily: Vec<PointSet>,
    /// Number of distinct sets in the input family.
    pub family_size: usize,
    pub ambient_points: usize,
    pub slice_points: usize,
}

impl Slice {
    /// `|sub| / 2^{N^d} >= |family| / 2^{n^d}`, compared exactly.
    pub fn density_not_decreased(&self) -> bool {
        let lhs = BigUint::from(self.subfamily.len()) << (self.ambient_points - self.slice_points);
        lhs >= BigUint::from(self.family_size)
    }

    pub fn family_density(&self) -> f64 {
        self.family_size as f64 / 2f64.powi(self.ambient_points as i32)
    }

    pub fn subfamily_density(&self) -> f64 {
        self.subfamily.len() as f64 / 2f64.powi(self.slice_points as i32)
    }
}

/// Groups the family by the part outside `[N]^d` and keeps the largest
/// group (ties go to the smallest outside part in bit order).
pub fn restrict_to_best_slice(family: &[PointSet], big_n: u32) -> Result<Slice> {
    let first = family.first().ok_or(Error::EmptyFamily)?;
    let (n, d) = (first.n(), first.d());
    if big_n == 0 || big_n > n {
        return argument(format!("need 1 <= N <= n, got N={big_n}, n={n}"));
    }
    if family.iter().any(|a| (a.n(), a.d()) != (n, d)) {
        return argument("family members live in different spaces");
    }
    let distinct: BTreeSet<&PointSet> = family.iter().collect();
    let ambient = first.universe_size();
    let inner: Vec<usize> = (0..ambient)
        .filter(|&i| point_at(n, d, i).coords().iter().all(|&c| c <= big_n))
        .collect();
    let mut inner_mask = Gf2Vector::zeros(ambient);
    for &i in &inner {
        inner_mask.set(i, true);
    }
    let mut groups: BTreeMap<Gf2Vector, Vec<&PointSet>> = BTreeMap::new();
    for a in &distinct {
        let outside = a.bits().xor(&a.bits().and(&inner_mask));
        groups.entry(outside).or_default().push(a);
    }
    let (outside, members) = groups
        .into_iter()
        .fold(
            None::<(Gf2Vector, Vec<&PointSet>)>,
            |best, (key, group)| match best {
                Some((_, ref g)) if g.len() >= group.len() => best,
                _ => Some((key, group)),
            },
        )
        .expect("non-empty family");
    let subfamily = members
        .iter()
        .map(|a| {
            let mut part = PointSet::empty(big_n, d)?;
            for &i in &inner {
                if a.bits().get(i) {
                    part.insert(&point_at(n, d, i))?;
                }
            }
            Ok(part)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Slice {
        outside: PointSet::from_bits(n, d, outside)?,
        subfamily,
        family_size: distinct.len(),
        ambient_points: ambient,
        slice_points: inner.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coords(code: &ParityCode) -> Vec<Vec<u32>> {
        code.witness().iter().map(|p| p.coords().to_vec()).collect()
    }

    #[test]
    fn weights_examples() {
        let w = solve_parity_weights(2, 2, 1).unwrap();
        assert_eq!(w.as_vector().to_string(), "111");
        for t in [vec![1], vec![2], vec![1, 2]] {
            assert!(w.weight(&ValueSet::new(t, 2).unwrap()).unwrap());
        }
        let w = solve_parity_weights(3, 2, 1).unwrap();
        assert_eq!(w.as_vector().len(), 6);
        for s in enumerate_unions(3, 1) {
            let sum = w.support().iter().filter(|t| t.is_subset_of(&s)).count();
            assert_eq!(sum % 2, 1, "{s}");
        }
    }

    #[test]
    fn weights_below_half_use_zero_free_variables() {
        let w = solve_parity_weights(5, 4, 1).unwrap();
        let system = InclusionSystem::new(5, 4, 1).unwrap();
        assert_eq!(
            system.matrix.matvec(w.as_vector()).unwrap(),
            Gf2Vector::ones(system.matrix.rows())
        );
    }

    #[test]
    fn weights_argument_errors() {
        assert!(solve_parity_weights(3, 3, 1).is_err());
        assert!(solve_parity_weights(3, 4, 2).is_err());
        assert!(solve_parity_weights(4, 4, 3).is_err());
    }

    #[test]
    fn code_examples() {
        let code = build_code(2, 2, 1).unwrap();
        assert_eq!(coords(&code), vec![vec![1, 1], vec![1, 2], vec![2, 2]]);
        let parities: Vec<usize> = ["1-1", "2-2", "1-2"]
            .iter()
            .map(|s| {
                let s = IntervalUnion::parse(s, 2).unwrap();
                code.witness()
                    .iter()
                    .filter(|w| member_power(w, &s))
                    .count()
            })
            .collect();
        assert_eq!(parities, [1, 1, 3]);

        let code = build_code(2, 3, 1).unwrap();
        assert_eq!(
            coords(&code),
            vec![vec![1, 1, 1], vec![1, 1, 2], vec![2, 2, 2]]
        );

        let code = build_code(3, 2, 1).unwrap();
        assert!(code.parity_violations().is_empty());
    }

    #[test]
    fn code_is_deterministic_and_sorted() {
        let a = build_code(5, 4, 2).unwrap();
        let b = build_code(5, 4, 2).unwrap();
        assert_eq!(a, b);
        let probe = PointSet::empty(5, 4).unwrap();
        let idx: Vec<usize> = a
            .witness()
            .iter()
            .map(|p| probe.index_of(p).unwrap())
            .collect();
        assert!(idx.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn code_argument_errors() {
        assert!(build_code(3, 1, 1).is_err());
        assert!(build_code(2, 3, 1).is_ok());
        assert!(build_code(3, 5, 2).is_err());
        assert!(build_code(3, 4, 2).is_err());
        assert!(build_code(4, 4, 3).is_err());
        assert!(build_code(4, 4, 0).is_err());
    }

    #[test]
    fn membership_examples() {
        let code = build_code(3, 2, 1).unwrap();
        assert!(!code.membership(&PointSet::empty(3, 2).unwrap()).unwrap());
        for s in enumerate_unions(3, 1) {
            assert!(code.membership(&PointSet::power(&s, 2).unwrap()).unwrap());
        }
        assert!(code.membership(&PointSet::empty(3, 3).unwrap()).is_err());
    }

    #[test]
    fn membership_flip_exhaustive_n3_d2() {
        let code = build_code(3, 2, 1).unwrap();
        let unions = enumerate_unions(3, 1);
        let powers: Vec<PointSet> = unions
            .iter()
            .map(|s| PointSet::power(s, 2).unwrap())
            .collect();
        let mut members = 0;
        for mask in 0u64..512 {
            let a = PointSet::from_word(3, 2, mask).unwrap();
            let m = code.membership(&a).unwrap();
            members += usize::from(!m);
            for (s, p) in unions.iter().zip(&powers) {
                let flipped = a.symmetric_difference(p).unwrap();
                assert_ne!(code.membership(&flipped).unwrap(), m);
                assert_eq!(code.membership_after_flip(&a, s).unwrap(), !m);
            }
        }
        assert_eq!(members, 256);
    }

    #[test]
    fn membership_is_linear() {
        let code = build_code(4, 3, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..200 {
            let a = PointSet::random(4, 3, &mut rng).unwrap();
            let b = PointSet::random(4, 3, &mut rng).unwrap();
            let ab = a.symmetric_difference(&b).unwrap();
            assert_eq!(
                code.membership(&ab).unwrap(),
                code.membership(&a).unwrap() ^ code.membership(&b).unwrap()
            );
        }
    }

    #[test]
    fn lifted_code_agrees_with_pullback() {
        use crate::value_space::pullback;
        for n in 2..=3u32 {
            let lifted = build_code(n, 3, 1).unwrap();
            let base = build_code(n, 2, 1).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(u64::from(n));
            for _ in 0..1000 {
                let x = PointSet::random(n, 3, &mut rng).unwrap();
                let image_part = pullback(&x, 2).unwrap();
                assert_eq!(
                    lifted.membership(&x).unwrap(),
                    base.membership(&image_part).unwrap()
                );
            }
        }
    }

    #[test]
    fn sweep_counts_half() {
        for (n, d) in [(2u32, 2usize), (3, 2), (4, 2), (2, 3)] {
            let code = build_code(n, d, 1).unwrap();
            let r = sweep_exhaustive(&code).unwrap();
            assert_eq!(r.violations, 0);
            assert_eq!(r.members * 2, r.subsets);
        }
        let code = build_code(6, 2, 1).unwrap();
        assert!(matches!(sweep_exhaustive(&code), Err(Error::TooLarge(_))));
    }

    #[test]
    fn sweep_detects_a_broken_code() {
        let mut cert = build_code(3, 2, 1).unwrap().to_certificate();
        cert.witness_points.remove(0);
        let broken = ParityCode::from_certificate(&cert).unwrap();
        assert!(!broken.parity_violations().is_empty());
        assert!(sweep_exhaustive(&broken).unwrap().violations > 0);
    }

    #[test]
    fn sampling_is_seeded() {
        let code = build_code(4, 4, 2).unwrap();
        let a = sample_check(&code, 2000, 3).unwrap();
        let b = sample_check(&code, 2000, 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.violations, 0);
        assert!((a.member_fraction - 0.5).abs() < 0.05);
    }

    #[test]
    fn certificate_round_trip_and_validation() {
        let code = build_code(4, 2, 1).unwrap();
        let json = serde_json::to_string(&code.to_certificate()).unwrap();
        let back: CodeCertificate = serde_json::from_str(&json).unwrap();
        assert_eq!(ParityCode::from_certificate(&back).unwrap(), code);

        let mut unsorted = code.to_certificate();
        unsorted.witness_points.reverse();
        assert!(ParityCode::from_certificate(&unsorted).is_err());
        let mut out_of_range = code.to_certificate();
        out_of_range.witness_points[0] = vec![5, 1];
        assert!(ParityCode::from_certificate(&out_of_range).is_err());
        let mut empty = code.to_certificate();
        empty.witness_points.clear();
        assert!(ParityCode::from_certificate(&empty).is_err());
    }

    #[test]
    fn graph_examples() {
        assert_eq!(build_graph_code(2).unwrap().witness_edges(), &[(1, 2)]);
        assert_eq!(
            build_graph_code(3).unwrap().witness_edges(),
            &[(1, 2), (1, 3), (2, 3)]
        );
        let code = build_graph_code(4).unwrap();
        assert!(code.parity_violations().is_empty());
        let r = graph_family_sweep(&code).unwrap();
        assert_eq!((r.graphs, r.members, r.forbidden_pairs), (64, 32, 0));
        assert!(build_graph_code(1).is_err());
    }

    #[test]
    fn graph_family_pairwise_n4() {
        // Pairwise oracle over the explicit member list.
        let code = build_graph_code(4).unwrap();
        let members: Vec<u64> = (0u64..64)
            .filter(|&g| !code.membership(&Gf2Vector::from_words(6, vec![g])).unwrap())
            .collect();
        assert_eq!(members.len(), 32);
        let cliques: BTreeSet<u64> = clique_intervals(4)
            .iter()
            .map(|&(a, b)| clique_vector(4, a, b).words()[0])
            .collect();
        for (i, &g) in members.iter().enumerate() {
            for &h in &members[i + 1..] {
                assert!(!cliques.contains(&(g ^ h)));
            }
        }
    }

    #[test]
    fn graph_codes_valid_up_to_ten() {
        for n in 2..=10 {
            assert!(build_graph_code(n).unwrap().parity_violations().is_empty());
        }
    }

    #[test]
    fn graph_certificate_round_trip() {
        let code = build_graph_code(5).unwrap();
        let back = GraphParityCode::from_certificate(&code.to_certificate()).unwrap();
        assert_eq!(back, code);
        let bad = GraphCertificate {
            n: 3,
            witness_edges: vec![[2, 1]],
        };
        assert!(GraphParityCode::from_certificate(&bad).is_err());
    }

    #[test]
    fn slice_of_everything_is_everything() {
        let family: Vec<PointSet> = (0u64..16)
            .map(|m| PointSet::from_word(2, 2, m).unwrap())
            .collect();
        let slice = restrict_to_best_slice(&family, 1).unwrap();
        assert_eq!(slice.subfamily.len(), 2);
        assert_eq!(slice.subfamily_density(), 1.0);
        assert!(slice.density_not_decreased());
    }

    #[test]
    fn slice_of_singleton() {
        let a = PointSet::from_word(2, 2, 0b1011).unwrap();
        let slice = restrict_to_best_slice(std::slice::from_ref(&a), 1).unwrap();
        assert_eq!(slice.subfamily.len(), 1);
        assert!(slice.density_not_decreased());
        // outside part plus inside part reassembles the member
        let mut whole = slice.outside.clone();
        for p in slice.subfamily[0].points() {
            whole.insert(&p).unwrap();
        }
        assert_eq!(whole, a);
    }

    #[test]
    fn slice_random_families() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..100 {
            let family: Vec<PointSet> = (0..100)
                .map(|_| PointSet::from_word(2, 2, rng.gen_range(0..16)).unwrap())
                .collect();
            let slice = restrict_to_best_slice(&family, 1).unwrap();
            assert!(slice.density_not_decreased());
            assert!(slice.subfamily_density() >= slice.family_density());
            for part in &slice.subfamily {
                assert_eq!((part.n(), part.d()), (1, 2));
            }
        }
    }

    #[test]
    fn slice_errors() {
        assert!(matches!(
            restrict_to_best_slice(&[], 1),
            Err(Error::EmptyFamily)
        ));
        let a = PointSet::empty(2, 2).unwrap();
        assert!(restrict_to_best_slice(std::slice::from_ref(&a), 3).is_err());
        let b = PointSet::empty(3, 2).unwrap();
        assert!(restrict_to_best_slice(&[a, b], 1).is_err());
    }

    #[test]
    fn half_density_by_counting_small_spaces() {
        // Full count over P([n]^d) by materialized point sets.
        for (n, d) in [(2u32, 2usize), (2, 3)] {
            let code = build_code(n, d, 1).unwrap();
            let total = 1u64 << n.pow(d as u32);
            let members = (0..total)
                .filter(|&m| {
                    !code
                        .membership(&PointSet::from_word(n, d, m).unwrap())
                        .unwrap()
                })
                .count() as u64;
            assert_eq!(members * 2, total);
        }
    }
}
