//! Negative certificates: odd closed walks in the symmetric-difference graph
//! once `k > ⌊d/2⌋`, a checker for walks in either the symmetric or the
//! containment graph, and a brute-force BFS bipartiteness test for tiny
//! instances.
//!
//! The graph `G` has vertex set `P([n]^d)` with `A ~ B` iff `A Δ B = S^d` for
//! some `S ∈ I_k`. In containment mode an edge additionally requires one
//! endpoint to contain the other.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{argument, Error, Result};
use crate::interval_union::{enumerate_unions, IntervalUnion};
use crate::value_space::PointSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WalkMode {
    Symmetric,
    Containment,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Walk {
    pub mode: WalkMode,
    pub vertices: Vec<PointSet>,
    pub steps: Vec<IntervalUnion>,
    /// Claims `vertices.first() == vertices.last()`.
    pub closed: bool,
}

/// JSON form of a [`Walk`]. Steps use the `a1-b1,a2-b2` rendering and
/// vertices are sparse point lists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkJson {
    pub mode: WalkMode,
    pub length: usize,
    pub closed: bool,
    pub steps: Vec<String>,
    pub vertices: Vec<Vec<Vec<u32>>>,
}

impl Walk {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn to_json(&self) -> WalkJson {
        WalkJson {
            mode: self.mode,
            length: self.steps.len(),
            closed: self.closed,
            steps: self.steps.iter().map(ToString::to_string).collect(),
            vertices: self.vertices.iter().map(PointSet::sparse).collect(),
        }
    }

    /// Rebuilds a walk over `[n]^d`; only the encoding is validated here.
    pub fn from_json(json: &WalkJson, n: u32, d: usize) -> Result<Self> {
        if json.length != json.steps.len() {
            return argument(format!(
                "length {} does not match {} steps",
                json.length,
                json.steps.len()
            ));
        }
        Ok(Walk {
            mode: json.mode,
            vertices: json
                .vertices
                .iter()
                .map(|v| PointSet::from_sparse(n, d, v))
                .collect::<Result<_>>()?,
            steps: json
                .steps
                .iter()
                .map(|s| IntervalUnion::parse(s, n))
                .collect::<Result<_>>()?,
            closed: json.closed,
        })
    }
}

/// `true` iff every step is in `I_k` over `[n]`, each transition is an edge
/// of the graph selected by the walk's mode, and a closed walk returns to its
/// first vertex.
pub fn verify_walk(w: &Walk, n: u32, d: usize, k: usize) -> bool {
    if w.vertices.is_empty() || w.steps.len() + 1 != w.vertices.len() {
        return false;
    }
    if w.vertices.iter().any(|v| (v.n(), v.d()) != (n, d)) {
        return false;
    }
    if w.steps.iter().any(|s| s.n() != n || s.part_count() > k) {
        return false;
    }
    for (pair, step) in w.vertices.windows(2).zip(&w.steps) {
        let Ok(power) = PointSet::power(step, d) else {
            return false;
        };
        let (a, b) = (&pair[0], &pair[1]);
        if a.symmetric_difference(b).ok().as_ref() != Some(&power) {
            return false;
        }
        if w.mode == WalkMode::Containment {
            let nested = a.is_subset_of(b).unwrap_or(false) || b.is_subset_of(a).unwrap_or(false);
            if !nested {
                return false;
            }
        }
    }
    !w.closed || (!w.steps.is_empty() && w.vertices.first() == w.vertices.last())
}

/// Closed walk of length `2^{d+1} − 1` from `∅`, stepping through the
/// non-empty subsets of `[d+1]` in increasing binary encoding. Requires
/// `k >= ⌊d/2⌋ + 1` and `n >= d + 1`.
pub fn odd_closed_walk(n: u32, d: usize, k: usize) -> Result<Walk> {
    if d == 0 {
        return argument("d must be positive");
    }
    if k < d / 2 + 1 {
        return argument(format!("need k >= ⌊d/2⌋ + 1, got k={k}, d={d}"));
    }
    if (n as usize) < d + 1 {
        return argument(format!("need n >= d + 1, got n={n}, d={d}"));
    }
    if d + 1 >= 32 {
        return Err(Error::TooLarge(format!("walk of length 2^{}", d + 1)));
    }
    let mut current = PointSet::empty(n, d)?;
    let mut vertices = vec![current.clone()];
    let mut steps = Vec::new();
    for mask in 1u32..(1 << (d + 1)) {
        let elems: Vec<u32> = (0..=d as u32)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| i + 1)
            .collect();
        let s = IntervalUnion::from_elements(&elems, n)?;
        if s.part_count() > k {
            return Err(Error::Internal(format!(
                "{s} needs more than {k} intervals"
            )));
        }
        current = current.symmetric_difference(&PointSet::power(&s, d)?)?;
        vertices.push(current.clone());
        steps.push(s);
    }
    if vertices.first() != vertices.last() {
        return Err(Error::Internal("signed subset sum did not cancel".into()));
    }
    Ok(Walk {
        mode: WalkMode::Symmetric,
        vertices,
        steps,
        closed: true,
    })
}

/// Largest `n^d` for which the full graph on `P([n]^d)` is built.
pub const BFS_MAX_POINTS: usize = 20;

const UNSEEN: u8 = 2;

#[derive(Debug, Clone)]
pub struct BipartiteReport {
    pub vertices: u64,
    pub generators: usize,
    pub components: u64,
    pub bipartite: bool,
    /// A simple odd cycle through the BFS tree when not bipartite.
    pub odd_cycle: Option<Walk>,
    /// BFS side (0/1) of each vertex, indexed by the bit pattern of the set.
    pub side: Vec<u8>,
    /// BFS root of the component of each vertex.
    pub root: Vec<u32>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BipartiteSummary {
    pub n: u32,
    pub d: usize,
    pub k: usize,
    pub vertices: u64,
    pub generators: usize,
    pub components: u64,
    pub bipartite: bool,
    pub odd_cycle: Option<WalkJson>,
}

impl BipartiteReport {
    pub fn summary(&self, n: u32, d: usize, k: usize) -> BipartiteSummary {
        BipartiteSummary {
            n,
            d,
            k,
            vertices: self.vertices,
            generators: self.generators,
            components: self.components,
            bipartite: self.bipartite,
            odd_cycle: self.odd_cycle.as_ref().map(Walk::to_json),
        }
    }
}

/// Explicit BFS 2-colouring of `G` over all subsets of `[n]^d`.
pub fn bfs_bipartite(n: u32, d: usize, k: usize) -> Result<BipartiteReport> {
    if k == 0 {
        return argument("k must be positive");
    }
    let points = (n as usize)
        .checked_pow(d as u32)
        .filter(|&p| p <= BFS_MAX_POINTS)
        .ok_or_else(|| {
            Error::TooLarge(format!("2^({n}^{d}) vertices exceeds 2^{BFS_MAX_POINTS}"))
        })?;
    let unions = enumerate_unions(n, k);
    let generators: Vec<u32> = unions
        .iter()
        .map(|s| PointSet::power(s, d).map(|p| p.bits().words()[0] as u32))
        .collect::<Result<_>>()?;
    let step_of: HashMap<u32, usize> = generators
        .iter()
        .enumerate()
        .map(|(i, &g)| (g, i))
        .collect();

    let total = 1usize << points;
    let mut side = vec![UNSEEN; total];
    let mut root = vec![0u32; total];
    let mut parent = vec![0u32; total];
    let mut depth = vec![0u32; total];
    let mut queue: Vec<u32> = Vec::with_capacity(total);
    let mut components = 0u64;
    let mut conflict: Option<(u32, u32)> = None;

    for start in 0..total as u32 {
        if side[start as usize] != UNSEEN {
            continue;
        }
        components += 1;
        side[start as usize] = 0;
        root[start as usize] = start;
        parent[start as usize] = start;
        queue.clear();
        queue.push(start);
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            for &g in &generators {
                let v = u ^ g;
                let (ui, vi) = (u as usize, v as usize);
                if side[vi] == UNSEEN {
                    side[vi] = 1 - side[ui];
                    root[vi] = start;
                    parent[vi] = u;
                    depth[vi] = depth[ui] + 1;
                    queue.push(v);
                } else if side[vi] == side[ui] && conflict.is_none() {
                    conflict = Some((u, v));
                }
            }
        }
    }

    let odd_cycle = match conflict {
        None => None,
        Some((u, v)) => Some(tree_cycle(u, v, &parent, &depth, |a, b| {
            let step = step_of[&(a ^ b)];
            let from = PointSet::from_word(n, d, u64::from(a))?;
            let to = PointSet::from_word(n, d, u64::from(b))?;
            Ok((from, to, unions[step].clone()))
        })?),
    };
    Ok(BipartiteReport {
        vertices: total as u64,
        generators: generators.len(),
        components,
        bipartite: conflict.is_none(),
        odd_cycle,
        side,
        root,
    })
}

/// Closes the tree paths from `u` and `v` to their lowest common ancestor
/// with the edge `u–v`.
fn tree_cycle(
    u: u32,
    v: u32,
    parent: &[u32],
    depth: &[u32],
    edge: impl Fn(u32, u32) -> Result<(PointSet, PointSet, IntervalUnion)>,
) -> Result<Walk> {
    let (mut a, mut b) = (u, v);
    let mut up_from_u = vec![a];
    let mut up_from_v = vec![b];
    while depth[a as usize] > depth[b as usize] {
        a = parent[a as usize];
        up_from_u.push(a);
    }
    while depth[b as usize] > depth[a as usize] {
        b = parent[b as usize];
        up_from_v.push(b);
    }
    while a != b {
        a = parent[a as usize];
        b = parent[b as usize];
        up_from_u.push(a);
        up_from_v.push(b);
    }
    // lca → … → u → v → … → lca
    up_from_v.pop();
    let order: Vec<u32> = up_from_u
        .iter()
        .rev()
        .chain(up_from_v.iter())
        .copied()
        .chain(std::iter::once(a))
        .collect();
    let mut vertices = Vec::with_capacity(order.len());
    let mut steps = Vec::with_capacity(order.len() - 1);
    for pair in order.windows(2) {
        let (from, to, step) = edge(pair[0], pair[1])?;
        if vertices.is_empty() {
            vertices.push(from);
        }
        vertices.push(to);
        steps.push(step);
    }
    Ok(Walk {
        mode: WalkMode::Symmetric,
        vertices,
        steps,
        closed: true,
    })
}
