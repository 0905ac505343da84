//! Edge-colored multigraphs on the vertex set `1..=n`.
//!
//! Parallel edges between `i` and `j` carry the colors `0..mu(i,j)`. Colors
//! are never stored: an edge is addressed by its endpoints and its position
//! among the parallel copies, so deleting an edge shifts the colors above it
//! down by one automatically.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Vertex sets are bitmasks, which bounds the vertex count.
pub const MAX_VERTICES: usize = 64;

/// A single colored edge `{u,v}_color`. Endpoints are stored with `u <= v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeRef {
    u: usize,
    v: usize,
    color: u32,
}

impl EdgeRef {
    pub fn new(a: usize, b: usize, color: u32) -> Self {
        EdgeRef {
            u: a.min(b),
            v: a.max(b),
            color,
        }
    }

    pub fn u(&self) -> usize {
        self.u
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn color(&self) -> u32 {
        self.color
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.u, self.v)
    }

    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    /// The endpoint opposite `x`, or `None` if `x` is not an endpoint.
    pub fn other(&self, x: usize) -> Option<usize> {
        if x == self.u {
            Some(self.v)
        } else if x == self.v {
            Some(self.u)
        } else {
            None
        }
    }
}

/// Serialized as `[u, v, color]`.
impl Serialize for EdgeRef {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (self.u, self.v, self.color).serialize(s)
    }
}

impl fmt::Display for EdgeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}_{}", self.u, self.v, self.color)
    }
}

/// A subset of `1..=n` packed into a `u64` (bit `i-1` is vertex `i`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub fn empty() -> Self {
        VertexSet(0)
    }

    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub fn bits(&self) -> u64 {
        self.0
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(vertices: I) -> Self {
        let mut s = VertexSet(0);
        for v in vertices {
            s.insert(v);
        }
        s
    }

    pub fn insert(&mut self, v: usize) {
        debug_assert!((1..=MAX_VERTICES).contains(&v));
        self.0 |= 1u64 << (v - 1);
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << (v - 1));
    }

    pub fn contains(&self, v: usize) -> bool {
        (1..=MAX_VERTICES).contains(&v) && self.0 & (1u64 << (v - 1)) != 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    /// Smallest member, if any.
    pub fn min(&self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize + 1;
                bits &= bits - 1;
                Some(v)
            }
        })
    }
}

/// JSON wire format: `{"n": 3, "edges": [[1,2],[1,3],[2,3]]}`. Parallel
/// edges are repeated pairs, loops are `[i,i]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

/// An undirected multigraph with loops, stored as its symmetric multiplicity
/// table. Equality and hashing compare `(n, mu)` exactly, which makes the
/// graph itself usable as a memo key.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColoredMultigraph {
    n: usize,
    mu: Vec<u32>,
}

impl ColoredMultigraph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::InvalidVertexCount {
                n,
                max: MAX_VERTICES,
            });
        }
        Ok(ColoredMultigraph {
            n,
            mu: vec![0; n * n],
        })
    }

    pub fn from_edge_list(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(a, b) in pairs {
            g.check_vertex(a)?;
            g.check_vertex(b)?;
            g.bump(a, b, 1);
        }
        Ok(g)
    }

    pub fn from_document(doc: &GraphDocument) -> Result<Self> {
        let pairs: Vec<(usize, usize)> = doc.edges.iter().map(|e| (e[0], e[1])).collect();
        Self::from_edge_list(doc.n, &pairs)
    }

    pub fn to_document(&self) -> GraphDocument {
        let mut edges = Vec::with_capacity(self.edge_count());
        for e in self.edges() {
            edges.push([e.u, e.v]);
        }
        GraphDocument { n: self.n, edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.n
    }

    /// Number of parallel edges between `i` and `j` (loops when `i == j`).
    pub fn mu(&self, i: usize, j: usize) -> u32 {
        self.mu[self.idx(i, j)]
    }

    pub fn loops(&self, i: usize) -> u32 {
        self.mu(i, i)
    }

    /// Degree with loops counted twice.
    pub fn deg(&self, i: usize) -> u32 {
        let row = &self.mu[(i - 1) * self.n..i * self.n];
        row.iter().sum::<u32>() + row[i - 1]
    }

    pub fn edge_count(&self) -> usize {
        let mut total = 0usize;
        for i in 1..=self.n {
            for j in i..=self.n {
                total += self.mu(i, j) as usize;
            }
        }
        total
    }

    pub fn has_loops(&self) -> bool {
        (1..=self.n).any(|i| self.loops(i) > 0)
    }

    pub fn has_edge(&self, e: &EdgeRef) -> bool {
        e.u >= 1 && e.v <= self.n && e.color < self.mu(e.u, e.v)
    }

    /// Every edge, ordered by endpoints and then color.
    pub fn edges(&self) -> impl Iterator<Item = EdgeRef> + '_ {
        (1..=self.n).flat_map(move |i| {
            (i..=self.n).flat_map(move |j| (0..self.mu(i, j)).map(move |c| EdgeRef::new(i, j, c)))
        })
    }

    /// Edges from `i` to vertices outside `set`, with multiplicity.
    pub fn outdeg(&self, set: VertexSet, i: usize) -> Result<u32> {
        if !set.contains(i) {
            return Err(Error::VertexNotInSet(i));
        }
        Ok(self.outdeg_unchecked(set, i))
    }

    pub(crate) fn outdeg_unchecked(&self, set: VertexSet, i: usize) -> u32 {
        let row = &self.mu[(i - 1) * self.n..i * self.n];
        row.iter()
            .enumerate()
            .filter(|&(j, _)| !set.contains(j + 1))
            .map(|(_, &m)| m)
            .sum()
    }

    /// Edges from `i` to other vertices inside `set`, with multiplicity.
    /// Defined on loop-free graphs only.
    pub fn indeg(&self, set: VertexSet, i: usize) -> Result<u32> {
        if !set.contains(i) {
            return Err(Error::VertexNotInSet(i));
        }
        if self.has_loops() {
            return Err(Error::LoopsPresent);
        }
        Ok(self.indeg_unchecked(set, i))
    }

    pub(crate) fn indeg_unchecked(&self, set: VertexSet, i: usize) -> u32 {
        let row = &self.mu[(i - 1) * self.n..i * self.n];
        row.iter()
            .enumerate()
            .filter(|&(j, _)| j + 1 != i && set.contains(j + 1))
            .map(|(_, &m)| m)
            .sum()
    }

    /// Adds one more edge between `a` and `b`; it receives the next free color.
    pub fn add_edge(&self, a: usize, b: usize) -> Result<Self> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        let mut g = self.clone();
        g.bump(a, b, 1);
        Ok(g)
    }

    /// Removes `e`; parallel edges with larger colors shift down by one.
    pub fn delete_edge(&self, e: &EdgeRef) -> Result<Self> {
        if !self.has_edge(e) {
            return Err(Error::NoSuchEdge(*e));
        }
        let mut g = self.clone();
        g.bump(e.u, e.v, -1);
        Ok(g)
    }

    /// Identifies the endpoints of `e` into the larger label and drops `e`.
    /// Remaining parallel copies become loops; labels above the smaller
    /// endpoint shift down by one.
    pub fn contract_edge(&self, e: &EdgeRef) -> Result<Self> {
        if !self.has_edge(e) {
            return Err(Error::NoSuchEdge(*e));
        }
        if e.is_loop() {
            return Err(Error::LoopEdge(*e));
        }
        let (drop, keep) = (e.u, e.v);
        let mut merged = self.clone();
        merged.bump(drop, keep, -1);
        let between = merged.mu(drop, keep);
        for x in 1..=self.n {
            if x != drop && x != keep {
                let add = merged.mu(drop, x);
                merged.bump(keep, x, add as i64);
            }
        }
        let loops = merged.loops(keep) + merged.loops(drop) + between;
        let k = merged.idx(keep, keep);
        merged.mu[k] = loops;

        let relabel = |x: usize| if x > drop { x - 1 } else { x };
        let mut g = ColoredMultigraph::empty(self.n - 1)?;
        for i in 1..=self.n {
            for j in 1..=self.n {
                if i == drop || j == drop {
                    continue;
                }
                let idx = g.idx(relabel(i), relabel(j));
                g.mu[idx] = merged.mu(i, j);
            }
        }
        Ok(g)
    }

    pub fn is_bridge(&self, e: &EdgeRef) -> Result<bool> {
        if !self.has_edge(e) {
            return Err(Error::NoSuchEdge(*e));
        }
        if e.is_loop() || self.mu(e.u, e.v) > 1 {
            return Ok(false);
        }
        let g = self.delete_edge(e)?;
        Ok(!g.reachable_from(e.u).contains(e.v))
    }

    /// Vertices reachable from `start`.
    pub fn reachable_from(&self, start: usize) -> VertexSet {
        let mut seen = VertexSet::empty();
        seen.insert(start);
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for y in 1..=self.n {
                if self.mu(x, y) > 0 && !seen.contains(y) {
                    seen.insert(y);
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut left = VertexSet::full(self.n);
        let mut out = Vec::new();
        while let Some(v) = left.min() {
            let comp = self.reachable_from(v);
            left = VertexSet::from_bits(left.bits() & !comp.bits());
            out.push(comp.iter().collect());
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.reachable_from(1).len() == self.n
    }

    pub fn without_loops(&self) -> Self {
        let mut g = self.clone();
        for i in 1..=self.n {
            let k = g.idx(i, i);
            g.mu[k] = 0;
        }
        g
    }

    /// Renames vertex `v` to `perm[v-1]`; `perm` must be a permutation of `1..=n`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: perm.len(),
            });
        }
        let mut seen = VertexSet::empty();
        for &p in perm {
            self.check_vertex(p)?;
            seen.insert(p);
        }
        if seen.len() != self.n {
            return Err(Error::InvalidRanking(
                "relabeling is not a permutation".into(),
            ));
        }
        let mut g = ColoredMultigraph::empty(self.n)?;
        for i in 1..=self.n {
            for j in 1..=self.n {
                let idx = g.idx(perm[i - 1], perm[j - 1]);
                g.mu[idx] = self.mu(i, j);
            }
        }
        Ok(g)
    }

    /// The subgraph induced on `vertices`, relabeled `1..=k` in increasing order.
    pub fn induced(&self, vertices: VertexSet) -> Result<Self> {
        let keep: Vec<usize> = vertices.iter().filter(|&v| v <= self.n).collect();
        let mut g = ColoredMultigraph::empty(keep.len())?;
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                let idx = g.idx(a + 1, b + 1);
                g.mu[idx] = self.mu(i, j);
            }
        }
        Ok(g)
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.n {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    fn idx(&self, i: usize, j: usize) -> usize {
        (i - 1) * self.n + (j - 1)
    }

    fn bump(&mut self, a: usize, b: usize, by: i64) {
        let ab = self.idx(a, b);
        let updated = (self.mu[ab] as i64 + by) as u32;
        self.mu[ab] = updated;
        let ba = self.idx(b, a);
        self.mu[ba] = updated;
    }
}

impl fmt::Display for ColoredMultigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G(n={}; ", self.n)?;
        let mut first = true;
        for i in 1..=self.n {
            for j in i..=self.n {
                let m = self.mu(i, j);
                if m == 0 {
                    continue;
                }
                if !first {
                    write!(f, " ")?;
                }
                first = false;
                if m == 1 {
                    write!(f, "{i}-{j}")?;
                } else {
                    write!(f, "{i}-{j}x{m}")?;
                }
            }
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> ColoredMultigraph {
        ColoredMultigraph::from_edge_list(3, &[(1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn double() -> ColoredMultigraph {
        ColoredMultigraph::from_edge_list(2, &[(1, 2), (1, 2)]).unwrap()
    }

    fn path3() -> ColoredMultigraph {
        ColoredMultigraph::from_edge_list(3, &[(1, 2), (2, 3)]).unwrap()
    }

    #[test]
    fn edge_list_construction() {
        let g = k3();
        for (i, j) in [(1, 2), (1, 3), (2, 3)] {
            assert_eq!(g.mu(i, j), 1);
            assert_eq!(g.mu(j, i), 1);
        }
        let d = double();
        assert_eq!(d.mu(1, 2), 2);
        let colors: Vec<_> = d.edges().collect();
        assert_eq!(colors, vec![EdgeRef::new(1, 2, 0), EdgeRef::new(2, 1, 1)]);

        let single = ColoredMultigraph::from_edge_list(1, &[]).unwrap();
        assert_eq!(single.n(), 1);
        assert_eq!(single.edge_count(), 0);
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            ColoredMultigraph::from_edge_list(0, &[]),
            Err(Error::InvalidVertexCount { .. })
        ));
        assert_eq!(
            ColoredMultigraph::from_edge_list(2, &[(1, 3)]),
            Err(Error::VertexOutOfRange { vertex: 3, n: 2 })
        );
    }

    #[test]
    fn degrees_count_loops_twice() {
        let g = ColoredMultigraph::from_edge_list(2, &[(1, 1), (1, 2)]).unwrap();
        assert_eq!(g.deg(1), 3);
        assert_eq!(g.deg(2), 1);
        let total: u32 = g.vertices().map(|i| g.deg(i)).sum();
        assert_eq!(total as usize, 2 * g.edge_count());
    }

    #[test]
    fn outdeg_examples() {
        let g = k3();
        assert_eq!(g.outdeg(VertexSet::from_vertices([1, 2]), 1), Ok(1));
        assert_eq!(g.outdeg(VertexSet::from_vertices([1]), 1), Ok(2));
        assert_eq!(double().outdeg(VertexSet::from_vertices([1]), 1), Ok(2));
        assert_eq!(
            g.outdeg(VertexSet::from_vertices([2]), 1),
            Err(Error::VertexNotInSet(1))
        );
    }

    #[test]
    fn indeg_examples() {
        let g = k3();
        assert_eq!(g.indeg(VertexSet::from_vertices([1, 2]), 1), Ok(1));
        assert_eq!(g.indeg(VertexSet::from_vertices([1]), 1), Ok(0));
        assert_eq!(g.indeg(VertexSet::full(3), 2), Ok(2));
        let looped = g.add_edge(2, 2).unwrap();
        assert_eq!(
            looped.indeg(VertexSet::full(3), 2),
            Err(Error::LoopsPresent)
        );
    }

    #[test]
    fn delete_edge_recompacts_colors() {
        let d = double();
        let single = ColoredMultigraph::from_edge_list(2, &[(1, 2)]).unwrap();
        assert_eq!(d.delete_edge(&EdgeRef::new(1, 2, 0)).unwrap(), single);
        assert_eq!(d.delete_edge(&EdgeRef::new(1, 2, 1)).unwrap(), single);
        let p = k3().delete_edge(&EdgeRef::new(1, 2, 0)).unwrap();
        assert_eq!(
            p,
            ColoredMultigraph::from_edge_list(3, &[(1, 3), (3, 2)]).unwrap()
        );
        assert_eq!(
            d.delete_edge(&EdgeRef::new(1, 2, 2)),
            Err(Error::NoSuchEdge(EdgeRef::new(1, 2, 2)))
        );
    }

    #[test]
    fn contract_examples() {
        let c = k3().contract_edge(&EdgeRef::new(1, 2, 0)).unwrap();
        assert_eq!(c, double());
        assert!(!c.has_loops());

        let c = double().contract_edge(&EdgeRef::new(1, 2, 0)).unwrap();
        assert_eq!(c.n(), 1);
        assert_eq!(c.loops(1), 1);

        let c = path3().contract_edge(&EdgeRef::new(1, 2, 0)).unwrap();
        assert_eq!(c, ColoredMultigraph::from_edge_list(2, &[(1, 2)]).unwrap());

        let looped = double().add_edge(1, 1).unwrap();
        assert_eq!(
            looped.contract_edge(&EdgeRef::new(1, 1, 0)),
            Err(Error::LoopEdge(EdgeRef::new(1, 1, 0)))
        );
    }

    #[test]
    fn contraction_keeps_larger_label_maximal() {
        // 1-3, 2-3, 1-4, 3-4: contracting {1,3} merges into 3, which becomes 2.
        let g = ColoredMultigraph::from_edge_list(4, &[(1, 3), (2, 3), (1, 4), (3, 4)]).unwrap();
        let c = g.contract_edge(&EdgeRef::new(1, 3, 0)).unwrap();
        assert_eq!(c.n(), 3);
        assert_eq!(c.mu(2, 3), 2);
        assert_eq!(c.mu(1, 2), 1);
        assert_eq!(c.mu(1, 3), 0);
    }

    #[test]
    fn loops_and_bridges() {
        let l = EdgeRef::new(1, 1, 0);
        assert!(l.is_loop());
        assert_eq!(path3().is_bridge(&EdgeRef::new(2, 3, 0)), Ok(true));
        assert_eq!(double().is_bridge(&EdgeRef::new(1, 2, 0)), Ok(false));
        assert_eq!(k3().is_bridge(&EdgeRef::new(1, 2, 0)), Ok(false));
        assert!(path3().is_bridge(&EdgeRef::new(1, 3, 0)).is_err());
    }

    #[test]
    fn components_and_induced() {
        let g = ColoredMultigraph::from_edge_list(5, &[(1, 3), (2, 5)]).unwrap();
        assert_eq!(g.components(), vec![vec![1, 3], vec![2, 5], vec![4]]);
        assert!(!g.is_connected());
        let h = g.induced(VertexSet::from_vertices([2, 5])).unwrap();
        assert_eq!(h, ColoredMultigraph::from_edge_list(2, &[(1, 2)]).unwrap());
    }

    #[test]
    fn document_round_trip() {
        let g = double().add_edge(2, 2).unwrap();
        let doc = g.to_document();
        assert_eq!(doc.edges, vec![[1, 2], [1, 2], [2, 2]]);
        assert_eq!(ColoredMultigraph::from_document(&doc).unwrap(), g);
    }

    #[test]
    fn vertex_set_iteration() {
        let s = VertexSet::from_vertices([5, 1, 3]);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![1, 3, 5]);
        assert_eq!(s.min(), Some(1));
        assert_eq!(s.len(), 3);
        assert!(!s.contains(0));
        assert!(!s.contains(2));
    }
}
