//! The burning bijection between multiparking functions and spanning color
//! forests.
//!
//! [`phi`] burns the graph starting from `m`: the frontier vertex of least
//! rank is processed, each unburned neighbor `w` whose remaining value falls
//! below `mu(w,v)` is attached by the edge of that color, and every other
//! unburned neighbor has its value reduced by `mu(w,v)`. When the frontier
//! runs dry the process restarts at the least unburned vertex `>= m`.
//!
//! [`psi`] inverts it by replaying the same vertex order from the forest
//! alone and reading each value off as the tree-edge color plus the number
//! of edges to vertices burned before the parent.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ColoredMultigraph, EdgeRef, VertexSet, MAX_VERTICES};
use crate::parking::{alpha_unchecked, MultiparkingFunction};

/// A permutation `τ` of the vertices; `rank(w) = τ(w)`. Ties in the burning
/// order go to the vertex of least rank.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexRanking {
    rank: Vec<usize>,
}

impl VertexRanking {
    pub fn identity(n: usize) -> Self {
        VertexRanking {
            rank: (1..=n).collect(),
        }
    }

    pub fn reverse(n: usize) -> Self {
        VertexRanking {
            rank: (1..=n).rev().collect(),
        }
    }

    /// Uniform random ranking, reproducible from `seed`.
    pub fn random(n: usize, seed: u64) -> Self {
        let mut rank: Vec<usize> = (1..=n).collect();
        rank.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        VertexRanking { rank }
    }

    /// Builds a ranking from the images `τ(1), ..., τ(n)`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &r in &images {
            if r == 0 || r > n || seen[r - 1] {
                return Err(Error::InvalidRanking(format!(
                    "{images:?} is not a permutation of 1..={n}"
                )));
            }
            seen[r - 1] = true;
        }
        Ok(VertexRanking { rank: images })
    }

    pub fn n(&self) -> usize {
        self.rank.len()
    }

    pub fn rank(&self, w: usize) -> usize {
        self.rank[w - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.rank
    }

    /// Member of `set` with the least rank.
    pub fn least(&self, set: VertexSet) -> Option<usize> {
        set.iter().min_by_key(|&w| self.rank(w))
    }

    fn check(&self, n: usize) -> Result<()> {
        if self.n() != n {
            return Err(Error::InvalidRanking(format!(
                "ranking has {} entries, graph has {n} vertices",
                self.n()
            )));
        }
        Ok(())
    }
}

/// Parses comma-separated images, e.g. `"3,1,2"`.
impl FromStr for VertexRanking {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let images = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidRanking(format!("cannot parse {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_images(images)
    }
}

/// The order `v_1 ... v_n` in which vertices are burned.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProcessOrder {
    order: Vec<usize>,
    pos: Vec<usize>,
}

impl ProcessOrder {
    fn from_order(order: Vec<usize>) -> Self {
        let mut pos = vec![0; order.len()];
        for (k, &v) in order.iter().enumerate() {
            pos[v - 1] = k + 1;
        }
        ProcessOrder { order, pos }
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// 1-based position of `v` in the order.
    pub fn pos(&self, v: usize) -> usize {
        self.pos[v - 1]
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

impl fmt::Display for ProcessOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, v) in self.order.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// JSON form of a forest: `{"edges": [[u,v,color], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForestDocument {
    pub edges: Vec<(usize, usize, u32)>,
}

/// A spanning color m-forest: acyclic, loop-free, at most one edge per
/// vertex pair, and every component contains a vertex `>= m`. Each
/// component is rooted at its least vertex `>= m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColorForest {
    n: usize,
    m: usize,
    edges: Vec<EdgeRef>,
    // (predecessor, color of the edge to it); None for roots
    parent: Vec<Option<(usize, u32)>>,
    roots: Vec<usize>,
    component: Vec<usize>,
}

impl ColorForest {
    /// Validates the forest structure on `1..=n`. Colors are checked against a
    /// host graph separately (see [`ColorForest::check_in`]).
    pub fn new(n: usize, m: usize, edges: impl IntoIterator<Item = EdgeRef>) -> Result<Self> {
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::InvalidVertexCount {
                n,
                max: MAX_VERTICES,
            });
        }
        if m == 0 || m > n {
            return Err(Error::InvalidThreshold { m, n });
        }
        let mut edges: Vec<EdgeRef> = edges.into_iter().collect();
        edges.sort();
        let mut adj: Vec<Vec<(usize, u32)>> = vec![Vec::new(); n];
        for (k, e) in edges.iter().enumerate() {
            let (u, v) = e.endpoints();
            if u == 0 || v > n {
                return Err(Error::InvalidForest(format!("edge {e} leaves 1..={n}")));
            }
            if e.is_loop() {
                return Err(Error::InvalidForest(format!("edge {e} is a loop")));
            }
            if k > 0 && edges[k - 1].endpoints() == (u, v) {
                return Err(Error::InvalidForest(format!("two edges join {u} and {v}")));
            }
            adj[u - 1].push((v, e.color()));
            adj[v - 1].push((u, e.color()));
        }

        let mut parent = vec![None; n];
        let mut component = vec![0; n];
        let mut roots = Vec::new();
        let mut seen = VertexSet::empty();
        for start in 1..=n {
            if seen.contains(start) {
                continue;
            }
            // collect the component, then root it at its least vertex >= m
            let mut members = VertexSet::from_vertices([start]);
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for &(y, _) in &adj[x - 1] {
                    if !members.contains(y) {
                        members.insert(y);
                        stack.push(y);
                    }
                }
            }
            let root = alpha_unchecked(members, m).ok_or_else(|| {
                Error::InvalidForest(format!(
                    "component {:?} has no vertex >= {m}",
                    members.iter().collect::<Vec<_>>()
                ))
            })?;
            let cid = roots.len();
            roots.push(root);
            seen.insert(root);
            component[root - 1] = cid;
            let mut stack = vec![root];
            while let Some(x) = stack.pop() {
                for &(y, c) in &adj[x - 1] {
                    if parent[x - 1].map(|(p, _)| p) == Some(y) {
                        continue;
                    }
                    if seen.contains(y) {
                        return Err(Error::InvalidForest("edges contain a cycle".into()));
                    }
                    seen.insert(y);
                    parent[y - 1] = Some((x, c));
                    component[y - 1] = cid;
                    stack.push(y);
                }
            }
        }
        roots.sort();
        Ok(ColorForest {
            n,
            m,
            edges,
            parent,
            roots,
            component,
        })
    }

    pub fn from_document(n: usize, m: usize, doc: &ForestDocument) -> Result<Self> {
        Self::new(
            n,
            m,
            doc.edges.iter().map(|&(u, v, c)| EdgeRef::new(u, v, c)),
        )
    }

    pub fn to_document(&self) -> ForestDocument {
        ForestDocument {
            edges: self
                .edges
                .iter()
                .map(|e| (e.u(), e.v(), e.color()))
                .collect(),
        }
    }

    /// Confirms that every edge exists in `g` with its color.
    pub fn check_in(&self, g: &ColoredMultigraph) -> Result<()> {
        if g.n() != self.n {
            return Err(Error::LengthMismatch {
                expected: g.n(),
                found: self.n,
            });
        }
        match self.edges.iter().find(|e| !g.has_edge(e)) {
            Some(e) => Err(Error::InvalidForest(format!(
                "edge {e} is not in the graph"
            ))),
            None => Ok(()),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Edges sorted by endpoints, then color.
    pub fn edges(&self) -> &[EdgeRef] {
        &self.edges
    }

    pub fn contains(&self, e: &EdgeRef) -> bool {
        self.edges.binary_search(e).is_ok()
    }

    /// Component roots in increasing order.
    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    pub fn is_root(&self, v: usize) -> bool {
        self.parent[v - 1].is_none()
    }

    pub fn pre(&self, v: usize) -> Option<usize> {
        self.parent[v - 1].map(|(p, _)| p)
    }

    /// Color of the edge from `v` to its predecessor.
    pub fn pre_color(&self, v: usize) -> Option<u32> {
        self.parent[v - 1].map(|(_, c)| c)
    }

    pub fn pre_edge(&self, v: usize) -> Option<EdgeRef> {
        self.parent[v - 1].map(|(p, c)| EdgeRef::new(v, p, c))
    }

    /// Number of components.
    pub fn sigma(&self) -> usize {
        self.roots.len()
    }

    pub fn same_component(&self, a: usize, b: usize) -> bool {
        self.component[a - 1] == self.component[b - 1]
    }

    pub fn color_sum(&self) -> i64 {
        self.edges.iter().map(|e| e.color() as i64).sum()
    }

    /// Tree edges listed child by child in the given vertex order.
    pub fn edges_in_order(&self, order: &ProcessOrder) -> Vec<EdgeRef> {
        order
            .order()
            .iter()
            .filter_map(|&v| self.pre_edge(v))
            .collect()
    }

    fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges
            .iter()
            .filter_map(move |e| e.other(v).filter(|_| !e.is_loop()))
    }
}

/// Renders an edge list as `{{1,3}_0,{1,2}_0}`.
pub fn render_edges(edges: &[EdgeRef]) -> String {
    let inner: Vec<String> = edges.iter().map(|e| e.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

impl fmt::Display for ColorForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_edges(&self.edges))
    }
}

fn check_threshold(g: &ColoredMultigraph, m: usize) -> Result<()> {
    if m == 0 || m > g.n() {
        return Err(Error::InvalidThreshold { m, n: g.n() });
    }
    Ok(())
}

/// Burns `g` under `f`, returning the spanning color forest and the burn
/// order. Fails with [`Error::InvalidFunction`] when `f` is not a
/// (G,m)-multiparking function.
pub fn phi(
    g: &ColoredMultigraph,
    tau: &VertexRanking,
    f: &MultiparkingFunction,
) -> Result<(ColorForest, ProcessOrder)> {
    let n = g.n();
    let m = f.m();
    if f.n() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: f.n(),
        });
    }
    check_threshold(g, m)?;
    tau.check(n)?;

    let mut val: Vec<i64> = f.values().to_vec();
    let mut burned = VertexSet::empty();
    let mut frontier = VertexSet::empty();
    let mut order = Vec::with_capacity(n);
    let mut edges = Vec::with_capacity(n.saturating_sub(1));

    while order.len() < n {
        if frontier.is_empty() {
            let unburned = VertexSet::from_bits(VertexSet::full(n).bits() & !burned.bits());
            let start = alpha_unchecked(unburned, m).ok_or_else(|| {
                Error::InvalidFunction(format!(
                    "vertices {:?} cannot be burned and none is >= {m}",
                    unburned.iter().collect::<Vec<_>>()
                ))
            })?;
            if f.value(start) != -1 {
                return Err(Error::InvalidFunction(format!(
                    "burning restarts at vertex {start}, whose value is {} rather than -1",
                    f.value(start)
                )));
            }
            frontier.insert(start);
        }
        let v = tau.least(frontier).expect("frontier is nonempty");
        frontier.remove(v);
        burned.insert(v);
        order.push(v);
        for w in 1..=n {
            if w == v || burned.contains(w) || frontier.contains(w) {
                continue;
            }
            let mu = g.mu(w, v) as i64;
            if mu == 0 || val[w - 1] < 0 {
                continue;
            }
            if val[w - 1] < mu {
                edges.push(EdgeRef::new(w, v, val[w - 1] as u32));
                frontier.insert(w);
            } else {
                val[w - 1] -= mu;
            }
        }
    }

    let forest = ColorForest::new(n, m, edges)?;
    Ok((forest, ProcessOrder::from_order(order)))
}

/// The burn order determined by the forest alone: start at `m`; while some
/// unvisited vertex hangs off the visited set, take the least-ranked one;
/// otherwise jump to the least unvisited vertex `>= m`.
pub fn process_order(forest: &ColorForest, tau: &VertexRanking) -> Result<ProcessOrder> {
    let n = forest.n();
    tau.check(n)?;
    let mut visited = VertexSet::empty();
    let mut waiting = VertexSet::empty();
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let next = if waiting.is_empty() {
            let rest = VertexSet::from_bits(VertexSet::full(n).bits() & !visited.bits());
            alpha_unchecked(rest, forest.m()).expect("every component has a vertex >= m")
        } else {
            tau.least(waiting).expect("nonempty")
        };
        waiting.remove(next);
        visited.insert(next);
        order.push(next);
        for w in forest.neighbours(next) {
            if !visited.contains(w) {
                waiting.insert(w);
            }
        }
    }
    Ok(ProcessOrder::from_order(order))
}

/// `|N(v)|` for every vertex: the number of edges from `v` to vertices placed
/// strictly before `pre(v)`. Zero for roots.
pub fn n_counts(g: &ColoredMultigraph, forest: &ColorForest, order: &ProcessOrder) -> Vec<i64> {
    g.vertices()
        .map(|v| match forest.pre(v) {
            None => 0,
            Some(p) => {
                let cutoff = order.pos(p);
                g.vertices()
                    .filter(|&j| order.pos(j) < cutoff)
                    .map(|j| g.mu(v, j) as i64)
                    .sum()
            }
        })
        .collect()
}

/// Inverse of [`phi`]: roots get `-1`, every other vertex gets the color of
/// its tree edge plus `|N(v)|`.
pub fn psi(
    g: &ColoredMultigraph,
    tau: &VertexRanking,
    forest: &ColorForest,
) -> Result<(MultiparkingFunction, ProcessOrder)> {
    forest.check_in(g)?;
    let order = process_order(forest, tau)?;
    let counts = n_counts(g, forest, &order);
    let values = g
        .vertices()
        .map(|v| match forest.pre_color(v) {
            None => -1,
            Some(c) => c as i64 + counts[v - 1],
        })
        .collect();
    Ok((MultiparkingFunction::new(forest.m(), values)?, order))
}

/// Every spanning color m-forest of `g`, found by backtracking over vertex
/// pairs (skip the pair, or take one of its colors).
pub fn enumerate_color_forests(g: &ColoredMultigraph, m: usize) -> Result<Vec<ColorForest>> {
    check_threshold(g, m)?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let pairs: Vec<(usize, usize, u32)> = g
        .vertices()
        .flat_map(|i| (i + 1..=g.n()).map(move |j| (i, j)))
        .filter_map(|(i, j)| {
            let mu = g.mu(i, j);
            (mu > 0).then_some((i, j, mu))
        })
        .collect();

    struct Search<'a> {
        n: usize,
        m: usize,
        pairs: &'a [(usize, usize, u32)],
        chosen: Vec<EdgeRef>,
        out: Vec<ColorForest>,
    }

    fn find(link: &[usize], mut x: usize) -> usize {
        while link[x] != x {
            x = link[x];
        }
        x
    }

    impl Search<'_> {
        fn run(&mut self, k: usize, link: &mut Vec<usize>) -> Result<()> {
            if k == self.pairs.len() {
                // each component must reach a vertex >= m
                let mut ok = vec![false; self.n];
                for v in self.m..=self.n {
                    ok[find(link, v - 1)] = true;
                }
                if (1..=self.n).all(|v| ok[find(link, v - 1)]) {
                    self.out.push(ColorForest::new(
                        self.n,
                        self.m,
                        self.chosen.iter().copied(),
                    )?);
                }
                return Ok(());
            }
            self.run(k + 1, link)?;
            let (i, j, mu) = self.pairs[k];
            let (ri, rj) = (find(link, i - 1), find(link, j - 1));
            if ri == rj {
                return Ok(());
            }
            link[ri] = rj;
            for c in 0..mu {
                self.chosen.push(EdgeRef::new(i, j, c));
                self.run(k + 1, link)?;
                self.chosen.pop();
            }
            link[ri] = ri;
            Ok(())
        }
    }

    let mut search = Search {
        n: g.n(),
        m,
        pairs: &pairs,
        chosen: Vec::new(),
        out: Vec::new(),
    };
    let mut link: Vec<usize> = (0..g.n()).collect();
    search.run(0, &mut link)?;
    Ok(search.out)
}

/// The three statistics on the right of `Σ f = Σ c(e) + Σ |N(v)| - σ(F)`
/// together with the left-hand side computed from [`psi`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorollaryStats {
    pub color_sum: i64,
    pub n_sum: i64,
    pub sigma: i64,
    pub f_sum: i64,
}

impl CorollaryStats {
    pub fn holds(&self) -> bool {
        self.f_sum == self.color_sum + self.n_sum - self.sigma
    }
}

pub fn corollary_stats(
    g: &ColoredMultigraph,
    tau: &VertexRanking,
    forest: &ColorForest,
) -> Result<CorollaryStats> {
    let (f, order) = psi(g, tau, forest)?;
    let n_sum = n_counts(g, forest, &order).iter().sum();
    Ok(CorollaryStats {
        color_sum: forest.color_sum(),
        n_sum,
        sigma: forest.sigma() as i64,
        f_sum: f.sum(),
    })
}
