//! (G,m)-multiparking functions and their complements, checked directly
//! against the subset conditions.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bijection::{phi, VertexRanking};
use crate::error::{Error, Result};
use crate::graph::{ColoredMultigraph, VertexSet};

/// Exhaustive subset checks enumerate `2^n` sets.
pub const MAX_EXHAUSTIVE_VERTICES: usize = 16;

/// `min { i in set : i >= m }`, or `None` when no such vertex exists.
pub fn alpha(set: VertexSet, m: usize) -> Result<Option<usize>> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    Ok(alpha_unchecked(set, m))
}

pub(crate) fn alpha_unchecked(set: VertexSet, m: usize) -> Option<usize> {
    if m == 0 {
        return set.min();
    }
    let mask = if m > 64 { 0 } else { u64::MAX << (m - 1) };
    VertexSet::from_bits(set.bits() & mask).min()
}

/// A vertex function `f: V(G) -> N ∪ {-1}` paired with its threshold `m`.
/// Construction only enforces the value range; validity against a graph is
/// a separate question answered by [`is_multiparking`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultiparkingFunction {
    m: usize,
    values: Vec<i64>,
}

impl MultiparkingFunction {
    pub fn new(m: usize, values: Vec<i64>) -> Result<Self> {
        if m == 0 || m > values.len() {
            return Err(Error::InvalidThreshold { m, n: values.len() });
        }
        if let Some((i, &v)) = values.iter().enumerate().find(|(_, &v)| v < -1) {
            return Err(Error::InvalidValue {
                vertex: i + 1,
                value: v,
            });
        }
        Ok(MultiparkingFunction { m, values })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// Value at vertex `v` (1-based).
    pub fn value(&self, v: usize) -> i64 {
        self.values[v - 1]
    }

    /// Vertices with value `-1`.
    pub fn roots(&self) -> Vec<usize> {
        (1..=self.n()).filter(|&v| self.value(v) == -1).collect()
    }

    pub fn sum(&self) -> i64 {
        self.values.iter().sum()
    }
}

impl fmt::Display for MultiparkingFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_values(f, &self.values)
    }
}

/// A candidate complement function `h: V(G) -> N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ComplementFunction {
    m: usize,
    values: Vec<i64>,
}

impl ComplementFunction {
    pub fn new(m: usize, values: Vec<i64>) -> Result<Self> {
        if m == 0 || m > values.len() {
            return Err(Error::InvalidThreshold { m, n: values.len() });
        }
        if let Some((i, &v)) = values.iter().enumerate().find(|(_, &v)| v < 0) {
            return Err(Error::InvalidValue {
                vertex: i + 1,
                value: v,
            });
        }
        Ok(ComplementFunction { m, values })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn value(&self, v: usize) -> i64 {
        self.values[v - 1]
    }

    pub fn sum(&self) -> i64 {
        self.values.iter().sum()
    }
}

impl fmt::Display for ComplementFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_values(f, &self.values)
    }
}

fn write_values(f: &mut fmt::Formatter<'_>, values: &[i64]) -> fmt::Result {
    write!(f, "[")?;
    for (k, v) in values.iter().enumerate() {
        if k > 0 {
            write!(f, ",")?;
        }
        write!(f, "{v}")?;
    }
    write!(f, "]")
}

fn check_shape(g: &ColoredMultigraph, m: usize, len: usize) -> Result<()> {
    if len != g.n() {
        return Err(Error::LengthMismatch {
            expected: g.n(),
            found: len,
        });
    }
    if m == 0 || m > g.n() {
        return Err(Error::InvalidThreshold { m, n: g.n() });
    }
    Ok(())
}

fn check_exhaustive(g: &ColoredMultigraph) -> Result<()> {
    if g.n() > MAX_EXHAUSTIVE_VERTICES {
        return Err(Error::TooLarge {
            n: g.n(),
            max: MAX_EXHAUSTIVE_VERTICES,
        });
    }
    Ok(())
}

fn all_subsets(n: usize) -> impl Iterator<Item = VertexSet> {
    (1u64..(1u64 << n)).map(VertexSet::from_bits)
}

/// Checks every nonempty `I ⊆ V(G)`: either the root clause holds
/// (`α(I,m)` exists and has value `-1`) or some `i ∈ I` has
/// `0 <= f(i) < outdeg_I(i)`.
pub fn is_multiparking(g: &ColoredMultigraph, f: &MultiparkingFunction) -> Result<bool> {
    check_shape(g, f.m, f.n())?;
    check_exhaustive(g)?;
    let m = f.m;
    Ok(all_subsets(g.n()).all(|set| {
        if let Some(a) = alpha_unchecked(set, m) {
            if f.value(a) == -1 {
                return true;
            }
        }
        set.iter().any(|i| {
            let v = f.value(i);
            v >= 0 && v < g.outdeg_unchecked(set, i) as i64
        })
    }))
}

/// Validity through the burning process: succeeds iff every vertex gets
/// burned, with each restart landing on a vertex of value `-1`.
pub fn is_multiparking_burning(g: &ColoredMultigraph, f: &MultiparkingFunction) -> Result<bool> {
    check_shape(g, f.m, f.n())?;
    let tau = VertexRanking::identity(g.n());
    match phi(g, &tau, f) {
        Ok(_) => Ok(true),
        Err(Error::InvalidFunction(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Per-subset data reused across the candidates of an enumeration.
struct SubsetTable {
    n: usize,
    alpha: Vec<Option<usize>>,
    // row per mask, column per vertex: edges leaving the mask (or staying
    // inside it, for complements)
    degs: Vec<u32>,
}

impl SubsetTable {
    fn outdeg(g: &ColoredMultigraph, m: usize) -> Self {
        Self::build(g, m, |set, i| g.outdeg_unchecked(set, i))
    }

    fn indeg(g: &ColoredMultigraph, m: usize) -> Self {
        Self::build(g, m, |set, i| g.indeg_unchecked(set, i))
    }

    fn build(g: &ColoredMultigraph, m: usize, deg: impl Fn(VertexSet, usize) -> u32) -> Self {
        let n = g.n();
        let size = 1usize << n;
        let mut alpha = vec![None; size];
        let mut degs = vec![0u32; size * n];
        for set in all_subsets(n) {
            let mask = set.bits() as usize;
            alpha[mask] = alpha_unchecked(set, m);
            for i in set.iter() {
                degs[mask * n + i - 1] = deg(set, i);
            }
        }
        SubsetTable { n, alpha, degs }
    }

    fn masks(&self) -> std::ops::Range<usize> {
        1..(1usize << self.n)
    }
}

/// Iterates the product of per-vertex value ranges in lexicographic order.
fn for_each_in_box(ranges: &[(i64, i64)], mut visit: impl FnMut(&[i64])) {
    if ranges.iter().any(|&(lo, hi)| lo > hi) {
        return;
    }
    let mut cur: Vec<i64> = ranges.iter().map(|&(lo, _)| lo).collect();
    loop {
        visit(&cur);
        let mut k = cur.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            if cur[k] < ranges[k].1 {
                cur[k] += 1;
                break;
            }
            cur[k] = ranges[k].0;
        }
    }
}

/// Per-vertex search box forced by the singleton subsets: `{-1} ∪ [0, deg-1]`
/// for `i >= m`, `[0, deg-1]` below `m`.
pub fn candidate_box(g: &ColoredMultigraph, m: usize) -> Vec<(i64, i64)> {
    g.vertices()
        .map(|i| {
            let lo = if i >= m { -1 } else { 0 };
            (lo, g.deg(i) as i64 - 1)
        })
        .collect()
}

/// Visits every candidate in [`candidate_box`] in lexicographic order.
pub fn for_each_candidate(g: &ColoredMultigraph, m: usize, visit: impl FnMut(&[i64])) {
    for_each_in_box(&candidate_box(g, m), visit)
}

/// All (G,m)-multiparking functions in lexicographic order of values.
pub fn enumerate_multiparking(
    g: &ColoredMultigraph,
    m: usize,
) -> Result<Vec<MultiparkingFunction>> {
    check_shape(g, m, g.n())?;
    check_exhaustive(g)?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let table = SubsetTable::outdeg(g, m);
    let n = g.n();
    let mut out = Vec::new();
    for_each_candidate(g, m, |vals| {
        let ok = table.masks().all(|mask| {
            if let Some(a) = table.alpha[mask] {
                if vals[a - 1] == -1 {
                    return true;
                }
            }
            let row = &table.degs[mask * n..(mask + 1) * n];
            VertexSet::from_bits(mask as u64).iter().any(|i| {
                let v = vals[i - 1];
                v >= 0 && v < row[i - 1] as i64
            })
        });
        if ok {
            out.push(MultiparkingFunction {
                m,
                values: vals.to_vec(),
            });
        }
    });
    Ok(out)
}

/// `h_f(i) = deg(i) - f(i)`.
pub fn complement_of(
    g: &ColoredMultigraph,
    f: &MultiparkingFunction,
) -> Result<ComplementFunction> {
    check_shape(g, f.m, f.n())?;
    if g.has_loops() {
        return Err(Error::LoopsPresent);
    }
    let values = g.vertices().map(|i| g.deg(i) as i64 - f.value(i)).collect();
    ComplementFunction::new(f.m, values)
}

/// Checks every nonempty `I`: either `α(I,m)` exists with
/// `h(α) = deg(α) + 1`, or some `i ∈ I` has `indeg_I(i) < h(i) <= deg(i)`.
pub fn is_complement(g: &ColoredMultigraph, h: &ComplementFunction) -> Result<bool> {
    check_shape(g, h.m, h.n())?;
    check_exhaustive(g)?;
    if g.has_loops() {
        return Err(Error::LoopsPresent);
    }
    let m = h.m;
    Ok(all_subsets(g.n()).all(|set| {
        if let Some(a) = alpha_unchecked(set, m) {
            if h.value(a) == g.deg(a) as i64 + 1 {
                return true;
            }
        }
        set.iter().any(|i| {
            let v = h.value(i);
            (g.indeg_unchecked(set, i) as i64) < v && v <= g.deg(i) as i64
        })
    }))
}

/// All complement functions, searched over `0..=deg(i)+1` per vertex.
pub fn enumerate_complements(g: &ColoredMultigraph, m: usize) -> Result<Vec<ComplementFunction>> {
    check_shape(g, m, g.n())?;
    check_exhaustive(g)?;
    if g.has_loops() {
        return Err(Error::LoopsPresent);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let table = SubsetTable::indeg(g, m);
    let n = g.n();
    let degs: Vec<i64> = g.vertices().map(|i| g.deg(i) as i64).collect();
    let ranges: Vec<(i64, i64)> = degs.iter().map(|&d| (0, d + 1)).collect();
    let mut out = Vec::new();
    for_each_in_box(&ranges, |vals| {
        let ok = table.masks().all(|mask| {
            if let Some(a) = table.alpha[mask] {
                if vals[a - 1] == degs[a - 1] + 1 {
                    return true;
                }
            }
            let row = &table.degs[mask * n..(mask + 1) * n];
            VertexSet::from_bits(mask as u64).iter().any(|i| {
                let v = vals[i - 1];
                (row[i - 1] as i64) < v && v <= degs[i - 1]
            })
        });
        if ok {
            out.push(ComplementFunction {
                m,
                values: vals.to_vec(),
            });
        }
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> ColoredMultigraph {
        ColoredMultigraph::from_edge_list(3, &[(1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn path3() -> ColoredMultigraph {
        ColoredMultigraph::from_edge_list(3, &[(1, 2), (2, 3)]).unwrap()
    }

    fn single() -> ColoredMultigraph {
        ColoredMultigraph::from_edge_list(1, &[]).unwrap()
    }

    fn mpf(m: usize, v: &[i64]) -> MultiparkingFunction {
        MultiparkingFunction::new(m, v.to_vec()).unwrap()
    }

    fn cf(m: usize, v: &[i64]) -> ComplementFunction {
        ComplementFunction::new(m, v.to_vec()).unwrap()
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha(VertexSet::from_vertices([1, 2, 3]), 2), Ok(Some(2)));
        assert_eq!(alpha(VertexSet::from_vertices([1]), 2), Ok(None));
        assert_eq!(alpha(VertexSet::from_vertices([3, 5]), 1), Ok(Some(3)));
        assert_eq!(alpha(VertexSet::empty(), 1), Err(Error::EmptySet));
    }

    #[test]
    fn value_range_is_enforced() {
        assert_eq!(
            MultiparkingFunction::new(1, vec![0, -2]),
            Err(Error::InvalidValue {
                vertex: 2,
                value: -2
            })
        );
        assert!(MultiparkingFunction::new(3, vec![0, 0]).is_err());
        assert!(ComplementFunction::new(1, vec![-1]).is_err());
    }

    #[test]
    fn subset_check_examples() {
        assert_eq!(is_multiparking(&k3(), &mpf(3, &[0, 1, -1])), Ok(true));
        assert_eq!(is_multiparking(&k3(), &mpf(3, &[1, 1, -1])), Ok(false));
        assert_eq!(is_multiparking(&single(), &mpf(1, &[-1])), Ok(true));
        assert_eq!(
            is_multiparking(&k3(), &mpf(2, &[0, -1])),
            Err(Error::LengthMismatch {
                expected: 3,
                found: 2
            })
        );
    }

    #[test]
    fn burning_check_examples() {
        assert_eq!(
            is_multiparking_burning(&k3(), &mpf(3, &[0, 1, -1])),
            Ok(true)
        );
        assert_eq!(
            is_multiparking_burning(&k3(), &mpf(3, &[0, 1, 0])),
            Ok(false)
        );
        assert_eq!(
            is_multiparking_burning(&path3(), &mpf(3, &[0, 0, -1])),
            Ok(true)
        );
        assert_eq!(is_multiparking(&path3(), &mpf(3, &[0, 0, -1])), Ok(true));
    }

    #[test]
    fn enumeration_examples() {
        let all = enumerate_multiparking(&k3(), 3).unwrap();
        let vals: Vec<&[i64]> = all.iter().map(|f| f.values()).collect();
        assert_eq!(vals, vec![&[0, 0, -1][..], &[0, 1, -1], &[1, 0, -1]]);

        let all = enumerate_multiparking(&single(), 1).unwrap();
        assert_eq!(all, vec![mpf(1, &[-1])]);

        let pairs: Vec<(usize, usize)> = (1..=4)
            .flat_map(|i| (i + 1..=4).map(move |j| (i, j)))
            .collect();
        let k4 = ColoredMultigraph::from_edge_list(4, &pairs).unwrap();
        assert_eq!(enumerate_multiparking(&k4, 4).unwrap().len(), 16);
    }

    #[test]
    fn enumeration_rejects_disconnected() {
        let g = ColoredMultigraph::from_edge_list(3, &[(1, 2)]).unwrap();
        assert_eq!(enumerate_multiparking(&g, 3), Err(Error::Disconnected));
    }

    #[test]
    fn complement_examples() {
        assert_eq!(
            complement_of(&k3(), &mpf(3, &[0, 1, -1])),
            Ok(cf(3, &[2, 1, 3]))
        );
        assert_eq!(
            complement_of(&k3(), &mpf(3, &[0, 0, -1])),
            Ok(cf(3, &[2, 2, 3]))
        );
        assert_eq!(
            complement_of(&path3(), &mpf(3, &[0, 0, -1])),
            Ok(cf(3, &[1, 2, 2]))
        );

        assert_eq!(is_complement(&k3(), &cf(3, &[2, 1, 3])), Ok(true));
        assert_eq!(is_complement(&k3(), &cf(3, &[1, 1, 3])), Ok(false));
        assert_eq!(is_complement(&single(), &cf(1, &[1])), Ok(true));

        let looped = k3().add_edge(1, 1).unwrap();
        assert_eq!(
            is_complement(&looped, &cf(3, &[2, 1, 3])),
            Err(Error::LoopsPresent)
        );
        assert_eq!(
            complement_of(&looped, &mpf(3, &[0, 1, -1])),
            Err(Error::LoopsPresent)
        );
    }

    #[test]
    fn complement_enumeration_matches_pointwise_map() {
        let g = k3();
        for m in 1..=3 {
            let mut mapped: Vec<ComplementFunction> = enumerate_multiparking(&g, m)
                .unwrap()
                .iter()
                .map(|f| complement_of(&g, f).unwrap())
                .collect();
            mapped.sort();
            let mut direct = enumerate_complements(&g, m).unwrap();
            direct.sort();
            assert_eq!(mapped, direct);
        }
    }
}
