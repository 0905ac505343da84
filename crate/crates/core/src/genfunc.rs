//! Generating functions over multiparking functions, complements and
//! forests, and the redundant-edge statistic that links them.

use std::fmt;

use serde::Serialize;

use crate::bijection::{enumerate_color_forests, process_order, psi, ColorForest, VertexRanking};
use crate::error::{Error, Result};
use crate::graph::{ColoredMultigraph, EdgeRef};
use crate::parking::{enumerate_complements, enumerate_multiparking};
use crate::poly::LaurentPolynomial;

/// `P_{G,m}(q) = Σ_f q^{Σ f(i)}`.
pub fn p_poly(g: &ColoredMultigraph, m: usize) -> Result<LaurentPolynomial> {
    let mut p = LaurentPolynomial::zero();
    for f in enumerate_multiparking(g, m)? {
        p.add_term(f.sum(), 1);
    }
    Ok(p)
}

/// `q^{|E|} P_{G,m}(1/q)`, the reflected parking polynomial.
pub fn p_reflected(g: &ColoredMultigraph, m: usize) -> Result<LaurentPolynomial> {
    Ok(p_poly(g, m)?.invert().shift(g.edge_count() as i64))
}

/// `Σ_h q^{Σ h(i) - |E|}` over complement functions, enumerated directly.
pub fn pbar_direct(g: &ColoredMultigraph, m: usize) -> Result<LaurentPolynomial> {
    let edges = g.edge_count() as i64;
    let mut p = LaurentPolynomial::zero();
    for h in enumerate_complements(g, m)? {
        p.add_term(h.sum() - edges, 1);
    }
    Ok(p)
}

/// The complement generating function. Computed by reflecting `P` and by
/// summing over complement functions; the two must agree.
pub fn pbar_poly(g: &ColoredMultigraph, m: usize) -> Result<LaurentPolynomial> {
    if g.has_loops() {
        return Err(Error::LoopsPresent);
    }
    let reflected = p_reflected(g, m)?;
    let direct = pbar_direct(g, m)?;
    if reflected != direct {
        return Err(Error::Mismatch(format!(
            "reflected P gives {reflected}, complement enumeration gives {direct}"
        )));
    }
    Ok(direct)
}

/// Why a non-forest edge can be deleted without changing the function that
/// the forest maps to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RedundancyClass {
    /// Both endpoints are roots.
    BothRoots,
    /// One endpoint is a root burned after the other, non-root, endpoint.
    RootBurnedLater,
    /// Both endpoints are non-roots and the earlier one is burned strictly
    /// between the later one and its predecessor.
    BetweenParentAndChild,
    Loop,
    /// Parallel to a tree edge, with a larger color than the tree edge.
    HigherParallel,
    NotRedundant,
}

impl RedundancyClass {
    /// Position in the five-way classification, `None` if not redundant.
    pub fn type_number(&self) -> Option<u8> {
        match self {
            RedundancyClass::BothRoots => Some(1),
            RedundancyClass::RootBurnedLater => Some(2),
            RedundancyClass::BetweenParentAndChild => Some(3),
            RedundancyClass::Loop => Some(4),
            RedundancyClass::HigherParallel => Some(5),
            RedundancyClass::NotRedundant => None,
        }
    }

    pub fn is_redundant(&self) -> bool {
        self.type_number().is_some()
    }
}

impl fmt::Display for RedundancyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.type_number() {
            Some(t) => write!(f, "Type{t}"),
            None => write!(f, "NotRedundant"),
        }
    }
}

fn check_non_forest_edge(g: &ColoredMultigraph, forest: &ColorForest, e: &EdgeRef) -> Result<()> {
    forest.check_in(g)?;
    if !g.has_edge(e) {
        return Err(Error::NoSuchEdge(*e));
    }
    if forest.contains(e) {
        return Err(Error::EdgeInForest(*e));
    }
    Ok(())
}

/// Classifies a non-forest edge from the forest and burn order alone.
pub fn classify_redundant(
    g: &ColoredMultigraph,
    forest: &ColorForest,
    tau: &VertexRanking,
    e: &EdgeRef,
) -> Result<RedundancyClass> {
    check_non_forest_edge(g, forest, e)?;
    let order = process_order(forest, tau)?;
    Ok(classify_with_order(forest, &order, e))
}

fn classify_with_order(
    forest: &ColorForest,
    order: &crate::bijection::ProcessOrder,
    e: &EdgeRef,
) -> RedundancyClass {
    use RedundancyClass::*;

    if e.is_loop() {
        return Loop;
    }
    let (a, b) = e.endpoints();
    for (x, y) in [(a, b), (b, a)] {
        if forest.pre(x) == Some(y) {
            let tree_color = forest.pre_color(x).expect("non-root");
            return if e.color() > tree_color {
                HigherParallel
            } else {
                NotRedundant
            };
        }
    }
    let (later, earlier) = if order.pos(a) > order.pos(b) {
        (a, b)
    } else {
        (b, a)
    };
    match (forest.is_root(later), forest.is_root(earlier)) {
        (true, true) => BothRoots,
        (true, false) => RootBurnedLater,
        (false, true) => NotRedundant,
        (false, false) => {
            let pre = forest.pre(later).expect("non-root");
            if order.pos(pre) < order.pos(earlier) {
                BetweenParentAndChild
            } else {
                NotRedundant
            }
        }
    }
}

/// Decides redundancy from the definition: delete `e`, carry the forest over
/// to `G - e` (parallel tree edges above `e` lose one color), and compare the
/// two functions produced by the inverse map.
pub fn is_redundant_by_deletion(
    g: &ColoredMultigraph,
    forest: &ColorForest,
    tau: &VertexRanking,
    e: &EdgeRef,
) -> Result<bool> {
    check_non_forest_edge(g, forest, e)?;
    let (before, _) = psi(g, tau, forest)?;
    let reduced = g.delete_edge(e)?;
    let carried = ColorForest::new(
        forest.n(),
        forest.m(),
        forest.edges().iter().map(|t| {
            if t.endpoints() == e.endpoints() && t.color() > e.color() {
                EdgeRef::new(t.u(), t.v(), t.color() - 1)
            } else {
                *t
            }
        }),
    )?;
    let (after, _) = psi(&reduced, tau, &carried)?;
    Ok(before == after)
}

/// Classification of every non-forest edge and the per-vertex count
/// `g_F(i)` of redundant edges whose other endpoint is burned no later than `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RedundancyReport {
    pub classes: Vec<(EdgeRef, RedundancyClass)>,
    pub g_counts: Vec<i64>,
}

impl RedundancyReport {
    pub fn total(&self) -> i64 {
        self.g_counts.iter().sum()
    }
}

pub fn redundancy_report(
    g: &ColoredMultigraph,
    forest: &ColorForest,
    tau: &VertexRanking,
) -> Result<RedundancyReport> {
    forest.check_in(g)?;
    let order = process_order(forest, tau)?;
    let mut classes = Vec::new();
    let mut g_counts = vec![0i64; g.n()];
    for e in g.edges().filter(|e| !forest.contains(e)) {
        let class = classify_with_order(forest, &order, &e);
        if class.is_redundant() {
            let (a, b) = e.endpoints();
            let later = if order.pos(a) >= order.pos(b) { a } else { b };
            g_counts[later - 1] += 1;
        }
        classes.push((e, class));
    }
    Ok(RedundancyReport { classes, g_counts })
}

/// `I_{G,m}(q) = Σ_F q^{Σ g_F(i)}` over spanning color m-forests.
pub fn i_poly(g: &ColoredMultigraph, m: usize, tau: &VertexRanking) -> Result<LaurentPolynomial> {
    if g.has_loops() {
        return Err(Error::LoopsPresent);
    }
    let mut p = LaurentPolynomial::zero();
    for forest in enumerate_color_forests(g, m)? {
        p.add_term(redundancy_report(g, &forest, tau)?.total(), 1);
    }
    Ok(p)
}

/// The three sides of `q^{|V|} I = P̄ = q^{|E|} P(1/q)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReciprocityReport {
    pub shifted_i: LaurentPolynomial,
    pub pbar: LaurentPolynomial,
    pub reflected_p: LaurentPolynomial,
    pub pass: bool,
}

pub fn reciprocity_check(
    g: &ColoredMultigraph,
    m: usize,
    tau: &VertexRanking,
) -> Result<ReciprocityReport> {
    if g.has_loops() {
        return Err(Error::LoopsPresent);
    }
    let shifted_i = i_poly(g, m, tau)?.shift(g.n() as i64);
    let pbar = pbar_direct(g, m)?;
    let reflected_p = p_reflected(g, m)?;
    let pass = shifted_i == pbar && pbar == reflected_p;
    Ok(ReciprocityReport {
        shifted_i,
        pbar,
        reflected_p,
        pass,
    })
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

    fn double() -> ColoredMultigraph {
        ColoredMultigraph::from_edge_list(2, &[(1, 2), (1, 2)]).unwrap()
    }

    fn single() -> ColoredMultigraph {
        ColoredMultigraph::from_edge_list(1, &[]).unwrap()
    }

    fn forest(n: usize, m: usize, e: &[(usize, usize, u32)]) -> ColorForest {
        ColorForest::new(n, m, e.iter().map(|&(a, b, c)| EdgeRef::new(a, b, c))).unwrap()
    }

    fn lp(terms: &[(i64, i128)]) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(terms.iter().copied())
    }

    #[test]
    fn p_examples() {
        assert_eq!(p_poly(&k3(), 3).unwrap(), lp(&[(-1, 1), (0, 2)]));
        assert_eq!(p_poly(&single(), 1).unwrap(), lp(&[(-1, 1)]));
        assert_eq!(p_poly(&path3(), 3).unwrap(), lp(&[(-1, 1)]));
    }

    #[test]
    fn pbar_examples() {
        assert_eq!(pbar_poly(&k3(), 3).unwrap(), lp(&[(4, 1), (3, 2)]));
        assert_eq!(pbar_poly(&single(), 1).unwrap(), lp(&[(1, 1)]));
        assert_eq!(pbar_poly(&path3(), 3).unwrap(), lp(&[(3, 1)]));
        assert_eq!(
            pbar_poly(&k3().add_edge(1, 1).unwrap(), 3),
            Err(Error::LoopsPresent)
        );
    }

    #[test]
    fn classification_examples() {
        let tau = VertexRanking::identity(3);
        let f = forest(3, 3, &[(1, 3, 0), (2, 3, 0)]);
        let e = EdgeRef::new(1, 2, 0);
        assert_eq!(
            classify_redundant(&k3(), &f, &tau, &e),
            Ok(RedundancyClass::BetweenParentAndChild)
        );
        assert_eq!(is_redundant_by_deletion(&k3(), &f, &tau, &e), Ok(true));

        let f = forest(3, 3, &[(1, 3, 0), (1, 2, 0)]);
        let e = EdgeRef::new(2, 3, 0);
        assert_eq!(
            classify_redundant(&k3(), &f, &tau, &e),
            Ok(RedundancyClass::NotRedundant)
        );
        assert_eq!(is_redundant_by_deletion(&k3(), &f, &tau, &e), Ok(false));

        let looped = k3().add_edge(2, 2).unwrap();
        let l = EdgeRef::new(2, 2, 0);
        assert_eq!(
            classify_redundant(&looped, &f, &tau, &l),
            Ok(RedundancyClass::Loop)
        );
        assert_eq!(is_redundant_by_deletion(&looped, &f, &tau, &l), Ok(true));

        assert_eq!(
            classify_redundant(&k3(), &f, &tau, &EdgeRef::new(1, 3, 0)),
            Err(Error::EdgeInForest(EdgeRef::new(1, 3, 0)))
        );
    }

    #[test]
    fn parallel_edges() {
        let tau = VertexRanking::identity(2);
        let low = forest(2, 2, &[(1, 2, 0)]);
        let high = forest(2, 2, &[(1, 2, 1)]);
        let e1 = EdgeRef::new(1, 2, 1);
        let e0 = EdgeRef::new(1, 2, 0);
        assert_eq!(
            classify_redundant(&double(), &low, &tau, &e1),
            Ok(RedundancyClass::HigherParallel)
        );
        assert_eq!(
            classify_redundant(&double(), &high, &tau, &e0),
            Ok(RedundancyClass::NotRedundant)
        );
        assert_eq!(
            is_redundant_by_deletion(&double(), &low, &tau, &e1),
            Ok(true)
        );
        assert_eq!(
            is_redundant_by_deletion(&double(), &high, &tau, &e0),
            Ok(false)
        );
    }

    #[test]
    fn roots_on_both_ends() {
        // m = 1 on a path: the empty forest makes every vertex a root
        let tau = VertexRanking::identity(3);
        let f = forest(3, 1, &[]);
        let e = EdgeRef::new(1, 2, 0);
        assert_eq!(
            classify_redundant(&path3(), &f, &tau, &e),
            Ok(RedundancyClass::BothRoots)
        );
        assert_eq!(is_redundant_by_deletion(&path3(), &f, &tau, &e), Ok(true));
    }

    #[test]
    fn i_examples() {
        assert_eq!(
            i_poly(&k3(), 3, &VertexRanking::identity(3)).unwrap(),
            lp(&[(1, 1), (0, 2)])
        );
        assert_eq!(
            i_poly(&single(), 1, &VertexRanking::identity(1)).unwrap(),
            lp(&[(0, 1)])
        );
        assert_eq!(
            i_poly(&double(), 2, &VertexRanking::identity(2)).unwrap(),
            lp(&[(1, 1), (0, 1)])
        );
    }

    #[test]
    fn reciprocity_examples() {
        let r = reciprocity_check(&k3(), 3, &VertexRanking::identity(3)).unwrap();
        assert!(r.pass);
        assert_eq!(r.pbar, lp(&[(4, 1), (3, 2)]));
        let r = reciprocity_check(&single(), 1, &VertexRanking::identity(1)).unwrap();
        assert!(r.pass);
        assert_eq!(r.shifted_i, lp(&[(1, 1)]));
        let r = reciprocity_check(&path3(), 3, &VertexRanking::identity(3)).unwrap();
        assert!(r.pass);
        assert_eq!(r.reflected_p, lp(&[(3, 1)]));
    }
}
