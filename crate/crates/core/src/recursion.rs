//! Memoized recursions: the root-`n` parking generating function by
//! loop removal, deletion–contraction and bridge splitting, and the Tutte
//! polynomial by ordinary deletion–contraction.

use std::collections::HashMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::genfunc::p_poly;
use crate::graph::{ColoredMultigraph, EdgeRef, VertexSet};
use crate::poly::{BivariatePolynomial, LaurentPolynomial};

/// How the deletion–contraction edge is picked among non-loop, non-bridge
/// edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PivotRule {
    /// Smallest by endpoints, then color.
    Smallest,
    /// Uniformly at random from a seeded stream.
    Random(u64),
}

/// Evaluates `P_G(q)` with root `n`, caching results per exact multiplicity
/// table.
#[derive(Debug)]
pub struct ParkingRecursion {
    memo: HashMap<ColoredMultigraph, LaurentPolynomial>,
    rng: Option<ChaCha8Rng>,
}

impl ParkingRecursion {
    pub fn new(rule: PivotRule) -> Self {
        let rng = match rule {
            PivotRule::Smallest => None,
            PivotRule::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        };
        ParkingRecursion {
            memo: HashMap::new(),
            rng,
        }
    }

    pub fn evaluate(&mut self, g: &ColoredMultigraph) -> Result<LaurentPolynomial> {
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        self.eval(g)
    }

    /// Number of cached subproblems.
    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    fn eval(&mut self, g: &ColoredMultigraph) -> Result<LaurentPolynomial> {
        if g.n() == 1 {
            return Ok(LaurentPolynomial::q_pow(-1));
        }
        if let Some(p) = self.memo.get(g) {
            return Ok(p.clone());
        }
        let result = if let Some(l) = g.vertices().find(|&i| g.loops(i) > 0) {
            self.eval(&g.delete_edge(&EdgeRef::new(l, l, 0))?)?
        } else if let Some(e) = self.pivot(g)? {
            let deleted = self.eval(&g.delete_edge(&e)?)?.shift(1);
            let contracted = self.eval(&g.contract_edge(&e)?)?;
            &deleted + &contracted
        } else {
            // every edge is a bridge: split at the one nearest the root
            let n = g.n();
            let j = (1..n)
                .rev()
                .find(|&j| g.mu(j, n) > 0)
                .ok_or(Error::Disconnected)?;
            let (root_side, far_side) = split_at_bridge(g, &EdgeRef::new(j, n, 0))?;
            let near = self.eval(&root_side)?;
            let far = self.eval(&far_side)?;
            near.checked_mul(&far)?.shift(1)
        };
        self.memo.insert(g.clone(), result.clone());
        Ok(result)
    }

    fn pivot(&mut self, g: &ColoredMultigraph) -> Result<Option<EdgeRef>> {
        let mut candidates = Vec::new();
        for i in g.vertices() {
            for j in i + 1..=g.n() {
                let mu = g.mu(i, j);
                if mu == 0 {
                    continue;
                }
                let e = EdgeRef::new(i, j, 0);
                if mu > 1 || !g.is_bridge(&e)? {
                    if self.rng.is_none() {
                        return Ok(Some(e));
                    }
                    candidates.push((i, j, mu));
                }
            }
        }
        match (&mut self.rng, candidates.is_empty()) {
            (Some(rng), false) => {
                let (i, j, mu) = candidates[rng.gen_range(0..candidates.len())];
                Ok(Some(EdgeRef::new(i, j, rng.gen_range(0..mu))))
            }
            _ => Ok(None),
        }
    }
}

/// Moves `r` to label `n`, shifting the labels above it down by one.
pub fn relabel_root(g: &ColoredMultigraph, r: usize) -> Result<ColoredMultigraph> {
    g.check_vertex(r)?;
    let perm: Vec<usize> = g
        .vertices()
        .map(|v| match v.cmp(&r) {
            std::cmp::Ordering::Less => v,
            std::cmp::Ordering::Equal => g.n(),
            std::cmp::Ordering::Greater => v - 1,
        })
        .collect();
    g.relabel(&perm)
}

/// Removes the bridge `e` and returns `(root side, far side)`. The root side
/// keeps `n` as its largest label; on the far side the endpoint of `e` is
/// relabeled to be the largest.
pub fn split_at_bridge(
    g: &ColoredMultigraph,
    e: &EdgeRef,
) -> Result<(ColoredMultigraph, ColoredMultigraph)> {
    if !g.is_bridge(e)? {
        return Err(Error::Mismatch(format!("{e} is not a bridge")));
    }
    let cut = g.delete_edge(e)?;
    let near: VertexSet = cut.reachable_from(g.n());
    let (a, b) = e.endpoints();
    let far_end = if near.contains(a) { b } else { a };
    let far = cut.reachable_from(far_end);
    let root_side = cut.induced(near)?;
    let far_graph = cut.induced(far)?;
    let far_label = far.iter().position(|v| v == far_end).expect("member") + 1;
    Ok((root_side, relabel_root(&far_graph, far_label)?))
}

/// `P_G(q)` for root `n` by the memoized recursion with the default pivot.
pub fn p_recursive(g: &ColoredMultigraph) -> Result<LaurentPolynomial> {
    ParkingRecursion::new(PivotRule::Smallest).evaluate(g)
}

pub fn p_recursive_with(g: &ColoredMultigraph, rule: PivotRule) -> Result<LaurentPolynomial> {
    ParkingRecursion::new(rule).evaluate(g)
}

/// `P_G(q)` with `r` acting as the root.
pub fn p_rooted(g: &ColoredMultigraph, r: usize) -> Result<LaurentPolynomial> {
    p_recursive(&relabel_root(g, r)?)
}

/// Tutte polynomial evaluator with an exact-key memo.
#[derive(Debug, Default)]
pub struct TutteRecursion {
    memo: HashMap<ColoredMultigraph, BivariatePolynomial>,
}

impl TutteRecursion {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn evaluate(&mut self, g: &ColoredMultigraph) -> Result<BivariatePolynomial> {
        let g = drop_isolated(g)?;
        let first = match g.edges().next() {
            None => return Ok(BivariatePolynomial::one()),
            Some(e) => e,
        };
        if let Some(t) = self.memo.get(&g) {
            return Ok(t.clone());
        }
        // prefer a loop so contraction never sees one
        let e = g
            .vertices()
            .find(|&i| g.loops(i) > 0)
            .map(|i| EdgeRef::new(i, i, 0))
            .unwrap_or(first);
        let result = if e.is_loop() {
            self.evaluate(&g.delete_edge(&e)?)?.shift(0, 1)
        } else if g.is_bridge(&e)? {
            self.evaluate(&g.delete_edge(&e)?)?.shift(1, 0)
        } else {
            let deleted = self.evaluate(&g.delete_edge(&e)?)?;
            let contracted = self.evaluate(&g.contract_edge(&e)?)?;
            &deleted + &contracted
        };
        self.memo.insert(g, result.clone());
        Ok(result)
    }
}

fn drop_isolated(g: &ColoredMultigraph) -> Result<ColoredMultigraph> {
    let keep = VertexSet::from_vertices(g.vertices().filter(|&v| g.deg(v) > 0));
    if keep.len() == g.n() {
        return Ok(g.clone());
    }
    if keep.is_empty() {
        return ColoredMultigraph::empty(1);
    }
    g.induced(keep)
}

pub fn tutte(g: &ColoredMultigraph) -> Result<BivariatePolynomial> {
    TutteRecursion::new().evaluate(g)
}

/// Both sides of `P_G(q) = q^{|E|-|V|} T_G(1, 1/q)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TutteReport {
    pub p: LaurentPolynomial,
    #[serde(skip)]
    pub tutte: BivariatePolynomial,
    pub from_tutte: LaurentPolynomial,
    pub pass: bool,
}

/// Compares the enumerated `P_{G,n}` with the Tutte specialization.
pub fn tutte_check(g: &ColoredMultigraph) -> Result<TutteReport> {
    let p = p_poly(g, g.n())?;
    let t = tutte(g)?;
    let from_tutte = t
        .at_one_and_inverse_q()
        .shift(g.edge_count() as i64 - g.n() as i64);
    Ok(TutteReport {
        pass: p == from_tutte,
        p,
        tutte: t,
        from_tutte,
    })
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

    fn edge() -> ColoredMultigraph {
        ColoredMultigraph::from_edge_list(2, &[(1, 2)]).unwrap()
    }

    fn lp(terms: &[(i64, i128)]) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(terms.iter().copied())
    }

    #[test]
    fn recursion_examples() {
        assert_eq!(p_recursive(&k3()).unwrap(), lp(&[(-1, 1), (0, 2)]));
        assert_eq!(p_recursive(&double()).unwrap(), lp(&[(-1, 1), (0, 1)]));
        assert_eq!(p_recursive(&path3()).unwrap(), lp(&[(-1, 1)]));
    }

    #[test]
    fn recursion_rejects_disconnected() {
        let g = ColoredMultigraph::from_edge_list(3, &[(1, 2)]).unwrap();
        assert_eq!(p_recursive(&g), Err(Error::Disconnected));
    }

    #[test]
    fn rooted_examples() {
        assert_eq!(p_rooted(&edge(), 1).unwrap(), lp(&[(-1, 1)]));
        assert_eq!(p_rooted(&k3(), 1).unwrap(), lp(&[(-1, 1), (0, 2)]));
        assert_eq!(p_rooted(&path3(), 2).unwrap(), lp(&[(-1, 1)]));
        assert!(matches!(
            p_rooted(&k3(), 4),
            Err(Error::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn bridge_split_shapes() {
        // triangle 1-2-3 hanging off 4 by the bridge {3,4}, plus pendant 5-4
        let g = ColoredMultigraph::from_edge_list(5, &[(1, 2), (2, 3), (1, 3), (3, 4), (4, 5)])
            .unwrap();
        let (near, far) = split_at_bridge(&g, &EdgeRef::new(3, 4, 0)).unwrap();
        assert_eq!(
            near,
            ColoredMultigraph::from_edge_list(2, &[(1, 2)]).unwrap()
        );
        assert_eq!(far, k3());
        assert!(split_at_bridge(&g, &EdgeRef::new(1, 2, 0)).is_err());
    }

    #[test]
    fn tutte_examples() {
        assert_eq!(tutte(&edge()).unwrap().to_string(), "x");
        assert_eq!(tutte(&k3()).unwrap().to_string(), "x^2 + x + y");
        assert_eq!(tutte(&double()).unwrap().to_string(), "x + y");
        let single = ColoredMultigraph::from_edge_list(1, &[]).unwrap();
        assert_eq!(tutte(&single).unwrap(), BivariatePolynomial::one());
    }

    #[test]
    fn tutte_check_examples() {
        for g in [k3(), edge(), double()] {
            let r = tutte_check(&g).unwrap();
            assert!(r.pass, "{g}: {} vs {}", r.p, r.from_tutte);
        }
        assert_eq!(
            tutte_check(&k3()).unwrap().from_tutte,
            lp(&[(0, 2), (-1, 1)])
        );
    }
}
