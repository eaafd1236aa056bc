//! Perfect codes and total perfect codes in non-cyclic graphs.
//!
//! A perfect code is a set whose closed neighbourhoods partition the vertex
//! set; a total perfect code is one whose open neighbourhoods do. Both
//! oracles below are exact-cover searches.

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::graph::{Adjacency, NonCyclicGraph};
use crate::group::Element;
use crate::nilpotent::NilpotentClass;

pub const DEFAULT_EXHAUSTIVE_CAP: usize = 24;
pub const DEFAULT_CODE_BUDGET: usize = 5_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CodeKind {
    Perfect,
    TotalPerfect,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CodeStatus {
    Found,
    ProvenAbsent,
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CodeCertificate {
    pub kind: CodeKind,
    /// Sorted code elements; empty unless `status` is `Found`.
    pub vertices: Vec<Element>,
    pub status: CodeStatus,
}

impl CodeCertificate {
    fn absent(kind: CodeKind) -> Self {
        CodeCertificate {
            kind,
            vertices: Vec::new(),
            status: CodeStatus::ProvenAbsent,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    /// Largest vertex count searched over all candidates.
    pub exhaustive_cap: usize,
    /// Search-node limit.
    pub budget: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            exhaustive_cap: DEFAULT_EXHAUSTIVE_CAP,
            budget: DEFAULT_CODE_BUDGET,
        }
    }
}

/// Involutions generating a maximal cyclic subgroup, ascending.
pub fn maximal_involutions(graph: &NonCyclicGraph<'_>) -> Vec<Element> {
    let mut v: Vec<Element> = graph
        .group()
        .maximal_cyclic_subgroups()
        .into_iter()
        .filter(|m| m.order() == 2)
        .map(|m| m.generator)
        .collect();
    v.sort_unstable();
    v
}

/// `Gamma(G)` has a perfect code iff some maximal cyclic subgroup has order
/// 2, and then its involution alone is one. No search.
pub fn find_perfect_code(graph: &NonCyclicGraph<'_>) -> CodeCertificate {
    match maximal_involutions(graph).first() {
        Some(&g) => CodeCertificate {
            kind: CodeKind::Perfect,
            vertices: vec![g],
            status: CodeStatus::Found,
        },
        None => CodeCertificate::absent(CodeKind::Perfect),
    }
}

/// Nilpotent non-cyclic groups never have one; anything else is searched.
pub fn find_total_perfect_code(
    graph: &NonCyclicGraph<'_>,
    cls: &NilpotentClass,
) -> CodeCertificate {
    if cls.tag.is_noncyclic_nilpotent() {
        return CodeCertificate::absent(CodeKind::TotalPerfect);
    }
    total_perfect_code_oracle(graph, OracleLimits::default())
}

/// Exhaustive perfect-code search. Above the cap only involutions are
/// candidates (a code vertex of a perfect code has order 2); if there are
/// still too many the result is `BudgetExhausted`.
pub fn perfect_code_oracle(graph: &NonCyclicGraph<'_>, limits: OracleLimits) -> CodeCertificate {
    let g = graph.group();
    let n = graph.len();
    let candidates: Vec<usize> = if n <= limits.exhaustive_cap {
        (0..n).collect()
    } else {
        let inv: Vec<usize> = (0..n)
            .filter(|&i| g.elem_order(graph.vertices()[i]) == 2)
            .collect();
        if inv.len() > limits.exhaustive_cap {
            return CodeCertificate {
                kind: CodeKind::Perfect,
                vertices: Vec::new(),
                status: CodeStatus::BudgetExhausted,
            };
        }
        inv
    };
    to_certificate(
        graph,
        CodeKind::Perfect,
        exact_cover(graph, true, &candidates, limits.budget),
    )
}

/// Exact-cover search for a total perfect code; the budget bounds it above
/// the cap.
pub fn total_perfect_code_oracle(
    graph: &NonCyclicGraph<'_>,
    limits: OracleLimits,
) -> CodeCertificate {
    let candidates: Vec<usize> = (0..graph.len()).collect();
    to_certificate(
        graph,
        CodeKind::TotalPerfect,
        exact_cover(graph, false, &candidates, limits.budget),
    )
}

fn to_certificate(
    graph: &NonCyclicGraph<'_>,
    kind: CodeKind,
    (status, found): (CodeStatus, Option<Vec<usize>>),
) -> CodeCertificate {
    let mut vertices: Vec<Element> = found
        .unwrap_or_default()
        .into_iter()
        .map(|i| graph.vertices()[i])
        .collect();
    vertices.sort_unstable();
    CodeCertificate {
        kind,
        vertices,
        status,
    }
}

/// Whether `code` (positions) is a perfect code of `graph`.
pub fn is_perfect_code<A: Adjacency + ?Sized>(graph: &A, code: &[usize]) -> bool {
    covers_exactly_once(graph, code, true)
}

/// Whether `code` (positions) is a total perfect code of `graph`.
pub fn is_total_perfect_code<A: Adjacency + ?Sized>(graph: &A, code: &[usize]) -> bool {
    covers_exactly_once(graph, code, false)
}

fn covers_exactly_once<A: Adjacency + ?Sized>(graph: &A, code: &[usize], closed: bool) -> bool {
    let n = graph.vertex_count();
    if n == 0 || code.is_empty() {
        return false;
    }
    let mut hits = vec![0usize; n];
    for &c in code {
        if closed {
            hits[c] += 1;
        }
        for u in graph.row(c).ones() {
            hits[u] += 1;
        }
    }
    hits.iter().all(|&h| h == 1)
}

/// Exact cover of all positions by (closed or open) neighbourhoods of
/// `candidates`. Every solution is enumerated and the least by
/// (size, sorted positions) is kept. An empty graph has no code.
pub fn exact_cover<A: Adjacency + ?Sized>(
    graph: &A,
    closed: bool,
    candidates: &[usize],
    budget: usize,
) -> (CodeStatus, Option<Vec<usize>>) {
    let n = graph.vertex_count();
    if n == 0 {
        return (CodeStatus::ProvenAbsent, None);
    }
    let sets: Vec<(usize, FixedBitSet)> = candidates
        .iter()
        .map(|&c| {
            let mut s = graph.row(c).clone();
            s.set(c, closed);
            (c, s)
        })
        .filter(|(_, s)| s.count_ones(..) > 0)
        .collect();
    let mut search = Cover {
        sets: &sets,
        n,
        budget,
        best: None,
        exhausted: false,
    };
    let mut chosen = Vec::new();
    search.go(&mut FixedBitSet::with_capacity(n), &mut chosen);
    let status = match (&search.best, search.exhausted) {
        (Some(_), _) => CodeStatus::Found,
        (None, true) => CodeStatus::BudgetExhausted,
        (None, false) => CodeStatus::ProvenAbsent,
    };
    (status, search.best)
}

struct Cover<'s> {
    sets: &'s [(usize, FixedBitSet)],
    n: usize,
    budget: usize,
    best: Option<Vec<usize>>,
    exhausted: bool,
}

impl Cover<'_> {
    fn go(&mut self, covered: &mut FixedBitSet, chosen: &mut Vec<usize>) {
        if self.exhausted {
            return;
        }
        if self.budget == 0 {
            self.exhausted = true;
            return;
        }
        self.budget -= 1;
        if covered.count_ones(..) == self.n {
            let mut sol = chosen.clone();
            sol.sort_unstable();
            let better = self
                .best
                .as_ref()
                .is_none_or(|b| (sol.len(), &sol) < (b.len(), b));
            if better {
                self.best = Some(sol);
            }
            return;
        }
        // uncovered position with the fewest usable sets
        let mut pivot: Option<(usize, Vec<usize>)> = None;
        for u in (0..self.n).filter(|&u| !covered.contains(u)) {
            let usable: Vec<usize> = (0..self.sets.len())
                .filter(|&k| self.sets[k].1.contains(u) && self.sets[k].1.is_disjoint(covered))
                .collect();
            if pivot.as_ref().is_none_or(|(_, p)| usable.len() < p.len()) {
                let empty = usable.is_empty();
                pivot = Some((u, usable));
                if empty {
                    return;
                }
            }
        }
        let (_, usable) = pivot.expect("some position is uncovered");
        for k in usable {
            let (c, set) = &self.sets[k];
            covered.union_with(set);
            chosen.push(*c);
            self.go(covered, chosen);
            chosen.pop();
            covered.difference_with(set);
        }
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// A plain graph for exercising the oracles on shapes no group gives.
    pub struct FixtureGraph(pub Vec<FixedBitSet>);

    impl FixtureGraph {
        pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
            let mut rows = vec![FixedBitSet::with_capacity(n); n];
            for &(a, b) in edges {
                rows[a].insert(b);
                rows[b].insert(a);
            }
            FixtureGraph(rows)
        }

        pub fn named(name: &str) -> Self {
            match name {
                "P4" => Self::from_edges(4, &[(0, 1), (1, 2), (2, 3)]),
                "K1,3" => Self::from_edges(4, &[(0, 1), (0, 2), (0, 3)]),
                "K3" => Self::from_edges(3, &[(0, 1), (1, 2), (0, 2)]),
                _ => panic!("unknown fixture {name}"),
            }
        }
    }

    impl Adjacency for FixtureGraph {
        fn vertex_count(&self) -> usize {
            self.0.len()
        }
        fn row(&self, i: usize) -> &FixedBitSet {
            &self.0[i]
        }
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::FixtureGraph;
    use super::*;
    use crate::catalog::{catalog, parse_spec};
    use crate::graph::{build_graph, dominating_vertices};
    use crate::group::FiniteGroup;
    use crate::nilpotent::classify_nilpotent;

    fn group(text: &str) -> FiniteGroup {
        parse_spec(text).unwrap().build().unwrap()
    }

    /// Every subset, by size then lexicographically; first hit wins.
    fn naive<A: Adjacency>(graph: &A, closed: bool) -> Option<Vec<usize>> {
        let n = graph.vertex_count();
        let mut subsets: Vec<Vec<usize>> = (1u32..1 << n)
            .map(|mask| (0..n).filter(|&i| mask & (1 << i) != 0).collect())
            .collect();
        subsets.sort_by(|a: &Vec<usize>, b| (a.len(), a).cmp(&(b.len(), b)));
        subsets
            .into_iter()
            .find(|s| covers_exactly_once(graph, s, closed))
    }

    #[test]
    fn fixtures() {
        let all = |g: &FixtureGraph| (0..g.vertex_count()).collect::<Vec<_>>();
        let p4 = FixtureGraph::named("P4");
        assert_eq!(
            exact_cover(&p4, false, &all(&p4), 1000),
            (CodeStatus::Found, Some(vec![1, 2]))
        );
        assert_eq!(
            exact_cover(&p4, true, &all(&p4), 1000),
            (CodeStatus::Found, Some(vec![0, 3]))
        );
        let star = FixtureGraph::named("K1,3");
        assert_eq!(
            exact_cover(&star, true, &all(&star), 1000),
            (CodeStatus::Found, Some(vec![0]))
        );
        assert_eq!(
            exact_cover(&star, false, &all(&star), 1000),
            (CodeStatus::Found, Some(vec![0, 1]))
        );
        let k3 = FixtureGraph::named("K3");
        assert_eq!(
            exact_cover(&k3, true, &all(&k3), 1000),
            (CodeStatus::Found, Some(vec![0]))
        );
        assert_eq!(
            exact_cover(&k3, false, &all(&k3), 1000).0,
            CodeStatus::ProvenAbsent
        );
        for g in [&p4, &star, &k3] {
            for closed in [true, false] {
                assert_eq!(exact_cover(g, closed, &all(g), 1000).1, naive(g, closed));
            }
        }
    }

    #[test]
    fn budget_status() {
        let p4 = FixtureGraph::named("P4");
        assert_eq!(
            exact_cover(&p4, true, &[0, 1, 2, 3], 1).0,
            CodeStatus::BudgetExhausted
        );
    }

    #[test]
    fn closed_form_examples() {
        let d8 = group("D8");
        let c = find_perfect_code(&build_graph(&d8));
        assert_eq!(c.status, CodeStatus::Found);
        assert_eq!(d8.label(c.vertices[0]), "b");

        let q8 = group("Q8");
        assert_eq!(
            find_perfect_code(&build_graph(&q8)).status,
            CodeStatus::ProvenAbsent
        );

        let klein = group("Z2 x Z2");
        assert_eq!(find_perfect_code(&build_graph(&klein)).vertices.len(), 1);

        let g = group("Z4 x Z2");
        let c = find_perfect_code(&build_graph(&g));
        assert_eq!(c.status, CodeStatus::Found);
        assert_eq!(g.label(c.vertices[0]), "(0,1)");
    }

    #[test]
    fn oracle_examples() {
        let q8 = group("Q8");
        let graph = build_graph(&q8);
        assert_eq!(
            perfect_code_oracle(&graph, OracleLimits::default()).status,
            CodeStatus::ProvenAbsent
        );
        assert_eq!(
            total_perfect_code_oracle(&graph, OracleLimits::default()).status,
            CodeStatus::ProvenAbsent
        );
        let g = group("Z4 x Z2");
        let graph = build_graph(&g);
        let c = perfect_code_oracle(&graph, OracleLimits::default());
        assert_eq!(c.vertices, find_perfect_code(&graph).vertices);
        assert_eq!(
            total_perfect_code_oracle(&graph, OracleLimits::default()).status,
            CodeStatus::ProvenAbsent
        );
        let cls = classify_nilpotent(&g);
        assert_eq!(
            find_total_perfect_code(&graph, &cls).status,
            CodeStatus::ProvenAbsent
        );
    }

    #[test]
    fn symmetric_group_three() {
        let s3 = group("Dih3");
        let graph = build_graph(&s3);
        let cls = classify_nilpotent(&s3);
        let total = find_total_perfect_code(&graph, &cls);
        assert_eq!(
            total,
            total_perfect_code_oracle(&graph, OracleLimits::default())
        );
        let naive_pos = naive(&graph, false);
        assert_eq!(total.status == CodeStatus::Found, naive_pos.is_some());
        let perfect = perfect_code_oracle(&graph, OracleLimits::default());
        assert_eq!(perfect.status, CodeStatus::Found);
        assert_eq!(perfect.vertices.len(), 1);
        assert_eq!(s3.elem_order(perfect.vertices[0]), 2);
    }

    #[test]
    fn oracles_agree_with_naive_search() {
        for spec in catalog(40) {
            let g = spec.build().unwrap();
            let graph = build_graph(&g);
            if graph.is_empty() || graph.len() > 14 {
                continue;
            }
            let all: Vec<usize> = (0..graph.len()).collect();
            for closed in [true, false] {
                let (_, got) = exact_cover(&graph, closed, &all, usize::MAX);
                assert_eq!(got, naive(&graph, closed), "{spec} closed={closed}");
            }
            let dominating = !dominating_vertices(&graph).is_empty();
            assert_eq!(
                find_perfect_code(&graph).status == CodeStatus::Found,
                dominating,
                "{spec}"
            );
        }
    }

    #[test]
    fn involution_pruning_above_cap() {
        let g = group("Z2 x Z2 x Z2 x Z2");
        let graph = build_graph(&g);
        let tight = OracleLimits {
            exhaustive_cap: 10,
            budget: DEFAULT_CODE_BUDGET,
        };
        // 15 involutions exceed a cap of 10
        assert_eq!(
            perfect_code_oracle(&graph, tight).status,
            CodeStatus::BudgetExhausted
        );
        let c = perfect_code_oracle(
            &graph,
            OracleLimits {
                exhaustive_cap: 15,
                ..tight
            },
        );
        assert_eq!(c.status, CodeStatus::Found);
    }
}
