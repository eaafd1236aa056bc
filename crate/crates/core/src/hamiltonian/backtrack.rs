//! Exhaustive Hamiltonian-cycle search, used as an oracle.

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::graph::{Adjacency, NonCyclicGraph};

use super::{Builder, HamiltonianCertificate};

pub const DEFAULT_SEARCH_BUDGET: usize = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SearchStatus {
    Found,
    /// The search space was exhausted.
    ProvenAbsent,
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleSearch {
    pub status: SearchStatus,
    /// Vertex positions, present iff `status` is `Found`.
    pub cycle: Option<Vec<usize>>,
    pub expansions: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BacktrackOutcome {
    pub status: SearchStatus,
    pub certificate: Option<HamiltonianCertificate>,
    pub expansions: usize,
}

/// Backtracking search on `Gamma(G)`; the certificate is in elements.
pub fn ham_backtrack(graph: &NonCyclicGraph<'_>, budget: usize) -> BacktrackOutcome {
    let search = search_cycle(graph, budget);
    let certificate = search.cycle.map(|c| HamiltonianCertificate {
        cycle: c.into_iter().map(|i| graph.vertices()[i]).collect(),
        builder: Builder::Backtracking,
    });
    BacktrackOutcome {
        status: search.status,
        certificate,
        expansions: search.expansions,
    }
}

/// Depth-first search for a Hamiltonian cycle on any [`Adjacency`].
///
/// The walk starts at a vertex of least degree and tries neighbours with
/// the fewest unvisited neighbours first. A branch is cut when some
/// unvisited vertex has fewer than two usable neighbours or the unvisited
/// vertices are no longer reachable from the walk's head.
pub fn search_cycle<A: Adjacency + ?Sized>(graph: &A, budget: usize) -> CycleSearch {
    let n = graph.vertex_count();
    let absent = |expansions| CycleSearch {
        status: SearchStatus::ProvenAbsent,
        cycle: None,
        expansions,
    };
    if n < 3 || (0..n).any(|i| graph.row(i).count_ones(..) < 2) {
        return absent(0);
    }
    let start = (0..n)
        .min_by_key(|&i| (graph.row(i).count_ones(..), i))
        .unwrap();

    let mut visited = FixedBitSet::with_capacity(n);
    visited.insert(start);
    let mut path = vec![start];
    let mut stack: Vec<(Vec<usize>, usize)> = vec![(candidates(graph, &visited, start), 0)];
    let mut expansions = 0;

    while let Some((cands, next)) = stack.last_mut() {
        if *next == cands.len() {
            stack.pop();
            let v = path.pop().expect("path tracks the stack");
            visited.set(v, false);
            continue;
        }
        let v = cands[*next];
        *next += 1;
        expansions += 1;
        if expansions > budget {
            return CycleSearch {
                status: SearchStatus::BudgetExhausted,
                cycle: None,
                expansions,
            };
        }
        path.push(v);
        visited.insert(v);
        if path.len() == n {
            if graph.row(v).contains(start) {
                return CycleSearch {
                    status: SearchStatus::Found,
                    cycle: Some(path),
                    expansions,
                };
            }
        } else if still_possible(graph, &visited, v, start) {
            stack.push((candidates(graph, &visited, v), 0));
            continue;
        }
        path.pop();
        visited.set(v, false);
    }
    absent(expansions)
}

fn unvisited_neighbours<A: Adjacency + ?Sized>(
    graph: &A,
    visited: &FixedBitSet,
    v: usize,
) -> usize {
    graph
        .row(v)
        .ones()
        .filter(|&u| !visited.contains(u))
        .count()
}

fn candidates<A: Adjacency + ?Sized>(graph: &A, visited: &FixedBitSet, head: usize) -> Vec<usize> {
    let mut c: Vec<(usize, usize)> = graph
        .row(head)
        .ones()
        .filter(|&u| !visited.contains(u))
        .map(|u| (unvisited_neighbours(graph, visited, u), u))
        .collect();
    c.sort_unstable();
    c.into_iter().map(|(_, u)| u).collect()
}

fn still_possible<A: Adjacency + ?Sized>(
    graph: &A,
    visited: &FixedBitSet,
    head: usize,
    start: usize,
) -> bool {
    let n = graph.vertex_count();
    if !graph.row(start).ones().any(|u| !visited.contains(u)) {
        return false;
    }
    let mut reached = FixedBitSet::with_capacity(n);
    let mut queue = vec![head];
    reached.insert(head);
    while let Some(x) = queue.pop() {
        for u in graph.row(x).ones() {
            if !visited.contains(u) && !reached.contains(u) {
                reached.insert(u);
                queue.push(u);
            }
        }
    }
    for u in (0..n).filter(|&u| !visited.contains(u)) {
        if !reached.contains(u) {
            return false;
        }
        let row = graph.row(u);
        let usable = unvisited_neighbours(graph, visited, u)
            + usize::from(row.contains(head))
            + usize::from(row.contains(start));
        if usable < 2 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::parse_spec;
    use crate::graph::build_graph;
    use crate::hamiltonian::verify_certificate;

    struct Plain(Vec<FixedBitSet>);

    impl Plain {
        fn new(n: usize, edges: &[(usize, usize)]) -> Self {
            let mut rows = vec![FixedBitSet::with_capacity(n); n];
            for &(a, b) in edges {
                rows[a].insert(b);
                rows[b].insert(a);
            }
            Plain(rows)
        }
    }

    impl Adjacency for Plain {
        fn vertex_count(&self) -> usize {
            self.0.len()
        }
        fn row(&self, i: usize) -> &FixedBitSet {
            &self.0[i]
        }
    }

    #[test]
    fn triangle() {
        let k3 = Plain::new(3, &[(0, 1), (1, 2), (0, 2)]);
        let s = search_cycle(&k3, 100);
        assert_eq!(s.status, SearchStatus::Found);
        assert_eq!(s.cycle.unwrap().len(), 3);
    }

    #[test]
    fn star_and_petersen_have_none() {
        let star = Plain::new(4, &[(0, 1), (0, 2), (0, 3)]);
        assert_eq!(search_cycle(&star, 100).status, SearchStatus::ProvenAbsent);
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        let petersen = Plain::new(10, &edges);
        assert_eq!(
            search_cycle(&petersen, 1_000_000).status,
            SearchStatus::ProvenAbsent
        );
    }

    #[test]
    fn budget_is_reported() {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        let petersen = Plain::new(10, &edges);
        assert_eq!(
            search_cycle(&petersen, 3).status,
            SearchStatus::BudgetExhausted
        );
    }

    #[test]
    fn symmetric_group_three() {
        let g = parse_spec("Dih3").unwrap().build().unwrap();
        let graph = build_graph(&g);
        assert_eq!(graph.len(), 5);
        let out = ham_backtrack(&graph, 1000);
        assert_eq!(out.status, SearchStatus::Found);
        assert!(verify_certificate(&graph, &out.certificate.unwrap()));
    }
}
