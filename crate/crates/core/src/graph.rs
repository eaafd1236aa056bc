//! The non-cyclic graph: vertices `G \ Cyc(G)`, with `x ~ y` iff `<x, y>` is
//! not cyclic.

use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::arith;
use crate::error::{Error, Result};
use crate::group::{Element, FiniteGroup};

/// `<x, y>` is cyclic iff some cyclic subgroup contains both, iff some
/// maximal cyclic subgroup does. Row `x` holds every such `y`.
pub fn cyclic_pair_matrix(g: &FiniteGroup) -> Vec<FixedBitSet> {
    let n = g.order();
    let mut rows = vec![FixedBitSet::with_capacity(n); n];
    for m in g.maximal_cyclic_subgroups() {
        let mut bits = FixedBitSet::with_capacity(n);
        for &x in &m.elements {
            bits.insert(x);
        }
        for &x in &m.elements {
            rows[x].union_with(&bits);
        }
    }
    rows
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GraphStatus {
    Ok,
    /// The group is cyclic, so every element is in the cyclizer.
    EmptyCyclicGroup,
}

#[derive(Debug, Clone)]
pub struct NonCyclicGraph<'g> {
    group: &'g FiniteGroup,
    vertices: Vec<Element>,
    position: Vec<Option<usize>>,
    adjacency: Vec<FixedBitSet>,
    cyc: Vec<Element>,
    status: GraphStatus,
}

pub fn build_graph(g: &FiniteGroup) -> NonCyclicGraph<'_> {
    let n = g.order();
    let pairs = cyclic_pair_matrix(g);
    let cyc: Vec<Element> = (0..n).filter(|&x| pairs[x].count_ones(..) == n).collect();
    let vertices: Vec<Element> = (0..n).filter(|&x| pairs[x].count_ones(..) < n).collect();
    let mut position = vec![None; n];
    for (i, &v) in vertices.iter().enumerate() {
        position[v] = Some(i);
    }
    let k = vertices.len();
    let adjacency = vertices
        .iter()
        .map(|&x| {
            let mut row = FixedBitSet::with_capacity(k);
            for (j, &y) in vertices.iter().enumerate() {
                if !pairs[x].contains(y) {
                    row.insert(j);
                }
            }
            row
        })
        .collect();
    let status = if k == 0 {
        GraphStatus::EmptyCyclicGroup
    } else {
        GraphStatus::Ok
    };
    NonCyclicGraph {
        group: g,
        vertices,
        position,
        adjacency,
        cyc,
        status,
    }
}

impl<'g> NonCyclicGraph<'g> {
    pub fn group(&self) -> &'g FiniteGroup {
        self.group
    }

    /// Vertex elements in ascending index order.
    pub fn vertices(&self) -> &[Element] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn status(&self) -> GraphStatus {
        self.status
    }

    /// `Cyc(G)`, sorted.
    pub fn cyc_set(&self) -> &[Element] {
        &self.cyc
    }

    pub fn position(&self, x: Element) -> Option<usize> {
        self.position.get(x).copied().flatten()
    }

    pub fn contains(&self, x: Element) -> bool {
        self.position(x).is_some()
    }

    /// Adjacency between vertex positions.
    pub fn adjacent_positions(&self, i: usize, j: usize) -> bool {
        self.adjacency[i].contains(j)
    }

    /// Adjacency between elements; false if either is not a vertex.
    pub fn adjacent(&self, x: Element, y: Element) -> bool {
        match (self.position(x), self.position(y)) {
            (Some(i), Some(j)) => self.adjacency[i].contains(j),
            _ => false,
        }
    }

    pub fn degree(&self, x: Element) -> usize {
        self.position(x)
            .map_or(0, |i| self.adjacency[i].count_ones(..))
    }

    pub fn neighbours(&self, x: Element) -> impl Iterator<Item = Element> + '_ {
        let row = self.position(x).map(|i| &self.adjacency[i]);
        row.into_iter()
            .flat_map(move |r| r.ones().map(move |j| self.vertices[j]))
    }

    /// Edges as position pairs `(i, j)`, `i < j`, lexicographic.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in self.adjacency[i].ones().filter(|&j| j > i) {
                out.push((i, j));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency
            .iter()
            .map(|r| r.count_ones(..))
            .sum::<usize>()
            / 2
    }
}

/// A simple graph on vertex positions `0..vertex_count()`. The search
/// oracles only need this much, so they also run on hand-made graphs.
pub trait Adjacency {
    fn vertex_count(&self) -> usize;
    /// Neighbour set of position `i`.
    fn row(&self, i: usize) -> &FixedBitSet;
}

impl Adjacency for NonCyclicGraph<'_> {
    fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    fn row(&self, i: usize) -> &FixedBitSet {
        &self.adjacency[i]
    }
}

/// The subgraph induced on `Omega_m`, split into its classes `[x]`
/// (elements generating the same cyclic subgroup).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultipartiteView {
    pub m: usize,
    /// Disjoint sorted element sets, ordered by least element.
    pub parts: Vec<Vec<Element>>,
}

impl MultipartiteView {
    pub fn len(&self) -> usize {
        self.parts.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn part_of(&self, x: Element) -> Option<usize> {
        self.parts.iter().position(|p| p.binary_search(&x).is_ok())
    }
}

/// Groups `set` by the cyclic subgroup each element generates.
pub fn generator_classes(g: &FiniteGroup, set: &[Element]) -> Vec<Vec<Element>> {
    let mut keyed: Vec<(Vec<Element>, Element)> = set
        .iter()
        .map(|&x| (g.cyclic_closure(x).elements, x))
        .collect();
    keyed.sort();
    let mut parts: Vec<Vec<Element>> = Vec::new();
    let mut last: Option<Vec<Element>> = None;
    for (key, x) in keyed {
        if last.as_ref() != Some(&key) {
            parts.push(Vec::new());
            last = Some(key);
        }
        parts.last_mut().unwrap().push(x);
    }
    for p in &mut parts {
        p.sort_unstable();
    }
    parts.sort();
    parts
}

pub fn induced_on_omega(graph: &NonCyclicGraph<'_>, m: usize) -> Result<MultipartiteView> {
    let g = graph.group();
    let parts = generator_classes(g, &g.omega(m));
    if parts.len() < 2 {
        return Err(Error::Hypothesis {
            m,
            count: parts.len(),
        });
    }
    Ok(MultipartiteView { m, parts })
}

/// Checks that every part has `phi(m)` vertices of `graph`, that parts are
/// independent and that distinct parts are completely joined.
pub fn is_complete_multipartite(graph: &NonCyclicGraph<'_>, view: &MultipartiteView) -> bool {
    let size = arith::phi(view.m);
    if view
        .parts
        .iter()
        .any(|p| p.len() != size || p.iter().any(|&x| !graph.contains(x)))
    {
        return false;
    }
    for (i, p) in view.parts.iter().enumerate() {
        for (j, q) in view.parts.iter().enumerate() {
            for &x in p {
                for &y in q {
                    if x != y && graph.adjacent(x, y) != (i != j) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Vertices adjacent to every other vertex.
pub fn dominating_vertices(graph: &NonCyclicGraph<'_>) -> Vec<Element> {
    let k = graph.len();
    graph
        .vertices()
        .iter()
        .copied()
        .filter(|&x| graph.degree(x) + 1 == k)
        .collect()
}

/// Whether `|G| + |Cyc(G)| > 2 |Cyc_G(x)|` for every central `x` outside
/// `Cyc(G)`; a known sufficient condition for Hamiltonicity.
pub fn central_cyclizer_condition(graph: &NonCyclicGraph<'_>) -> bool {
    let g = graph.group();
    let lhs = g.order() + graph.cyc_set().len();
    g.center()
        .into_iter()
        .filter(|&x| graph.contains(x))
        // |Cyc_G(x)| is everything x is not adjacent to, x included
        .all(|x| lhs > 2 * (g.order() - graph.degree(x)))
}

#[derive(Debug, Clone, Default)]
pub struct DotOptions<'a> {
    /// Fill vertices by element order.
    pub color_by_order: bool,
    /// A closed walk whose consecutive edges are drawn highlighted.
    pub highlight_cycle: Option<&'a [Element]>,
}

const PALETTE: [&str; 8] = [
    "#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462", "#b3de69", "#fccde5",
];

/// Deterministic DOT text: vertices in index order, edges lexicographic,
/// two-space indent, LF newlines.
pub fn export_dot(graph: &NonCyclicGraph<'_>, options: &DotOptions<'_>) -> String {
    let g = graph.group();
    let orders: Vec<usize> = {
        let mut o: Vec<usize> = graph.vertices().iter().map(|&x| g.elem_order(x)).collect();
        o.sort_unstable();
        o.dedup();
        o
    };
    let mut highlighted = std::collections::BTreeSet::new();
    if let Some(cycle) = options.highlight_cycle {
        for i in 0..cycle.len() {
            let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
            if let (Some(p), Some(q)) = (graph.position(a), graph.position(b)) {
                highlighted.insert((p.min(q), p.max(q)));
            }
        }
    }

    let mut out = String::from("graph G {\n");
    for &x in graph.vertices() {
        let label = g.label(x).replace('"', "\\\"");
        if options.color_by_order {
            let rank = orders.binary_search(&g.elem_order(x)).unwrap();
            let _ = writeln!(
                out,
                "  n{x} [label=\"{label}\", style=filled, fillcolor=\"{}\"];",
                PALETTE[rank % PALETTE.len()]
            );
        } else {
            let _ = writeln!(out, "  n{x} [label=\"{label}\"];");
        }
    }
    let vs = graph.vertices();
    for (i, j) in graph.edges() {
        if highlighted.contains(&(i, j)) {
            let _ = writeln!(out, "  n{} -- n{} [color=red, penwidth=2];", vs[i], vs[j]);
        } else {
            let _ = writeln!(out, "  n{} -- n{};", vs[i], vs[j]);
        }
    }
    out.push_str("}\n");
    out
}

/// Stable JSON view of a graph.
#[derive(Debug, Clone, Serialize)]
pub struct GraphJson {
    pub spec: String,
    pub order: usize,
    pub cyc_size: usize,
    pub vertices: Vec<String>,
    pub edges: Vec<[usize; 2]>,
}

pub fn graph_json(graph: &NonCyclicGraph<'_>, spec: &str) -> GraphJson {
    let g = graph.group();
    GraphJson {
        spec: spec.to_string(),
        order: g.order(),
        cyc_size: graph.cyc_set().len(),
        vertices: graph
            .vertices()
            .iter()
            .map(|&x| g.label(x).to_string())
            .collect(),
        edges: graph.edges().into_iter().map(|(i, j)| [i, j]).collect(),
    }
}
