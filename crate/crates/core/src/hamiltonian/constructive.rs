//! Constructive Hamiltonian cycles for non-cyclic graphs of nilpotent groups.
//!
//! The work happens in `H = G / Cyc(G)`, where the cyclizer is trivial. The
//! vertices of `Gamma(H)` are cut into segments, each the union of some
//! generator classes of one `Omega_m(H)`; a segment induces a complete
//! multipartite graph, so it has a Hamiltonian path from any entry vertex.
//! Consecutive segment paths are joined by bridge edges, and the last one
//! closes back onto the first vertex. When the Sylow 2-subgroup of `H` is
//! dihedral or semidihedral, its non-identity elements are walked last along
//! an explicit chain.
//!
//! Adjacency in `Gamma(G)` only depends on cosets of `Cyc(G)`, so a cycle of
//! `Gamma(H)` lifts by going round it once per element of `Cyc(G)`.

use crate::arith;
use crate::error::{Error, Result};
use crate::graph::{build_graph, generator_classes, NonCyclicGraph};
use crate::group::{Element, FiniteGroup};
use crate::nilpotent::{classify_nilpotent, NilpotentClass, NilpotentTag, TwoPart};

use super::backtrack::{ham_backtrack, SearchStatus, DEFAULT_SEARCH_BUDGET};
use super::multipartite::path_through_parts;
use super::ordering::pi_ordering;
use super::{verify_certificate, Builder, HamiltonianCertificate};

/// How many (entry vertex, bridge) choices the stitcher may try in total.
const STITCH_BUDGET: usize = 100_000;

/// The walk chosen for `Gamma(H)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    /// One prime: layers `Omega_{p^alpha}, ..., Omega_p`.
    PrimePower,
    /// Exponent `p_1 p_2`.
    TwoPrimesSquarefree,
    /// Several primes, layers in block order.
    Blocks,
    /// Dihedral or semidihedral 2-part, walked last along a chain.
    MaximalClass,
}

/// Hamiltonian cycle of `Gamma(G)` for `G = Z_n x P` with `P` a `p`-group,
/// neither cyclic nor a 2-group of maximal class.
pub fn ham_cycle_pgroup(g: &FiniteGroup) -> Result<HamiltonianCertificate> {
    let cls = classify_nilpotent(g);
    let parts = cls.parts.filter(|_| cls.tag.is_noncyclic_nilpotent());
    let single = parts.is_some_and(|d| {
        let noncyclic_primes =
            usize::from(d.odd_order > 1) + usize::from(d.two_part != TwoPart::Absorbed);
        noncyclic_primes == 1 && arith::prime_divisors(d.odd_order).len() <= 1
    });
    if !single
        || matches!(
            cls.tag,
            NilpotentTag::Cat3 | NilpotentTag::Cat4 | NilpotentTag::Cat5
        )
    {
        return Err(Error::Contract(format!(
            "expected Z_n x P with P a non-cyclic p-group not of maximal class, got {:?}",
            cls.tag
        )));
    }
    ham_cycle_nilpotent(g, &cls)
}

/// Hamiltonian cycle of `Gamma(G)` for non-cyclic nilpotent `G`, built in
/// `G / Cyc(G)` and lifted. The result is always checked; if the lifted
/// cycle fails the check the backtracking search is used instead.
pub fn ham_cycle_nilpotent(
    g: &FiniteGroup,
    cls: &NilpotentClass,
) -> Result<HamiltonianCertificate> {
    if !cls.tag.is_noncyclic_nilpotent() {
        return Err(Error::Contract(format!(
            "constructive cycles need a non-cyclic nilpotent group, got {:?}",
            cls.tag
        )));
    }
    let graph = build_graph(g);
    let (h, coset_of) = g.quotient(graph.cyc_set())?;
    let reduced = reduced_cycle(&h)?;
    let cert = HamiltonianCertificate {
        cycle: lift(&coset_of, h.order(), &reduced),
        builder: Builder::Constructive,
    };
    if verify_certificate(&graph, &cert) {
        return Ok(cert);
    }
    let fallback = ham_backtrack(&graph, DEFAULT_SEARCH_BUDGET);
    match (fallback.status, fallback.certificate) {
        (SearchStatus::Found, Some(c)) => Ok(c),
        _ => Err(Error::Stitching {
            position: 0,
            reason: "lifted cycle failed verification and the search found none".into(),
        }),
    }
}

/// Goes round the quotient cycle once per element of the normal subgroup,
/// taking the `i`-th element of each coset on round `i`.
fn lift(coset_of: &[Element], cosets: usize, reduced: &[Element]) -> Vec<Element> {
    let mut members: Vec<Vec<Element>> = vec![Vec::new(); cosets];
    for (x, &c) in coset_of.iter().enumerate() {
        members[c].push(x);
    }
    let rounds = coset_of.len() / cosets;
    (0..rounds)
        .flat_map(|i| reduced.iter().map(move |&c| (i, c)))
        .map(|(i, c)| members[c][i])
        .collect()
}

/// Which walk applies to `h`, a nilpotent group with trivial cyclizer.
pub fn route_for(h: &FiniteGroup) -> Result<Route> {
    let cls = classify_nilpotent(h);
    let parts = cls
        .parts
        .filter(|_| cls.tag.is_noncyclic_nilpotent())
        .ok_or_else(|| {
            Error::Contract(format!(
                "reduced group is not non-cyclic nilpotent: {:?}",
                cls.tag
            ))
        })?;
    if parts.n != 1 {
        return Err(Error::Contract(
            "reduced group still has a cyclic Sylow factor".into(),
        ));
    }
    if matches!(
        parts.two_part,
        TwoPart::Dihedral { .. } | TwoPart::SemiDihedral { .. }
    ) {
        return Ok(Route::MaximalClass);
    }
    let exp = h.exponent();
    Ok(match arith::factorize(exp).as_slice() {
        [_] => Route::PrimePower,
        [(_, 1), (_, 1)] => Route::TwoPrimesSquarefree,
        _ => Route::Blocks,
    })
}

/// Hamiltonian cycle of `Gamma(h)` for `h` with trivial cyclizer.
pub fn reduced_cycle(h: &FiniteGroup) -> Result<Vec<Element>> {
    let graph = build_graph(h);
    if !graph.cyc_set().iter().all(|&x| x == h.identity()) {
        return Err(Error::Contract(
            "reduced group has a non-trivial cyclizer".into(),
        ));
    }
    let classes = |m: usize| generator_classes(h, &h.omega(m));
    let (segments, chains) = match route_for(h)? {
        Route::PrimePower => {
            let (p, alpha) = arith::factorize(h.exponent())[0];
            let segs = (1..=alpha).rev().map(|j| classes(p.pow(j))).collect();
            (segs, Vec::new())
        }
        Route::TwoPrimesSquarefree => (squarefree_segments(h), Vec::new()),
        Route::Blocks => {
            let segs = pi_ordering(h)?.orders().map(classes).collect();
            (segs, Vec::new())
        }
        Route::MaximalClass => {
            let chains = maximal_class_chains(h);
            if h.order().is_power_of_two() {
                // the chain alone covers the graph
                (Vec::new(), chains)
            } else {
                let segs = pi_ordering(h)?
                    .blocks
                    .iter()
                    .filter(|b| b.prime != 2)
                    .flat_map(|b| b.orders.iter().map(|&m| classes(m)))
                    .collect();
                (segs, chains)
            }
        }
    };
    Stitcher::new(&graph, segments, chains).run()
}

/// Exponent `p_1 p_2`, `p_1 > p_2`: `Omega_{p_1}`, then two classes of
/// `Omega_{p_1 p_2}`, then `Omega_{p_2}`, then the other classes of
/// `Omega_{p_1 p_2}`. Elements of orders `p_1` and `p_2` commute, so the two
/// prime layers are never adjacent and the mixed layer is split to sit
/// between them on both sides.
fn squarefree_segments(h: &FiniteGroup) -> Vec<Vec<Vec<Element>>> {
    let primes = arith::prime_divisors(h.exponent());
    let (p2, p1) = (primes[0], primes[1]);
    let mixed = generator_classes(h, &h.omega(p1 * p2));
    // the order-p_1 and order-p_2 subgroups inside a class
    let key = |class: &[Element]| {
        let x = class[0];
        (
            h.cyclic_closure(h.pow(x, p2)).elements,
            h.cyclic_closure(h.pow(x, p1)).elements,
        )
    };
    let first = key(&mixed[0]);
    // least class disjoint from the first at both primes, so every element
    // of either prime layer sees at least one of the pair
    let partner = (1..mixed.len())
        .find(|&i| {
            let k = key(&mixed[i]);
            k.0 != first.0 && k.1 != first.1
        })
        .expect("at least p_1 + 1 subgroups of each prime order");
    let pair = vec![mixed[0].clone(), mixed[partner].clone()];
    let rest: Vec<Vec<Element>> = mixed
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != 0 && i != partner)
        .map(|(_, c)| c.clone())
        .collect();
    vec![
        generator_classes(h, &h.omega(p1)),
        pair,
        generator_classes(h, &h.omega(p2)),
        rest,
    ]
}

/// Hamiltonian paths of `Gamma` restricted to the Sylow 2-subgroup when it
/// is dihedral or semidihedral, one per relabelling `b -> a^k b`.
///
/// With `a` of order `2^t` and `b` an involution outside `<a>`:
/// dihedral walks `ab, a, a^2 b, a^2, ..., a^(2^t - 1), b`; semidihedral
/// first alternates the order-4 elements `a^(odd) b` with `a, a^2, ...`,
/// then the involutions `a^(even) b` with the remaining rotations, ending at
/// `b`. Every chain starts at `a^(k+1) b` and ends at `a^k b`.
fn maximal_class_chains(h: &FiniteGroup) -> Vec<Vec<Element>> {
    let two: Vec<Element> = h
        .elements()
        .filter(|&x| h.elem_order(x).is_power_of_two() && x != h.identity())
        .collect();
    let top = two
        .iter()
        .map(|&x| h.elem_order(x))
        .max()
        .expect("non-trivial 2-part");
    let a = *two.iter().find(|&&x| h.elem_order(x) == top).unwrap();
    let b = *two
        .iter()
        .find(|&&x| h.elem_order(x) == 2 && !h.in_cyclic(x, a))
        .expect("involution outside <a>");
    let n = top;
    let rot = |i: usize| h.pow(a, i % n);
    let refl = |i: usize| h.mul(h.pow(a, i % n), b);
    let semidihedral = h
        .elements()
        .filter(|&x| h.elem_order(x) == 4 && !h.in_cyclic(x, a))
        .count()
        > 0;

    let chain = |k: usize| -> Vec<Element> {
        let mut c = Vec::with_capacity(2 * n - 1);
        if !semidihedral {
            for i in 1..n {
                c.push(refl(i + k));
                c.push(rot(i));
            }
            c.push(refl(k));
            return c;
        }
        let half = n / 2;
        for j in 0..half {
            c.push(refl(2 * j + 1 + k));
            if j + 1 < half {
                c.push(rot(j + 1));
            }
        }
        // the central involution a^(n/2) goes last, between two involutions
        let rots = (half + 1..n).chain(std::iter::once(half));
        let invs = (1..half).map(|j| 2 * j).chain(std::iter::once(0));
        for (r, e) in rots.zip(invs) {
            c.push(rot(r));
            c.push(refl(e + k));
        }
        c
    };
    let step = if semidihedral { 2 } else { 1 };
    (0..n).step_by(step).map(chain).collect()
}

struct Stitcher<'a, 'g> {
    graph: &'a NonCyclicGraph<'g>,
    segments: Vec<Vec<Vec<Element>>>,
    chains: Vec<Vec<Element>>,
    budget: usize,
    deepest: usize,
}

impl<'a, 'g> Stitcher<'a, 'g> {
    fn new(
        graph: &'a NonCyclicGraph<'g>,
        segments: Vec<Vec<Vec<Element>>>,
        chains: Vec<Vec<Element>>,
    ) -> Self {
        let segments = segments.into_iter().filter(|s| !s.is_empty()).collect();
        Stitcher {
            graph,
            segments,
            chains,
            budget: STITCH_BUDGET,
            deepest: 0,
        }
    }

    fn run(mut self) -> Result<Vec<Element>> {
        if self.segments.is_empty() {
            // the whole graph is one chain, closed by its end and start
            return self
                .chains
                .iter()
                .find(|c| c.len() >= 3 && self.bridge_ok(*c.last().unwrap(), c[0]))
                .cloned()
                .ok_or_else(|| Error::Stitching {
                    position: 0,
                    reason: "no chain closes".into(),
                });
        }
        let mut firsts: Vec<Element> = self.segments[0].iter().flatten().copied().collect();
        firsts.sort_unstable();
        for x1 in firsts {
            let mut acc = Vec::with_capacity(self.graph.len());
            if self.descend(0, x1, x1, &mut acc)? {
                return Ok(acc);
            }
        }
        Err(Error::Stitching {
            position: self.deepest,
            reason: "no segment path could be joined".into(),
        })
    }

    fn adjacent(&self, x: Element, y: Element) -> bool {
        self.graph.adjacent(x, y)
    }

    /// A bridge edge, double-checked by generating the pair's subgroup.
    fn bridge_ok(&self, y: Element, x: Element) -> bool {
        self.adjacent(y, x) && !self.graph.group().is_pair_cyclic(y, x)
    }

    fn closing_chain(&self, y: Element, x1: Element) -> Option<&Vec<Element>> {
        self.chains
            .iter()
            .find(|c| self.adjacent(y, c[0]) && self.adjacent(*c.last().unwrap(), x1))
    }

    fn descend(
        &mut self,
        idx: usize,
        entry: Element,
        x1: Element,
        acc: &mut Vec<Element>,
    ) -> Result<bool> {
        self.deepest = self.deepest.max(idx);
        self.budget = self.budget.checked_sub(1).ok_or_else(|| Error::Stitching {
            position: self.deepest,
            reason: "stitching budget exhausted".into(),
        })?;
        let last = idx + 1 == self.segments.len();
        let next: Vec<Element> = if last {
            Vec::new()
        } else {
            let mut v: Vec<Element> = self.segments[idx + 1].iter().flatten().copied().collect();
            v.sort_unstable();
            v
        };
        let path = {
            let end_ok = |y: Element| -> bool {
                if !last {
                    next.iter().any(|&v| self.adjacent(y, v))
                } else if self.chains.is_empty() {
                    y != x1 && self.adjacent(y, x1)
                } else {
                    self.closing_chain(y, x1).is_some()
                }
            };
            match path_through_parts(&self.segments[idx], entry, &end_ok) {
                Ok(p) => p,
                Err(_) => return Ok(false),
            }
        };
        let y = *path.last().unwrap();
        let mark = acc.len();
        acc.extend_from_slice(&path);
        if last {
            if self.chains.is_empty() {
                if self.bridge_ok(y, x1) && acc.len() >= 3 {
                    return Ok(true);
                }
            } else if let Some(chain) = self.closing_chain(y, x1).cloned() {
                if self.bridge_ok(y, chain[0]) && self.bridge_ok(*chain.last().unwrap(), x1) {
                    acc.extend_from_slice(&chain);
                    return Ok(true);
                }
            }
        } else {
            let bridges: Vec<Element> = next.into_iter().filter(|&v| self.adjacent(y, v)).collect();
            for v in bridges {
                if !self.bridge_ok(y, v) {
                    return Err(Error::Stitching {
                        position: idx,
                        reason: format!("bridge {y} -- {v} generates a cyclic subgroup"),
                    });
                }
                if self.descend(idx + 1, v, x1, acc)? {
                    return Ok(true);
                }
            }
        }
        acc.truncate(mark);
        Ok(false)
    }
}
