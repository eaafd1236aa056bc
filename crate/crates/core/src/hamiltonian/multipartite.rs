//! Hamiltonian paths in complete multipartite graphs.
//!
//! Only the sequence of parts matters: consecutive vertices must come from
//! different parts. The path is planned as a sequence of part labels by a
//! depth-first search that always prefers the part with the most remaining
//! vertices, pruned by counting arguments, and then filled in with concrete
//! vertices.

use crate::error::{Error, Result};
use crate::graph::MultipartiteView;
use crate::group::Element;

const PLAN_BUDGET: usize = 2_000_000;

/// A Hamiltonian path of the complete multipartite graph on `parts`,
/// starting at `start` and ending at a vertex accepted by `end_ok`.
///
/// Within each part, vertices rejected by `end_ok` are used first, so the
/// last vertex taken from the final part is acceptable whenever that part has
/// an acceptable vertex at all.
pub fn path_through_parts(
    parts: &[Vec<Element>],
    start: Element,
    end_ok: &dyn Fn(Element) -> bool,
) -> Result<Vec<Element>> {
    let counts_of = |ps: &[Vec<Element>]| ps.iter().map(Vec::len).collect::<Vec<_>>();
    let start_part = parts
        .iter()
        .position(|p| p.contains(&start))
        .ok_or_else(|| Error::Contract(format!("start vertex {start} is in no part")))?;

    let mut queues: Vec<Vec<Element>> = parts
        .iter()
        .map(|p| {
            let mut q: Vec<Element> = p.iter().copied().filter(|&v| v != start).collect();
            q.sort_by_key(|&v| (end_ok(v), v));
            q
        })
        .collect();
    let mut counts: Vec<usize> = counts_of(&queues);
    let total: usize = counts.iter().sum();
    if total == 0 {
        return if end_ok(start) {
            Ok(vec![start])
        } else {
            Err(Error::Infeasible {
                counts: counts_of(parts),
                reason: "single vertex does not satisfy the end condition".into(),
            })
        };
    }
    let accept: Vec<bool> = queues
        .iter()
        .map(|q| q.iter().any(|&v| end_ok(v)))
        .collect();

    let plan = plan_parts(&mut counts, start_part, &accept).ok_or_else(|| Error::Infeasible {
        counts: counts_of(parts),
        reason: format!("no part sequence from part {start_part} ends in an accepted part"),
    })?;

    for q in &mut queues {
        q.reverse();
    }
    let mut path = Vec::with_capacity(total + 1);
    path.push(start);
    for part in plan {
        path.push(queues[part].pop().expect("planned part has a vertex"));
    }
    Ok(path)
}

/// Hamiltonian path of a multipartite view from `start`, either to `end` or
/// to any vertex.
pub fn multipartite_ham_path(
    view: &MultipartiteView,
    start: Element,
    end: Option<Element>,
) -> Result<Vec<Element>> {
    if let Some(end) = end {
        if view.part_of(end).is_none() {
            return Err(Error::Contract(format!(
                "end vertex {end} is not in the view"
            )));
        }
        if end == start && view.len() > 1 {
            return Err(Error::Contract("start and end coincide".into()));
        }
    }
    path_through_parts(&view.parts, start, &|v| end.is_none_or(|e| v == e))
}

/// Necessary conditions for arranging `counts` with no two equal neighbours,
/// first label different from `prev`, last label accepted.
fn may_finish(counts: &[usize], prev: usize, accept: &[bool], remaining: usize) -> bool {
    if remaining == 0 {
        return accept[prev];
    }
    let mut any_accepted = false;
    for (i, &c) in counts.iter().enumerate() {
        let limit = if i == prev {
            remaining / 2
        } else {
            remaining.div_ceil(2)
        };
        if c > limit {
            return false;
        }
        // a part filling every other slot from the first must also be last
        if remaining % 2 == 1 && c == remaining.div_ceil(2) && !accept[i] {
            return false;
        }
        if c > 0 && accept[i] {
            any_accepted = true;
        }
    }
    if remaining.is_multiple_of(2) && counts[prev] == remaining / 2 && !accept[prev] {
        // prev then fills every even slot, the last one included
        return false;
    }
    any_accepted
}

fn plan_parts(counts: &mut [usize], start_part: usize, accept: &[bool]) -> Option<Vec<usize>> {
    let total: usize = counts.iter().sum();
    if !may_finish(counts, start_part, accept, total) {
        return None;
    }
    let candidates = |counts: &[usize], prev: usize| {
        let mut c: Vec<usize> = (0..counts.len())
            .filter(|&i| i != prev && counts[i] > 0)
            .collect();
        c.sort_by_key(|&i| (std::cmp::Reverse(counts[i]), i));
        c
    };
    let mut plan: Vec<usize> = Vec::with_capacity(total);
    let mut stack: Vec<(Vec<usize>, usize)> = vec![(candidates(counts, start_part), 0)];
    let mut budget = PLAN_BUDGET;
    while let Some((cands, next)) = stack.last_mut() {
        if plan.len() == total {
            return Some(plan);
        }
        budget = budget.checked_sub(1)?;
        if *next >= cands.len() {
            stack.pop();
            if let Some(p) = plan.pop() {
                counts[p] += 1;
            }
            continue;
        }
        let choice = cands[*next];
        *next += 1;
        counts[choice] -= 1;
        let remaining = total - plan.len() - 1;
        if may_finish(counts, choice, accept, remaining) {
            plan.push(choice);
            if plan.len() == total {
                return Some(plan);
            }
            let c = candidates(counts, choice);
            stack.push((c, 0));
        } else {
            counts[choice] += 1;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Exhaustive oracle: does some ordering of all vertices start at
    /// `start`, end in `ends`, and never repeat a part consecutively?
    fn oracle(parts: &[Vec<Element>], start: Element, ends: &dyn Fn(Element) -> bool) -> bool {
        let part_of = |v: Element| parts.iter().position(|p| p.contains(&v)).unwrap();
        let rest: Vec<Element> = parts
            .iter()
            .flatten()
            .copied()
            .filter(|&v| v != start)
            .collect();
        fn go(
            cur: Element,
            rest: &mut Vec<Element>,
            part_of: &dyn Fn(Element) -> usize,
            ends: &dyn Fn(Element) -> bool,
        ) -> bool {
            if rest.is_empty() {
                return ends(cur);
            }
            for i in 0..rest.len() {
                let v = rest[i];
                if part_of(v) != part_of(cur) {
                    rest.swap_remove(i);
                    let ok = go(v, rest, part_of, ends);
                    rest.push(v);
                    let last = rest.len() - 1;
                    rest.swap(i, last);
                    if ok {
                        return true;
                    }
                }
            }
            false
        }
        go(start, &mut rest.clone(), &part_of, ends)
    }

    fn check_path(parts: &[Vec<Element>], path: &[Element], start: Element) {
        let part_of = |v: Element| parts.iter().position(|p| p.contains(&v)).unwrap();
        let mut all: Vec<Element> = parts.iter().flatten().copied().collect();
        all.sort_unstable();
        let mut seen = path.to_vec();
        seen.sort_unstable();
        assert_eq!(seen, all);
        assert_eq!(path[0], start);
        for w in path.windows(2) {
            assert_ne!(part_of(w[0]), part_of(w[1]));
        }
    }

    fn equal_parts(k: usize, size: usize) -> Vec<Vec<Element>> {
        (0..k)
            .map(|i| (i * size..(i + 1) * size).collect())
            .collect()
    }

    #[test]
    fn two_singletons() {
        let view = MultipartiteView {
            m: 2,
            parts: vec![vec![0], vec![1]],
        };
        assert_eq!(multipartite_ham_path(&view, 0, None).unwrap(), vec![0, 1]);
    }

    #[test]
    fn two_by_two_with_fixed_end() {
        let view = MultipartiteView {
            m: 4,
            parts: vec![vec![1, 3], vec![5, 7]],
        };
        let p = multipartite_ham_path(&view, 1, Some(5)).unwrap();
        check_path(&view.parts, &p, 1);
        assert_eq!(*p.last().unwrap(), 5);
        // the same part cannot end a 2-part alternating path of even length
        assert!(multipartite_ham_path(&view, 1, Some(3)).is_err());
    }

    #[test]
    fn three_by_two_all_endpoints() {
        let parts = equal_parts(3, 2);
        let view = MultipartiteView {
            m: 4,
            parts: parts.clone(),
        };
        for s in 0..6 {
            for e in 0..6 {
                if s / 2 == e / 2 {
                    continue;
                }
                let p = multipartite_ham_path(&view, s, Some(e)).unwrap();
                check_path(&parts, &p, s);
                assert_eq!(*p.last().unwrap(), e);
            }
        }
    }

    #[test]
    fn matches_exhaustive_oracle() {
        // every small equal-size configuration, every start, every end set
        for k in 1..=4 {
            for size in 1..=3 {
                if k * size > 8 {
                    continue;
                }
                let parts = equal_parts(k, size);
                let n = k * size;
                for start in 0..n {
                    for mask in 1u32..(1 << k) {
                        let ends = |v: Element| mask & (1 << (v / size)) != 0;
                        let got = path_through_parts(&parts, start, &ends);
                        let want = oracle(&parts, start, &ends);
                        assert_eq!(
                            got.is_ok(),
                            want,
                            "k={k} size={size} start={start} mask={mask}"
                        );
                        if let Ok(p) = got {
                            check_path(&parts, &p, start);
                            assert!(ends(*p.last().unwrap()));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn unequal_parts_against_oracle() {
        let parts = vec![vec![0, 1, 2], vec![3], vec![4, 5]];
        for start in 0..6 {
            for target in 0..6 {
                let ends = |v: Element| v == target;
                let got = path_through_parts(&parts, start, &ends);
                assert_eq!(got.is_ok(), target != start && oracle(&parts, start, &ends));
            }
        }
    }

    proptest! {
        #[test]
        fn free_end_always_succeeds(k in 2usize..12, size in 1usize..9, start_seed in 0usize..1000) {
            let parts = equal_parts(k, size);
            let start = start_seed % (k * size);
            let p = path_through_parts(&parts, start, &|_| true).unwrap();
            check_path(&parts, &p, start);
        }

        #[test]
        fn avoiding_one_part_with_three_or_more(k in 3usize..10, size in 1usize..8, s in 0usize..1000, f in 0usize..10) {
            let parts = equal_parts(k, size);
            let start = s % (k * size);
            let forbidden = f % k;
            let p = path_through_parts(&parts, start, &|v| v / size != forbidden).unwrap();
            check_path(&parts, &p, start);
            prop_assert_ne!(*p.last().unwrap() / size, forbidden);
        }
    }
}
