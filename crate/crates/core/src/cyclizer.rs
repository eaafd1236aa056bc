//! Cyclizers: `Cyc_G(x) = { y : <x, y> cyclic }` and `Cyc(G)`, the set of
//! elements whose cyclizer is the whole group.

use serde::Serialize;

use crate::arith;
use crate::error::{Error, Result};
use crate::group::{Element, FiniteGroup};
use crate::nilpotent::{self, NilpotentClass, NilpotentTag};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CyclizerMethod {
    BruteForce,
    ClosedForm,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclizerResult {
    /// Sorted element indices.
    pub cyc_set: Vec<Element>,
    pub method: CyclizerMethod,
}

pub fn cyclizer_of_element(g: &FiniteGroup, x: Element) -> Vec<Element> {
    g.elements().filter(|&y| g.is_pair_cyclic(x, y)).collect()
}

/// `Cyc(G)` straight from the definition, one pair-closure at a time.
pub fn cyclizer_brute(g: &FiniteGroup) -> CyclizerResult {
    let cyc_set = g
        .elements()
        .filter(|&x| g.elements().all(|y| g.is_pair_cyclic(x, y)))
        .collect();
    CyclizerResult {
        cyc_set,
        method: CyclizerMethod::BruteForce,
    }
}

/// `Cyc(G)` for a non-cyclic nilpotent group from its classification.
///
/// An element is in the cyclizer iff its components in the non-cyclic Sylow
/// subgroups are trivial, except that in the quaternion case the 2-component
/// may also be the unique involution of the quaternion factor.
pub fn cyclizer_closed_form(g: &FiniteGroup, cls: &NilpotentClass) -> Result<CyclizerResult> {
    if !cls.tag.is_noncyclic_nilpotent() {
        return Err(Error::Contract(format!(
            "closed-form cyclizer needs a non-cyclic nilpotent group, got {:?}",
            cls.tag
        )));
    }
    let sylows = nilpotent::sylow_decomposition(g)?;
    let primes: Vec<usize> = sylows.iter().map(|(p, _)| *p).collect();
    let e = g.identity();

    // per prime: None = any component allowed (cyclic Sylow), else the allowed set
    let allowed: Vec<Option<Vec<Element>>> = sylows
        .iter()
        .map(|(p, set)| {
            let exp = set
                .iter()
                .fold(1, |acc, &x| arith::lcm(acc, g.elem_order(x)));
            if exp == set.len() {
                None
            } else if *p == 2 && cls.tag == NilpotentTag::Cat3 {
                let involutions: Vec<Element> = set
                    .iter()
                    .copied()
                    .filter(|&x| g.elem_order(x) == 2)
                    .collect();
                debug_assert_eq!(involutions.len(), 1, "quaternion factor has one involution");
                Some(vec![e, involutions[0]])
            } else {
                Some(vec![e])
            }
        })
        .collect();

    let comps = nilpotent::components(g, &primes);
    let cyc_set = g
        .elements()
        .filter(|&x| {
            comps[x]
                .iter()
                .zip(&allowed)
                .all(|(c, a)| a.as_ref().is_none_or(|set| set.contains(c)))
        })
        .collect();
    Ok(CyclizerResult {
        cyc_set,
        method: CyclizerMethod::ClosedForm,
    })
}
