//! Nilpotency test, Sylow decomposition and the five-way classification of
//! non-cyclic nilpotent groups.
//!
//! A non-cyclic nilpotent group is `Z_n x P x G` where `G` is the product of
//! the non-cyclic odd Sylow subgroups, every cyclic Sylow subgroup is folded
//! into `Z_n`, and `P` is the 2-part when that is non-cyclic. The category
//! is picked by the kind of `P`.

use serde::Serialize;

use crate::arith;
use crate::catalog::{Atom, GroupSpec};
use crate::error::{Error, Result};
use crate::group::{Element, FiniteGroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum NilpotentTag {
    NotNilpotent,
    Cyclic,
    /// `Z_n x G`
    Cat1,
    /// `Z_n x P x G`, `P` neither cyclic nor of maximal class
    Cat2,
    /// `Z_n x Q_(2^(t+1)) x G`
    Cat3,
    /// `Z_n x D_(2^(t+1)) x G`
    Cat4,
    /// `Z_n x SD_(2^(t+1)) x G`
    Cat5,
}

impl NilpotentTag {
    pub fn is_noncyclic_nilpotent(self) -> bool {
        !matches!(self, NilpotentTag::NotNilpotent | NilpotentTag::Cyclic)
    }
}

/// Shape of the Sylow 2-subgroup once cyclic Sylow factors are folded away.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum TwoPart {
    /// Trivial or cyclic; lives inside `Z_n`.
    Absorbed,
    /// Non-cyclic and not of maximal class, of the given order.
    General {
        order: usize,
    },
    Quaternion {
        t: u32,
    },
    Dihedral {
        t: u32,
    },
    SemiDihedral {
        t: u32,
    },
}

/// The `(n, 2-part, odd part)` decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Decomposition {
    /// Order of the cyclic factor `Z_n`.
    pub n: usize,
    pub two_part: TwoPart,
    /// Order of the odd factor with no cyclic Sylow subgroups.
    pub odd_order: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct NilpotentClass {
    pub tag: NilpotentTag,
    pub parts: Option<Decomposition>,
}

impl NilpotentClass {
    fn from_parts(parts: Decomposition) -> Self {
        let tag = match parts.two_part {
            TwoPart::Absorbed if parts.odd_order == 1 => NilpotentTag::Cyclic,
            TwoPart::Absorbed => NilpotentTag::Cat1,
            TwoPart::General { .. } => NilpotentTag::Cat2,
            TwoPart::Quaternion { .. } => NilpotentTag::Cat3,
            TwoPart::Dihedral { .. } => NilpotentTag::Cat4,
            TwoPart::SemiDihedral { .. } => NilpotentTag::Cat5,
        };
        NilpotentClass {
            tag,
            parts: Some(parts),
        }
    }

    pub fn not_nilpotent() -> Self {
        NilpotentClass {
            tag: NilpotentTag::NotNilpotent,
            parts: None,
        }
    }
}

/// Nilpotency via "elements of coprime order commute".
pub fn is_nilpotent(g: &FiniteGroup) -> bool {
    let n = g.order();
    for x in 0..n {
        for y in (x + 1)..n {
            if arith::gcd(g.elem_order(x), g.elem_order(y)) == 1 && !g.commute(x, y) {
                return false;
            }
        }
    }
    true
}

/// Nilpotency via normal Sylow subgroups: for every prime `p`, the
/// `p`-elements must form a single subgroup of order `|G|_p`, which is then
/// the unique (hence normal) Sylow `p`-subgroup.
pub fn sylow_subgroups_normal(g: &FiniteGroup) -> bool {
    arith::factorize(g.order()).into_iter().all(|(p, e)| {
        let set = p_elements(g, p);
        set.len() == p.pow(e) && g.is_normal_subgroup(&set)
    })
}

fn p_elements(g: &FiniteGroup, p: usize) -> Vec<Element> {
    g.elements()
        .filter(|&x| arith::log_exact(g.elem_order(x), p).is_some())
        .collect()
}

/// For each prime dividing `|G|` (ascending) the set of elements of
/// `p`-power order.
pub fn sylow_decomposition(g: &FiniteGroup) -> Result<Vec<(usize, Vec<Element>)>> {
    if !is_nilpotent(g) {
        return Err(Error::Contract(
            "Sylow decomposition of a non-nilpotent group".into(),
        ));
    }
    Ok(arith::prime_divisors(g.order())
        .into_iter()
        .map(|p| (p, p_elements(g, p)))
        .collect())
}

/// The `p`-component `x^k` of `x`, where `k = 1 (mod |x|_p)` and
/// `k = 0 (mod |x| / |x|_p)`.
pub fn p_component(g: &FiniteGroup, x: Element, p: usize) -> Element {
    let o = g.elem_order(x);
    let pp = arith::p_part(o, p);
    let rest = o / pp;
    let k = rest * arith::mod_inverse(rest % pp, pp).expect("coprime parts");
    g.pow(x, k)
}

/// Decomposes every element into its Sylow components, in the prime order of
/// `primes`.
pub fn components(g: &FiniteGroup, primes: &[usize]) -> Vec<Vec<Element>> {
    g.elements()
        .map(|x| primes.iter().map(|&p| p_component(g, x, p)).collect())
        .collect()
}

/// Recognises the shape of a Sylow 2-subgroup from its cyclic-subgroup
/// counts. A non-cyclic 2-group of exponent `2^t` with one cyclic subgroup
/// of some order `2^i` is dihedral, quaternion or semidihedral; the three are
/// told apart by the number of involution classes.
fn two_part_shape(g: &FiniteGroup, sylow2: &[Element]) -> TwoPart {
    let order = sylow2.len();
    let exp = sylow2
        .iter()
        .fold(1, |acc, &x| arith::lcm(acc, g.elem_order(x)));
    if exp == order {
        return TwoPart::Absorbed;
    }
    let t = arith::log_exact(exp, 2).expect("2-group exponent");
    let maximal_class = (1..=t).any(|i| g.class_count(1 << i) == 1);
    if !maximal_class || order != 1 << (t + 1) {
        return TwoPart::General { order };
    }
    let involutions = g.class_count(2);
    if involutions == 1 {
        TwoPart::Quaternion { t }
    } else if involutions == 1 + (1 << t) {
        TwoPart::Dihedral { t }
    } else if t >= 3 && involutions == 1 + (1 << (t - 1)) && g.class_count(4) == 1 + (1 << (t - 2))
    {
        TwoPart::SemiDihedral { t }
    } else {
        TwoPart::General { order }
    }
}

pub fn classify_nilpotent(g: &FiniteGroup) -> NilpotentClass {
    let Ok(sylows) = sylow_decomposition(g) else {
        return NilpotentClass::not_nilpotent();
    };
    let mut n = 1;
    let mut odd_order = 1;
    let mut two_part = TwoPart::Absorbed;
    for (p, set) in &sylows {
        let exp = set
            .iter()
            .fold(1, |acc, &x| arith::lcm(acc, g.elem_order(x)));
        let cyclic = exp == set.len();
        if *p == 2 {
            two_part = two_part_shape(g, set);
            if cyclic {
                n *= set.len();
            }
        } else if cyclic {
            n *= set.len();
        } else {
            odd_order *= set.len();
        }
    }
    NilpotentClass::from_parts(Decomposition {
        n,
        two_part,
        odd_order,
    })
}

/// The class a spec should build to, read off the atoms alone.
pub fn expected_class(spec: &GroupSpec) -> NilpotentClass {
    let atoms = spec.atoms();
    if atoms
        .iter()
        .any(|a| matches!(a, Atom::Dihedral(n) if !n.is_power_of_two()))
    {
        return NilpotentClass::not_nilpotent();
    }
    let order = spec.predicted_order();
    // factor of each atom in the Sylow p-subgroup
    enum Piece {
        Cyclic,
        Dihedral(u32),
        Quaternion(u32),
        SemiDihedral(u32),
    }
    let piece = |a: &Atom, p: usize| -> Option<Piece> {
        match *a {
            Atom::Cyclic(m) => m.is_multiple_of(p).then_some(Piece::Cyclic),
            Atom::Dihedral2(t) if p == 2 => Some(Piece::Dihedral(t)),
            Atom::Dihedral(m) if p == 2 => Some(Piece::Dihedral(m.trailing_zeros())),
            Atom::Quaternion2(t) if p == 2 => Some(Piece::Quaternion(t)),
            Atom::SemiDihedral2(t) if p == 2 => Some(Piece::SemiDihedral(t)),
            _ => None,
        }
    };
    let mut n = 1;
    let mut odd_order = 1;
    let mut two_part = TwoPart::Absorbed;
    for p in arith::prime_divisors(order) {
        let pieces: Vec<Piece> = atoms.iter().filter_map(|a| piece(a, p)).collect();
        let sylow = arith::p_part(order, p);
        let cyclic = matches!(pieces.as_slice(), [Piece::Cyclic]);
        if cyclic {
            n *= sylow;
            continue;
        }
        if p != 2 {
            odd_order *= sylow;
            continue;
        }
        two_part = match pieces.as_slice() {
            // D4 is Z2 x Z2
            [Piece::Dihedral(t)] if *t >= 2 => TwoPart::Dihedral { t: *t },
            [Piece::Quaternion(t)] => TwoPart::Quaternion { t: *t },
            [Piece::SemiDihedral(t)] => TwoPart::SemiDihedral { t: *t },
            _ => TwoPart::General { order: sylow },
        };
    }
    NilpotentClass::from_parts(Decomposition {
        n,
        two_part,
        odd_order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::parse_spec;

    fn class_of(text: &str) -> NilpotentClass {
        classify_nilpotent(&parse_spec(text).unwrap().build().unwrap())
    }

    #[test]
    fn classification_examples() {
        assert_eq!(class_of("Dih3").tag, NilpotentTag::NotNilpotent);
        assert_eq!(class_of("Z6").tag, NilpotentTag::Cyclic);
        assert_eq!(class_of("Z2 x Z3").tag, NilpotentTag::Cyclic);

        let c = class_of("Z3 x Q8");
        assert_eq!(c.tag, NilpotentTag::Cat3);
        assert_eq!(
            c.parts,
            Some(Decomposition {
                n: 3,
                two_part: TwoPart::Quaternion { t: 2 },
                odd_order: 1
            })
        );

        let c = class_of("Z4 x Z2");
        assert_eq!(c.tag, NilpotentTag::Cat2);
        assert_eq!(
            c.parts,
            Some(Decomposition {
                n: 1,
                two_part: TwoPart::General { order: 8 },
                odd_order: 1
            })
        );

        assert_eq!(class_of("Z3 x Z3").tag, NilpotentTag::Cat1);
        assert_eq!(class_of("Z4 x Z3 x Z3").parts.unwrap().n, 4);
        assert_eq!(class_of("Z5 x D8").tag, NilpotentTag::Cat4);
        assert_eq!(class_of("SD16 x Z3 x Z3").tag, NilpotentTag::Cat5);
        assert_eq!(class_of("D4").tag, NilpotentTag::Cat2);
        assert_eq!(class_of("Dih4").tag, NilpotentTag::Cat4);
    }

    #[test]
    fn nilpotency_routes_agree() {
        for text in [
            "Dih3",
            "Dih5",
            "Dih6",
            "Z3 x Dih3",
            "Q8",
            "Z4 x Z2",
            "Dih4",
            "Z3 x D8",
            "Z2 x Dih3",
        ] {
            let g = parse_spec(text).unwrap().build().unwrap();
            assert_eq!(is_nilpotent(&g), sylow_subgroups_normal(&g), "{text}");
        }
    }

    #[test]
    fn sylow_parts() {
        let g = parse_spec("Z6").unwrap().build().unwrap();
        let d = sylow_decomposition(&g).unwrap();
        assert_eq!(d, vec![(2, vec![0, 3]), (3, vec![0, 2, 4])]);
        let g = parse_spec("Z3 x Q8").unwrap().build().unwrap();
        let d = sylow_decomposition(&g).unwrap();
        assert_eq!((d[0].0, d[0].1.len(), d[1].0, d[1].1.len()), (2, 8, 3, 3));
        let g = parse_spec("Z4 x Z2").unwrap().build().unwrap();
        assert_eq!(sylow_decomposition(&g).unwrap().len(), 1);
        let s3 = parse_spec("Dih3").unwrap().build().unwrap();
        assert!(matches!(sylow_decomposition(&s3), Err(Error::Contract(_))));
    }

    #[test]
    fn components_multiply_back() {
        let g = parse_spec("Z12 x Z3 x D8").unwrap().build().unwrap();
        let primes = arith::prime_divisors(g.order());
        let comps = components(&g, &primes);
        for x in g.elements() {
            let prod = comps[x].iter().fold(g.identity(), |acc, &c| g.mul(acc, c));
            assert_eq!(prod, x);
            for (&p, &c) in primes.iter().zip(&comps[x]) {
                assert!(arith::log_exact(g.elem_order(c), p).is_some());
            }
        }
    }

    #[test]
    fn spec_and_table_classification_agree() {
        for spec in crate::catalog::catalog(64) {
            let g = spec.build().unwrap();
            assert_eq!(classify_nilpotent(&g), expected_class(&spec), "{spec}");
        }
    }
}
