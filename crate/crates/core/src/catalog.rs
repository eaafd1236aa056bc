//! Symbolic group specs, their parser and printer, and the table builders
//! for the catalog atoms.
//!
//! Grammar: atoms joined by `x`, whitespace ignored.
//!
//! | atom        | group                                   | bound        |
//! |-------------|-----------------------------------------|--------------|
//! | `Z<n>`      | cyclic of order `n`                     | `n >= 1`     |
//! | `D<2^(t+1)>`  | dihedral 2-group                      | `t >= 1`     |
//! | `Q<2^(t+1)>`  | generalized quaternion 2-group        | `t >= 2`     |
//! | `SD<2^(t+1)>` | semidihedral 2-group                  | `t >= 3`     |
//! | `Dih<n>`    | dihedral group of order `2n`            | `n >= 3`     |
//!
//! D/Q/SD numerals are the group order; `Dih` takes the rotation count.

use std::fmt;
use std::str::FromStr;

use crate::arith;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// Default upper bound on the order of a built group.
pub const DEFAULT_ORDER_CAP: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    Cyclic(usize),
    Dihedral2(u32),
    Quaternion2(u32),
    SemiDihedral2(u32),
    /// Full dihedral group of order `2n`.
    Dihedral(usize),
}

impl Atom {
    pub fn order(&self) -> usize {
        match *self {
            Atom::Cyclic(n) => n,
            Atom::Dihedral2(t) | Atom::Quaternion2(t) | Atom::SemiDihedral2(t) => 1 << (t + 1),
            Atom::Dihedral(n) => 2 * n,
        }
    }

    fn validate(&self) -> std::result::Result<(), String> {
        match *self {
            Atom::Cyclic(0) => Err("cyclic order must be at least 1".into()),
            Atom::Dihedral2(t) if t < 1 => Err("dihedral 2-group needs order >= 4".into()),
            Atom::Quaternion2(t) if t < 2 => Err("quaternion group needs order >= 8".into()),
            Atom::SemiDihedral2(t) if t < 3 => Err("semidihedral group needs order >= 16".into()),
            Atom::Dihedral(n) if n < 3 => Err("Dih<n> needs n >= 3".into()),
            _ => Ok(()),
        }
    }

    /// Multiplication table of the atom.
    ///
    /// Presentation atoms enumerate `a^i` at index `i` and `a^i b` at index
    /// `2^t + i` (`n + i` for `Dih<n>`).
    pub fn build(&self) -> FiniteGroup {
        match *self {
            Atom::Cyclic(n) => {
                let table = (0..n * n).map(|i| (i / n + i % n) % n).collect();
                let labels = (0..n).map(|i| i.to_string()).collect();
                FiniteGroup::from_table(n, table, labels).expect("cyclic table")
            }
            Atom::Dihedral2(t) => metacyclic(1 << t, (1 << t) - 1, 0),
            Atom::Quaternion2(t) => metacyclic(1 << t, (1 << t) - 1, 1 << (t - 1)),
            Atom::SemiDihedral2(t) => metacyclic(1 << t, (1 << (t - 1)) - 1, 0),
            Atom::Dihedral(n) => metacyclic(n, n - 1, 0),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Atom::Cyclic(n) => write!(f, "Z{n}"),
            Atom::Dihedral2(_) => write!(f, "D{}", self.order()),
            Atom::Quaternion2(_) => write!(f, "Q{}", self.order()),
            Atom::SemiDihedral2(_) => write!(f, "SD{}", self.order()),
            Atom::Dihedral(n) => write!(f, "Dih{n}"),
        }
    }
}

/// The group `<a, b | a^n = 1, b^2 = a^s, b^-1 a b = a^r>`, with `r^2 = 1
/// (mod n)` and `s` fixed by conjugation. Element `a^i b^j` sits at index
/// `j*n + i`; `(a^i b^j)(a^k b^l) = a^(i + k r^j [+ s]) b^(j+l mod 2)`.
fn metacyclic(n: usize, r: usize, s: usize) -> FiniteGroup {
    let order = 2 * n;
    let mut table = Vec::with_capacity(order * order);
    for x in 0..order {
        let (j, i) = (x / n, x % n);
        for y in 0..order {
            let (l, k) = (y / n, y % n);
            let twisted = if j == 1 { k * r % n } else { k };
            let mut e = i + twisted;
            if j + l == 2 {
                e += s;
            }
            table.push(((j + l) % 2) * n + e % n);
        }
    }
    let word = |i: usize| match i {
        0 => String::new(),
        1 => "a".to_string(),
        _ => format!("a^{i}"),
    };
    let labels = (0..order)
        .map(|x| {
            let (j, i) = (x / n, x % n);
            match (j, i) {
                (0, 0) => "1".to_string(),
                (0, _) => word(i),
                _ => format!("{}b", word(i)),
            }
        })
        .collect();
    FiniteGroup::from_table(order, table, labels).expect("presentation table")
}

/// A direct product of one or more atoms, leftmost factor most significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Atom(Atom),
    DirectProduct(Vec<GroupSpec>),
}

impl GroupSpec {
    pub fn atoms(&self) -> Vec<Atom> {
        match self {
            GroupSpec::Atom(a) => vec![*a],
            GroupSpec::DirectProduct(parts) => parts.iter().flat_map(|p| p.atoms()).collect(),
        }
    }

    pub fn from_atoms(atoms: Vec<Atom>) -> GroupSpec {
        if atoms.len() == 1 {
            GroupSpec::Atom(atoms[0])
        } else {
            GroupSpec::DirectProduct(atoms.into_iter().map(GroupSpec::Atom).collect())
        }
    }

    /// Product of the atom orders.
    pub fn predicted_order(&self) -> usize {
        self.atoms().iter().map(Atom::order).product()
    }

    /// Order-independent form used to deduplicate specs: atoms sorted, and
    /// trivial `Z1` factors dropped unless nothing else remains.
    pub fn canonical(&self) -> GroupSpec {
        let mut atoms: Vec<Atom> = self
            .atoms()
            .into_iter()
            .filter(|a| *a != Atom::Cyclic(1))
            .collect();
        if atoms.is_empty() {
            atoms.push(Atom::Cyclic(1));
        }
        atoms.sort();
        GroupSpec::from_atoms(atoms)
    }

    pub fn build(&self) -> Result<FiniteGroup> {
        self.build_with_cap(DEFAULT_ORDER_CAP)
    }

    pub fn build_with_cap(&self, cap: usize) -> Result<FiniteGroup> {
        let order = self
            .atoms()
            .iter()
            .try_fold(1usize, |acc, a| acc.checked_mul(a.order()))
            .unwrap_or(usize::MAX);
        if order > cap {
            return Err(Error::Capacity { order, cap });
        }
        let group = match self {
            GroupSpec::Atom(a) => a.build(),
            GroupSpec::DirectProduct(parts) => {
                let mut it = parts.iter();
                let first = it
                    .next()
                    .expect("direct product has factors")
                    .build_with_cap(cap)?;
                it.try_fold(first, |acc, p| {
                    Ok::<_, Error>(acc.direct_product(&p.build_with_cap(cap)?))
                })?
            }
        };
        if cfg!(debug_assertions) && group.order() <= 64 {
            group.check_associativity(0)?;
        }
        Ok(group)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Atom(a) => write!(f, "{a}"),
            GroupSpec::DirectProduct(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" x ")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_spec(s)
    }
}

pub fn parse_spec(text: &str) -> Result<GroupSpec> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse {
            atom: String::new(),
            reason: "empty spec".into(),
        });
    }
    let atoms = compact
        .split('x')
        .map(parse_atom)
        .collect::<Result<Vec<_>>>()?;
    Ok(GroupSpec::from_atoms(atoms))
}

fn parse_atom(token: &str) -> Result<Atom> {
    let err = |reason: &str| Error::Parse {
        atom: token.to_string(),
        reason: reason.to_string(),
    };
    // longest prefixes first: `Dih` before `D`, `SD` before `D`
    let (kind, digits) = ["Dih", "SD", "Z", "D", "Q"]
        .iter()
        .find_map(|k| token.strip_prefix(k).map(|rest| (*k, rest)))
        .ok_or_else(|| err("expected one of Z<n>, D<order>, Q<order>, SD<order>, Dih<n>"))?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err("expected a decimal number after the atom name"));
    }
    let n: usize = digits.parse().map_err(|_| err("number out of range"))?;
    let two_power = |n: usize| -> Result<u32> {
        match arith::log_exact(n, 2) {
            Some(k) if k >= 1 => Ok(k - 1),
            _ => Err(err("order must be a power of 2")),
        }
    };
    let atom = match kind {
        "Z" => Atom::Cyclic(n),
        "D" => Atom::Dihedral2(two_power(n)?),
        "Q" => Atom::Quaternion2(two_power(n)?),
        "SD" => Atom::SemiDihedral2(two_power(n)?),
        _ => Atom::Dihedral(n),
    };
    atom.validate().map_err(|r| err(&r))?;
    Ok(atom)
}

/// Every spec over the catalog atoms with order at most `max_order`, one per
/// canonical form, sorted by printed text.
///
/// Products use `Z<n>` for `n >= 2`, every D/Q/SD atom in bounds and
/// `Dih<n>` for `n` not a power of two (the power-of-two cases are the
/// D atoms). `Z1` appears once on its own.
pub fn catalog(max_order: usize) -> Vec<GroupSpec> {
    let mut atoms: Vec<Atom> = (2..=max_order).map(Atom::Cyclic).collect();
    let mut push_two_groups = |make: fn(u32) -> Atom, t0: u32| {
        let mut t = t0;
        while (1usize << (t + 1)) <= max_order {
            atoms.push(make(t));
            t += 1;
        }
    };
    push_two_groups(Atom::Dihedral2, 1);
    push_two_groups(Atom::Quaternion2, 2);
    push_two_groups(Atom::SemiDihedral2, 3);
    atoms.extend(
        (3..=max_order / 2)
            .filter(|n| !n.is_power_of_two())
            .map(Atom::Dihedral),
    );
    atoms.sort();

    let mut out = vec![GroupSpec::Atom(Atom::Cyclic(1))];
    let mut stack = Vec::new();
    fn rec(
        atoms: &[Atom],
        start: usize,
        order: usize,
        max: usize,
        stack: &mut Vec<Atom>,
        out: &mut Vec<GroupSpec>,
    ) {
        for i in start..atoms.len() {
            let o = order * atoms[i].order();
            if o > max {
                continue;
            }
            stack.push(atoms[i]);
            out.push(GroupSpec::from_atoms(stack.clone()));
            rec(atoms, i, o, max, stack, out);
            stack.pop();
        }
    }
    if max_order >= 2 {
        rec(&atoms, 0, 1, max_order, &mut stack, &mut out);
    }
    let mut keyed: Vec<(String, GroupSpec)> = out.into_iter().map(|s| (s.to_string(), s)).collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.dedup_by(|a, b| a.0 == b.0);
    keyed.into_iter().map(|(_, s)| s).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_products_and_atoms() {
        let s = parse_spec("Z4 x Z2").unwrap();
        assert_eq!(
            s,
            GroupSpec::DirectProduct(vec![
                GroupSpec::Atom(Atom::Cyclic(4)),
                GroupSpec::Atom(Atom::Cyclic(2))
            ])
        );
        assert_eq!(
            parse_spec("Q16").unwrap(),
            GroupSpec::Atom(Atom::Quaternion2(3))
        );
        assert_eq!(parse_spec("Q16").unwrap().predicted_order(), 16);
        assert_eq!(parse_spec(" Z3xQ8 ").unwrap().to_string(), "Z3 x Q8");
        assert_eq!(
            parse_spec("Dih3").unwrap(),
            GroupSpec::Atom(Atom::Dihedral(3))
        );
        assert_eq!(
            parse_spec("SD16").unwrap(),
            GroupSpec::Atom(Atom::SemiDihedral2(3))
        );
    }

    #[test]
    fn parse_errors_name_the_atom() {
        for (text, atom) in [
            ("SD8", "SD8"),
            ("Q4", "Q4"),
            ("D2", "D2"),
            ("D12", "D12"),
            ("Z0", "Z0"),
            ("Z4 x Y2", "Y2"),
            ("Z4 x", ""),
            ("Dih2", "Dih2"),
            ("Zfoo", "Zfoo"),
        ] {
            match parse_spec(text) {
                Err(Error::Parse { atom: a, .. }) => assert_eq!(a, atom, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn presentations_hold() {
        // b^-1 a b = a^r and the power relations, checked on the table
        for (atom, r, b2) in [
            (Atom::Dihedral2(2), 3usize, 0usize),
            (Atom::Dihedral2(4), 15, 0),
            (Atom::Quaternion2(2), 3, 2),
            (Atom::Quaternion2(4), 15, 8),
            (Atom::SemiDihedral2(3), 3, 0),
            (Atom::SemiDihedral2(5), 15, 0),
        ] {
            let g = atom.build();
            let n = g.order() / 2;
            let (a, b) = (1, n);
            assert_eq!(g.elem_order(a), n, "{atom}");
            let conj = g.mul(g.mul(g.inv(b), a), b);
            assert_eq!(conj, g.pow(a, r), "{atom}");
            assert_eq!(g.mul(b, b), g.pow(a, b2), "{atom}");
            g.check_associativity(0).unwrap();
        }
    }

    #[test]
    fn d8_relation_example() {
        let g = Atom::Dihedral2(2).build();
        let (a, b) = (g.index_of("a").unwrap(), g.index_of("b").unwrap());
        assert_eq!(g.label(g.mul(b, a)), "a^3b");
    }

    #[test]
    fn built_statistics() {
        let d8 = parse_spec("D8").unwrap().build().unwrap();
        assert_eq!(d8.omega(2).len(), 5);
        assert_eq!(d8.omega(4).len(), 2);
        let g = parse_spec("Z4 x Z2").unwrap().build().unwrap();
        assert_eq!((g.order(), g.exponent()), (8, 4));
        let q8 = parse_spec("Q8").unwrap().build().unwrap();
        assert_eq!(q8.omega(2), vec![q8.index_of("a^2").unwrap()]);
        assert_eq!(q8.mul(4, 4), q8.index_of("a^2").unwrap());
    }

    #[test]
    fn capacity_is_enforced() {
        let s = parse_spec("Z64 x Z64 x Z2").unwrap();
        assert_eq!(
            s.build(),
            Err(Error::Capacity {
                order: 8192,
                cap: DEFAULT_ORDER_CAP
            })
        );
        assert!(parse_spec("Z12").unwrap().build_with_cap(10).is_err());
    }

    #[test]
    fn build_is_deterministic() {
        let a = parse_spec("Z3 x D8").unwrap().build().unwrap();
        let b = parse_spec("Z3xD8").unwrap().build().unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn catalog_shape() {
        let c = catalog(8);
        let names: Vec<String> = c.iter().map(|s| s.to_string()).collect();
        for want in [
            "Z1",
            "Z8",
            "Z2 x Z4",
            "Z2 x Z2 x Z2",
            "D8",
            "Q8",
            "D4",
            "Z2 x D4",
            "Dih3",
        ] {
            assert!(
                names.contains(&want.to_string()),
                "{want} missing from {names:?}"
            );
        }
        assert!(!names.contains(&"SD8".to_string()));
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(names, sorted);
        for s in &c {
            assert!(s.predicted_order() <= 8);
            assert_eq!(&s.canonical(), s, "catalog entries are canonical");
        }
    }
}
