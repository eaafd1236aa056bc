//! Finite groups materialised as multiplication tables.
//!
//! Elements are plain indices `0..order`. Every structure built on top of a
//! [`FiniteGroup`] (cyclic subgroups, cyclizers, graphs) stores element
//! indices, never labels.

use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith;
use crate::error::{Error, Result};

/// Index of an element in its group's enumeration.
pub type Element = usize;

/// Order up to which associativity is checked on every triple.
pub const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 256;
/// Number of sampled triples above [`EXHAUSTIVE_ASSOCIATIVITY_LIMIT`].
pub const SAMPLED_ASSOCIATIVITY_TRIPLES: usize = 100_000;

/// An element together with its human-readable label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupElement {
    pub index: Element,
    pub label: String,
}

/// A finite group given by its full multiplication table.
///
/// Immutable after construction; every query is a pure read.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<u32>,
    identity: Element,
    inv: Vec<Element>,
    elem_order: Vec<usize>,
    labels: Vec<String>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .field("identity", &self.identity)
            .finish_non_exhaustive()
    }
}

/// A cyclic subgroup in canonical form: its sorted element set.
///
/// Two values compare equal iff their element sets are equal, whichever
/// generator was recorded.
#[derive(Debug, Clone)]
pub struct CyclicSubgroup {
    pub elements: Vec<Element>,
    pub generator: Element,
}

impl CyclicSubgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: Element) -> bool {
        self.elements.binary_search(&x).is_ok()
    }
}

impl PartialEq for CyclicSubgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl Eq for CyclicSubgroup {}

impl std::hash::Hash for CyclicSubgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.elements.hash(state);
    }
}

impl PartialOrd for CyclicSubgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CyclicSubgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.elements.cmp(&other.elements)
    }
}

/// All distinct cyclic subgroups of a group plus, for every element `x`,
/// the position of `<x>` in that list.
#[derive(Debug, Clone)]
pub struct CyclicStructure {
    pub subgroups: Vec<CyclicSubgroup>,
    pub class_of: Vec<usize>,
}

impl FiniteGroup {
    /// Builds a group from a row-major multiplication table.
    ///
    /// Checks that the table is a Latin square with a two-sided identity and
    /// that labels are unique. Associativity is checked separately by
    /// [`FiniteGroup::check_associativity`].
    pub fn from_table(order: usize, table: Vec<Element>, labels: Vec<String>) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidTable("empty group".into()));
        }
        if order > u32::MAX as usize || table.len() != order * order {
            return Err(Error::InvalidTable(format!(
                "table has {} entries, expected {}",
                table.len(),
                order * order
            )));
        }
        if labels.len() != order {
            return Err(Error::InvalidTable(format!(
                "{} labels for {order} elements",
                labels.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&v| v >= order) {
            return Err(Error::IndexOutOfRange { index: bad, order });
        }
        let mut seen = HashMap::with_capacity(order);
        for (i, l) in labels.iter().enumerate() {
            if let Some(j) = seen.insert(l.as_str(), i) {
                return Err(Error::InvalidTable(format!(
                    "label `{l}` used by elements {j} and {i}"
                )));
            }
        }

        let mul: Vec<u32> = table.iter().map(|&v| v as u32).collect();
        let at = |x: usize, y: usize| mul[x * order + y] as usize;

        let identity = (0..order)
            .find(|&e| (0..order).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or_else(|| Error::InvalidTable("no two-sided identity".into()))?;

        let mut mark = vec![false; order];
        for x in 0..order {
            mark.fill(false);
            for y in 0..order {
                let v = at(x, y);
                if mark[v] {
                    return Err(Error::InvalidTable(format!("row {x} repeats element {v}")));
                }
                mark[v] = true;
            }
        }

        let mut inv = vec![0; order];
        for (x, slot) in inv.iter_mut().enumerate() {
            let y = (0..order)
                .find(|&y| at(x, y) == identity)
                .expect("latin row");
            if at(y, x) != identity {
                return Err(Error::InvalidTable(format!(
                    "element {x} has no two-sided inverse"
                )));
            }
            *slot = y;
        }

        let mut elem_order = vec![0; order];
        for (x, slot) in elem_order.iter_mut().enumerate() {
            let mut k = 1;
            let mut p = x;
            while p != identity {
                p = at(p, x);
                k += 1;
                if k > order {
                    return Err(Error::InvalidTable(format!(
                        "element {x} has no finite order"
                    )));
                }
            }
            if !order.is_multiple_of(k) {
                return Err(Error::InvalidTable(format!(
                    "element {x} has order {k}, which does not divide {order}"
                )));
            }
            *slot = k;
        }

        Ok(Self {
            order,
            mul,
            identity,
            inv,
            elem_order,
            labels,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Element {
        self.identity
    }

    /// Table lookup without bounds reporting; panics on a bad index.
    #[inline]
    pub fn mul(&self, x: Element, y: Element) -> Element {
        self.mul[x * self.order + y] as usize
    }

    /// Checked product `x * y`.
    pub fn multiply(&self, x: Element, y: Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul(x, y))
    }

    pub fn check(&self, x: Element) -> Result<()> {
        if x < self.order {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: x,
                order: self.order,
            })
        }
    }

    #[inline]
    pub fn inv(&self, x: Element) -> Element {
        self.inv[x]
    }

    #[inline]
    pub fn elem_order(&self, x: Element) -> usize {
        self.elem_order[x]
    }

    pub fn elem_orders(&self) -> &[usize] {
        &self.elem_order
    }

    pub fn label(&self, x: Element) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn element(&self, x: Element) -> Result<GroupElement> {
        self.check(x)?;
        Ok(GroupElement {
            index: x,
            label: self.labels[x].clone(),
        })
    }

    pub fn index_of(&self, label: &str) -> Option<Element> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> {
        0..self.order
    }

    pub fn pow(&self, x: Element, k: usize) -> Element {
        let k = k % self.elem_order[x];
        let mut acc = self.identity;
        for _ in 0..k {
            acc = self.mul(acc, x);
        }
        acc
    }

    pub fn commute(&self, x: Element, y: Element) -> bool {
        self.mul(x, y) == self.mul(y, x)
    }

    /// `lcm` of all element orders.
    pub fn exponent(&self) -> usize {
        self.elem_order.iter().fold(1, |acc, &o| arith::lcm(acc, o))
    }

    /// Some element generates everything. (Exponent equal to order is not
    /// enough outside p-groups: S3 has exponent 6.)
    pub fn is_cyclic(&self) -> bool {
        self.elem_order.contains(&self.order)
    }

    /// Orders of the non-identity elements, ascending and deduplicated.
    pub fn pi(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.elem_order.iter().copied().filter(|&o| o > 1).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Elements of order exactly `m`.
    pub fn omega(&self, m: usize) -> Vec<Element> {
        (0..self.order)
            .filter(|&x| self.elem_order[x] == m)
            .collect()
    }

    /// `<x>` in canonical form.
    pub fn cyclic_closure(&self, x: Element) -> CyclicSubgroup {
        let mut elements = Vec::with_capacity(self.elem_order[x]);
        let mut p = self.identity;
        loop {
            elements.push(p);
            p = self.mul(p, x);
            if p == self.identity {
                break;
            }
        }
        elements.sort_unstable();
        CyclicSubgroup {
            elements,
            generator: x,
        }
    }

    /// Whether `y` is a power of `x`.
    pub fn in_cyclic(&self, y: Element, x: Element) -> bool {
        if !self.elem_order[x].is_multiple_of(self.elem_order[y]) {
            return false;
        }
        let mut p = self.identity;
        loop {
            if p == y {
                return true;
            }
            p = self.mul(p, x);
            if p == self.identity {
                return false;
            }
        }
    }

    /// Closure of `gens` under multiplication, sorted.
    pub fn generated_subgroup(&self, gens: &[Element]) -> Vec<Element> {
        let mut seen = vec![false; self.order];
        let mut queue = vec![self.identity];
        seen[self.identity] = true;
        let mut head = 0;
        while head < queue.len() {
            let s = queue[head];
            head += 1;
            for &g in gens {
                let t = self.mul(s, g);
                if !seen[t] {
                    seen[t] = true;
                    queue.push(t);
                }
            }
        }
        queue.sort_unstable();
        queue
    }

    /// `<x, y>` by breadth-first closure.
    pub fn two_generated_subgroup(&self, x: Element, y: Element) -> Vec<Element> {
        self.generated_subgroup(&[x, y])
    }

    /// Whether `<x, y>` is cyclic, i.e. contains an element whose order is
    /// the size of the subgroup.
    pub fn is_pair_cyclic(&self, x: Element, y: Element) -> bool {
        if self.in_cyclic(y, x) || self.in_cyclic(x, y) {
            return true;
        }
        let h = self.two_generated_subgroup(x, y);
        let size = h.len();
        h.iter().any(|&z| self.elem_order[z] == size)
    }

    /// Number of cyclic subgroups of order `d`, counted by canonicalising
    /// `<x>` over all `x` of order `d`.
    pub fn class_count(&self, d: usize) -> usize {
        let mut seen: Vec<Vec<Element>> = self
            .omega(d)
            .into_iter()
            .map(|x| self.cyclic_closure(x).elements)
            .collect();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    /// Every distinct cyclic subgroup, with the class index of each element.
    pub fn cyclic_structure(&self) -> CyclicStructure {
        let mut index: HashMap<Vec<Element>, usize> = HashMap::new();
        let mut subgroups: Vec<CyclicSubgroup> = Vec::new();
        let mut class_of = vec![usize::MAX; self.order];
        for x in 0..self.order {
            if class_of[x] != usize::MAX {
                continue;
            }
            let c = self.cyclic_closure(x);
            let id = *index.entry(c.elements.clone()).or_insert_with(|| {
                subgroups.push(c.clone());
                subgroups.len() - 1
            });
            // every generator of <x> shares the class
            for &y in &c.elements {
                if self.elem_order[y] == c.order() {
                    class_of[y] = id;
                }
            }
        }
        for s in &mut subgroups {
            s.generator = s
                .elements
                .iter()
                .copied()
                .find(|&y| self.elem_order[y] == s.elements.len())
                .expect("cyclic subgroup has a generator");
        }
        CyclicStructure {
            subgroups,
            class_of,
        }
    }

    /// Cyclic subgroups not properly contained in another cyclic subgroup,
    /// sorted by element set.
    pub fn maximal_cyclic_subgroups(&self) -> Vec<CyclicSubgroup> {
        let cs = self.cyclic_structure();
        let bits: Vec<FixedBitSet> = cs
            .subgroups
            .iter()
            .map(|s| {
                let mut b = FixedBitSet::with_capacity(self.order);
                for &x in &s.elements {
                    b.insert(x);
                }
                b
            })
            .collect();
        let mut out: Vec<CyclicSubgroup> = cs
            .subgroups
            .iter()
            .filter(|s| {
                !cs.subgroups.iter().zip(&bits).any(|(t, tb)| {
                    t.order() > s.order() && t.order() % s.order() == 0 && tb.contains(s.generator)
                })
            })
            .cloned()
            .collect();
        out.sort();
        out
    }

    pub fn center(&self) -> Vec<Element> {
        (0..self.order)
            .filter(|&z| (0..self.order).all(|g| self.commute(z, g)))
            .collect()
    }

    pub fn is_subgroup(&self, set: &[Element]) -> bool {
        let mut member = vec![false; self.order];
        for &x in set {
            member[x] = true;
        }
        member[self.identity]
            && set
                .iter()
                .all(|&x| member[self.inv[x]] && set.iter().all(|&y| member[self.mul(x, y)]))
    }

    pub fn is_normal_subgroup(&self, set: &[Element]) -> bool {
        if !self.is_subgroup(set) {
            return false;
        }
        let mut member = vec![false; self.order];
        for &x in set {
            member[x] = true;
        }
        (0..self.order).all(|g| {
            set.iter()
                .all(|&x| member[self.mul(self.mul(self.inv[g], x), g)])
        })
    }

    /// Checks associativity: every triple when the order is at most
    /// [`EXHAUSTIVE_ASSOCIATIVITY_LIMIT`], otherwise
    /// [`SAMPLED_ASSOCIATIVITY_TRIPLES`] random triples drawn from `seed`.
    pub fn check_associativity(&self, seed: u64) -> Result<()> {
        let n = self.order;
        let fail = |x, y, z| {
            Err(Error::InvalidTable(format!(
                "({x}*{y})*{z} != {x}*({y}*{z})"
            )))
        };
        if n <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
            for x in 0..n {
                for y in 0..n {
                    let xy = self.mul(x, y);
                    for z in 0..n {
                        if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                            return fail(x, y, z);
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..SAMPLED_ASSOCIATIVITY_TRIPLES {
                let (x, y, z) = (
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                );
                if self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)) {
                    return fail(x, y, z);
                }
            }
        }
        Ok(())
    }

    /// The quotient by a normal subgroup. Returns the quotient group and,
    /// for each element of `self`, the index of its coset. Coset `i` is
    /// represented by its least element; cosets are numbered by
    /// representative.
    pub fn quotient(&self, normal: &[Element]) -> Result<(FiniteGroup, Vec<Element>)> {
        if !self.is_normal_subgroup(normal) {
            return Err(Error::Contract(
                "quotient by a set that is not a normal subgroup".into(),
            ));
        }
        let mut coset_of = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for g in 0..self.order {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(g);
            for &c in normal {
                coset_of[self.mul(g, c)] = id;
            }
        }
        let q = reps.len();
        let mut table = Vec::with_capacity(q * q);
        for &a in &reps {
            for &b in &reps {
                table.push(coset_of[self.mul(a, b)]);
            }
        }
        let labels = reps
            .iter()
            .map(|&r| format!("[{}]", self.labels[r]))
            .collect();
        Ok((FiniteGroup::from_table(q, table, labels)?, coset_of))
    }

    /// Direct product with `self` as the most significant coordinate.
    pub fn direct_product(&self, other: &FiniteGroup) -> FiniteGroup {
        let (n, m) = (self.order, other.order);
        let total = n * m;
        let mut table = Vec::with_capacity(total * total);
        for x in 0..total {
            let (x1, x2) = (x / m, x % m);
            for y in 0..total {
                let (y1, y2) = (y / m, y % m);
                table.push(self.mul(x1, y1) * m + other.mul(x2, y2));
            }
        }
        let labels = (0..total)
            .map(|x| product_label(&self.labels[x / m], &other.labels[x % m]))
            .collect();
        FiniteGroup::from_table(total, table, labels).expect("direct product of groups is a group")
    }
}

/// Joins two coordinate labels into a tuple label, flattening a left tuple
/// so that `((a,b),c)` reads `(a,b,c)`.
fn product_label(left: &str, right: &str) -> String {
    match left.strip_prefix('(').and_then(|l| l.strip_suffix(')')) {
        Some(inner) if inner.contains(',') => format!("({inner},{right})"),
        _ => format!("({left},{right})"),
    }
}
