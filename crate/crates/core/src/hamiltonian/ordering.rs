//! Block ordering of the element orders of a nilpotent group with several
//! prime divisors.
//!
//! With the primes of the exponent listed in descending order
//! `p_1 > ... > p_k`, block `(i, j)` holds the element orders whose
//! `p_i`-part is exactly `p_i^j` and whose `p_l`-parts vanish for `l < i`.
//! Blocks run over `i` ascending and, within a prime, `j` descending.

use serde::Serialize;

use crate::arith;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PiBlock {
    pub prime: usize,
    pub power: u32,
    /// Element orders, in walk order.
    pub orders: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PiOrdering {
    /// `(p, alpha)` for each prime of the exponent, descending.
    pub primes: Vec<(usize, u32)>,
    pub blocks: Vec<PiBlock>,
}

impl PiOrdering {
    /// All orders, block after block.
    pub fn orders(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().flat_map(|b| b.orders.iter().copied())
    }
}

pub fn pi_ordering(gprime: &FiniteGroup) -> Result<PiOrdering> {
    pi_ordering_for_exponent(gprime.exponent())
}

fn valuation(mut m: usize, p: usize) -> u32 {
    let mut v = 0;
    while m.is_multiple_of(p) {
        m /= p;
        v += 1;
    }
    v
}

pub fn pi_ordering_for_exponent(exp: usize) -> Result<PiOrdering> {
    let mut primes: Vec<(usize, u32)> = arith::factorize(exp);
    primes.reverse();
    match primes.as_slice() {
        [] | [_] => {
            return Err(Error::Contract(format!(
                "exponent {exp} has a single prime divisor; use the p-group builder"
            )))
        }
        [(_, 1), (_, 1)] => {
            return Err(Error::Contract(format!(
                "exponent {exp} is a product of two distinct primes; it has its own walk"
            )))
        }
        _ => {}
    }
    let divisors: Vec<usize> = arith::divisors(exp)
        .into_iter()
        .filter(|&m| m > 1)
        .collect();
    let last_prime = primes.last().unwrap().0;
    let mut blocks = Vec::new();
    for (i, &(p, alpha)) in primes.iter().enumerate() {
        for j in (1..=alpha).rev() {
            let mut orders: Vec<usize> = divisors
                .iter()
                .copied()
                .filter(|&m| valuation(m, p) == j && primes[..i].iter().all(|&(q, _)| m % q != 0))
                .collect();
            orders.sort_unstable();
            if i == 0 && j == alpha {
                let lead = p.pow(alpha) * last_prime;
                let at = orders
                    .iter()
                    .position(|&m| m == lead)
                    .expect("lead order divides exp");
                let m = orders.remove(at);
                orders.insert(0, m);
            }
            blocks.push(PiBlock {
                prime: p,
                power: j,
                orders,
            });
        }
    }
    Ok(PiOrdering { primes, blocks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponent_eighteen() {
        let o = pi_ordering_for_exponent(18).unwrap();
        let blocks: Vec<Vec<usize>> = o.blocks.iter().map(|b| b.orders.clone()).collect();
        assert_eq!(blocks, vec![vec![18, 9], vec![3, 6], vec![2]]);
        assert_eq!(o.primes, vec![(3, 2), (2, 1)]);
    }

    #[test]
    fn rejects_single_prime_and_two_prime_squarefree() {
        assert!(matches!(
            pi_ordering_for_exponent(8),
            Err(Error::Contract(_))
        ));
        assert!(matches!(
            pi_ordering_for_exponent(15),
            Err(Error::Contract(_))
        ));
        assert!(pi_ordering_for_exponent(1).is_err());
    }

    #[test]
    fn blocks_partition_the_divisors() {
        for exp in [12, 18, 30, 36, 60, 72, 90, 100, 105, 180, 210, 360] {
            let o = pi_ordering_for_exponent(exp).unwrap();
            let mut got: Vec<usize> = o.orders().collect();
            got.sort_unstable();
            let want: Vec<usize> = arith::divisors(exp)
                .into_iter()
                .filter(|&m| m > 1)
                .collect();
            assert_eq!(got, want, "exp {exp}");
            let (p1, a1) = o.primes[0];
            let pk = o.primes.last().unwrap().0;
            assert_eq!(o.blocks[0].orders[0], p1.pow(a1) * pk);
            for b in &o.blocks[1..] {
                assert!(b.orders.windows(2).all(|w| w[0] < w[1]));
            }
            // last prime: singleton blocks of its pure powers
            for b in o.blocks.iter().filter(|b| b.prime == pk) {
                assert_eq!(b.orders, vec![pk.pow(b.power)]);
            }
        }
    }
}
