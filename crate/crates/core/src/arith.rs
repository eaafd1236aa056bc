//! Small exact integer helpers.

pub fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub fn lcm(a: usize, b: usize) -> usize {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// Prime factorisation by trial division, primes ascending.
pub fn factorize(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: usize) -> Vec<usize> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

pub fn is_prime(n: usize) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

/// Euler's totient.
pub fn phi(n: usize) -> usize {
    if n == 0 {
        return 0;
    }
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Largest power of `p` dividing `n` (the `p`-part of `n`).
pub fn p_part(n: usize, p: usize) -> usize {
    let mut n = n;
    let mut part = 1;
    while n > 0 && n.is_multiple_of(p) {
        n /= p;
        part *= p;
    }
    part
}

/// `Some(k)` when `n == p^k`.
pub fn log_exact(n: usize, p: usize) -> Option<u32> {
    if n == 0 || p < 2 {
        return None;
    }
    let mut n = n;
    let mut k = 0;
    while n.is_multiple_of(p) {
        n /= p;
        k += 1;
    }
    (n == 1).then_some(k)
}

/// Divisors of `n`, ascending.
pub fn divisors(n: usize) -> Vec<usize> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Inverse of `a` modulo `m` for coprime `a`, `m`.
pub fn mod_inverse(a: usize, m: usize) -> Option<usize> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i64 % m as i64, m as i64);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(m as i64) as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn totient_by_counting() {
        for n in 1..200 {
            let count = (1..=n).filter(|&k| gcd(k, n) == 1).count();
            assert_eq!(phi(n), count, "phi({n})");
        }
    }

    #[test]
    fn factorize_roundtrip() {
        for n in 2..500 {
            let f = factorize(n);
            assert_eq!(f.iter().map(|&(p, e)| p.pow(e)).product::<usize>(), n);
            assert!(f.iter().all(|&(p, _)| is_prime(p)));
            assert!(f.windows(2).all(|w| w[0].0 < w[1].0));
        }
    }

    #[test]
    fn helpers() {
        assert_eq!(lcm(4, 6), 12);
        assert_eq!(p_part(72, 2), 8);
        assert_eq!(p_part(72, 3), 9);
        assert_eq!(p_part(72, 5), 1);
        assert_eq!(log_exact(32, 2), Some(5));
        assert_eq!(log_exact(24, 2), None);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(mod_inverse(3, 8), Some(3));
        assert_eq!(mod_inverse(2, 8), None);
    }
}
