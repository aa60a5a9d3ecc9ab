//! Integer helpers: gcd, factorization, divisors, Euler's totient and the Möbius function.
//!
//! Everything uses trial division, which is plenty for moduli up to the 2^20 cap.

pub fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Prime factorization as `(prime, exponent)` pairs in increasing prime order.
pub fn factorize(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
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

/// All positive divisors of `n`, ascending. `divisors(0)` is empty.
pub fn divisors(n: usize) -> Vec<usize> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
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

pub fn totient(n: usize) -> usize {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

pub fn mobius(n: usize) -> i64 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `Some((p, alpha))` when `n = p^alpha` with `alpha >= 1`.
pub fn prime_power(n: usize) -> Option<(usize, u32)> {
    match factorize(n).as_slice() {
        [(p, e)] => Some((*p, *e)),
        _ => None,
    }
}

pub fn is_prime(n: usize) -> bool {
    matches!(factorize(n).as_slice(), [(_, 1)])
}

/// Reduce a signed integer into `0..n`.
pub fn modulo(x: i64, n: usize) -> usize {
    x.rem_euclid(n as i64) as usize
}

pub fn is_unit(b: usize, n: usize) -> bool {
    gcd(b % n, n) == 1
}

/// Units of Z_n in increasing order.
pub fn units(n: usize) -> Vec<usize> {
    if n == 1 {
        return vec![0];
    }
    (1..n).filter(|&b| gcd(b, n) == 1).collect()
}

pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u64;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn totient_and_mobius_small_values() {
        let phi: Vec<_> = (1..=12).map(totient).collect();
        assert_eq!(phi, vec![1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]);
        let mu: Vec<_> = (1..=12).map(mobius).collect();
        assert_eq!(mu, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]);
    }

    #[test]
    fn totient_matches_coprime_count() {
        for n in 1..200 {
            let brute = (1..=n).filter(|&k| gcd(k, n) == 1).count();
            assert_eq!(totient(n), brute, "n={n}");
        }
    }

    #[test]
    fn divisors_and_prime_powers() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(9), vec![1, 3, 9]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(prime_power(27), Some((3, 3)));
        assert_eq!(prime_power(16), Some((2, 4)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
        assert!(is_prime(5) && !is_prime(9));
    }

    #[test]
    fn isqrt_exact() {
        for n in 0..10_000u64 {
            let r = isqrt(n);
            assert!(r * r <= n && (r + 1) * (r + 1) > n);
        }
    }
}
