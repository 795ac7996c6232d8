//! Small integer helpers shared by the group and field code.

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(mut n: u128) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d: u128 = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d as u64);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n as u64);
    }
    out
}

/// The largest power of `p` dividing `n`.
pub fn p_part(mut n: u128, p: u64) -> u128 {
    let p = p as u128;
    let mut part = 1;
    while n > 0 && n % p == 0 {
        n /= p;
        part *= p;
    }
    part
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Whether `n` is a prime power `r^a` with `a >= 1`.
pub fn is_prime_power(n: u64) -> bool {
    prime_divisors(n as u128).len() == 1
}

/// A set of primes, or the complement of one (used for `q'`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeSet {
    primes: Vec<u64>,
    complement: bool,
}

impl PrimeSet {
    pub fn of(primes: &[u64]) -> Self {
        let mut primes = primes.to_vec();
        primes.sort_unstable();
        primes.dedup();
        PrimeSet { primes, complement: false }
    }

    pub fn single(p: u64) -> Self {
        Self::of(&[p])
    }

    /// All primes except `p`.
    pub fn excluding(p: u64) -> Self {
        PrimeSet { primes: vec![p], complement: true }
    }

    pub fn contains(&self, r: u64) -> bool {
        self.primes.binary_search(&r).is_ok() != self.complement
    }

    /// Whether every prime divisor of `n` lies in the set.
    pub fn admits(&self, n: u128) -> bool {
        prime_divisors(n).into_iter().all(|r| self.contains(r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_helpers() {
        assert!(is_prime(13) && !is_prime(1) && !is_prime(91));
        assert_eq!(prime_divisors(1053), vec![3, 13]);
        assert_eq!(p_part(4080, 2), 16);
        assert_eq!(p_part(7, 2), 1);
        assert!(is_prime_power(27) && !is_prime_power(6) && !is_prime_power(1));
    }

    #[test]
    fn prime_sets() {
        let q_prime = PrimeSet::excluding(2);
        assert!(q_prime.admits(27) && q_prime.admits(1) && !q_prime.admits(6));
        assert!(PrimeSet::of(&[2, 3]).admits(24));
    }
}
