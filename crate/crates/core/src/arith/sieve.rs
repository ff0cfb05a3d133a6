use std::sync::OnceLock;

use super::ArithError;

/// Default capacity of the shared sieve.
pub const DEFAULT_SIEVE_CAPACITY: u64 = 10_000_000;

/// Sieve of Eratosthenes over `[0, capacity]`.
///
/// Immutable once built; the shared instance from [`default_sieve`] is safe to read from any thread.
#[derive(Debug, Clone)]
pub struct Sieve {
    capacity: u64,
    is_prime: Vec<bool>,
    primes: Vec<u64>,
}

impl Sieve {
    pub fn new(capacity: u64) -> Self {
        let n = capacity as usize;
        let mut is_prime = vec![true; n + 1];
        is_prime[0] = false;
        if n >= 1 {
            is_prime[1] = false;
        }
        let mut i = 2usize;
        while i * i <= n {
            if is_prime[i] {
                let mut j = i * i;
                while j <= n {
                    is_prime[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        let primes = is_prime
            .iter()
            .enumerate()
            .filter_map(|(k, &p)| p.then_some(k as u64))
            .collect();
        Sieve {
            capacity,
            is_prime,
            primes,
        }
    }

    pub fn capacity(&self) -> u64 {
        self.capacity
    }

    fn check(&self, x: u64) -> Result<(), ArithError> {
        if x > self.capacity {
            Err(ArithError::CapacityExceeded {
                requested: x,
                capacity: self.capacity,
            })
        } else {
            Ok(())
        }
    }

    pub fn is_prime(&self, n: u64) -> Result<bool, ArithError> {
        self.check(n)?;
        Ok(self.is_prime[n as usize])
    }

    /// All primes `p <= x`, ascending.
    pub fn primes_up_to(&self, x: u64) -> Result<&[u64], ArithError> {
        self.check(x)?;
        let end = self.primes.partition_point(|&p| p <= x);
        Ok(&self.primes[..end])
    }

    /// π(x) and θ(x) = Σ_{p≤x} ln p. The logarithms are added in ascending order of p.
    pub fn prime_counts(&self, x: u64) -> Result<PrimeCounts, ArithError> {
        if x == 0 {
            return Err(ArithError::Zero);
        }
        let primes = self.primes_up_to(x)?;
        let theta = primes.iter().map(|&p| (p as f64).ln()).sum();
        Ok(PrimeCounts {
            pi: primes.len() as u64,
            theta,
        })
    }

    /// Trial division by the sieve primes, continuing over odd numbers if `n` outgrows them.
    pub fn factorize(&self, n: u64) -> Result<Factorization, ArithError> {
        if n == 0 {
            return Err(ArithError::Zero);
        }
        let mut rest = n;
        let mut factors = Vec::new();
        let mut take = |rest: &mut u64, p: u64| {
            let mut e = 0;
            while (*rest).is_multiple_of(p) {
                *rest /= p;
                e += 1;
            }
            if e > 0 {
                factors.push((p, e));
            }
        };
        let mut exhausted = true;
        for &p in &self.primes {
            if p.saturating_mul(p) > rest {
                exhausted = false;
                break;
            }
            take(&mut rest, p);
        }
        if exhausted {
            let mut d = match self.primes.last() {
                None => 2,
                Some(&2) => 3,
                Some(&p) => p + 2,
            };
            while d.saturating_mul(d) <= rest {
                take(&mut rest, d);
                d += if d == 2 { 1 } else { 2 };
            }
        }
        if rest > 1 {
            factors.push((rest, 1));
        }
        Ok(Factorization { base: n, factors })
    }
}

static SHARED: OnceLock<Sieve> = OnceLock::new();

/// Process-wide sieve of capacity [`DEFAULT_SIEVE_CAPACITY`], built on first use.
pub fn default_sieve() -> &'static Sieve {
    SHARED.get_or_init(|| Sieve::new(DEFAULT_SIEVE_CAPACITY))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrimeCounts {
    pub pi: u64,
    pub theta: f64,
}

/// Prime factorization `base = Π prime^exponent`, primes strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub base: u64,
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// The prime set P(n).
    pub fn primes(&self) -> Vec<u64> {
        self.factors.iter().map(|&(p, _)| p).collect()
    }

    /// ord_p n; zero when p does not divide n.
    pub fn ord(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }

    pub fn smallest_prime(&self) -> Option<u64> {
        self.factors.first().map(|&(p, _)| p)
    }

    pub fn largest_prime(&self) -> Option<u64> {
        self.factors.last().map(|&(p, _)| p)
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division(mut n: u64) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        let mut d = 2;
        while n > 1 {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            if e > 0 {
                out.push((d, e));
            }
            d += 1;
        }
        out
    }

    #[test]
    fn small_factorizations() {
        let s = Sieve::new(100);
        assert!(s.factorize(1).unwrap().factors.is_empty());
        let f = s.factorize(12).unwrap();
        assert_eq!(f.factors, vec![(2, 2), (3, 1)]);
        assert_eq!(f.ord(2), 2);
        assert_eq!(f.ord(5), 0);
        assert_eq!(s.factorize(0), Err(ArithError::Zero));
        for n in 1..3000 {
            assert_eq!(s.factorize(n).unwrap().factors, trial_division(n), "n={n}");
        }
    }

    #[test]
    fn factorize_beyond_sieve_primes() {
        let s = Sieve::new(10);
        assert_eq!(Sieve::new(1).factorize(360).unwrap().factors, vec![(2, 3), (3, 2), (5, 1)]);
        // 101 * 103, both above the sieve
        assert_eq!(s.factorize(10403).unwrap().factors, vec![(101, 1), (103, 1)]);
        assert_eq!(s.factorize(2 * 49 * 121).unwrap().factors, vec![(2, 1), (7, 2), (11, 2)]);
    }

    #[test]
    fn counts() {
        let s = Sieve::new(1000);
        let c = s.prime_counts(1).unwrap();
        assert_eq!((c.pi, c.theta), (0, 0.0));
        let c = s.prime_counts(10).unwrap();
        assert_eq!(c.pi, 4);
        assert!((c.theta - 210f64.ln()).abs() < 1e-12);
        for x in 3..=1000 {
            assert!(s.prime_counts(x).unwrap().pi <= x / 2 + 1);
        }
        assert!(matches!(s.prime_counts(1001), Err(ArithError::CapacityExceeded { .. })));
    }
}
