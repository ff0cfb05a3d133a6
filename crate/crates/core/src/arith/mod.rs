//! Exact integer and rational arithmetic, plus the prime utilities everything else leans on.

mod scalar;
mod sieve;

use num_bigint::BigUint;
use num_integer::Integer;
use thiserror::Error;

pub use scalar::{divisor_reciprocal_sum, euler_product, Scalar};
pub use sieve::{default_sieve, Factorization, PrimeCounts, Sieve, DEFAULT_SIEVE_CAPACITY};

use crate::ExactRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("argument must be a positive integer, got 0")]
    Zero,
    #[error("empty input list")]
    Empty,
    #[error("{requested} exceeds the sieve capacity {capacity}")]
    CapacityExceeded { requested: u64, capacity: u64 },
}

pub fn factorize(n: u64) -> Result<Factorization, ArithError> {
    default_sieve().factorize(n)
}

/// Euler's totient, computed multiplicatively from the factorization.
pub fn euler_phi(n: u64) -> Result<u64, ArithError> {
    Ok(phi_of(&factorize(n)?))
}

pub(crate) fn phi_of(f: &Factorization) -> u64 {
    f.factors
        .iter()
        .map(|&(p, e)| (p - 1) * p.pow(e - 1))
        .product()
}

/// All divisors of `n`, ascending.
pub fn divisor_list(n: u64) -> Result<Vec<u64>, ArithError> {
    let f = factorize(n)?;
    Ok(divisors_of(&f))
}

pub(crate) fn divisors_of(f: &Factorization) -> Vec<u64> {
    let mut divs = vec![1u64];
    for &(p, e) in &f.factors {
        let len = divs.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    divs
}

/// Greatest common divisor and least common multiple of a nonempty list of positive integers.
///
/// The lcm is arbitrary precision; use [`lcm_u64`] where a machine-word result is required.
pub fn gcd_lcm(values: &[u64]) -> Result<(u64, BigUint), ArithError> {
    if values.is_empty() {
        return Err(ArithError::Empty);
    }
    if values.contains(&0) {
        return Err(ArithError::Zero);
    }
    let g = values.iter().fold(0u64, |g, &v| g.gcd(&v));
    let l = values
        .iter()
        .fold(BigUint::from(1u32), |l, &v| l.lcm(&BigUint::from(v)));
    Ok((g, l))
}

pub fn gcd_all(values: &[u64]) -> u64 {
    values.iter().fold(0u64, |g, &v| g.gcd(&v))
}

/// lcm of the values, `None` on overflow. The lcm of an empty list is 1.
pub fn lcm_u64(values: &[u64]) -> Option<u64> {
    values.iter().try_fold(1u64, |l, &v| {
        if v == 0 {
            return None;
        }
        (l / l.gcd(&v)).checked_mul(v)
    })
}

/// ∏_{p≤x} p/(p−1), exactly. The empty product (x < 2) is 1.
pub fn mertens_product(x: u64) -> Result<ExactRational, ArithError> {
    let (num, den) = mertens_fraction(x)?;
    Ok(ExactRational::new(num.into(), den.into()))
}

/// Unreduced `(∏ p, ∏ (p−1))` over the primes `p ≤ x`.
pub fn mertens_fraction(x: u64) -> Result<(BigUint, BigUint), ArithError> {
    if x == 0 {
        return Err(ArithError::Zero);
    }
    let primes = default_sieve().primes_up_to(x)?;
    let num = primes.iter().fold(BigUint::from(1u32), |a, &p| a * p);
    let den = primes.iter().fold(BigUint::from(1u32), |a, &p| a * (p - 1));
    Ok((num, den))
}

/// [`mertens_product`] evaluated in any [`Scalar`].
pub fn mertens_product_in<T: Scalar>(x: u64) -> Result<T, ArithError> {
    if x == 0 {
        return Err(ArithError::Zero);
    }
    Ok(euler_product(default_sieve().primes_up_to(x)?))
}

pub fn prime_counts(x: u64) -> Result<PrimeCounts, ArithError> {
    default_sieve().prime_counts(x)
}

pub fn is_prime(n: u64) -> bool {
    match default_sieve().is_prime(n) {
        Ok(b) => b,
        Err(_) => n > 1 && factorize(n).map(|f| f.factors == [(n, 1)]).unwrap_or(false),
    }
}
