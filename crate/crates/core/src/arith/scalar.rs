//! Scalar abstraction shared by the exact and the floating-point paths.
//!
//! Densities, Mertens products and inequality sides are written once against [`Scalar`] and
//! instantiated either with [`ExactRational`](crate::ExactRational), which every gating check
//! uses, or with `f64`/`f32` for diagnostics and cross-checks.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, ToPrimitive};

pub trait Scalar: Num + Clone + PartialOrd + Debug + FromPrimitive + ToPrimitive {
    fn from_u64_exact(n: u64) -> Self {
        Self::from_u64(n).expect("u64 is representable in every scalar type")
    }

    /// `num / den`; panics on a zero denominator.
    fn ratio(num: u64, den: u64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_u64_exact(num) / Self::from_u64_exact(den)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
impl Scalar for BigRational {
    fn from_u64_exact(n: u64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}

/// ∏_{p ∈ primes} p/(p−1).
pub fn euler_product<T: Scalar>(primes: &[u64]) -> T {
    primes
        .iter()
        .fold(T::one(), |acc, &p| acc * T::ratio(p, p - 1))
}

/// Σ_{d | n} 1/d, from the factorization of n as ∏ (1 + 1/p + … + 1/p^e).
pub fn divisor_reciprocal_sum<T: Scalar>(factors: &[(u64, u32)]) -> T {
    factors.iter().fold(T::one(), |acc, &(p, e)| {
        let mut term = T::one();
        let mut pow = T::one();
        let inv = T::ratio(1, p);
        for _ in 0..e {
            pow = pow * inv.clone();
            term = term + pow.clone();
        }
        acc * term
    })
}
