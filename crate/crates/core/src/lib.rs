//! Covering systems of the integers and coset covers of finite groups.
//!
//! The crate turns the classical statements about uniform covers into executable checks:
//!
//! * [`arith`]: exact arithmetic, the shared prime sieve, totients and Mertens products.
//! * [`zcover`]: residue-class systems over ℤ, densities, the divisor-closure measure and the
//!   ℤ-specific inequalities (Rogers, Simpson/Burshtein, the cyclic index bound).
//! * [`bounds`]: the `c(M)` pipeline bounding the indices of a uniform cover in terms of the
//!   maximal multiplicity `M`.
//! * [`group`]: Cayley-table groups built from permutations, subgroup lattices, cores,
//!   subnormality, Sylow/Hall subgroups and composition-series searches.
//! * [`gcover`]: coset systems over finite groups, uniform-cover enumeration, the coset-union
//!   inequalities and the exhaustive search for partitions with pairwise distinct indices.
//! * [`io`]: the text formats for covers, groups and coset systems.
//!
//! Every inequality that gates a result is decided in [`ExactRational`]; floats only appear where
//! a logarithm is intrinsic to the statement.

pub mod arith;
pub mod bounds;
pub mod gcover;
pub mod group;
pub mod io;
pub mod zcover;

pub use arith::Scalar;

/// Reduced fraction of arbitrary-precision integers.
pub type ExactRational = num_rational::BigRational;

/// Floating-point scalar used by diagnostics.
pub type Real = f64;

/// Element id inside a [`group::FiniteGroup`].
pub type ElementId = u32;

pub(crate) fn rational(num: u64, den: u64) -> ExactRational {
    <ExactRational as Scalar>::ratio(num, den)
}

pub(crate) fn integer(n: u64) -> ExactRational {
    <ExactRational as Scalar>::from_u64_exact(n)
}

/// Deterministic generator behind every seeded random instance.
pub type SeededRng = rand_chacha::ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SeededRng {
    <SeededRng as rand::SeedableRng>::seed_from_u64(seed)
}
