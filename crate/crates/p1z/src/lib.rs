//! Exact invariants of rank-two vector bundles on the projective line over
//! the integers.
//!
//! A rank-two locally free sheaf on the arithmetic surface `P^1_Z` is
//! classified by a triple `(a, b, Z)`: two twists `a >= b` and a
//! zero-dimensional local complete intersection `Z` recording where the
//! sheaf fails to split. Everything this crate computes is a function of
//! that triple, and every quantity is kept exact:
//!
//! * rationals are arbitrary-precision fractions in lowest terms,
//! * Arakelov-theoretic values live in the module spanned by `1`,
//!   `zeta'(-1)` and the logarithms of primes (see
//!   [`arakelov::ArakelovNumber`]), collapsing to decimal output only at
//!   the boundary.
//!
//! The main modules:
//!
//! * [`arakelov`] — the exact value type and prime-logarithm expansions.
//! * [`sheaf`] — triples, cohomology profiles, fiberwise splitting types,
//!   decomposability.
//! * [`birkhoff`] — an independent splitting-type algorithm working on
//!   Laurent-polynomial transition matrices over prime fields.
//! * [`invariants`] — arithmetic Chern classes, discriminant, Arakelov
//!   degrees, analytic torsion, and the Riemann-Roch identity with its
//!   dual-route checks.
//! * [`oracle`] — floating-point verification: a Glaisher-limit
//!   computation of `zeta'(-1)` and adaptive quadrature for the L2 Gram
//!   integrals. Oracle outputs are never fed back into exact arithmetic.
//!
//! All values are immutable and all operations are pure functions; the one
//! piece of global state is a read-only prime sieve initialized on first
//! use. The crate is `no_std`-compatible (requires `alloc`).
//!
//! ```
//! use p1z::invariants::{chern_classes, chi_q_rank2, discriminant};
//! use p1z::sheaf::{fiber_splitting, Fiber, SplittingType, Triple};
//!
//! // The indecomposable bundle with a single jump over p = 2.
//! let t: Triple = "-1,-1;2:1".parse()?;
//! assert_eq!(
//!     fiber_splitting(&t, Fiber::At(2))?,
//!     SplittingType::new(0, -2)
//! );
//! assert_eq!(chern_classes(&t).c1_twist(), -2);
//!
//! // chi_Q = -log 2 - 4 zeta'(-1), exactly.
//! let chi = chi_q_rank2(&t);
//! assert_eq!(chi.to_string(), "-4*zeta'(-1) - log(2)");
//! assert!((chi.numeric_f64() - (-0.031_462_605_8)).abs() < 1e-9);
//!
//! // discriminant 4 log 2, cross-checked through both routes
//! assert_eq!(discriminant(&t)?.to_string(), "4*log(2)");
//! # Ok::<(), p1z::Error>(())
//! ```

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod arakelov;
pub mod birkhoff;
pub mod error;
pub mod highprec;
pub mod invariants;
pub mod oracle;
pub mod primes;
pub mod sheaf;

pub use arakelov::ArakelovNumber;
pub use error::Error;

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

pub(crate) mod rat {
    use super::Rational;
    use num_bigint::BigInt;

    pub fn of(num: i64, den: i64) -> Rational {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    pub fn int(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }
}
