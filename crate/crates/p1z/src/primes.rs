//! Prime sieve and factorization by trial division.
//!
//! A single read-only sieve of Eratosthenes up to [`SIEVE_BOUND`] backs all
//! primality checks and factorizations. Inputs with a prime factor at or
//! above the bound are rejected rather than silently mis-factored; every
//! number this library actually needs to factor (orders of `H^0(Z, O_Z)`,
//! Gram determinants built from factorials) has only small prime factors.

use alloc::boxed::Box;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use once_cell::race::OnceBox;

use crate::error::{Error, Result};

/// Exclusive upper bound of the sieve.
pub const SIEVE_BOUND: u64 = 1_000_000;

static PRIMES: OnceBox<Vec<u32>> = OnceBox::new();

/// All primes below [`SIEVE_BOUND`], ascending. Computed once.
pub fn sieve() -> &'static [u32] {
    PRIMES.get_or_init(|| {
        let n = SIEVE_BOUND as usize;
        let mut composite = vec![false; n];
        let mut primes = Vec::with_capacity(78_498);
        for i in 2..n {
            if !composite[i] {
                primes.push(i as u32);
                let mut j = i * i;
                while j < n {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        Box::new(primes)
    })
}

/// True iff `n` is a prime below [`SIEVE_BOUND`].
pub fn is_sieved_prime(n: u64) -> bool {
    n < SIEVE_BOUND && sieve().binary_search(&(n as u32)).is_ok()
}

/// Validates that `p` is a prime the sieve can certify, on behalf of `op`.
pub fn ensure_prime(op: &'static str, p: u64) -> Result<()> {
    if p >= SIEVE_BOUND {
        return Err(Error::Domain {
            op,
            reason: format!("{p} exceeds the prime sieve bound {SIEVE_BOUND}"),
        });
    }
    if !is_sieved_prime(p) {
        return Err(Error::Domain {
            op,
            reason: format!("{p} is not prime"),
        });
    }
    Ok(())
}

/// Factors `n >= 1` into `[(p, e)]` with `p` ascending.
///
/// Fails if a factor at or above [`SIEVE_BOUND`] remains after trial
/// division.
pub fn factorize(op: &'static str, n: &BigUint) -> Result<Vec<(u64, u64)>> {
    if n.is_zero() {
        return Err(Error::Domain {
            op,
            reason: "cannot factor 0".into(),
        });
    }
    let mut rest = n.clone();
    let mut factors = Vec::new();
    let one = BigUint::one();
    for &p in sieve() {
        if rest == one {
            break;
        }
        let p_big = BigUint::from(p);
        // Once p^2 exceeds the remainder, the remainder is prime; accept
        // it only when the sieve could certify it itself.
        if BigUint::from(p) * BigUint::from(p) > rest {
            match rest.to_u64() {
                Some(q) if q < SIEVE_BOUND => {
                    factors.push((q, 1));
                    rest = one.clone();
                }
                _ => {}
            }
            break;
        }
        let mut e = 0u64;
        loop {
            let (q, r) = num_integer::div_rem(rest.clone(), p_big.clone());
            if r.is_zero() {
                rest = q;
                e += 1;
            } else {
                break;
            }
        }
        if e > 0 {
            factors.push((u64::from(p), e));
        }
    }
    if rest != one {
        return Err(Error::Domain {
            op,
            reason: format!("a factor of {n} is not below the sieve bound {SIEVE_BOUND}"),
        });
    }
    Ok(factors)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sieve_counts_primes_below_bound() {
        assert_eq!(sieve().len(), 78_498);
        assert_eq!(sieve()[0], 2);
        assert_eq!(*sieve().last().unwrap(), 999_983);
    }

    #[test]
    fn primality() {
        assert!(is_sieved_prime(2));
        assert!(is_sieved_prime(999_983));
        assert!(!is_sieved_prime(1));
        assert!(!is_sieved_prime(0));
        assert!(!is_sieved_prime(54));
        assert!(ensure_prime("test", 4).is_err());
        assert!(ensure_prime("test", SIEVE_BOUND + 1).is_err());
    }

    #[test]
    fn factorization_matches_naive_trial_division() {
        // Independent oracle: naive trial division over all integers.
        fn naive(mut n: u64) -> Vec<(u64, u64)> {
            let mut out = Vec::new();
            let mut d = 2;
            while d * d <= n {
                let mut e = 0;
                while n % d == 0 {
                    n /= d;
                    e += 1;
                }
                if e > 0 {
                    out.push((d, e));
                }
                d += 1;
            }
            if n > 1 {
                out.push((n, 1));
            }
            out
        }
        for n in 1..2000u64 {
            assert_eq!(
                factorize("test", &BigUint::from(n)).unwrap(),
                naive(n),
                "n = {n}"
            );
        }
    }

    #[test]
    fn factorization_of_factorial_products() {
        // 10! = 2^8 3^4 5^2 7
        let mut f = BigUint::one();
        for i in 1..=10u32 {
            f *= BigUint::from(i);
        }
        assert_eq!(
            factorize("test", &f).unwrap(),
            vec![(2, 8), (3, 4), (5, 2), (7, 1)]
        );
    }

    #[test]
    fn factor_beyond_bound_is_rejected() {
        // 1_000_003 is prime and above the sieve bound.
        let n = BigUint::from(1_000_003u64) * BigUint::from(4u64);
        assert!(matches!(factorize("test", &n), Err(Error::Domain { .. })));
    }
}
