//! Fixed-point arithmetic of configurable precision over `BigInt`.
//!
//! A [`BigFixed`] stores `v / 2^bits` exactly. This is all the numeric
//! machinery the crate needs: additions and multiplications round to the
//! working scale, and natural logarithms of machine-size integers are
//! computed by an `atanh` series after binary argument reduction. Callers
//! pick the working scale with a generous guard over the decimal digits
//! they intend to print.

use alloc::format;
use alloc::string::{String, ToString};
use core::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{Float, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::Rational;

/// `zeta'(-1) = 1/12 - log A` with `A` the Glaisher-Kinkelin constant,
/// correct to 49 decimal places. Verified against the independent
/// Glaisher-limit computation in [`crate::oracle`] (see the oracle tests).
pub const ZETA_PRIME_NEG1_DECIMAL: &str = "-0.1654211437004509292139196602427806427640363803352";

/// Largest decimal precision [`crate::ArakelovNumber::numeric_value`]
/// accepts; bounded by the stored accuracy of [`ZETA_PRIME_NEG1_DECIMAL`].
pub const MAX_NUMERIC_PRECISION: u32 = 40;

/// Working scale (fractional bits) that keeps roughly `digits` decimal
/// digits plus a guard margin.
pub fn bits_for_digits(digits: u32) -> u32 {
    (digits * 10).div_ceil(3) + 32
}

/// Fixed-point number `v / 2^bits`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigFixed {
    bits: u32,
    v: BigInt,
}

/// Rounding division `a / b` for `b > 0`, half away from zero-ish
/// (half toward positive infinity); the bias is absorbed by guard bits.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    ((a << 1u32) + b).div_floor(&(b << 1u32))
}

impl BigFixed {
    pub fn zero(bits: u32) -> Self {
        BigFixed {
            bits,
            v: BigInt::zero(),
        }
    }

    pub fn from_int(n: i64, bits: u32) -> Self {
        BigFixed {
            bits,
            v: BigInt::from(n) << bits,
        }
    }

    pub fn from_rational(q: &Rational, bits: u32) -> Self {
        BigFixed {
            bits,
            v: div_round(&(q.numer() << bits), q.denom()),
        }
    }

    /// Parses a plain decimal literal like `-0.1654`.
    pub fn from_decimal_str(s: &str, bits: u32) -> Result<Self> {
        let (sign, rest) = match s.strip_prefix('-') {
            Some(r) => (-1, r),
            None => (1, s.strip_prefix('+').unwrap_or(s)),
        };
        let (int_part, frac_part) = match rest.split_once('.') {
            Some((i, f)) => (i, f),
            None => (rest, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(Error::Parse {
                pos: 0,
                reason: "empty decimal literal".into(),
            });
        }
        let mut digits = BigInt::zero();
        for (pos, c) in rest.char_indices() {
            if c == '.' {
                continue;
            }
            let d = c.to_digit(10).ok_or(Error::Parse {
                pos,
                reason: format!("unexpected character {c:?} in decimal literal"),
            })?;
            digits = digits * 10 + d;
        }
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        Ok(BigFixed {
            bits,
            v: div_round(&((digits * sign) << bits), &scale),
        })
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    fn assert_same_scale(&self, rhs: &Self) {
        assert_eq!(self.bits, rhs.bits, "BigFixed scale mismatch");
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.assert_same_scale(rhs);
        BigFixed {
            bits: self.bits,
            v: &self.v + &rhs.v,
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.assert_same_scale(rhs);
        BigFixed {
            bits: self.bits,
            v: &self.v - &rhs.v,
        }
    }

    pub fn neg(&self) -> Self {
        BigFixed {
            bits: self.bits,
            v: -&self.v,
        }
    }

    pub fn abs(&self) -> Self {
        BigFixed {
            bits: self.bits,
            v: self.v.abs(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.assert_same_scale(rhs);
        BigFixed {
            bits: self.bits,
            v: div_round(&(&self.v * &rhs.v), &(BigInt::one() << self.bits)),
        }
    }

    pub fn mul_int(&self, n: i64) -> Self {
        BigFixed {
            bits: self.bits,
            v: &self.v * n,
        }
    }

    pub fn mul_rational(&self, q: &Rational) -> Self {
        BigFixed {
            bits: self.bits,
            v: div_round(&(&self.v * q.numer()), q.denom()),
        }
    }

    pub fn div_int(&self, n: i64) -> Self {
        BigFixed {
            bits: self.bits,
            v: div_round(&self.v, &BigInt::from(n)),
        }
    }

    pub fn cmp_value(&self, rhs: &Self) -> Ordering {
        self.assert_same_scale(rhs);
        self.v.cmp(&rhs.v)
    }

    /// True iff `|self| < 10^exp10`.
    pub fn abs_below_pow10(&self, exp10: i32) -> bool {
        let abs = self.v.abs();
        if exp10 >= 0 {
            abs < (BigInt::from(10u32).pow(exp10 as u32) << self.bits)
        } else {
            abs * BigInt::from(10u32).pow((-exp10) as u32) < (BigInt::one() << self.bits)
        }
    }

    pub fn to_f64(&self) -> f64 {
        let approx = self.v.to_f64().unwrap_or(f64::NAN);
        approx * Float::powi(2.0_f64, -(self.bits as i32))
    }

    /// Decimal rendering with exactly `places` fractional digits,
    /// rounded to nearest.
    pub fn to_decimal(&self, places: u32) -> String {
        let scaled = div_round(
            &(&self.v * BigInt::from(10u32).pow(places)),
            &(BigInt::one() << self.bits),
        );
        let neg = scaled.sign() == Sign::Minus;
        let digits = scaled.abs().to_string();
        let places = places as usize;
        let padded = if digits.len() <= places {
            format!("{}{}", "0".repeat(places + 1 - digits.len()), digits)
        } else {
            digits
        };
        let (int_part, frac_part) = padded.split_at(padded.len() - places);
        let mut out = String::new();
        if neg && padded.bytes().any(|b| b != b'0') {
            out.push('-');
        }
        out.push_str(int_part);
        if places > 0 {
            out.push('.');
            out.push_str(frac_part);
        }
        out
    }
}

/// `ln 2` at the given scale, via `2 atanh(1/3)`.
pub fn ln2(bits: u32) -> BigFixed {
    let third = BigFixed::from_rational(&Rational::new(BigInt::one(), BigInt::from(3)), work(bits));
    atanh_series(&third).mul_int(2).truncate(bits)
}

/// `ln n` for `n >= 1` at the given scale.
pub fn ln_u64(n: u64, bits: u32) -> BigFixed {
    assert!(n >= 1, "ln of a nonpositive integer");
    if n == 1 {
        return BigFixed::zero(bits);
    }
    let wb = work(bits);
    let shift = 63 - n.leading_zeros(); // floor(log2 n)
                                        // x = n / 2^shift in [1, 2)
    let x = BigFixed {
        bits: wb,
        v: BigInt::from(n) << (wb - shift),
    };
    let num = x.sub(&BigFixed::from_int(1, wb));
    let den = x.add(&BigFixed::from_int(1, wb));
    let u = BigFixed {
        bits: wb,
        v: div_round(&(num.v << wb), &den.v),
    };
    let ln_frac = atanh_series(&u).mul_int(2);
    let ln2_part = ln2_at(wb).mul_int(shift as i64);
    ln_frac.add(&ln2_part).truncate(bits)
}

fn ln2_at(bits: u32) -> BigFixed {
    let third = BigFixed::from_rational(&Rational::new(BigInt::one(), BigInt::from(3)), bits);
    atanh_series(&third).mul_int(2)
}

/// Extra working bits so series/rounding noise stays below the target scale.
fn work(bits: u32) -> u32 {
    bits + 24
}

impl BigFixed {
    fn truncate(&self, bits: u32) -> BigFixed {
        assert!(bits <= self.bits);
        BigFixed {
            bits,
            v: div_round(&self.v, &(BigInt::one() << (self.bits - bits))),
        }
    }
}

/// `atanh u = sum u^(2j+1) / (2j+1)` for `|u| < 1`, run until terms vanish
/// at the working scale.
fn atanh_series(u: &BigFixed) -> BigFixed {
    let u2 = u.mul(u);
    let mut term = u.clone();
    let mut acc = u.clone();
    let mut k = 1i64;
    while !term.is_zero() {
        term = term.mul(&u2);
        k += 2;
        let contrib = term.div_int(k);
        if contrib.is_zero() {
            break;
        }
        acc = acc.add(&contrib);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    const LN2_30: &str = "0.693147180559945309417232121458";
    const LN10_30: &str = "2.302585092994045684017991454684";

    #[test]
    fn ln2_matches_reference() {
        let bits = bits_for_digits(30);
        let got = ln2(bits);
        let want = BigFixed::from_decimal_str(LN2_30, bits).unwrap();
        assert!(got.sub(&want).abs_below_pow10(-29));
    }

    #[test]
    fn ln_of_integers_matches_reference() {
        let bits = bits_for_digits(30);
        let got = ln_u64(10, bits);
        let want = BigFixed::from_decimal_str(LN10_30, bits).unwrap();
        assert!(got.sub(&want).abs_below_pow10(-29));
        // ln(1024) = 10 ln 2
        let got = ln_u64(1024, bits);
        let want = ln2(bits).mul_int(10);
        assert!(got.sub(&want).abs_below_pow10(-28));
    }

    #[test]
    fn ln_is_additive_under_multiplication() {
        let bits = bits_for_digits(25);
        let lhs = ln_u64(6, bits);
        let rhs = ln_u64(2, bits).add(&ln_u64(3, bits));
        assert!(lhs.sub(&rhs).abs_below_pow10(-24));
    }

    #[test]
    fn decimal_rendering() {
        let bits = bits_for_digits(12);
        let x = BigFixed::from_rational(&crate::rat::of(1, 2), bits);
        assert_eq!(x.to_decimal(4), "0.5000");
        let y = BigFixed::from_rational(&crate::rat::of(-7, 4), bits);
        assert_eq!(y.to_decimal(2), "-1.75");
        let z = BigFixed::zero(bits);
        assert_eq!(z.to_decimal(3), "0.000");
        assert_eq!(BigFixed::from_int(42, bits).to_decimal(0), "42");
    }

    #[test]
    fn decimal_round_trip_of_zeta_constant() {
        let bits = bits_for_digits(45);
        let z = BigFixed::from_decimal_str(ZETA_PRIME_NEG1_DECIMAL, bits).unwrap();
        assert_eq!(z.to_decimal(49), ZETA_PRIME_NEG1_DECIMAL);
        assert!((z.to_f64() + 0.165_421_143_700_450_92).abs() < 1e-15);
    }

    #[test]
    fn rejects_garbage_decimal() {
        assert!(BigFixed::from_decimal_str("1.2x", 64).is_err());
        assert!(BigFixed::from_decimal_str("", 64).is_err());
    }
}
