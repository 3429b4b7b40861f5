//! Exact arithmetic in the value module `Q + Q*zeta'(-1) + sum_p Q*log p`.
//!
//! Every Arakelov-theoretic quantity on the arithmetic surface lands in
//! this module: `zeta(-1) = -1/12` is rational and folded into the rational
//! part immediately, so `zeta'(-1)` is the only transcendental basis
//! element the formulas generate besides prime logarithms. Keeping
//! `zeta'(-1)` symbolic turns every identity in the theory into a
//! decidable, exact equality test; numeric collapse happens only at the
//! output boundary via [`ArakelovNumber::numeric_value`].

use alloc::collections::BTreeMap;
use alloc::format;
use core::fmt;
use core::ops::{Add, AddAssign, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::highprec::{self, BigFixed, MAX_NUMERIC_PRECISION, ZETA_PRIME_NEG1_DECIMAL};
use crate::primes;
use crate::Rational;

/// An exact element `r + z*zeta'(-1) + sum_p c_p * log p`.
///
/// Stored in canonical form: the log map never holds a zero coefficient and
/// its keys are prime, so derived `PartialEq` is exact componentwise
/// equality of values.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ArakelovNumber {
    rational: Rational,
    zeta: Rational,
    logs: BTreeMap<u64, Rational>,
}

impl ArakelovNumber {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_rational(rational: Rational) -> Self {
        ArakelovNumber {
            rational,
            ..Self::default()
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(crate::rat::int(n))
    }

    /// `coeff * zeta'(-1)`.
    pub fn zeta_multiple(coeff: Rational) -> Self {
        ArakelovNumber {
            zeta: coeff,
            ..Self::default()
        }
    }

    /// `coeff * log p`; `p` must be prime.
    pub fn log_term(p: u64, coeff: Rational) -> Result<Self> {
        primes::ensure_prime("log_term", p)?;
        let mut logs = BTreeMap::new();
        if !coeff.is_zero() {
            logs.insert(p, coeff);
        }
        Ok(ArakelovNumber {
            logs,
            ..Self::default()
        })
    }

    /// Assembles a value from raw parts, enforcing canonical form.
    pub fn from_parts(
        rational: Rational,
        zeta: Rational,
        logs: BTreeMap<u64, Rational>,
    ) -> Result<Self> {
        let mut canonical = BTreeMap::new();
        for (p, coeff) in logs {
            primes::ensure_prime("from_parts", p)?;
            if !coeff.is_zero() {
                canonical.insert(p, coeff);
            }
        }
        Ok(ArakelovNumber {
            rational,
            zeta,
            logs: canonical,
        })
    }

    pub fn rational_part(&self) -> &Rational {
        &self.rational
    }

    pub fn zeta_coeff(&self) -> &Rational {
        &self.zeta
    }

    pub fn log_coeff(&self, p: u64) -> Rational {
        self.logs.get(&p).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn log_terms(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.logs.iter().map(|(&p, c)| (p, c))
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.zeta.is_zero() && self.logs.is_empty()
    }

    /// True iff the value is a nonnegative-integer combination of `log p`.
    pub fn is_nonneg_integral_log_combination(&self) -> bool {
        self.rational.is_zero()
            && self.zeta.is_zero()
            && self
                .logs
                .values()
                .all(|c| c.is_integer() && !c.is_negative())
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        let logs = self.logs.iter().map(|(&p, c)| (p, c * factor)).collect();
        ArakelovNumber {
            rational: &self.rational * factor,
            zeta: &self.zeta * factor,
            logs,
        }
    }

    /// Evaluates the value as a fixed-point real with absolute error at
    /// most `10^(1 - precision)`.
    ///
    /// `zeta'(-1)` is taken from a stored constant (see
    /// [`ZETA_PRIME_NEG1_DECIMAL`]) that the numerical oracle
    /// independently reproduces; this caps `precision` at
    /// [`MAX_NUMERIC_PRECISION`].
    pub fn numeric_value(&self, precision: u32) -> Result<BigFixed> {
        if precision == 0 {
            return Err(Error::Domain {
                op: "numeric_value",
                reason: "precision must be at least 1".into(),
            });
        }
        if precision > MAX_NUMERIC_PRECISION {
            return Err(Error::Domain {
                op: "numeric_value",
                reason: format!("precision {precision} exceeds {MAX_NUMERIC_PRECISION}"),
            });
        }
        let bits = highprec::bits_for_digits(precision + 6);
        let mut acc = BigFixed::from_rational(&self.rational, bits);
        if !self.zeta.is_zero() {
            let zeta = BigFixed::from_decimal_str(ZETA_PRIME_NEG1_DECIMAL, bits)
                .expect("stored constant parses");
            acc = acc.add(&zeta.mul_rational(&self.zeta));
        }
        for (&p, coeff) in &self.logs {
            acc = acc.add(&highprec::ln_u64(p, bits).mul_rational(coeff));
        }
        Ok(acc)
    }

    /// Double-precision convenience view of [`Self::numeric_value`].
    pub fn numeric_f64(&self) -> f64 {
        self.numeric_value(17)
            .expect("precision 17 is always accepted")
            .to_f64()
    }
}

/// `log n = sum_p e_p log p` for `n = prod p^(e_p)`, `n >= 1`.
pub fn log_of_positive_integer(n: &BigInt) -> Result<ArakelovNumber> {
    if n.sign() != Sign::Plus {
        return Err(Error::Domain {
            op: "log_of_positive_integer",
            reason: format!("{n} is not positive"),
        });
    }
    let factors = primes::factorize("log_of_positive_integer", n.magnitude())?;
    let logs = factors
        .into_iter()
        .map(|(p, e)| (p, crate::rat::int(e as i64)))
        .collect();
    Ok(ArakelovNumber {
        logs,
        ..ArakelovNumber::default()
    })
}

/// `log q = log(numerator) - log(denominator)` for `q > 0`.
pub fn log_of_positive_rational(q: &Rational) -> Result<ArakelovNumber> {
    if !q.is_positive() {
        return Err(Error::Domain {
            op: "log_of_positive_rational",
            reason: format!("{q} is not positive"),
        });
    }
    Ok(log_of_positive_integer(q.numer())? - log_of_positive_integer(q.denom())?)
}

/// The curve-case R-genus degree term `rank * (2 zeta'(-1) + zeta(-1))`,
/// with `zeta(-1) = -1/12` folded into the rational part.
pub fn r_genus_degree_term(rank: u32) -> Result<ArakelovNumber> {
    if rank == 0 {
        return Err(Error::Domain {
            op: "r_genus_degree_term",
            reason: "rank must be positive".into(),
        });
    }
    let rank = rank as i64;
    Ok(ArakelovNumber {
        rational: crate::rat::of(-rank, 12),
        zeta: crate::rat::int(2 * rank),
        logs: BTreeMap::new(),
    })
}

impl AddAssign for ArakelovNumber {
    fn add_assign(&mut self, rhs: Self) {
        self.rational += rhs.rational;
        self.zeta += rhs.zeta;
        for (p, coeff) in rhs.logs {
            let entry = self.logs.entry(p).or_insert_with(Rational::zero);
            *entry += coeff;
            if entry.is_zero() {
                self.logs.remove(&p);
            }
        }
    }
}

impl Add for ArakelovNumber {
    type Output = ArakelovNumber;
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl Neg for ArakelovNumber {
    type Output = ArakelovNumber;
    fn neg(self) -> Self {
        ArakelovNumber {
            rational: -self.rational,
            zeta: -self.zeta,
            logs: self.logs.into_iter().map(|(p, c)| (p, -c)).collect(),
        }
    }
}

impl Sub for ArakelovNumber {
    type Output = ArakelovNumber;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Add<&ArakelovNumber> for ArakelovNumber {
    type Output = ArakelovNumber;
    fn add(mut self, rhs: &Self) -> Self {
        self += rhs.clone();
        self
    }
}

fn fmt_signed_term(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    coeff: &Rational,
    symbol: Option<&str>,
) -> fmt::Result {
    let negative = coeff.is_negative();
    if first {
        if negative {
            write!(f, "-")?;
        }
    } else if negative {
        write!(f, " - ")?;
    } else {
        write!(f, " + ")?;
    }
    let abs = coeff.abs();
    match symbol {
        None => write!(f, "{abs}"),
        Some(s) => {
            if abs.is_one() {
                write!(f, "{s}")
            } else {
                write!(f, "{abs}*{s}")
            }
        }
    }
}

impl fmt::Display for ArakelovNumber {
    /// Human-readable exact form, e.g. `1/2 - 4*zeta'(-1) + 3/2*log(2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        if !self.rational.is_zero() {
            fmt_signed_term(f, first, &self.rational, None)?;
            first = false;
        }
        if !self.zeta.is_zero() {
            fmt_signed_term(f, first, &self.zeta, Some("zeta'(-1)"))?;
            first = false;
        }
        for (p, coeff) in &self.logs {
            fmt_signed_term(f, first, coeff, Some(&format!("log({p})")))?;
            first = false;
        }
        Ok(())
    }
}
