//! Splitting types of rank-two bundles on `P^1` over a prime field,
//! computed from Laurent-polynomial transition matrices.
//!
//! A matrix `M` in `GL(2, F_p[t, 1/t])` glues a rank-two bundle over the
//! standard affine cover. The convention is fixed so that
//! `diag(t^k1, t^k2)` is the transition matrix of `O(-k1) + O(-k2)`:
//! a global section of the twisted bundle `E(n)` is a pair `(f, g)` with
//! `f` a polynomial vector in `t`, `g` a polynomial vector in `1/t`, and
//! `g = t^(-n) M f`. This matches the classical example where
//! `diag(t^2, 1)` glues `O + O(-2)`.
//!
//! The splitting type itself is read off the section-dimension profile
//! `n -> h^0(E(n))` rather than from an explicit Birkhoff factorization:
//! the first twist with a section pins the larger summand, and the
//! determinant pins the sum. Each `h^0` is the corank of a finite linear
//! system over `F_p` solved by exact Gaussian elimination, with the degree
//! of `f` bounded through the adjugate of `M`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::primes;
use crate::sheaf::SplittingType;

// ---------------------------------------------------------------------------
// Prime-field scalars

fn fp_mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn fp_inv(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2) mod p.
    debug_assert!(!a.is_multiple_of(p));
    let mut base = a % p;
    let mut exp = p - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = fp_mul(acc, base, p);
        }
        base = fp_mul(base, base, p);
        exp >>= 1;
    }
    acc
}

// ---------------------------------------------------------------------------
// Laurent polynomials

/// Laurent polynomial over `F_p`, in canonical form (no zero coefficients).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    p: u64,
    coeffs: BTreeMap<i64, u64>,
}

impl LaurentPoly {
    pub fn zero(p: u64) -> Self {
        LaurentPoly {
            p,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn monomial(p: u64, coeff: u64, exp: i64) -> Self {
        let mut poly = Self::zero(p);
        poly.set(exp, coeff % p);
        poly
    }

    pub fn from_terms(p: u64, terms: &[(i64, u64)]) -> Self {
        let mut poly = Self::zero(p);
        for &(e, c) in terms {
            poly.add_coeff(e, c % p);
        }
        poly
    }

    fn set(&mut self, exp: i64, coeff: u64) {
        if coeff.is_multiple_of(self.p) {
            self.coeffs.remove(&exp);
        } else {
            self.coeffs.insert(exp, coeff % self.p);
        }
    }

    fn add_coeff(&mut self, exp: i64, coeff: u64) {
        let c = (self.coeffs.get(&exp).copied().unwrap_or(0) + coeff % self.p) % self.p;
        self.set(exp, c);
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> u64 {
        self.coeffs.get(&exp).copied().unwrap_or(0)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// `Some((c, k))` iff the polynomial is exactly `c * t^k`, `c != 0`.
    pub fn as_monomial(&self) -> Option<(u64, i64)> {
        if self.coeffs.len() == 1 {
            let (&k, &c) = self.coeffs.iter().next().unwrap();
            Some((c, k))
        } else {
            None
        }
    }

    /// Multiplies by `t^shift`.
    pub fn shifted(&self, shift: i64) -> Self {
        LaurentPoly {
            p: self.p,
            coeffs: self.coeffs.iter().map(|(&e, &c)| (e + shift, c)).collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        let mut out = self.clone();
        for (&e, &c) in &rhs.coeffs {
            out.add_coeff(e, c);
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        let mut out = self.clone();
        for (&e, &c) in &rhs.coeffs {
            out.add_coeff(e, self.p - c % self.p);
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        let mut out = Self::zero(self.p);
        for (&e1, &c1) in &self.coeffs {
            for (&e2, &c2) in &rhs.coeffs {
                out.add_coeff(e1 + e2, fp_mul(c1, c2, self.p));
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&e, &c)) in self.coeffs.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match (c, e) {
                (_, 0) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, _) => write!(f, "t^{e}")?,
                (_, 1) => write!(f, "{c}*t")?,
                (_, _) => write!(f, "{c}*t^{e}")?,
            }
        }
        Ok(())
    }
}

/// Laurent polynomial with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IntegerLaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl IntegerLaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(coeff: impl Into<BigInt>, exp: i64) -> Self {
        let mut poly = Self::zero();
        poly.add_coeff(exp, coeff.into());
        poly
    }

    fn add_coeff(&mut self, exp: i64, coeff: BigInt) {
        let entry = self.coeffs.entry(exp).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn as_monomial(&self) -> Option<(&BigInt, i64)> {
        if self.coeffs.len() == 1 {
            let (&k, c) = self.coeffs.iter().next().unwrap();
            Some((c, k))
        } else {
            None
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&e, c) in &rhs.coeffs {
            out.add_coeff(e, -c.clone());
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (&e1, c1) in &self.coeffs {
            for (&e2, c2) in &rhs.coeffs {
                out.add_coeff(e1 + e2, c1 * c2);
            }
        }
        out
    }

    /// Entrywise reduction modulo the prime `p`.
    pub fn reduce_mod(&self, p: u64) -> LaurentPoly {
        let modulus = BigInt::from(p);
        let mut out = LaurentPoly::zero(p);
        for (&e, c) in &self.coeffs {
            let r = c.mod_floor(&modulus).to_u64().expect("residue fits u64");
            out.add_coeff(e, r);
        }
        out
    }
}

impl fmt::Display for IntegerLaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&e, c)) in self.coeffs.iter().rev().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let abs = c.abs();
            let one = abs == BigInt::from(1);
            match (one, e) {
                (_, 0) => write!(f, "{abs}")?,
                (true, 1) => write!(f, "t")?,
                (true, _) => write!(f, "t^{e}")?,
                (false, 1) => write!(f, "{abs}*t")?,
                (false, _) => write!(f, "{abs}*t^{e}")?,
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Transition matrices

/// A 2x2 transition matrix over `F_p[t, 1/t]` with unit determinant
/// `c * t^k`, validated at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionMatrix2 {
    p: u64,
    // Row-major: [m00, m01, m10, m11].
    entries: [LaurentPoly; 4],
}

impl TransitionMatrix2 {
    pub fn new(p: u64, entries: [LaurentPoly; 4]) -> Result<Self> {
        primes::ensure_prime("TransitionMatrix2", p)?;
        for e in &entries {
            assert_eq!(e.modulus(), p, "mixed moduli in matrix entries");
        }
        let m = TransitionMatrix2 { p, entries };
        m.det_unit()?;
        Ok(m)
    }

    pub fn identity(p: u64) -> Result<Self> {
        Self::diagonal(p, 0, 0)
    }

    /// `diag(t^k1, t^k2)`, the transition matrix of `O(-k1) + O(-k2)`.
    pub fn diagonal(p: u64, k1: i64, k2: i64) -> Result<Self> {
        Self::new(
            p,
            [
                LaurentPoly::monomial(p, 1, k1),
                LaurentPoly::zero(p),
                LaurentPoly::zero(p),
                LaurentPoly::monomial(p, 1, k2),
            ],
        )
    }

    /// Reduces integer entries mod `p` and validates the result.
    pub fn from_integer_entries(entries: &[IntegerLaurentPoly; 4], p: u64) -> Result<Self> {
        primes::ensure_prime("TransitionMatrix2", p)?;
        let reduced = [
            entries[0].reduce_mod(p),
            entries[1].reduce_mod(p),
            entries[2].reduce_mod(p),
            entries[3].reduce_mod(p),
        ];
        Self::new(p, reduced)
    }

    /// Parses `"t^2, 2*t; 0, 1"` and reduces mod `p`.
    pub fn parse_mod(s: &str, p: u64) -> Result<Self> {
        Self::from_integer_entries(&parse_matrix_entries(s)?, p)
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn entry(&self, row: usize, col: usize) -> &LaurentPoly {
        &self.entries[2 * row + col]
    }

    pub fn det(&self) -> LaurentPoly {
        self.entries[0]
            .mul(&self.entries[3])
            .sub(&self.entries[1].mul(&self.entries[2]))
    }

    /// The unit witness: `det = c * t^k` with `c != 0`.
    pub fn det_unit(&self) -> Result<(u64, i64)> {
        self.det()
            .as_monomial()
            .ok_or_else(|| Error::DegenerateMatrix {
                reason: format!("determinant {} is not a unit monomial", self.det()),
            })
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.p, rhs.p, "mixed moduli in matrix product");
        let e = |r: usize, c: usize| {
            self.entry(r, 0)
                .mul(rhs.entry(0, c))
                .add(&self.entry(r, 1).mul(rhs.entry(1, c)))
        };
        TransitionMatrix2 {
            p: self.p,
            entries: [e(0, 0), e(0, 1), e(1, 0), e(1, 1)],
        }
    }

    fn max_entry_exp(&self) -> i64 {
        self.entries
            .iter()
            .filter_map(LaurentPoly::max_exp)
            .max()
            .expect("a unit-determinant matrix has a nonzero entry")
    }

    fn min_entry_exp(&self) -> i64 {
        self.entries
            .iter()
            .filter_map(LaurentPoly::min_exp)
            .min()
            .expect("a unit-determinant matrix has a nonzero entry")
    }

    /// Dimension over `F_p` of the global sections of `E(twist)`.
    ///
    /// A section is a pair `(f, g)` of polynomial vectors (in `t` and in
    /// `1/t` respectively) with `g = t^(-twist) M f`, so `f` determines the
    /// section and satisfies finitely many linear constraints: every
    /// positive power of `t` in `t^(-twist) M f` must cancel. For `f` the
    /// degree bound `deg f <= max_exp(M') - k'` suffices, where
    /// `M' = t^(-twist) M` and `det M' = c t^(k')`: writing
    /// `f = adj(M') g / (c t^(k'))` shows no section needs more.
    pub fn h0_dim(&self, twist: i64) -> Result<u64> {
        let (_, k) = self.det_unit()?;
        let k_shifted = k - 2 * twist;
        let shifted: Vec<LaurentPoly> = self.entries.iter().map(|e| e.shifted(-twist)).collect();
        let max_exp = shifted
            .iter()
            .filter_map(LaurentPoly::max_exp)
            .max()
            .expect("nonzero entry");
        let degree_bound = (max_exp - k_shifted).max(0) + 1;
        let cols_per_component = (degree_bound + 1) as usize;
        let unknowns = 2 * cols_per_component;

        // Constraint rows: coefficient of t^m, m = 1 .. max_exp + bound,
        // of each matrix row applied to f.
        let highest_power = max_exp + degree_bound;
        let mut rows: Vec<Vec<u64>> = Vec::new();
        for matrix_row in 0..2usize {
            for m in 1..=highest_power {
                let mut row = vec![0u64; unknowns];
                for j in 0..2usize {
                    let entry = &shifted[2 * matrix_row + j];
                    for e in 0..=degree_bound {
                        row[j * cols_per_component + e as usize] = entry.coeff(m - e);
                    }
                }
                if row.iter().any(|&c| c != 0) {
                    rows.push(row);
                }
            }
        }
        let rank = fp_rank(&mut rows, self.p);
        Ok((unknowns - rank) as u64)
    }

    /// Splitting type `(d1, d2)` of the glued bundle, with `d1 >= d2` and
    /// `d1 + d2 = -k` for `det = c t^k`.
    ///
    /// `d1` is found from the section profile: `d1 = -n0` for the smallest
    /// twist `n0` with a section. The scan is confined to
    /// `[-(B + |k|), B + |k|]` with `B` the entry exponent spread plus 2;
    /// splitting degrees of a rank-two bundle cannot exceed that.
    pub fn splitting_type(&self) -> Result<SplittingType> {
        let (_, k) = self.det_unit()?;
        let spread = self.max_entry_exp() - self.min_entry_exp();
        let bound = spread + 2 + k.abs();
        for n in -bound..=bound {
            if self.h0_dim(n)? >= 1 {
                let d1 = -n;
                let d2 = -k - d1;
                if d1 < d2 {
                    return Err(Error::InvariantViolation {
                        what: format!(
                            "section profile of {self} yields unordered splitting ({d1}, {d2})"
                        ),
                    });
                }
                return Ok(SplittingType { d1, d2 });
            }
        }
        Err(Error::InvariantViolation {
            what: format!("no sections of {self} found within the degree bound {bound}"),
        })
    }
}

impl fmt::Display for TransitionMatrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}, {}; {}, {}",
            self.entries[0], self.entries[1], self.entries[2], self.entries[3]
        )
    }
}

/// Rank of a matrix over `F_p` by Gaussian elimination, destroying `rows`.
fn fp_rank(rows: &mut [Vec<u64>], p: u64) -> usize {
    let nrows = rows.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = rows[0].len();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..nrows).find(|&r| !rows[r][col].is_multiple_of(p)) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = fp_inv(rows[rank][col], p);
        for cell in rows[rank][col..].iter_mut() {
            *cell = fp_mul(*cell, inv, p);
        }
        let (pivot_row, rest) = {
            let (head, tail) = rows.split_at_mut(rank);
            let (pivot_slice, below) = tail.split_at_mut(1);
            (&pivot_slice[0], head.iter_mut().chain(below.iter_mut()))
        };
        for row in rest {
            let factor = row[col] % p;
            if factor != 0 {
                for (cell, &pivot_cell) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *cell = (*cell + p - fp_mul(factor, pivot_cell, p)) % p;
                }
            }
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

/// A 2x2 matrix of integer Laurent polynomials whose determinant is a
/// monomial `c * t^k` with `c != 0`, so it stays a transition matrix after
/// reduction modulo any prime not dividing `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerTransitionMatrix2 {
    entries: [IntegerLaurentPoly; 4],
}

impl IntegerTransitionMatrix2 {
    pub fn new(entries: [IntegerLaurentPoly; 4]) -> Result<Self> {
        let det = entries[0]
            .mul(&entries[3])
            .sub(&entries[1].mul(&entries[2]));
        if det.as_monomial().is_none() {
            return Err(Error::DegenerateMatrix {
                reason: format!("integer determinant {det} is not a monomial"),
            });
        }
        Ok(IntegerTransitionMatrix2 { entries })
    }

    pub fn entry(&self, row: usize, col: usize) -> &IntegerLaurentPoly {
        &self.entries[2 * row + col]
    }

    /// Entrywise reduction modulo `q`; fails if the determinant stops
    /// being a unit.
    pub fn reduce_mod(&self, q: u64) -> Result<TransitionMatrix2> {
        TransitionMatrix2::from_integer_entries(&self.entries, q)
    }
}

impl fmt::Display for IntegerTransitionMatrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}, {}; {}, {}",
            self.entries[0], self.entries[1], self.entries[2], self.entries[3]
        )
    }
}

/// The classical indecomposable example: `[[t^2, p t], [0, 1]]`. Its
/// reduction mod `p` glues `O + O(-2)` while every other reduction glues
/// `O(-1) + O(-1)`.
pub fn roberts_matrix(p: u64) -> Result<IntegerTransitionMatrix2> {
    primes::ensure_prime("roberts_matrix", p)?;
    IntegerTransitionMatrix2::new([
        IntegerLaurentPoly::monomial(1, 2),
        IntegerLaurentPoly::monomial(BigInt::from(p), 1),
        IntegerLaurentPoly::zero(),
        IntegerLaurentPoly::monomial(1, 0),
    ])
}

// ---------------------------------------------------------------------------
// Text syntax: entries as polynomials in t, comma-separated, rows
// semicolon-separated, e.g. "t^2, 2*t; 0, 1".

struct PolyParser<'a> {
    bytes: &'a [u8],
    i: usize,
    base: usize,
}

impl<'a> PolyParser<'a> {
    fn new(s: &'a str, base: usize) -> Self {
        PolyParser {
            bytes: s.as_bytes(),
            i: 0,
            base,
        }
    }

    fn err(&self, reason: String) -> Error {
        Error::Parse {
            pos: self.base + self.i,
            reason,
        }
    }

    fn skip_ws(&mut self) {
        while self.i < self.bytes.len() && self.bytes[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.i).copied()
    }

    fn parse_digits(&mut self) -> Result<BigInt> {
        let start = self.i;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.i += 1;
        }
        if self.i == start {
            return Err(self.err("expected digits".into()));
        }
        let s = core::str::from_utf8(&self.bytes[start..self.i]).expect("ascii digits");
        Ok(s.parse().expect("digits parse as BigInt"))
    }

    /// `t` or `t^e` with a possibly negative exponent.
    fn parse_var_exp(&mut self) -> Result<i64> {
        debug_assert_eq!(self.peek(), Some(b't'));
        self.i += 1;
        if self.peek() != Some(b'^') {
            return Ok(1);
        }
        self.i += 1;
        let neg = if self.peek() == Some(b'-') {
            self.i += 1;
            true
        } else {
            false
        };
        let digits = self.parse_digits()?;
        let exp = digits
            .to_i64()
            .filter(|&e| e <= 1_000_000)
            .ok_or_else(|| self.err("exponent out of range".into()))?;
        Ok(if neg { -exp } else { exp })
    }

    fn parse_term(&mut self, sign: i32) -> Result<(BigInt, i64)> {
        match self.peek() {
            Some(b't') => {
                let exp = self.parse_var_exp()?;
                Ok((BigInt::from(sign), exp))
            }
            Some(b) if b.is_ascii_digit() => {
                let coeff = self.parse_digits()? * sign;
                self.skip_ws();
                match self.peek() {
                    Some(b'*') => {
                        self.i += 1;
                        self.skip_ws();
                        if self.peek() != Some(b't') {
                            return Err(self.err("expected t after '*'".into()));
                        }
                        let exp = self.parse_var_exp()?;
                        Ok((coeff, exp))
                    }
                    Some(b't') => {
                        let exp = self.parse_var_exp()?;
                        Ok((coeff, exp))
                    }
                    _ => Ok((coeff, 0)),
                }
            }
            Some(b) => Err(self.err(format!("unexpected character {:?}", b as char))),
            None => Err(self.err("expected a term".into())),
        }
    }

    fn parse_poly(&mut self) -> Result<IntegerLaurentPoly> {
        let mut poly = IntegerLaurentPoly::zero();
        self.skip_ws();
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.i += 1;
                -1
            }
            Some(b'+') => {
                self.i += 1;
                1
            }
            _ => 1,
        };
        loop {
            self.skip_ws();
            let (coeff, exp) = self.parse_term(sign)?;
            poly.add_coeff(exp, coeff);
            self.skip_ws();
            sign = match self.peek() {
                None => break,
                Some(b'+') => 1,
                Some(b'-') => -1,
                Some(b) => {
                    return Err(self.err(format!(
                        "expected '+' or '-' between terms, found {:?}",
                        b as char
                    )))
                }
            };
            self.i += 1;
        }
        Ok(poly)
    }
}

/// Parses the four entries of a 2x2 matrix without validating the
/// determinant; callers construct the validated wrapper they need.
pub fn parse_matrix_entries(s: &str) -> Result<[IntegerLaurentPoly; 4]> {
    let mut entries = Vec::with_capacity(4);
    let mut offset = 0;
    let rows: Vec<&str> = s.split(';').collect();
    if rows.len() != 2 {
        return Err(Error::Parse {
            pos: 0,
            reason: format!("expected 2 rows separated by ';', found {}", rows.len()),
        });
    }
    for row in rows {
        let cells: Vec<&str> = row.split(',').collect();
        if cells.len() != 2 {
            return Err(Error::Parse {
                pos: offset,
                reason: format!("expected 2 entries separated by ',', found {}", cells.len()),
            });
        }
        let mut cell_offset = offset;
        for cell in cells {
            let mut parser = PolyParser::new(cell, cell_offset);
            entries.push(parser.parse_poly()?);
            cell_offset += cell.len() + 1;
        }
        offset += row.len() + 1;
    }
    Ok(entries.try_into().expect("exactly four entries"))
}

impl FromStr for IntegerTransitionMatrix2 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IntegerTransitionMatrix2::new(parse_matrix_entries(s)?)
    }
}

/// Deterministic generators for the gauge-invariance checks.
///
/// The matrix equivalence preserving splitting types is
/// `M -> C * M * A` with `C` invertible over `F_p[1/t]` and `A`
/// invertible over `F_p[t]` (row operations live on the `1/t` chart and
/// column operations on the `t` chart), both with unit constant
/// determinant. These helpers produce random members of the two groups
/// from a seeded generator, so the checks are reproducible.
pub mod gauge {
    use super::{LaurentPoly, TransitionMatrix2};

    /// Small xorshift generator; deterministic given the seed.
    pub struct XorShift(pub u64);

    impl XorShift {
        pub fn next_u64(&mut self) -> u64 {
            let mut x = self.0;
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            self.0 = x;
            x
        }

        pub fn below(&mut self, n: u64) -> u64 {
            self.next_u64() % n
        }
    }

    /// Random invertible matrix over `F_p[t]` (`positive = true`) or over
    /// `F_p[1/t]` (`positive = false`) with unit constant determinant: a
    /// product of triangular shears and unit diagonal scalings.
    pub fn random_unimodular(p: u64, rng: &mut XorShift, positive: bool) -> TransitionMatrix2 {
        let mut m = TransitionMatrix2::identity(p).expect("identity is unimodular");
        for _ in 0..=rng.below(3) {
            let mut shear = LaurentPoly::zero(p);
            for _ in 0..=rng.below(3) {
                let e = rng.below(3) as i64;
                let e = if positive { e } else { -e };
                shear.add_coeff(e, rng.below(p));
            }
            let (u, v) = (1 + rng.below(p - 1), 1 + rng.below(p - 1));
            let zero = LaurentPoly::zero(p);
            let entries = if rng.below(2) == 0 {
                [
                    LaurentPoly::monomial(p, u, 0),
                    shear,
                    zero,
                    LaurentPoly::monomial(p, v, 0),
                ]
            } else {
                [
                    LaurentPoly::monomial(p, u, 0),
                    zero,
                    shear,
                    LaurentPoly::monomial(p, v, 0),
                ]
            };
            let factor = TransitionMatrix2::new(p, entries)
                .expect("triangular matrices with unit diagonal scalars are unimodular");
            m = m.mul(&factor);
        }
        m
    }
}
