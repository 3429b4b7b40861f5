//! Classifying data of rank-two bundles on `P^1_Z` and their algebraic
//! invariants.
//!
//! A bundle is an extension of a twisted ideal sheaf `I_Z(b)` by `O(a)`
//! with `a >= b`, so the classifying datum is a [`Triple`] `(a, b, Z)`.
//! The local complete intersection `Z` enters every formula only through
//! two numbers per supported prime `p`: the fiber degree `n_p` (how much
//! the splitting type jumps on the fiber over `p`) and the `p`-exponent of
//! `#H^0(Z, O_Z)`; [`Lci`] stores exactly those. A component may be
//! thickened vertically, which adds length beyond fiber degree, hence the
//! invariant `len >= n`.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;

use crate::arakelov::ArakelovNumber;
use crate::error::{Error, Result};
use crate::primes;
use crate::Rational;

/// One component of a local complete intersection: at the prime `p`, it
/// contributes `n` to the fiber degree `n_p` and `len` to the `p`-exponent
/// of `#H^0(Z, O_Z)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct LciComponent {
    p: u64,
    n: u64,
    len: u64,
}

/// Per-component bound keeping all derived sums within machine range.
const MAX_COMPONENT_LENGTH: u64 = 1_000_000_000;

impl LciComponent {
    pub fn new(p: u64, n: u64, len: u64) -> Result<Self> {
        primes::ensure_prime("LciComponent", p)?;
        if n == 0 {
            return Err(Error::Domain {
                op: "LciComponent",
                reason: "fiber degree n must be positive".into(),
            });
        }
        if len < n {
            return Err(Error::Domain {
                op: "LciComponent",
                reason: format!("length {len} below fiber degree {n}"),
            });
        }
        if len > MAX_COMPONENT_LENGTH {
            return Err(Error::Domain {
                op: "LciComponent",
                reason: format!("length {len} exceeds supported bound {MAX_COMPONENT_LENGTH}"),
            });
        }
        Ok(LciComponent { p, n, len })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn fiber_degree(&self) -> u64 {
        self.n
    }

    pub fn length(&self) -> u64 {
        self.len
    }
}

/// A zero-dimensional local complete intersection, as a multiset of
/// components. The empty multiset is `Z = {}`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Lci {
    components: Vec<LciComponent>,
}

impl Lci {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(mut components: Vec<LciComponent>) -> Self {
        components.sort();
        Lci { components }
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> &[LciComponent] {
        &self.components
    }

    /// Supported primes, ascending, without repetition.
    pub fn support(&self) -> Vec<u64> {
        let mut out: Vec<u64> = self.components.iter().map(|c| c.p).collect();
        out.dedup();
        out
    }

    /// `n_p`: the total fiber degree over `p` (0 when `p` is unsupported).
    pub fn fiber_degree(&self, p: u64) -> u64 {
        self.components
            .iter()
            .filter(|c| c.p == p)
            .map(|c| c.n)
            .sum()
    }

    pub fn max_fiber_degree(&self) -> Option<u64> {
        self.support()
            .into_iter()
            .map(|p| self.fiber_degree(p))
            .max()
    }

    /// `log #H^0(Z, O_Z) = sum_p (sum of len at p) * log p`.
    pub fn h0_log_order(&self) -> ArakelovNumber {
        let mut acc = ArakelovNumber::zero();
        for p in self.support() {
            let total: u64 = self
                .components
                .iter()
                .filter(|c| c.p == p)
                .map(|c| c.len)
                .sum();
            let coeff = Rational::from_integer(BigInt::from(total));
            acc += ArakelovNumber::log_term(p, coeff).expect("support primes are validated");
        }
        acc
    }
}

impl fmt::Display for Lci {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            if c.len == c.n {
                write!(f, "{}:{}", c.p, c.n)?;
            } else {
                write!(f, "{}:{}:{}", c.p, c.n, c.len)?;
            }
        }
        Ok(())
    }
}

/// The classifying triple `(a, b, Z)`, normalized so that `a >= b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triple {
    a: i64,
    b: i64,
    z: Lci,
}

impl Triple {
    /// Swaps the twists if needed to enforce `a >= b`.
    pub fn new(a: i64, b: i64, z: Lci) -> Self {
        if a >= b {
            Triple { a, b, z }
        } else {
            Triple { a: b, b: a, z }
        }
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn z(&self) -> &Lci {
        &self.z
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.a, self.b)?;
        if !self.z.is_empty() {
            write!(f, ";{}", self.z)?;
        }
        Ok(())
    }
}

/// Torsion status of an `H^1` on the arithmetic surface.
///
/// `H^0` needs no such field: global sections of a torsion-free sheaf here
/// are torsion-free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TorsionStatus {
    /// Torsion-free (and the group may well be zero).
    Zero,
    /// Torsion of exactly this log-order.
    ExactLogOrder(ArakelovNumber),
    /// Torsion whose order divides the given order; the theory determines
    /// no more than that in the window `0 <= b < max n_p - 1`.
    UnknownDividing(ArakelovNumber),
}

/// Ranks and `H^1`-torsion status of the cohomology of a sheaf on `P^1_Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyProfile {
    pub h0_rank: u64,
    pub h1_rank: u64,
    pub h1_torsion: TorsionStatus,
}

/// Splitting type `O(d1) + O(d2)` of a rank-two bundle on a fiber,
/// normalized so `d1 >= d2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SplittingType {
    pub d1: i64,
    pub d2: i64,
}

impl SplittingType {
    pub fn new(x: i64, y: i64) -> Self {
        if x >= y {
            SplittingType { d1: x, d2: y }
        } else {
            SplittingType { d1: y, d2: x }
        }
    }
}

impl fmt::Display for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.d1, self.d2)
    }
}

/// A fiber of `P^1_Z -> Spec Z`: the generic fiber or the one over a prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fiber {
    Generic,
    At(u64),
}

fn rank_h0(a: i128) -> u64 {
    if a >= 0 {
        (a + 1) as u64
    } else {
        0
    }
}

fn rank_h1(a: i128) -> u64 {
    if a <= -2 {
        (-a - 1) as u64
    } else {
        0
    }
}

/// Cohomology of the line bundle `O(a)`: both modules are free, with
/// `h^0 = a + 1` for `a >= 0` and `h^1 = -a - 1` for `a <= -2`.
pub fn line_cohomology(a: i64) -> CohomologyProfile {
    CohomologyProfile {
        h0_rank: rank_h0(a as i128),
        h1_rank: rank_h1(a as i128),
        h1_torsion: TorsionStatus::Zero,
    }
}

/// Cohomology of the twisted ideal sheaf `I_Z(b)`.
///
/// `H^0` is free of rank `b + 1` for `b >= 0`. For `b <= -1` the `H^1`
/// splits as `H^0(Z, O_Z) + H^1(O(b))`, so its torsion order is known
/// exactly. For `b >= max_p(n_p) - 1` it vanishes; in the remaining window
/// it is a quotient of `H^0(Z, O_Z)`, reported as an upper bound only.
pub fn ideal_cohomology(z: &Lci, b: i64) -> CohomologyProfile {
    if b <= -1 {
        let order = z.h0_log_order();
        let torsion = if order.is_zero() {
            TorsionStatus::Zero
        } else {
            TorsionStatus::ExactLogOrder(order)
        };
        return CohomologyProfile {
            h0_rank: 0,
            h1_rank: rank_h1(b as i128),
            h1_torsion: torsion,
        };
    }
    let vanishing_threshold = z.max_fiber_degree().map(|n| n as i128 - 1);
    let torsion = match vanishing_threshold {
        Some(t) if (b as i128) < t => TorsionStatus::UnknownDividing(z.h0_log_order()),
        _ => TorsionStatus::Zero,
    };
    CohomologyProfile {
        h0_rank: rank_h0(b as i128),
        h1_rank: 0,
        h1_torsion: torsion,
    }
}

/// Cohomology ranks of `E(twist)` for the bundle classified by `t`.
///
/// Ranks are generic-fiber dimensions, where the bundle splits as
/// `O(a) + O(b)`; torsion of `H^1` is not determined by the triple and is
/// not reported here.
pub fn rank2_cohomology_ranks(t: &Triple, twist: i64) -> (u64, u64) {
    let a = t.a() as i128 + twist as i128;
    let b = t.b() as i128 + twist as i128;
    (rank_h0(a) + rank_h0(b), rank_h1(a) + rank_h1(b))
}

/// Splitting type of the bundle on the given fiber.
///
/// Over the generic fiber and over primes outside the support of `Z` the
/// type is `(a, b)`; over a supported prime it jumps to
/// `(a + n_p, b - n_p)`. The component sum `a + b` is constant across
/// fibers.
pub fn fiber_splitting(t: &Triple, fiber: Fiber) -> Result<SplittingType> {
    let np = match fiber {
        Fiber::Generic => 0,
        Fiber::At(p) => {
            primes::ensure_prime("fiber_splitting", p)?;
            t.z().fiber_degree(p)
        }
    };
    if np == 0 {
        return Ok(SplittingType::new(t.a(), t.b()));
    }
    let overflow = || Error::Domain {
        op: "fiber_splitting",
        reason: "twist out of machine range".into(),
    };
    let d1 = t.a().checked_add(np as i64).ok_or_else(overflow)?;
    let d2 = t.b().checked_sub(np as i64).ok_or_else(overflow)?;
    Ok(SplittingType::new(d1, d2))
}

/// True iff the bundle splits as a direct sum of line bundles, which
/// happens exactly when `Z` is empty.
pub fn is_decomposable(t: &Triple) -> bool {
    t.z().is_empty()
}

/// True iff the bundle has no cohomology at all, which happens exactly for
/// `O(-1) + O(-1)`, i.e. the triple `(-1, -1, {})`.
pub fn has_no_cohomology(t: &Triple) -> bool {
    t.a() == -1 && t.b() == -1 && t.z().is_empty()
}

// ---------------------------------------------------------------------------
// Text syntax
//
// Z-string: comma-separated components "p:n" or "p:n:len" (len defaults
// to n), e.g. "2:1,3:2:3"; the empty string is the empty Z.
// Triple: "a,b;Z-string", with the ";Z-string" part optional when Z = {}.

fn parse_u64_field(s: &str, pos: usize, what: &str) -> Result<u64> {
    s.trim().parse::<u64>().map_err(|_| Error::Parse {
        pos,
        reason: format!("expected {what}, found {s:?}"),
    })
}

fn parse_i64_field(s: &str, pos: usize, what: &str) -> Result<i64> {
    s.trim().parse::<i64>().map_err(|_| Error::Parse {
        pos,
        reason: format!("expected {what}, found {s:?}"),
    })
}

/// Parses a Z-string starting at byte offset `base` of the original input
/// (so errors point into the caller's string).
fn parse_lci_at(s: &str, base: usize) -> Result<Lci> {
    if s.trim().is_empty() {
        return Ok(Lci::empty());
    }
    let mut components = Vec::new();
    let mut offset = 0;
    for chunk in s.split(',') {
        let chunk_pos = base + offset;
        offset += chunk.len() + 1;
        let fields: Vec<&str> = chunk.split(':').collect();
        if fields.len() < 2 || fields.len() > 3 {
            return Err(Error::Parse {
                pos: chunk_pos,
                reason: format!(
                    "component {:?} is not of the form p:n or p:n:len",
                    chunk.trim()
                ),
            });
        }
        let p = parse_u64_field(fields[0], chunk_pos, "a prime")?;
        let n = parse_u64_field(fields[1], chunk_pos, "a positive fiber degree")?;
        let len = match fields.get(2) {
            Some(f) => parse_u64_field(f, chunk_pos, "a length")?,
            None => n,
        };
        let component = LciComponent::new(p, n, len).map_err(|e| Error::Parse {
            pos: chunk_pos,
            reason: format!("{e}"),
        })?;
        components.push(component);
    }
    Ok(Lci::new(components))
}

impl FromStr for Lci {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_lci_at(s, 0)
    }
}

impl FromStr for Triple {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (twists, z_part, z_base) = match s.find(';') {
            Some(i) => (&s[..i], &s[i + 1..], i + 1),
            None => (s, "", s.len()),
        };
        let comma = twists.find(',').ok_or(Error::Parse {
            pos: 0,
            reason: "expected \"a,b\" before the Z-string".into(),
        })?;
        let a = parse_i64_field(&twists[..comma], 0, "an integer twist")?;
        let b = parse_i64_field(&twists[comma + 1..], comma + 1, "an integer twist")?;
        let z = parse_lci_at(z_part, z_base)?;
        Ok(Triple::new(a, b, z))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arakelov::log_of_positive_integer;
    use crate::rat;

    fn lci(spec: &str) -> Lci {
        spec.parse().unwrap()
    }

    fn triple(spec: &str) -> Triple {
        spec.parse().unwrap()
    }

    #[test]
    fn line_cohomology_ranks() {
        let p = line_cohomology(3);
        assert_eq!((p.h0_rank, p.h1_rank), (4, 0));
        assert_eq!(p.h1_torsion, TorsionStatus::Zero);
        let p = line_cohomology(-1);
        assert_eq!((p.h0_rank, p.h1_rank), (0, 0));
        let p = line_cohomology(-3);
        assert_eq!((p.h0_rank, p.h1_rank), (0, 2));
        assert_eq!(p.h1_torsion, TorsionStatus::Zero);
    }

    #[test]
    fn ideal_cohomology_cases() {
        let z = lci("2:1:1");
        let p = ideal_cohomology(&z, 0);
        assert_eq!((p.h0_rank, p.h1_rank), (1, 0));
        assert_eq!(p.h1_torsion, TorsionStatus::Zero);

        let p = ideal_cohomology(&z, -1);
        assert_eq!((p.h0_rank, p.h1_rank), (0, 0));
        assert_eq!(
            p.h1_torsion,
            TorsionStatus::ExactLogOrder(ArakelovNumber::log_term(2, rat::int(1)).unwrap())
        );

        let p = ideal_cohomology(&Lci::empty(), 2);
        assert_eq!((p.h0_rank, p.h1_rank), (3, 0));
        assert_eq!(p.h1_torsion, TorsionStatus::Zero);

        // 1 < max n_p - 1 = 2: rank vanishes but only a divisibility bound
        // on the torsion is known.
        let z = lci("3:3:3");
        let p = ideal_cohomology(&z, 1);
        assert_eq!((p.h0_rank, p.h1_rank), (2, 0));
        assert_eq!(
            p.h1_torsion,
            TorsionStatus::UnknownDividing(ArakelovNumber::log_term(3, rat::int(3)).unwrap())
        );
    }

    #[test]
    fn ideal_cohomology_of_empty_z_matches_line_bundle() {
        for b in -20..=20 {
            let ideal = ideal_cohomology(&Lci::empty(), b);
            let line = line_cohomology(b);
            assert_eq!(ideal, line, "b = {b}");
        }
    }

    #[test]
    fn serre_duality_rank_symmetry() {
        for a in -20..=20i64 {
            assert_eq!(
                line_cohomology(a).h1_rank,
                line_cohomology(-a - 2).h0_rank,
                "a = {a}"
            );
        }
    }

    #[test]
    fn rank2_ranks() {
        assert_eq!(rank2_cohomology_ranks(&triple("-1,-1"), 0), (0, 0));
        assert_eq!(rank2_cohomology_ranks(&triple("0,0"), 0), (2, 0));
        assert_eq!(rank2_cohomology_ranks(&triple("-1,-1;2:1:1"), 1), (2, 0));
        assert_eq!(rank2_cohomology_ranks(&triple("3,-5"), 0), (4, 4));
    }

    #[test]
    fn fiber_splitting_jumps_on_support_only() {
        let t = triple("-1,-1;2:1:1");
        assert_eq!(
            fiber_splitting(&t, Fiber::At(2)).unwrap(),
            SplittingType::new(0, -2)
        );
        assert_eq!(
            fiber_splitting(&t, Fiber::At(5)).unwrap(),
            SplittingType::new(-1, -1)
        );
        assert_eq!(
            fiber_splitting(&t, Fiber::Generic).unwrap(),
            SplittingType::new(-1, -1)
        );
        let t = triple("3,1");
        assert_eq!(
            fiber_splitting(&t, Fiber::At(7)).unwrap(),
            SplittingType::new(3, 1)
        );
        assert!(fiber_splitting(&t, Fiber::At(6)).is_err());
    }

    #[test]
    fn fiber_degrees_sum_to_total_degree() {
        let triples = [
            triple("-1,-1;2:1:1"),
            triple("4,-3;2:2:3,3:1:1,2:1:2"),
            triple("0,0;5:3:4"),
        ];
        for t in &triples {
            for p in [2u64, 3, 5, 7, 11, 13] {
                let s = fiber_splitting(t, Fiber::At(p)).unwrap();
                assert_eq!(s.d1 + s.d2, t.a() + t.b(), "t = {t}, p = {p}");
            }
        }
    }

    #[test]
    fn nonempty_z_has_a_jumping_fiber() {
        let triples = [
            triple("-1,-1;2:1:1"),
            triple("5,2;7:2:2"),
            triple("0,0;3:1:4,5:2:2"),
        ];
        for t in &triples {
            let generic = fiber_splitting(t, Fiber::Generic).unwrap();
            assert!(t
                .z()
                .support()
                .iter()
                .any(|&p| fiber_splitting(t, Fiber::At(p)).unwrap() != generic));
        }
    }

    #[test]
    fn decomposability_is_emptiness_of_z() {
        assert!(is_decomposable(&triple("5,-2")));
        assert!(!is_decomposable(&triple("-1,-1;2:1:1")));
        assert!(!is_decomposable(&triple("0,0;3:2:2")));
    }

    #[test]
    fn no_cohomology_classification() {
        assert!(has_no_cohomology(&triple("-1,-1")));
        assert!(!has_no_cohomology(&triple("-1,-1;2:1:1")));
        assert!(!has_no_cohomology(&triple("0,-1")));
        // exhaustive scan, with the rank check for the unique positive
        for a in -4..=4i64 {
            for b in -4..=a {
                for z in [Lci::empty(), lci("2:1:1")] {
                    let t = Triple::new(a, b, z);
                    let expected = a == -1 && b == -1 && t.z().is_empty();
                    assert_eq!(has_no_cohomology(&t), expected, "t = {t}");
                    if expected {
                        assert_eq!(rank2_cohomology_ranks(&t, 0), (0, 0));
                    }
                }
            }
        }
    }

    #[test]
    fn triple_normalizes_twist_order() {
        let t = Triple::new(-3, 4, Lci::empty());
        assert_eq!((t.a(), t.b()), (4, -3));
        assert_eq!(triple("-3,4"), triple("4,-3"));
    }

    #[test]
    fn lci_aggregates_components_per_prime() {
        let z = lci("2:1:2,3:2,2:1");
        assert_eq!(z.support(), [2, 3]);
        assert_eq!(z.fiber_degree(2), 2);
        assert_eq!(z.fiber_degree(3), 2);
        assert_eq!(z.fiber_degree(5), 0);
        assert_eq!(z.max_fiber_degree(), Some(2));
        // #H^0(Z, O_Z) = 2^3 * 3^2
        assert_eq!(
            z.h0_log_order(),
            log_of_positive_integer(&num_bigint::BigInt::from(8 * 9)).unwrap()
        );
    }

    #[test]
    fn component_validation() {
        assert!(LciComponent::new(4, 1, 1).is_err());
        assert!(LciComponent::new(2, 0, 0).is_err());
        assert!(LciComponent::new(2, 2, 1).is_err());
        assert!(LciComponent::new(2, 1, 2).is_ok());
    }

    #[test]
    fn parsing_round_trips_and_errors() {
        for s in ["-1,-1;2:1", "4,-3;2:2:3,3:1", "0,0", "7,7;2:1:5"] {
            let t = triple(s);
            assert_eq!(triple(&format!("{t}")), t, "input {s:?}");
        }
        // error positions point at the offending chunk
        match "1,2;2:1,x:1".parse::<Triple>() {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 8),
            other => panic!("expected parse error, got {other:?}"),
        }
        match "1;2:1".parse::<Triple>() {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 0),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!("2,1;9:1".parse::<Triple>().is_err()); // 9 not prime
        assert!("2,1;2:0".parse::<Triple>().is_err()); // n = 0
        assert!("2,1;2:3:1".parse::<Triple>().is_err()); // len < n
    }
}
