//! Independent numerical verification of the exact results.
//!
//! Two oracles live here, and their outputs are reals that only ever
//! appear in assertions, never inside exact computations:
//!
//! * [`zeta_prime_neg1`] evaluates `zeta'(-1) = 1/12 - log A` through the
//!   defining limit of the Glaisher-Kinkelin constant
//!   `A = lim K(n+1) / (n^(n^2/2 + n/2 + 1/12) exp(-n^2/4))` with
//!   `K(n) = prod i^i`, accelerated by Richardson extrapolation over
//!   `n = 8 * 2^j` (the limit has an error expansion in powers of
//!   `1/n^2`, so each extrapolation column removes one power).
//! * [`quadrature_gram_entry`] and [`quadrature_offdiagonal_vanishing`]
//!   integrate the Fubini-Study L2 inner products numerically, after the
//!   rational substitution `t = u/(1-u)` maps `(0, inf)` onto `(0, 1)`;
//!   adaptive bisection with a 15-point Gauss-Kronrod rule handles the
//!   endpoint behaviour.

use alloc::vec;
use alloc::vec::Vec;

// Float methods resolve through libm when std is disabled.
#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::highprec::{bits_for_digits, BigFixed};
use crate::{rat, Rational};

/// Tolerance and subdivision budget for the adaptive quadrature.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PrecisionBudget {
    pub abs_tol: f64,
    pub max_subdivisions: u32,
}

impl Default for PrecisionBudget {
    fn default() -> Self {
        PrecisionBudget {
            abs_tol: 1e-10,
            max_subdivisions: 256,
        }
    }
}

impl PrecisionBudget {
    /// Double precision cannot certify tolerances below 1e-14.
    pub const MIN_ABS_TOL: f64 = 1e-14;

    pub fn new(abs_tol: f64, max_subdivisions: u32) -> Result<Self> {
        if abs_tol.is_nan() || abs_tol < Self::MIN_ABS_TOL {
            return Err(Error::Domain {
                op: "PrecisionBudget",
                reason: alloc::format!("abs_tol must be at least {}", Self::MIN_ABS_TOL),
            });
        }
        if max_subdivisions == 0 {
            return Err(Error::Domain {
                op: "PrecisionBudget",
                reason: "max_subdivisions must be positive".into(),
            });
        }
        Ok(PrecisionBudget {
            abs_tol,
            max_subdivisions,
        })
    }
}

// ---------------------------------------------------------------------------
// zeta'(-1) via the Glaisher limit

/// Largest supported digit count for [`zeta_prime_neg1`].
pub const MAX_ZETA_DIGITS: u32 = 30;

/// Extrapolation budget: sample points `n = 8 * 2^j` for `j <= J_MAX`.
const J_MAX: u32 = 12;

/// `zeta'(-1)` to the requested number of decimal digits, computed from
/// the Glaisher limit with Richardson acceleration.
///
/// Convergence is declared when two consecutive extrapolation diagonals
/// agree below the target digit; because later diagonals only refine
/// strictly below that level, already-converged digits never change when
/// the budget grows.
pub fn zeta_prime_neg1(digits: u32) -> Result<BigFixed> {
    if digits == 0 || digits > MAX_ZETA_DIGITS {
        return Err(Error::Domain {
            op: "zeta_prime_neg1",
            reason: alloc::format!("digits must be in 1..={MAX_ZETA_DIGITS}"),
        });
    }
    let bits = bits_for_digits(digits + 10);

    // ln i for 2 <= i <= current n: primes by series, composites by
    // additivity over the smallest prime factor.
    let mut ln_table: Vec<BigFixed> = vec![BigFixed::zero(bits); 2];
    let mut partial_sum = BigFixed::zero(bits); // sum of i ln i so far
    let mut covered = 1u64;

    let mut prev_row: Vec<BigFixed> = Vec::new();
    for j in 0..=J_MAX {
        let n = 8u64 << j;
        extend_ln_table(&mut ln_table, n, bits);
        for i in covered + 1..=n {
            partial_sum = partial_sum.add(&ln_table[i as usize].mul_int(i as i64));
        }
        covered = n;

        // g(n) = sum - (n^2/2 + n/2 + 1/12) ln n + n^2/4  ->  log A
        let n_rat = rat::int(n as i64);
        let coeff = &n_rat * &n_rat * rat::of(1, 2) + &n_rat * rat::of(1, 2) + rat::of(1, 12);
        let quarter = &n_rat * &n_rat * rat::of(1, 4);
        let g = partial_sum
            .sub(&ln_table[n as usize].mul_rational(&coeff))
            .add(&BigFixed::from_rational(&quarter, bits));

        // Richardson row: column m removes the n^(-2m) error term.
        let mut row = vec![g];
        for m in 1..=j as usize {
            let diff = row[m - 1].sub(&prev_row[m - 1]);
            row.push(row[m - 1].add(&diff.div_int(4i64.pow(m as u32) - 1)));
        }
        if j >= 1 {
            let diag_step = row[j as usize].sub(&prev_row[j as usize - 1]);
            if diag_step.abs_below_pow10(-(digits as i32) - 1) {
                let twelfth = BigFixed::from_rational(&rat::of(1, 12), bits);
                return Ok(twelfth.sub(&row[j as usize]));
            }
        }
        prev_row = row;
    }
    Err(Error::Convergence {
        what: "Glaisher limit extrapolation exhausted its budget",
    })
}

/// Double-precision view of [`zeta_prime_neg1`].
pub fn zeta_prime_neg1_f64(digits: u32) -> Result<f64> {
    Ok(zeta_prime_neg1(digits)?.to_f64())
}

fn extend_ln_table(table: &mut Vec<BigFixed>, n: u64, bits: u32) {
    for i in table.len() as u64..=n {
        let entry = match smallest_prime_factor(i) {
            Some(p) if p < i => {
                let rest = table[(i / p) as usize].clone();
                table[p as usize].add(&rest)
            }
            _ => crate::highprec::ln_u64(i, bits),
        };
        table.push(entry);
    }
}

fn smallest_prime_factor(n: u64) -> Option<u64> {
    for &p in crate::primes::sieve() {
        let p = u64::from(p);
        if p * p > n {
            return None;
        }
        if n.is_multiple_of(p) {
            return Some(p);
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Adaptive Gauss-Kronrod quadrature

// 15-point Kronrod abscissae/weights with the embedded 7-point Gauss rule
// (the classical QUADPACK constants, kept at full published precision).
// Nodes are symmetric about 0.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// One Gauss-Kronrod 15 pass over `[lo, hi]`: `(estimate, error_estimate)`.
fn gk15<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> (f64, f64) {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let mut kronrod = 0.0;
    let mut gauss = 0.0;
    for (idx, (&x, &wk)) in XGK.iter().zip(WGK.iter()).enumerate() {
        let (f_plus, f_minus) = if x == 0.0 {
            let v = f(center);
            (v, 0.0)
        } else {
            (f(center + half * x), f(center - half * x))
        };
        let pair = f_plus + f_minus;
        kronrod += wk * pair;
        // Odd Kronrod indices (including the center) are the embedded
        // Gauss nodes.
        if idx % 2 == 1 {
            gauss += WG[idx / 2] * pair;
        }
    }
    (kronrod * half, (kronrod - gauss).abs() * half)
}

/// Adaptive bisection: splits the worst segment until the summed error
/// estimate meets the budget.
fn integrate_adaptive<F: Fn(f64) -> f64>(
    f: &F,
    lo: f64,
    hi: f64,
    budget: &PrecisionBudget,
) -> Result<f64> {
    struct Segment {
        lo: f64,
        hi: f64,
        value: f64,
        error: f64,
    }
    let (value, error) = gk15(f, lo, hi);
    let mut segments = vec![Segment {
        lo,
        hi,
        value,
        error,
    }];
    for _ in 0..budget.max_subdivisions {
        let total_error: f64 = segments.iter().map(|s| s.error).sum();
        if total_error <= budget.abs_tol {
            return Ok(segments.iter().map(|s| s.value).sum());
        }
        let worst = segments
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.error.total_cmp(&b.1.error))
            .map(|(i, _)| i)
            .expect("segments nonempty");
        let Segment { lo, hi, .. } = segments.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        for (a, b) in [(lo, mid), (mid, hi)] {
            let (value, error) = gk15(f, a, b);
            segments.push(Segment {
                lo: a,
                hi: b,
                value,
                error,
            });
        }
    }
    Err(Error::Convergence {
        what: "adaptive quadrature exhausted its subdivision budget",
    })
}

/// The diagonal Gram integrand `t^i / (1+t)^(a+2)` transported to `(0, 1)`
/// by `t = u/(1-u)` (Jacobian `(1+t)^2`), evaluated in log space so large
/// `t` cannot overflow.
fn gram_integrand(a: u32, i: u32, u: f64) -> f64 {
    if u <= 0.0 {
        return if i == 0 { 1.0 } else { 0.0 };
    }
    if u >= 1.0 {
        return 0.0;
    }
    let t = u / (1.0 - u);
    let mut log_value = -(a as f64) * t.ln_1p();
    if i > 0 {
        log_value += (i as f64) * t.ln();
    }
    log_value.exp()
}

/// Numerically integrates `t^i / (1+t)^(a+2)` over `(0, inf)`; the exact
/// value is `i!(a-i)!/(a+1)!`.
pub fn quadrature_gram_entry(a: u32, i: u32, budget: &PrecisionBudget) -> Result<f64> {
    if i > a {
        return Err(Error::Domain {
            op: "quadrature_gram_entry",
            reason: alloc::format!("index {i} outside 0..={a}"),
        });
    }
    PrecisionBudget::new(budget.abs_tol, budget.max_subdivisions)?;
    integrate_adaptive(&|u| gram_integrand(a, i, u), 0.0, 1.0, budget)
}

/// Numerically confirms that the off-diagonal L2 inner product
/// `(1/pi) int int r^(i+j+1) exp(I phi (i-j)) / (1+r^2)^(a+2) dr dphi`
/// vanishes: returns the magnitude of the numerically evaluated entry,
/// which must come out below the tolerance.
pub fn quadrature_offdiagonal_vanishing(
    a: u32,
    i: u32,
    j: u32,
    budget: &PrecisionBudget,
) -> Result<f64> {
    if i == j || i > a || j > a {
        return Err(Error::Domain {
            op: "quadrature_offdiagonal_vanishing",
            reason: alloc::format!("indices ({i}, {j}) must be distinct and within 0..={a}"),
        });
    }
    PrecisionBudget::new(budget.abs_tol, budget.max_subdivisions)?;

    // Radial factor through the same rational substitution.
    let radial_exponent = (i + j + 1) as f64;
    let radial = integrate_adaptive(
        &|v: f64| {
            if v <= 0.0 || v >= 1.0 {
                return 0.0;
            }
            let r = v / (1.0 - v);
            let log_value =
                radial_exponent * r.ln() - (a as f64 + 2.0) * (r * r).ln_1p() + 2.0 * r.ln_1p();
            log_value.exp()
        },
        0.0,
        1.0,
        budget,
    )?;

    // Angular factor over a full period.
    let k = i as f64 - j as f64;
    let two_pi = 2.0 * core::f64::consts::PI;
    let cos_part = integrate_adaptive(&|phi: f64| (k * phi).cos(), 0.0, two_pi, budget)?;
    let sin_part = integrate_adaptive(&|phi: f64| (k * phi).sin(), 0.0, two_pi, budget)?;

    Ok(radial * cos_part.hypot(sin_part) / core::f64::consts::PI)
}

/// Exact Gram entry as a float, for assertions.
pub fn gram_entry_reference(a: u32, i: u32) -> f64 {
    let q: Rational = crate::invariants::gram_matrix_h0(a as i64)
        .expect("a >= 0")
        .diagonal()[i as usize]
        .clone();
    use num_traits::ToPrimitive;
    q.numer().to_f64().unwrap() / q.denom().to_f64().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::highprec::ZETA_PRIME_NEG1_DECIMAL;

    #[test]
    fn zeta_reproduces_reference_value() {
        let z = zeta_prime_neg1_f64(7).unwrap();
        assert!((z - (-0.165_421_1)).abs() < 5e-8, "z = {z}");
    }

    #[test]
    fn zeta_low_precision_rounding() {
        let z = zeta_prime_neg1(2).unwrap();
        assert_eq!(z.to_decimal(2), "-0.17");
    }

    #[test]
    fn zeta_consistent_with_glaisher_constant() {
        // A = exp(1/12 - zeta'(-1)) must come out at the known value.
        let z = zeta_prime_neg1_f64(10).unwrap();
        let a = (1.0 / 12.0 - z).exp();
        assert!((a - 1.282_427_1).abs() < 1e-7, "A = {a}");
    }

    #[test]
    fn zeta_monotone_stability_and_stored_constant() {
        let coarse = zeta_prime_neg1(8).unwrap();
        let fine = zeta_prime_neg1(25).unwrap();
        let reference_coarse =
            BigFixed::from_decimal_str(ZETA_PRIME_NEG1_DECIMAL, coarse.bits()).unwrap();
        let reference_fine =
            BigFixed::from_decimal_str(ZETA_PRIME_NEG1_DECIMAL, fine.bits()).unwrap();
        assert!(coarse.sub(&reference_coarse).abs_below_pow10(-8));
        assert!(fine.sub(&reference_fine).abs_below_pow10(-25));
        // the independent route confirms the stored constant to 30 digits
        let full = zeta_prime_neg1(30).unwrap();
        let reference_full =
            BigFixed::from_decimal_str(ZETA_PRIME_NEG1_DECIMAL, full.bits()).unwrap();
        assert!(full.sub(&reference_full).abs_below_pow10(-30));
    }

    #[test]
    fn zeta_rejects_out_of_range_digits() {
        assert!(zeta_prime_neg1(0).is_err());
        assert!(zeta_prime_neg1(MAX_ZETA_DIGITS + 1).is_err());
    }

    #[test]
    fn gram_quadrature_examples() {
        let budget = PrecisionBudget::default();
        assert!((quadrature_gram_entry(0, 0, &budget).unwrap() - 1.0).abs() < 1e-10);
        assert!((quadrature_gram_entry(1, 0, &budget).unwrap() - 0.5).abs() < 1e-10);
        assert!((quadrature_gram_entry(2, 1, &budget).unwrap() - 1.0 / 6.0).abs() < 1e-10);
    }

    #[test]
    fn gram_quadrature_matches_exact_values() {
        let budget = PrecisionBudget::default();
        for a in 0..=5u32 {
            for i in 0..=a {
                let numeric = quadrature_gram_entry(a, i, &budget).unwrap();
                let exact = gram_entry_reference(a, i);
                assert!(
                    (numeric - exact).abs() < 1e-9,
                    "a={a} i={i}: {numeric} vs {exact}"
                );
            }
        }
    }

    #[test]
    fn offdiagonal_entries_vanish() {
        let budget = PrecisionBudget::default();
        for (a, i, j) in [(2u32, 0u32, 1u32), (3, 0, 2), (5, 1, 4)] {
            let v = quadrature_offdiagonal_vanishing(a, i, j, &budget).unwrap();
            assert!(v.abs() < 1e-9, "(a,i,j)=({a},{i},{j}): {v}");
        }
        assert!(quadrature_offdiagonal_vanishing(3, 1, 1, &budget).is_err());
    }

    #[test]
    fn quadrature_budget_exhaustion_is_reported() {
        let budget = PrecisionBudget {
            abs_tol: 1e-14,
            max_subdivisions: 1,
        };
        let out = quadrature_offdiagonal_vanishing(8, 0, 7, &budget);
        assert!(matches!(out, Err(Error::Convergence { .. })));
    }

    #[test]
    fn budget_validation() {
        assert!(PrecisionBudget::new(1e-15, 10).is_err());
        assert!(PrecisionBudget::new(f64::NAN, 10).is_err());
        assert!(PrecisionBudget::new(1e-10, 0).is_err());
        assert!(PrecisionBudget::new(1e-10, 10).is_ok());
    }
}
