//! The cross-validation suite behind `p1z verify`.
//!
//! Every check either reproduces a known value through an independent
//! route (the Glaisher oracle, the quadrature oracle, the transition-
//! matrix algorithm) or asserts an exact identity between two formulas
//! that the theory forces to agree (Riemann-Roch vs the closed form,
//! the two discriminant routes, the torsion/Euler-characteristic
//! relation). The quick suite runs reduced grids; `--deep` runs the full
//! ranges.

use std::time::Instant;

use p1z::arakelov::ArakelovNumber;
use p1z::birkhoff::gauge::{random_unimodular, XorShift};
use p1z::birkhoff::{roberts_matrix, TransitionMatrix2};
use p1z::invariants::{
    ahrr_rhs, analytic_torsion, chern_classes, chi_l2_line, chi_q_line, chi_q_rank2, discriminant,
    intersection_c1c1,
};
use p1z::oracle::{
    gram_entry_reference, quadrature_gram_entry, quadrature_offdiagonal_vanishing,
    zeta_prime_neg1_f64, PrecisionBudget,
};
use p1z::sheaf::{
    fiber_splitting, has_no_cohomology, ideal_cohomology, line_cohomology, rank2_cohomology_ranks,
    Fiber, Lci, LciComponent, SplittingType, TorsionStatus, Triple,
};
use p1z::Rational;

/// Result of one verification check.
#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub id: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

/// Grid sizes and oracle tolerances for the suite.
#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub twist_half_width: i64,
    pub z_max_n: u64,
    pub z_max_len: u64,
    pub gram_max_twist: u32,
    pub gauge_cases_per_prime: u32,
    pub torsion_half_width: i64,
    pub serre_half_width: i64,
    pub quad_budget: PrecisionBudget,
    pub zeta_digits: u32,
}

impl SuiteConfig {
    /// The full ranges of the acceptance criteria.
    pub fn deep() -> Self {
        SuiteConfig {
            twist_half_width: 5,
            z_max_n: 3,
            z_max_len: 4,
            gram_max_twist: 8,
            gauge_cases_per_prime: 100,
            torsion_half_width: 10,
            serre_half_width: 20,
            quad_budget: PrecisionBudget::default(),
            zeta_digits: 7,
        }
    }

    /// A faster subset with the same structure.
    pub fn quick() -> Self {
        SuiteConfig {
            twist_half_width: 3,
            z_max_n: 2,
            z_max_len: 3,
            gram_max_twist: 5,
            gauge_cases_per_prime: 25,
            torsion_half_width: 6,
            serre_half_width: 12,
            quad_budget: PrecisionBudget::default(),
            zeta_digits: 7,
        }
    }
}

/// Collects failures without aborting, so a report covers everything.
struct Audit {
    cases: usize,
    failures: Vec<String>,
}

impl Audit {
    fn new() -> Self {
        Audit {
            cases: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failures.len() < 5 {
            self.failures.push(msg());
        }
    }

    fn finish(self, summary: &str) -> (bool, String) {
        if self.failures.is_empty() {
            (true, format!("{} ({} cases)", summary, self.cases))
        } else {
            (false, self.failures.join("; "))
        }
    }
}

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Empty Z plus all single and double components over {2, 3, 5}.
fn z_grid(max_n: u64, max_len: u64) -> Vec<Lci> {
    let mut singles = Vec::new();
    for p in [2u64, 3, 5] {
        for n in 1..=max_n {
            for len in n..=max_len {
                singles.push(LciComponent::new(p, n, len).expect("valid component"));
            }
        }
    }
    let mut out = vec![Lci::empty()];
    for &c in &singles {
        out.push(Lci::new(vec![c]));
    }
    for (i, &c) in singles.iter().enumerate() {
        for &d in &singles[i..] {
            out.push(Lci::new(vec![c, d]));
        }
    }
    out
}

fn check_zeta_oracle(cfg: &SuiteConfig) -> (bool, String) {
    let mut audit = Audit::new();
    match zeta_prime_neg1_f64(cfg.zeta_digits) {
        Ok(z) => {
            audit.check((z - (-0.165_421_1)).abs() < 5e-8, || {
                format!("zeta'(-1) oracle returned {z}, expected -0.1654211 within 5e-8")
            });
            let a = (1.0 / 12.0 - z).exp();
            audit.check((a - 1.282_427_1).abs() < 1e-6, || {
                format!("Glaisher constant from oracle is {a}, expected 1.2824271")
            });
        }
        Err(e) => audit.check(false, || format!("oracle failed: {e}")),
    }
    audit.finish("Glaisher-limit zeta'(-1) matches the reference value")
}

fn check_roberts_example(_cfg: &SuiteConfig) -> (bool, String) {
    let mut audit = Audit::new();
    for p in [2u64, 3, 5] {
        let matrix = roberts_matrix(p).expect("p prime");
        let triple: Triple = format!("-1,-1;{p}:1:1").parse().expect("valid triple");
        for q in [2u64, 3, 5, 7, 11, 13] {
            let expected = if q == p {
                SplittingType::new(0, -2)
            } else {
                SplittingType::new(-1, -1)
            };
            let computed = matrix
                .reduce_mod(q)
                .and_then(|m| m.splitting_type())
                .expect("reduction stays unimodular");
            audit.check(computed == expected, || {
                format!("Roberts p={p} mod {q}: matrix gives {computed}, expected {expected}")
            });
            let predicted = fiber_splitting(&triple, Fiber::At(q)).expect("q prime");
            audit.check(computed == predicted, || {
                format!("Roberts p={p} mod {q}: matrix {computed} vs triple {predicted}")
            });
        }
    }
    audit.finish("transition-matrix splitting types match the fiber model")
}

fn check_ahrr_identity(cfg: &SuiteConfig) -> (bool, String) {
    let mut audit = Audit::new();
    let w = cfg.twist_half_width;
    for a in -w..=w {
        for b in -w..=a {
            for z in z_grid(cfg.z_max_n, cfg.z_max_len) {
                let t = Triple::new(a, b, z);
                let rhs = ahrr_rhs(&chern_classes(&t), 2).expect("rank 2");
                let closed = chi_q_rank2(&t);
                audit.check(rhs == closed, || {
                    format!("AHRR mismatch at {t}: rhs {rhs} vs closed form {closed}")
                });
            }
        }
    }
    audit.finish("Riemann-Roch rhs equals closed-form chi_Q exactly")
}

fn check_discriminant_identity(cfg: &SuiteConfig) -> (bool, String) {
    let mut audit = Audit::new();
    let w = cfg.twist_half_width;
    for a in -w..=w {
        for b in -w..=a {
            for z in z_grid(cfg.z_max_n, cfg.z_max_len) {
                let t = Triple::new(a, b, z);
                match discriminant(&t) {
                    Ok(value) => {
                        let gap = rat((a - b) * (a - b), 2);
                        let closed = t.z().h0_log_order().scale(&rat(4, 1))
                            - ArakelovNumber::from_rational(gap);
                        audit.check(value == closed, || {
                            format!("discriminant mismatch at {t}: {value} vs {closed}")
                        });
                    }
                    Err(e) => audit.check(false, || format!("discriminant failed at {t}: {e}")),
                }
            }
        }
    }
    audit.finish("4c2 - c1^2 equals 4 log #H^0(Z) - (a-b)^2/2 exactly")
}

fn check_torsion_consistency(cfg: &SuiteConfig) -> (bool, String) {
    let mut audit = Audit::new();
    for a in -cfg.torsion_half_width..=cfg.torsion_half_width {
        let lhs = chi_q_line(a);
        let rhs = chi_l2_line(a) + analytic_torsion(a).scale(&rat(1, 2));
        audit.check(lhs == rhs, || {
            format!("chi_Q(O({a})) != chi_L2 + T/2: {lhs} vs {rhs}")
        });
    }
    let forced = ArakelovNumber::zeta_multiple(rat(-4, 1));
    let t_minus_one = analytic_torsion(-1);
    audit.check(t_minus_one == forced, || {
        format!("T(O(-1)) = {t_minus_one}, expected -4*zeta'(-1)")
    });
    audit.finish("chi_Q = chi_L2 + T/2 exactly; T(O(-1)) = -4 zeta'(-1)")
}

fn check_gram_quadrature(cfg: &SuiteConfig) -> (bool, String) {
    let mut audit = Audit::new();
    let budget = cfg.quad_budget;
    for a in 0..=cfg.gram_max_twist {
        for i in 0..=a {
            match quadrature_gram_entry(a, i, &budget) {
                Ok(numeric) => {
                    let exact = gram_entry_reference(a, i);
                    audit.check((numeric - exact).abs() < 1e-9, || {
                        format!("Gram entry (a={a}, i={i}): quadrature {numeric} vs exact {exact}")
                    });
                }
                Err(e) => audit.check(false, || format!("quadrature failed at ({a}, {i}): {e}")),
            }
        }
        for i in 0..=a {
            for j in i + 1..=a {
                match quadrature_offdiagonal_vanishing(a, i, j, &budget) {
                    Ok(v) => audit.check(v.abs() < 1e-9, || {
                        format!("off-diagonal (a={a}, {i}, {j}) = {v}, expected < 1e-9")
                    }),
                    Err(e) => audit.check(false, || format!("off-diagonal ({a}, {i}, {j}): {e}")),
                }
            }
        }
    }
    audit.finish("quadrature reproduces i!(a-i)!/(a+1)! and vanishing off-diagonals")
}

fn check_gauge_invariance(cfg: &SuiteConfig) -> (bool, String) {
    let mut audit = Audit::new();
    let mut rng = XorShift(0xD1B5_4A32_D192_ED03);
    for p in [2u64, 3, 5, 7] {
        for _ in 0..cfg.gauge_cases_per_prime {
            let k1 = rng.below(7) as i64 - 3;
            let k2 = rng.below(7) as i64 - 3;
            let diag = TransitionMatrix2::diagonal(p, k1, k2).expect("p prime");
            let left = random_unimodular(p, &mut rng, false);
            let right = random_unimodular(p, &mut rng, true);
            let m = left.mul(&diag).mul(&right);
            let expected = SplittingType::new(-k1, -k2);

            let base = m.splitting_type().expect("valid matrix");
            audit.check(base == expected, || {
                format!("p={p}: splitting of dressed diag(t^{k1}, t^{k2}) is {base}")
            });

            let left2 = random_unimodular(p, &mut rng, false);
            let right2 = random_unimodular(p, &mut rng, true);
            let transformed = left2.mul(&m).mul(&right2);
            let s = transformed.splitting_type().expect("valid matrix");
            audit.check(s == base, || {
                format!("p={p}: gauge transform changed splitting {base} -> {s}")
            });
            let (_, k) = transformed.det_unit().expect("unit determinant");
            audit.check(s.d1 + s.d2 == -k, || {
                format!("p={p}: degree {} + {} != -({k})", s.d1, s.d2)
            });
        }
    }
    audit.finish("splitting types are gauge-invariant with conserved degree")
}

fn check_no_cohomology_classifier(_cfg: &SuiteConfig) -> (bool, String) {
    let mut audit = Audit::new();
    let witness = LciComponent::new(2, 1, 1).expect("valid component");
    for a in -4..=4i64 {
        for b in -4..=4i64 {
            for z in [Lci::empty(), Lci::new(vec![witness])] {
                let t = Triple::new(a, b, z);
                let expected = t.a() == -1 && t.b() == -1 && t.z().is_empty();
                let got = has_no_cohomology(&t);
                audit.check(got == expected, || {
                    format!("has_no_cohomology({t}) = {got}, expected {expected}")
                });
                if expected {
                    let ranks = rank2_cohomology_ranks(&t, 0);
                    audit.check(ranks == (0, 0), || {
                        format!("ranks of the no-cohomology bundle: {ranks:?}")
                    });
                }
            }
        }
    }
    audit.finish("exactly (-1,-1,{}) has no cohomology")
}

fn check_serre_duality(cfg: &SuiteConfig) -> (bool, String) {
    let mut audit = Audit::new();
    for a in -cfg.serre_half_width..=cfg.serre_half_width {
        let h1 = line_cohomology(a).h1_rank;
        let h0 = line_cohomology(-a - 2).h0_rank;
        audit.check(h1 == h0, || {
            format!("rank H^1(O({a})) = {h1} but rank H^0(O({})) = {h0}", -a - 2)
        });
    }
    audit.finish("rank H^1(O(a)) = rank H^0(O(-a-2))")
}

fn check_worked_examples(_cfg: &SuiteConfig) -> (bool, String) {
    let mut audit = Audit::new();
    let mut eq = |ok: bool, what: &str| audit.check(ok, || format!("mismatch: {what}"));

    // line bundle cohomology
    let p = line_cohomology(3);
    eq(
        (p.h0_rank, p.h1_rank, p.h1_torsion.clone()) == (4, 0, TorsionStatus::Zero),
        "rank H^i(O(3))",
    );
    let p = line_cohomology(-1);
    eq((p.h0_rank, p.h1_rank) == (0, 0), "rank H^i(O(-1))");
    let p = line_cohomology(-3);
    eq((p.h0_rank, p.h1_rank) == (0, 2), "rank H^i(O(-3))");

    // ideal sheaf cohomology
    let z: Lci = "2:1:1".parse().expect("valid Z");
    let p = ideal_cohomology(&z, 0);
    eq(
        (p.h0_rank, p.h1_rank, p.h1_torsion.clone()) == (1, 0, TorsionStatus::Zero),
        "H^i(I_Z(0)) for Z = {2:1:1}",
    );
    let p = ideal_cohomology(&z, -1);
    let log2 = ArakelovNumber::log_term(2, rat(1, 1)).expect("2 is prime");
    eq(
        (p.h0_rank, p.h1_rank) == (0, 0) && p.h1_torsion == TorsionStatus::ExactLogOrder(log2),
        "H^1(I_Z(-1)) torsion of order 2",
    );

    // the no-cohomology bundle and its ranks
    let t: Triple = "-1,-1".parse().expect("valid triple");
    eq(
        rank2_cohomology_ranks(&t, 0) == (0, 0),
        "E = O(-1)+O(-1) has no cohomology",
    );
    eq(
        has_no_cohomology(&t),
        "no-cohomology classification (positive)",
    );
    let t: Triple = "-1,-1;2:1:1".parse().expect("valid triple");
    eq(
        !has_no_cohomology(&t),
        "no-cohomology classification (negative)",
    );

    // fiber splitting of the Roberts bundle
    eq(
        fiber_splitting(&t, Fiber::At(2)).expect("prime") == SplittingType::new(0, -2),
        "splitting on the special fiber",
    );
    eq(
        fiber_splitting(&t, Fiber::At(5)).expect("prime") == SplittingType::new(-1, -1),
        "splitting away from the special fiber",
    );

    // decomposability
    let split: Triple = "5,-2".parse().expect("valid triple");
    eq(
        p1z::sheaf::is_decomposable(&split) && !p1z::sheaf::is_decomposable(&t),
        "decomposable iff Z empty",
    );

    // Roberts matrices and their reductions
    for p in [2u64, 3, 5] {
        let m = roberts_matrix(p).expect("prime");
        eq(
            format!("{m}") == format!("t^2, {p}*t; 0, 1"),
            "Roberts matrix shape",
        );
    }
    let m = roberts_matrix(2)
        .expect("prime")
        .reduce_mod(2)
        .expect("unit");
    eq(format!("{m}") == "t^2, 0; 0, 1", "Roberts reduction mod p");

    // transition-matrix dictionary
    let d = TransitionMatrix2::diagonal(7, 2, 0).expect("prime");
    eq(d.h0_dim(0).expect("valid") == 1, "h^0(O + O(-2)) = 1");
    eq(
        d.splitting_type().expect("valid") == SplittingType::new(0, -2),
        "diag(t^2, 1) glues O + O(-2)",
    );
    let d = TransitionMatrix2::diagonal(7, 1, 1).expect("prime");
    eq(
        d.splitting_type().expect("valid") == SplittingType::new(-1, -1),
        "diag(t, t) glues O(-1) + O(-1)",
    );

    // intersection theory base value and Chern classes
    eq(
        intersection_c1c1(1, 1) == rat(1, 2),
        "deg f_*(c1(O(1))^2) = 1/2",
    );
    for (a, b) in [(0i64, 0i64), (3, 1), (-2, -5)] {
        let c = chern_classes(&Triple::new(a, b, Lci::empty()));
        eq(
            c.c1_twist() == a + b && c.c2_degree() == &ArakelovNumber::from_rational(rat(a * b, 2)),
            "Chern classes of a split bundle",
        );
    }

    // R-genus degree term at rank 1
    let r = p1z::arakelov::r_genus_degree_term(1).expect("rank 1");
    eq(
        r.rational_part() == &rat(-1, 12) && r.zeta_coeff() == &rat(2, 1),
        "R-genus term 2 zeta'(-1) + zeta(-1)",
    );

    audit.finish("worked example battery")
}

type Check = fn(&SuiteConfig) -> (bool, String);

const CHECKS: &[(&str, &str, Check)] = &[
    (
        "zeta-oracle",
        "zeta'(-1) via the Glaisher limit",
        check_zeta_oracle,
    ),
    (
        "roberts-example",
        "Roberts matrix vs fiber splitting",
        check_roberts_example,
    ),
    (
        "ahrr-identity",
        "arithmetic Riemann-Roch dual route",
        check_ahrr_identity,
    ),
    (
        "discriminant-identity",
        "discriminant dual route",
        check_discriminant_identity,
    ),
    (
        "torsion-consistency",
        "analytic torsion vs Euler characteristics",
        check_torsion_consistency,
    ),
    (
        "gram-quadrature",
        "L2 Gram entries vs adaptive quadrature",
        check_gram_quadrature,
    ),
    (
        "gauge-invariance",
        "splitting types under gauge transformations",
        check_gauge_invariance,
    ),
    (
        "no-cohomology-classifier",
        "classification of cohomology-free bundles",
        check_no_cohomology_classifier,
    ),
    (
        "serre-duality",
        "Serre duality rank symmetry",
        check_serre_duality,
    ),
    (
        "worked-examples",
        "worked example battery",
        check_worked_examples,
    ),
];

/// Runs every check with default configuration.
pub fn run_suite(deep: bool) -> Vec<CheckOutcome> {
    let cfg = if deep {
        SuiteConfig::deep()
    } else {
        SuiteConfig::quick()
    };
    run_suite_with(&cfg)
}

/// Runs every check with explicit grid sizes and tolerances.
pub fn run_suite_with(cfg: &SuiteConfig) -> Vec<CheckOutcome> {
    CHECKS
        .iter()
        .map(|&(id, name, check)| {
            let start = Instant::now();
            let (passed, detail) = check(cfg);
            CheckOutcome {
                id,
                name,
                passed,
                detail,
                millis: start.elapsed().as_millis(),
            }
        })
        .collect()
}
