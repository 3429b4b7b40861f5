//! Argument parsing, dispatch and rendering.

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use p1z::arakelov::ArakelovNumber;
use p1z::birkhoff::{parse_matrix_entries, roberts_matrix, TransitionMatrix2};
use p1z::invariants::{
    ahrr_rhs, analytic_torsion, chern_classes, chi_q_rank2, degree_h0_line, discriminant,
    gram_matrix_h0,
};
use p1z::oracle::PrecisionBudget;
use p1z::sheaf::{
    fiber_splitting, ideal_cohomology, line_cohomology, rank2_cohomology_ranks, CohomologyProfile,
    Fiber, TorsionStatus, Triple,
};
use p1z::Error;

use crate::json::{arakelov_to_json, command_envelope, render_pretty};
use crate::verify;

#[derive(Parser)]
#[command(
    name = "p1z",
    version,
    about = "Exact invariants of rank-two vector bundles on the projective line over the integers",
    long_about = "Computes classical and Arakelov-theoretic invariants of rank-two vector \
                  bundles on P^1 over Z from their classifying triple (a, b, Z), keeping every \
                  value exact in the module spanned by 1, zeta'(-1) and logarithms of primes. \
                  Triples are written \"a,b;Z\" where Z is a comma-separated list of components \
                  \"p:n\" or \"p:n:len\" (empty for the split case), e.g. \"-1,-1;2:1\"."
)]
struct Cli {
    /// Emit machine-readable JSON instead of tables.
    #[arg(long, global = true)]
    json: bool,

    /// Decimal precision of numeric output; absolute error stays below
    /// 10^(1-PRECISION).
    #[arg(long, global = true, default_value_t = 10)]
    precision: u32,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cohomology of O(a+n), I_Z(b+n) and the rank-two bundle E(n).
    Cohomology {
        /// Classifying triple "a,b;Z".
        #[arg(long, allow_hyphen_values = true)]
        triple: String,
        /// Twist n applied to the whole extension.
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        twist: i64,
    },
    /// Fiberwise splitting types of the bundle.
    Splitting {
        /// Classifying triple "a,b;Z".
        #[arg(long, allow_hyphen_values = true)]
        triple: String,
        /// Comma-separated primes to inspect, e.g. "2,5,7".
        #[arg(long)]
        primes: String,
    },
    /// Arithmetic Chern classes and the discriminant.
    Chern {
        /// Classifying triple "a,b;Z".
        #[arg(long, allow_hyphen_values = true)]
        triple: String,
    },
    /// Q-Euler characteristic by both routes (closed form and
    /// Riemann-Roch right-hand side), exact and numeric.
    Chi {
        /// Classifying triple "a,b;Z".
        #[arg(long, allow_hyphen_values = true)]
        triple: String,
    },
    /// Ray-Singer analytic torsion of O(a) on the Fubini-Study CP^1.
    #[command(
        long_about = "Ray-Singer analytic torsion of O(a) on the Fubini-Study CP^1, exact and \
                      numeric.\n\nSign convention: T(E) = sum_q (-1)^q q zeta_q'(0). Part of the \
                      literature (e.g. Weng's combinatorial formula) uses the opposite sign; \
                      values there differ from these by a factor of -1."
    )]
    Torsion {
        /// Twist a of the line bundle O(a).
        #[arg(long, allow_negative_numbers = true)]
        twist: i64,
    },
    /// L2 Gram matrix of H^0(O(a)) and the Arakelov degree it yields.
    Gram {
        /// Twist a >= 0 of the line bundle O(a).
        #[arg(long, allow_negative_numbers = true)]
        twist: i64,
    },
    /// Splitting type computed from a transition matrix over F_p.
    Birkhoff {
        /// Matrix "t^2, 2*t; 0, 1" (rows ';'-separated, entries ','-separated).
        #[arg(long, conflicts_with = "roberts", allow_hyphen_values = true)]
        matrix: Option<String>,
        /// Use the Roberts matrix [[t^2, p*t], [0, 1]] for this prime p.
        #[arg(long)]
        roberts: Option<u64>,
        /// Prime modulus to reduce and compute over.
        #[arg(long = "mod")]
        modulus: u64,
    },
    /// Run the cross-validation suite and report per-check results.
    Verify {
        /// Run the full acceptance-scale grids instead of the quick subset.
        #[arg(long)]
        deep: bool,
        /// Absolute tolerance for the quadrature oracle (>= 1e-14).
        #[arg(long, default_value_t = 1e-10)]
        quad_tol: f64,
        /// Subdivision budget for the adaptive quadrature.
        #[arg(long, default_value_t = 256)]
        quad_subdivisions: u32,
        /// Digits requested from the zeta'(-1) oracle (criterion needs >= 7).
        #[arg(long, default_value_t = 7)]
        zeta_digits: u32,
    },
}

/// Entry point shared by the binary and the tests: returns the rendered
/// output and the exit code (0 ok, 1 domain error, 2 parse error,
/// 3 verification failure).
pub fn run(argv: &[String]) -> (String, u8) {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            return (e.to_string(), code);
        }
    };
    match dispatch(&cli) {
        Ok((output, code)) => (output, code),
        Err(e) => {
            let code = match e {
                Error::Parse { .. } => 2,
                _ => 1,
            };
            (format!("error: {e}\n"), code)
        }
    }
}

fn dispatch(cli: &Cli) -> Result<(String, u8), Error> {
    let precision = cli.precision;
    match &cli.command {
        Command::Cohomology { triple, twist } => {
            let t: Triple = triple.parse()?;
            Ok((cmd_cohomology(&t, *twist, cli.json, precision)?, 0))
        }
        Command::Splitting { triple, primes } => {
            let t: Triple = triple.parse()?;
            let primes = parse_prime_list(primes)?;
            Ok((cmd_splitting(&t, &primes, cli.json)?, 0))
        }
        Command::Chern { triple } => {
            let t: Triple = triple.parse()?;
            Ok((cmd_chern(&t, cli.json, precision)?, 0))
        }
        Command::Chi { triple } => {
            let t: Triple = triple.parse()?;
            Ok((cmd_chi(&t, cli.json, precision)?, 0))
        }
        Command::Torsion { twist } => Ok((cmd_torsion(*twist, cli.json, precision)?, 0)),
        Command::Gram { twist } => Ok((cmd_gram(*twist, cli.json, precision)?, 0)),
        Command::Birkhoff {
            matrix,
            roberts,
            modulus,
        } => Ok((
            cmd_birkhoff(matrix.as_deref(), *roberts, *modulus, cli.json)?,
            0,
        )),
        Command::Verify {
            deep,
            quad_tol,
            quad_subdivisions,
            zeta_digits,
        } => {
            let mut cfg = if *deep {
                verify::SuiteConfig::deep()
            } else {
                verify::SuiteConfig::quick()
            };
            cfg.quad_budget = PrecisionBudget::new(*quad_tol, *quad_subdivisions)?;
            cfg.zeta_digits = *zeta_digits;
            Ok(cmd_verify(&cfg, *deep, cli.json))
        }
    }
}

fn parse_prime_list(s: &str) -> Result<Vec<u64>, Error> {
    let mut offset = 0;
    let mut out = Vec::new();
    for chunk in s.split(',') {
        let value = chunk.trim().parse::<u64>().map_err(|_| Error::Parse {
            pos: offset,
            reason: format!("expected a prime, found {:?}", chunk.trim()),
        })?;
        out.push(value);
        offset += chunk.len() + 1;
    }
    Ok(out)
}

/// `exact = ...; numeric = ...` pair for a table line.
fn exact_numeric(x: &ArakelovNumber, precision: u32) -> Result<String, Error> {
    let numeric = x
        .numeric_value(precision)?
        .to_decimal(precision.saturating_sub(1));
    Ok(format!("{x}   (numeric {numeric})"))
}

fn torsion_line(status: &TorsionStatus) -> String {
    match status {
        TorsionStatus::Zero => "torsion-free".into(),
        TorsionStatus::ExactLogOrder(order) => format!("torsion of exact log-order {order}"),
        TorsionStatus::UnknownDividing(order) => {
            format!("torsion of log-order dividing {order}")
        }
    }
}

fn torsion_json(status: &TorsionStatus, precision: u32) -> Result<Value, Error> {
    Ok(match status {
        TorsionStatus::Zero => json!({"kind": "zero"}),
        TorsionStatus::ExactLogOrder(order) => json!({
            "kind": "exact",
            "log_order": arakelov_to_json(order, precision)?,
        }),
        TorsionStatus::UnknownDividing(order) => json!({
            "kind": "divides",
            "log_order": arakelov_to_json(order, precision)?,
        }),
    })
}

fn profile_json(p: &CohomologyProfile, precision: u32) -> Result<Value, Error> {
    Ok(json!({
        "h0_rank": p.h0_rank,
        "h1_rank": p.h1_rank,
        "h1_torsion": torsion_json(&p.h1_torsion, precision)?,
    }))
}

fn cmd_cohomology(t: &Triple, twist: i64, as_json: bool, precision: u32) -> Result<String, Error> {
    let overflow = || Error::Domain {
        op: "cohomology",
        reason: "twist out of machine range".into(),
    };
    let a = t.a().checked_add(twist).ok_or_else(overflow)?;
    let b = t.b().checked_add(twist).ok_or_else(overflow)?;
    let line = line_cohomology(a);
    let ideal = ideal_cohomology(t.z(), b);
    let (e_h0, e_h1) = rank2_cohomology_ranks(t, twist);
    if as_json {
        let v = command_envelope(
            "cohomology",
            vec![
                ("triple", json!(t.to_string())),
                ("twist", json!(twist)),
                ("line", profile_json(&line, precision)?),
                ("ideal", profile_json(&ideal, precision)?),
                ("bundle_ranks", json!({"h0_rank": e_h0, "h1_rank": e_h1})),
            ],
        );
        return Ok(render_pretty(&v) + "\n");
    }
    let mut out = String::new();
    out.push_str(&format!("triple: {t}   twist: {twist}\n"));
    out.push_str(&format!(
        "{:<10} h0 rank {}, h1 rank {}, H1 {}\n",
        format!("O({a}):"),
        line.h0_rank,
        line.h1_rank,
        torsion_line(&line.h1_torsion)
    ));
    out.push_str(&format!(
        "{:<10} h0 rank {}, h1 rank {}, H1 {}\n",
        format!("I_Z({b}):"),
        ideal.h0_rank,
        ideal.h1_rank,
        torsion_line(&ideal.h1_torsion)
    ));
    out.push_str(&format!(
        "{:<10} h0 rank {e_h0}, h1 rank {e_h1} (H1 torsion not determined by the triple)\n",
        format!("E({twist}):")
    ));
    Ok(out)
}

fn cmd_splitting(t: &Triple, primes: &[u64], as_json: bool) -> Result<String, Error> {
    let generic = fiber_splitting(t, Fiber::Generic)?;
    let mut per_prime = Vec::new();
    for &p in primes {
        per_prime.push((p, fiber_splitting(t, Fiber::At(p))?));
    }
    if as_json {
        let fibers: Vec<Value> = per_prime
            .iter()
            .map(|(p, s)| json!({"prime": p, "d1": s.d1, "d2": s.d2}))
            .collect();
        let v = command_envelope(
            "splitting",
            vec![
                ("triple", json!(t.to_string())),
                ("generic", json!({"d1": generic.d1, "d2": generic.d2})),
                ("fibers", Value::Array(fibers)),
            ],
        );
        return Ok(render_pretty(&v) + "\n");
    }
    let mut out = format!("triple: {t}\ngeneric fiber: {generic}\n");
    for (p, s) in per_prime {
        let jumped = if s == generic { "" } else { "   <- jumps" };
        out.push_str(&format!("p = {p}: {s}{jumped}\n"));
    }
    Ok(out)
}

fn cmd_chern(t: &Triple, as_json: bool, precision: u32) -> Result<String, Error> {
    let chern = chern_classes(t);
    let delta = discriminant(t)?;
    if as_json {
        let v = command_envelope(
            "chern",
            vec![
                ("triple", json!(t.to_string())),
                ("c1_twist", json!(chern.c1_twist())),
                ("c2_degree", arakelov_to_json(chern.c2_degree(), precision)?),
                ("discriminant", arakelov_to_json(&delta, precision)?),
            ],
        );
        return Ok(render_pretty(&v) + "\n");
    }
    Ok(format!(
        "triple: {t}\nc1 = c1(O({}))\ndeg c2 = {}\ndiscriminant = {}\n",
        chern.c1_twist(),
        exact_numeric(chern.c2_degree(), precision)?,
        exact_numeric(&delta, precision)?,
    ))
}

fn cmd_chi(t: &Triple, as_json: bool, precision: u32) -> Result<String, Error> {
    let closed = chi_q_rank2(t);
    let rhs = ahrr_rhs(&chern_classes(t), 2)?;
    if closed != rhs {
        return Err(Error::InvariantViolation {
            what: format!("chi_Q routes disagree for {t}: {closed} vs {rhs}"),
        });
    }
    if as_json {
        let v = command_envelope(
            "chi",
            vec![
                ("triple", json!(t.to_string())),
                ("chi_q_closed_form", arakelov_to_json(&closed, precision)?),
                ("chi_q_riemann_roch", arakelov_to_json(&rhs, precision)?),
                ("routes_agree", json!(true)),
            ],
        );
        return Ok(render_pretty(&v) + "\n");
    }
    Ok(format!(
        "triple: {t}\nchi_Q (closed form)   = {}\nchi_Q (Riemann-Roch)  = {}\nroutes agree exactly\n",
        exact_numeric(&closed, precision)?,
        exact_numeric(&rhs, precision)?,
    ))
}

fn cmd_torsion(twist: i64, as_json: bool, precision: u32) -> Result<String, Error> {
    let torsion = analytic_torsion(twist);
    if as_json {
        let v = command_envelope(
            "torsion",
            vec![
                ("twist", json!(twist)),
                ("analytic_torsion", arakelov_to_json(&torsion, precision)?),
            ],
        );
        return Ok(render_pretty(&v) + "\n");
    }
    Ok(format!(
        "T(CP^1, O({twist})) = {}\n",
        exact_numeric(&torsion, precision)?
    ))
}

fn cmd_gram(twist: i64, as_json: bool, precision: u32) -> Result<String, Error> {
    let gram = gram_matrix_h0(twist)?;
    let degree = degree_h0_line(twist)?;
    if as_json {
        let diagonal: Vec<Value> = gram
            .diagonal()
            .iter()
            .map(|q| json!(q.to_string()))
            .collect();
        let v = command_envelope(
            "gram",
            vec![
                ("twist", json!(twist)),
                ("dimension", json!(gram.dimension())),
                ("diagonal", Value::Array(diagonal)),
                ("det", json!(gram.det().to_string())),
                ("degree_h0", arakelov_to_json(&degree, precision)?),
            ],
        );
        return Ok(render_pretty(&v) + "\n");
    }
    let diagonal: Vec<String> = gram.diagonal().iter().map(|q| q.to_string()).collect();
    Ok(format!(
        "H^0(O({twist})) Gram matrix (diagonal in the monomial basis):\n  diag({})\n  det = {}\ndeg H^0 = {}\n",
        diagonal.join(", "),
        gram.det(),
        exact_numeric(&degree, precision)?,
    ))
}

fn cmd_birkhoff(
    matrix: Option<&str>,
    roberts: Option<u64>,
    modulus: u64,
    as_json: bool,
) -> Result<String, Error> {
    let (label, reduced) = match (matrix, roberts) {
        (Some(text), None) => {
            let entries = parse_matrix_entries(text)?;
            (
                text.to_string(),
                TransitionMatrix2::from_integer_entries(&entries, modulus)?,
            )
        }
        (None, Some(p)) => {
            let m = roberts_matrix(p)?;
            (format!("{m}"), m.reduce_mod(modulus)?)
        }
        _ => {
            return Err(Error::Domain {
                op: "birkhoff",
                reason: "provide exactly one of --matrix or --roberts".into(),
            })
        }
    };
    let (c, k) = reduced.det_unit()?;
    let splitting = reduced.splitting_type()?;
    if as_json {
        let v = command_envelope(
            "birkhoff",
            vec![
                ("matrix", json!(label)),
                ("modulus", json!(modulus)),
                ("reduced", json!(reduced.to_string())),
                ("det", json!(format!("{c}*t^{k}"))),
                ("splitting", json!({"d1": splitting.d1, "d2": splitting.d2})),
            ],
        );
        return Ok(render_pretty(&v) + "\n");
    }
    Ok(format!(
        "matrix: {label}\nreduced mod {modulus}: {reduced}\ndet = {c}*t^{k} (unit)\nsplitting type: {splitting}\n",
    ))
}

fn cmd_verify(cfg: &verify::SuiteConfig, deep: bool, as_json: bool) -> (String, u8) {
    let outcomes = verify::run_suite_with(cfg);
    let all_passed = outcomes.iter().all(|o| o.passed);
    let code = if all_passed { 0 } else { 3 };
    if as_json {
        let checks: Vec<Value> = outcomes
            .iter()
            .map(|o| {
                json!({
                    "id": o.id,
                    "name": o.name,
                    "passed": o.passed,
                    "detail": o.detail,
                    "millis": o.millis,
                })
            })
            .collect();
        let v = command_envelope(
            "verify",
            vec![
                ("deep", json!(deep)),
                ("passed", json!(all_passed)),
                ("checks", Value::Array(checks)),
            ],
        );
        return (render_pretty(&v) + "\n", code);
    }
    let mut out = String::new();
    let total: u128 = outcomes.iter().map(|o| o.millis).sum();
    for o in &outcomes {
        out.push_str(&format!(
            "{}  {:<26} {}  [{} ms]\n",
            if o.passed { "PASS" } else { "FAIL" },
            o.id,
            o.detail,
            o.millis,
        ));
    }
    out.push_str(&format!(
        "{}/{} checks passed in {total} ms{}\n",
        outcomes.iter().filter(|o| o.passed).count(),
        outcomes.len(),
        if deep { " (deep)" } else { "" },
    ));
    (out, code)
}
