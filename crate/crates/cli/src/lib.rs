//! Command implementations for the `hpf` binary.
//!
//! Every command returns its full text output together with an [`Outcome`];
//! `main` only prints and maps the outcome to an exit code:
//! 0 when the identity holds, 1 when it is violated, 2 for usage or input
//! errors.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use hyperpfaffian::combinat::{check_shape, enumerate_r, Sign};
use hyperpfaffian::compose::{verify_composition, ComposeError};
use hyperpfaffian::hpf::{factorial, pf_closed_form, pf_definition, pf_exterior, torelli_constant};
use hyperpfaffian::involution::{check_involution, InvolutionError};
use hyperpfaffian::{poly, Polynomial, SkewSpec};
use num_bigint::BigInt;
use thiserror::Error;

pub mod lcg;
pub mod specfile;

use lcg::{random_critical_spec, random_point, random_skew_function, Lcg};
use specfile::SpecFile;

/// Largest order handled symbolically without `--force`.
pub const SYMBOLIC_LIMIT: u32 = 8;
/// Largest order handled by point evaluation without `--force`.
pub const POINTS_LIMIT: u32 = 12;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("refusing {what}: about {estimate} objects to enumerate; pass --force to run anyway")]
    TooLarge { what: String, estimate: BigInt },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Verified,
    Violated,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub text: String,
    pub outcome: Outcome,
}

impl Report {
    fn verified(text: String) -> Self {
        Self {
            text,
            outcome: Outcome::Verified,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "hpf", about = "Exact hyperpfaffians and their identities")]
pub struct Cli {
    /// Run past the default size limits.
    #[arg(long, global = true)]
    pub force: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Definition,
    Exterior,
    Theorem,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Symbolic up to n = 8, point evaluation beyond.
    Auto,
    Symbolic,
    Points,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hyperpfaffian of the polynomial described by a spec file.
    Compute {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        method: Method,
    },
    /// Cross-check the three algorithms on seeded random specs.
    Verify {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 10)]
        trials: u32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Mode::Auto)]
        mode: Mode,
        #[arg(long, default_value_t = 5)]
        points: u32,
    },
    /// List the signed products of coefficients in the closed form.
    Coeffs {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
    },
    /// Check the Pfaffian of (x_j - x_i)^(n-1) against its closed form.
    Torelli {
        #[arg(long)]
        n: u32,
    },
    /// Exhaustively check the cancelling involution on weighted partitions.
    Involution {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
    },
    /// Check the composition identity on seeded random skew functions.
    Compose {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        trials: u32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let force = cli.force;
    match &cli.command {
        Command::Compute { input, method } => {
            let spec = SpecFile::load(input)?.to_spec()?;
            cmd_compute(&spec, *method, force)
        }
        &Command::Verify {
            n,
            k,
            trials,
            seed,
            mode,
            points,
        } => cmd_verify(n, k, trials, seed, mode, points, force),
        &Command::Coeffs { n, k } => cmd_coeffs(n, k),
        &Command::Torelli { n } => cmd_torelli(n, force),
        &Command::Involution { n, k } => cmd_involution(n, k, force),
        &Command::Compose {
            k,
            n,
            p,
            trials,
            seed,
        } => cmd_compose(k, n, p, trials, seed, force),
    }
}

/// Exit code for a command result.
pub fn exit_code(result: &Result<Report, CliError>) -> i32 {
    match result {
        Ok(Report {
            outcome: Outcome::Verified,
            ..
        }) => 0,
        Ok(_) => 1,
        Err(_) => 2,
    }
}

fn shape(n: u32, k: u32) -> Result<(), CliError> {
    check_shape(n, k).map_err(|e| CliError::Input(e.to_string()))
}

fn partition_count(n: u32, k: u32) -> BigInt {
    factorial(n) / (factorial(n / k) * num_traits::pow(factorial(k), (n / k) as usize))
}

fn guard(ok: bool, force: bool, what: String, estimate: BigInt) -> Result<(), CliError> {
    if ok || force {
        Ok(())
    } else {
        Err(CliError::TooLarge { what, estimate })
    }
}

pub fn cmd_compute(spec: &SkewSpec, method: Method, force: bool) -> Result<Report, CliError> {
    let (n, k) = (spec.n(), spec.k());
    let estimate = match method {
        Method::Theorem => factorial(n),
        _ => partition_count(n, k),
    };
    guard(
        n <= SYMBOLIC_LIMIT,
        force,
        format!("symbolic computation at n={n}"),
        estimate,
    )?;
    let result = match method {
        Method::Definition => pf_definition(&spec.to_skew_function()),
        Method::Exterior => pf_exterior(&spec.to_skew_function()),
        Method::Theorem => {
            if !spec.has_critical_degree() {
                return Err(CliError::Input(format!(
                    "method theorem needs degree {}, spec has degree {}",
                    k / 2 * (n - 1),
                    spec.degree()
                )));
            }
            pf_closed_form(spec)
        }
    }
    .map_err(|e| CliError::Input(e.to_string()))?;
    Ok(Report::verified(format!("{result}\n")))
}

pub fn cmd_verify(
    n: u32,
    k: u32,
    trials: u32,
    seed: u64,
    mode: Mode,
    points: u32,
    force: bool,
) -> Result<Report, CliError> {
    shape(n, k)?;
    let mode = match mode {
        Mode::Auto if n <= SYMBOLIC_LIMIT => Mode::Symbolic,
        Mode::Auto => Mode::Points,
        m => m,
    };
    match mode {
        Mode::Symbolic => guard(
            n <= SYMBOLIC_LIMIT,
            force,
            format!("symbolic verification at n={n}"),
            partition_count(n, k),
        )?,
        _ => guard(
            n <= POINTS_LIMIT,
            force,
            format!("point verification at n={n}"),
            partition_count(n, k),
        )?,
    }
    let mut rng = Lcg::new(seed);
    let mut out = String::new();
    for trial in 1..=trials {
        let spec = random_critical_spec(n, k, &mut rng);
        let failure = match mode {
            Mode::Symbolic => verify_symbolic(&spec),
            _ => verify_points(&spec, points, &mut rng),
        };
        match failure {
            None => writeln!(out, "trial {trial}/{trials}: ok").unwrap(),
            Some(dump) => {
                writeln!(out, "trial {trial}/{trials}: MISMATCH").unwrap();
                writeln!(out, "spec: {}", SpecFile::from_spec(&spec).to_json()).unwrap();
                out.push_str(&dump);
                return Ok(Report {
                    text: out,
                    outcome: Outcome::Violated,
                });
            }
        }
    }
    let label = match mode {
        Mode::Symbolic => "symbolic".to_string(),
        _ => format!("{points} points each"),
    };
    writeln!(out, "verified {trials} trials for n={n}, k={k} ({label})").unwrap();
    Ok(Report::verified(out))
}

fn verify_symbolic(spec: &SkewSpec) -> Option<String> {
    let f = spec.to_skew_function();
    let def = pf_definition(&f).ok()?;
    let ext = pf_exterior(&f).ok()?;
    let closed = pf_closed_form(spec).ok()?;
    (def != ext || ext != closed)
        .then(|| format!("definition: {def}\nexterior: {ext}\nclosed form: {closed}\n"))
}

fn verify_points(spec: &SkewSpec, points: u32, rng: &mut Lcg) -> Option<String> {
    for _ in 0..points {
        let point = random_point(spec.n(), rng);
        let values = hyperpfaffian::hpf::evaluate_three_ways(spec, &point).ok()?;
        if values[0] != values[1] || values[1] != values[2] {
            let coords: Vec<String> = point.iter().map(ToString::to_string).collect();
            return Some(format!(
                "point: ({})\ndefinition: {}\nexterior: {}\nclosed form: {}\n",
                coords.join(", "),
                values[0],
                values[1],
                values[2]
            ));
        }
    }
    None
}

pub fn cmd_coeffs(n: u32, k: u32) -> Result<Report, CliError> {
    shape(n, k)?;
    let mut out = String::new();
    let (mut total, mut negative) = (0, 0);
    for beta in enumerate_r(n, k).map_err(|e| CliError::Input(e.to_string()))? {
        total += 1;
        if beta.sign() == Sign::Minus {
            negative += 1;
        }
        writeln!(out, "{} {beta}", beta.sign()).unwrap();
    }
    writeln!(out, "{total} terms ({negative} negative)").unwrap();
    Ok(Report::verified(out))
}

pub fn cmd_torelli(n: u32, force: bool) -> Result<Report, CliError> {
    let spec = SkewSpec::torelli(n).map_err(|e| CliError::Input(e.to_string()))?;
    guard(
        n <= SYMBOLIC_LIMIT,
        force,
        format!("torelli at n={n}"),
        partition_count(n, 2),
    )?;
    let constant = torelli_constant(n).map_err(|e| CliError::Input(e.to_string()))?;
    let pf = pf_definition(&spec.to_skew_function()).map_err(|e| CliError::Input(e.to_string()))?;
    let holds = pf == poly::vandermonde(n).scale(&constant);
    Ok(Report {
        text: format!(
            "constant = {constant}, {}\n",
            if holds { "verified" } else { "MISMATCH" }
        ),
        outcome: if holds {
            Outcome::Verified
        } else {
            Outcome::Violated
        },
    })
}

pub fn cmd_involution(n: u32, k: u32, force: bool) -> Result<Report, CliError> {
    shape(n, k)?;
    let report = check_involution(n, k, force).map_err(|e| match e {
        InvolutionError::TooLarge { n, k, size } => CliError::TooLarge {
            what: format!("involution check at n={n}, k={k}"),
            estimate: size,
        },
        e => CliError::Input(e.to_string()),
    })?;
    let mut out = String::new();
    writeln!(
        out,
        "|W| = {}, |W^r| = {}, |W^d| = {} = {}! * |R| with |R| = {}",
        report.total, report.repeated, report.distinct, n, report.composition_sets
    )
    .unwrap();
    let flag = |ok: bool| if ok { "ok" } else { "FAILED" };
    writeln!(
        out,
        "phi involution without fixed points: {}",
        flag(report.involution_ok)
    )
    .unwrap();
    writeln!(
        out,
        "phi sign-reversing, weight-preserving: {}",
        flag(report.sign_reversing_ok)
    )
    .unwrap();
    writeln!(out, "distinct count: {}", flag(report.distinct_count_ok)).unwrap();
    writeln!(
        out,
        "sign factorization on W^d: {}",
        flag(report.factorization_ok)
    )
    .unwrap();
    let status = if report.passed() {
        "verified"
    } else {
        "MISMATCH"
    };
    let sum = if report.repeated_sum_zero {
        "0"
    } else {
        "nonzero"
    };
    writeln!(
        out,
        "W^r sum = {sum}, φ²=id on {} elements, {status}",
        report.repeated
    )
    .unwrap();
    Ok(Report {
        text: out,
        outcome: if report.passed() {
            Outcome::Verified
        } else {
            Outcome::Violated
        },
    })
}

pub fn cmd_compose(
    k: u32,
    n: u32,
    p: u32,
    trials: u32,
    seed: u64,
    force: bool,
) -> Result<Report, CliError> {
    let constant = hyperpfaffian::compose::composition_constant(k, n, p)
        .map_err(|e| CliError::Input(e.to_string()))?;
    guard(
        p <= SYMBOLIC_LIMIT,
        force,
        format!("composition check at p={p}"),
        partition_count(p, k) + partition_count(p, n),
    )?;
    let mut rng = Lcg::new(seed);
    let mut out = String::new();
    for trial in 1..=trials {
        let f = random_skew_function(p, k, &mut rng);
        let report = verify_composition(&f, k, n, p)
            .map_err(|e: ComposeError| CliError::Input(e.to_string()))?;
        if !report.holds() {
            writeln!(out, "trial {trial}/{trials}: MISMATCH").unwrap();
            write!(out, "{f}").unwrap();
            writeln!(
                out,
                "Pf(g) = {}\nconstant * Pf(f) = {}",
                report.lhs, report.rhs
            )
            .unwrap();
            return Ok(Report {
                text: out,
                outcome: Outcome::Violated,
            });
        }
    }
    writeln!(out, "constant = {constant}, verified").unwrap();
    Ok(Report::verified(out))
}

/// Parses rendered command output back into a polynomial.
pub fn parse_output(text: &str) -> Result<Polynomial, CliError> {
    text.trim()
        .parse()
        .map_err(|e: poly::PolyError| CliError::Input(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compute_methods_agree_on_torelli() {
        let spec = SkewSpec::torelli(4).unwrap();
        let outputs: Vec<String> = [Method::Definition, Method::Exterior, Method::Theorem]
            .into_iter()
            .map(|m| cmd_compute(&spec, m, false).unwrap().text)
            .collect();
        assert!(outputs.windows(2).all(|w| w[0] == w[1]));
        let parsed = parse_output(&outputs[0]).unwrap();
        assert_eq!(parsed, poly::vandermonde(4).scale(&poly::rational(-3)));
    }

    #[test]
    fn theorem_rejects_wrong_degree() {
        let spec = SkewSpec::new(
            4,
            2,
            1,
            [(hyperpfaffian::Composition(vec![0, 1]), poly::rational(1))],
        )
        .unwrap();
        assert!(matches!(
            cmd_compute(&spec, Method::Theorem, false),
            Err(CliError::Input(_))
        ));
        assert_eq!(
            cmd_compute(&spec, Method::Definition, false).unwrap().text,
            "0\n"
        );
    }

    #[test]
    fn guards_refuse_large_inputs() {
        assert!(matches!(
            cmd_torelli(10, false),
            Err(CliError::TooLarge { .. })
        ));
        assert!(matches!(
            cmd_involution(8, 2, false),
            Err(CliError::TooLarge { .. })
        ));
        assert!(matches!(
            cmd_verify(10, 2, 1, 1, Mode::Symbolic, 1, false),
            Err(CliError::TooLarge { .. })
        ));
    }

    #[test]
    fn small_reports() {
        assert_eq!(
            cmd_coeffs(4, 2).unwrap().text,
            "+ a_{0,3} a_{1,2}\n1 terms (0 negative)\n"
        );
        assert_eq!(
            cmd_coeffs(2, 2).unwrap().text,
            "+ a_{0,1}\n1 terms (0 negative)\n"
        );
        assert_eq!(
            cmd_torelli(4, false).unwrap().text,
            "constant = -3, verified\n"
        );
        let r = cmd_involution(4, 2, false).unwrap();
        assert!(
            r.text
                .ends_with("W^r sum = 0, φ²=id on 24 elements, verified\n"),
            "{}",
            r.text
        );
        assert_eq!(
            cmd_compose(2, 4, 8, 1, 1, false).unwrap().text,
            "constant = 3, verified\n"
        );
    }

    #[test]
    fn verify_is_deterministic() {
        let a = cmd_verify(4, 2, 3, 9, Mode::Auto, 5, false).unwrap();
        let b = cmd_verify(4, 2, 3, 9, Mode::Auto, 5, false).unwrap();
        assert_eq!(a.text, b.text);
        assert_eq!(a.outcome, Outcome::Verified);
        assert!(cmd_verify(3, 2, 1, 1, Mode::Auto, 5, false).is_err());
    }
}
