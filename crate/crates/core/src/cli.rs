//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 for malformed input (parse errors, bad flags,
//! invalid shapes), 2 when the input is well formed but violates a hypothesis
//! of the formulas (degree above the dimension, missing symmetry) or an
//! identity check comes out unequal.

use std::fmt;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::identities::{
    self, chen_louck_interpolate, leading_coefficient_for, power_sum_identity, prop1_sum,
    IdentityError, WeightVector,
};
use crate::integrals::{expand_class, integrate, GrassmannSpec, IntegralError};
use crate::localization::{certify_constant, DEFAULT_SEED};
use crate::parse::{parse_expression, parse_monomial, parse_polynomial, ParseError};
use crate::poly::{MultiPoly, Rational};

#[derive(Debug, Parser)]
#[command(
    name = "grassmann",
    version,
    about = "Exact integrals over Grassmannians G(k,n)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct SpecArgs {
    /// Dimension of the subspaces
    #[arg(short = 'k')]
    pub k: u32,
    /// Dimension of the ambient space
    #[arg(short = 'n')]
    pub n: u32,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integrate a characteristic class over G(k,n)
    Integrate {
        #[command(flatten)]
        spec: SpecArgs,
        /// Class expression, e.g. "euler(sym(3,dual(S)))"
        expr: String,
        /// Also certify the value by localization at this many random weight vectors
        #[arg(long, value_name = "TRIALS", value_parser = clap::value_parser!(u32).range(2..))]
        oracle: Option<u32>,
        /// Seed for the random weights
        #[arg(long, env = "SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Print the Chern-root polynomial of a class on G(k,n)
    Expand {
        #[command(flatten)]
        spec: SpecArgs,
        expr: String,
    },
    /// Print the coefficient of a monomial in a polynomial
    Coeff { poly: String, monomial: String },
    /// Check one of the interpolation identities at given or random weights
    Identity(IdentityArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Prop1,
    PowerSum,
    Main,
    Double,
    ChenLouck,
}

#[derive(Debug, Args)]
pub struct IdentityArgs {
    pub which: Which,
    #[arg(short = 'k')]
    pub k: Option<usize>,
    /// Number of weights (defaults to the length of --lambdas)
    #[arg(short = 'n')]
    pub n: Option<usize>,
    /// Power for the power-sum identity
    #[arg(short = 'm')]
    pub m: Option<u32>,
    /// Polynomial in x1..xk (and y1.. for `double`; one variable for `prop1`)
    #[arg(long)]
    pub poly: Option<String>,
    /// Comma-separated distinct rationals, e.g. "0,1,-1/2"
    #[arg(long, allow_hyphen_values = true)]
    pub lambdas: Option<String>,
    #[arg(long, env = "SEED", default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Parse(ParseError),
    Identity(IdentityError),
    Integral(IntegralError),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Parse(_) => 1,
            CliError::Integral(e) if e.is_precondition() => 2,
            CliError::Integral(_) => 1,
            CliError::Identity(e) => match e {
                IdentityError::DegreeTooHigh { .. }
                | IdentityError::PartialDegreeTooHigh { .. }
                | IdentityError::NotSymmetric { .. }
                | IdentityError::NotDoublySymmetric { .. } => 2,
                _ => 1,
            },
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Parse(e) => e.fmt(f),
            CliError::Identity(e) => e.fmt(f),
            CliError::Integral(e) => e.fmt(f),
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e)
    }
}

impl From<IdentityError> for CliError {
    fn from(e: IdentityError) -> Self {
        CliError::Identity(e)
    }
}

impl From<IntegralError> for CliError {
    fn from(e: IntegralError) -> Self {
        CliError::Integral(e)
    }
}

#[derive(Serialize)]
struct OracleJson {
    trials: u32,
    agree: bool,
}

#[derive(Serialize)]
struct IntegrateJson {
    value: String,
    oracle: Option<OracleJson>,
    spec: GrassmannSpec,
}

/// Runs a parsed command, writing results to `out` and diagnostics to `err`.
/// Returns the process exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    match dispatch(&cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let kind = if e.exit_code() == 2 {
                "precondition"
            } else {
                "error"
            };
            let _ = writeln!(err, "{kind}: {e}");
            e.exit_code()
        }
    }
}

fn spec_of(s: &SpecArgs) -> Result<GrassmannSpec, CliError> {
    Ok(GrassmannSpec::new(s.k, s.n)?)
}

fn dispatch(cmd: &Command, out: &mut dyn Write) -> Result<u8, CliError> {
    match cmd {
        Command::Integrate {
            spec,
            expr,
            oracle,
            seed,
            json,
        } => {
            let spec = spec_of(spec)?;
            let class = parse_expression(expr)?;
            let value = integrate(&class, &spec)?;
            let oracle_report = match oracle {
                Some(trials) => {
                    let cert = certify_constant(&class, &spec, *trials as usize, *seed)?;
                    Some((*trials, cert.value == value, cert.value))
                }
                None => None,
            };
            if *json {
                let report = IntegrateJson {
                    value: value.to_string(),
                    oracle: oracle_report.as_ref().map(|(trials, agree, _)| OracleJson {
                        trials: *trials,
                        agree: *agree,
                    }),
                    spec,
                };
                let text = serde_json::to_string(&report).expect("plain data serializes");
                let _ = writeln!(out, "{text}");
            } else {
                let _ = writeln!(out, "{value}");
                if let Some((trials, agree, oracle_value)) = &oracle_report {
                    if *agree {
                        let _ = writeln!(out, "oracle: agree ({trials} trials)");
                    } else {
                        let _ = writeln!(
                            out,
                            "oracle: DISAGREE (localization gives {oracle_value}, {trials} trials)"
                        );
                    }
                }
            }
            Ok(match oracle_report {
                Some((_, false, _)) => 2,
                _ => 0,
            })
        }
        Command::Expand { spec, expr } => {
            let spec = spec_of(spec)?;
            let class = parse_expression(expr)?;
            let _ = writeln!(out, "{}", expand_class(&class, &spec)?);
            Ok(0)
        }
        Command::Coeff { poly, monomial } => {
            let p = parse_polynomial(poly)?;
            let m = parse_monomial(monomial)?;
            let _ = writeln!(out, "{}", p.coefficient_of(&m));
            Ok(0)
        }
        Command::Identity(args) => identity(args, out),
    }
}

fn parse_lambdas(text: &str) -> Result<WeightVector, CliError> {
    let values = text
        .split(',')
        .map(|piece| {
            let p = parse_polynomial(piece)?;
            p.as_constant()
                .filter(|_| p.variables().is_empty())
                .ok_or_else(|| {
                    CliError::Usage(format!("weight '{}' is not a number", piece.trim()))
                })
        })
        .collect::<Result<Vec<Rational>, CliError>>()?;
    Ok(WeightVector::new(values)?)
}

fn weights(args: &IdentityArgs) -> Result<WeightVector, CliError> {
    match (&args.lambdas, args.n) {
        (Some(text), n) => {
            let w = parse_lambdas(text)?;
            if let Some(n) = n {
                if n != w.len() {
                    return Err(CliError::Usage(format!(
                        "-n {n} does not match the {} weights given",
                        w.len()
                    )));
                }
            }
            Ok(w)
        }
        (None, Some(n)) if n > 0 => {
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            Ok(WeightVector::random(n, &mut rng))
        }
        _ => Err(CliError::Usage("give -n or --lambdas".into())),
    }
}

fn required<T: Copy>(v: Option<T>, flag: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("this identity needs {flag}")))
}

fn poly_arg(args: &IdentityArgs) -> Result<MultiPoly, CliError> {
    let text = args
        .poly
        .as_deref()
        .ok_or_else(|| CliError::Usage("this identity needs --poly".into()))?;
    Ok(parse_polynomial(text)?)
}

fn identity(args: &IdentityArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let lambdas = weights(args)?;
    let n = lambdas.len();
    let (lhs, rhs) = match args.which {
        Which::Prop1 => {
            let p = poly_arg(args)?;
            let lhs = prop1_sum(&p, &lambdas)?;
            (lhs.to_string(), leading_coefficient_for(&p, n).to_string())
        }
        Which::PowerSum => {
            let m = required(args.m, "-m")?;
            let (l, r) = power_sum_identity(m, &lambdas)?;
            (l.to_string(), r.to_string())
        }
        Which::Main => {
            let p = poly_arg(args)?;
            let k = required(args.k, "-k")?;
            let l = identities::theorem_main_lhs(&p, k, &lambdas)?;
            let r = identities::theorem_main_rhs(&p, k, n)?;
            (l.to_string(), r.to_string())
        }
        Which::Double => {
            let p = poly_arg(args)?;
            let k = required(args.k, "-k")?;
            let l = identities::theorem_double_lhs(&p, k, &lambdas)?;
            let r = identities::theorem_double_rhs(&p, k, n)?;
            (l.to_string(), r.to_string())
        }
        Which::ChenLouck => {
            let p = poly_arg(args)?;
            let k = required(args.k, "-k")?;
            let rebuilt = chen_louck_interpolate(&p, k, &lambdas)?;
            (p.to_string(), rebuilt.to_string())
        }
    };
    let equal = lhs == rhs;
    let _ = writeln!(out, "lambdas: {lambdas}");
    let _ = writeln!(out, "lhs: {lhs}");
    let _ = writeln!(out, "rhs: {rhs}");
    let _ = writeln!(out, "VERDICT: {}", if equal { "equal" } else { "unequal" });
    Ok(if equal { 0 } else { 2 })
}

/// Parses `args` (without the program name) and runs them, capturing output.
/// Returns `(exit code, stdout, stderr)`.
pub fn run_captured<I, S>(args: I) -> (u8, String, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once(std::ffi::OsString::from("grassmann"))
        .chain(args.into_iter().map(Into::into));
    match Cli::try_parse_from(argv) {
        Ok(cli) => {
            let (mut out, mut err) = (Vec::new(), Vec::new());
            let code = run(&cli, &mut out, &mut err);
            (
                code,
                String::from_utf8(out).expect("utf-8 output"),
                String::from_utf8(err).expect("utf-8 output"),
            )
        }
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            (code, String::new(), e.render().to_string())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrate_examples() {
        let (code, out, _) = run_captured(["integrate", "-k", "2", "-n", "4", "c(1,Q)^4"]);
        assert_eq!((code, out.as_str()), (0, "2\n"));
        let (code, out, _) = run_captured([
            "integrate",
            "-k",
            "2",
            "-n",
            "4",
            "euler(sym(3,dual(S)))",
            "--oracle",
            "3",
        ]);
        assert_eq!(code, 0);
        assert_eq!(out, "27\noracle: agree (3 trials)\n");
        let (code, out, err) = run_captured(["integrate", "-k", "2", "-n", "4", "c(1,Q)^5"]);
        assert_eq!(code, 2);
        assert!(out.is_empty());
        assert!(err.contains("degree 5"), "{err}");
    }

    #[test]
    fn json_output() {
        let (code, out, _) = run_captured([
            "integrate",
            "-k",
            "2",
            "-n",
            "4",
            "euler(sym(3,dual(S)))",
            "--oracle",
            "3",
            "--json",
        ]);
        assert_eq!(code, 0);
        assert_eq!(
            out,
            "{\"value\":\"27\",\"oracle\":{\"trials\":3,\"agree\":true},\"spec\":{\"k\":2,\"n\":4}}\n"
        );
        let (_, out, _) =
            run_captured(["integrate", "-k", "1", "-n", "3", "1/2*c(1,Q)^2", "--json"]);
        assert_eq!(
            out,
            "{\"value\":\"1/2\",\"oracle\":null,\"spec\":{\"k\":1,\"n\":3}}\n"
        );
    }

    #[test]
    fn exit_codes() {
        assert_eq!(
            run_captured(["integrate", "-k", "2", "-n", "4", "c(1,Q"]).0,
            1
        );
        assert_eq!(run_captured(["integrate", "-k", "4", "-n", "4", "1"]).0, 1);
        assert_eq!(run_captured(["integrate", "-k", "2", "-n", "4", "x1"]).0, 2);
        assert_eq!(run_captured(["integrate", "-k", "2", "-n", "4", "y3"]).0, 1);
        assert_eq!(run_captured(["frobnicate"]).0, 1);
        assert_eq!(run_captured(["--help"]).0, 0);
        assert_eq!(
            run_captured(["identity", "main", "-k", "2", "--poly", "x1"]).0,
            1
        );
        assert_eq!(
            run_captured([
                "identity",
                "main",
                "-k",
                "2",
                "--poly",
                "x1",
                "--lambdas",
                "0,1,2"
            ])
            .0,
            2
        );
        assert_eq!(
            run_captured([
                "identity",
                "main",
                "-k",
                "2",
                "--poly",
                "1",
                "--lambdas",
                "0,1,1"
            ])
            .0,
            1
        );
    }

    #[test]
    fn identity_output() {
        let (code, out, _) = run_captured([
            "identity",
            "main",
            "-k",
            "2",
            "--poly",
            "x1*x2",
            "--lambdas",
            "0,1,2",
        ]);
        assert_eq!(code, 0);
        assert_eq!(out, "lambdas: (0,1,2)\nlhs: 1\nrhs: 1\nVERDICT: equal\n");
        let (code, out, _) = run_captured(["identity", "power-sum", "-m", "3", "--lambdas", "1,2"]);
        assert_eq!(code, 0);
        assert!(out.contains("lhs: 7\nrhs: 7\n"));
        let (code, out, _) = run_captured([
            "identity",
            "chen-louck",
            "-k",
            "2",
            "--poly",
            "x1 + x2",
            "-n",
            "4",
        ]);
        assert_eq!(code, 0, "{out}");
        assert!(out.ends_with("lhs: x1 + x2\nrhs: x1 + x2\nVERDICT: equal\n"));
        let (code, out, _) = run_captured([
            "identity",
            "prop1",
            "--poly",
            "z^2",
            "--lambdas",
            "-1/2,1,2",
        ]);
        assert_eq!(code, 0);
        assert!(out.contains("lambdas: (-1/2,1,2)"));
    }

    #[test]
    fn coeff_and_expand() {
        let (code, out, _) = run_captured(["coeff", "(x1 - x2)*(x2 - x1)", "x1*x2"]);
        assert_eq!((code, out.as_str()), (0, "2\n"));
        let (code, out, _) =
            run_captured(["expand", "-k", "2", "-n", "4", "euler(sym(3,dual(S)))"]);
        assert_eq!(code, 0);
        assert_eq!(out, "18*x1^3*x2 + 45*x1^2*x2^2 + 18*x1*x2^3\n");
        assert_eq!(run_captured(["coeff", "x1", "2*x1"]).0, 1);
    }
}
