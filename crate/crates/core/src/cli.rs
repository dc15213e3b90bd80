//! Command-line front end.
//!
//! Every verb prints exact JSON on standard output (or to `--out`).
//! Exit codes: 0 ok, 1 verification failure, 2 input error,
//! 3 degenerate spectrum.

use std::fs;
use std::io::{self, Write};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::Error;
use crate::exact::{self, ExactScalar, Identity};
use crate::inverse::{self, EigenData};
use crate::operator::{deltas_from_operator, BochnerOperator};
use crate::poly::is_eigenpair;
use crate::presets::{self, PresetName};
use crate::recurrence::{bandwidth, check_recurrence, fit_recurrence};
use crate::shapiro::{shapiro_alpha, verify_shapiro_recurrence, ShapiroOperator};
use crate::spectral::{eigen_system, eigenpoly_det, extend_table, lambda_via_n2_identity, EigenSystem};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_DEGENERATE: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "bochner",
    version,
    about = "Exact spectral calculus for Bochner differential operators"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Eigenvalues and monic eigenpolynomials of an operator
    Direct(DirectArgs),
    /// Rebuild an operator from eigen-data
    Inverse(InverseArgs),
    /// Fit the recurrence of an eigen-family and detect its band
    Recurrence(RecurrenceArgs),
    /// Run every cross-check on one operator
    Verify(VerifyArgs),
    /// Sweep the binomial identities over integer grids
    Lemmas(LemmasArgs),
    /// Print a classical operator as an operator spec
    Preset(PresetArgs),
}

#[derive(Args, Debug, Clone, Default)]
pub struct OperatorSource {
    /// Operator spec file `{"N": .., "a": [[..], ..]}`
    #[arg(long, value_name = "FILE")]
    pub operator: Option<PathBuf>,
    /// hermite, laguerre, jacobi or shapiro
    #[arg(long)]
    pub preset: Option<PresetName>,
    /// Shapiro operator from `c1,c2,...,cN`
    #[arg(long, value_name = "LIST", allow_hyphen_values = true)]
    pub shapiro: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<ExactScalar>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<ExactScalar>,
    /// c-list for `--preset shapiro`
    #[arg(long, value_name = "LIST", allow_hyphen_values = true)]
    pub c: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct DirectArgs {
    #[command(flatten)]
    pub source: OperatorSource,
    #[arg(long)]
    pub nmax: usize,
    /// Check every eigenpair symbolically and cross-check the determinant route
    #[arg(long)]
    pub check: bool,
    /// Compute the polynomials from Hessenberg determinants
    #[arg(long)]
    pub det: bool,
    /// Add k-digit decimal renderings next to the exact values
    #[arg(long, value_name = "K")]
    pub decimal: Option<usize>,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct InverseArgs {
    /// Eigen-data file `{"lambda": [..], "P": [[..], ..]}`
    #[arg(long, value_name = "FILE")]
    pub data: PathBuf,
    #[arg(long, required_unless_present = "search")]
    pub order: Option<usize>,
    /// Report the smallest order the data allow
    #[arg(long)]
    pub search: bool,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct RecurrenceArgs {
    #[command(flatten)]
    pub source: OperatorSource,
    /// Eigen-data file, instead of an operator
    #[arg(long, value_name = "FILE")]
    pub data: Option<PathBuf>,
    /// Last row of the fitted table
    #[arg(long)]
    pub nmax: Option<usize>,
    /// First row considered when detecting the band
    #[arg(long, default_value_t = 0)]
    pub window_start: usize,
    #[arg(long, value_name = "K")]
    pub decimal: Option<usize>,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub source: OperatorSource,
    #[arg(long, default_value_t = 12)]
    pub nmax: usize,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct LemmasArgs {
    /// Only this identity
    #[arg(long)]
    pub id: Option<String>,
    /// Override one parameter range, e.g. `m=0..12` or `k=3`
    #[arg(long = "range", value_name = "NAME=A..B", value_parser = parse_range, allow_hyphen_values = true)]
    pub ranges: Vec<(String, RangeInclusive<i64>)>,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct PresetArgs {
    pub name: PresetName,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<ExactScalar>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<ExactScalar>,
    #[arg(long, value_name = "LIST", allow_hyphen_values = true)]
    pub c: Option<String>,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

/// A failed invocation: exit code plus a diagnostic for standard error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::DegenerateSpectrum { .. } => EXIT_DEGENERATE,
            Error::NoFiniteOrderOperator { .. } | Error::EigenpairMismatch(_) => EXIT_VERIFICATION,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

/// What a verb produced: a JSON document and whether its checks passed.
#[derive(Debug, Clone)]
pub struct Report {
    pub json: Value,
    pub passed: bool,
    pub out: Option<PathBuf>,
}

impl Report {
    fn ok(json: Value, out: Option<PathBuf>) -> Self {
        Report {
            json,
            passed: true,
            out,
        }
    }
}

type CliResult = std::result::Result<Report, Failure>;

pub fn parse_range(text: &str) -> std::result::Result<(String, RangeInclusive<i64>), String> {
    let (name, span) = text
        .split_once('=')
        .ok_or_else(|| format!("expected NAME=A..B, got {text:?}"))?;
    let name = name.trim();
    if name.is_empty() {
        return Err(format!("missing parameter name in {text:?}"));
    }
    let int = |s: &str| s.trim().parse::<i64>().map_err(|e| format!("{s:?}: {e}"));
    let range = match span.split_once("..") {
        Some((lo, hi)) => int(lo)?..=int(hi.trim_start_matches('='))?,
        None => {
            let v = int(span)?;
            v..=v
        }
    };
    Ok((name.to_string(), range))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> std::result::Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

enum Source {
    General(BochnerOperator),
    Shapiro(ShapiroOperator),
}

impl Source {
    fn bochner(&self) -> BochnerOperator {
        match self {
            Source::General(op) => op.clone(),
            Source::Shapiro(op) => op.to_bochner(),
        }
    }
}

fn load_source(src: &OperatorSource) -> std::result::Result<Source, Failure> {
    let given = [src.operator.is_some(), src.preset.is_some(), src.shapiro.is_some()];
    if given.iter().filter(|&&g| g).count() != 1 {
        return Err(Failure::input("give exactly one of --operator, --preset, --shapiro"));
    }
    if src.preset.is_none() && (src.alpha.is_some() || src.beta.is_some() || src.c.is_some()) {
        return Err(Failure::input("--alpha, --beta and --c only apply to --preset"));
    }
    if let Some(path) = &src.operator {
        return Ok(Source::General(read_json(path)?));
    }
    if let Some(list) = &src.shapiro {
        return Ok(Source::Shapiro(presets::shapiro(list)?));
    }
    let name = src.preset.expect("one source is set");
    if name == PresetName::Shapiro {
        let list = src
            .c
            .as_deref()
            .ok_or_else(|| Failure::input("--preset shapiro needs --c"))?;
        return Ok(Source::Shapiro(presets::shapiro(list)?));
    }
    Ok(Source::General(presets::build(
        name,
        src.alpha.as_ref(),
        src.beta.as_ref(),
        None,
    )?))
}

fn strings(values: &[ExactScalar]) -> Value {
    Value::Array(values.iter().map(|v| Value::String(v.to_string())).collect())
}

fn decimals(values: &[ExactScalar], digits: usize) -> Value {
    Value::Array(
        values
            .iter()
            .map(|v| Value::String(v.to_decimal_string(digits)))
            .collect(),
    )
}

/// Eigen-system of the normalized operator plus the removed constant.
fn system_of(
    op: &BochnerOperator,
    n_max: usize,
    det: bool,
) -> std::result::Result<(BochnerOperator, ExactScalar, EigenSystem), Failure> {
    let (normalized, shift) = op.normalize();
    let table = deltas_from_operator(&normalized, n_max);
    let mut system = eigen_system(&table, n_max)?;
    if det {
        let polys = (0..=n_max)
            .map(|n| eigenpoly_det(&table, n))
            .collect::<crate::Result<Vec<_>>>()?;
        let (lambdas, _) = system.into_parts();
        system = EigenSystem::new(lambdas, polys)?;
    }
    Ok((normalized, shift, system))
}

pub fn run_direct(args: &DirectArgs) -> CliResult {
    let op = load_source(&args.source)?.bochner();
    let (normalized, shift, system) = system_of(&op, args.nmax, args.det)?;
    let lambdas: Vec<ExactScalar> = system.lambdas().iter().map(|l| l + &shift).collect();
    let mut doc = json!({
        "lambda": strings(&lambdas),
        "P": system.polys().iter().map(|p| strings(p.coeffs())).collect::<Vec<_>>(),
    });
    if !shift.is_zero() {
        doc["shift"] = Value::String(shift.to_string());
    }
    if let Some(k) = args.decimal {
        doc["lambda_decimal"] = decimals(&lambdas, k);
        doc["P_decimal"] = system.polys().iter().map(|p| decimals(p.coeffs(), k)).collect();
    }
    let mut passed = true;
    if args.check {
        let eigenpairs = (0..=args.nmax).find(|&n| !is_eigenpair(&op, &system.polys()[n], &lambdas[n]));
        let table = deltas_from_operator(&normalized, args.nmax);
        let mut other_route = Vec::with_capacity(args.nmax + 1);
        for n in 0..=args.nmax {
            other_route.push(if args.det {
                crate::spectral::eigenpoly_recursive(&table, n)?
            } else {
                eigenpoly_det(&table, n)?
            });
        }
        let routes = (0..=args.nmax).find(|&n| other_route[n] != system.polys()[n]);
        passed = eigenpairs.is_none() && routes.is_none();
        doc["check"] = json!({
            "eigenpairs": eigenpairs.is_none(),
            "first_eigenpair_failure": eigenpairs,
            "determinant_agrees": routes.is_none(),
            "first_determinant_mismatch": routes,
        });
    }
    Ok(Report {
        json: doc,
        passed,
        out: args.out.clone(),
    })
}

pub fn run_inverse(args: &InverseArgs) -> CliResult {
    let data: EigenData = read_json(&args.data)?;
    let m_max = data.n_max();
    let window = |order: usize| format!("order <= {order} consistent with data up to degree {m_max}");
    if args.search {
        return Ok(match inverse::search_order(&data)? {
            Some((order, op)) => Report::ok(
                json!({
                    "consistent": true,
                    "order": order,
                    "operator": op,
                    "verified_up_to_degree": m_max,
                    "statement": window(order),
                }),
                args.out.clone(),
            ),
            None => Report {
                json: json!({
                    "consistent": false,
                    "searched_orders": [1, m_max.saturating_sub(1)],
                    "verified_up_to_degree": m_max,
                }),
                passed: false,
                out: args.out.clone(),
            },
        });
    }
    let order = args.order.expect("clap requires --order without --search");
    match inverse::reconstruct(&data, order) {
        Ok(op) => Ok(Report::ok(
            json!({
                "consistent": true,
                "order": op.order(),
                "requested_order": order,
                "operator": op,
                "verified_up_to_degree": m_max,
                "statement": window(order),
            }),
            args.out.clone(),
        )),
        Err(Error::NoFiniteOrderOperator { order, n, k }) => Ok(Report {
            json: json!({
                "consistent": false,
                "requested_order": order,
                "violation": { "n": n, "k": k },
                "verified_up_to_degree": m_max,
            }),
            passed: false,
            out: args.out.clone(),
        }),
        Err(e) => Err(e.into()),
    }
}

pub fn run_recurrence(args: &RecurrenceArgs) -> CliResult {
    let system = match &args.data {
        Some(path) => {
            if args.source.operator.is_some() || args.source.preset.is_some() || args.source.shapiro.is_some() {
                return Err(Failure::input("--data cannot be combined with an operator source"));
            }
            let data: EigenData = read_json(path)?;
            if data.n_max() == 0 {
                return Err(Failure::input("the recurrence needs at least P_0 and P_1"));
            }
            let last = data.n_max() - 1;
            let n_max = args.nmax.unwrap_or(last);
            if n_max > last {
                return Err(Failure::input(format!(
                    "--nmax {n_max} needs data up to degree {}",
                    n_max + 1
                )));
            }
            data.truncated(n_max + 1)
        }
        None => {
            let n_max = args
                .nmax
                .ok_or_else(|| Failure::input("--nmax is required with an operator source"))?;
            let op = load_source(&args.source)?.bochner();
            system_of(&op, n_max + 1, false)?.2
        }
    };
    let fit = fit_recurrence(&system)?;
    let p = bandwidth(&fit, args.window_start);
    let mut doc = json!({
        "alpha": fit,
        "p": p,
        "terms": p.map(|p| p + 2),
        "window": [args.window_start, fit.n_max()],
    });
    if let Some(p) = p {
        let band = fit.band(p);
        if let Some(k) = args.decimal {
            doc["band_decimal"] = band.iter().map(|row| decimals(row, k)).collect();
        }
        doc["band"] = band.iter().map(|row| strings(row)).collect();
    }
    Ok(Report::ok(doc, args.out.clone()))
}

fn check(name: &str, passed: bool) -> Value {
    json!({ "name": name, "passed": passed })
}

pub fn run_verify(args: &VerifyArgs) -> CliResult {
    let source = load_source(&args.source)?;
    let op = source.bochner();
    let n_max = args.nmax;
    let (normalized, shift, system) = system_of(&op, n_max + 1, false)?;
    let order = normalized.order();
    let table = deltas_from_operator(&normalized, n_max + 1);
    let mut checks = Vec::new();

    let eigenpairs = (0..=n_max).all(|n| is_eigenpair(&op, &system.polys()[n], &(&system.lambdas()[n] + &shift)));
    checks.push(check("eigenpairs", eigenpairs));

    let mut det_ok = true;
    for n in 0..=n_max {
        det_ok &= eigenpoly_det(&table, n)? == system.polys()[n];
    }
    checks.push(check("determinant-vs-recursion", det_ok));

    if n_max > order {
        let extended = extend_table(&table.truncated(order), order, n_max)?;
        checks.push(check("delta-extension", extended == table.truncated(n_max)));
    }
    if order == 2 {
        let l = system.lambdas();
        let ok = (0..=n_max).all(|n| lambda_via_n2_identity(&l[1], &l[2], n) == l[n]);
        checks.push(check("order-two-eigenvalues", ok));
    }
    if n_max > order {
        let data = system.truncated(n_max);
        let rebuilt = inverse::reconstruct(&data, order)
            .map(|r| r == normalized)
            .unwrap_or(false);
        checks.push(check("reconstruction", rebuilt));
        let rec = inverse::deltas_from_eigendata_rec(&data, n_max)?;
        let mut agree = rec == table.truncated(n_max);
        for n in 0..=n_max {
            for k in 0..=n {
                agree &= inverse::deltas_from_eigendata_det(&data, n, k)? == *rec.get(n, k);
            }
        }
        checks.push(check("inverse-determinant-vs-recursion", agree));
    }

    let fit = fit_recurrence(&system)?;
    let fitted = check_recurrence(system.polys(), n_max, n_max, |n, s| fit.below_diagonal(n, s))?;
    checks.push(check("recurrence-fit", fitted.holds()));
    let p = bandwidth(&fit, 0);

    if let Source::Shapiro(sh) = &source {
        checks.push(check(
            "shapiro-recurrence",
            verify_shapiro_recurrence(sh, n_max).holds(),
        ));
        let band_ok = (0..=n_max).all(|n| {
            (0..=n).all(|s| {
                let closed = if s < sh.order() {
                    shapiro_alpha(sh, n, s).expect("s < N")
                } else {
                    ExactScalar::zero()
                };
                fit.below_diagonal(n, s) == closed
            })
        });
        checks.push(check("shapiro-band", band_ok));
    }

    let passed = checks.iter().all(|c| c["passed"] == Value::Bool(true));
    Ok(Report {
        json: json!({ "order": order, "nmax": n_max, "bandwidth": p, "checks": checks, "passed": passed }),
        passed,
        out: args.out.clone(),
    })
}

pub fn run_lemmas(args: &LemmasArgs) -> CliResult {
    let ids: Vec<Identity> = match &args.id {
        Some(id) => vec![id.parse::<Identity>().map_err(|e| Failure::input(e.to_string()))?],
        None => Identity::ALL.to_vec(),
    };
    if args.id.is_none() {
        if let Some((name, _)) = args
            .ranges
            .iter()
            .find(|(n, _)| !ids.iter().any(|id| id.param_names().contains(&n.as_str())))
        {
            return Err(Failure::input(format!("no identity has a parameter {name:?}")));
        }
    }
    let mut rows = Vec::new();
    let (mut checked, mut skipped) = (0usize, 0usize);
    let mut counterexample = Value::Null;
    for id in ids {
        let ranges: Vec<(String, RangeInclusive<i64>)> = args
            .ranges
            .iter()
            .filter(|(n, _)| id.param_names().contains(&n.as_str()))
            .cloned()
            .collect();
        let report = exact::sweep(id, &ranges)?;
        checked += report.checked;
        skipped += report.skipped;
        if let (Some((params, residual)), true) = (&report.counterexample, counterexample.is_null()) {
            counterexample = json!({ "id": id.id(), "params": params, "residual": residual.to_string() });
        }
        rows.push(json!({
            "id": id.id(),
            "checked": report.checked,
            "skipped": report.skipped,
            "passed": report.passed(),
        }));
    }
    let passed = counterexample.is_null();
    Ok(Report {
        json: json!({
            "identities": rows,
            "checked": checked,
            "skipped": skipped,
            "passed": passed,
            "counterexample": counterexample,
        }),
        passed,
        out: args.out.clone(),
    })
}

pub fn run_preset(args: &PresetArgs) -> CliResult {
    let op = presets::build(args.name, args.alpha.as_ref(), args.beta.as_ref(), args.c.as_deref())?;
    Ok(Report::ok(
        serde_json::to_value(&op).expect("operators serialize"),
        args.out.clone(),
    ))
}

pub fn dispatch(cli: &Cli) -> CliResult {
    match &cli.command {
        Command::Direct(a) => run_direct(a),
        Command::Inverse(a) => run_inverse(a),
        Command::Recurrence(a) => run_recurrence(a),
        Command::Verify(a) => run_verify(a),
        Command::Lemmas(a) => run_lemmas(a),
        Command::Preset(a) => run_preset(a),
    }
}

/// Runs one invocation and returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    match dispatch(cli) {
        Ok(report) => {
            let text = serde_json::to_string_pretty(&report.json).expect("JSON values serialize");
            match &report.out {
                Some(path) => {
                    if let Err(e) = fs::write(path, text + "\n") {
                        eprintln!("error: {}: {e}", path.display());
                        return EXIT_INPUT;
                    }
                }
                None => {
                    // a closed pipe is not an error of ours
                    let mut stdout = io::stdout().lock();
                    if let Err(e) = writeln!(stdout, "{text}") {
                        if e.kind() != io::ErrorKind::BrokenPipe {
                            eprintln!("error: {e}");
                            return EXIT_INPUT;
                        }
                    }
                }
            }
            if report.passed {
                EXIT_OK
            } else {
                eprintln!("verification failed");
                EXIT_VERIFICATION
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}
