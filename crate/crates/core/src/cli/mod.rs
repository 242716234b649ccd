//! Command-line front end.

mod output;
mod targets;

use std::ffi::OsString;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use quadlab::classical::ConstructionError;
use quadlab::cubature::{asymptotic_ratio, heuristic_ratio, inefficiency_ratio, CubatureError};
use quadlab::experiments::{
    build_error_table_with, convergence_study, error_decomposition, first_n_below, ErrorTable, ExperimentError,
    FitModel, RuleSpec, Target,
};
use quadlab::oracle::{basis_relative_errors, exactness_degree_with, Basis, OracleError, Precision};
use quadlab::transforms::{InnerRule, DEFAULT_TRUNCATION_L};
use quadlab::{Family, Integrand, IntegrandId, QuadratureRule, RuleError, WeightFunction};

use output::{number, svg_log_plot, write_atomic, Csv, Series};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Experiment(#[from] ExperimentError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Cubature(#[from] CubatureError),
    #[error(transparent)]
    Rule(#[from] RuleError),
    #[error("invalid value for --{key}: {reason}")]
    InvalidArgument { key: &'static str, reason: String },
    #[error("cannot write {}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("embedded targets are malformed: {0}")]
    Targets(String),
}

/// Whether `--check` found the regenerated values in agreement.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Outcome {
    Success,
    Mismatch,
}

#[derive(Debug, Parser)]
#[command(name = "quadlab", version, about = "Quadrature rules, exactness certification and accuracy experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Nodes and weights of a rule: columns index,node,weight.
    Rule {
        #[command(flatten)]
        rule: RuleArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Measured polynomial exactness degree: columns k,relative_error.
    Exactness {
        #[command(flatten)]
        rule: RuleArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = quadlab::oracle::DEFAULT_EXACTNESS_TOL)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Newton-Cotes basis error table: columns k,abs_error.
    Table1(TableArgs),
    /// Clenshaw-Curtis basis error table: columns k,abs_error.
    Table2(TableArgs),
    /// Error against node count: columns n,abs_error,below_floor.
    Converge {
        #[command(flatten)]
        rule: RuleArgs,
        #[arg(long)]
        integrand: IntegrandId,
        /// Weight of the target integral; defaults to the rule's own.
        #[arg(long, value_enum)]
        weight: Option<WeightArg>,
        /// `a..b`, `a..b:step` or a comma-separated list.
        #[arg(long = "n-list", value_parser = parse_n_list)]
        n_list: NList,
        #[arg(long)]
        model: Option<FitModel>,
        /// Report the first n from which every error stays below this.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Total-degree to Euclidean-degree coefficient ratio: columns s,ratio,asymptotic,heuristic.
    Cubature {
        /// Dimensions, in the same syntax as --n-list.
        #[arg(long, value_parser = parse_n_list)]
        s: NList,
        #[arg(long)]
        check: bool,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Chebyshev decomposition of the Clenshaw-Curtis error: columns j,a_j,e_n_tj,product.
    Decompose {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        integrand: IntegrandId,
        /// Chebyshev degree; defaults to 4n.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct RuleArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Ellipse parameter of the strip map.
    #[arg(long, default_value_t = 1.4)]
    rho: f64,
    /// Truncation scale: the interval is [-L n^(1/3), L n^(1/3)].
    #[arg(long = "L", visible_alias = "l", default_value_t = DEFAULT_TRUNCATION_L)]
    l: f64,
    #[arg(long, value_enum, default_value_t = InnerArg::GaussLegendre)]
    inner: InnerArg,
    /// Half width of the periodic trapezoid interval.
    #[arg(long = "half-width", default_value_t = 6.0)]
    half_width: f64,
}

#[derive(Debug, Args)]
struct TableArgs {
    #[arg(long, default_value_t = 30)]
    n: usize,
    /// Largest basis degree; defaults to 38 for table1 and 60 for table2.
    #[arg(long = "k-max")]
    k_max: Option<usize>,
    #[arg(long, value_enum, default_value_t = BasisArg::Chebyshev)]
    basis: BasisArg,
    /// Compare against the embedded reference values; exit 2 on mismatch.
    #[arg(long)]
    check: bool,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    NewtonCotes,
    ClenshawCurtis,
    GaussLegendre,
    GaussHermite,
    GaussLaguerre,
    Trapezoid,
    PeriodicTrapezoid,
    StripTransformedGauss,
    TruncatedHermite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum InnerArg {
    GaussLegendre,
    ClenshawCurtis,
    Trapezoid,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum WeightArg {
    Unit,
    Gaussian,
    ExpNegX,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BasisArg {
    Chebyshev,
    Monomial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Text,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct NList(Vec<usize>);

fn parse_n_list(raw: &str) -> Result<NList, String> {
    let int = |s: &str| s.trim().parse::<usize>().map_err(|_| format!("`{s}` is not a non-negative integer"));
    let values = if let Some((a, rest)) = raw.split_once("..") {
        let (b, step) = match rest.split_once(':') {
            Some((b, step)) => (int(b)?, int(step)?),
            None => (int(rest)?, 1),
        };
        let a = int(a)?;
        if step == 0 || a > b {
            return Err(format!("empty range `{raw}`"));
        }
        (a..=b).step_by(step).collect()
    } else {
        raw.split(',').map(int).collect::<Result<Vec<_>, _>>()?
    };
    if values.is_empty() || values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(format!("`{raw}` must list strictly increasing values"));
    }
    Ok(NList(values))
}

impl RuleArgs {
    fn spec(&self) -> RuleSpec {
        let inner = match self.inner {
            InnerArg::GaussLegendre => InnerRule::GaussLegendre,
            InnerArg::ClenshawCurtis => InnerRule::ClenshawCurtis,
            InnerArg::Trapezoid => InnerRule::Trapezoid,
        };
        match self.family {
            FamilyArg::NewtonCotes => RuleSpec::NewtonCotes,
            FamilyArg::ClenshawCurtis => RuleSpec::ClenshawCurtis,
            FamilyArg::GaussLegendre => RuleSpec::GaussLegendre,
            FamilyArg::GaussHermite => RuleSpec::GaussHermite,
            FamilyArg::GaussLaguerre => RuleSpec::GaussLaguerre,
            FamilyArg::Trapezoid => RuleSpec::Trapezoid,
            FamilyArg::PeriodicTrapezoid => RuleSpec::GaussianTrapezoid {
                half_width: self.half_width,
            },
            FamilyArg::StripTransformedGauss => RuleSpec::StripTransformed { rho: self.rho },
            FamilyArg::TruncatedHermite => RuleSpec::TruncatedHermite { l: self.l, inner },
        }
    }
}

impl WeightArg {
    fn weight(self) -> WeightFunction {
        match self {
            WeightArg::Unit => WeightFunction::Unit,
            WeightArg::Gaussian => WeightFunction::GaussianExpNegX2,
            WeightArg::ExpNegX => WeightFunction::ExpNegX,
        }
    }
}

impl BasisArg {
    fn basis(self) -> Basis {
        match self {
            BasisArg::Chebyshev => Basis::Chebyshev,
            BasisArg::Monomial => Basis::Monomial,
        }
    }
}

/// Parses `args` (program name first), runs the command and maps the result
/// to an exit status: 0 success, 2 `--check` mismatch, 1 error.
pub fn main<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::Mismatch) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<Outcome, CliError> {
    match command {
        Command::Rule { rule, n, format, out } => rule_command(&rule, n, format, out),
        Command::Exactness {
            rule,
            n,
            tol,
            format,
            out,
        } => exactness_command(&rule, n, tol, format, out),
        Command::Table1(args) => table_command(Family::NewtonCotes, args),
        Command::Table2(args) => table_command(Family::ClenshawCurtis, args),
        Command::Converge {
            rule,
            integrand,
            weight,
            n_list,
            model,
            tol,
            format,
            out,
            svg,
        } => {
            let spec = rule.spec();
            let weight = weight.map_or(spec.weight_function(), WeightArg::weight);
            converge_command(spec, Target::new(integrand, weight), &n_list.0, model, tol, format, out, svg)
        }
        Command::Cubature { s, check, format, out } => cubature_command(&s.0, check, format, out),
        Command::Decompose {
            n,
            integrand,
            m,
            format,
            out,
            svg,
        } => decompose_command(n, integrand, m.unwrap_or(4 * n), format, out, svg),
    }
}

/// Data goes to `out` or stdout; the summary line always goes to stderr.
fn emit(csv: &Csv, format: Format, out: Option<PathBuf>, summary: &str) -> Result<(), CliError> {
    let body = match format {
        Format::Csv => csv.render(),
        Format::Text => csv.render_text(),
    };
    match out {
        Some(path) => write_atomic(&path, &body)?,
        None => print!("{body}"),
    }
    eprintln!("{summary}");
    Ok(())
}

fn rule_csv(rule: &QuadratureRule) -> Csv {
    let mut csv = Csv::new(&["index", "node", "weight"]);
    for (i, (x, w)) in rule.nodes().iter().zip(rule.weights()).enumerate() {
        csv.push(vec![i.to_string(), number(*x), number(*w)]);
    }
    csv
}

fn rule_command(args: &RuleArgs, n: usize, format: Format, out: Option<PathBuf>) -> Result<Outcome, CliError> {
    let spec = args.spec();
    let rule = spec.build(n)?;
    let summary = format!(
        "{spec} n={n}: domain {}, weight sum {}, sum |w| {}",
        rule.domain(),
        number(rule.weight_sum()),
        number(rule.abs_weight_sum())
    );
    emit(&rule_csv(&rule), format, out, &summary)?;
    Ok(Outcome::Success)
}

fn exactness_command(
    args: &RuleArgs,
    n: usize,
    tol: f64,
    format: Format,
    out: Option<PathBuf>,
) -> Result<Outcome, CliError> {
    if !(tol > 0.0) {
        return Err(CliError::InvalidArgument {
            key: "tol",
            reason: format!("{tol} is not positive"),
        });
    }
    let spec = args.spec();
    let prec = Precision::from_env()?;
    let rule = spec.build(n)?;
    let degree = exactness_degree_with(&rule, tol, prec)?;
    let errors = basis_relative_errors(&rule, degree + 2, prec)?;
    let mut csv = Csv::new(&["k", "relative_error"]);
    for (k, e) in errors.iter().enumerate() {
        csv.push(vec![k.to_string(), number(*e)]);
    }
    let summary = format!("{spec} n={n}: exactness degree {degree} (tol {})", number(tol));
    emit(&csv, format, out, &summary)?;
    Ok(Outcome::Success)
}

fn table_csv(table: &ErrorTable) -> Csv {
    let mut csv = Csv::new(&["k", "abs_error"]);
    for &(k, e) in &table.rows {
        csv.push(vec![k.to_string(), number(e)]);
    }
    csv
}

fn table_command(family: Family, args: TableArgs) -> Result<Outcome, CliError> {
    let prec = Precision::from_env()?;
    let default_k = if family == Family::NewtonCotes { 38 } else { 60 };
    let k_max = args.k_max.unwrap_or(default_k);
    let basis = args.basis.basis();
    let table = build_error_table_with(family, args.n, k_max, basis, prec)?;
    if let Some(path) = &args.svg {
        let series = Series {
            label: format!("{family} n={}", args.n),
            points: table.rows.iter().map(|&(k, e)| (f64::from(k), e)).collect(),
        };
        write_atomic(path, &svg_log_plot(&format!("{family} basis errors"), "k", "|E_n(p_k)|", &[series]))?;
    }
    let (summary, outcome) = if args.check {
        check_table(family, &args, k_max, basis, &table, prec)?
    } else {
        let (k, e) = table.rows.iter().fold((0, 0.0), |acc, &(k, e)| if e > acc.1 { (k, e) } else { acc });
        (
            format!("{family} n={} {basis:?} basis: largest |E| = {} at k={k}", args.n, number(e)),
            Outcome::Success,
        )
    };
    emit(&table_csv(&table), args.format, args.out, &summary)?;
    Ok(outcome)
}

fn check_table(
    family: Family,
    args: &TableArgs,
    k_max: usize,
    basis: Basis,
    table: &ErrorTable,
    prec: Precision,
) -> Result<(String, Outcome), CliError> {
    let targets = targets::load()?;
    let t = if family == Family::NewtonCotes { &targets.table1 } else { &targets.table2 };
    if args.n != t.n || basis != Basis::Chebyshev {
        return Err(CliError::InvalidArgument {
            key: "check",
            reason: format!("reference values exist for n={} in the chebyshev basis only", t.n),
        });
    }
    let mut worst = 0.0f64;
    let mut printed = true;
    for row in &t.rows {
        let got = table.get(row.k).ok_or_else(|| CliError::InvalidArgument {
            key: "k-max",
            reason: format!("{k_max} omits reference row k={}", row.k),
        })?;
        worst = worst.max((got - row.value).abs() / row.value);
        printed &= targets::round_to_digits(got, row.digits) == row.value;
    }
    let mut ok = worst <= t.relative_tolerance;
    let mut summary = format!(
        "{family} n={}: largest relative deviation {worst:.3e} against {} values (tolerance {}); agrees at printed digits: {}",
        t.n,
        t.origin,
        number(t.relative_tolerance),
        if printed { "yes" } else { "no" }
    );
    if let Some(m) = &t.monomial {
        let mono = build_error_table_with(family, t.n, m.k as usize, Basis::Monomial, prec)?;
        let got = mono.get(m.k).unwrap_or(f64::NAN);
        let within = got / m.value <= m.factor && m.value / got <= m.factor;
        ok &= within;
        summary.push_str(&format!(
            "; |E(x^{})| = {} vs {} value {} within factor {}: {}",
            m.k,
            number(got),
            m.origin,
            number(m.value),
            number(m.factor),
            if within { "yes" } else { "no" }
        ));
    }
    summary.push_str(if ok { "; PASS" } else { "; MISMATCH" });
    Ok((summary, if ok { Outcome::Success } else { Outcome::Mismatch }))
}

#[allow(clippy::too_many_arguments)]
fn converge_command(
    spec: RuleSpec,
    target: Target,
    n_list: &[usize],
    model: Option<FitModel>,
    tol: Option<f64>,
    format: Format,
    out: Option<PathBuf>,
    svg: Option<PathBuf>,
) -> Result<Outcome, CliError> {
    let record = convergence_study(&spec, target, n_list, model)?;
    let mut csv = Csv::new(&["n", "abs_error", "below_floor"]);
    for s in &record.samples {
        csv.push(vec![s.n.to_string(), number(s.abs_error), u8::from(s.below_floor).to_string()]);
    }
    if let Some(path) = &svg {
        let series = Series {
            label: format!("{} on {}", record.rule, record.integrand),
            points: record.samples.iter().map(|s| (s.n as f64, s.abs_error)).collect(),
        };
        write_atomic(path, &svg_log_plot("convergence", "n", "|I_n - I|", &[series]))?;
    }
    let mut summary = format!("{} on {}: {} points", record.rule, record.integrand, record.samples.len());
    if let Some(last) = record.samples.last() {
        summary.push_str(&format!(", error {} at n={}", number(last.abs_error), last.n));
    }
    match (model, record.fit) {
        (Some(_), Some(fit)) => summary.push_str(&format!(
            ", {} fit slope {} R^2 {:.4}",
            fit.model,
            number(fit.slope),
            fit.r_squared
        )),
        (Some(m), None) => summary.push_str(&format!(", {m} fit needs three non-zero errors")),
        _ => {}
    }
    if let Some(tol) = tol {
        match first_n_below(&record, tol) {
            Some(n) => summary.push_str(&format!(", below {} from n={n}", number(tol))),
            None => summary.push_str(&format!(", never stays below {}", number(tol))),
        }
    }
    emit(&csv, format, out, &summary)?;
    Ok(Outcome::Success)
}

fn cubature_command(dims: &[usize], check: bool, format: Format, out: Option<PathBuf>) -> Result<Outcome, CliError> {
    let targets = targets::load()?;
    let mut csv = Csv::new(&["s", "ratio", "asymptotic", "heuristic"]);
    let mut parts = Vec::new();
    let mut ok = true;
    let mut printed = true;
    let mut checked = 0;
    for &s in dims {
        let s = u32::try_from(s).map_err(|_| CliError::InvalidArgument {
            key: "s",
            reason: format!("{s} is too large"),
        })?;
        let ratio = inefficiency_ratio(s)?;
        csv.push(vec![
            s.to_string(),
            number(ratio),
            number(asymptotic_ratio(s)),
            number(heuristic_ratio(s)),
        ]);
        parts.push(format!("s={s}: {ratio:.4}"));
        if check {
            if let Some(row) = targets.cubature.rows.iter().find(|r| r.s == s) {
                checked += 1;
                ok &= (ratio - row.value).abs() / row.value <= targets.cubature.relative_tolerance;
                printed &= targets::round_to_digits(ratio, row.digits) == row.value;
            }
        }
    }
    let mut summary = format!("inefficiency ratio {}", parts.join(", "));
    if check {
        summary.push_str(&format!(
            "; {checked} {} values checked within {} (agree at printed digits: {}): {}",
            targets.cubature.origin,
            number(targets.cubature.relative_tolerance),
            if printed { "yes" } else { "no" },
            if ok { "PASS" } else { "MISMATCH" }
        ));
    }
    emit(&csv, format, out, &summary)?;
    Ok(if ok { Outcome::Success } else { Outcome::Mismatch })
}

fn decompose_command(
    n: usize,
    id: IntegrandId,
    m: usize,
    format: Format,
    out: Option<PathBuf>,
    svg: Option<PathBuf>,
) -> Result<Outcome, CliError> {
    let d = error_decomposition(n, &Integrand::new(id), m)?;
    let mut csv = Csv::new(&["j", "a_j", "e_n_tj", "product"]);
    for t in &d.terms {
        csv.push(vec![t.j.to_string(), number(t.a_j), number(t.e_n_tj), number(t.product)]);
    }
    if let Some(path) = &svg {
        let series = Series {
            label: format!("{id}, n={n}"),
            points: d.terms.iter().map(|t| (t.j as f64, t.product.abs())).collect(),
        };
        write_atomic(path, &svg_log_plot("error decomposition", "j", "|a_j E_n(T_j)|", &[series]))?;
    }
    let summary = format!(
        "clenshaw-curtis n={n} on {id}, degree {m}: partial sum {}, measured {}, tail bound {}",
        number(d.partial_sum),
        number(d.measured),
        number(d.tail_estimate)
    );
    emit(&csv, format, out, &summary)?;
    Ok(Outcome::Success)
}
