use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use conductor_core::crossval::{self, CrossvalConfig};
use conductor_core::expr::{self, ExprError, IdealExpr};
use conductor_core::props::{self, PropsError};
use conductor_core::{
    arith, Base, Bounds, Criterion, Decision, IdealHandle, Mutation, QuadError, QuadField,
};
use thiserror::Error;

use crate::report::{
    CheckReport, ConductorEntry, Crosscheck, CrossvalSummary, EnumerateReport, PrimeEntry,
    PropsSummary, SplitEntry, SplitReport,
};

/// Exit status for errors that are not verdicts.
pub const EXIT_USAGE: i32 = 3;
pub const EXIT_FAILURE: i32 = 4;
pub const EXIT_CROSSCHECK: i32 = 5;

#[derive(Debug, Parser)]
#[command(
    name = "conductor",
    version,
    about = "Decide whether ideals of quadratic rings are conductor ideals"
)]
pub struct Cli {
    /// Squarefree d of Q(√d); a comma-separated list for crossval
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub d: Option<String>,
    /// Print JSON instead of text
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized suites
    #[arg(long, global = true, default_value_t = props::DEFAULT_SEED)]
    pub seed: u64,
    /// Index bound for enumeration and sweeps
    #[arg(long, global = true)]
    pub max_index: Option<u64>,
    /// Largest trial divisor when factoring ideal indexes
    #[arg(long, global = true, default_value_t = Bounds::default().factor_bound)]
    pub factor_bound: u64,
    /// Largest quotient enumerated coset by coset
    #[arg(long, global = true, default_value_t = Bounds::default().coset_bound)]
    pub coset_bound: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide one ideal
    Check(CheckArgs),
    /// List the conductor ideals of bounded index
    Enumerate(BaseArgs),
    /// Show how rational primes split
    Split(SplitArgs),
    /// Compare every criterion with the brute-force oracle
    Crossval(CrossvalArgs),
    /// Run the seeded closure-law suites
    Props(PropsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BaseKind {
    Z,
}

#[derive(Debug, Clone, Args)]
pub struct BaseArgs {
    /// Base ring: the rational integers
    #[arg(long, value_enum, conflicts_with = "order_f")]
    pub base: Option<BaseKind>,
    /// Base ring: the order Z + F·S of conductor F·S
    #[arg(long)]
    pub order_f: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CriterionArg {
    Auto,
    Cor212,
    Thm27,
    Cor28,
    Cor213,
    Prop29,
    Prop26,
    Brute,
}

#[derive(Debug, Clone, Args)]
pub struct CheckArgs {
    /// Ideal expression, e.g. "(5, w-2)", "[[1,1;0,2]]", "P(2,1)"
    #[arg(long, allow_hyphen_values = true)]
    pub ideal: String,
    #[command(flatten)]
    pub base: BaseArgs,
    #[arg(long, value_enum, default_value_t = CriterionArg::Auto)]
    pub criterion: CriterionArg,
    /// Also run the brute-force oracle and compare
    #[arg(long)]
    pub crosscheck: bool,
}

#[derive(Debug, Clone, Args)]
pub struct SplitArgs {
    /// A single prime; otherwise every prime up to --max-index (default 30)
    #[arg(long)]
    pub p: Option<u64>,
}

#[derive(Debug, Clone, Args)]
pub struct CrossvalArgs {
    /// Also sweep these orders over the same fields, e.g. 2,3,6
    #[arg(long, value_delimiter = ',')]
    pub orders: Vec<u64>,
    #[arg(long, hide = true, default_value = "none")]
    pub mutate: Mutation,
}

#[derive(Debug, Clone, Args)]
pub struct PropsArgs {
    /// Run one suite only
    #[arg(long)]
    pub suite: Option<String>,
    #[arg(long, default_value_t = props::DEFAULT_CASES)]
    pub cases: usize,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{message}")]
    Parse { message: String },
    #[error(transparent)]
    Expr(ExprError),
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Props(#[from] PropsError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse { .. } => EXIT_USAGE,
            CliError::Expr(ExprError::Parse(_)) => EXIT_USAGE,
            _ => EXIT_FAILURE,
        }
    }
}

/// What a command prints, and the process exit status.
pub struct Output {
    pub text: String,
    pub code: i32,
}

pub fn exit_code(decision: Decision) -> i32 {
    match decision {
        Decision::Conductor => 0,
        Decision::NotConductor => 1,
        Decision::HypothesisFailed => 2,
    }
}

fn elapsed_ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

fn render<T: serde::Serialize>(json: bool, report: &T, text: impl FnOnce() -> String) -> String {
    if json {
        serde_json::to_string_pretty(report).expect("reports serialize") + "\n"
    } else {
        text()
    }
}

fn parse_d(raw: &str) -> Result<i64, CliError> {
    raw.trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("--d expects an integer, got `{raw}`")))
}

impl Cli {
    fn bounds(&self) -> Bounds {
        Bounds {
            factor_bound: self.factor_bound,
            coset_bound: self.coset_bound,
        }
    }

    fn single_d(&self) -> Result<i64, CliError> {
        let raw = self
            .d
            .as_deref()
            .ok_or_else(|| CliError::Usage("--d is required".to_string()))?;
        parse_d(raw)
    }

    fn d_list(&self) -> Result<Option<Vec<i64>>, CliError> {
        self.d
            .as_deref()
            .map(|raw| raw.split(',').map(parse_d).collect())
            .transpose()
    }

    fn field(&self) -> Result<QuadField, CliError> {
        Ok(QuadField::with_bounds(self.single_d()?, self.bounds())?)
    }
}

fn base(field: &QuadField, args: &BaseArgs) -> Result<Base, CliError> {
    Ok(match args.order_f {
        Some(f) => field.order_base(f)?,
        None => field.integers(),
    })
}

/// Source line with a caret under the offending byte.
fn parse_message(src: &str, err: &expr::ParseError) -> String {
    let col = src[..err.offset.min(src.len())].chars().count();
    format!("{err}\n  {src}\n  {}^", " ".repeat(col))
}

fn lower(src: &str, field: &QuadField) -> Result<IdealHandle, CliError> {
    match expr::parse_ideal(src, field) {
        Ok(i) => Ok(i),
        Err(ExprError::Parse(e)) => Err(CliError::Parse {
            message: parse_message(src, &e),
        }),
        Err(e) => Err(CliError::Expr(e)),
    }
}

fn resolve(
    choice: CriterionArg,
    field: &QuadField,
    base: &Base,
    ideal: &IdealHandle,
) -> Result<Criterion, CliError> {
    Ok(match choice {
        CriterionArg::Auto => field.default_criterion(base, ideal)?,
        CriterionArg::Cor212 => Criterion::Cor212,
        CriterionArg::Thm27 => Criterion::Thm27,
        CriterionArg::Cor28 => Criterion::Cor28,
        CriterionArg::Cor213 => Criterion::Cor213,
        CriterionArg::Prop29 => Criterion::Prop29,
        CriterionArg::Prop26 => Criterion::Prop26,
        CriterionArg::Brute => Criterion::Brute,
    })
}

pub fn check(cli: &Cli, args: &CheckArgs) -> Result<Output, CliError> {
    let t = Instant::now();
    let field = cli.field()?;
    let base = base(&field, &args.base)?;
    let ideal = lower(&args.ideal, &field)?;
    let criterion = resolve(args.criterion, &field, &base, &ideal)?;
    let verdict = field.verdict(criterion, &base, &ideal)?;
    let crosscheck = if args.crosscheck {
        let oracle = field.brute_verdict(&base, &ideal)?.decision;
        let agrees = verdict.decision == Decision::HypothesisFailed || verdict.decision == oracle;
        Some(Crosscheck { oracle, agrees })
    } else {
        None
    };
    let report = CheckReport {
        command: "check".to_string(),
        d: field.d(),
        base: base.label(),
        ideal: args.ideal.clone(),
        basis: ideal.lattice().basis().to_vec(),
        index: ideal.index(),
        criterion: verdict.criterion,
        decision: verdict.decision,
        primes: verdict.primes,
        witness: verdict.witness,
        note: verdict.note,
        crosscheck,
        elapsed_ms: elapsed_ms(t),
    };
    let code = match &report.crosscheck {
        Some(c) if !c.agrees => EXIT_CROSSCHECK,
        _ => exit_code(report.decision),
    };
    Ok(Output {
        text: render(cli.json, &report, || report.text()),
        code,
    })
}

pub fn enumerate(cli: &Cli, args: &BaseArgs) -> Result<Output, CliError> {
    let t = Instant::now();
    let field = cli.field()?;
    let base = base(&field, args)?;
    let max_index = cli.max_index.unwrap_or(100);
    if max_index == 0 {
        return Err(CliError::Usage(
            "--max-index must be at least 1".to_string(),
        ));
    }
    let ring = field.ring();
    let mut scanned = 0;
    let mut conductors = Vec::new();
    for i in ring.enumerate_ideals(max_index) {
        scanned += 1;
        let check = ring
            .is_conductor_bruteforce(base.subring(), &i)
            .map_err(QuadError::from)?;
        if check.is_conductor {
            conductors.push(ConductorEntry {
                ideal: IdealExpr::from_ideal(&i).to_string(),
                basis: i.lattice().basis().to_vec(),
                index: i.index(),
                realizing: check.realizing.lattice().basis().to_vec(),
            });
        }
    }
    let report = EnumerateReport {
        command: "enumerate".to_string(),
        d: field.d(),
        base: base.label(),
        max_index,
        ideals_scanned: scanned,
        conductors,
        elapsed_ms: elapsed_ms(t),
    };
    Ok(Output {
        text: render(cli.json, &report, || report.text()),
        code: 0,
    })
}

fn prime_expr(p: u64, root: Option<u64>) -> String {
    match root {
        None => format!("({p})"),
        Some(0) => format!("({p}, w)"),
        Some(r) => format!("({p}, w - {r})"),
    }
}

pub fn split(cli: &Cli, args: &SplitArgs) -> Result<Output, CliError> {
    let t = Instant::now();
    let field = cli.field()?;
    let ps = match args.p {
        Some(p) => vec![p],
        None => arith::primes_up_to(cli.max_index.unwrap_or(30)),
    };
    let mut split = Vec::new();
    for p in ps {
        let splitting = field.splitting(p)?;
        let primes = field
            .primes_above(p)?
            .into_iter()
            .enumerate()
            .map(|(k, m)| PrimeEntry {
                k: k + 1,
                ideal: prime_expr(p, m.root),
                basis: m.lattice().basis().to_vec(),
                e: m.e,
                f: m.f_res,
            })
            .collect();
        split.push(SplitEntry {
            p,
            splitting,
            primes,
        });
    }
    let report = SplitReport {
        command: "split".to_string(),
        d: field.d(),
        discriminant: field.discriminant(),
        split,
        elapsed_ms: elapsed_ms(t),
    };
    Ok(Output {
        text: render(cli.json, &report, || report.text()),
        code: 0,
    })
}

pub fn crossval_cmd(cli: &Cli, args: &CrossvalArgs) -> Result<Output, CliError> {
    let t = Instant::now();
    let fields = cli
        .d_list()?
        .unwrap_or_else(|| crossval::DEFAULT_FIELDS.to_vec());
    let config = CrossvalConfig {
        order_fields: if args.orders.is_empty() {
            Vec::new()
        } else {
            fields.clone()
        },
        fields,
        max_index: cli.max_index.unwrap_or(200),
        orders: args.orders.clone(),
        mutation: args.mutate,
        bounds: cli.bounds(),
    };
    let report = crossval::run(&config)?;
    let summary = CrossvalSummary {
        command: "crossval".to_string(),
        clean: report.is_clean(),
        ideals: report.total_ideals(),
        report,
        elapsed_ms: elapsed_ms(t),
    };
    let code = if summary.clean { 0 } else { 1 };
    Ok(Output {
        text: render(cli.json, &summary, || summary.text()),
        code,
    })
}

pub fn props_cmd(cli: &Cli, args: &PropsArgs) -> Result<Output, CliError> {
    let t = Instant::now();
    let suites = match &args.suite {
        Some(name) => vec![props::run_suite(name, cli.seed, args.cases)?],
        None => props::run_all(cli.seed, args.cases)?,
    };
    let summary = PropsSummary {
        command: "props".to_string(),
        seed: cli.seed,
        passed: suites.iter().all(|s| s.passed()),
        suites,
        elapsed_ms: elapsed_ms(t),
    };
    let code = if summary.passed { 0 } else { 1 };
    Ok(Output {
        text: render(cli.json, &summary, || summary.text()),
        code,
    })
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Check(args) => check(cli, args),
        Command::Enumerate(args) => enumerate(cli, args),
        Command::Split(args) => split(cli, args),
        Command::Crossval(args) => crossval_cmd(cli, args),
        Command::Props(args) => props_cmd(cli, args),
    }
}
