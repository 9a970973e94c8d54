//! `liecap`: analyse Lie algebras, test subalgebras for the cover-avoidance
//! property, and run verification suites.
//!
//! Exit codes: 0 success (or CAP), 1 NotCAP or a failed suite, 2 usage or
//! input error, 3 Unknown.

use std::fs;
use std::io::{self, Write};
use std::ops::RangeInclusive;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use liecap_core::cap::is_cap;
use liecap_core::catalog::{self, builtin_with_metadata, parse_vectors, AlgebraSpec, BUILTINS, CATALOG};
use liecap_core::chief::{chief_series, chief_series_lenient, classify_factor, minimal_ideal_rational, minimal_ideals};
use liecap_core::harness::{self, THEOREMS};
use liecap_core::{
    CapMode, ChiefSeries, EnumerationBudget, Error, FieldDescriptor, HarnessConfig, Lattice, LieAlgebra, Outcome,
    Overall, Population, Subspace,
};

const EXIT_NOT_CAP: u8 = 1;
const EXIT_ERROR: u8 = 2;
const EXIT_UNKNOWN: u8 = 3;

#[derive(Parser)]
#[command(name = "liecap", version, about = "Chief series and CAP-subalgebras of finite-dimensional Lie algebras")]
struct Cli {
    /// Worker threads (defaults to available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Structural summary: flags, series dimensions, chief series.
    Analyze(AlgebraArgs),
    /// Test whether a subalgebra covers or avoids every chief factor.
    Cap(CapArgs),
    /// Print a chief series, or every chief factor over a prime field.
    Chief(ChiefArgs),
    /// Enumerate subalgebras, ideals and related families over a prime field.
    Enumerate(EnumerateArgs),
    /// Run theorem verification suites.
    Verify(VerifyArgs),
    /// List the builtin algebras, or print one as a spec file.
    Catalog(CatalogArgs),
}

#[derive(Args)]
struct AlgebraArgs {
    /// `builtin:NAME` or a path to a `.lie.json` spec.
    #[arg(long)]
    algebra: String,

    /// `Q` or `gfp:<p>`. Builtins default to `Q`; a spec file must agree.
    #[arg(long)]
    field: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    /// Every chief factor of L (prime fields only).
    All,
    /// The factors of one computed chief series.
    Series,
}

#[derive(Args)]
struct CapArgs {
    #[command(flatten)]
    algebra: AlgebraArgs,

    /// Generators as `v;v;...`, each `v` a comma-separated coefficient list.
    #[arg(long)]
    subalgebra: String,

    /// Defaults to `all` over prime fields and `series` over Q.
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
}

#[derive(Args)]
struct ChiefArgs {
    #[command(flatten)]
    algebra: AlgebraArgs,

    /// List every chief factor from the ideal lattice.
    #[arg(long)]
    all: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Subalgebras,
    Ideals,
    MinimalIdeals,
    Maximal,
    TwoMaximal,
    Cartan,
    ChiefFactors,
    ChiefSeries,
}

#[derive(Args)]
struct EnumerateArgs {
    #[command(flatten)]
    algebra: AlgebraArgs,

    #[arg(long, value_enum, default_value = "subalgebras")]
    what: Family,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Jsonl,
}

#[derive(Args)]
struct VerifyArgs {
    /// Comma-separated theorem ids, or `all`.
    #[arg(long, default_value = "all")]
    suite: String,

    /// Dimension range `a..b`, inclusive.
    #[arg(long, default_value = "1..4", value_parser = parse_dims)]
    dims: RangeInclusive<usize>,

    /// Comma-separated fields.
    #[arg(long, default_value = "gfp:2,gfp:3")]
    fields: String,

    /// Random solvable algebras added to the population.
    #[arg(long, default_value_t = 0)]
    samples: usize,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Leave the catalog out of the population.
    #[arg(long)]
    no_catalog: bool,

    /// Extra builtin algebras, comma-separated.
    #[arg(long)]
    extra: Option<String>,

    #[arg(long, value_enum, default_value = "text")]
    format: Format,

    /// Omit elapsed times so output is byte-reproducible.
    #[arg(long)]
    no_timing: bool,

    /// Print only reports that did not pass or skip.
    #[arg(long)]
    quiet: bool,

    /// List the registered theorem ids and exit.
    #[arg(long)]
    list: bool,
}

#[derive(Args)]
struct CatalogArgs {
    /// Field for the metadata columns.
    #[arg(long, default_value = "Q")]
    field: String,

    /// Print this builtin as a canonical spec file instead.
    #[arg(long)]
    emit: Option<String>,
}

fn parse_dims(text: &str) -> Result<RangeInclusive<usize>, String> {
    let (a, b) = text.split_once("..").ok_or_else(|| format!("expected `a..b`, got `{text}`"))?;
    let a: usize = a.trim().parse().map_err(|_| format!("bad lower bound in `{text}`"))?;
    let b: usize = b.trim().trim_start_matches('=').parse().map_err(|_| format!("bad upper bound in `{text}`"))?;
    if a > b {
        return Err(format!("empty range `{text}`"));
    }
    Ok(a..=b)
}

fn parse_field(text: &str) -> Result<FieldDescriptor, Error> {
    text.trim().parse()
}

fn load_algebra(args: &AlgebraArgs, budget: &EnumerationBudget) -> Result<LieAlgebra, Error> {
    let field = args.field.as_deref().map(parse_field).transpose()?;
    if let Some(name) = args.algebra.strip_prefix("builtin:") {
        return catalog::builtin(name, field.unwrap_or(FieldDescriptor::Rationals));
    }
    let text = fs::read_to_string(&args.algebra)
        .map_err(|e| Error::Precondition(format!("cannot read {}: {e}", args.algebra)))?;
    let spec = catalog::parse_spec(&text)?;
    if let Some(d) = field {
        if spec.descriptor()? != d {
            return Err(Error::Precondition(format!(
                "--field {d} disagrees with the spec file's field {}",
                spec.field
            )));
        }
    }
    catalog::load(&spec, budget)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn dims_chain(series: &[Subspace]) -> String {
    series.iter().map(|s| s.dim().to_string()).collect::<Vec<_>>().join(" ⊃ ")
}

/// A chief series for display: strict over prime fields, flagged over Q.
fn display_series(l: &LieAlgebra, budget: &EnumerationBudget) -> Result<ChiefSeries, Error> {
    if l.descriptor().is_finite() {
        chief_series(l, budget)
    } else {
        chief_series_lenient(l, budget)
    }
}

fn analyze(args: &AlgebraArgs, budget: &EnumerationBudget, out: &mut impl Write) -> Result<u8, Error> {
    let l = load_algebra(args, budget)?;
    let d = l.descriptor();
    let lattice = d.is_finite().then(|| Lattice::new(&l, budget)).transpose()?;
    let supersolvable = match &lattice {
        Some(lat) => yes_no(lat.is_supersolvable()).to_string(),
        None => match chief_series(&l, budget) {
            Ok(s) => yes_no(s.factors().iter().all(|f| f.dim() == 1)).to_string(),
            Err(Error::UncertifiedMinimality(_)) => "unknown".to_string(),
            Err(e) => return Err(e),
        },
    };
    let w = |e: io::Error| Error::Precondition(e.to_string());
    writeln!(out, "algebra: {}", l.name()).map_err(w)?;
    writeln!(out, "field: {d}").map_err(w)?;
    writeln!(out, "dim: {}", l.dim()).map_err(w)?;
    writeln!(out, "abelian: {}", yes_no(l.is_abelian())).map_err(w)?;
    writeln!(out, "nilpotent: {}", yes_no(l.is_nilpotent())).map_err(w)?;
    writeln!(out, "solvable: {}", yes_no(l.is_solvable())).map_err(w)?;
    writeln!(out, "metanilpotent: {}", yes_no(l.is_metanilpotent())).map_err(w)?;
    writeln!(out, "supersolvable: {supersolvable}").map_err(w)?;
    writeln!(out, "derived series: {}", dims_chain(&l.derived_series())).map_err(w)?;
    writeln!(out, "lower central series: {}", dims_chain(&l.lower_central_series())).map_err(w)?;
    writeln!(out, "lower nilpotent series: {}", dims_chain(&l.lower_nilpotent_series())).map_err(w)?;
    writeln!(out, "nilpotent residual: {}", l.nilpotent_residual()).map_err(w)?;
    let series = display_series(&l, budget)?;
    let dims: Vec<String> = series.factors().iter().map(|f| f.dim().to_string()).collect();
    writeln!(out, "chief factors: [{}]", dims.join(", ")).map_err(w)?;
    let maximals = lattice.as_ref().map(|lat| lat.maximal_subalgebras());
    for f in series.factors() {
        let class = classify_factor(&l, &f, maximals.as_deref())?;
        let mut tags = vec![if class.central { "central" } else { "eccentric" }];
        match class.frattini {
            Some(true) => tags.push("frattini"),
            Some(false) => tags.push("non-frattini"),
            None => {}
        }
        match class.complemented {
            Some(true) => tags.push("complemented"),
            Some(false) => tags.push("not complemented"),
            None => {}
        }
        if !f.is_certified() {
            tags.push("uncertified");
        }
        writeln!(out, "  {f}  dim {}  {}", f.dim(), tags.join(", ")).map_err(w)?;
    }
    Ok(0)
}

fn cap(args: &CapArgs, budget: &EnumerationBudget, out: &mut impl Write) -> Result<u8, Error> {
    let l = load_algebra(&args.algebra, budget)?;
    let d = l.descriptor();
    let u = l.span(parse_vectors(d, l.dim(), &args.subalgebra)?)?;
    l.require_subalgebra(&u)?;
    let mode = args.mode.unwrap_or(if d.is_finite() { ModeArg::All } else { ModeArg::Series });
    let verdict = match mode {
        ModeArg::All => is_cap(&l, &u, CapMode::AllFactors, budget)?,
        ModeArg::Series => {
            let s = display_series(&l, budget)?;
            is_cap(&l, &u, CapMode::Series(&s), budget)?
        }
    };
    let w = |e: io::Error| Error::Precondition(e.to_string());
    writeln!(out, "subalgebra: {u}").map_err(w)?;
    writeln!(out, "mode: {}", verdict.mode).map_err(w)?;
    for fv in &verdict.factors {
        let status = match (fv.covered, fv.avoided) {
            (true, _) => "covers",
            (_, true) => "avoids",
            _ if fv.factor.is_certified() => "neither",
            _ => "neither (uncertified factor)",
        };
        writeln!(out, "  {}  dim {}  {status}", fv.factor, fv.factor.dim()).map_err(w)?;
    }
    writeln!(out, "verdict: {}", verdict.overall).map_err(w)?;
    if let Some(f) = &verdict.witness {
        writeln!(out, "witness: {f}").map_err(w)?;
    }
    Ok(match verdict.overall {
        Overall::Cap => 0,
        Overall::NotCap => EXIT_NOT_CAP,
        Overall::Unknown => EXIT_UNKNOWN,
    })
}

fn chief(args: &ChiefArgs, budget: &EnumerationBudget, out: &mut impl Write) -> Result<u8, Error> {
    let l = load_algebra(&args.algebra, budget)?;
    let w = |e: io::Error| Error::Precondition(e.to_string());
    if args.all {
        if !l.descriptor().is_finite() {
            return Err(Error::RequiresPrimeField(l.descriptor()));
        }
        let lattice = Lattice::new(&l, budget)?;
        for f in lattice.chief_factors() {
            writeln!(out, "{f}  dim {}", f.dim()).map_err(w)?;
        }
        return Ok(0);
    }
    let series = display_series(&l, budget)?;
    for (t, certified) in series.terms().iter().zip(std::iter::once(true).chain(series.factors().iter().map(|f| f.is_certified()))) {
        let flag = if certified { "" } else { "  (uncertified)" };
        writeln!(out, "{t}  dim {}{flag}", t.dim()).map_err(w)?;
    }
    Ok(if series.is_certified() { 0 } else { EXIT_UNKNOWN })
}

fn enumerate(args: &EnumerateArgs, budget: &EnumerationBudget, out: &mut impl Write) -> Result<u8, Error> {
    let l = load_algebra(&args.algebra, budget)?;
    let w = |e: io::Error| Error::Precondition(e.to_string());
    if let (Family::MinimalIdeals, false) = (args.what, l.descriptor().is_finite()) {
        let m = minimal_ideal_rational(&l)?;
        let flag = if m.certified { "" } else { "  (uncertified)" };
        writeln!(out, "{}{flag}", m.ideal).map_err(w)?;
        return Ok(if m.certified { 0 } else { EXIT_UNKNOWN });
    }
    if !l.descriptor().is_finite() {
        return Err(Error::RequiresPrimeField(l.descriptor()));
    }
    let lattice = Lattice::new(&l, budget)?;
    let lines: Vec<String> = match args.what {
        Family::Subalgebras => lattice.subalgebras().iter().map(ToString::to_string).collect(),
        Family::Ideals => lattice.ideals().iter().map(ToString::to_string).collect(),
        Family::MinimalIdeals => minimal_ideals(&l, budget)?.iter().map(ToString::to_string).collect(),
        Family::Maximal => lattice.maximal_subalgebras().iter().map(ToString::to_string).collect(),
        Family::TwoMaximal => lattice.two_maximal_set().iter().map(ToString::to_string).collect(),
        Family::Cartan => lattice.cartan_subalgebras().iter().map(ToString::to_string).collect(),
        Family::ChiefFactors => lattice.chief_factors().iter().map(ToString::to_string).collect(),
        Family::ChiefSeries => lattice
            .all_chief_series()?
            .iter()
            .map(|s| s.terms().iter().map(ToString::to_string).collect::<Vec<_>>().join(" < "))
            .collect(),
    };
    for line in &lines {
        writeln!(out, "{line}").map_err(w)?;
    }
    writeln!(out, "count: {}", lines.len()).map_err(w)?;
    Ok(0)
}

fn verify(args: &VerifyArgs, budget: &EnumerationBudget, out: &mut impl Write) -> Result<u8, Error> {
    let w = |e: io::Error| Error::Precondition(e.to_string());
    if args.list {
        for id in THEOREMS {
            writeln!(out, "{id}").map_err(w)?;
        }
        return Ok(0);
    }
    let fields = args
        .fields
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(parse_field)
        .collect::<Result<Vec<_>, _>>()?;
    let ids: Vec<&str> = args.suite.split(',').map(str::trim).collect();
    let population = Population {
        fields,
        min_dim: *args.dims.start(),
        max_dim: *args.dims.end(),
        catalog: !args.no_catalog,
        samples: args.samples,
        seed: args.seed,
        extra: args
            .extra
            .as_deref()
            .map(|e| e.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect())
            .unwrap_or_default(),
    };
    let config = HarnessConfig {
        budget: *budget,
        timing: !args.no_timing,
    };
    let reports = harness::run_suite(&ids, &population, &config)?;
    for r in &reports {
        if args.quiet && matches!(r.outcome, Outcome::Pass | Outcome::Skipped) {
            continue;
        }
        match args.format {
            Format::Jsonl => writeln!(out, "{}", r.to_json_line()).map_err(w)?,
            Format::Text => {
                let stats: Vec<String> = r.stats.iter().map(|(k, v)| format!("{k}={v}")).collect();
                let mut line = format!(
                    "{:<8} {:<22} {} over {}",
                    format!("{:?}", r.outcome).to_uppercase(),
                    r.theorem_id,
                    r.algebra.name,
                    r.algebra.field
                );
                if !stats.is_empty() {
                    line.push_str(&format!("  [{}]", stats.join(" ")));
                }
                if let Some(t) = r.elapsed {
                    line.push_str(&format!("  {t:.3}s"));
                }
                if let Some(n) = &r.note {
                    line.push_str(&format!("  ({n})"));
                }
                writeln!(out, "{line}").map_err(w)?;
                if let Some(wit) = &r.witness {
                    writeln!(out, "         witness {:?}: {}", wit.kind, wit.detail).map_err(w)?;
                }
            }
        }
    }
    let counts = harness::summarise(&reports);
    let summary = format!(
        "summary: pass={} fail={} unknown={} skipped={}",
        counts[&Outcome::Pass],
        counts[&Outcome::Fail],
        counts[&Outcome::Unknown],
        counts[&Outcome::Skipped]
    );
    match args.format {
        Format::Text => writeln!(out, "{summary}").map_err(w)?,
        Format::Jsonl => eprintln!("{summary}"),
    }
    Ok(if counts[&Outcome::Fail] > 0 { 1 } else { 0 })
}

fn list_catalog(args: &CatalogArgs, out: &mut impl Write) -> Result<u8, Error> {
    let d = parse_field(&args.field)?;
    let w = |e: io::Error| Error::Precondition(e.to_string());
    if let Some(name) = &args.emit {
        let l = catalog::builtin(name, d)?;
        let spec = AlgebraSpec::from_algebra(&l);
        writeln!(out, "{}", catalog::serialize(&spec)?).map_err(w)?;
        return Ok(0);
    }
    writeln!(out, "builtins: {}", BUILTINS.join(", ")).map_err(w)?;
    writeln!(out, "{:<16} {:>3}  solvable nilpotent supersolvable metanilpotent", "name", "dim").map_err(w)?;
    for name in CATALOG {
        match builtin_with_metadata(name, d) {
            Ok((l, m)) => writeln!(
                out,
                "{:<16} {:>3}  {:<8} {:<9} {:<13} {}",
                name,
                l.dim(),
                yes_no(m.solvable),
                yes_no(m.nilpotent),
                yes_no(m.supersolvable),
                yes_no(m.metanilpotent)
            )
            .map_err(w)?,
            Err(e) => writeln!(out, "{name:<16}   -  ({e})").map_err(w)?,
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_ERROR);
        }
    }
    let budget = EnumerationBudget::default();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = match &cli.command {
        Command::Analyze(a) => analyze(a, &budget, &mut out),
        Command::Cap(a) => cap(a, &budget, &mut out),
        Command::Chief(a) => chief(a, &budget, &mut out),
        Command::Enumerate(a) => enumerate(a, &budget, &mut out),
        Command::Verify(a) => verify(a, &budget, &mut out),
        Command::Catalog(a) => list_catalog(a, &mut out),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
