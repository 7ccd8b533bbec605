use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{error::ErrorKind, Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ssm_thom::algebra::{int, ParamScalar, Partition, Scalar};
use ssm_thom::apps::{self, ProjectiveClass, TPolynomial};
use ssm_thom::bases::{self, Basis, BasisExpansion};
use ssm_thom::catalog::{self, Catalog, GenotypeSpec};
use ssm_thom::render;
use ssm_thom::solver::Interpolator;
use ssm_thom::{unfolding, Error};

#[derive(Parser)]
#[command(name = "ssmthom", version, about = "SSM-Thom polynomials of contact singularities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute T(entry, ell) up to a degree and print it in a chosen basis.
    Compute(ComputeArgs),
    /// Derive prototype weight data for a genotype given as a JSON file.
    Derive(DeriveArgs),
    /// Degree and Euler characteristic of a singularity locus of a map P^m -> P^n.
    Apply(ApplyArgs),
    /// Decide whether one entry lies below another in the hierarchy.
    Hierarchy(HierarchyArgs),
    /// Check that all SSM-Thom polynomials of a catalog sum to 1.
    Sumcheck(SumArgs),
    /// Inspect catalogs.
    #[command(subcommand)]
    Catalog(CatalogCommand),
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// Run every catalog check.
    Validate(ValidateArgs),
    /// List the entries of a catalog.
    List(CatalogArgs),
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Clone, Copy, ValueEnum)]
enum BasisArg {
    Chern,
    Schur,
    Tilde,
}

impl From<BasisArg> for Basis {
    fn from(b: BasisArg) -> Basis {
        match b {
            BasisArg::Chern => Basis::Chern,
            BasisArg::Schur => Basis::Schur,
            BasisArg::Tilde => Basis::SchurTilde,
        }
    }
}

#[derive(Args)]
struct CatalogArgs {
    #[arg(long, default_value_t = 0)]
    ell: u32,
    /// Catalog JSON file replacing the embedded one.
    #[arg(long)]
    catalog: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

impl CatalogArgs {
    fn load(&self) -> Result<Catalog, Error> {
        let cat = match &self.catalog {
            Some(path) => catalog::load_catalog(path)?,
            None => Catalog::bundled(self.ell)?,
        };
        if cat.ell != self.ell {
            return Err(Error::InvalidCatalog(format!("catalog is for ell = {}, requested ell = {}", cat.ell, self.ell)));
        }
        Ok(cat)
    }
}

#[derive(Args)]
struct ComputeArgs {
    #[arg(long)]
    entry: String,
    #[arg(long)]
    degree: u32,
    #[arg(long, value_enum, default_value_t = BasisArg::Chern)]
    basis: BasisArg,
    #[command(flatten)]
    common: CatalogArgs,
}

#[derive(Args)]
struct DeriveArgs {
    /// JSON file with `variables`, `relations` and optionally `padded`.
    #[arg(long)]
    genotype: PathBuf,
    #[arg(long, default_value_t = 0)]
    ell: u32,
    #[arg(long)]
    jet_bound: Option<u32>,
    /// Name for the derived entry; defaults to the presentation.
    #[arg(long)]
    name: Option<String>,
}

#[derive(Args)]
struct ApplyArgs {
    #[arg(long)]
    entry: String,
    #[arg(long)]
    source_dim: u32,
    #[arg(long)]
    target_dim: u32,
    /// Integer degree of the map.
    #[arg(long, conflicts_with = "symbolic", required_unless_present = "symbolic")]
    map_degree: Option<i64>,
    /// Treat the degree of the map as a formal parameter, named `d` unless
    /// another name is given.
    #[arg(long, num_args = 0..=1, default_missing_value = "d")]
    symbolic: Option<String>,
    #[command(flatten)]
    common: CatalogArgs,
}

#[derive(Args)]
struct HierarchyArgs {
    #[arg(long)]
    lower: String,
    #[arg(long)]
    upper: String,
    /// Truncation degree; defaults to the codimension of the upper entry.
    #[arg(long)]
    degree: Option<u32>,
    #[command(flatten)]
    common: CatalogArgs,
}

#[derive(Args)]
struct SumArgs {
    #[arg(long)]
    degree: u32,
    #[command(flatten)]
    common: CatalogArgs,
}

#[derive(Args)]
struct ValidateArgs {
    /// Degree to validate for; defaults to the largest codimension in the catalog.
    #[arg(long)]
    degree: Option<u32>,
    #[command(flatten)]
    common: CatalogArgs,
}

/// Result of a command: the document to print and the exit code.
struct Output {
    text: String,
    code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::CatalogParse(_) | Error::CatalogInvariant { .. } | Error::InvalidCatalog(_) => 3,
        Error::UnknownEntry(_) | Error::Dimension(_) | Error::DegreeTooLarge { .. } | Error::NegativeEll(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let newline = if out.text.ends_with('\n') { "" } else { "\n" };
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = write!(stdout, "{}{newline}", out.text);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(command: Command) -> Result<Output, Error> {
    match command {
        Command::Compute(a) => compute(a),
        Command::Derive(a) => derive(a),
        Command::Apply(a) => apply(a),
        Command::Hierarchy(a) => hierarchy(a),
        Command::Sumcheck(a) => sumcheck(a),
        Command::Catalog(CatalogCommand::Validate(a)) => validate(a),
        Command::Catalog(CatalogCommand::List(a)) => list(a),
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize")
}

fn sorted(e: &BasisExpansion) -> Vec<(&Partition, &Scalar)> {
    let mut terms: Vec<_> = e.terms.iter().collect();
    terms.sort_by(|x, y| render::cell_order(e.basis, x.0, y.0));
    terms
}

fn compute(a: ComputeArgs) -> Result<Output, Error> {
    let cat = a.common.load()?;
    let entry = cat.entry(&a.entry)?.clone();
    let t = Interpolator::new(&cat, a.degree)?.solve(&entry.name)?;
    let basis = Basis::from(a.basis);
    let e = bases::expand(&t.series, basis)?;
    let text = match a.common.format {
        Format::Text => match basis {
            Basis::Chern => render::chern_text(&t.series),
            _ => render::expansion_text(&e),
        },
        Format::Latex => render::latex_table_row(&entry.name, entry.codim, &e),
        Format::Json => pretty(&json!({
            "entry": entry.name,
            "ell": cat.ell,
            "degree": a.degree,
            "basis": basis.to_string(),
            "terms": sorted(&e).into_iter().map(|(p, c)| json!({
                "partition": p.parts(),
                "coefficient": c.to_string(),
            })).collect::<Vec<_>>(),
        })),
    };
    Ok(Output::ok(text))
}

fn derive(a: DeriveArgs) -> Result<Output, Error> {
    let text = std::fs::read_to_string(&a.genotype)
        .map_err(|e| Error::Genotype(format!("cannot read {}: {e}", a.genotype.display())))?;
    let g: GenotypeSpec = serde_json::from_str(&text).map_err(|e| Error::Genotype(e.to_string()))?;
    let mut entry = unfolding::derive_entry(&g, a.ell, a.jet_bound)?;
    if let Some(name) = a.name {
        entry.name = name;
    }
    let value = serde_json::to_value(&entry).expect("entries serialize");
    Ok(Output::ok(pretty(&value)))
}

fn t_polynomial(p: &TPolynomial) -> String {
    let mut out = String::new();
    for (k, c) in p.iter().enumerate().filter(|(_, c)| **c != ParamScalar::default()) {
        let power = match k {
            0 => String::new(),
            1 => "t".into(),
            _ => format!("t^{k}"),
        };
        let first = out.is_empty();
        match c.as_scalar() {
            Some(s) => {
                let negative = s < int(0);
                out.push_str(match (first, negative) {
                    (true, true) => "-",
                    (true, false) => "",
                    (false, true) => " - ",
                    (false, false) => " + ",
                });
                let m = if negative { -s } else { s };
                if k == 0 || m != int(1) {
                    out.push_str(&m.to_string());
                }
                out.push_str(&power);
            }
            None if k == 0 => out.push_str(&c.to_string()),
            None => {
                if !first {
                    out.push_str(" + ");
                }
                out.push_str(&format!("({c}){power}"));
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn apply(a: ApplyArgs) -> Result<Output, Error> {
    let ell = a.common.ell;
    if a.target_dim < a.source_dim || a.target_dim - a.source_dim != ell {
        return Err(Error::Dimension(format!(
            "target dimension {} minus source dimension {} must equal ell = {ell}",
            a.target_dim, a.source_dim
        )));
    }
    let cat = a.common.load()?;
    let entry = cat.entry(&a.entry)?.clone();
    let m = a.source_dim;
    let deg = match (&a.symbolic, a.map_degree) {
        (Some(name), _) => ParamScalar::var(name),
        (None, Some(k)) => ParamScalar::constant(int(k)),
        (None, None) => return Err(Error::Dimension("a map degree is required".into())),
    };
    let t = Interpolator::new(&cat, m)?.solve(&entry.name)?;
    let chern = apps::chern_of_map(m, a.target_dim, &deg)?;
    let ssm = apps::ssm_of_locus(&t, &chern, m)?;
    let csm = apps::csm_from_ssm(&ssm);
    let profile = apps::euler_profile(&csm);
    let text = match a.common.format {
        Format::Json => pretty(&json!({
            "entry": entry.name,
            "ell": ell,
            "source_dim": m,
            "target_dim": a.target_dim,
            "map_degree": deg.to_string(),
            "chern": chern.iter().map(ProjectiveClass::to_string).collect::<Vec<_>>(),
            "ssm": ssm.to_string(),
            "csm": csm.to_string(),
            "gamma": t_polynomial(&profile.gamma),
            "chi": t_polynomial(&profile.chi),
            "degree": profile.degree.to_string(),
            "euler_characteristic": profile.euler.to_string(),
        })),
        _ => {
            let mut s = String::new();
            for (k, c) in chern.iter().enumerate() {
                let _ = writeln!(s, "c{}(F) = {c}", k + 1);
            }
            let _ = writeln!(s, "s^sm = {ssm}");
            let _ = writeln!(s, "c^sm = {csm}");
            let _ = writeln!(s, "gamma(t) = {}", t_polynomial(&profile.gamma));
            let _ = writeln!(s, "chi(t) = {}", t_polynomial(&profile.chi));
            let _ = writeln!(s, "degree = {}", profile.degree);
            let _ = writeln!(s, "euler characteristic = {}", profile.euler);
            s
        }
    };
    Ok(Output::ok(text))
}

fn hierarchy(a: HierarchyArgs) -> Result<Output, Error> {
    let cat = a.common.load()?;
    let d = match a.degree {
        Some(d) => d,
        None => cat.entry(&a.upper)?.codim,
    };
    let r = apps::hierarchy_test(&a.lower, &a.upper, cat.ell, d, &cat)?;
    let text = match a.common.format {
        Format::Json => pretty(&json!({
            "lower": r.lower,
            "upper": r.upper,
            "ell": cat.ell,
            "degree": d,
            "verdict": r.verdict.to_string(),
            "witness": r.witness.to_string(),
            "positive": r.positive,
        })),
        _ => r.to_string(),
    };
    Ok(Output::ok(text))
}

fn sumcheck(a: SumArgs) -> Result<Output, Error> {
    let cat = a.common.load()?;
    let r = apps::sum_check(&cat, a.degree)?;
    let verdict = if r.passed() { "PASS" } else { "FAIL" };
    let text = match a.common.format {
        Format::Json => pretty(&json!({
            "ell": cat.ell,
            "degree": r.degree,
            "entries": r.entries,
            "sum_is_one": r.sum_is_one,
            "tilde_all_ones": r.tilde_all_ones,
            "result": verdict,
        })),
        _ => {
            let mut s = verdict.to_string();
            if !r.sum_is_one {
                let _ = write!(s, "\nsum = {}", render::chern_text(&r.sum));
            }
            match r.tilde_all_ones {
                Some(false) => s.push_str("\ntilde expansion of the sum is not the sum of all s~"),
                None => s.push_str("\ntilde check skipped at this degree"),
                Some(true) => {}
            }
            s
        }
    };
    Ok(Output { text, code: if r.passed() { 0 } else { 2 } })
}

fn validate(a: ValidateArgs) -> Result<Output, Error> {
    let cat = a.common.load()?;
    let d = a.degree.unwrap_or(cat.max_codim);
    let report = catalog::validate_catalog(&cat, d);
    let passed = report.passed();
    let text = match a.common.format {
        Format::Json => pretty(&json!({
            "ell": cat.ell,
            "degree": d,
            "entries": cat.entries.len(),
            "passed": passed,
            "checks": report.checks,
        })),
        _ => {
            let mut s = if passed {
                format!("{} entries, all checks pass", cat.entries.len())
            } else {
                format!("{} entries, {} checks failed", cat.entries.len(), report.failures().count())
            };
            for f in report.failures() {
                let _ = write!(s, "\n{}: {}: {}", f.subject, f.check, f.detail);
            }
            s
        }
    };
    Ok(Output { text, code: if passed { 0 } else { 3 } })
}

fn list(a: CatalogArgs) -> Result<Output, Error> {
    let cat = a.load()?;
    let text = match a.format {
        Format::Json => pretty(&json!(cat
            .entries
            .iter()
            .map(|e| json!({ "name": e.name, "codim": e.codim, "presentation": e.presentation }))
            .collect::<Vec<_>>())),
        _ => cat
            .entries
            .iter()
            .map(|e| format!("{:<8}codim {:<4}{}", e.name, e.codim, e.presentation))
            .collect::<Vec<_>>()
            .join("\n"),
    };
    Ok(Output::ok(text))
}
