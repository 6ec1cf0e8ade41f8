//! Command-line front end.

pub mod acceptance;

use crate::diagrams::{to_dot, Diagram, DiagramJson, LinComb, LinCombJson};
use crate::kernel::{build_order, kernel_dims_report, verify_kernel, KernelElement, KernelReport, KernelRow, VerifyOptions};
use crate::lambda::{expand_marked, named};
use crate::relations::dims::{a_quotient, p_quotients};
use crate::relations::{dims_table, set_cache_dir, DimsRow};
use crate::weights::{oracle_eval_lc, set_threads, wsys, Family, LieAlgebraSpec, OracleValue};
use crate::{Error, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Markdown,
    Dot,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub max_chord_degree: usize,
    pub max_open_degree: usize,
    pub max_legs: usize,
    pub oracle_budget: usize,
    pub cache_dir: Option<PathBuf>,
    pub format: Format,
    pub threads: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_chord_degree: 7,
            max_open_degree: 7,
            max_legs: 8,
            oracle_budget: crate::weights::DEFAULT_BUDGET,
            cache_dir: None,
            format: Format::Json,
            threads: 1,
        }
    }
}

impl Config {
    pub fn load(path: &Path) -> Result<Config> {
        let s = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&s).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
    }

    pub fn validate(&self) -> Result<()> {
        let bounds = [
            ("max_chord_degree", self.max_chord_degree),
            ("max_open_degree", self.max_open_degree),
            ("max_legs", self.max_legs),
            ("oracle_budget", self.oracle_budget),
            ("threads", self.threads),
        ];
        if let Some((name, _)) = bounds.iter().find(|b| b.1 == 0) {
            return Err(Error::Input(format!("config: {name} must be positive")));
        }
        if let Some(d) = &self.cache_dir {
            std::fs::create_dir_all(d).map_err(|e| Error::Input(format!("cache dir {}: {e}", d.display())))?;
            let probe = d.join(".write-probe");
            std::fs::write(&probe, b"")
                .and_then(|_| std::fs::remove_file(&probe))
                .map_err(|e| Error::Input(format!("cache dir {} is not writable: {e}", d.display())))?;
        }
        Ok(())
    }
}

#[derive(Parser, Debug)]
#[command(name = "jacobi", version, about = "Jacobi diagrams, Lie algebra weight systems and the sl_N kernel")]
pub struct Cli {
    /// JSON config file; flags given here override it
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// dim A_n and dim P_n for n = 1..=n_max
    Dims { n_max: usize },
    /// Quotient basis of A_n (chord diagrams mod 4T, 1T) or P_n (connected open diagrams mod AS, IHX)
    Basis {
        #[arg(value_parser = ["A", "P"])]
        space: String,
        n: usize,
    },
    /// Evaluate a diagram or combination (JSON file, or a named Lambda element)
    Eval {
        file: Option<PathBuf>,
        #[arg(long, conflicts_with = "file")]
        named: Option<String>,
        /// glN, slN, soN (symbolic) or an explicit algebra such as sl2, sl3, so4, so5, gl2
        #[arg(long)]
        algebra: String,
    },
    Kernel {
        #[command(subcommand)]
        action: KernelCmd,
    },
    /// DOT text for a diagram or combination file
    Export { file: PathBuf },
    /// Run the acceptance suite
    Selftest,
}

#[derive(Subcommand, Debug)]
pub enum KernelCmd {
    /// Construct the elements of one order (6..=10)
    Build {
        #[arg(long)]
        order: usize,
        /// Also write one JSON and one DOT file per element here
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify elements: sl_N value, so_N value, quotient class, oracle spot checks
    Verify {
        #[arg(long, conflicts_with = "order")]
        all: bool,
        #[arg(long)]
        order: Option<usize>,
        /// Evaluate so_N on the full closed form rather than through characters
        #[arg(long)]
        direct_so: bool,
    },
    /// Table of constructed and verified elements per order
    Report {
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        /// Write report.json, report.md and kernel.dot here
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

pub struct Output {
    pub text: String,
    pub code: i32,
}

fn ok(text: String) -> Result<Output> {
    Ok(Output { text, code: 0 })
}

fn json<T: Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn read_input(path: &Path) -> Result<LinComb> {
    let s = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    if let Ok(l) = serde_json::from_str::<LinCombJson>(&s) {
        return l.to_lincomb();
    }
    match serde_json::from_str::<DiagramJson>(&s) {
        Ok(d) => LinComb::from_diagram(&d.to_diagram()?),
        Err(e) => Err(Error::Input(format!("{}: neither a diagram nor a combination: {e}", path.display()))),
    }
}

fn symbolic(name: &str) -> Option<Family> {
    match name {
        "glN" => Some(Family::Gl),
        "slN" => Some(Family::Sl),
        "soN" => Some(Family::So),
        _ => None,
    }
}

fn oracle_text(v: &OracleValue) -> String {
    match v {
        OracleValue::Scalar(q) => q.to_string(),
        OracleValue::Tensor { rank, entries } => {
            let mut es: Vec<_> = entries.iter().collect();
            es.sort();
            let mut s = format!("tensor of rank {rank}:");
            for (k, c) in es {
                write!(s, "\n  {k:?} {c}").unwrap();
            }
            s
        }
    }
}

fn cmd_dims(cfg: &Config, n_max: usize) -> Result<Output> {
    if n_max > cfg.max_chord_degree || n_max > cfg.max_open_degree {
        return Err(Error::Capacity(format!(
            "dims up to {n_max} exceeds the configured bounds ({}, {})",
            cfg.max_chord_degree, cfg.max_open_degree
        )));
    }
    let rows = dims_table(n_max, cfg.cache_dir.as_deref())?;
    ok(match cfg.format {
        Format::Json => json(&rows)?,
        Format::Markdown | Format::Dot => dims_markdown(&rows),
    })
}

fn dims_markdown(rows: &[DimsRow]) -> String {
    let mut s = String::from("| n | dim A_n | dim P_n |\n|---|---|---|\n");
    for r in rows {
        writeln!(s, "| {} | {} | {} |", r.n, r.dim_a, r.dim_p).unwrap();
    }
    s
}

#[derive(Serialize)]
struct BasisEntry {
    legs: Option<usize>,
    key: String,
    diagram: DiagramJson,
}

fn cmd_basis(cfg: &Config, space: &str, n: usize) -> Result<Output> {
    let cache = cfg.cache_dir.as_deref();
    let mut entries = vec![];
    if space == "A" {
        if n > cfg.max_chord_degree {
            return Err(Error::Capacity(format!("A_{n} exceeds max_chord_degree {}", cfg.max_chord_degree)));
        }
        if n > 0 {
            for c in a_quotient(n, cache)?.basis() {
                let d = c.diagram()?;
                let cf = crate::diagrams::canonicalize(&d)?;
                entries.push(BasisEntry { legs: None, key: cf.key.hex(), diagram: DiagramJson::from(&d) });
            }
        }
    } else {
        if n > cfg.max_open_degree || n + 1 > cfg.max_legs {
            return Err(Error::Capacity(format!("P_{n} exceeds the configured open-diagram bounds")));
        }
        if n > 1 {
            for (l, q) in p_quotients(n, cache)? {
                for k in q.basis() {
                    entries.push(BasisEntry { legs: Some(l), key: k.hex(), diagram: DiagramJson::from(&k.diagram()?) });
                }
            }
        }
    }
    ok(match cfg.format {
        Format::Json => json(&entries)?,
        Format::Markdown => {
            let mut s = format!("{space}_{n}: dimension {}\n\n| # | legs | key |\n|---|---|---|\n", entries.len());
            for (i, e) in entries.iter().enumerate() {
                let legs = e.legs.map_or("-".into(), |l| l.to_string());
                writeln!(s, "| {} | {legs} | {} |", i + 1, e.key).unwrap();
            }
            s
        }
        Format::Dot => {
            let mut s = String::new();
            for (i, e) in entries.iter().enumerate() {
                s += &to_dot(&e.diagram.to_diagram()?, &format!("{space}{n}_{}", i + 1))?;
            }
            s
        }
    })
}

fn cmd_eval(cfg: &Config, file: Option<&Path>, name: Option<&str>, algebra: &str) -> Result<Output> {
    let x = match (file, name) {
        (Some(f), _) => read_input(f)?,
        (None, Some(n)) => named(n)?,
        (None, None) => return Err(Error::Input("eval needs a file or --named".into())),
    };
    let x = expand_marked(&x)?;
    let text = if let Some(f) = symbolic(algebra) {
        wsys(f, &x)?.to_string()
    } else {
        let l = LieAlgebraSpec::by_name(algebra).map_err(|e| Error::Input(e.to_string()))?;
        let mut total: Option<OracleValue> = None;
        for (d, c) in x.diagrams()? {
            let v = crate::weights::oracle_eval_budget(&d, &l, cfg.oracle_budget)?;
            total = Some(match total {
                None => scale_oracle(v, &c),
                Some(t) => add_oracle(t, scale_oracle(v, &c))?,
            });
        }
        match total {
            Some(t) => oracle_text(&t),
            None => oracle_text(&oracle_eval_lc(&x, &l)?),
        }
    };
    ok(match cfg.format {
        Format::Json => json(&serde_json::json!({ "algebra": algebra, "value": text }))?,
        _ => text + "\n",
    })
}

fn scale_oracle(v: OracleValue, c: &crate::Q) -> OracleValue {
    match v {
        OracleValue::Scalar(q) => OracleValue::Scalar(q * c),
        OracleValue::Tensor { rank, entries } => {
            OracleValue::Tensor { rank, entries: entries.into_iter().map(|(k, q)| (k, q * c)).collect() }
        }
    }
}

fn add_oracle(a: OracleValue, b: OracleValue) -> Result<OracleValue> {
    match (a, b) {
        (OracleValue::Scalar(x), OracleValue::Scalar(y)) => Ok(OracleValue::Scalar(x + y)),
        (OracleValue::Tensor { rank, mut entries }, OracleValue::Tensor { rank: r2, entries: e2 }) if rank == r2 => {
            for (k, c) in e2 {
                *entries.entry(k).or_default() += c;
            }
            entries.retain(|_, c| *c != crate::Q::default());
            Ok(OracleValue::Tensor { rank, entries })
        }
        _ => Err(Error::Kind("terms of different shapes".into())),
    }
}

fn cmd_export(file: &Path) -> Result<Output> {
    let x = read_input(file)?;
    let stem = file.file_stem().and_then(|s| s.to_str()).unwrap_or("diagram");
    if x.is_empty() {
        return ok(to_dot(&Diagram::empty(), stem)?);
    }
    let mut s = String::new();
    let ds = x.diagrams()?;
    for (i, (d, c)) in ds.iter().enumerate() {
        let name = if ds.len() == 1 { stem.to_string() } else { format!("{stem}_{}", i + 1) };
        if ds.len() > 1 {
            writeln!(s, "// coefficient: {c}").unwrap();
        }
        s += &to_dot(d, &name)?;
    }
    ok(s)
}

#[derive(Serialize)]
struct BuiltElement {
    name: String,
    order: usize,
    legs: Option<usize>,
    recipe: String,
    terms: usize,
    closed_form: LinCombJson,
}

fn built(e: &KernelElement) -> Result<BuiltElement> {
    Ok(BuiltElement {
        name: e.name.clone(),
        order: e.order,
        legs: e.legs,
        recipe: e.recipe.clone(),
        terms: e.closed_form.len(),
        closed_form: LinCombJson::from_lincomb(&e.closed_form)?,
    })
}

fn file_stem(e: &KernelElement, i: usize) -> String {
    format!("order{}_{}", e.order, i + 1)
}

fn dot_bundle(elems: &[(usize, KernelElement)]) -> Result<String> {
    let mut s = String::new();
    for (i, e) in elems {
        writeln!(s, "// {}: {}", e.name, e.recipe).unwrap();
        for (j, (d, c)) in e.closed_form.diagrams()?.iter().enumerate() {
            writeln!(s, "// coefficient: {c}").unwrap();
            s += &to_dot(d, &format!("{}_{}", file_stem(e, *i), j + 1))?;
        }
    }
    Ok(s)
}

fn check_order(n: usize) -> Result<()> {
    if !(6..=10).contains(&n) {
        return Err(Error::Capacity(format!("kernel elements exist for orders 6..=10, got {n}")));
    }
    Ok(())
}

fn verify_options(cfg: &Config, direct_so: bool) -> VerifyOptions {
    VerifyOptions { direct_so, oracle_budget: cfg.oracle_budget, quotient_max: cfg.max_chord_degree.min(7), ..Default::default() }
}

fn rows_markdown(rows: &[KernelRow]) -> String {
    let mut s = String::from("| order | element | legs | terms | sl_N | so_N | so_N split | class nonzero | oracles | verified |\n");
    s += "|---|---|---|---|---|---|---|---|---|---|\n";
    for r in rows {
        let legs = r.legs.map_or("-".into(), |l| l.to_string());
        let q = match r.quotient_nonzero {
            Some(b) => format!("{b} (quotient)"),
            None => format!("{} (so_N)", !r.so.is_zero() || r.so_split.as_ref().is_some_and(|p| !p.is_zero())),
        };
        let o: Vec<String> = r
            .oracle
            .iter()
            .map(|o| format!("{}: {}", o.algebra, o.zero.map_or("skipped".into(), |z| if z { "0".into() } else { "nonzero".to_string() })))
            .collect();
        writeln!(
            s,
            "| {} | {} | {legs} | {} | {} | {} | {} | {q} | {} | {} |",
            r.order,
            r.name,
            r.terms,
            r.sl,
            r.so,
            r.so_split.as_ref().map_or("-".into(), |p| p.to_string()),
            o.join(", "),
            r.verified
        )
        .unwrap();
    }
    s
}

fn report_markdown(rep: &KernelReport) -> String {
    let mut s = String::from("| n | kind | bound | constructed | verified | so rank | so rank, plain closure | quotient rank | saturated |\n");
    s += "|---|---|---|---|---|---|---|---|---|\n";
    for o in &rep.orders {
        let kind = if o.primitive || o.order < 6 { "primitive" } else { "non-primitive" };
        let qr = o.quotient_rank.map_or("-".into(), |r| r.to_string());
        writeln!(
            s,
            "| {} | {kind} | {} | {} | {} | {} | {} | {qr} | {} |",
            o.order, o.bound, o.constructed, o.verified, o.so_rank, o.so_vector_rank, o.saturated
        )
        .unwrap();
    }
    s + "\n" + &rows_markdown(&rep.rows)
}

fn cmd_kernel(cfg: &Config, action: &KernelCmd) -> Result<Output> {
    match action {
        KernelCmd::Build { order, out } => {
            check_order(*order)?;
            let elems = build_order(*order)?;
            if let Some(dir) = out {
                std::fs::create_dir_all(dir)?;
                for (i, e) in elems.iter().enumerate() {
                    let stem = file_stem(e, i);
                    std::fs::write(dir.join(format!("{stem}.json")), json(&LinCombJson::from_lincomb(&e.closed_form)?)?)?;
                    std::fs::write(dir.join(format!("{stem}.dot")), dot_bundle(&[(i, e.clone())])?)?;
                }
            }
            ok(match cfg.format {
                Format::Json => json(&elems.iter().map(built).collect::<Result<Vec<_>>>()?)?,
                Format::Markdown => {
                    let mut s = String::from("| element | legs | terms | recipe |\n|---|---|---|---|\n");
                    for e in &elems {
                        let legs = e.legs.map_or("-".into(), |l| l.to_string());
                        writeln!(s, "| {} | {legs} | {} | {} |", e.name, e.closed_form.len(), e.recipe).unwrap();
                    }
                    s
                }
                Format::Dot => dot_bundle(&elems.into_iter().enumerate().collect::<Vec<_>>())?,
            })
        }
        KernelCmd::Verify { all, order, direct_so } => {
            let orders: Vec<usize> = match (all, order) {
                (true, _) | (false, None) => (6..=10).collect(),
                (false, Some(n)) => {
                    check_order(*n)?;
                    vec![*n]
                }
            };
            let opt = verify_options(cfg, *direct_so);
            let mut rows = vec![];
            for n in orders {
                for e in build_order(n)? {
                    rows.push(verify_kernel(&e, &opt)?);
                }
            }
            let code = if rows.iter().all(|r| r.verified) { 0 } else { 1 };
            let text = match cfg.format {
                Format::Json => json(&rows)?,
                _ => rows_markdown(&rows),
            };
            Ok(Output { text, code })
        }
        KernelCmd::Report { n_max, out } => {
            if *n_max > 10 {
                return Err(Error::Capacity(format!("kernel report covers orders up to 10, got {n_max}")));
            }
            let rep = kernel_dims_report(*n_max, &verify_options(cfg, false))?;
            if let Some(dir) = out {
                std::fs::create_dir_all(dir)?;
                std::fs::write(dir.join("report.json"), json(&rep)?)?;
                std::fs::write(dir.join("report.md"), report_markdown(&rep))?;
                let mut elems = vec![];
                for n in 6..=*n_max {
                    elems.extend(build_order(n)?.into_iter().enumerate());
                }
                std::fs::write(dir.join("kernel.dot"), dot_bundle(&elems)?)?;
            }
            let code = if rep.all_verified() { 0 } else { 1 };
            let text = match cfg.format {
                Format::Json => json(&rep)?,
                _ => report_markdown(&rep),
            };
            Ok(Output { text, code })
        }
    }
}

fn cmd_selftest(cfg: &Config) -> Result<Output> {
    let opt = acceptance::SuiteOptions {
        cache: cfg.cache_dir.as_deref(),
        kernel: verify_options(cfg, false),
        ..Default::default()
    };
    let outcomes = acceptance::run_all(&opt);
    let mut s = String::new();
    for o in &outcomes {
        writeln!(s, "{}", acceptance::line(o)).unwrap();
    }
    let code = if outcomes.iter().all(|o| o.pass) { 0 } else { 1 };
    Ok(Output { text: s, code })
}

/// Merge the config file with the global flags.
pub fn config_from(cli: &Cli) -> Result<Config> {
    let mut cfg = match &cli.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    if let Some(d) = &cli.cache_dir {
        cfg.cache_dir = Some(d.clone());
    }
    if let Some(f) = cli.format {
        cfg.format = f;
    }
    if let Some(t) = cli.threads {
        cfg.threads = t;
    }
    cfg.validate()?;
    Ok(cfg)
}

pub fn run(cli: &Cli) -> Result<Output> {
    let cfg = config_from(cli)?;
    set_threads(cfg.threads);
    set_cache_dir(cfg.cache_dir.clone());
    match &cli.cmd {
        Cmd::Dims { n_max } => cmd_dims(&cfg, *n_max),
        Cmd::Basis { space, n } => cmd_basis(&cfg, space, *n),
        Cmd::Eval { file, named, algebra } => cmd_eval(&cfg, file.as_deref(), named.as_deref(), algebra),
        Cmd::Kernel { action } => cmd_kernel(&cfg, action),
        Cmd::Export { file } => cmd_export(file),
        Cmd::Selftest => cmd_selftest(&cfg),
    }
}

pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 3 } else { 0 };
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            out.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
