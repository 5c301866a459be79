//! Command-line front end. Exit status: 0 success, 1 a check failed, 2 usage
//! or input error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{anyhow, Context as _};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use skewring_core::catalog::{self, ExampleName, Report};
use skewring_core::code::{dickson_check, idempotent_certify};
use skewring_core::semilinear::recognize;
use skewring_core::{Code, DistanceMethod, Form, RingCtx, RingElem};

use crate::context::{self, fingerprint};
use crate::files;
use crate::search::{self, SearchConfig};

pub const THREADS_ENV: &str = "SKEWRING_THREADS";

#[derive(Debug, Parser)]
#[command(name = "skewring", version, about = "Codes in twisted skew group rings over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Context files.
    Ctx {
        #[command(subcommand)]
        cmd: CtxCmd,
    },
    /// Codes spanned by generators in a ring, or given as a matrix.
    Code {
        #[command(subcommand)]
        cmd: CodeCmd,
    },
    /// Idempotent generators.
    Idem {
        #[command(subcommand)]
        cmd: IdemCmd,
    },
    /// Reconstruct (G, Θ, α) from a code and a group of semilinear automorphisms.
    Recognize {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        group: PathBuf,
    },
    /// Check the worked examples.
    Verify {
        #[command(subcommand)]
        cmd: VerifyCmd,
    },
    /// Random search for left ideals; appends JSONL records.
    Search(SearchArgs),
}

#[derive(Debug, Subcommand)]
enum CtxCmd {
    /// Parse a context file and validate its cocycle.
    Check { file: PathBuf },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormArg {
    Euclidean,
    Hermitian,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Exhaustive,
    Bz,
}

#[derive(Debug, Args)]
struct CodeArgs {
    /// Context file (TOML).
    #[arg(long, requires = "gen", conflicts_with = "matrix")]
    ctx: Option<PathBuf>,
    /// Generator elements, one per line.
    #[arg(long, requires = "ctx")]
    gen: Option<PathBuf>,
    /// A generator matrix file, used instead of --ctx/--gen.
    #[arg(long)]
    matrix: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "euclidean")]
    form: FormArg,
    #[arg(long, value_enum, default_value = "auto")]
    method: MethodArg,
}

#[derive(Debug, Subcommand)]
enum CodeCmd {
    /// Print the RREF generator matrix.
    Span(CodeArgs),
    /// Print `[n,k,d]_q`.
    Dist(CodeArgs),
    /// Print the weight enumerator.
    Wenum(CodeArgs),
    /// Print the dual's generator matrix.
    Dual(CodeArgs),
}

#[derive(Debug, Args)]
struct IdemArgs {
    #[arg(long)]
    ctx: PathBuf,
    #[arg(long)]
    gen: PathBuf,
}

#[derive(Debug, Subcommand)]
enum IdemCmd {
    /// Report which idempotent criteria the (single) generator meets.
    Check(IdemArgs),
    /// Extract an idempotent generator of the spanned ideal.
    Extract(IdemArgs),
}

#[derive(Debug, Subcommand)]
enum VerifyCmd {
    Example {
        name: String,
        #[arg(long)]
        json: bool,
    },
    All {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Args)]
struct SearchArgs {
    #[arg(long)]
    ctx: PathBuf,
    #[arg(long)]
    budget: u64,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    /// Probability that a generator coefficient is nonzero.
    #[arg(long, default_value_t = 0.5)]
    density: f64,
    /// Codewords one distance computation may enumerate before recording bounds.
    #[arg(long, default_value_t = SearchConfig::DEFAULT_WORK_CAP)]
    work_cap: u64,
}

/// Errors that map to exit status 1 rather than 2.
#[derive(Debug)]
struct CheckFailed(String);

impl std::fmt::Display for CheckFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for CheckFailed {}

fn failed(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(CheckFailed(msg.into()))
}

/// Runs the CLI and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            if e.downcast_ref::<CheckFailed>().is_some() {
                1
            } else {
                2
            }
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> anyhow::Result<i32> {
    match cmd {
        Command::Ctx { cmd: CtxCmd::Check { file } } => ctx_check(&file, out),
        Command::Code { cmd } => code_cmd(cmd, out),
        Command::Idem { cmd } => idem_cmd(cmd, out),
        Command::Recognize { code, group } => recognize_cmd(&code, &group, out),
        Command::Verify { cmd } => verify_cmd(cmd, out),
        Command::Search(args) => search_cmd(args, out),
    }
}

fn ctx_check(file: &Path, out: &mut dyn Write) -> anyhow::Result<i32> {
    let un = context::load_unchecked(file)?;
    let report = un.validate();
    writeln!(out, "field GF({}^{}) poly={:?}", un.field.p(), un.field.m(), un.field.poly())?;
    writeln!(out, "group order {}: {}", un.group.order(), un.group.labels().join(" "))?;
    writeln!(out, "theta exponents {:?}", un.theta.exps())?;
    if !report.is_ok() {
        for f in &report.failures {
            writeln!(out, "cocycle: {f}")?;
        }
        return Err(failed(format!("{}: cocycle does not validate", file.display())));
    }
    let involutive = un.alpha.is_involutive(&un.field);
    let cob = un.alpha.coboundary_test(&un.field, &un.group)?;
    writeln!(out, "cocycle valid, involutive={involutive}, coboundary={}", cob.is_some())?;
    let ctx = un.into_ctx()?;
    writeln!(out, "fingerprint {}", fingerprint(&ctx))?;
    Ok(0)
}

fn load_code(args: &CodeArgs) -> anyhow::Result<Code> {
    match (&args.ctx, &args.gen, &args.matrix) {
        (Some(c), Some(g), None) => {
            let ctx = context::load(c)?;
            let gens = files::read_generators(g, &ctx)?;
            Ok(Code::ideal_span(&gens)?)
        }
        (None, None, Some(m)) => Ok(files::read_genmat(m)?),
        _ => Err(anyhow!("give either --ctx and --gen, or --matrix")),
    }
}

fn method(m: MethodArg) -> DistanceMethod {
    match m {
        MethodArg::Auto => DistanceMethod::Auto,
        MethodArg::Exhaustive => DistanceMethod::Exhaustive,
        MethodArg::Bz => DistanceMethod::BrouwerZimmermann,
    }
}

fn form(f: FormArg) -> Form {
    match f {
        FormArg::Euclidean => Form::Euclidean,
        FormArg::Hermitian => Form::Hermitian,
    }
}

fn code_cmd(cmd: CodeCmd, out: &mut dyn Write) -> anyhow::Result<i32> {
    match cmd {
        CodeCmd::Span(a) => {
            let code = load_code(&a)?;
            write!(out, "{}", files::render_genmat(&code))?;
        }
        CodeCmd::Dist(a) => {
            let code = load_code(&a)?;
            if code.is_zero() {
                return Err(anyhow!("the generators span the zero code"));
            }
            let d = code.min_distance(method(a.method))?;
            writeln!(out, "{}", code.params(Some(d.d)))?;
        }
        CodeCmd::Wenum(a) => {
            let code = load_code(&a)?;
            writeln!(out, "{}", code.weight_enumerator()?.render())?;
        }
        CodeCmd::Dual(a) => {
            let code = load_code(&a)?;
            write!(out, "{}", files::render_genmat(&code.dual(form(a.form))?))?;
        }
    }
    Ok(0)
}

fn single_generator(a: &IdemArgs) -> anyhow::Result<(Arc<RingCtx>, Vec<RingElem>)> {
    let ctx = context::load(&a.ctx)?;
    let gens = files::read_generators(&a.gen, &ctx)?;
    Ok((ctx, gens))
}

fn idem_cmd(cmd: IdemCmd, out: &mut dyn Write) -> anyhow::Result<i32> {
    match cmd {
        IdemCmd::Check(a) => {
            let (_, gens) = single_generator(&a)?;
            if gens.len() != 1 {
                return Err(anyhow!("{}: expected exactly one element", a.gen.display()));
            }
            let e = &gens[0];
            let flags = idempotent_certify(e).map_err(|e| failed(e.to_string()))?;
            writeln!(out, "flags: {}", flags.names().join(" "))?;
            if !flags.idempotent {
                return Err(failed("element is not idempotent"));
            }
            let code = Code::ideal_span(std::slice::from_ref(e))?;
            writeln!(out, "code {}", code.params(None))?;
            writeln!(out, "p-part of |G| divides dim: {}", dickson_check(e)?)?;
        }
        IdemCmd::Extract(a) => {
            let (_, gens) = single_generator(&a)?;
            let code = Code::ideal_span(&gens)?;
            let e = code.maschke_idempotent().map_err(|e| failed(e.to_string()))?;
            writeln!(out, "{e}")?;
        }
    }
    Ok(0)
}

fn recognize_cmd(code: &Path, group: &Path, out: &mut dyn Write) -> anyhow::Result<i32> {
    let code = files::read_genmat(code)?;
    let gg = files::read_gamma_group(group, code.field(), code.n())?;
    let rec = recognize(&code, &gg).map_err(|e| failed(e.to_string()))?;
    let ctx = &rec.ctx;
    let f = ctx.field();
    writeln!(out, "group order {}", ctx.n())?;
    writeln!(out, "coordinate labels {:?}", rec.labeling)?;
    writeln!(out, "theta exponents {:?}", ctx.theta().exps())?;
    writeln!(out, "cocycle")?;
    write!(out, "{}", files::render_cocycle(ctx.alpha(), f))?;
    writeln!(out, "group table")?;
    for row in ctx.group().table_rows() {
        writeln!(out, "{}", row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))?;
    }
    Ok(0)
}

#[derive(Serialize)]
struct JsonItem<'a> {
    example: &'a str,
    name: &'a str,
    expected: &'a str,
    got: &'a str,
    pass: bool,
    informational: bool,
}

fn print_report(rep: &Report, json: bool, out: &mut dyn Write) -> anyhow::Result<()> {
    let ex = rep.example.as_str();
    if json {
        for i in &rep.items {
            let item = JsonItem { example: ex, name: &i.name, expected: &i.expected, got: &i.got, pass: i.pass, informational: i.informational };
            writeln!(out, "{}", serde_json::to_string(&item)?)?;
        }
        return Ok(());
    }
    writeln!(out, "{ex}: {}", if rep.passed() { "PASS" } else { "FAIL" })?;
    for i in &rep.items {
        let tag = match (i.pass, i.informational) {
            (true, _) => "ok  ",
            (false, true) => "info",
            (false, false) => "FAIL",
        };
        writeln!(out, "  [{tag}] {}: expected {}, got {}", i.name, i.expected, i.got)?;
    }
    Ok(())
}

fn verify_cmd(cmd: VerifyCmd, out: &mut dyn Write) -> anyhow::Result<i32> {
    let (names, json) = match cmd {
        VerifyCmd::Example { name, json } => (vec![ExampleName::parse(&name)?], json),
        VerifyCmd::All { json } => (ExampleName::ALL.to_vec(), json),
    };
    let mut bad = Vec::new();
    for n in names {
        let rep = catalog::verify(n)?;
        print_report(&rep, json, out)?;
        if !rep.passed() {
            bad.push(n.as_str());
        }
    }
    if bad.is_empty() {
        Ok(0)
    } else {
        Err(failed(format!("failed: {}", bad.join(", "))))
    }
}

/// Worker count from `SKEWRING_THREADS`; `None` when unset.
pub fn threads_from_env() -> anyhow::Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => {
            let n: usize = v.trim().parse().with_context(|| format!("{THREADS_ENV}={v:?} is not a number"))?;
            if n == 0 {
                return Err(anyhow!("{THREADS_ENV} must be at least 1"));
            }
            Ok(Some(n))
        }
        Err(_) => Ok(None),
    }
}

fn search_cmd(a: SearchArgs, out: &mut dyn Write) -> anyhow::Result<i32> {
    let ctx = context::load(&a.ctx)?;
    let cfg = SearchConfig { budget: a.budget, seed: a.seed, density: a.density, work_cap: a.work_cap };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads_from_env()? {
        pool = pool.num_threads(n);
    }
    let pool = pool.build()?;
    let records = pool.install(|| search::run(&ctx, &cfg))?;
    search::append_jsonl(&a.out, &records)?;
    writeln!(out, "{} records from {} candidates -> {}", records.len(), a.budget, a.out.display())?;
    for (k, r) in search::best_by_k(&records) {
        writeln!(out, "  k={k}: {} lcd={} generator {}", r.params, r.flags.lcd_euclidean, r.generator)?;
    }
    Ok(0)
}
