use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use dihedrant::arith::prime_power;
use dihedrant::constructions::{build, build_t11, build_t13, enumerate_family, T11Variant};
use dihedrant::dsrg::{verify_fourier, verify_groupring, verify_matrix, DsrgParams, Verdict};
use dihedrant::residue::{max_modulus, set_max_modulus};
use dihedrant::search::{match_tags, search_xx, search_xy, SearchLimits, SearchMode, SearchOptions, SearchRecord};
use dihedrant::structure::{coset_structure, decompose_ux, q_values, shape_t14, shape_t15, shape_t16, w_realness};
use dihedrant::{Dihedrant, Error, Family, FamilyInstance, ZnMultiset};

#[derive(Parser)]
#[command(name = "dsrg", version, about = "Directed strongly regular Cayley digraphs on dihedral groups")]
struct Cli {
    /// Output format; each subcommand has its own default
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,

    /// Largest n accepted by searches
    #[arg(long, env = "DSRG_MAX_N", global = true)]
    max_n: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Check whether Dih(n, X, Y) is a DSRG with all three verifiers
    Verify(VerifyArgs),
    /// Feasibility and spectrum of a parameter tuple
    Params(ParamsArgs),
    /// Build one member of a construction family
    Construct(ConstructArgs),
    /// List every member of a family at (n, v) as JSON lines
    Enumerate(EnumerateArgs),
    /// U_X decomposition, coset structure and shape predicates
    Analyze(AnalyzeArgs),
    /// Exhaustive search over Z_{p^alpha}
    Search(SearchArgs),
    /// Complement dihedrant and its parameters
    Complement(Instance),
    /// Canonical form under (X, Y) -> (bX, b' + bY)
    Canon(Instance),
}

#[derive(Args)]
struct Instance {
    #[arg(long)]
    n: usize,
    /// Rotation part, e.g. "1,4,7"
    #[arg(long, allow_hyphen_values = true, default_value = "")]
    x: String,
    /// Reflection part
    #[arg(long, allow_hyphen_values = true, default_value = "")]
    y: String,
}

impl Instance {
    fn dihedrant(&self) -> Result<Dihedrant> {
        Ok(Dihedrant::parse(self.n, &self.x, &self.y)?)
    }
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, required_unless_present = "records")]
    n: Option<usize>,
    #[arg(long, allow_hyphen_values = true, default_value = "")]
    x: String,
    #[arg(long, allow_hyphen_values = true, default_value = "")]
    y: String,
    /// Re-verify every record of a JSON-lines file instead
    #[arg(long, conflicts_with = "n")]
    records: Option<PathBuf>,
}

#[derive(Args)]
struct ParamsArgs {
    #[arg(long)]
    v: i64,
    #[arg(long)]
    k: i64,
    #[arg(long)]
    mu: i64,
    #[arg(long)]
    lambda: i64,
    #[arg(long)]
    t: i64,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long)]
    family: Family,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    v: Option<usize>,
    /// H ⊆ Z_v for the quotient families
    #[arg(long, allow_hyphen_values = true)]
    h: Option<String>,
    /// X for t11 and t13
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
    /// Y for t13
    #[arg(long, allow_hyphen_values = true)]
    y: Option<String>,
    /// Translation g for t11 (Y = g + X)
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    g: i64,
    /// Use Y = g - X for t11
    #[arg(long)]
    negate: bool,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    family: Family,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    v: usize,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, allow_hyphen_values = true)]
    x: String,
    #[arg(long, allow_hyphen_values = true)]
    y: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Xx,
    Xy,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    p: usize,
    #[arg(long)]
    alpha: u32,
    #[arg(long, value_enum)]
    mode: Mode,
    /// Prefilter X = Y candidates before matrix verification
    #[arg(long)]
    filtered: bool,
    /// Worker threads (0 = all cores)
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Keep hits with t = 0 or t = k
    #[arg(long)]
    include_non_genuine: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct VerifyReport {
    n: usize,
    #[serde(rename = "X")]
    x: Vec<usize>,
    #[serde(rename = "Y")]
    y: Vec<usize>,
    dsrg: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    params: Option<DsrgParams>,
    #[serde(skip_serializing_if = "Option::is_none")]
    genuine: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    groupring: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    fourier: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
}

fn verify_report(d: &Dihedrant) -> Result<VerifyReport> {
    let mut r = VerifyReport {
        n: d.n(),
        x: d.x().support(),
        y: d.y().support(),
        dsrg: false,
        params: None,
        genuine: None,
        groupring: None,
        fourier: None,
        reason: None,
    };
    match verify_matrix(d) {
        Ok(p) => {
            let g = verify_groupring(d, &p)?;
            let f = verify_fourier(d, &p)?;
            r.dsrg = true;
            r.params = Some(p);
            r.genuine = Some(p.is_genuine());
            r.groupring = Some(g.holds());
            r.fourier = Some(f.holds());
            if let Verdict::Fails { identity, at } = g {
                r.reason = Some(format!("group ring identity {identity} fails at {at:?}"));
            }
        }
        Err(v) => r.reason = Some(v.to_string()),
    }
    Ok(r)
}

fn genuineness(p: &DsrgParams) -> &'static str {
    match p.t {
        t if t == p.k => "undirected (t = k)",
        0 => "tournament-like (t = 0)",
        _ => "genuine",
    }
}

struct Ctx {
    format: Option<Format>,
    limits: SearchLimits,
}

impl Ctx {
    fn json(&self, default: Format) -> bool {
        self.format.unwrap_or(default) == Format::Json
    }
}

fn line(out: &mut dyn Write, v: &impl Serialize) -> Result<()> {
    serde_json::to_writer(&mut *out, v)?;
    writeln!(out)?;
    Ok(())
}

fn verify(ctx: &Ctx, a: &VerifyArgs, out: &mut dyn Write) -> Result<bool> {
    if let Some(path) = &a.records {
        return verify_records(ctx, path, out);
    }
    let d = Dihedrant::parse(a.n.expect("required by clap"), &a.x, &a.y)?;
    let r = verify_report(&d)?;
    if ctx.json(Format::Text) {
        line(out, &r)?;
    } else if let Some(p) = r.params {
        writeln!(out, "{p}")?;
        writeln!(out, "{d}: DSRG, {}", genuineness(&p))?;
        let word = |b: Option<bool>| if b == Some(true) { "holds" } else { "fails" };
        writeln!(out, "group ring: {}, Fourier: {}", word(r.groupring), word(r.fourier))?;
    } else {
        writeln!(out, "not a DSRG: {}", r.reason.as_deref().unwrap_or(""))?;
    }
    Ok(r.dsrg && r.groupring != Some(false) && r.fourier != Some(false))
}

fn verify_records(ctx: &Ctx, path: &PathBuf, out: &mut dyn Write) -> Result<bool> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let mut all = true;
    let mut count = 0usize;
    for (i, l) in BufReader::new(file).lines().enumerate() {
        let l = l?;
        if l.trim().is_empty() {
            continue;
        }
        let rec: SearchRecord =
            serde_json::from_str(&l).with_context(|| format!("{}:{}: not a record", path.display(), i + 1))?;
        let r = verify_report(&rec.dihedrant()?)?;
        let same = r.params == Some(rec.params) && r.groupring == Some(true) && r.fourier == Some(true);
        all &= same;
        count += 1;
        if ctx.json(Format::Text) {
            line(out, &json!({"line": i + 1, "expected": rec.params, "report": r, "agrees": same}))?;
        } else if !same {
            writeln!(out, "line {}: recorded {}, verified {:?}", i + 1, rec.params, r.params)?;
        }
    }
    if !ctx.json(Format::Text) {
        writeln!(out, "{count} records, {}", if all { "all verified" } else { "mismatches found" })?;
    }
    Ok(all)
}

fn params(ctx: &Ctx, a: &ParamsArgs, out: &mut dyn Write) -> Result<bool> {
    let p = DsrgParams::new(a.v, a.k, a.mu, a.lambda, a.t);
    let feas = p.duval_feasible();
    let eig = p.eigenvalues().ok();
    if ctx.json(Format::Text) {
        line(
            out,
            &json!({
                "params": p,
                "feasible": feas.is_ok(),
                "reason": feas.as_ref().err().map(ToString::to_string),
                "genuine": p.is_genuine(),
                "spectrum": eig,
            }),
        )?;
    } else {
        writeln!(out, "{p}")?;
        match &feas {
            Ok(()) => writeln!(out, "feasible, {}", genuineness(&p))?,
            Err(e) => writeln!(out, "infeasible: {e}")?,
        }
        if let Some(e) = eig {
            writeln!(out, "spectrum: {}^1 {}^{} {}^{}", e.k, e.rho, e.m_rho, e.sigma, e.m_sigma)?;
        }
    }
    Ok(feas.is_ok())
}

fn parse_set(n: usize, s: &Option<String>, what: &str) -> Result<ZnMultiset> {
    let s = s.as_deref().with_context(|| format!("--{what} is required"))?;
    Ok(ZnMultiset::parse_plain(n, s)?)
}

fn print_instance(ctx: &Ctx, inst: &FamilyInstance, out: &mut dyn Write) -> Result<()> {
    if ctx.json(Format::Json) {
        line(out, inst)
    } else {
        writeln!(out, "{} {} {}", inst.family.tag(), inst.dihedrant, inst.params)?;
        Ok(())
    }
}

fn construct(ctx: &Ctx, a: &ConstructArgs, out: &mut dyn Write) -> Result<bool> {
    let inst = match a.family {
        Family::T11 => {
            let x = parse_set(a.n, &a.x, "x")?;
            let variant = if a.negate { T11Variant::NegateTranslate } else { T11Variant::Translate };
            build_t11(&x, a.g, variant)?
        }
        Family::T13 => build_t13(&parse_set(a.n, &a.x, "x")?, &parse_set(a.n, &a.y, "y")?)?,
        f => {
            let v = a.v.context("--v is required for quotient families")?;
            build(f, a.n, v, &parse_set(v, &a.h, "h")?)?
        }
    };
    print_instance(ctx, &inst, out)?;
    Ok(true)
}

fn enumerate(ctx: &Ctx, a: &EnumerateArgs, out: &mut dyn Write) -> Result<bool> {
    for inst in enumerate_family(a.family, a.n, a.v)? {
        print_instance(ctx, &inst, out)?;
    }
    Ok(true)
}

fn analyze(ctx: &Ctx, a: &AnalyzeArgs, out: &mut dyn Write) -> Result<bool> {
    let x = ZnMultiset::parse_plain(a.n, &a.x)?;
    let y = a.y.as_deref().map(|s| ZnMultiset::parse_plain(a.n, s)).transpose()?;
    let coset = coset_structure(&x);
    let mut report = json!({
        "n": a.n,
        "X": x.support(),
        "q": q_values(&x),
        "coset": {"v": coset.v, "H": coset.h.support()},
    });
    if let Some((p, alpha)) = prime_power(a.n) {
        report["p"] = json!(p);
        report["alpha"] = json!(alpha);
        report["decomposition"] = serde_json::to_value(decompose_ux(p, alpha, &x)?)?;
        let mut shapes = serde_json::Map::new();
        if p == 2 {
            shapes.insert("T1.5".into(), json!(shape_t15(alpha, &x)?));
        } else {
            shapes.insert("T1.4".into(), json!(shape_t14(p, alpha, &x)?));
            if let Some(y) = &y {
                shapes.insert("T1.6".into(), json!(shape_t16(p, alpha, &x, y)?));
            }
        }
        report["shapes"] = Value::Object(shapes);
    }
    if let Some(y) = &y {
        report["Y"] = json!(y.support());
        if x.is_subset(y)? {
            report["w"] = serde_json::to_value(w_realness(&x, y)?)?;
        }
        let d = Dihedrant::new(x.clone(), y.clone())?;
        report["params"] = json!(verify_matrix(&d).ok());
        report["matched"] = json!(match_tags(&d));
    }
    if ctx.json(Format::Json) {
        line(out, &report)?;
    } else {
        writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
    }
    Ok(true)
}

fn search(ctx: &Ctx, a: &SearchArgs, out: &mut dyn Write) -> Result<bool> {
    let opts = SearchOptions { jobs: a.jobs, include_non_genuine: a.include_non_genuine, limits: ctx.limits };
    let records = match a.mode {
        Mode::Xx => {
            let mode = if a.filtered { SearchMode::Filtered } else { SearchMode::Exhaustive };
            search_xx(a.p, a.alpha, mode, &opts)?
        }
        Mode::Xy => {
            if a.filtered {
                bail!(Error::InvalidArgument("--filtered applies to --mode xx only".into()));
            }
            search_xy(a.p, a.alpha, &opts)?
        }
    };
    let mut file;
    let sink: &mut dyn Write = match &a.out {
        Some(path) => {
            file = BufWriter::new(File::create(path).with_context(|| format!("creating {}", path.display()))?);
            &mut file
        }
        None => out,
    };
    for r in &records {
        if ctx.json(Format::Json) {
            line(sink, r)?;
        } else {
            let d = r.dihedrant()?;
            writeln!(sink, "{d} {} canonical={} [{}]", r.params, r.canonical, r.matched.join(","))?;
        }
    }
    sink.flush()?;
    eprintln!("{} records", records.len());
    Ok(true)
}

fn complement(ctx: &Ctx, a: &Instance, out: &mut dyn Write) -> Result<bool> {
    let d = a.dihedrant()?;
    let c = d.complement();
    let r = verify_report(&c)?;
    let expected = verify_matrix(&d).ok().map(|p| p.complement());
    if ctx.json(Format::Text) {
        line(out, &json!({"complement": r, "expected": expected}))?;
    } else {
        match r.params {
            Some(p) => writeln!(out, "{c}: {p}")?,
            None => writeln!(out, "{c}: not a DSRG")?,
        }
    }
    Ok(r.dsrg && r.params == expected)
}

fn canon(ctx: &Ctx, a: &Instance, out: &mut dyn Write) -> Result<bool> {
    let d = a.dihedrant()?;
    let (x, y) = d.canonical_form()?;
    let c = Dihedrant::from_masks(d.n(), x, y)?;
    let orbit = d.transform_orbit()?.len();
    if ctx.json(Format::Text) {
        line(
            out,
            &json!({"n": d.n(), "X": c.x().support(), "Y": c.y().support(), "canonical": d.is_canonical()?, "orbit": orbit}),
        )?;
    } else {
        writeln!(out, "{c}")?;
        writeln!(out, "orbit size {orbit}, input is {}canonical", if c == d { "" } else { "not " })?;
    }
    Ok(true)
}

fn run(cli: &Cli) -> Result<bool> {
    let mut limits = SearchLimits::default();
    if let Some(cap) = cli.max_n {
        limits = SearchLimits::uniform(cap);
        if cap > max_modulus() {
            set_max_modulus(cap);
        }
    }
    let ctx = Ctx { format: cli.format, limits };
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let ok = match &cli.command {
        Command::Verify(a) => verify(&ctx, a, &mut out),
        Command::Params(a) => params(&ctx, a, &mut out),
        Command::Construct(a) => construct(&ctx, a, &mut out),
        Command::Enumerate(a) => enumerate(&ctx, a, &mut out),
        Command::Analyze(a) => analyze(&ctx, a, &mut out),
        Command::Search(a) => search(&ctx, a, &mut out),
        Command::Complement(a) => complement(&ctx, a, &mut out),
        Command::Canon(a) => canon(&ctx, a, &mut out),
    }?;
    out.flush()?;
    Ok(ok)
}

/// Instance-level failures exit 1, malformed input exits 2.
fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::Loop | Error::Inadmissible(_) | Error::Infeasible(_) | Error::ParamsMismatch(_)) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
