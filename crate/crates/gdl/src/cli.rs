//! The `gdl` command line: argument types and a `run` that turns a
//! [`RunConfig`] into output text and an exit code.

use std::ops::RangeInclusive;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::complexes::free_resolution;
use crate::error::{Error, Result};
use crate::graded::{parse_module, GradedPresentation};
use crate::harness::{
    check_nilpotent_orbit, check_projective_line, check_quadric_cone, default_window, duality_check, duality_suite, hilbert_value, nilpotent_orbit_module,
    random_suite, route_equivalence_suite, Format, Report,
};
use crate::local_cohomology::{les_check, local_cohomology_table, LcInput, LesNode, Route};
use crate::poly::Context;

/// A degree window `LO..HI` (inclusive).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

impl Window {
    pub fn range(self) -> RangeInclusive<i64> {
        self.lo..=self.hi
    }
}

impl FromStr for Window {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (a, b) = s.split_once("..").ok_or_else(|| format!("window must look like LO..HI, got {s:?}"))?;
        let lo: i64 = a.trim().parse().map_err(|_| format!("bad window start {a:?}"))?;
        let hi: i64 = b.trim().trim_start_matches('=').parse().map_err(|_| format!("bad window end {b:?}"))?;
        if lo > hi {
            return Err(format!("window start {lo} is above its end {hi}"));
        }
        Ok(Window { lo, hi })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    Res,
    Koszul,
    Cech,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Text,
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(Clone, Debug, Parser)]
#[command(name = "gdl", version, about = "Graded local cohomology and duality over Q[x1..xm][u1..un]")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Degree window LO..HI
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub window: Option<Window>,
    /// Cap on the truncation index k for colimit routes
    #[arg(long, global = true)]
    pub kcap: Option<u32>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: FormatArg,
    /// Seed for the random suite
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Minimize resolutions
    #[arg(long, global = true)]
    pub minimize: bool,
    /// Number of fiber variables u1..un for builtins
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Number of base variables x1..xm for builtins
    #[arg(long, global = true)]
    pub m: Option<usize>,
    /// Weight parameter of the nilpotent orbit module (ex41)
    #[arg(long, global = true)]
    pub w: Option<u32>,
    /// Slice index for ex43
    #[arg(long, global = true)]
    pub p: Option<i64>,
    /// Number of variables killed by the koszul builtin
    #[arg(long, global = true)]
    pub k: Option<usize>,
    /// Module of the random suite to use; without it suite-level checks run
    #[arg(long, global = true)]
    pub index: Option<usize>,
    /// Size of the random suite
    #[arg(long, global = true, default_value_t = 50)]
    pub count: usize,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Free resolution with twists per step
    Resolve { input: String },
    /// Local cohomology table
    Localcoh {
        input: String,
        #[arg(long, value_enum, default_value = "all")]
        route: RouteArg,
    },
    /// Slice-wise graded duality
    Duality { input: String },
    /// Four-term exact sequence with the Čech route
    Les { input: String },
    /// Worked examples: ex36, ex41, ex43
    Reproduce { example: String },
}

/// Builtin inputs: `ex36`, `ex41`, `a-mod-i`, `free`, `koszul`, `random`,
/// or a path to a module file.
fn load(input: &str, cfg: &RunConfig) -> Result<GradedPresentation> {
    let ctx = || Context::new(cfg.m.unwrap_or(0), cfg.n.unwrap_or(2));
    match input {
        "ex36" => Ok(GradedPresentation::free(Context::new(0, 2), vec![0])),
        "ex41" => nilpotent_orbit_module(cfg.w.unwrap_or(2)),
        "a-mod-i" => Ok(GradedPresentation::a_mod_i(ctx())),
        "free" => Ok(GradedPresentation::free(ctx(), vec![0])),
        "koszul" => {
            let c = ctx();
            let k = cfg.k.unwrap_or(1);
            if k > c.n {
                return Err(Error::InvalidInput(format!("--k {k} exceeds --n {}", c.n)));
            }
            Ok(GradedPresentation::koszul_quotient(c, &(0..k).collect::<Vec<_>>()))
        }
        "random" => {
            let i = cfg.index.unwrap_or(0);
            random_suite(cfg.seed, cfg.count.max(i + 1)).into_iter().nth(i).ok_or_else(|| Error::InvalidInput("empty suite".into()))
        }
        "ex43" => Err(Error::InvalidInput("ex43 is a module over the base ring only; use `reproduce ex43`".into())),
        path => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("cannot read {path}: {e}")))?;
            parse_module(&text)
        }
    }
}

fn window_or(cfg: &RunConfig, g: &GradedPresentation) -> RangeInclusive<i64> {
    cfg.window.map_or_else(|| default_window(g), Window::range)
}

fn suite_mode(input: &str, cfg: &RunConfig) -> bool {
    input == "random" && cfg.index.is_none()
}

fn resolve(input: &str, cfg: &RunConfig) -> Result<Report> {
    let g = load(input, cfg)?;
    let cert = free_resolution(&g, cfg.minimize);
    let window = window_or(cfg, &g);
    let mut r = Report::new("resolve", &["step", "rank", "twists"])
        .param("input", input)
        .param("minimize", cfg.minimize)
        .param("minimal", cert.complex.is_minimal())
        .param("length", cert.length());
    for (i, tw) in cert.betti().iter().enumerate() {
        r.push(vec![("step", json!(i)), ("rank", json!(tw.len())), ("twists", json!(tw))]);
    }
    if let Err(e) = cert.verify(window) {
        r.fail(e.to_string());
    }
    Ok(r)
}

fn localcoh(input: &str, route: RouteArg, cfg: &RunConfig) -> Result<Report> {
    if suite_mode(input, cfg) {
        return Ok(route_equivalence_suite(cfg.seed, cfg.count, cfg.window.map_or(-10..=6, Window::range)));
    }
    let g = load(input, cfg)?;
    let window = window_or(cfg, &g);
    let routes: Vec<Route> = match route {
        RouteArg::Res => vec![Route::Resolution],
        RouteArg::Koszul => vec![Route::KoszulLimit],
        RouteArg::Cech => vec![Route::Cech],
        RouteArg::All => vec![Route::Resolution, Route::KoszulLimit, Route::Cech],
    };
    let n = g.ctx.n as i64;
    let table = local_cohomology_table(&LcInput::Module(g), &routes, 0..=n, window.clone(), 0..=8, cfg.kcap)?;
    let mut r = Report::new("local-cohomology", &["route", "i", "p", "value", "k"])
        .param("input", input)
        .param("window", format!("{}..{}", window.start(), window.end()))
        .param("window_too_small", !table.vanishes_above_window);
    for e in &table.entries {
        r.push(vec![
            ("route", json!(e.route.name())),
            ("i", json!(e.i)),
            ("p", json!(e.p)),
            ("value", hilbert_value(&e.value)),
            ("k", json!(e.stabilized_at.as_ref().map(|s| s.k))),
        ]);
    }
    for (i, p) in table.disagreements() {
        r.fail(format!("routes disagree at i={i} p={p}"));
    }
    Ok(r)
}

fn duality(input: &str, cfg: &RunConfig) -> Result<Report> {
    if suite_mode(input, cfg) {
        return Ok(duality_suite(cfg.seed, cfg.count));
    }
    let g = load(input, cfg)?;
    let window = window_or(cfg, &g);
    Ok(duality_check(&g, window, -8..=8).param("input", input))
}

fn les(input: &str, cfg: &RunConfig) -> Result<Report> {
    if suite_mode(input, cfg) {
        return Ok(route_equivalence_suite(cfg.seed, cfg.count, cfg.window.map_or(-10..=6, Window::range)));
    }
    let g = load(input, cfg)?;
    let window = window_or(cfg, &g);
    let report = les_check(&g, window.clone(), 0..=8, cfg.kcap)?;
    let mut r = Report::new(
        "les",
        &["p", "k", "torsion", "slice", "sections", "h1", "exact", "alpha_zero", "beta_injective", "beta_surjective", "gamma_zero", "higher"],
    )
    .param("input", input)
    .param("window", format!("{}..{}", window.start(), window.end()));
    for row in &report.rows {
        let node = |n: LesNode| hilbert_value(&row.nodes.iter().find(|x| x.0 == n).unwrap().1);
        let higher: Vec<_> = row.higher.iter().map(|(j, a, b)| json!([j, hilbert_value(a), hilbert_value(b)])).collect();
        r.push(vec![
            ("p", json!(row.p)),
            ("k", json!(row.k)),
            ("torsion", node(LesNode::TorsionH0)),
            ("slice", node(LesNode::Slice)),
            ("sections", node(LesNode::SectionsH0)),
            ("h1", node(LesNode::TorsionH1)),
            ("exact", json!(row.exact)),
            ("alpha_zero", json!(row.regime.alpha_zero)),
            ("beta_injective", json!(row.regime.beta_injective)),
            ("beta_surjective", json!(row.regime.beta_surjective)),
            ("gamma_zero", json!(row.regime.gamma_zero)),
            ("higher", json!(higher)),
        ]);
        if !row.ok() {
            r.fail(format!("p={}: exact={} mismatched nodes {:?}", row.p, row.exact, row.route_mismatches));
        }
    }
    Ok(r)
}

fn reproduce(example: &str, cfg: &RunConfig) -> Result<Report> {
    match example {
        "ex36" => check_projective_line(cfg.window.map_or(-6..=6, Window::range), cfg.kcap),
        "ex41" => check_nilpotent_orbit(cfg.w.unwrap_or(2)),
        "ex43" => check_quadric_cone(cfg.n.unwrap_or(5), cfg.p.unwrap_or(0)),
        other => Err(Error::InvalidInput(format!("unknown example {other:?}; expected ex36, ex41 or ex43"))),
    }
}

/// Runs one command. Returns the rendered output (or an error message) and
/// the exit code: 0 pass, 1 failed verdict, 2 bad input, 3 stabilization
/// cap, 4 internal error.
pub fn run(cfg: &RunConfig) -> (String, i32) {
    let result = match &cfg.command {
        Command::Resolve { input } => resolve(input, cfg),
        Command::Localcoh { input, route } => localcoh(input, *route, cfg),
        Command::Duality { input } => duality(input, cfg),
        Command::Les { input } => les(input, cfg),
        Command::Reproduce { example } => reproduce(example, cfg),
    };
    match result {
        Ok(mut r) => {
            r.seed = Some(cfg.seed);
            let code = if r.verdict.passed() { 0 } else { 1 };
            (r.render(cfg.format.into()), code)
        }
        Err(e) => (format!("error: {e}\n"), e.exit_code()),
    }
}

/// Sizes the global thread pool from `GDL_THREADS` when set.
pub fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var("GDL_THREADS") {
        let n: usize = v.parse().map_err(|_| Error::InvalidInput(format!("GDL_THREADS must be a positive integer, got {v:?}")))?;
        rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global().map_err(|e| Error::Internal(e.to_string()))?;
    }
    Ok(())
}
