//! The `spanners` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use spanner_core::congest::{message_audit, simulate, SimOptions};
use spanner_core::graph::{generate, Model};
use spanner_core::mult::{
    build_spanner, build_spanner_guaranteed, edge_budget, preset, ExpClusterParams, Preset,
    RetryOptions,
};
use spanner_core::nearadd::{self, NearAdditiveResult, Variant};
use spanner_core::verify::{
    approx_distances, check_multiplicative, check_near_additive, run_trials, BuilderSpec, CheckMode,
    Sssp, StretchReport,
};
use spanner_core::weighted::{build_weighted_spanner, WeightedParams};
use spanner_core::Graph;

use crate::error::{ToolError, ToolResult};
use crate::io::{
    format_distance_csv, format_emulator, format_graph, format_subgraph, format_trace,
    read_edge_list, write_text,
};
use crate::report::{Format, Report};
use crate::source::load;

#[derive(Debug, Parser)]
#[command(name = "spanners", version, about = "Build and check graph spanners and emulators")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a generated graph.
    Gen(GenArgs),
    /// Build a spanner or emulator of a graph.
    Build(BuildArgs),
    /// Check a spanner or emulator against its graph.
    Verify(VerifyArgs),
    /// Run the message-passing simulation of the unweighted construction.
    Simulate(SimulateArgs),
    /// Repeat a construction and report size statistics.
    Bench(BenchArgs),
    /// Approximate distances from a few sources through an emulator.
    Distances(DistancesArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelName {
    Er,
    Grid,
    Path,
    Cycle,
    Complete,
    Star,
    Rw,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub model: ModelName,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub p: Option<f64>,
    /// Grid width.
    #[arg(long)]
    pub w: Option<usize>,
    /// Grid height.
    #[arg(long)]
    pub h: Option<usize>,
    #[arg(long, default_value_t = 100.0)]
    pub wmax: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Mult,
    Weighted,
    NearaddBasic,
    NearaddImproved,
    Emulator,
    /// Near-additive with `--variant`.
    Nearadd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantName {
    Basic,
    Improved,
    Emulator,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PresetName {
    /// c = k, delta = 1/k.
    LinearTime,
    /// c = 3/eps, delta = 2/eps.
    DistributedEps,
    /// c = k, delta = 2/eps, k = ceil(2 ln n) unless given.
    UltraSparse,
    /// Near-additive rho = 1/log kappa.
    RhoLogKappa,
}

#[derive(Debug, Clone, Args)]
pub struct AlgoArgs {
    #[arg(long, value_enum, default_value = "mult")]
    pub algo: Algo,
    #[arg(long, value_enum)]
    pub variant: Option<VariantName>,
    /// Stretch parameter of the multiplicative constructions (default 3).
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long, default_value_t = 4.0)]
    pub c: f64,
    /// Retry until the edge budget with this slack is met.
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long, value_enum)]
    pub preset: Option<PresetName>,
    #[arg(long, default_value_t = 4)]
    pub kappa: u32,
    /// Defaults to 0.25 for weighted and 0.5 otherwise.
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long)]
    pub rho: Option<f64>,
    #[arg(long)]
    pub max_attempts: Option<usize>,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    /// Graph file or generator spec (er:n:p, grid:w:h, path:n, complete:n, ...).
    #[arg(long)]
    pub graph: String,
    /// Seed for generator specs.
    #[arg(long, default_value_t = 0)]
    pub graph_seed: u64,
    #[command(flatten)]
    pub algo: AlgoArgs,
    #[arg(long)]
    pub seed: u64,
    /// Output file; printed to stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    pub report: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeName {
    Edges,
    Pairs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub graph: String,
    /// Seed for generator specs.
    #[arg(long, default_value_t = 0)]
    pub graph_seed: u64,
    /// Spanner or emulator file; `--input` is an alias.
    #[arg(long, alias = "input")]
    pub spanner: PathBuf,
    /// Multiplicative stretch to check.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Near-additive slack; `--beta` defaults to the file's beta_bound.
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long)]
    pub beta: Option<f64>,
    /// Also require distances not to shrink.
    #[arg(long)]
    pub emulator: bool,
    #[arg(long, value_enum, default_value = "pairs")]
    pub mode: ModeName,
    #[arg(long, value_enum, default_value = "text")]
    pub report: Format,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long)]
    pub graph: String,
    /// Seed for generator specs.
    #[arg(long, default_value_t = 0)]
    pub graph_seed: u64,
    #[arg(long, default_value_t = 3)]
    pub k: u32,
    #[arg(long, default_value_t = 4.0)]
    pub c: f64,
    #[arg(long)]
    pub seed: u64,
    /// Write every message as `round u→v origin r dist`.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    pub report: Format,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long)]
    pub graph: String,
    /// Seed for generator specs.
    #[arg(long, default_value_t = 0)]
    pub graph_seed: u64,
    #[command(flatten)]
    pub algo: AlgoArgs,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    /// Check the stretch guarantee of every trial.
    #[arg(long)]
    pub check: bool,
    #[arg(long, value_enum, default_value = "text")]
    pub report: Format,
}

#[derive(Debug, Args)]
pub struct DistancesArgs {
    #[arg(long)]
    pub graph: String,
    /// Seed for generator specs.
    #[arg(long, default_value_t = 0)]
    pub graph_seed: u64,
    /// Comma-separated source vertices.
    #[arg(long, value_delimiter = ',')]
    pub sources: Vec<usize>,
    /// Evenly spaced sources when `--sources` is absent.
    #[arg(long, default_value_t = 10)]
    pub num_sources: usize,
    #[arg(long, default_value_t = 4)]
    pub kappa: u32,
    #[arg(long, default_value_t = 0.25)]
    pub eps: f64,
    #[arg(long, default_value_t = 0.5)]
    pub rho: f64,
    #[arg(long)]
    pub seed: u64,
    /// Use emulator weights as they are.
    #[arg(long)]
    pub no_round: bool,
    /// CSV table; printed to stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    pub report: Format,
}

/// Runs the command line with real stdout and stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.exit_code() == 2 {
                let _ = writeln!(err, "run with --help for usage");
            }
            e.exit_code()
        }
    }
}

fn execute(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> ToolResult<i32> {
    match cmd {
        Command::Gen(a) => gen(a, out),
        Command::Build(a) => build(a, out, err),
        Command::Verify(a) => verify(a, out),
        Command::Simulate(a) => simulate_cmd(a, out),
        Command::Bench(a) => bench(a, out),
        Command::Distances(a) => distances(a, out),
    }
}

fn emit(out: &mut dyn Write, text: &str) -> ToolResult<()> {
    out.write_all(text.as_bytes())
        .map_err(|e| ToolError::io("<stdout>", e))
}

fn need<T>(v: Option<T>, flag: &str, model: &str) -> ToolResult<T> {
    v.ok_or_else(|| ToolError::Usage(format!("--{flag} is required for model {model}")))
}

fn gen(a: GenArgs, out: &mut dyn Write) -> ToolResult<i32> {
    let model = match a.model {
        ModelName::Er => Model::ErdosRenyi {
            n: need(a.n, "n", "er")?,
            p: need(a.p, "p", "er")?,
        },
        ModelName::Grid => Model::Grid {
            w: need(a.w, "w", "grid")?,
            h: need(a.h, "h", "grid")?,
        },
        ModelName::Path => Model::Path { n: need(a.n, "n", "path")? },
        ModelName::Cycle => Model::Cycle { n: need(a.n, "n", "cycle")? },
        ModelName::Complete => Model::Complete { n: need(a.n, "n", "complete")? },
        ModelName::Star => Model::Star { leaves: need(a.n, "n", "star")? },
        ModelName::Rw => Model::RandomWeighted {
            n: need(a.n, "n", "rw")?,
            p: need(a.p, "p", "rw")?,
            wmax: a.wmax,
        },
    };
    let g = generate(model, a.seed).map_err(|e| ToolError::Usage(e.to_string()))?;
    let comments = vec![format!("model {model:?}"), format!("seed {}", a.seed)];
    let text = format_graph(&g, &comments);
    match a.out {
        Some(p) => write_text(&p, &text)?,
        None => emit(out, &text)?,
    }
    Ok(0)
}

/// Output of one construction: file body, summary and the checkable graph.
pub struct Built {
    pub text: String,
    pub report: Report,
    pub graph: Graph,
    pub is_emulator: bool,
}

fn resolve_variant(a: &AlgoArgs) -> ToolResult<Option<Variant>> {
    let from_flag = a.variant.map(|v| match v {
        VariantName::Basic => Variant::Basic,
        VariantName::Improved => Variant::Improved,
        VariantName::Emulator => Variant::Emulator,
    });
    let fixed = match a.algo {
        Algo::NearaddBasic => Some(Variant::Basic),
        Algo::NearaddImproved => Some(Variant::Improved),
        Algo::Emulator => Some(Variant::Emulator),
        Algo::Nearadd => {
            return from_flag
                .map(Some)
                .ok_or_else(|| ToolError::Usage("--algo nearadd needs --variant".into()))
        }
        _ => None,
    };
    if let (Some(f), Some(v)) = (fixed, from_flag) {
        if f != v {
            return Err(ToolError::Usage(format!(
                "--variant {} contradicts --algo",
                v.name()
            )));
        }
    }
    Ok(fixed)
}

fn ultra_sparse_k(n: usize) -> u32 {
    (2.0 * (n.max(2) as f64).ln()).ceil() as u32
}

/// `(k, c, delta)` after applying a preset.
fn mult_params(a: &AlgoArgs, n: usize) -> ToolResult<(u32, f64, Option<f64>)> {
    let eps = a.eps.unwrap_or(0.5);
    match a.preset {
        None => Ok((a.k.unwrap_or(3), a.c, a.delta)),
        Some(PresetName::RhoLogKappa) => Err(ToolError::Usage(
            "preset rho-log-kappa applies to near-additive algorithms".into(),
        )),
        Some(p) => {
            let k = match p {
                PresetName::UltraSparse => a.k.unwrap_or_else(|| ultra_sparse_k(n)),
                _ => a.k.unwrap_or(3),
            };
            let which = match p {
                PresetName::LinearTime => Preset::LinearTime,
                PresetName::DistributedEps => Preset::DistributedEps(eps),
                _ => Preset::UltraSparse(eps),
            };
            let (c, delta) = preset(which, n, k)?;
            Ok((k, c, Some(delta)))
        }
    }
}

fn nearadd_rho(a: &AlgoArgs) -> ToolResult<f64> {
    match a.preset {
        Some(PresetName::RhoLogKappa) => {
            if a.rho.is_some() {
                return Err(ToolError::Usage("--rho contradicts preset rho-log-kappa".into()));
            }
            Ok(1.0 / (a.kappa as f64).log2())
        }
        Some(_) => Err(ToolError::Usage(
            "only preset rho-log-kappa applies to near-additive algorithms".into(),
        )),
        None => Ok(a.rho.unwrap_or(0.5)),
    }
}

fn nearadd_comments(r: &NearAdditiveResult) -> Vec<String> {
    let s = &r.schedule;
    let mut c = vec![
        format!("algo {}", s.variant.name()),
        format!("kappa {}", s.kappa),
        format!("eps {}", s.eps_user),
        format!("eps_internal {}", s.eps),
        format!("rho {}", s.rho),
        format!("seed {}", r.seed),
        format!("attempts {}", r.attempts),
        format!("i0 {}", s.i0),
        format!("i1 {}", s.i1),
        format!("ell {}", s.ell),
        format!("beta_bound {}", s.beta_bound()),
        format!("cap_overflow {}", r.cap_overflow),
        "phase deg delta clusters unclustered added".to_string(),
    ];
    for p in &r.phases {
        c.push(format!(
            "phase {} {} {} {} {} {}",
            p.index,
            p.deg,
            p.delta,
            r.partitions[p.index].clusters.len(),
            p.unclustered,
            p.edges_added
        ));
    }
    c
}

pub fn build_one(g: &Graph, a: &AlgoArgs, seed: u64) -> ToolResult<Built> {
    let mut report = Report::new();
    let header = |algo: &str| vec![format!("algo {algo}"), format!("n {}", g.n()), format!("m_input {}", g.m())];
    if let Some(variant) = resolve_variant(a)? {
        let eps = a.eps.unwrap_or(0.5);
        let rho = nearadd_rho(a)?;
        let r = nearadd::build(g, a.kappa, eps, rho, variant, seed)?;
        let mut comments = vec![format!("n {}", g.n()), format!("m_input {}", g.m())];
        comments.extend(nearadd_comments(&r));
        let text = match &r.emulator {
            Some(e) => format_emulator(e, &comments),
            None => format_subgraph(g, &r.edges, &comments),
        };
        report
            .put("algo", variant.name())
            .put("n", g.n())
            .put("m_input", g.m())
            .put("edges", r.size())
            .put("kappa", a.kappa)
            .put("eps", eps)
            .put("rho", rho)
            .put("ell", r.schedule.ell)
            .put("beta_bound", r.schedule.beta_bound())
            .put("attempts", r.attempts)
            .put("cap_overflow", r.cap_overflow)
            .put("seed", seed);
        return Ok(Built {
            text,
            report,
            graph: r.to_graph(g),
            is_emulator: variant == Variant::Emulator,
        });
    }
    match a.algo {
        Algo::Mult => {
            if g.is_weighted() {
                return Err(ToolError::Usage("--algo mult needs an unweighted graph; use --algo weighted".into()));
            }
            let (k, c, delta) = mult_params(a, g.n())?;
            let r = match delta {
                Some(d) => build_spanner_guaranteed(
                    g,
                    k,
                    c,
                    d,
                    seed,
                    RetryOptions {
                        max_attempts: a.max_attempts,
                    },
                )?,
                None => build_spanner(g, &ExpClusterParams::new(g.n(), k, c, seed)?)?,
            };
            let mut comments = header("mult");
            comments.extend([
                format!("k {k}"),
                format!("c {c}"),
                format!("delta {}", delta.map_or("none".to_string(), |d| d.to_string())),
                format!("seed {seed}"),
                format!("attempts {}", r.attempts),
                format!("radii_ok {}", r.radii_ok),
                format!("stretch_bound {}", 2 * k - 1),
            ]);
            if let Some(p) = a.preset {
                comments.push(format!("preset {p:?}"));
            }
            report
                .put("algo", "mult")
                .put("n", g.n())
                .put("m_input", g.m())
                .put("edges", r.edge_count())
                .put("k", k)
                .put("c", c)
                .put("radii_ok", r.radii_ok)
                .put("attempts", r.attempts)
                .put("seed", seed);
            if let Some(d) = delta {
                report.put("delta", d).put("edge_budget", edge_budget(g.n(), k, c, d));
            }
            Ok(Built {
                text: format_subgraph(g, &r.edges, &comments),
                report,
                graph: r.to_graph(g),
                is_emulator: false,
            })
        }
        Algo::Weighted => {
            if a.preset.is_some() || a.delta.is_some() {
                return Err(ToolError::Usage("--preset and --delta apply to --algo mult".into()));
            }
            let k = a.k.unwrap_or(3);
            let eps = a.eps.unwrap_or(0.25);
            let mut params = WeightedParams::new(k, eps, seed);
            params.c = a.c;
            if let Some(m) = a.max_attempts {
                params.max_level_attempts = m;
            }
            let w = build_weighted_spanner(g, &params)?;
            let d = &w.decomposition;
            let mut comments = header("weighted");
            comments.extend([
                format!("k {k}"),
                format!("eps {eps}"),
                format!("c {}", a.c),
                format!("c_w {}", d.c_w),
                format!("lambda {}", d.lambda),
                format!("ell {}", d.ell),
                format!("seed {seed}"),
                format!("attempts {}", w.result.attempts),
                format!("stretch_bound {}", w.stretch_bound()),
            ]);
            report
                .put("algo", "weighted")
                .put("n", g.n())
                .put("m_input", g.m())
                .put("edges", w.result.edge_count())
                .put("k", k)
                .put("eps", eps)
                .put("c_w", d.c_w)
                .put("lambda", d.lambda)
                .put("ell", d.ell)
                .put("stretch_bound", w.stretch_bound())
                .put("attempts", w.result.attempts)
                .put("seed", seed);
            Ok(Built {
                text: format_subgraph(g, &w.result.edges, &comments),
                report,
                graph: w.result.to_graph(g),
                is_emulator: false,
            })
        }
        _ => unreachable!("near-additive handled above"),
    }
}

fn build(a: BuildArgs, out: &mut dyn Write, err: &mut dyn Write) -> ToolResult<i32> {
    let input = load(&a.graph, a.graph_seed)?;
    let built = build_one(&input.graph, &a.algo, a.seed)?;
    let rendered = built.report.render(a.report);
    match &a.out {
        Some(p) => {
            write_text(p, &built.text)?;
            emit(out, &rendered)?;
        }
        None => {
            emit(out, &built.text)?;
            err.write_all(rendered.as_bytes())
                .map_err(|e| ToolError::io("<stderr>", e))?;
        }
    }
    Ok(0)
}

fn stretch_report(r: &StretchReport, rep: &mut Report) {
    rep.put("pairs_checked", r.pairs_checked)
        .put("max_stretch", r.max_stretch)
        .put(
            "worst_pair",
            r.worst_pair.map_or("none".into(), |(u, v)| format!("{u}-{v}")),
        )
        .put("violations", r.violation_count)
        .put("passed", r.passed());
    for v in &r.violations {
        rep.note(format!(
            "violation {} {} d_g={} d_h={} bound={}",
            v.u, v.v, v.d_g, v.d_h, v.bound
        ));
    }
}

fn verify(a: VerifyArgs, out: &mut dyn Write) -> ToolResult<i32> {
    let g = load(&a.graph, a.graph_seed)?.graph;
    let h_file = read_edge_list(&a.spanner)?;
    let h = &h_file.graph;
    let meta_f64 = |key: &str| h_file.meta(key).and_then(|v| v.parse::<f64>().ok());
    let is_emulator = a.emulator || h_file.meta("algo") == Some("emulator");
    let mut rep = Report::new();
    let result = if let Some(alpha) = a.alpha {
        let mode = match a.mode {
            ModeName::Edges => CheckMode::EdgesOnly,
            ModeName::Pairs => CheckMode::AllPairs,
        };
        rep.put("check", "multiplicative").put("alpha", alpha);
        check_multiplicative(&g, h, alpha, mode)?
    } else if let Some(eps) = a.eps.or_else(|| meta_f64("eps").filter(|_| meta_f64("beta_bound").is_some())) {
        let beta = a
            .beta
            .or_else(|| meta_f64("beta_bound"))
            .ok_or_else(|| ToolError::Usage("--beta is required (no beta_bound in file)".into()))?;
        rep.put("check", "near-additive").put("eps", eps).put("beta", beta);
        check_near_additive(&g, None, h, eps, beta, is_emulator)?
    } else if let Some(alpha) = meta_f64("stretch_bound") {
        rep.put("check", "multiplicative").put("alpha", alpha);
        check_multiplicative(&g, h, alpha, CheckMode::AllPairs)?
    } else {
        return Err(ToolError::Usage("give --alpha, or --eps with --beta".into()));
    };
    stretch_report(&result, &mut rep);
    emit(out, &rep.render(a.report))?;
    Ok(if result.passed() { 0 } else { 1 })
}

fn simulate_cmd(a: SimulateArgs, out: &mut dyn Write) -> ToolResult<i32> {
    let g = load(&a.graph, a.graph_seed)?.graph;
    let params = ExpClusterParams::new(g.n(), a.k, a.c, a.seed)?;
    let opts = SimOptions {
        log_messages: true,
        record_bests: false,
    };
    let t = simulate(&g, &params, opts)?;
    let mut rep = Report::new();
    rep.put("n", g.n())
        .put("m", g.m())
        .put("k", a.k)
        .put("rounds", t.rounds_executed)
        .put("total_messages", t.total_messages)
        .put("max_messages_per_edge_round", t.max_messages_per_edge_round)
        .put("edges", t.spanner_edges.len())
        .put("radii_ok", t.radii_ok)
        .put("peak_retained", t.peak_retained)
        .put("retention_limit", t.retention_limit)
        .put("seed", a.seed);
    let code = match message_audit(&t) {
        Ok(audit) => {
            rep.put("audit", "ok")
                .put("id_bits", audit.id_bits)
                .put("real_words", audit.real_words);
            0
        }
        Err(f) => {
            rep.put("audit", format!("{f:?}"));
            1
        }
    };
    if let Some(p) = &a.trace {
        write_text(p, &format_trace(&t).unwrap_or_default())?;
    }
    if let Some(p) = &a.out {
        let comments = vec![
            "algo mult".to_string(),
            format!("k {}", a.k),
            format!("c {}", a.c),
            format!("seed {}", a.seed),
            format!("radii_ok {}", t.radii_ok),
            format!("stretch_bound {}", 2 * a.k - 1),
            "source simulate".to_string(),
        ];
        write_text(p, &format_subgraph(&g, &t.spanner_edges, &comments))?;
    }
    emit(out, &rep.render(a.report))?;
    Ok(code)
}

fn bench_spec(a: &AlgoArgs, n: usize) -> ToolResult<BuilderSpec> {
    if let Some(variant) = resolve_variant(a)? {
        return Ok(BuilderSpec::NearAdditive {
            kappa: a.kappa,
            eps: a.eps.unwrap_or(0.5),
            rho: nearadd_rho(a)?,
            variant,
        });
    }
    Ok(match a.algo {
        Algo::Mult => match mult_params(a, n)? {
            (k, c, Some(delta)) => BuilderSpec::MultGuaranteed { k, c, delta },
            (k, c, None) => BuilderSpec::Mult { k, c },
        },
        _ => BuilderSpec::Weighted {
            k: a.k.unwrap_or(3),
            eps: a.eps.unwrap_or(0.25),
        },
    })
}

fn bench(a: BenchArgs, out: &mut dyn Write) -> ToolResult<i32> {
    let g = load(&a.graph, a.graph_seed)?.graph;
    let spec = bench_spec(&a.algo, g.n())?;
    let start = Instant::now();
    let stats = run_trials(&g, &spec, a.trials, a.seed, a.check);
    let elapsed = start.elapsed();
    let mut rep = Report::new();
    rep.put("trials", stats.trials)
        .put("n", g.n())
        .put("m", g.m())
        .put("mean_edges", stats.mean_edges())
        .put("variance_edges", stats.variance_edges())
        .put("p50_edges", stats.quantile_edges(0.5).map_or("none".into(), |x| x.to_string()))
        .put("p95_edges", stats.quantile_edges(0.95).map_or("none".into(), |x| x.to_string()))
        .put("radii_ok_rate", stats.radii_ok_rate())
        .put("errors", stats.errors.len());
    if a.check {
        rep.put("stretch_pass_rate", stats.stretch_pass_rate());
    }
    if let BuilderSpec::Mult { k, c } = spec {
        let bound = (c * g.n() as f64).powf(1.0 / k as f64) * g.n() as f64;
        rep.put("size_bound", bound).put("mean_over_bound", stats.mean_edges() / bound);
    }
    for (t, e) in stats.errors.iter().take(5) {
        rep.note(format!("trial {t}: {e}"));
    }
    rep.note(format!("elapsed {:.3}s", elapsed.as_secs_f64()));
    emit(out, &rep.render(a.report))?;
    let failed = a.check && stats.stretch_pass_rate() < 1.0;
    Ok(if failed { 1 } else { 0 })
}

fn distances(a: DistancesArgs, out: &mut dyn Write) -> ToolResult<i32> {
    let g = load(&a.graph, a.graph_seed)?.graph;
    let sources: Vec<usize> = if a.sources.is_empty() {
        let k = a.num_sources.min(g.n()).max(1);
        (0..k).map(|i| i * g.n() / k).collect()
    } else {
        a.sources.clone()
    };
    let approx = approx_distances(&g, &sources, a.kappa, a.eps, a.rho, a.seed, !a.no_round)?;
    let mut rows = Vec::new();
    let mut sssp = Sssp::new(g.n());
    for (i, &s) in approx.sources.iter().enumerate() {
        let exact = sssp.run(&g, s);
        for v in 0..g.n() {
            rows.push((s, v, approx.table[i][v], exact[v]));
        }
    }
    let violations = approx.certificate_violations(&g);
    let worst = rows
        .iter()
        .filter(|r| r.3 > 0.0 && r.3.is_finite())
        .map(|r| r.2 / r.3)
        .fold(1.0, f64::max);
    let csv = format_distance_csv(&rows);
    let mut rep = Report::new();
    rep.put("sources", sources.len())
        .put("entries", rows.len())
        .put("beta", approx.beta)
        .put("eps", a.eps)
        .put("rounded", approx.rounded)
        .put("emulator_edges", approx.emulator_edges)
        .put("distinct_weights", approx.distinct_weights)
        .put("max_ratio", worst)
        .put("certificate_violations", violations.len());
    match &a.out {
        Some(p) => {
            write_text(p, &csv)?;
            emit(out, &rep.render(a.report))?;
        }
        None => emit(out, &csv)?,
    }
    Ok(if violations.is_empty() { 0 } else { 1 })
}
