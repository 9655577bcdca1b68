//! Command-line front end: gadget generation, exact coloring, covering
//! numbers, label cover handling, reductions, decoders, and the result
//! cache.
//!
//! Machine-readable output lines are prefixed with `RESULT `; nothing else
//! on stdout starts with that prefix. Exit codes: 0 on success, 1 on a
//! domain error, 2 on a usage error. All randomness flows from `--seed`;
//! when the flag is absent a seed is drawn and printed so every run can be
//! reproduced.

mod cache;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::RngCore;

use rainbow_core::caps::Caps;
use rainbow_core::chromatic::{chromatic_number, find_coloring, ChromaticResult};
use rainbow_core::covering::{covering_number_exhaustive, two_color_cover, CoveringNumber};
use rainbow_core::gadgets::{
    gen_perm_gadget, gen_rainbow_gadget, PermGadgetParams, RainbowGadgetParams,
};
use rainbow_core::hypergraph::{
    is_proper_coloring, is_rainbow_coloring, max_independent_set_size, monochromatic_edges,
};
use rainbow_core::io;
use rainbow_core::labelcover::{planted_instance, satisfied_fraction, LayerSpec};
use rainbow_core::reductions::{
    decode_almost_rainbow, decode_two_color, uniformity_lift, uniformity_target_params,
    ReductionKind,
};
use rainbow_core::Error;

use cache::{cache_key, Cache};

#[derive(Parser)]
#[command(name = "rainbow", version, about = "Rainbow hypergraph toolkit")]
struct Cli {
    /// Seed for randomized commands; drawn and printed when absent.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for parallel enumeration.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Override the explicit-materialization edge cap.
    #[arg(long, global = true)]
    max_edges: Option<u128>,
    /// Stdout format: plain RESULT lines or additional JSON records.
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Text)]
    format: OutFormat,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Text,
    Records,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a gadget hypergraph.
    Gadget {
        #[command(subcommand)]
        family: GadgetCmd,
    },
    /// Exact chromatic number of a hypergraph file.
    Chromatic {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        cmax: usize,
        /// Print a witness coloring when one exists.
        #[arg(long)]
        witness: bool,
    },
    /// Exact maximum independent set size.
    Alpha {
        #[arg(long)]
        input: PathBuf,
    },
    /// Covering numbers of colored subset systems.
    Cover {
        #[command(subcommand)]
        op: CoverCmd,
    },
    /// Label cover instances.
    Lc {
        #[command(subcommand)]
        op: LcCmd,
    },
    /// Run a reduction on a label cover file.
    Reduce {
        #[command(subcommand)]
        mode: ReduceCmd,
    },
    /// Check a coloring against a hypergraph.
    ColorCheck {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        coloring: PathBuf,
        /// Palette size for a rainbow check.
        #[arg(long)]
        q: Option<usize>,
        /// Minimum distinct colors per edge for the rainbow check.
        #[arg(long)]
        p: Option<usize>,
    },
    /// Decode a coloring of a reduced instance.
    Decode {
        #[command(subcommand)]
        mode: DecodeCmd,
    },
    /// Raise uniformity by adding fresh vertices.
    Lift {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        reps: usize,
        #[arg(long)]
        output: PathBuf,
    },
    /// Parameters for reaching a target uniformity.
    Params {
        #[arg(long)]
        k: usize,
    },
    /// Result cache maintenance.
    Cache {
        #[command(subcommand)]
        op: CacheCmd,
    },
}

#[derive(Subcommand)]
enum GadgetCmd {
    /// Permutation-repair family: d-uniform over [d]^n, deficiency <= r.
    H {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        count_only: bool,
    },
    /// Rainbow-column family: p-uniform over [p]^n, <= t noisy columns.
    Kh {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        count_only: bool,
    },
}

#[derive(Subcommand)]
enum CoverCmd {
    /// Exhaustive covering number over all subset colorings.
    Exhaustive {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        c: usize,
    },
    /// Constructive two-color cover of a subset coloring file.
    Greedy2 {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Subcommand)]
enum LcCmd {
    /// Generate a planted instance.
    Gen {
        #[arg(long)]
        layers: usize,
        #[arg(long)]
        vars: usize,
        #[arg(long)]
        range: usize,
        #[arg(long, default_value_t = 1.0)]
        density: f64,
        #[arg(long)]
        output: PathBuf,
        #[arg(long)]
        assignment_out: Option<PathBuf>,
    },
    /// Check instance invariants.
    Validate {
        #[arg(long)]
        input: PathBuf,
    },
    /// Exact satisfied fraction of an assignment.
    Score {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        assignment: PathBuf,
        /// Restrict to one layer pair (1-based).
        #[arg(long)]
        i: Option<usize>,
        #[arg(long)]
        j: Option<usize>,
    },
}

#[derive(Args)]
struct ReduceArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: PathBuf,
    /// Output content: a rebuildable manifest or the explicit hypergraph.
    #[arg(long, value_enum, default_value_t = Emit::Manifest)]
    emit: Emit,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Emit {
    Manifest,
    Hypergraph,
}

#[derive(Subcommand)]
enum ReduceCmd {
    /// 4-uniform, rainbow 3 versus 2 colors.
    Fig1 {
        #[command(flatten)]
        common: ReduceArgs,
    },
    /// td-uniform, rainbow (q, q-d) versus c colors.
    Fig2 {
        #[command(flatten)]
        common: ReduceArgs,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        c: usize,
    },
    /// (td+⌊d/2⌋)-uniform, rainbow q versus 2 colors.
    Fig3 {
        #[command(flatten)]
        common: ReduceArgs,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        d: usize,
    },
}

#[derive(Args)]
struct DecodeArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long)]
    coloring: PathBuf,
    /// Write the full line-delimited report here.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Subcommand)]
enum DecodeCmd {
    /// Decoder for almost-rainbow instances.
    Fig2 {
        #[command(flatten)]
        common: DecodeArgs,
    },
    /// Decoder for two-color instances (accepts fig1 and fig3 manifests).
    Fig3 {
        #[command(flatten)]
        common: DecodeArgs,
    },
}

#[derive(Subcommand)]
enum CacheCmd {
    /// Number of cached entries.
    Stats,
    /// Remove all cached entries.
    Clear,
    /// Print the configured cache directory.
    Dir,
}

/// Collected command output: RESULT lines first, free-form text after.
#[derive(Default)]
struct Out {
    results: Vec<(String, String)>,
    extra: Vec<String>,
}

impl Out {
    fn result(&mut self, key: &str, value: impl std::fmt::Display) {
        self.results.push((key.to_string(), value.to_string()));
    }

    fn extra(&mut self, text: impl Into<String>) {
        self.extra.push(text.into());
    }

    fn print(&self, format: OutFormat) {
        for (k, v) in &self.results {
            println!("RESULT {k} {v}");
        }
        if format == OutFormat::Records {
            for (k, v) in &self.results {
                let rec = serde_json::json!({"result": {"key": k, "value": v}});
                println!("{rec}");
            }
        }
        for line in &self.extra {
            print!("{line}");
            if !line.ends_with('\n') {
                println!();
            }
        }
    }
}

fn read(path: &PathBuf) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(Error::Io)
}

fn write_file(path: &PathBuf, text: &str) -> Result<(), Error> {
    std::fs::write(path, text).map_err(Error::Io)
}

fn resolve_seed(cli_seed: Option<u64>) -> u64 {
    cli_seed.unwrap_or_else(|| rand::rngs::OsRng.next_u64())
}

fn main() {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let mut caps = Caps::default();
    if let Some(m) = cli.max_edges {
        caps.materialize_edges = m;
    }
    let mut out = Out::default();
    match run(&cli, &caps, &mut out) {
        Ok(()) => {
            out.print(cli.format);
        }
        Err(e) => {
            out.print(cli.format);
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    }
}

fn run(cli: &Cli, caps: &Caps, out: &mut Out) -> Result<(), Error> {
    match &cli.cmd {
        Cmd::Gadget { family } => gadget(family, caps, out),
        Cmd::Chromatic { input, cmax, witness } => chromatic(input, *cmax, *witness, caps, out),
        Cmd::Alpha { input } => alpha(input, caps, out),
        Cmd::Cover { op } => cover(op, caps, out),
        Cmd::Lc { op } => lc(op, cli.seed, out),
        Cmd::Reduce { mode } => reduce(mode, caps, out),
        Cmd::ColorCheck { input, coloring, q, p } => {
            color_check(input, coloring, *q, *p, caps, out)
        }
        Cmd::Decode { mode } => decode(mode, cli.seed, caps, out),
        Cmd::Lift { input, reps, output } => lift(input, *reps, output, caps, out),
        Cmd::Params { k } => {
            let p = uniformity_target_params(*k)?;
            out.result(
                "params",
                format!("{} {} {} {} {} {}", p.t, p.d, p.u, p.q, p.gap, p.gap_bound),
            );
            Ok(())
        }
        Cmd::Cache { op } => cache_cmd(op, out),
    }
}

fn gadget(cmd: &GadgetCmd, caps: &Caps, out: &mut Out) -> Result<(), Error> {
    let (h, output, count_only) = match cmd {
        GadgetCmd::H { d, n, r, output, count_only } => {
            let params = PermGadgetParams::new(*d, *n, *r)?;
            if let Some(w) = params.degenerate_warning() {
                eprintln!("warning: {w}");
            }
            (gen_perm_gadget(&params, caps)?, output, *count_only)
        }
        GadgetCmd::Kh { p, n, t, output, count_only } => {
            let params = RainbowGadgetParams::new(*p, *n, *t)?;
            (gen_rainbow_gadget(&params, caps)?, output, *count_only)
        }
    };
    out.result("vertices", h.num_vertices());
    out.result("edges", h.num_edges()?);
    if !count_only {
        let text = io::write_hypergraph(&h)?;
        match output {
            Some(path) => write_file(path, &text)?,
            None => out.extra(text),
        }
    }
    Ok(())
}

fn chromatic(
    input: &PathBuf,
    cmax: usize,
    witness: bool,
    caps: &Caps,
    out: &mut Out,
) -> Result<(), Error> {
    let h = io::parse_hypergraph(&read(input)?)?;
    let canonical = io::write_hypergraph(&h)?;
    let key = cache_key("chromatic", &[&canonical, &cmax.to_string()]);
    let cache = Cache::from_env();
    let cached = cache.as_ref().and_then(|c| c.lookup(&key));
    let value = match cached {
        Some(v) => v,
        None => {
            let r = chromatic_number(&h, cmax, caps)?;
            let v = match r {
                ChromaticResult::Value(x) => serde_json::json!({ "chromatic": x }),
                ChromaticResult::ExceedsMax(m) => {
                    serde_json::json!({ "chromatic": null, "cmax": m })
                }
            };
            if let Some(c) = &cache {
                c.store(&key, "chromatic", v.clone());
            }
            v
        }
    };
    match value.get("chromatic").and_then(|x| x.as_u64()) {
        Some(x) => out.result("chromatic", x),
        None => out.result("chromatic", format!("exceeds {cmax}")),
    }
    if witness {
        if let Some(x) = value.get("chromatic").and_then(|x| x.as_u64()) {
            let r = find_coloring(&h, x as usize, caps)?;
            if let Some(w) = r.witness {
                out.extra(io::write_coloring(&w));
            }
        }
    }
    Ok(())
}

fn alpha(input: &PathBuf, caps: &Caps, out: &mut Out) -> Result<(), Error> {
    let h = io::parse_hypergraph(&read(input)?)?;
    let canonical = io::write_hypergraph(&h)?;
    let key = cache_key("alpha", &[&canonical]);
    let cache = Cache::from_env();
    let cached = cache.as_ref().and_then(|c| c.lookup(&key));
    let value = match cached {
        Some(v) => v,
        None => {
            let a = max_independent_set_size(&h, caps)?;
            let v = serde_json::json!({ "alpha": a });
            if let Some(c) = &cache {
                c.store(&key, "alpha", v.clone());
            }
            v
        }
    };
    let a = value.get("alpha").and_then(|x| x.as_u64()).unwrap_or(0);
    out.result("alpha", a);
    Ok(())
}

fn cover(cmd: &CoverCmd, caps: &Caps, out: &mut Out) -> Result<(), Error> {
    match cmd {
        CoverCmd::Exhaustive { q, d, c } => {
            let key = cache_key(
                "cover-exhaustive",
                &[&q.to_string(), &d.to_string(), &c.to_string()],
            );
            let cache = Cache::from_env();
            let cached = cache.as_ref().and_then(|x| x.lookup(&key));
            let value = match cached {
                Some(v) => v,
                None => {
                    let b = covering_number_exhaustive(*q, *d, *c, caps)?;
                    let v = match b {
                        CoveringNumber::Finite(t) => serde_json::json!({ "B": t }),
                        CoveringNumber::NoFiniteBound => serde_json::json!({ "B": null }),
                    };
                    if let Some(x) = &cache {
                        x.store(&key, "cover-exhaustive", v.clone());
                    }
                    v
                }
            };
            match value.get("B").and_then(|x| x.as_u64()) {
                Some(t) => out.result("B", t),
                None => out.result("B", "none"),
            }
        }
        CoverCmd::Greedy2 { q, d, input } => {
            let f = io::parse_subset_coloring(&read(input)?)?;
            if f.q() != *q || f.d() != *d {
                return Err(Error::InvalidParams(format!(
                    "file describes ({}, {}), flags say ({q}, {d})",
                    f.q(),
                    f.d()
                )));
            }
            let cover = two_color_cover(&f)?;
            out.result("cover", format!("{} {}", cover.len(), cover.color + 1));
            for s in &cover.sets {
                let elems: Vec<String> = s.iter().map(|&e| (e + 1).to_string()).collect();
                out.extra(format!("set {}\n", elems.join(" ")));
            }
        }
    }
    Ok(())
}

fn lc(cmd: &LcCmd, seed: Option<u64>, out: &mut Out) -> Result<(), Error> {
    match cmd {
        LcCmd::Gen { layers, vars, range, density, output, assignment_out } => {
            let seed = resolve_seed(seed);
            let specs = vec![LayerSpec { num_vars: *vars, range: *range }; *layers];
            let (inst, planted) = planted_instance(&specs, *density, seed)?;
            write_file(output, &io::write_labelcover(&inst))?;
            if let Some(path) = assignment_out {
                write_file(path, &io::write_assignment(&planted))?;
            }
            out.result("seed", seed);
            out.result("constraints", inst.constraints.len());
        }
        LcCmd::Validate { input } => {
            let inst = match io::parse_labelcover(&read(input)?) {
                Ok(inst) => inst,
                Err(e) => {
                    // surface structural violations as a count, parse
                    // errors as errors
                    return Err(e);
                }
            };
            let violations = inst.validate();
            out.result("violations", violations.len());
            for v in violations {
                out.extra(format!("violation: {v}\n"));
            }
        }
        LcCmd::Score { input, assignment, i, j } => {
            let inst = io::parse_labelcover(&read(input)?)?;
            let a = io::parse_assignment(&read(assignment)?)?;
            let pairs = match (i, j) {
                (Some(i), Some(j)) => {
                    if *i == 0 || *j == 0 {
                        return Err(Error::InvalidParams("layer pairs are 1-based".into()));
                    }
                    vec![(*i - 1, *j - 1)]
                }
                (None, None) => inst.constrained_pairs(),
                _ => return Err(Error::InvalidParams("pass both --i and --j or neither".into())),
            };
            for (pi, pj) in pairs {
                let f = satisfied_fraction(&inst, &a, pi, pj)?;
                out.result(
                    "fraction",
                    format!("{} {} {}/{}", pi + 1, pj + 1, f.numer(), f.denom()),
                );
            }
        }
    }
    Ok(())
}

fn reduce(cmd: &ReduceCmd, caps: &Caps, out: &mut Out) -> Result<(), Error> {
    let (common, kind, t, d, c) = match cmd {
        ReduceCmd::Fig1 { common } => (common, ReductionKind::Rainbow432, 1, 3, 2),
        ReduceCmd::Fig2 { common, t, d, c } => (common, ReductionKind::AlmostRainbow, *t, *d, *c),
        ReduceCmd::Fig3 { common, t, d } => (common, ReductionKind::TwoColor, *t, *d, 2),
    };
    let lc = io::parse_labelcover(&read(&common.input)?)?;
    let m = io::Manifest { kind, t, d, c, label_cover: lc };
    let red = io::build_from_manifest(&m, caps)?;
    for w in &red.warnings {
        eprintln!("warning: {w}");
    }
    out.result("mode", kind.token());
    out.result("uniformity", red.params().uniformity);
    out.result("palette", red.params().q);
    out.result("vertices", red.hypergraph.num_vertices());
    if red.hypergraph.is_implicit() {
        let space = red.hypergraph.candidate_space().expect("implicit");
        out.result("representation", "implicit");
        out.result("candidates", space.candidate_count());
    } else {
        out.result("representation", "explicit");
        out.result("edges", red.hypergraph.num_edges()?);
    }
    let text = match common.emit {
        Emit::Manifest => io::write_manifest(&io::manifest_for(&red)),
        Emit::Hypergraph => io::write_hypergraph(&red.hypergraph)?,
    };
    write_file(&common.output, &text)?;
    Ok(())
}

fn color_check(
    input: &PathBuf,
    coloring: &PathBuf,
    q: Option<usize>,
    p: Option<usize>,
    caps: &Caps,
    out: &mut Out,
) -> Result<(), Error> {
    let h = io::parse_hypergraph(&read(input)?)?;
    let chi = io::parse_coloring(&read(coloring)?)?;
    out.result("proper", is_proper_coloring(&h, &chi, caps)?);
    out.result("monochromatic", monochromatic_edges(&h, &chi, caps)?.len());
    if let (Some(q), Some(p)) = (q, p) {
        out.result("rainbow", is_rainbow_coloring(&h, &chi, q, p, caps)?);
    }
    Ok(())
}

fn decode(cmd: &DecodeCmd, seed: Option<u64>, caps: &Caps, out: &mut Out) -> Result<(), Error> {
    let (common, want_almost) = match cmd {
        DecodeCmd::Fig2 { common } => (common, true),
        DecodeCmd::Fig3 { common } => (common, false),
    };
    let manifest = io::parse_manifest(&read(&common.instance)?)?;
    match (want_almost, manifest.kind) {
        (true, ReductionKind::AlmostRainbow) => {}
        (false, ReductionKind::Rainbow432 | ReductionKind::TwoColor) => {}
        _ => {
            return Err(Error::InvalidParams(format!(
                "manifest mode {} does not match the decoder",
                manifest.kind.token()
            )));
        }
    }
    let red = io::build_from_manifest(&manifest, caps)?;
    let chi = io::parse_coloring(&read(&common.coloring)?)?;
    let seed = resolve_seed(seed);
    let report = if want_almost {
        decode_almost_rainbow(&red, &chi, seed, caps)?
    } else {
        decode_two_color(&red, &chi, seed, caps)?
    };
    out.result("seed", seed);
    out.result("decode-failures", report.summary.decode_failures);
    for f in &report.summary.satisfied {
        out.result("satisfied", format!("{} {} {}/{}", f.i, f.j, f.numer, f.denom));
    }
    if let Some(path) = &common.report {
        write_file(path, &report.to_jsonl())?;
    }
    Ok(())
}

fn lift(
    input: &PathBuf,
    reps: usize,
    output: &PathBuf,
    caps: &Caps,
    out: &mut Out,
) -> Result<(), Error> {
    let h = io::parse_hypergraph(&read(input)?)?;
    let lifted = uniformity_lift(&h, reps, caps)?;
    out.result(
        "lift",
        format!("{} {} {}", lifted.num_vertices(), lifted.num_edges()?, lifted.uniformity()),
    );
    write_file(output, &io::write_hypergraph(&lifted)?)?;
    Ok(())
}

fn cache_cmd(cmd: &CacheCmd, out: &mut Out) -> Result<(), Error> {
    let cache = Cache::from_env();
    match cmd {
        CacheCmd::Stats => match &cache {
            Some(c) => out.result("cache-entries", c.len()),
            None => out.result("cache-entries", "disabled"),
        },
        CacheCmd::Clear => match &cache {
            Some(c) => {
                c.clear()?;
                out.result("cache-cleared", true);
            }
            None => out.result("cache-cleared", "disabled"),
        },
        CacheCmd::Dir => match &cache {
            Some(c) => out.result("cache-dir", c.dir().display()),
            None => out.result("cache-dir", "disabled"),
        },
    }
    Ok(())
}
