//! Command line front end. Every subcommand maps onto one library
//! operation. All randomness flows from `--seed`, nothing reads the
//! clock, and a rerun with the same configuration produces
//! byte-identical output. Exit codes: 0 success, 1 verification
//! failure, 2 usage error or resource abort.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use tpcone::cone::{self, io as cone_io, ConeV, Int};
use tpcone::network::PluckerTable;
use tpcone::pluecker::RatioVector;
use tpcone::primitive::{
    all_primitives, basis, outer_sets, primitive_cone, rank_report, relation_chains,
};
use tpcone::raylab::{
    self, parse_ratio, search, verify_ray, wsep, BoundedReport, CheckOutcome, ExtremalReport,
    MemberReport, RayReport, SubFreeReport, VerifyResources,
};
use tpcone::tropical::{build_f, FSystem, TropicalProfile};

/// Cap for symbolic polynomial products started from the command
/// line; ratios whose expansion exceeds it fall back to sampled
/// weights. Raise with --term-cap to push the symbolic tier further.
const CLI_TERM_CAP: usize = 500_000;

#[derive(Parser)]
#[command(
    name = "tpcone",
    version,
    about = "Exact cones of bounded ratios of minors of totally positive matrices"
)]
struct Cli {
    /// Cap on worker threads; results never depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    /// Test against the full inequality system (built on the fly).
    Exact,
    /// Probe seeded random weight directions; necessary, not sufficient.
    Sampled,
}

#[derive(Args)]
struct VerifyOpts {
    /// Boundedness tier.
    #[arg(long, value_enum, default_value = "sampled")]
    mode: Mode,
    /// Random weight directions in sampled mode.
    #[arg(long, default_value_t = 10_000)]
    k: usize,
    /// Box half-width for sampled directions.
    #[arg(long, default_value_t = 20)]
    halfwidth: i64,
    /// Random positive weight vectors for the sampled ratio tier.
    #[arg(long, default_value_t = 1_000)]
    weight_samples: usize,
    #[arg(long, default_value_t = 1234)]
    seed: u64,
    /// Term cap for symbolic products.
    #[arg(long, default_value_t = CLI_TERM_CAP)]
    term_cap: usize,
    /// Abort the exact system build after this many seconds.
    #[arg(long)]
    budget_seconds: Option<u64>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct RatioArg {
    /// Ratio in bracket notation, e.g. "[1 2 5 6][3 4 7 8] / ...".
    #[arg(long)]
    ratio: Option<String>,
    /// File holding one ratio; # comments and line breaks allowed.
    #[arg(long)]
    ratio_file: Option<PathBuf>,
    /// One of the bundled order-4 rays, 1-based.
    #[arg(long)]
    ray: Option<usize>,
}

impl RatioArg {
    fn resolve(&self, n: u8) -> Result<RatioVector> {
        if let Some(text) = &self.ratio {
            return Ok(parse_ratio(n, text)?);
        }
        if let Some(path) = &self.ratio_file {
            let raw = fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            let text: String = raw
                .lines()
                .filter(|l| !l.trim_start().starts_with('#'))
                .collect::<Vec<_>>()
                .join(" ");
            return Ok(parse_ratio(n, &text)?);
        }
        if let Some(k) = self.ray {
            if n != 4 {
                bail!("bundled rays are order 4, got --n {n}");
            }
            bundled_ray(k)
        } else {
            unreachable!("argument group guarantees one source")
        }
    }
}

fn bundled_ray(k: usize) -> Result<RatioVector> {
    let rays = raylab::bundled_rays()?;
    if k == 0 || k > rays.len() {
        bail!("--ray must be between 1 and {}", rays.len());
    }
    Ok(rays[k - 1].clone())
}

#[derive(Subcommand)]
enum Cmd {
    /// List the primitive ratios of order n.
    Primitives {
        #[arg(long)]
        n: u8,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the exact three-pair relation chains among primitives.
    Relations {
        #[arg(long)]
        n: u8,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rank of the primitive span and the free coordinates.
    Rank {
        #[arg(long)]
        n: u8,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// A linearly independent spanning set of primitive vectors.
    Basis {
        #[arg(long)]
        n: u8,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Facets of the primitive hull together with their outer sets.
    Facets {
        #[arg(long)]
        n: u8,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the full inequality system from the weight fan.
    BuildF {
        #[arg(long)]
        n: u8,
        /// Abort after this many seconds.
        #[arg(long)]
        budget_seconds: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the verification pipeline on one ratio.
    Check {
        #[arg(long)]
        n: u8,
        #[command(flatten)]
        ratio: RatioArg,
        #[command(flatten)]
        opts: VerifyOpts,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the verification pipeline on all nine bundled rays.
    VerifyRays {
        #[command(flatten)]
        opts: VerifyOpts,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the full system against the primitive hull facets and
    /// repair any missing facet to a new extreme ray.
    Search {
        #[arg(long)]
        n: u8,
        /// 1 = single scan, 2 = iterated growth.
        #[arg(long, default_value_t = 1)]
        method: u8,
        /// Extension rounds for method 2.
        #[arg(long, default_value_t = 1)]
        rounds: usize,
        #[arg(long, default_value_t = 1234)]
        seed: u64,
        /// Objective redraws per missing facet.
        #[arg(long, default_value_t = 20)]
        attempts: usize,
        #[arg(long)]
        budget_seconds: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Weak-separation graph of a ratio, optionally compared to a
    /// second one up to label-respecting isomorphism.
    Wsgraph {
        #[arg(long, default_value_t = 4)]
        n: u8,
        #[command(flatten)]
        ratio: RatioArg,
        /// Compare against this bundled ray (1-based).
        #[arg(long)]
        compare_ray: Option<usize>,
        /// Compare against this ratio text.
        #[arg(long, conflicts_with = "compare_ray")]
        compare_ratio: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .is_err()
        {
            eprintln!("error: thread pool already initialized");
            return ExitCode::from(2);
        }
    }
    match run(cli.cmd) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Cmd) -> Result<bool> {
    match cmd {
        Cmd::Primitives { n, out } => cmd_primitives(n, &out),
        Cmd::Relations { n, out } => cmd_relations(n, &out),
        Cmd::Rank { n, out } => cmd_rank(n, &out),
        Cmd::Basis { n, out } => cmd_basis(n, &out),
        Cmd::Facets { n, out } => cmd_facets(n, &out),
        Cmd::BuildF {
            n,
            budget_seconds,
            out,
        } => cmd_build_f(n, budget_seconds, &out),
        Cmd::Check { n, ratio, opts, out } => cmd_check(n, &ratio, &opts, &out),
        Cmd::VerifyRays { opts, out } => cmd_verify_rays(&opts, &out),
        Cmd::Search {
            n,
            method,
            rounds,
            seed,
            attempts,
            budget_seconds,
            out,
        } => cmd_search(n, method, rounds, seed, attempts, budget_seconds, &out),
        Cmd::Wsgraph {
            n,
            ratio,
            compare_ray,
            compare_ratio,
            out,
        } => cmd_wsgraph(n, &ratio, compare_ray, compare_ratio.as_deref(), &out),
    }
}

fn require_n(n: u8, lo: u8, hi: u8) -> Result<()> {
    if !(lo..=hi).contains(&n) {
        bail!("--n must be between {lo} and {hi} for this command, got {n}");
    }
    Ok(())
}

/// All stdout goes through here; a closed pipe ends the run quietly.
fn say(text: &str) -> Result<()> {
    use std::io::{self, Write};
    match io::stdout().write_all(text.as_bytes()) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => std::process::exit(0),
        Err(e) => Err(e.into()),
    }
}

/// Writes `content` under `out` when a directory is given, otherwise
/// to stdout. File contents are identical across reruns.
fn emit(out: &Option<PathBuf>, name: &str, content: &str) -> Result<()> {
    match out {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            let path = dir.join(name);
            fs::write(&path, content).with_context(|| format!("writing {}", path.display()))?;
            say(&format!("wrote {}\n", path.display()))?;
        }
        None => say(content)?,
    }
    Ok(())
}

fn join_i64(v: &[i64]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn join_int(v: &[Int]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_primitives(n: u8, out: &Option<PathBuf>) -> Result<bool> {
    require_n(n, 2, 5)?;
    let prims = all_primitives(n);
    let mut s = String::new();
    for (i, p) in prims.iter().enumerate() {
        writeln!(s, "{i}: {p} -> {}", p.vector().ratio_text())?;
    }
    writeln!(s, "count={}", prims.len())?;
    emit(out, &format!("primitives_n{n}.txt"), &s)?;
    Ok(true)
}

fn cmd_relations(n: u8, out: &Option<PathBuf>) -> Result<bool> {
    require_n(n, 2, 5)?;
    let prims = all_primitives(n);
    let chains = relation_chains(n, &prims)?;
    let mut s = String::new();
    for chain in &chains {
        let [a1, b1, a2, b2, a3, b3] = chain.ids();
        writeln!(
            s,
            "({}) - ({}) = ({}) - ({}) = ({}) - ({})",
            prims[a1], prims[b1], prims[a2], prims[b2], prims[a3], prims[b3]
        )?;
    }
    writeln!(s, "count={}", chains.len())?;
    emit(out, &format!("relations_n{n}.txt"), &s)?;
    Ok(true)
}

fn cmd_rank(n: u8, out: &Option<PathBuf>) -> Result<bool> {
    require_n(n, 2, 5)?;
    let report = rank_report(n, &all_primitives(n));
    let free: Vec<String> = report.free_columns.iter().map(|c| c.compact()).collect();
    let s = format!("rank={} free=[{}]\n", report.rank, free.join(" "));
    emit(out, &format!("rank_n{n}.txt"), &s)?;
    Ok(true)
}

fn cmd_basis(n: u8, out: &Option<PathBuf>) -> Result<bool> {
    require_n(n, 2, 5)?;
    let b = basis(n);
    let mut s = String::new();
    for (i, p) in b.iter().enumerate() {
        writeln!(s, "{i}: {p}")?;
    }
    writeln!(s, "count={}", b.len())?;
    emit(out, &format!("basis_n{n}.txt"), &s)?;
    Ok(true)
}

fn cmd_facets(n: u8, out: &Option<PathBuf>) -> Result<bool> {
    require_n(n, 3, 4)?;
    let prims = all_primitives(n);
    let hull = primitive_cone(n, &prims)?;
    let h = cone::dd_facets(&hull);
    let outer = outer_sets(&h, &prims);
    let mut s = String::new();
    for (i, (row, o)) in h.ineqs().iter().zip(&outer).enumerate() {
        let ids: Vec<String> = o.iter().map(|k| k.to_string()).collect();
        writeln!(s, "facet {i}: outer={{{}}} row=[{}]", ids.join(" "), join_int(row))?;
    }
    for (i, row) in h.eqs().iter().enumerate() {
        writeln!(s, "equality {i}: [{}]", join_int(row))?;
    }
    writeln!(s, "facets={} equalities={}", h.ineqs().len(), h.eqs().len())?;
    emit(out, &format!("facets_n{n}.txt"), &s)?;
    Ok(true)
}

fn cmd_build_f(n: u8, budget: Option<u64>, out: &Option<PathBuf>) -> Result<bool> {
    require_n(n, 3, 4)?;
    let f = build_f(n, budget)?;
    say(&format!(
        "dim={} ineqs={} eqs={}\n",
        f.cone().dim(),
        f.cone().ineqs().len(),
        f.cone().eqs().len()
    ))?;
    let mut cone_bytes = Vec::new();
    cone_io::write_h(f.cone(), &mut cone_bytes)?;
    let cone_text = String::from_utf8(cone_bytes).expect("ascii cone file");
    // Sidecar: the weight direction that generated each kept row.
    let mut sources = String::new();
    for (i, lam) in f.sources().iter().enumerate() {
        writeln!(sources, "{i}: {}", join_i64(lam.lambda()))?;
    }
    emit(out, &format!("f{n}.cone"), &cone_text)?;
    emit(out, &format!("f{n}.sources"), &sources)?;
    Ok(true)
}

fn check_text(c: &CheckOutcome) -> String {
    match c {
        CheckOutcome::Pass => "pass".into(),
        CheckOutcome::Fail(why) => format!("fail ({why})"),
    }
}

fn report_text(r: &RayReport) -> String {
    let bounded = match &r.bounded {
        BoundedReport::Exact { bounded: true, .. } => "bounded (exact)".to_string(),
        BoundedReport::Exact {
            bounded: false,
            witness_direction,
        } => {
            let d = witness_direction.as_deref().unwrap_or(&[]);
            format!("violated (exact), direction=[{}]", join_i64(d))
        }
        BoundedReport::SampledNoViolation { checked } => {
            format!("no-counterexample (sampled), checked={checked}")
        }
        BoundedReport::SampledViolation { direction } => {
            format!("violated (sampled), direction=[{}]", join_i64(direction))
        }
        BoundedReport::BalanceFailed { element } => {
            format!("balance-failed at element {element}")
        }
    };
    let member = match &r.primitive_member {
        MemberReport::Inside { .. } => "inside".to_string(),
        MemberReport::Separated { .. } => "separated".to_string(),
    };
    let extremal = match &r.extremal {
        ExtremalReport::Yes => "yes".to_string(),
        ExtremalReport::No => "no".to_string(),
        ExtremalReport::Unknown { reason } => format!("unknown ({reason})"),
    };
    let subfree = match &r.subtraction_free {
        SubFreeReport::Symbolic {
            certified: true,
            difference_terms,
            ..
        } => format!("certified (symbolic), difference-terms={difference_terms}"),
        SubFreeReport::Symbolic {
            certified: false,
            negative_term,
            ..
        } => format!(
            "not-certified (symbolic), negative-term={}",
            negative_term.as_deref().unwrap_or("?")
        ),
        SubFreeReport::SampledWeights {
            samples,
            violation: None,
        } => format!("no-counterexample (weights), samples={samples}"),
        SubFreeReport::SampledWeights {
            violation: Some(w), ..
        } => format!(
            "violated (weights), weights=[{}]",
            w.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        ),
        SubFreeReport::Skipped { reason } => format!("skipped ({reason})"),
    };
    format!(
        "ratio: {}\nst0: {}\ndegree-balance: {}\nbounded: {}\nprimitive-member: {}\nextremal: {}\nsubtraction-free: {}\n",
        r.ratio,
        check_text(&r.st0),
        check_text(&r.degree_balance),
        bounded,
        member,
        extremal,
        subfree
    )
}

/// A report passes when nothing contradicts boundedness by one.
fn report_passes(r: &RayReport) -> bool {
    matches!(r.st0, CheckOutcome::Pass)
        && matches!(r.degree_balance, CheckOutcome::Pass)
        && matches!(
            r.bounded,
            BoundedReport::Exact { bounded: true, .. } | BoundedReport::SampledNoViolation { .. }
        )
        && match &r.subtraction_free {
            SubFreeReport::Symbolic { certified, .. } => *certified,
            SubFreeReport::SampledWeights { violation, .. } => violation.is_none(),
            SubFreeReport::Skipped { .. } => false,
        }
}

struct Resources {
    table: PluckerTable,
    profile: TropicalProfile,
    hull: ConeV,
    exact: Option<FSystem>,
}

impl Resources {
    fn build(n: u8, mode: Mode, budget: Option<u64>) -> Result<Self> {
        require_n(n, 3, 4)?;
        let table = PluckerTable::new(n)?;
        let profile = TropicalProfile::new(&table);
        let hull = primitive_cone(n, &all_primitives(n))?;
        let exact = match mode {
            Mode::Exact => Some(build_f(n, budget)?),
            Mode::Sampled => None,
        };
        Ok(Self {
            table,
            profile,
            hull,
            exact,
        })
    }

    fn verify(&self, v: &RatioVector, opts: &VerifyOpts) -> Result<RayReport> {
        Ok(verify_ray(
            v,
            &VerifyResources {
                exact: self.exact.as_ref(),
                profile: &self.profile,
                table: &self.table,
                primitives: &self.hull,
                samples: opts.k,
                halfwidth: opts.halfwidth,
                weight_samples: opts.weight_samples,
                seed: opts.seed,
                term_cap: opts.term_cap,
            },
        )?)
    }
}

fn cmd_check(
    n: u8,
    ratio: &RatioArg,
    opts: &VerifyOpts,
    out: &Option<PathBuf>,
) -> Result<bool> {
    let v = ratio.resolve(n)?;
    let res = Resources::build(n, opts.mode, opts.budget_seconds)?;
    let report = res.verify(&v, opts)?;
    say(&report_text(&report))?;
    if out.is_some() {
        emit(out, "report.json", &(report.to_json() + "\n"))?;
    }
    Ok(report_passes(&report))
}

fn cmd_verify_rays(opts: &VerifyOpts, out: &Option<PathBuf>) -> Result<bool> {
    let res = Resources::build(4, opts.mode, opts.budget_seconds)?;
    let rays = raylab::bundled_rays()?;
    let mut all_pass = true;
    for (i, v) in rays.iter().enumerate() {
        let report = res.verify(v, opts)?;
        let ok = report_passes(&report);
        all_pass &= ok;
        say(&format!("ray {}: {}\n", i + 1, if ok { "pass" } else { "FAIL" }))?;
        say(&indent(&report_text(&report)))?;
        if out.is_some() {
            emit(out, &format!("ray{}.json", i + 1), &(report.to_json() + "\n"))?;
        }
    }
    say(&format!("verified {} rays\n", rays.len()))?;
    Ok(all_pass)
}

fn indent(text: &str) -> String {
    text.lines()
        .map(|l| format!("  {l}\n"))
        .collect::<Vec<_>>()
        .join("")
}

fn cmd_search(
    n: u8,
    method: u8,
    rounds: usize,
    seed: u64,
    attempts: usize,
    budget: Option<u64>,
    out: &Option<PathBuf>,
) -> Result<bool> {
    require_n(n, 3, 4)?;
    let f = build_f(n, budget)?;
    let hull = primitive_cone(n, &all_primitives(n))?;
    let mut s = String::new();
    match method {
        1 => {
            let facets = cone::dd_facets(&hull);
            let outcome = search::search_method_1(f.cone(), &facets, seed, attempts)?;
            writeln!(s, "missing facets: {}", outcome.missing_facets.len())?;
            for find in &outcome.finds {
                writeln!(
                    s,
                    "facet {}: extremal={} ray=[{}]",
                    find.facet,
                    find.extremal,
                    join_int(&find.ray)
                )?;
            }
            if outcome.missing_facets.is_empty() {
                writeln!(
                    s,
                    "every candidate facet is implied; no ray escapes the primitive hull at order {n}"
                )?;
            }
        }
        2 => {
            let grow = search::search_method_2(f.cone(), &hull, rounds, seed, attempts)?;
            writeln!(
                s,
                "rounds={} converged={} rays-added={}",
                grow.rounds_run,
                grow.converged,
                grow.rays_added.len()
            )?;
            for ray in &grow.rays_added {
                writeln!(s, "ray=[{}]", join_int(ray))?;
            }
        }
        other => bail!("--method must be 1 or 2, got {other}"),
    }
    emit(out, &format!("search_n{n}.txt"), &s)?;
    Ok(true)
}

fn cmd_wsgraph(
    n: u8,
    ratio: &RatioArg,
    compare_ray: Option<usize>,
    compare_ratio: Option<&str>,
    out: &Option<PathBuf>,
) -> Result<bool> {
    require_n(n, 2, 5)?;
    let v = ratio.resolve(n)?;
    let g = wsep::ws_graph(&v);
    let mut s = String::new();
    for (i, vert) in g.vertices().iter().enumerate() {
        writeln!(
            s,
            "vertex {i}: {} {}",
            vert.index,
            if vert.numerator { "numerator" } else { "denominator" }
        )?;
    }
    let edges: Vec<String> = g.edges().iter().map(|(a, b)| format!("({a},{b})")).collect();
    writeln!(s, "edges: {}", edges.join(" "))?;
    writeln!(s, "vertices={} edges={}", g.vertices().len(), g.edges().len())?;

    let mut ok = true;
    let other = match (compare_ray, compare_ratio) {
        (Some(k), None) => Some(bundled_ray(k)?),
        (None, Some(t)) => Some(parse_ratio(n, t)?),
        (None, None) => None,
        (Some(_), Some(_)) => unreachable!("clap rejects conflicting flags"),
    };
    if let Some(w) = other {
        let h = wsep::ws_graph(&w);
        let iso = wsep::ws_isomorphic(&g, &h);
        writeln!(
            s,
            "compare: vertices={} edges={} isomorphic={}",
            h.vertices().len(),
            h.edges().len(),
            iso
        )?;
        ok = iso;
    }
    emit(out, "wsgraph.txt", &s)?;
    Ok(ok)
}
