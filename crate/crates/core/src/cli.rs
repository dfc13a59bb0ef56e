//! The `hecke-farey` command line.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bcz::{bcz_step, TrianglePoint};
use crate::config::RunConfig;
use crate::context::{HeckeContext, PlaneVec};
use crate::error::{Error, Result};
use crate::field::AlgNum;
use crate::io::svg::{ford_svg, point_cloud_svg};
use crate::io::{Cell, Format, Table};
use crate::nextterm::{for_each_in_sweep, NextTermState};
use crate::stats::counting::{count_in_triangle, orbit_in_square, square_equidistribution, TriangleRegion};
use crate::stats::dist::{empirical_dist, limiting_dist, parse_grid, sup_distance, Statistic};
use crate::stats::ford::ford_circles;
use crate::stats::mc::init_threads;
use crate::stats::mean_roof::{mean_roof_montecarlo, mean_roof_quadrature, MeanRoof};
use crate::sternbrocot::{dirichlet_descent, enumerate_strip, is_good_approximation, ExtSlope, StripSpec};

pub const THREADS_ENV: &str = "HECKE_FAREY_THREADS";

#[derive(Debug, Parser)]
#[command(name = "hecke-farey", version, about = "Farey sequences, BCZ maps and gap statistics for Hecke triangle groups")]
pub struct Cli {
    /// TOML file with defaults (q, tau, interval, seed, format, tol, samples, threads).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output format: csv, json or svg.
    #[arg(long, global = true)]
    pub format: Option<String>,
    /// Write to this file instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Worker threads (default: HECKE_FAREY_THREADS, then all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Vectors with 0 < x <= tau and slope in the interval, in slope order.
    Enumerate(Common),
    /// Iterates the BCZ map from (a, b).
    Orbit {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, short = 'n', default_value_t = 10)]
        steps: usize,
    },
    /// Quick internal consistency checks.
    Selftest {
        #[arg(long)]
        q: Option<usize>,
    },
    #[command(subcommand)]
    Stats(StatsCommand),
}

/// Options shared by most commands. Numbers are exact: integers, `p/q`,
/// decimals, `lambda`, or coordinate tuples `c0,c1,.../den` in the basis
/// `1, lambda, lambda^2, ...`. Interval ends are separated by `;` when
/// they are tuples and by `,` otherwise.
#[derive(Debug, Args, Clone, Default)]
pub struct Common {
    #[arg(long)]
    pub q: Option<usize>,
    #[arg(long)]
    pub tau: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub interval: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum StatsCommand {
    /// Mean of the roof function over the Farey triangle.
    MeanRoof {
        #[arg(long)]
        q: Option<usize>,
        #[arg(long, value_enum, default_value_t = MeanMethod::Quadrature)]
        method: MeanMethod,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, value_parser = parse_count)]
        samples: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Tail distribution of tau^2 times the slope gap.
    SlopeGap(DistArgs),
    /// Tail distribution of tau^2 times the Ford centre distance.
    CentDist(DistArgs),
    /// Count of orbit vectors in tau times a triangle with a vertex at 0.
    CountTriangle {
        #[command(flatten)]
        common: Common,
        /// First edge vector `x,y` (use `;` between tuple coordinates).
        #[arg(long, allow_hyphen_values = true)]
        e1: String,
        #[arg(long, allow_hyphen_values = true)]
        e2: String,
        /// Inclusion of sides [0,e1], [0,e2], [e1,e2] as three 0/1 digits.
        #[arg(long, default_value = "111")]
        sides: String,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Cell counts of Lambda_q / tau in the square [-1, 1]^2.
    SquareEqui {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 10)]
        grid_n: usize,
        /// Also write the point cloud as SVG.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Ford circles of the sweep.
    FordSvg {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1000.0)]
        width: f64,
    },
    /// Approximations |alpha - y/x| <= 1/(2x^2) from the tree descent.
    Dirichlet {
        #[arg(long)]
        q: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MeanMethod {
    Quadrature,
    Montecarlo,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DistKind {
    Limiting,
    Empirical,
    Both,
}

#[derive(Debug, Args, Clone)]
pub struct DistArgs {
    #[command(flatten)]
    pub common: Common,
    /// `start:step:stop` or a comma list.
    #[arg(long, default_value = "0:0.25:6")]
    pub grid: String,
    #[arg(long, value_parser = parse_count)]
    pub samples: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = DistKind::Limiting)]
    pub kind: DistKind,
}

/// Accepts `1000000` and `1e6`.
fn parse_count(s: &str) -> std::result::Result<u64, String> {
    if let Ok(v) = s.parse::<u64>() {
        return Ok(v);
    }
    match s.parse::<f64>() {
        Ok(v) if v >= 0.0 && v.fract() == 0.0 && v < 1.8e19 => Ok(v as u64),
        _ => Err(format!("not a sample count: {s}")),
    }
}

/// Settings after merging flags, config file and defaults.
struct Resolved {
    cfg: RunConfig,
    format: Option<Format>,
}

impl Resolved {
    fn q(&self, flag: Option<usize>) -> Result<usize> {
        flag.or(self.cfg.q).ok_or_else(|| Error::InvalidArgument("--q is required".into()))
    }

    fn ctx(&self, flag: Option<usize>) -> Result<HeckeContext> {
        HeckeContext::new(self.q(flag)?)
    }

    fn tau(&self, ctx: &HeckeContext, flag: &Option<String>) -> Result<AlgNum> {
        let s = flag.clone().or(self.cfg.tau.clone()).ok_or_else(|| Error::InvalidArgument("--tau is required".into()))?;
        let tau = parse_num(ctx, &s)?;
        if ctx.sign(&tau) <= 0 {
            return Err(Error::InvalidArgument(format!("tau must be positive, got {s}")));
        }
        Ok(tau)
    }

    fn interval(&self, ctx: &HeckeContext, flag: &Option<String>) -> Result<(AlgNum, AlgNum)> {
        match flag.clone().or(self.cfg.interval.clone()) {
            Some(s) => parse_interval(ctx, &s),
            None => Ok((ctx.zero(), ctx.one())),
        }
    }

    fn seed(&self, flag: Option<u64>) -> Result<u64> {
        flag.or(self.cfg.seed)
            .ok_or_else(|| Error::InvalidArgument("--seed is required for Monte Carlo estimates".into()))
    }

    fn tol(&self, flag: Option<f64>) -> Result<f64> {
        let t = flag.or(self.cfg.tol).unwrap_or(1e-8);
        if !(t > 0.0) {
            return Err(Error::InvalidArgument("tol must be positive".into()));
        }
        Ok(t)
    }

    fn samples(&self, flag: Option<u64>) -> u64 {
        flag.or(self.cfg.samples).unwrap_or(1_000_000)
    }

    fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }
}

/// Exact number: `lambda`, an integer, `p/q`, a decimal or a tuple.
pub fn parse_num(ctx: &HeckeContext, s: &str) -> Result<AlgNum> {
    let t = s.trim();
    match t {
        "lambda" | "phi" if t == "lambda" || ctx.q() == 5 => return Ok(ctx.lambda().clone()),
        "-lambda" => return Ok(-ctx.lambda()),
        _ => {}
    }
    if !t.contains(',') {
        if let Ok(r) = crate::field::parse_rational(t) {
            return Ok(ctx.rational(&r));
        }
    }
    AlgNum::parse(ctx.degree(), t)
}

/// `lo,hi` or `lo;hi`.
pub fn parse_interval(ctx: &HeckeContext, s: &str) -> Result<(AlgNum, AlgNum)> {
    let sep = if s.contains(';') { ';' } else { ',' };
    let (lo, hi) = s.split_once(sep).ok_or_else(|| Error::Parse { what: "interval", input: s.into() })?;
    let lo = parse_num(ctx, lo)?;
    let hi = parse_num(ctx, hi)?;
    if ctx.cmp(&lo, &hi).is_ge() {
        return Err(Error::InvalidArgument(format!("interval must have lo < hi, got {s}")));
    }
    Ok((lo, hi))
}

fn parse_vec(ctx: &HeckeContext, s: &str) -> Result<PlaneVec> {
    let (x, y) = parse_interval_raw(s)?;
    Ok(PlaneVec::new(parse_num(ctx, x)?, parse_num(ctx, y)?))
}

fn parse_interval_raw(s: &str) -> Result<(&str, &str)> {
    let sep = if s.contains(';') { ';' } else { ',' };
    s.split_once(sep).ok_or_else(|| Error::Parse { what: "pair", input: s.into() })
}

/// Entry point used by `main`; returns the process exit code.
pub fn run(cli: Cli) -> Result<i32> {
    let cfg = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    let threads = cli
        .threads
        .or(cfg.threads)
        .or_else(|| std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse().ok()));
    init_threads(threads);
    let format = match cli.format.as_deref().or(cfg.format.as_deref()) {
        Some(f) => Some(f.parse::<Format>()?),
        None => None,
    };
    let env = Resolved { cfg, format };
    let mut out = Output::new(cli.output.as_deref())?;
    let code = match &cli.command {
        Command::Enumerate(c) => {
            let t = cmd_enumerate(&env, c)?;
            out.table(&t, env.format_or(Format::Csv))?;
            0
        }
        Command::Orbit { common, a, b, steps } => {
            let t = cmd_orbit(&env, common, a, b, *steps)?;
            out.table(&t, env.format_or(Format::Csv))?;
            0
        }
        Command::Selftest { q } => {
            let t = cmd_selftest(&env, *q)?;
            out.table(&t, env.format_or(Format::Csv))?;
            let failed = t.rows.iter().any(|r| r[2] == Cell::Bool(false));
            i32::from(failed)
        }
        Command::Stats(s) => {
            run_stats(&env, s, &mut out)?;
            0
        }
    };
    out.finish()?;
    Ok(code)
}

struct Output {
    path: Option<PathBuf>,
    buf: Vec<u8>,
}

impl Output {
    fn new(path: Option<&Path>) -> Result<Self> {
        Ok(Output { path: path.map(Path::to_path_buf), buf: Vec::new() })
    }

    fn table(&mut self, t: &Table, format: Format) -> Result<()> {
        t.write(format, &mut self.buf)
    }

    fn text(&mut self, s: &str) {
        self.buf.extend_from_slice(s.as_bytes());
    }

    fn finish(self) -> Result<()> {
        match &self.path {
            Some(p) => write_file(p, &self.buf),
            None => {
                let mut so = std::io::stdout().lock();
                so.write_all(&self.buf)
                    .and_then(|_| so.flush())
                    .map_err(|e| Error::Io { path: "<stdout>".into(), source: e })
            }
        }
    }
}

fn write_file(p: &Path, bytes: &[u8]) -> Result<()> {
    std::fs::write(p, bytes).map_err(|e| Error::Io { path: p.display().to_string(), source: e })
}

fn vec_cells(ctx: &HeckeContext, v: &PlaneVec) -> Vec<Cell> {
    let (x, y) = ctx.vec_to_f64(v);
    vec![v.x.to_string().into(), v.y.to_string().into(), x.into(), y.into()]
}

fn base_table(ctx: &HeckeContext, command: &str, columns: &[&str]) -> Table {
    let mut t = Table::new(command, columns);
    t.meta("q", ctx.q());
    t.meta("lambda", crate::io::table::format_float(ctx.lambda_f64()));
    t.meta("minpoly", format!("{:?}", ctx.minpoly().coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>()));
    t
}

fn cmd_enumerate(env: &Resolved, c: &Common) -> Result<Table> {
    let ctx = env.ctx(c.q)?;
    let tau = env.tau(&ctx, &c.tau)?;
    let (lo, hi) = env.interval(&ctx, &c.interval)?;
    let mut t = base_table(
        &ctx,
        "enumerate",
        &["index", "x_exact", "y_exact", "x_float", "y_float", "slope_float", "region_index", "roof_float"],
    );
    t.meta("tau", &tau).meta("interval", format!("[{lo}; {hi}]"));
    let mut rows = Vec::new();
    if ctx.sign(&lo) >= 0 {
        for_each_in_sweep(&ctx, &tau, &lo, &hi, |state, step| {
            let mut row: Vec<Cell> = vec![(rows.len() as u64).into()];
            row.extend(vec_cells(&ctx, state.current()));
            row.push(ctx.to_f64(state.slope()).into());
            row.push(step.region.into());
            row.push(ctx.to_f64(&step.roof).into());
            rows.push(row);
        })
        .or_else(|e| if matches!(e, Error::EmptySweep(_)) { Ok(()) } else { Err(e) })?;
    } else {
        // the sweep runs over nonnegative slopes; mixed ranges come from the tree
        let spec = StripSpec::new(&ctx, tau.clone(), ExtSlope::Finite(lo), ExtSlope::Finite(hi))?;
        for v in enumerate_strip(&ctx, &spec)? {
            let mut row: Vec<Cell> = vec![(rows.len() as u64).into()];
            row.extend(vec_cells(&ctx, &v));
            row.push(ctx.to_f64(&ctx.div(&v.y, &v.x)?).into());
            row.push(Cell::Text(String::new()));
            row.push(Cell::Text(String::new()));
            rows.push(row);
        }
    }
    t.meta("count", rows.len());
    for r in rows {
        t.push(r);
    }
    Ok(t)
}

fn cmd_orbit(env: &Resolved, c: &Common, a: &str, b: &str, steps: usize) -> Result<Table> {
    let ctx = env.ctx(c.q)?;
    let mut p = TrianglePoint::new(&ctx, parse_num(&ctx, a)?, parse_num(&ctx, b)?)?;
    let mut t = base_table(&ctx, "orbit", &["step", "a", "b", "region", "k", "roof", "roof_float"]);
    t.meta("steps", steps);
    for j in 0..steps {
        let s = bcz_step(&ctx, &p)?;
        t.push(vec![
            j.into(),
            p.a().to_string().into(),
            p.b().to_string().into(),
            s.region.into(),
            s.k.to_string().into(),
            s.roof.to_string().into(),
            ctx.to_f64(&s.roof).into(),
        ]);
        p = s.next;
    }
    Ok(t)
}

fn cmd_selftest(env: &Resolved, q: Option<usize>) -> Result<Table> {
    let qs: Vec<usize> = match q.or(env.cfg.q) {
        Some(q) => vec![q],
        None => (3..=8).collect(),
    };
    let mut t = Table::new("selftest", &["q", "check", "pass", "detail"]);
    for q in qs {
        let ctx = HeckeContext::new(q)?;
        let mut check = |name: &str, r: Result<(bool, String)>| {
            let (ok, detail) = r.unwrap_or_else(|e| (false, e.to_string()));
            t.push(vec![q.into(), name.into(), ok.into(), detail.into()]);
        };
        check("fan_unimodular", {
            let ok = (0..q as i64 - 1).all(|i| ctx.wedge(ctx.fan(i), ctx.fan(i + 1)).is_one())
                && (0..2 * q as i64).all(|i| ctx.qform(ctx.fan(i)).is_one());
            Ok((ok, format!("degree {}", ctx.degree())))
        });
        check("u_order", {
            let u = ctx.mat_pow(&ctx.u_gen(), q as u32);
            Ok((u == ctx.mat(ctx.int(-1), ctx.zero(), ctx.zero(), ctx.int(-1)), "U^q = -I".into()))
        });
        check("sweep_matches_tree", (|| {
            let tau = ctx.int(12);
            let spec = StripSpec::new(&ctx, tau.clone(), ExtSlope::Finite(ctx.zero()), ExtSlope::Finite(ctx.one()))?;
            let tree = enumerate_strip(&ctx, &spec)?;
            let mut s = NextTermState::seed_identity(&ctx, &tau)?;
            let mut sweep = vec![s.current().clone()];
            sweep.extend(s.take_until_slope(&ctx, &ctx.one())?);
            Ok((tree == sweep, format!("{} vectors", tree.len())))
        })());
        check("mean_roof_positive", mean_roof_quadrature(&ctx, 1e-6).map(|m| (m.value > 0.0, format!("{:.10}", m.value))));
    }
    Ok(t)
}

fn mean_row(m: &MeanRoof) -> Vec<Cell> {
    let method = serde_json::to_value(m.method).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default();
    vec![method.into(), m.value.into(), m.error_bound.into(), m.tail.into(), m.work.into()]
}

fn run_stats(env: &Resolved, cmd: &StatsCommand, out: &mut Output) -> Result<()> {
    match cmd {
        StatsCommand::MeanRoof { q, method, tol, samples, seed } => {
            let ctx = env.ctx(*q)?;
            let mut t = base_table(&ctx, "mean-roof", &["method", "value", "error_bound", "tail", "work"]);
            let mut found = Vec::new();
            if matches!(method, MeanMethod::Quadrature | MeanMethod::Both) {
                let tol = env.tol(*tol)?;
                t.meta("tol", tol);
                found.push(mean_roof_quadrature(&ctx, tol)?);
            }
            if matches!(method, MeanMethod::Montecarlo | MeanMethod::Both) {
                let seed = env.seed(*seed)?;
                let n = env.samples(*samples);
                t.meta("seed", seed).meta("samples", n);
                found.push(mean_roof_montecarlo(&ctx, n, seed)?);
            }
            if let [a, b] = &found[..] {
                t.meta("agree", (a.value - b.value).abs() <= a.error_bound + b.error_bound);
            }
            for m in &found {
                t.push(mean_row(m));
            }
            out.table(&t, env.format_or(Format::Csv))
        }
        StatsCommand::SlopeGap(d) => dist_command(env, Statistic::SlopeGap, d, out),
        StatsCommand::CentDist(d) => dist_command(env, Statistic::CentDist, d, out),
        StatsCommand::CountTriangle { common, e1, e2, sides, tol } => {
            let ctx = env.ctx(common.q)?;
            let tau = env.tau(&ctx, &common.tau)?;
            let include = parse_sides(sides)?;
            let region = TriangleRegion::new(&ctx, parse_vec(&ctx, e1)?, parse_vec(&ctx, e2)?, include)?;
            let m = mean_roof_quadrature(&ctx, env.tol(*tol)?)?;
            let c = count_in_triangle(&ctx, &region, &tau, m.value)?;
            let mut t = base_table(&ctx, "count-triangle", &["count", "predicted", "ratio", "area", "mean_roof"]);
            t.meta("tau", &tau).meta("e1", e1).meta("e2", e2).meta("sides", sides);
            t.push(vec![c.count.into(), c.predicted.into(), (c.count as f64 / c.predicted).into(), c.area.into(), m.value.into()]);
            out.table(&t, env.format_or(Format::Csv))
        }
        StatsCommand::SquareEqui { common, grid_n, svg } => {
            let ctx = env.ctx(common.q)?;
            let tau = env.tau(&ctx, &common.tau)?;
            let g = square_equidistribution(&ctx, &tau, *grid_n)?;
            let mut t = base_table(&ctx, "square-equi", &["row", "col", "count"]);
            t.meta("tau", &tau)
                .meta("grid_n", grid_n)
                .meta("total", g.total)
                .meta("chi2", crate::io::table::format_float(g.chi2))
                .meta("max_rel_dev", crate::io::table::format_float(g.max_rel_dev))
                .meta("excluded_axis_points", g.excluded_axis_points)
                .meta("dihedral", g.is_dihedral());
            for (i, row) in g.counts.iter().enumerate() {
                for (j, &c) in row.iter().enumerate() {
                    t.push(vec![i.into(), j.into(), c.into()]);
                }
            }
            if let Some(p) = svg {
                let tf = ctx.to_f64(&tau);
                let pts: Vec<(f64, f64)> = orbit_in_square(&ctx, &tau)
                    .iter()
                    .map(|v| {
                        let (x, y) = ctx.vec_to_f64(v);
                        (x / tf, y / tf)
                    })
                    .collect();
                write_file(p, point_cloud_svg(&pts, 800.0).as_bytes())?;
            }
            out.table(&t, env.format_or(Format::Csv))
        }
        StatsCommand::FordSvg { common, width } => {
            let ctx = env.ctx(common.q)?;
            let tau = env.tau(&ctx, &common.tau)?;
            let (lo, hi) = env.interval(&ctx, &common.interval)?;
            let sweep = ford_circles(&ctx, &tau, &lo, &hi)?;
            match env.format_or(Format::Svg) {
                Format::Svg => {
                    let (svg, _) = ford_svg(&sweep.circles, ctx.to_f64(&lo), ctx.to_f64(&hi), *width);
                    out.text(&svg);
                    Ok(())
                }
                f => {
                    let mut t = base_table(
                        &ctx,
                        "ford-svg",
                        &["index", "x_exact", "y_exact", "center_x", "center_y", "radius", "contact_next"],
                    );
                    t.meta("tau", &tau).meta("interval", format!("[{lo}; {hi}]"));
                    for (k, c) in sweep.circles.iter().enumerate() {
                        let contact = sweep
                            .consecutive
                            .get(k)
                            .map(|c| serde_json::to_value(c).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default())
                            .unwrap_or_default();
                        t.push(vec![
                            k.into(),
                            c.source.x.to_string().into(),
                            c.source.y.to_string().into(),
                            c.center.0.into(),
                            c.center.1.into(),
                            c.radius.into(),
                            contact.into(),
                        ]);
                    }
                    out.table(&t, f)
                }
            }
        }
        StatsCommand::Dirichlet { q, alpha, count } => {
            let ctx = env.ctx(*q)?;
            let a = parse_num(&ctx, alpha)?;
            let d = dirichlet_descent(&ctx, &a, *count)?;
            let mut t = base_table(
                &ctx,
                "dirichlet",
                &["index", "x_exact", "y_exact", "x_float", "y_float", "error", "bound", "pass"],
            );
            t.meta("alpha", alpha).meta("count", count);
            if let Some(v) = &d.exact {
                t.meta("exact", v);
            }
            let af = ctx.to_f64(&a);
            for (k, v) in d.approximants.iter().chain(d.exact.iter()).enumerate() {
                let (x, y) = ctx.vec_to_f64(v);
                let mut row: Vec<Cell> = vec![k.into()];
                row.extend(vec_cells(&ctx, v));
                row.push((af - y / x).abs().into());
                row.push((0.5 / (x * x)).into());
                row.push(is_good_approximation(&ctx, &a, v).into());
                t.push(row);
            }
            out.table(&t, env.format_or(Format::Csv))
        }
    }
}

fn parse_sides(s: &str) -> Result<[bool; 3]> {
    let b: Vec<bool> = s
        .chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(Error::Parse { what: "side flags", input: s.into() }),
        })
        .collect::<Result<_>>()?;
    b.try_into().map_err(|_| Error::Parse { what: "side flags", input: s.into() })
}

fn dist_command(env: &Resolved, stat: Statistic, d: &DistArgs, out: &mut Output) -> Result<()> {
    let ctx = env.ctx(d.common.q)?;
    let grid = parse_grid(&d.grid)?;
    let name = match stat {
        Statistic::SlopeGap => "slope-gap",
        Statistic::CentDist => "cent-dist",
    };
    let mut columns = vec!["t"];
    let limiting = if matches!(d.kind, DistKind::Limiting | DistKind::Both) {
        columns.extend(["limiting", "limiting_stderr"]);
        let seed = env.seed(d.seed)?;
        Some(limiting_dist(&ctx, stat, &grid, env.samples(d.samples), seed)?)
    } else {
        None
    };
    let empirical = if matches!(d.kind, DistKind::Empirical | DistKind::Both) {
        columns.push("empirical");
        let tau = env.tau(&ctx, &d.common.tau)?;
        let (lo, hi) = env.interval(&ctx, &d.common.interval)?;
        Some(empirical_dist(&ctx, stat, &tau, &lo, &hi, &grid)?)
    } else {
        None
    };
    let mut t = base_table(&ctx, name, &columns);
    for tab in limiting.iter().chain(empirical.iter()) {
        let prefix = serde_json::to_value(tab.kind).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default();
        for (k, v) in &tab.meta {
            t.meta(&format!("{prefix}.{k}"), v);
        }
    }
    if let (Some(l), Some(e)) = (&limiting, &empirical) {
        t.meta("sup_distance", crate::io::table::format_float(sup_distance(l, e)?));
    }
    for (j, &tv) in grid.iter().enumerate() {
        let mut row: Vec<Cell> = vec![tv.into()];
        if let Some(l) = &limiting {
            row.push(l.points[j].value.into());
            row.push(l.points[j].stderr.into());
        }
        if let Some(e) = &empirical {
            row.push(e.points[j].value.into());
        }
        t.push(row);
    }
    out.table(&t, env.format_or(Format::Csv))
}
