//! The `place`, `sweep` and `pattern` subcommands.

use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use spwt_core::experiments::{sweep_alpha, sweep_snr};
use spwt_core::grid::stepped;
use spwt_core::placement::{
    grid_null_oracle, residual_grid, solve_azimuth_scheme_detailed, solve_pitch_scheme_all, Branch,
    Locus, NullFactor, NullIndex, PlacementSolution, Scheme,
};
use spwt_core::ScenarioConfig;

use crate::config::{resolve_seed, RawConfig, ResolvedConfig};
use crate::manifest::{now_iso8601, Manifest};
use crate::output::{ensure_dir, fmt_num, pattern_csv, sweep_csv, OutputSet};
use crate::svg;

/// `println!` that tolerates a closed stdout (e.g. piped into `head`).
macro_rules! say {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout().lock(), $($arg)*);
    }};
}

pub const HINT: &str = "adjust theta_a or height";

/// Why a command stopped. Maps onto the exit status.
#[derive(Debug)]
pub enum Failure {
    /// Bad usage, config or I/O; exit 1.
    Usage(anyhow::Error),
    /// The scenario admits no placement; exit 2.
    Infeasible(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Infeasible(_) => 2,
        }
    }
}

fn classify(e: spwt_core::Error) -> Failure {
    match e {
        spwt_core::Error::InfeasibleGeometry(msg) if msg.contains(HINT) => Failure::Infeasible(msg),
        spwt_core::Error::InfeasibleGeometry(msg) => Failure::Infeasible(format!("{msg}; {HINT}")),
        other => Failure::Usage(other.into()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchemeChoice {
    Azimuth,
    Pitch,
    Both,
}

impl SchemeChoice {
    fn label(self) -> &'static str {
        match self {
            SchemeChoice::Azimuth => "azimuth",
            SchemeChoice::Pitch => "pitch",
            SchemeChoice::Both => "both",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepKind {
    Snr,
    Alpha,
}

/// Options every command shares.
#[derive(Debug, Clone)]
pub struct Common {
    pub config: PathBuf,
    pub seed: Option<u64>,
    pub overrides: Vec<String>,
}

struct Loaded {
    config: ResolvedConfig,
    seed: u64,
    scenario: ScenarioConfig,
}

fn load(common: &Common) -> anyhow::Result<Loaded> {
    let mut raw = RawConfig::load(&common.config)?;
    for o in &common.overrides {
        raw.set(o)?;
    }
    let config = raw
        .resolve()
        .with_context(|| format!("invalid config {}", common.config.display()))?;
    let env = std::env::var("SPWT_SEED").ok();
    let seed = resolve_seed(common.seed, config.seed, env.as_deref())?;
    let scenario = config.to_scenario(seed);
    Ok(Loaded {
        config,
        seed,
        scenario,
    })
}

/// `a:b:c` as start, step, stop.
pub fn parse_grid(text: &str) -> anyhow::Result<Vec<f64>> {
    let parts: Vec<&str> = text.split(':').collect();
    let [a, b, c] = parts.as_slice() else {
        bail!("grid `{text}` must look like start:step:stop");
    };
    let num = |s: &str| -> anyhow::Result<f64> {
        s.trim()
            .parse::<f64>()
            .map_err(|_| anyhow!("grid `{text}`: `{s}` is not a number"))
    };
    stepped(num(a)?, num(b)?, num(c)?).map_err(|e| anyhow!("grid `{text}`: {e}"))
}

fn describe(s: &ScenarioConfig) -> String {
    format!(
        "{}x{} array at {} Hz, X_E = {} m, g = {} m, theta_a = {} rad, alpha = {}, SNR = {} dB",
        s.array.m_rows,
        s.array.n_cols,
        fmt_num(s.array.carrier_hz),
        fmt_num(s.eve_distance()),
        fmt_num(s.uav_height_m),
        fmt_num(s.yaw.radians()),
        fmt_num(s.power.alpha),
        fmt_num(s.snr_db()),
    )
}

fn solution_line(p: &PlacementSolution) -> String {
    let scheme = match p.scheme {
        Scheme::Azimuth => "azimuth",
        Scheme::Pitch => "pitch",
    };
    let branch = match p.branch {
        Branch::Plus => '+',
        Branch::Minus => '-',
    };
    let factor = match p.factor_used {
        NullFactor::Row => "row",
        NullFactor::Column => "column",
    };
    let index = if p.scheme == Scheme::Azimuth {
        "k"
    } else {
        "l"
    };
    format!(
        "{scheme:<8} branch {branch} factor {factor:<6} {index}={}  ({}, {}, {}) m  null residual {}  SR {} bit/s/Hz",
        p.index_used.get(),
        fmt_num(p.position.x),
        fmt_num(p.position.y),
        fmt_num(p.position.z),
        fmt_num(p.null_residual),
        fmt_num(p.sr_at_solution),
    )
}

/// Solutions for the chosen schemes. Infeasibility is only an error when no
/// scheme produced anything.
fn solve(
    scenario: &ScenarioConfig,
    k: u32,
    scheme: SchemeChoice,
) -> Result<Vec<PlacementSolution>, Failure> {
    let index = NullIndex::new(k, &scenario.array).map_err(classify)?;
    let mut found = Vec::new();
    let mut infeasible = Vec::new();
    if scheme != SchemeChoice::Pitch {
        match solve_azimuth_scheme_detailed(scenario, index) {
            Ok(r) => {
                for c in &r.rejected {
                    eprintln!(
                        "warning: azimuth candidate ({}, {}) failed verification (residual {})",
                        fmt_num(c.position.x),
                        fmt_num(c.position.y),
                        fmt_num(c.null_residual)
                    );
                }
                if r.solutions.is_empty() {
                    infeasible.push(String::from(
                        "azimuth: every candidate failed null verification",
                    ));
                }
                found.extend(r.solutions);
            }
            Err(spwt_core::Error::InfeasibleGeometry(msg)) => {
                infeasible.push(format!("azimuth: {msg}"))
            }
            Err(e) => return Err(classify(e)),
        }
    }
    if scheme != SchemeChoice::Azimuth {
        match solve_pitch_scheme_all(scenario, index) {
            Ok(s) => found.extend(s),
            Err(spwt_core::Error::InfeasibleGeometry(msg)) => {
                infeasible.push(format!("pitch: {msg}"))
            }
            Err(e) => return Err(classify(e)),
        }
    }
    if found.is_empty() {
        let mut msg = String::from("no placement nulls Eve");
        for line in infeasible {
            msg.push_str("\n  ");
            msg.push_str(&line);
        }
        if !msg.contains(HINT) {
            msg.push_str(&format!("\n  {HINT}"));
        }
        return Err(Failure::Infeasible(msg));
    }
    Ok(found)
}

pub fn place(common: &Common, scheme: SchemeChoice, out: Option<&Path>) -> Result<(), Failure> {
    let loaded = load(common)?;
    let solutions = solve(&loaded.scenario, loaded.config.k, scheme)?;
    say!("{}", describe(&loaded.scenario));
    for s in &solutions {
        say!("{}", solution_line(s));
    }
    if let Some(dir) = out {
        ensure_dir(dir).with_context(|| format!("cannot create {}", dir.display()))?;
        let mut files = OutputSet::new();
        let mut w = csv::Writer::from_writer(Vec::new());
        let header = [
            "scheme",
            "branch",
            "factor",
            "index",
            "x_m",
            "y_m",
            "z_m",
            "null_residual",
            "sr_bps_hz",
        ];
        let rows: Vec<Vec<String>> = solutions
            .iter()
            .map(|p| {
                vec![
                    if p.scheme == Scheme::Azimuth {
                        "azimuth"
                    } else {
                        "pitch"
                    }
                    .into(),
                    if p.branch == Branch::Plus { "+" } else { "-" }.into(),
                    if p.factor_used == NullFactor::Row {
                        "row"
                    } else {
                        "column"
                    }
                    .into(),
                    p.index_used.get().to_string(),
                    fmt_num(p.position.x),
                    fmt_num(p.position.y),
                    fmt_num(p.position.z),
                    fmt_num(p.null_residual),
                    fmt_num(p.sr_at_solution),
                ]
            })
            .collect();
        let bytes = (|| -> anyhow::Result<Vec<u8>> {
            w.write_record(header)?;
            for r in &rows {
                w.write_record(r)?;
            }
            Ok(w.into_inner()?)
        })()?;
        write(&mut files, dir, "placements.csv", &bytes)?;
        let mut manifest = Manifest::new("place", loaded.seed);
        manifest
            .extend(loaded.config.echo(loaded.seed))
            .insert("scheme", scheme.label());
        write(
            &mut files,
            dir,
            "manifest.json",
            manifest.render(&now_iso8601()).as_bytes(),
        )?;
        files.commit();
    }
    Ok(())
}

fn write(files: &mut OutputSet, dir: &Path, name: &str, bytes: &[u8]) -> anyhow::Result<()> {
    let path = dir.join(name);
    files
        .write(path.clone(), bytes)
        .with_context(|| format!("cannot write {}", path.display()))
}

pub struct SweepOptions<'a> {
    pub kind: SweepKind,
    pub scheme: SchemeChoice,
    pub grid: Option<&'a str>,
    pub snr_db: f64,
    pub baselines: usize,
    pub out: &'a Path,
}

pub fn sweep(common: &Common, opts: &SweepOptions) -> Result<(), Failure> {
    let loaded = load(common)?;
    let scheme = match opts.scheme {
        SchemeChoice::Azimuth => Scheme::Azimuth,
        SchemeChoice::Pitch => Scheme::Pitch,
        SchemeChoice::Both => {
            return Err(Failure::Usage(anyhow!(
                "sweep takes --scheme azimuth or --scheme pitch"
            )))
        }
    };
    let (kind, default_grid) = match opts.kind {
        SweepKind::Snr => ("snr", "0:2:20"),
        SweepKind::Alpha => ("alpha", "0:0.1:1"),
    };
    let grid_text = opts.grid.unwrap_or(default_grid);
    let grid = parse_grid(grid_text)?;
    let result = match opts.kind {
        SweepKind::Snr => sweep_snr(&loaded.scenario, scheme, &grid, opts.baselines),
        SweepKind::Alpha => {
            sweep_alpha(&loaded.scenario, scheme, opts.snr_db, &grid, opts.baselines)
        }
    }
    .map_err(classify)?;

    ensure_dir(opts.out).with_context(|| format!("cannot create {}", opts.out.display()))?;
    let mut files = OutputSet::new();
    let csv = sweep_csv(&result).context("cannot serialize CSV")?;
    write(&mut files, opts.out, &format!("sweep_{kind}.csv"), &csv)?;
    write(
        &mut files,
        opts.out,
        &format!("sweep_{kind}.svg"),
        svg::sweep_chart(&result).as_bytes(),
    )?;
    let mut manifest = Manifest::new("sweep", loaded.seed);
    manifest
        .extend(loaded.config.echo(loaded.seed))
        .insert("kind", kind)
        .insert("scheme", opts.scheme.label())
        .insert("grid", grid_text)
        .insert("baselines", opts.baselines);
    if opts.kind == SweepKind::Alpha {
        manifest.insert("snr_db", opts.snr_db);
    }
    write(
        &mut files,
        opts.out,
        "manifest.json",
        manifest.render(&now_iso8601()).as_bytes(),
    )?;
    for p in files.commit() {
        say!("wrote {}", p.display());
    }
    Ok(())
}

pub fn pattern(common: &Common, grid: Option<&str>, out: &Path) -> Result<(), Failure> {
    let loaded = load(common)?;
    let grid_text = grid.unwrap_or("-1000:5:1000");
    let axis = parse_grid(grid_text)?;
    let s = &loaded.scenario;
    let residuals = residual_grid(s, &axis, &axis);

    // the overlay is best effort: a scenario without nulls still has a pattern
    let marks: Vec<(f64, f64)> = solve(s, loaded.config.k, SchemeChoice::Both)
        .map(|v| v.iter().map(|p| (p.position.x, p.position.y)).collect())
        .unwrap_or_default();
    let (lo, hi) = (axis[0], axis[axis.len() - 1]);
    let step = if axis.len() > 1 {
        axis[1] - axis[0]
    } else {
        1.0
    };
    let minima = grid_null_oracle(
        s,
        Locus::Box {
            x_min: lo,
            x_max: hi,
            y_min: lo,
            y_max: hi,
        },
        step,
    )
    .map_err(classify)?;

    ensure_dir(out).with_context(|| format!("cannot create {}", out.display()))?;
    let mut files = OutputSet::new();
    write(
        &mut files,
        out,
        "pattern.csv",
        &pattern_csv(&residuals).context("cannot serialize CSV")?,
    )?;
    write(
        &mut files,
        out,
        "pattern.svg",
        svg::pattern_heatmap(&residuals, &marks).as_bytes(),
    )?;
    let mut manifest = Manifest::new("pattern", loaded.seed);
    manifest
        .extend(loaded.config.echo(loaded.seed))
        .insert("grid", grid_text);
    write(
        &mut files,
        out,
        "manifest.json",
        manifest.render(&now_iso8601()).as_bytes(),
    )?;
    for p in files.commit() {
        say!("wrote {}", p.display());
    }
    say!("{} grid minima below 1e-2", minima.len());
    for (p, r) in minima.iter().take(8) {
        say!(
            "  ({}, {}) residual {}",
            fmt_num(p.x),
            fmt_num(p.y),
            fmt_num(*r)
        );
    }
    for (x, y) in &marks {
        say!("  solver placement ({}, {})", fmt_num(*x), fmt_num(*y));
    }
    Ok(())
}
