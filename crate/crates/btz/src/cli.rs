//! `btz` subcommands.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 usage or data
//! error. CSV floats are written with 17 significant digits (`{:.16e}`).

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use btz_core::ads::{geodesic_point, representative, AdSPoint, Constraint, Direction};
use btz_core::ambient::{random_point, stream_seed, AmbientVector, Dim, T, U};
use btz_core::causal::{
    branch_data, branch_roots, classify, classify_sampled, CausalClass, Orientation, Tag,
};
use btz_core::horizon::{h4_generate, horizon_residual};

use crate::verify::{ads5_agreement, run_suite, Suite};

/// Distance from the quadric within which input points are re-projected.
pub const REPROJECT_BAND: f64 = 1e-6;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] btz_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
}

#[derive(Parser, Debug)]
#[command(
    name = "btz",
    version,
    about = "Causal structure of BTZ black holes on AdS"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify one point.
    Classify(ClassifyArgs),
    /// Classify seeded random points.
    Scan(ScanArgs),
    /// Generate AdS4 horizon points from lateral classes.
    Orbit(OrbitArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Follow one light ray from a point.
    Geodesic(GeodesicArgs),
    /// Compare Horizon tags with the extended residual on AdS5.
    Conjecture(ConjectureArgs),
}

#[derive(Args, Debug, Clone, Copy)]
pub struct SeedArg {
    #[arg(long, env = "BTZ_SEED", default_value_t = 0)]
    pub seed: u64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum FileFormat {
    Csv,
    Jsonl,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    #[arg(long, default_value_t = 3)]
    pub dim: usize,
    /// Comma-separated components `u,t,x,y[,z1,z2]`.
    #[arg(long, allow_hyphen_values = true)]
    pub point: String,
    #[command(flatten)]
    pub seed: SeedArg,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub format: ReportFormat,
    /// Also run the sampling oracle with this many directions.
    #[arg(long)]
    pub n_dirs: Option<usize>,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    #[arg(long, default_value_t = 3)]
    pub dim: usize,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[command(flatten)]
    pub seed: SeedArg,
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FileFormat::Csv)]
    pub format: FileFormat,
}

#[derive(Args, Debug)]
pub struct OrbitArgs {
    #[arg(long, default_value_t = 4)]
    pub dim: usize,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[command(flatten)]
    pub seed: SeedArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FileFormat::Csv)]
    pub format: FileFormat,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[command(flatten)]
    pub seed: SeedArg,
}

#[derive(Args, Debug)]
pub struct GeodesicArgs {
    #[arg(long, default_value_t = 3)]
    pub dim: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub point: String,
    /// Comma-separated unit direction on S^{l-2}; normalized if needed.
    #[arg(long, allow_hyphen_values = true)]
    pub direction: String,
    /// Number of points along the ray.
    #[arg(long, default_value_t = 11)]
    pub samples: usize,
    /// Affine parameter range `[-s_max, s_max]`.
    #[arg(long, default_value_t = 2.0)]
    pub s_max: f64,
    #[command(flatten)]
    pub seed: SeedArg,
}

#[derive(Args, Debug)]
pub struct ConjectureArgs {
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[command(flatten)]
    pub seed: SeedArg,
}

pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli, &mut io::stdout().lock()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

pub fn run(cli: Cli, stdout: &mut dyn Write) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Classify(a) => cmd_classify(&a, stdout),
        Command::Scan(a) => cmd_scan(&a, stdout),
        Command::Orbit(a) => cmd_orbit(&a, stdout),
        Command::Verify(a) => cmd_verify(&a, stdout),
        Command::Geodesic(a) => cmd_geodesic(&a, stdout),
        Command::Conjecture(a) => cmd_conjecture(&a, stdout),
    }
}

fn stdout_err(e: io::Error) -> CliError {
    CliError::Io {
        path: "<stdout>".into(),
        source: e,
    }
}

fn parse_components(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|c| {
            c.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Usage(format!("not a number: `{c}`")))
        })
        .collect()
}

/// Parses a point and re-projects it onto the quadric by scaling `(u, t)`
/// when `|Q − 1| ≤ REPROJECT_BAND`.
pub fn parse_point(dim: Dim, s: &str) -> Result<AdSPoint, CliError> {
    let c = parse_components(s)?;
    let mut v = AmbientVector::new(dim, &c)?;
    let q = v.q(&v);
    if (q - 1.0).abs() > REPROJECT_BAND {
        return Err(CliError::Usage(format!(
            "point is off the quadric: Q(v,v) = {q} (band {REPROJECT_BAND:e})"
        )));
    }
    let r2 = v.u() * v.u() + v.t() * v.t();
    let scale = ((1.0 + r2 - q) / r2).sqrt();
    v.set(U, v.u() * scale);
    v.set(T, v.t() * scale);
    Ok(AdSPoint::new(v)?)
}

fn parse_dim(l: usize) -> Result<Dim, CliError> {
    Ok(Dim::new(l)?)
}

fn open_out<'a>(
    path: &Option<PathBuf>,
    stdout: &'a mut dyn Write,
) -> Result<Box<dyn Write + 'a>, CliError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| {
            CliError::Io {
                path: p.display().to_string(),
                source: e,
            }
        })?)),
        None => Box::new(stdout),
    })
}

fn out_err(path: &Option<PathBuf>) -> impl Fn(io::Error) -> CliError + '_ {
    move |e| CliError::Io {
        path: path
            .as_ref()
            .map_or("<stdout>".into(), |p| p.display().to_string()),
        source: e,
    }
}

fn fmt_f(v: f64) -> String {
    format!("{v:.16e}")
}

#[derive(Serialize)]
struct ClassifyReport<'a> {
    dim: usize,
    point: &'a [f64],
    #[serde(serialize_with = "tag_str")]
    tag: Tag,
    #[serde(serialize_with = "tag_str")]
    future_tag: Tag,
    #[serde(serialize_with = "tag_str")]
    past_tag: Tag,
    horizon_residual: f64,
    singular_residual: f64,
    gap: Option<f64>,
    theta_plus: Option<f64>,
    theta_minus: Option<f64>,
    separation: Option<f64>,
    #[serde(serialize_with = "opt_tag_str")]
    sampled_tag: Option<Tag>,
    sampled_future_fraction: Option<f64>,
    sampled_past_fraction: Option<f64>,
}

fn cmd_classify(a: &ClassifyArgs, out: &mut dyn Write) -> Result<ExitCode, CliError> {
    let dim = parse_dim(a.dim)?;
    let p = parse_point(dim, &a.point)?;
    let c = classify(&p, a.seed.seed);
    let esc = c.escape();
    let sampled = a.n_dirs.map(|n| classify_sampled(&p, n, a.seed.seed));
    let report = ClassifyReport {
        dim: dim.l(),
        point: p.vector().as_slice(),
        tag: c.tag,
        future_tag: c.oriented_tag(Orientation::Future),
        past_tag: c.oriented_tag(Orientation::Past),
        horizon_residual: horizon_residual(&p).value,
        singular_residual: c.singular_residual,
        gap: c.gap(),
        theta_plus: esc.and_then(|e| e.theta_plus),
        theta_minus: esc.and_then(|e| e.theta_minus),
        separation: esc.and_then(|e| e.separation),
        sampled_tag: sampled.map(|s| s.tag),
        sampled_future_fraction: sampled.map(|s| s.fraction(Orientation::Future)),
        sampled_past_fraction: sampled.map(|s| s.fraction(Orientation::Past)),
    };
    match a.format {
        ReportFormat::Json => {
            serde_json::to_writer(&mut *out, &report)
                .map_err(io::Error::from)
                .map_err(stdout_err)?;
            writeln!(out).map_err(stdout_err)?;
        }
        ReportFormat::Text => write_classify_text(&report, out).map_err(stdout_err)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn write_classify_text(r: &ClassifyReport<'_>, out: &mut dyn Write) -> io::Result<()> {
    let opt = |v: Option<f64>| v.map_or_else(|| "-".to_string(), fmt_f);
    let point: Vec<String> = r.point.iter().map(|v| format!("{v}")).collect();
    writeln!(out, "point: ({})", point.join(", "))?;
    writeln!(out, "tag={}", r.tag)?;
    writeln!(out, "future={} past={}", r.future_tag, r.past_tag)?;
    writeln!(out, "horizon_residual={}", fmt_f(r.horizon_residual))?;
    writeln!(out, "singular_residual={}", fmt_f(r.singular_residual))?;
    writeln!(out, "gap={}", opt(r.gap))?;
    writeln!(
        out,
        "theta_plus={} theta_minus={} separation={}",
        opt(r.theta_plus),
        opt(r.theta_minus),
        opt(r.separation)
    )?;
    if let Some(t) = r.sampled_tag {
        writeln!(
            out,
            "sampled={t} future_fraction={} past_fraction={}",
            opt(r.sampled_future_fraction),
            opt(r.sampled_past_fraction)
        )?;
    }
    Ok(())
}

/// One row of `scan`.
#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct ScanRecord {
    pub index: usize,
    pub seed: u64,
    pub u: f64,
    pub t: f64,
    pub x: f64,
    pub y: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z2: Option<f64>,
    #[serde(serialize_with = "tag_str")]
    pub tag: Tag,
    pub horizon_residual: f64,
    pub singular_residual: f64,
    pub gap: Option<f64>,
}

impl ScanRecord {
    pub fn new(index: usize, seed: u64, p: &AdSPoint, c: &CausalClass) -> Self {
        let v = p.vector();
        let z = |k: usize| (k < p.dim().extra()).then(|| v.z(k));
        ScanRecord {
            index,
            seed,
            u: v.u(),
            t: v.t(),
            x: v.x(),
            y: v.y(),
            z1: z(0),
            z2: z(1),
            tag: c.tag,
            horizon_residual: horizon_residual(p).value,
            singular_residual: c.singular_residual,
            gap: c.gap(),
        }
    }

    pub fn csv_header(dim: Dim) -> String {
        let mut cols = vec!["index", "seed", "u", "t", "x", "y"];
        cols.extend(["z1", "z2"].iter().take(dim.extra()));
        cols.extend(["tag", "horizon_residual", "singular_residual", "gap"]);
        cols.join(",")
    }

    pub fn csv_row(&self) -> String {
        let mut f = vec![self.index.to_string(), self.seed.to_string()];
        f.extend([self.u, self.t, self.x, self.y].map(fmt_f));
        f.extend([self.z1, self.z2].into_iter().flatten().map(fmt_f));
        f.push(self.tag.to_string());
        f.push(fmt_f(self.horizon_residual));
        f.push(fmt_f(self.singular_residual));
        f.push(self.gap.map(fmt_f).unwrap_or_default());
        f.join(",")
    }
}

fn tag_str<S: serde::Serializer>(t: &Tag, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(t.as_str())
}

fn opt_tag_str<S: serde::Serializer>(t: &Option<Tag>, s: S) -> Result<S::Ok, S::Error> {
    match t {
        Some(t) => s.serialize_some(t.as_str()),
        None => s.serialize_none(),
    }
}

/// Records of a scan, ordered by index. Point `i` is drawn from
/// `stream_seed(seed, i)` and classified with representative seed `i`.
pub fn scan_records(dim: Dim, samples: usize, seed: u64, sigma: f64) -> Vec<ScanRecord> {
    (0..samples)
        .into_par_iter()
        .map(|i| {
            let s = stream_seed(seed, i as u64);
            let p = AdSPoint::new(random_point(dim, s, sigma)).expect("sampled on quadric");
            ScanRecord::new(i, s, &p, &classify(&p, i as u64))
        })
        .collect()
}

fn tag_counts(tags: impl Iterator<Item = Tag>) -> String {
    let mut counts = [0usize; 4];
    for t in tags {
        counts[Tag::ALL.iter().position(|a| *a == t).expect("known tag")] += 1;
    }
    Tag::ALL
        .iter()
        .zip(counts)
        .map(|(t, n)| format!("{t}={n}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_scan(a: &ScanArgs, stdout: &mut dyn Write) -> Result<ExitCode, CliError> {
    let dim = parse_dim(a.dim)?;
    if a.samples == 0 {
        return Err(CliError::Usage("--samples must be at least 1".into()));
    }
    if !(a.sigma >= 0.0 && a.sigma.is_finite()) {
        return Err(CliError::Usage(
            "--sigma must be finite and non-negative".into(),
        ));
    }
    let mut w = open_out(&a.out, stdout)?;
    let records = scan_records(dim, a.samples, a.seed.seed, a.sigma);
    let err = out_err(&a.out);
    match a.format {
        FileFormat::Csv => {
            writeln!(w, "{}", ScanRecord::csv_header(dim)).map_err(&err)?;
            for r in &records {
                writeln!(w, "{}", r.csv_row()).map_err(&err)?;
            }
        }
        FileFormat::Jsonl => {
            for r in &records {
                serde_json::to_writer(&mut w, r)
                    .map_err(io::Error::from)
                    .map_err(&err)?;
                writeln!(w).map_err(&err)?;
            }
        }
    }
    w.flush().map_err(&err)?;
    eprintln!(
        "scan: {} points, {}",
        records.len(),
        tag_counts(records.iter().map(|r| r.tag))
    );
    Ok(ExitCode::SUCCESS)
}

/// One row of `orbit`.
#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct OrbitRecord {
    pub index: usize,
    pub branch: &'static str,
    pub alpha_lateral: f64,
    pub x_sign: f64,
    pub overall: f64,
    pub a: f64,
    pub alpha_base: f64,
    pub u: f64,
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub z1: f64,
    pub horizon_residual: f64,
}

impl OrbitRecord {
    pub const CSV_HEADER: &'static str =
        "index,branch,alpha_lateral,x_sign,overall,a,alpha_base,u,t,x,y,z1,horizon_residual";

    pub fn csv_row(&self) -> String {
        let mut f = vec![self.index.to_string(), self.branch.to_string()];
        f.extend(
            [
                self.alpha_lateral,
                self.x_sign,
                self.overall,
                self.a,
                self.alpha_base,
                self.u,
                self.t,
                self.x,
                self.y,
                self.z1,
                self.horizon_residual,
            ]
            .map(fmt_f),
        );
        f.join(",")
    }
}

pub fn orbit_records(samples: usize, seed: u64) -> Vec<OrbitRecord> {
    h4_generate(samples, seed)
        .into_iter()
        .map(|s| {
            let v = s.point.vector();
            OrbitRecord {
                index: s.index,
                branch: s.branch.as_str(),
                alpha_lateral: s.alpha_lateral,
                x_sign: s.x_sign,
                overall: s.overall,
                a: s.a,
                alpha_base: s.alpha_base,
                u: v.u(),
                t: v.t(),
                x: v.x(),
                y: v.y(),
                z1: v.z(0),
                horizon_residual: horizon_residual(&s.point).value,
            }
        })
        .collect()
}

fn cmd_orbit(a: &OrbitArgs, stdout: &mut dyn Write) -> Result<ExitCode, CliError> {
    if a.dim != 4 {
        return Err(CliError::Usage("orbit is only defined for --dim 4".into()));
    }
    if a.samples == 0 {
        return Err(CliError::Usage("--samples must be at least 1".into()));
    }
    let records = orbit_records(a.samples, a.seed.seed);
    let mut w = open_out(&a.out, stdout)?;
    let err = out_err(&a.out);
    match a.format {
        FileFormat::Csv => {
            writeln!(w, "{}", OrbitRecord::CSV_HEADER).map_err(&err)?;
            for r in &records {
                writeln!(w, "{}", r.csv_row()).map_err(&err)?;
            }
        }
        FileFormat::Jsonl => {
            for r in &records {
                serde_json::to_writer(&mut w, r)
                    .map_err(io::Error::from)
                    .map_err(&err)?;
                writeln!(w).map_err(&err)?;
            }
        }
    }
    w.flush().map_err(&err)?;
    let worst = records
        .iter()
        .map(|r| r.horizon_residual.abs())
        .fold(0.0, f64::max);
    eprintln!(
        "orbit: {} points, max |residual| {worst:.1e}",
        records.len()
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<ExitCode, CliError> {
    let suite: Suite = a.suite.parse().map_err(CliError::Usage)?;
    let mut failed = 0;
    for c in run_suite(suite, a.seed.seed) {
        writeln!(out, "{c}").map_err(stdout_err)?;
        failed += usize::from(c.counts_as_failure());
    }
    Ok(if failed == 0 {
        ExitCode::SUCCESS
    } else {
        writeln!(out, "{failed} check(s) failed").map_err(stdout_err)?;
        ExitCode::from(1)
    })
}

fn cmd_geodesic(a: &GeodesicArgs, out: &mut dyn Write) -> Result<ExitCode, CliError> {
    let dim = parse_dim(a.dim)?;
    let p = parse_point(dim, &a.point)?;
    let w = Direction::normalized(dim, &parse_components(&a.direction)?)
        .ok_or_else(|| CliError::Usage("direction must be non-zero with l-1 components".into()))?;
    if a.samples < 2 {
        return Err(CliError::Usage("--samples must be at least 2".into()));
    }
    let rep = representative(&p, Constraint::None, Some(a.seed.seed))?;
    let e = stdout_err;
    writeln!(out, "tag={}", classify(&p, a.seed.seed).tag).map_err(e)?;
    match branch_data(&rep) {
        Ok(bd) => {
            let [sp, sm] = branch_roots(&bd, &w);
            let f = |s: Option<f64>| s.map_or_else(|| "-".to_string(), fmt_f);
            writeln!(out, "roots: s_plus={} s_minus={}", f(sp), f(sm)).map_err(e)?;
        }
        Err(_) => writeln!(out, "roots: point is singular").map_err(e)?,
    }
    writeln!(out, "s,{},singular_residual", coord_names(dim).join(",")).map_err(e)?;
    for k in 0..a.samples {
        let s = -a.s_max + 2.0 * a.s_max * k as f64 / (a.samples - 1) as f64;
        let q = geodesic_point(&rep, &w, s);
        let cols: Vec<String> = q.vector().as_slice().iter().map(|v| fmt_f(*v)).collect();
        writeln!(
            out,
            "{},{},{}",
            fmt_f(s),
            cols.join(","),
            fmt_f(q.singular_residual())
        )
        .map_err(e)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn coord_names(dim: Dim) -> Vec<&'static str> {
    ["u", "t", "x", "y", "z1", "z2"][..dim.n()].to_vec()
}

fn cmd_conjecture(a: &ConjectureArgs, out: &mut dyn Write) -> Result<ExitCode, CliError> {
    if a.samples == 0 {
        return Err(CliError::Usage("--samples must be at least 1".into()));
    }
    let (n, agree, on, tagged) = ads5_agreement(a.seed.seed, a.samples);
    writeln!(
        out,
        "AdS5: agreement {:.4} ({agree}/{n}); {on} with |u^2-x^2-z1^2-z2^2| <= 1e-6, {tagged} tagged Horizon",
        agree as f64 / n as f64
    )
    .map_err(stdout_err)?;
    Ok(ExitCode::SUCCESS)
}
