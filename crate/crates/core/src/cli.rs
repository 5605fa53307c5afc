//! Command-line surface of the `ordcomp` binary.
//!
//! Exit codes: 0 success, 1 a check failed, 2 usage or parse error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::compact::{
    attempt_domination, compactify, dominate, nachbin_pipeline, preorder_dot, relation_hex,
    remainder_is_ordered, smallest_closed_preorder_diagnostic, verify_preorder_embedding,
    vertices_csv, BuildParams, Compactification, DominationMap, TailRecord,
};
use crate::error::{Error, Result};
use crate::finite::{
    enumerate_isotone_functions, parse_space, ChainFunction, DEFAULT_ENUMERATION_BUDGET,
};
use crate::report::{CheckReport, Witness};
use crate::sampled::misner::{causal_le, sweep_reachability};
use crate::sampled::{
    build_family, catalog, validate_family, FamilySpec, MisnerStrip, NatDiscrete, PairSampling,
    Point, RealLineMirror, SampledSpace, TailClassSelector, ValidateOptions,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Largest tolerated embedding violation rate.
pub const DELTA_EMBED: f64 = 0.01;

#[derive(Debug, Parser)]
#[command(
    name = "ordcomp",
    version,
    about = "Topological preorders and their compactifications"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a finite topological preordered space given as JSON.
    CheckFinite { path: PathBuf },
    /// Build an H-compactification of a catalog space.
    Compactify(CompactifyArgs),
    /// Search for a domination map between two build directories.
    Dominate { dir_a: PathBuf, dir_b: PathBuf },
    /// Run a scripted scenario and print PASS/FAIL per assertion.
    Demo {
        name: DemoName,
        #[arg(long, default_value_t = 64)]
        resolution: usize,
    },
}

#[derive(Debug, Clone, clap::Args)]
pub struct CompactifyArgs {
    #[arg(long)]
    pub space: String,
    /// `default`, `C`, `Cminus`, `Cplus`, or a comma-separated list of H names.
    #[arg(long, default_value = "default")]
    pub family: String,
    #[arg(long, default_value_t = 64)]
    pub resolution: usize,
    #[arg(long, default_value_t = 4)]
    pub tail_depth: usize,
    #[arg(long, default_value_t = 1e-3)]
    pub eps_q: f64,
    #[arg(long, default_value_t = 1e-2)]
    pub eps_cauchy: f64,
    #[arg(long, default_value = "ordcomp-out")]
    pub out: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DemoName {
    NoSmallest,
    NachbinDiagram,
    Misner,
    OnePointSuite,
}

/// Parameters of one compactification run, stored in `report.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub space: String,
    pub family: String,
    pub resolution: usize,
    pub tail_depth: usize,
    pub eps_q: f64,
    pub eps_cauchy: f64,
    pub seed: u64,
}

impl RunConfig {
    pub fn new(space: &str, family: &str) -> Self {
        let p = BuildParams::default();
        Self {
            space: space.to_string(),
            family: family.to_string(),
            resolution: p.resolution,
            tail_depth: p.tail_depth,
            eps_q: p.eps_q,
            eps_cauchy: p.eps_cauchy,
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eps_q > 0.0 && self.eps_cauchy > 0.0) {
            return Err(Error::Config("tolerances must be positive".into()));
        }
        if self.resolution < 8 {
            return Err(Error::Config("resolution must be at least 8".into()));
        }
        if self.tail_depth < 3 {
            return Err(Error::Config("tail depth must be at least 3".into()));
        }
        Ok(())
    }

    pub fn params(&self) -> BuildParams {
        BuildParams {
            resolution: self.resolution,
            tail_depth: self.tail_depth,
            eps_q: self.eps_q,
            eps_cauchy: self.eps_cauchy,
        }
    }

    pub fn sampling(&self) -> PairSampling {
        PairSampling {
            seed: self.seed,
            ..PairSampling::default()
        }
    }

    /// Builds the space and its compactification.
    pub fn build(&self) -> Result<(Box<dyn SampledSpace>, Compactification)> {
        self.validate()?;
        let space = catalog(&self.space)?;
        let family = build_family(
            space.as_ref(),
            &FamilySpec::parse(&self.family),
            self.resolution,
            self.tail_depth,
        )?;
        let comp = compactify(space.as_ref(), &family, &self.params())?;
        Ok((space, comp))
    }
}

impl From<&CompactifyArgs> for RunConfig {
    fn from(a: &CompactifyArgs) -> Self {
        Self {
            space: a.space.clone(),
            family: a.family.clone(),
            resolution: a.resolution,
            tail_depth: a.tail_depth,
            eps_q: a.eps_q,
            eps_cauchy: a.eps_cauchy,
            seed: a.seed,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct FamilyNames {
    pub h: Vec<String>,
    pub c: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct RelationDump {
    pub n: usize,
    pub rows: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct BuildReport {
    pub config: RunConfig,
    pub kind: &'static str,
    pub family: FamilyNames,
    pub core_vertices: usize,
    pub remainder_vertices: Vec<usize>,
    pub end_map: Vec<Vec<usize>>,
    pub complete: bool,
    pub tails: Vec<TailRecord>,
    pub family_checks: CheckReport,
    pub embedding: CheckReport,
    pub remainder: CheckReport,
    pub smallest_closed: CheckReport,
    pub relation: RelationDump,
}

impl BuildReport {
    pub fn passed(&self) -> bool {
        self.embedding.passed() && self.remainder.passed()
    }
}

/// Runs every post-build check of a compactification.
pub fn build_report(
    config: &RunConfig,
    space: &dyn SampledSpace,
    comp: &Compactification,
) -> BuildReport {
    let opts = ValidateOptions {
        tail_depth: config.tail_depth,
        sampling: config.sampling(),
        ..ValidateOptions::default()
    };
    let remainder = match remainder_is_ordered(comp) {
        Ok(r) => r,
        Err(e) => {
            let mut r = CheckReport::new();
            r.fail(
                "remainder_ordered",
                Witness::Note {
                    note: e.to_string(),
                },
            );
            r
        }
    };
    BuildReport {
        config: config.clone(),
        kind: "H-compactification",
        family: FamilyNames {
            h: comp.family.h_names(),
            c: comp.family.c_names(),
        },
        core_vertices: comp.core_ids().count(),
        remainder_vertices: comp.remainder_ids(),
        end_map: comp.end_map.clone(),
        complete: comp.is_complete(),
        tails: comp.tails.clone(),
        family_checks: validate_family(space, &comp.family, config.resolution, &opts),
        embedding: verify_preorder_embedding(space, comp, &config.sampling(), DELTA_EMBED),
        remainder,
        smallest_closed: smallest_closed_preorder_diagnostic(space, comp),
        relation: RelationDump {
            n: comp.induced.n(),
            rows: relation_hex(&comp.induced),
        },
    }
}

/// Writes `vertices.csv`, `preorder.dot` and `report.json` into `dir`.
pub fn write_build(dir: &Path, comp: &Compactification, report: &BuildReport) -> Result<()> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join("vertices.csv"), vertices_csv(comp)?)?;
    fs::write(dir.join("preorder.dot"), preorder_dot(comp))?;
    let mut json = serde_json::to_string_pretty(report)?;
    json.push('\n');
    fs::write(dir.join("report.json"), json)?;
    Ok(())
}

/// Reads the configuration stored in a build directory.
pub fn read_config(dir: &Path) -> Result<RunConfig> {
    #[derive(Deserialize)]
    struct Stored {
        config: RunConfig,
    }
    let text = fs::read_to_string(dir.join("report.json"))?;
    Ok(serde_json::from_str::<Stored>(&text)?.config)
}

/// One PASS/FAIL line of a demo.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DemoLine {
    pub label: String,
    pub passed: bool,
}

impl DemoLine {
    fn new(label: impl Into<String>, passed: bool) -> Self {
        Self {
            label: label.into(),
            passed,
        }
    }
}

impl std::fmt::Display for DemoLine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}: {}",
            self.label,
            if self.passed { "PASS" } else { "FAIL" }
        )
    }
}

fn nat_build(class: TailClassSelector, resolution: usize) -> Result<Compactification> {
    let params = BuildParams::default().with_resolution(resolution);
    let fam = build_family(
        &NatDiscrete,
        &FamilySpec::Bumps(class),
        resolution,
        params.tail_depth,
    )?;
    compactify(&NatDiscrete, &fam, &params)
}

fn found(a: &Compactification, b: &Compactification) -> Result<bool> {
    Ok(attempt_domination(a, b)?.found.is_some())
}

pub fn run_demo(name: DemoName, resolution: usize) -> Result<Vec<DemoLine>> {
    let mut lines = Vec::new();
    match name {
        DemoName::NoSmallest => {
            let res = resolution.min(16);
            let c = nat_build(TailClassSelector::C, res)?;
            let minus = nat_build(TailClassSelector::CMinus, res)?;
            let plus = nat_build(TailClassSelector::CPlus, res)?;
            lines.push(DemoLine::new(
                "C-comp dominates C⁻-comp",
                found(&c, &minus)?,
            ));
            lines.push(DemoLine::new("C-comp dominates C⁺-comp", found(&c, &plus)?));
            lines.push(DemoLine::new(
                "C⁻↔C⁺ mutual non-domination",
                !found(&minus, &plus)? && !found(&plus, &minus)?,
            ));
        }
        DemoName::OnePointSuite => {
            use crate::compact::CorePosition;
            for (class, label, want) in [
                (
                    TailClassSelector::C,
                    "C-comp: added point incomparable to all",
                    CorePosition::Incomparable,
                ),
                (
                    TailClassSelector::CMinus,
                    "C⁻-comp: added point below all",
                    CorePosition::Bottom,
                ),
                (
                    TailClassSelector::CPlus,
                    "C⁺-comp: added point above all",
                    CorePosition::Top,
                ),
            ] {
                let comp = nat_build(class, resolution.min(32))?;
                let rem = comp.remainder_ids();
                let ok = rem.len() == 1 && comp.position_against_core(rem[0]) == want;
                lines.push(DemoLine::new(label, ok));
            }
        }
        DemoName::NachbinDiagram => {
            let params = BuildParams::default().with_resolution(resolution);
            let r = nachbin_pipeline(&RealLineMirror, &FamilySpec::Default, &params)?;
            let iso = [
                "projection_within_quantum",
                "block_map_well_defined",
                "block_map_bijective",
                "order_isomorphism",
                "remainder_to_remainder",
                "h_coordinates_match",
            ];
            lines.push(DemoLine::new(
                "path-A/path-B order isomorphism",
                iso.iter().all(|c| r.is_pass(c)),
            ));
            lines.push(DemoLine::new(
                "quotient antisymmetry",
                r.is_pass("quotient_antisymmetric"),
            ));
        }
        DemoName::Misner => {
            let config = RunConfig {
                resolution,
                ..RunConfig::new("misner-strip", "default")
            };
            let (space, comp) = config.build()?;
            let report = build_report(&config, space.as_ref(), &comp);
            lines.push(DemoLine::new(
                "default family represents the causal order on ≥ 99% of pairs",
                report.family_checks.passed(),
            ));
            lines.push(DemoLine::new(
                "preorder embedding",
                report.embedding.passed(),
            ));
            lines.push(DemoLine::new(
                "remainder ordered",
                report.remainder.passed(),
            ));
            let rem = comp.remainder_ids();
            let collapsed = rem.len() == 1
                && comp.position_against_core(rem[0]) == crate::compact::CorePosition::Top;
            lines.push(DemoLine::new(
                "t → 0 end collapses to a top point",
                collapsed,
            ));
            lines.push(DemoLine::new(
                "null-curve sweep agrees with the closed form",
                misner_sweep_mismatches(resolution.min(64)) == 0,
            ));
        }
    }
    Ok(lines)
}

/// Disagreements between the swept and closed-form relation on a
/// `cells × cells` grid uniform in `−log₂ t` over `[0, 4]` and in angle.
pub fn misner_sweep_mismatches(cells: usize) -> usize {
    let sample = MisnerStrip.sample(cells, 3);
    let ts: Vec<f64> = sample.core.iter().step_by(cells).map(|p| p.0[0]).collect();
    let reach = sweep_reachability(&ts, cells, 16);
    let points: &[Point] = &sample.core;
    let mut mismatches = 0;
    for (i, p) in points.iter().enumerate() {
        for (j, q) in points.iter().enumerate() {
            if reach[i][j] != causal_le(p, q) {
                mismatches += 1;
            }
        }
    }
    mismatches
}

fn check_finite(path: &Path, out: &mut dyn Write) -> Result<i32> {
    let text = fs::read_to_string(path)?;
    let sp = parse_space(&text)?;
    let mut report = CheckReport::new();
    report.merge("closed", sp.graph_is_closed());
    report.merge("t1", sp.is_t1_preordered());
    let q = sp.quotient_space();
    let mut qr = CheckReport::new();
    qr.record(
        "quotient_t2_ordered",
        q.graph_closure_witness()
            .or(q.preorder().antisymmetry_witness())
            .map(|(left, right)| Witness::Pair { left, right }),
    );
    report.merge("quotient", qr);
    let fns: Vec<Vec<f64>> = enumerate_isotone_functions(&sp, 1, DEFAULT_ENUMERATION_BUDGET)?
        .iter()
        .map(ChainFunction::to_reals)
        .collect();
    report.metric("isotone_functions", fns.len() as f64);
    report.merge(
        "representation",
        crate::finite::representation_check(&sp, &fns)?,
    );
    writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
    Ok(if report.passed() {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    })
}

fn compactify_cmd(args: &CompactifyArgs, out: &mut dyn Write) -> Result<i32> {
    let config = RunConfig::from(args);
    let (space, comp) = config.build()?;
    let report = build_report(&config, space.as_ref(), &comp);
    write_build(&args.out, &comp, &report)?;
    writeln!(
        out,
        "{}: {} core vertices, {} remainder vertices, embedding {}, remainder {}",
        comp.label(),
        comp.core_ids().count(),
        comp.remainder_ids().len(),
        status(report.embedding.passed()),
        status(report.remainder.passed()),
    )?;
    if let Some(t) = comp.first_divergent() {
        writeln!(
            out,
            "incomplete: end {} thread {} is not Cauchy (diameter {:.3e})",
            t.end, t.thread, t.diameter
        )?;
    }
    Ok(if report.passed() {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    })
}

fn status(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn print_map(out: &mut dyn Write, map: &DominationMap) -> Result<()> {
    writeln!(out, "{} -> {}", map.source, map.target)?;
    for c in &map.checks.checks {
        writeln!(out, "  {}: {}", c.name, status(c.passed))?;
    }
    Ok(())
}

fn dominate_cmd(dir_a: &Path, dir_b: &Path, out: &mut dyn Write) -> Result<i32> {
    let ca = read_config(dir_a)?;
    let cb = read_config(dir_b)?;
    if ca.space != cb.space {
        return Err(Error::Incompatible(format!(
            "spaces {} and {}",
            ca.space, cb.space
        )));
    }
    let (_, a) = ca.build()?;
    let (_, b) = cb.build()?;
    let hb = b.family.h_names();
    let ha = a.family.h_names();
    let map = if hb.iter().all(|n| ha.contains(n)) {
        Some(dominate(&a, &b)?)
    } else {
        let attempt = attempt_domination(&a, &b)?;
        for r in &attempt.rejected {
            writeln!(out, "rejected {:?}: {}", r.assignment, r.failed.join(", "))?;
        }
        attempt.found
    };
    match map {
        Some(m) => {
            print_map(out, &m)?;
            writeln!(out, "domination: {}", status(m.passed()))?;
            Ok(if m.passed() {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            })
        }
        None => {
            writeln!(out, "domination: FAIL (no valid map)")?;
            Ok(EXIT_CHECK_FAILED)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Incomplete { .. } => EXIT_CHECK_FAILED,
        _ => EXIT_USAGE,
    }
}

/// Parses `args` (including the program name) and runs the command,
/// writing to `out` and `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    let result = match &cli.command {
        Command::CheckFinite { path } => check_finite(path, out),
        Command::Compactify(args) => compactify_cmd(args, out),
        Command::Dominate { dir_a, dir_b } => dominate_cmd(dir_a, dir_b, out),
        Command::Demo { name, resolution } => run_demo(*name, *resolution).and_then(|lines| {
            for l in &lines {
                writeln!(out, "{l}")?;
            }
            Ok(if lines.iter().all(|l| l.passed) {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            })
        }),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
