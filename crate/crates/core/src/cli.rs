//! Command-line front end. [`run`] writes to the supplied streams and returns
//! the process exit code:
//! 0 success, 1 invalid input, 2 undecidable under the cost cap,
//! 3 verification mismatch.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::arith::Nat;
use crate::error::{Error, Result};
use crate::families::{generate, FamilyId, FamilyInstance, FamilyVerdict};
use crate::golden::{render_table, verify_paper};
use crate::report::{analyze, Method, VerifyMode, WpsReport, DEFAULT_COST_CAP};
use crate::search::{run_search, ClassFilter, Objective, SearchConfig, SearchOutcome};
use crate::wps::Weights;

pub const COST_CAP_ENV: &str = "FANO_WPS_COST_CAP";

#[derive(Debug, Parser)]
#[command(name = "fano-wps", version, about = "Exact analysis of Fano weighted projective spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Analyze one weighted projective space.
    Analyze {
        /// Comma-separated weights, e.g. 33,22,6,5 (order does not matter).
        #[arg(long)]
        weights: String,
        #[arg(long, env = COST_CAP_ENV, default_value_t = DEFAULT_COST_CAP)]
        cost_cap: u64,
        #[arg(long)]
        json: bool,
    },
    /// Generate and verify a member of an extremal family or a sporadic example.
    Family {
        #[arg(long)]
        name: String,
        #[arg(long)]
        dim: usize,
        #[arg(long, value_enum, default_value_t = VerifyArg::Auto)]
        verify: VerifyArg,
        #[arg(long, env = COST_CAP_ENV, default_value_t = DEFAULT_COST_CAP)]
        cost_cap: u64,
        #[arg(long)]
        json: bool,
    },
    /// Exhaustive search for the extremal space within a bound on h.
    Search {
        #[arg(long)]
        dim: usize,
        #[arg(long = "class", value_enum)]
        class_filter: ClassArg,
        #[arg(long, value_enum, default_value_t = ObjectiveArg::FanoIndex)]
        objective: ObjectiveArg,
        #[arg(long)]
        sum_max: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long, env = COST_CAP_ENV, default_value_t = DEFAULT_COST_CAP)]
        cost_cap: u64,
    },
    /// Reproduce the golden table of published values.
    VerifyPaper {
        #[arg(long, default_value_t = 10)]
        max_dim: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum VerifyArg {
    Auto,
    Brute,
    Certificate,
}

impl From<VerifyArg> for VerifyMode {
    fn from(v: VerifyArg) -> Self {
        match v {
            VerifyArg::Auto => VerifyMode::Auto,
            VerifyArg::Brute => VerifyMode::Brute,
            VerifyArg::Certificate => VerifyMode::Certificate,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ClassArg {
    Canonical,
    Terminal,
    GorensteinCanonical,
    GorensteinTerminal,
}

impl From<ClassArg> for ClassFilter {
    fn from(c: ClassArg) -> Self {
        match c {
            ClassArg::Canonical => ClassFilter::Canonical,
            ClassArg::Terminal => ClassFilter::Terminal,
            ClassArg::GorensteinCanonical => ClassFilter::GorensteinCanonical,
            ClassArg::GorensteinTerminal => ClassFilter::GorensteinTerminal,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ObjectiveArg {
    #[value(alias = "index")]
    FanoIndex,
    Volume,
}

impl From<ObjectiveArg> for Objective {
    fn from(o: ObjectiveArg) -> Self {
        match o {
            ObjectiveArg::FanoIndex => Objective::FanoIndex,
            ObjectiveArg::Volume => Objective::Volume,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli, out, err),
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{}", rendered);
            } else {
                let _ = write!(err, "{}", rendered);
            }
            code
        }
    }
}

pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match cli.command {
        Command::Analyze { weights, cost_cap, json } => cmd_analyze(&weights, cost_cap, json, out, err),
        Command::Family { name, dim, verify, cost_cap, json } => {
            cmd_family(&name, dim, verify.into(), cost_cap, json, out)
        }
        Command::Search { dim, class_filter, objective, sum_max, workers, csv, cost_cap } => {
            let config = SearchConfig {
                dim,
                class_filter: class_filter.into(),
                objective: objective.into(),
                sum_max,
                cost_cap,
                worker_count: workers,
            };
            cmd_search(&config, csv.as_deref(), out, err)
        }
        Command::VerifyPaper { max_dim } => cmd_verify_paper(max_dim, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e);
            e.exit_code()
        }
    }
}

#[derive(Serialize)]
struct NotWellFormed<'a> {
    weights: &'a Weights,
    well_formed: bool,
}

fn method_tag(m: Method) -> &'static str {
    match m {
        Method::Trivial => "trivial",
        Method::Brute => "brute",
        Method::Certificate => "certificate",
    }
}

pub fn render_report(r: &WpsReport) -> String {
    let mut s = String::new();
    s.push_str(&format!("{}\n", r.name));
    s.push_str(&format!("well_formed={}\n", r.well_formed));
    s.push_str(&format!("h={}\n", r.h));
    s.push_str(&format!("fano_index={}\n", r.fano_index));
    s.push_str(&format!("gorenstein={}\n", r.gorenstein));
    s.push_str(&format!("volume={}\n", r.volume));
    for p in &r.point_reports {
        let sing = p.singularity.as_ref().map_or("smooth point".to_string(), |s| s.to_string());
        s.push_str(&format!(
            "point {} weight {}: {} {}{} [{}]\n",
            p.point,
            p.weight,
            sing,
            if p.lower_bound { ">=" } else { "" },
            p.class,
            method_tag(p.method)
        ));
    }
    s.push_str(&format!("overall={}{}\n", if r.lower_bound { ">=" } else { "" }, r.overall_class));
    s
}

pub fn cmd_analyze(weights: &str, cost_cap: u64, json: bool, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let w: Weights = weights.parse()?;
    let w = w.canonical_form();
    if !w.is_well_formed() {
        if json {
            emit(out, &serde_json::to_string_pretty(&NotWellFormed { weights: &w, well_formed: false }).expect("json"))?;
        } else {
            emit(out, &format!("{}\nwell_formed=false\n", w.display_name()))?;
        }
        let _ = writeln!(err, "error: {} is not well-formed", w.display_name());
        return Ok(1);
    }
    let report = analyze(&w, &BTreeMap::new(), &Nat::from(cost_cap), VerifyMode::Auto)?;
    if json {
        emit(out, &report.to_json())?;
        emit(out, "\n")?;
    } else {
        emit(out, &render_report(&report))?;
    }
    Ok(0)
}

#[derive(Serialize)]
struct FamilyOutput<'a> {
    instance: &'a FamilyInstance,
    verify_mode: VerifyMode,
    verdict: &'a FamilyVerdict,
    passed: bool,
}

pub fn cmd_family(name: &str, dim: usize, mode: VerifyMode, cost_cap: u64, json: bool, out: &mut dyn Write) -> Result<i32> {
    let id: FamilyId = name.parse()?;
    let inst = generate(&id, dim)?;
    let cap = Nat::from(cost_cap);
    let mode = inst.resolve_mode(mode, &cap);
    let verdict = inst.verify(mode, &cap)?;
    let passed = verdict.passed();
    if json {
        let doc = FamilyOutput { instance: &inst, verify_mode: mode, verdict: &verdict, passed };
        emit(out, &serde_json::to_string_pretty(&doc).expect("json"))?;
        emit(out, "\n")?;
    } else {
        let mut s = String::new();
        s.push_str(&format!("family={} dim={}\n", inst.id, inst.dim));
        s.push_str(&format!("weights={}\n", inst.weights.display_name()));
        s.push_str(&format!("h={}\n", inst.weights.weight_sum()));
        if let Some(i) = &inst.predicted_index {
            s.push_str(&format!("predicted_index={} match={}\n", i, verdict.index_matches == Some(true)));
        }
        if let Some(v) = &inst.predicted_volume {
            s.push_str(&format!("predicted_volume={} match={}\n", v, verdict.volume_matches == Some(true)));
        } else {
            s.push_str(&format!("volume={}\n", inst.weights.anticanonical_volume()));
        }
        for note in &inst.notes {
            s.push_str(&format!("note: {}\n", note));
        }
        for (p, cert) in &inst.certificates {
            s.push_str(&format!(
                "certificate point {}: {}\n",
                p,
                serde_json::to_string(cert).expect("json")
            ));
        }
        if let Some(c) = &verdict.classification {
            for p in &c.points {
                s.push_str(&format!(
                    "verdict point {} weight {}: {}{} via {}\n",
                    p.point,
                    p.weight,
                    if p.lower_bound { ">=" } else { "" },
                    p.class,
                    method_tag(p.method)
                ));
            }
            s.push_str(&format!("overall={}{}\n", if c.lower_bound { ">=" } else { "" }, c.overall_class));
        }
        s.push_str(&format!("verification={}\n", if passed { "pass" } else { "FAIL" }));
        emit(out, &s)?;
    }
    Ok(if passed { 0 } else { 3 })
}

pub fn write_csv(outcome: &SearchOutcome, path: &std::path::Path) -> Result<()> {
    let io_err = |e: &dyn std::fmt::Display| Error::invalid(format!("cannot write {}: {}", path.display(), e));
    let mut w = csv::Writer::from_path(path).map_err(|e| io_err(&e))?;
    w.write_record(["weights", "h", "class", "gorenstein", "fano_index", "volume_num", "volume_den"])
        .map_err(|e| io_err(&e))?;
    for row in &outcome.rows {
        let weights = row.weights.iter().map(u64::to_string).collect::<Vec<_>>().join(";");
        w.write_record([
            weights,
            row.h.to_string(),
            row.class.to_string(),
            row.gorenstein.to_string(),
            row.h.to_string(),
            row.volume.numer().to_string(),
            row.volume.denom().to_string(),
        ])
        .map_err(|e| io_err(&e))?;
    }
    w.flush().map_err(|e| io_err(&e))?;
    Ok(())
}

pub fn cmd_search(config: &SearchConfig, csv_path: Option<&std::path::Path>, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let _ = writeln!(
        err,
        "searching dim={} class={} objective={} h<={} with {} worker(s)",
        config.dim, config.class_filter, config.objective, config.sum_max, config.worker_count
    );
    let report = |worker: usize, rows: u64| eprintln!("worker {} finished: {} tuples classified", worker, rows);
    let outcome = run_search(config, Some(&report))?;
    if let Some(path) = csv_path {
        write_csv(&outcome, path)?;
        let _ = writeln!(err, "wrote {} rows to {}", outcome.rows.len(), path.display());
    }
    let r = &outcome.record;
    emit(
        out,
        &format!(
            "{}\nenumerated={} classified={} (evidence within bound h <= {})\n",
            r.summary(),
            r.tuples_enumerated,
            r.tuples_classified,
            config.sum_max
        ),
    )?;
    Ok(0)
}

pub fn cmd_verify_paper(max_dim: usize, out: &mut dyn Write) -> Result<i32> {
    let rows = verify_paper(max_dim)?;
    emit(out, &render_table(&rows))?;
    Ok(if rows.iter().all(|r| r.pass) { 0 } else { 3 })
}

fn emit(out: &mut dyn Write, s: &str) -> Result<()> {
    out.write_all(s.as_bytes())
        .map_err(|e| Error::invalid(format!("cannot write output: {}", e)))
}
