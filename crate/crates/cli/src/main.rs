//! `jpong`: demand synthesis, weather preparation and joint power-gas
//! capacity expansion runs.
//!
//! Exit codes: 0 success, 2 usage or config, 3 input data, 4 model build,
//! 5 solver failure, 6 no solution (infeasible, unbounded, ...), 7 audit
//! violations, 8 output, 127 solver unavailable.

mod config;
mod pipeline;
mod prep;

use std::path::{Path, PathBuf};
use std::process::{Child, Command, ExitCode};

use clap::{Args, Parser, Subcommand};
use jpong_core::fixtures;
use jpong_core::model::{FlexSpec, ScenarioSpec};
use jpong_milp::{FileFormat, SolverCommand};

use config::RunConfig;
use pipeline::{log, Code, Failure, Stage};

#[derive(Parser, Debug)]
#[command(name = "jpong", version, about = "Joint power and gas capacity expansion runner")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Clone, Default)]
struct Opts {
    /// TOML run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Named scenario from the config's `[scenarios.<name>]` tables.
    #[arg(long, global = true)]
    scenario: Option<String>,
    /// Emissions reduction target in [0, 1].
    #[arg(long, global = true)]
    emissions_target: Option<f64>,
    /// Methane-leakage accounting.
    #[arg(long, global = true)]
    methane: bool,
    /// Remove CCS plants from the candidate set.
    #[arg(long, global = true)]
    no_ccs: bool,
    /// Transport flexibility windows in hours, `T_ADV,T_DEF`.
    #[arg(long, global = true, value_parser = parse_flex)]
    flex: Option<FlexSpec>,
    /// Replace rep_days.csv with N evenly spaced representative days.
    #[arg(long, global = true)]
    rep_days: Option<usize>,
    /// Output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Case directory (network tables, demand series, rep_days.csv).
    #[arg(long, global = true)]
    case: Option<PathBuf>,
    /// Solver command template; overrides $JPONG_SOLVER and the config.
    #[arg(long, global = true)]
    solver: Option<String>,
    /// Relative MIP gap handed to the solver.
    #[arg(long, global = true)]
    mip_gap: Option<f64>,
    /// Model file format for the solver.
    #[arg(long, global = true, value_parser = parse_format)]
    format: Option<FileFormat>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Write a bundled synthetic case (toy, spike, import, ldes, ne).
    Example { name: String },
    /// Zonal electricity and gas demand from archetype loads.
    SynthDemand {
        #[arg(long)]
        archetypes: Option<PathBuf>,
        #[arg(long)]
        weights: Option<PathBuf>,
        #[arg(long)]
        temperatures: Option<PathBuf>,
        /// RF, ME, MX, HE or HX.
        #[arg(long)]
        electrification: Option<String>,
    },
    /// Apply monthly climate deltas to an hourly weather file.
    Morph {
        #[arg(long)]
        weather: Option<PathBuf>,
        #[arg(long)]
        deltas: Option<PathBuf>,
    },
    /// Zonal wind capacity factors from site speeds and temperatures.
    Windcf {
        #[arg(long)]
        sites: Option<PathBuf>,
        #[arg(long)]
        zones: Option<PathBuf>,
        #[arg(long)]
        speeds: Option<PathBuf>,
        #[arg(long)]
        temperatures: Option<PathBuf>,
    },
    /// Build the model and write it in LP or MPS form.
    Build,
    /// Build and solve; writes the model and the solution file.
    Solve,
    /// Check a solution file against the rebuilt model.
    Audit {
        #[arg(long)]
        solution: Option<PathBuf>,
    },
    /// Cost, capacity, gas and emissions tables from a solution file.
    Report {
        #[arg(long)]
        solution: Option<PathBuf>,
    },
    /// Build, solve, audit and report.
    Run,
    /// Run one process per emissions target, at most `jobs` at a time.
    Sweep {
        /// Comma-separated emissions targets.
        #[arg(long, value_delimiter = ',', required = true)]
        targets: Vec<f64>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

fn parse_flex(s: &str) -> Result<FlexSpec, String> {
    let (a, d) = s.split_once(',').ok_or("expected T_ADV,T_DEF")?;
    let n = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("`{x}`: {e}"));
    Ok(FlexSpec {
        advance: n(a)?,
        defer: n(d)?,
    })
}

fn parse_format(s: &str) -> Result<FileFormat, String> {
    match s.to_ascii_lowercase().as_str() {
        "lp" => Ok(FileFormat::Lp),
        "mps" => Ok(FileFormat::Mps),
        _ => Err(format!("unknown format `{s}` (lp, mps)")),
    }
}

/// Config file plus command-line overrides.
struct Ctx {
    opts: Opts,
    cfg: RunConfig,
}

impl Ctx {
    fn new(opts: Opts) -> Stage<Self> {
        let cfg = match &opts.config {
            Some(p) => RunConfig::read(p).map_err(|e| Failure::new(Code::Usage, e))?,
            None => RunConfig::default(),
        };
        Ok(Ctx { opts, cfg })
    }

    fn out(&self) -> PathBuf {
        self.opts
            .out
            .clone()
            .or_else(|| self.cfg.out.clone())
            .unwrap_or_else(|| PathBuf::from("out"))
    }

    fn case(&self) -> Stage<PathBuf> {
        self.opts
            .case
            .clone()
            .or_else(|| self.cfg.case.clone())
            .ok_or_else(|| Failure::new(Code::Usage, "no case directory (--case or `case` in the config)"))
    }

    fn scenario(&self) -> Stage<ScenarioSpec> {
        let o = &self.opts;
        let mut s = self
            .cfg
            .scenario(o.scenario.as_deref())
            .map_err(|e| Failure::new(Code::Usage, e))?;
        if let Some(z) = o.emissions_target {
            s.emissions_target = z;
        }
        if o.methane {
            s.methane_accounting = true;
        }
        if o.no_ccs {
            s.allow_ccs = false;
        }
        if let Some(f) = o.flex {
            s.transport_flex = Some(f);
        }
        s.validate().map_err(|e| Failure::new(Code::Usage, e))?;
        Ok(s)
    }

    fn solver(&self) -> Stage<SolverCommand> {
        let sc = &self.cfg.solver;
        let env = std::env::var(jpong_milp::solver::SOLVER_ENV).ok().filter(|t| !t.trim().is_empty());
        let mut cmd = match (&self.opts.solver, env, &sc.command) {
            (Some(t), _, _) => SolverCommand::new(t.clone()),
            (None, Some(t), _) => SolverCommand::new(t),
            (None, None, Some(t)) => SolverCommand::new(t.clone()),
            (None, None, None) => SolverCommand::locate().map_err(|e| Failure::new(Code::SolverUnavailable, e))?,
        };
        cmd.solution_format = sc.solution_format;
        cmd = cmd
            .with_format(self.opts.format.unwrap_or(sc.file_format))
            .with_mip_gap(self.opts.mip_gap.unwrap_or(sc.mip_gap));
        Ok(cmd)
    }

    fn rep_days(&self) -> Option<usize> {
        self.opts.rep_days.or(self.cfg.rep_days)
    }

    fn tolerance(&self) -> f64 {
        self.cfg.tolerances.audit
    }
}

fn required(flag: Option<PathBuf>, from_cfg: &Option<PathBuf>, name: &str) -> Stage<PathBuf> {
    flag.or_else(|| from_cfg.clone())
        .ok_or_else(|| Failure::new(Code::Usage, format!("missing --{name}")))
}

fn run(cli: Cli) -> Stage<()> {
    let ctx = Ctx::new(cli.opts)?;
    let out = ctx.out();
    match cli.cmd {
        Cmd::Example { name } => {
            let f = fixtures::by_name(&name).ok_or_else(|| {
                Failure::new(Code::Usage, format!("unknown example `{name}` ({})", fixtures::NAMES.join(", ")))
            })?;
            f.write(&out).map_err(|e| pipeline::output_err(&out, e))?;
            log("example", &[("name", name), ("out", out.display().to_string())]);
        }
        Cmd::SynthDemand {
            archetypes,
            weights,
            temperatures,
            electrification,
        } => {
            let d = &ctx.cfg.demand;
            let scenario = electrification.or_else(|| d.scenario.clone());
            prep::synth_demand(
                &required(archetypes, &d.archetypes, "archetypes")?,
                &required(weights, &d.weights, "weights")?,
                &required(temperatures, &d.temperatures, "temperatures")?,
                scenario.as_deref(),
                &out,
            )?;
        }
        Cmd::Morph { weather, deltas } => {
            let w = &ctx.cfg.weather;
            prep::morph_weather(
                &required(weather, &w.weather, "weather")?,
                &required(deltas, &w.deltas, "deltas")?,
                &out,
            )?;
        }
        Cmd::Windcf {
            sites,
            zones,
            speeds,
            temperatures,
        } => {
            let w = &ctx.cfg.wind;
            let (sites, zones) = (required(sites, &w.sites, "sites")?, required(zones, &w.zones, "zones")?);
            let speeds = required(speeds, &w.speeds, "speeds")?;
            let temperatures = required(temperatures, &w.temperatures, "temperatures")?;
            prep::wind_cf(
                &prep::WindInputs {
                    sites: &sites,
                    zones: &zones,
                    speeds: &speeds,
                    temperatures: &temperatures,
                    onshore_curve: w.onshore_curve.as_deref(),
                    offshore_curve: w.offshore_curve.as_deref(),
                },
                &out,
            )?;
        }
        Cmd::Build => {
            let (inputs, sc) = (pipeline::load_case(&ctx.case()?, ctx.rep_days())?, ctx.scenario()?);
            let p = pipeline::build(&inputs, &sc)?;
            let fmt = ctx.opts.format.unwrap_or(ctx.cfg.solver.file_format);
            pipeline::write_model(&p, fmt, &out)?;
        }
        Cmd::Solve => {
            let (inputs, sc) = (pipeline::load_case(&ctx.case()?, ctx.rep_days())?, ctx.scenario()?);
            let solver = ctx.solver()?;
            let p = pipeline::build(&inputs, &sc)?;
            pipeline::solve(&p, &solver, &out)?;
        }
        Cmd::Audit { solution } => {
            let (inputs, sc) = (pipeline::load_case(&ctx.case()?, ctx.rep_days())?, ctx.scenario()?);
            let p = pipeline::build(&inputs, &sc)?;
            let sol = pipeline::read_solution(&solution.unwrap_or_else(|| pipeline::solution_path(&out)))?;
            pipeline::audit_stage(&p, &sol, ctx.tolerance(), &out)?;
        }
        Cmd::Report { solution } => {
            let (inputs, sc) = (pipeline::load_case(&ctx.case()?, ctx.rep_days())?, ctx.scenario()?);
            let p = pipeline::build(&inputs, &sc)?;
            let sol = pipeline::read_solution(&solution.unwrap_or_else(|| pipeline::solution_path(&out)))?;
            pipeline::report(&p, &inputs, &sc, &sol, &out)?;
        }
        Cmd::Run => {
            let (inputs, sc) = (pipeline::load_case(&ctx.case()?, ctx.rep_days())?, ctx.scenario()?);
            let solver = ctx.solver()?;
            let p = pipeline::build(&inputs, &sc)?;
            let sol = pipeline::solve(&p, &solver, &out)?;
            pipeline::audit_stage(&p, &sol, ctx.tolerance(), &out)?;
            pipeline::report(&p, &inputs, &sc, &sol, &out)?;
        }
        Cmd::Sweep { targets, jobs } => sweep(&targets, jobs.max(1), &out)?,
    }
    Ok(())
}

/// Re-invokes this executable with `run` for each target. The child
/// inherits every global flag except `--out` and `--emissions-target`.
fn sweep(targets: &[f64], jobs: usize, out: &Path) -> Stage<()> {
    let exe = std::env::current_exe().map_err(|e| Failure::new(Code::Usage, e))?;
    let mut base: Vec<String> = Vec::new();
    let mut args = std::env::args().skip(1).peekable();
    while let Some(a) = args.next() {
        match a.as_str() {
            "sweep" => {}
            "--out" | "--emissions-target" | "--targets" | "--jobs" => {
                args.next();
            }
            _ if a.starts_with("--out=")
                || a.starts_with("--emissions-target=")
                || a.starts_with("--targets=")
                || a.starts_with("--jobs=") => {}
            _ => base.push(a),
        }
    }
    let mut running: Vec<(f64, Child)> = Vec::new();
    let mut worst: Option<(i32, f64)> = None;
    let wait = |(z, mut child): (f64, Child), worst: &mut Option<(i32, f64)>| -> Stage<()> {
        let status = child.wait().map_err(|e| Failure::new(Code::Output, e))?;
        let code = status.code().unwrap_or(1);
        log("sweep", &[("target", z.to_string()), ("exit", code.to_string())]);
        if code != 0 && worst.is_none() {
            *worst = Some((code, z));
        }
        Ok(())
    };
    for &z in targets {
        if running.len() >= jobs {
            wait(running.remove(0), &mut worst)?;
        }
        let dir = out.join(format!("target_{z}"));
        let child = Command::new(&exe)
            .args(&base)
            .arg("run")
            .arg("--emissions-target")
            .arg(z.to_string())
            .arg("--out")
            .arg(&dir)
            .spawn()
            .map_err(|e| Failure::new(Code::Usage, e))?;
        running.push((z, child));
    }
    for r in running {
        wait(r, &mut worst)?;
    }
    match worst {
        None => Ok(()),
        Some((code, z)) => Err(Failure {
            code: code_from(code),
            message: format!("run for target {z} exited with {code}"),
        }),
    }
}

fn code_from(c: i32) -> Code {
    match c {
        2 => Code::Usage,
        3 => Code::Input,
        4 => Code::Build,
        5 => Code::SolverFailed,
        6 => Code::NoSolution,
        7 => Code::Audit,
        127 => Code::SolverUnavailable,
        _ => Code::Output,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            log("error", &[("code", (f.code as i32).to_string()), ("message", f.message.clone())]);
            ExitCode::from(f.code as u8)
        }
    }
}
