//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails. Runs without the libtest harness so the lines show
//! up in plain `cargo test` output.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use jpong_core::analytics::{decompose_costs, emissions, gas_summary};
use jpong_core::demand::{cop_heating, heating_capacity, peak_event_length, HeatPumpSpec, SizingMode};
use jpong_core::fixtures::{self, one_node, Fixture};
use jpong_core::model::{assemble, CostCategory, FlexSpec, ModelInputs, ScenarioSpec, DAYS};
use jpong_core::morph::{months_of_year, morph, MonthDelta, WeatherSeries};
use jpong_core::network::{annualize, load_network, npv_offset};
use jpong_core::windcf::{cf_series, PowerCurve, WindSite};
use jpong_milp::{audit, Program, Solution, SolverCommand, VarKind, ViolationKind};

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

const AUDIT_TOL: f64 = 1e-6;

fn highs() -> SolverCommand {
    let script = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../tools/highs_solve.py");
    SolverCommand::highs(&script).with_mip_gap(0.0)
}

/// Shared scratch directory and the solutions collected along the way.
struct Ctx {
    dir: tempfile::TempDir,
    samples: Vec<Solution>,
}

impl Ctx {
    fn load(&self, f: &Fixture) -> Result<ModelInputs, String> {
        f.load(&self.dir.path().join(&f.name)).map_err(|e| format!("{}: {e}", f.name))
    }

    fn solve(&mut self, inputs: &ModelInputs, sc: &ScenarioSpec, stem: &str) -> Result<(Program, Solution), String> {
        let p = assemble(inputs, sc).map_err(|e| format!("{stem}: {e}"))?;
        let sol = self.solve_program(&p, stem)?;
        ensure!(sol.status.has_values(), "{stem}: status {}", sol.status.as_str());
        self.samples.push(sol.clone());
        Ok((p, sol))
    }

    fn solve_program(&self, p: &Program, stem: &str) -> Result<Solution, String> {
        highs().solve_in(p, self.dir.path(), stem).map_err(|e| format!("{stem}: {e}"))
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

fn winter_spec(capacity: f64, sizing_temp: f64) -> HeatPumpSpec {
    HeatPumpSpec {
        capacity,
        sizing_temp,
        mode: SizingMode::Winter,
        cooling_capacity: capacity,
        switchover: None,
    }
}

fn heat_pump_formulas(_: &mut Ctx) -> Check {
    let start = Instant::now();
    ensure!(cop_heating(0.0) == 2.73, "cop_heating(0) = {}", cop_heating(0.0));
    ensure!(cop_heating(-20.0) == 1.83, "cop_heating(-20) = {}", cop_heating(-20.0));
    let mut worst: f64 = 0.0;
    for c in [1.0, 3.5, 10.0, 17.25] {
        for ts in [-25.0, -15.0, -7.5, 0.0] {
            let got = heating_capacity(ts + 10.0, &winter_spec(c, ts));
            worst = worst.max(rel(got, 1.153 * c));
        }
    }
    ensure!(worst <= 1e-12, "capacity at sizing+10 off by {worst:e} relative");
    let t = start.elapsed();
    ensure!(t < Duration::from_secs(1), "took {t:?}");
    Ok(format!("cop 2.73/1.83, capacity ratio err {worst:e}, {t:?}"))
}

fn crf_and_npv(_: &mut Ctx) -> Check {
    let low = annualize(77.4e9, 40.0, 0.034).map_err(|e| e.to_string())?;
    let high = annualize(77.4e9, 40.0, 0.071).map_err(|e| e.to_string())?;
    ensure!((3.55e9..=3.59e9).contains(&low), "annualize at 3.4% = {low:e}");
    ensure!((5.85e9..=5.89e9).contains(&high), "annualize at 7.1% = {high:e}");
    let a = npv_offset(20_000.0, 3.87e6, 2.04e9, 40.0, 0.034).map_err(|e| e.to_string())?;
    let b = npv_offset(20_000.0, 3.87e6, 2.04e9, 40.0, 0.071).map_err(|e| e.to_string())?;
    ensure!((a - 0.571).abs() <= 0.005, "offset at 3.4% = {a}");
    ensure!((b - 0.348).abs() <= 0.005, "offset at 7.1% = {b}");
    Ok(format!("annualized {low:.4e} / {high:.4e}, offsets {:.1}% / {:.1}%", 100.0 * a, 100.0 * b))
}

fn methane_mode(ctx: &mut Ctx) -> Check {
    let f = fixtures::toy();
    let dir = ctx.dir.path().join("methane");
    f.write(&dir).map_err(|e| e.to_string())?;
    let m = load_network(&dir).map_err(|e| e.to_string())?.with_methane_accounting();
    let capture = m.plant("ccs").map(|p| p.capture_rate).unwrap_or(f64::NAN);
    ensure!(m.params.ng_emission_factor == 0.0649, "ng {}", m.params.ng_emission_factor);
    ensure!(m.params.lcf_emission_factor == 0.00161, "lcf {}", m.params.lcf_emission_factor);
    ensure!(capture == 0.693, "capture {capture}");
    Ok("0.0649 / 0.00161 / 0.693".into())
}

/// Sets each binary to the given bit and drops integrality.
fn fixed(p: &Program, binaries: &[usize], mask: u32) -> Program {
    let mut q = p.clone();
    for (k, &i) in binaries.iter().enumerate() {
        let b = f64::from((mask >> k) & 1);
        q.set_bounds(jpong_milp::VarId(i), b, b).expect("0/1 bounds");
    }
    q.relax_integrality();
    q
}

/// Rows over binaries only can be checked before any LP is solved.
fn violates_binary_rows(p: &Program, binaries: &[usize], mask: u32) -> bool {
    let mut x = vec![f64::NAN; p.num_vars()];
    for (k, &i) in binaries.iter().enumerate() {
        x[i] = f64::from((mask >> k) & 1);
    }
    p.constraints().iter().any(|c| {
        if !c.terms.iter().all(|(v, _)| !x[v.0].is_nan()) {
            return false;
        }
        let lhs = c.activity(&x);
        match c.sense {
            jpong_milp::Sense::Le => lhs > c.rhs + 1e-9,
            jpong_milp::Sense::Ge => lhs < c.rhs - 1e-9,
            jpong_milp::Sense::Eq => (lhs - c.rhs).abs() > 1e-9,
        }
    })
}

fn toy_oracle(ctx: &mut Ctx) -> Check {
    let start = Instant::now();
    let inp = ctx.load(&fixtures::toy())?;
    let (p, sol) = ctx.solve(&inp, &ScenarioSpec::default(), "toy_milp")?;
    let milp = sol.objective.ok_or("no MILP objective")?;
    let binaries: Vec<usize> = p
        .variables()
        .iter()
        .enumerate()
        .filter(|(_, v)| v.kind == VarKind::Binary)
        .map(|(i, _)| i)
        .collect();
    let n = binaries.len();
    ensure!(n > 0 && n <= 16, "{n} binaries");
    let mut best: Option<(f64, u32)> = None;
    let (mut solved, mut pruned, mut infeasible) = (0, 0, 0);
    for mask in 0..(1u32 << n) {
        if violates_binary_rows(&p, &binaries, mask) {
            pruned += 1;
            continue;
        }
        let q = fixed(&p, &binaries, mask);
        let s = ctx.solve_program(&q, &format!("oracle_{mask}"))?;
        solved += 1;
        match s.objective {
            Some(obj) if s.status.has_values() => {
                if best.map_or(true, |(b, _)| obj < b) {
                    best = Some((obj, mask));
                }
                ctx.samples.push(s);
            }
            _ => infeasible += 1,
        }
    }
    let (oracle, mask) = best.ok_or("no feasible binary assignment")?;
    let err = rel(milp, oracle);
    let t = start.elapsed();
    ensure!(err <= 1e-6, "MILP {milp} vs oracle {oracle} (mask {mask:#b}), rel {err:e}");
    ensure!(t < Duration::from_secs(120), "took {t:?}");
    Ok(format!(
        "MILP {milp:.6e} = oracle {oracle:.6e} (rel {err:.1e}); {} combos, {solved} LPs, {pruned} pruned, {infeasible} infeasible, {t:.1?}",
        1u32 << n
    ))
}

fn lcf_case(annual: f64) -> Fixture {
    let plant = "base,thermal,,100,0,,8,0,1000000,10000,20,0,1000000000,30";
    let mut f = one_node(&[plant], &["n1,base,1,false"], &["ng_price[$/MMBtu],60"], 0.0);
    f.name = format!("lcf_{}", annual as u64);
    let daily = annual / DAYS as f64;
    f.files.insert(
        "gas_nodes.csv".into(),
        format!("id,kind,inj_min[MMBtu/d],inj_max[MMBtu/d],svl\nk1,boundary,0,{},\nk2,load,0,0,\n", 2.0 * daily),
    );
    f.files.insert(
        "pipelines.csv".into(),
        format!(
            "id,from,to,exists,capacity[MMBtu/d],length[mi],capex[$/mi],decom_cost[$/mi],lifetime[yr]\n\
             p1,k1,k2,true,{},10,0,1000000000,50\n",
            2.0 * daily
        ),
    );
    f.demand.gas.insert("k2".into(), vec![daily; DAYS]);
    f
}

/// Level binaries are ordered and no step is used without its binary.
fn lcf_order_ok(sol: &Solution) -> bool {
    let get = |k: &str, l: usize| sol.value(&format!("{k}.{l}"));
    let mut l = 0;
    while let Some(y) = get("ylcf", l) {
        let lam = get("lam", l).unwrap_or(0.0);
        if lam > y + 1e-6 {
            return false;
        }
        if l > 0 && y > get("ylcf", l - 1).unwrap_or(0.0) + 1e-6 {
            return false;
        }
        l += 1;
    }
    true
}

fn lcf_piecewise(ctx: &mut Ctx) -> Check {
    let inp = ctx.load(&lcf_case(100e6))?;
    let (p, sol) = ctx.solve(&inp, &ScenarioSpec::default(), "lcf_100")?;
    let lcf = gas_summary(&inp, &sol).lcf;
    ensure!(rel(lcf, 100e6) <= 1e-9, "LCF consumed {lcf}");
    let cost = decompose_costs(&p, &sol).map_err(|e| e.to_string())?.get(CostCategory::Lcf);
    let want = 70.8e6 * 10.0 + 29.2e6 * 25.0;
    ensure!(rel(cost, want) <= 1e-9, "LCF cost {cost} vs {want}");
    for annual in [30e6, 250e6] {
        let inp = ctx.load(&lcf_case(annual))?;
        ctx.solve(&inp, &ScenarioSpec::default(), &format!("lcf_{annual}"))?;
    }
    let bad = ctx.samples.iter().filter(|s| !lcf_order_ok(s)).count();
    let with_levels = ctx.samples.iter().filter(|s| s.value("ylcf.0").is_some()).count();
    ensure!(bad == 0, "{bad} of {with_levels} sampled solutions break the level ordering");
    Ok(format!("cost {cost:.6e} (want {want:.6e}); ordering holds in {with_levels} sampled solutions"))
}

fn emissions_monotone(ctx: &mut Ctx) -> Check {
    let inp = ctx.load(&fixtures::toy())?;
    let baseline = inp.network.params.emissions_baseline();
    ensure!(baseline == 67.5e6, "baseline {baseline}");
    let mut prev: Option<f64> = None;
    let mut parts = Vec::new();
    for zeta in [0.0, 0.5, 0.8, 0.95] {
        let sc = ScenarioSpec {
            emissions_target: zeta,
            ..Default::default()
        };
        let (_, sol) = ctx.solve(&inp, &sc, &format!("zeta_{zeta}"))?;
        let cost = sol.objective.ok_or("no objective")?;
        let e = emissions(&inp, &sc, &sol).total;
        let cap = (1.0 - zeta) * 67.5e6;
        ensure!(e <= cap + AUDIT_TOL * (1.0 + cap), "ζ={zeta}: emissions {e} above {cap}");
        if let Some(p) = prev {
            ensure!(cost >= p * (1.0 - 1e-9), "ζ={zeta}: cost {cost} below {p}");
        }
        prev = Some(cost);
        parts.push(format!("ζ={zeta}: {cost:.6e} $/{e:.3e} t"));
    }
    Ok(parts.join(", "))
}

fn transport_flex(ctx: &mut Ctx) -> Check {
    let flex = ScenarioSpec {
        transport_flex: Some(FlexSpec::default()),
        ..Default::default()
    };
    let base = ScenarioSpec::default();
    let inp = ctx.load(&fixtures::spike())?;
    let b = ctx.solve(&inp, &base, "spike_base")?.1.objective.ok_or("no objective")?;
    let f = ctx.solve(&inp, &flex, "spike_flex")?.1.objective.ok_or("no objective")?;
    ensure!(f <= b + AUDIT_TOL * (1.0 + b.abs()), "flex {f} above base {b}");

    let mut still = fixtures::spike();
    still.name = "spike_rigid".into();
    still.demand.transport_share.clear();
    let inp = ctx.load(&still)?;
    let b0 = ctx.solve(&inp, &base, "rigid_base")?.1.objective.ok_or("no objective")?;
    let f0 = ctx.solve(&inp, &flex, "rigid_flex")?.1.objective.ok_or("no objective")?;
    ensure!((f0 - b0).abs() <= AUDIT_TOL * (1.0 + b0.abs()), "share 0: flex {f0} vs base {b0}");
    Ok(format!("base {b:.6e}, flex {f:.6e} ({:.2}% lower); share 0: {b0:.6e} = {f0:.6e}", 100.0 * (b - f) / b))
}

fn synthetic_weather() -> WeatherSeries {
    let month = months_of_year(8760);
    let n = month.len();
    let wave = |h: usize, a: f64, p: f64| a * ((h as f64) / p * std::f64::consts::TAU).sin();
    WeatherSeries {
        timestamp: (0..n).map(|h| format!("hour{h}")).collect(),
        temperature: (0..n).map(|h| 8.0 + wave(h + 6000, 13.0, 8760.0) + wave(h, 4.0, 24.0)).collect(),
        wind_speed: (0..n).map(|h| 6.0 + wave(h, 3.0, 37.0)).collect(),
        relative_humidity: (0..n).map(|h| 65.0 + wave(h, 20.0, 24.0)).collect(),
        pressure: (0..n).map(|h| 101_000.0 + wave(h, 900.0, 200.0)).collect(),
        sky_cover: (0..n).map(|h| 50.0 + wave(h, 40.0, 53.0)).collect(),
        ghi: (0..n).map(|h| wave(h, 800.0, 24.0).max(0.0)).collect(),
        radiation: vec![],
        month,
    }
}

fn same_bits(a: &[f64], b: &[f64]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.to_bits() == y.to_bits())
}

fn morph_identity_and_shift(_: &mut Ctx) -> Check {
    let w = synthetic_weather();
    let m = morph(&w, &[MonthDelta::identity(); 12]).map_err(|e| e.to_string())?;
    let cols = |s: &WeatherSeries| [s.temperature.clone(), s.wind_speed.clone(), s.relative_humidity.clone(), s.pressure.clone(), s.sky_cover.clone(), s.ghi.clone()];
    let identical = cols(&w).iter().zip(cols(&m).iter()).all(|(a, b)| same_bits(a, b)) && w.month == m.month && w.timestamp == m.timestamp;
    ensure!(identical, "zero-delta morph changed the series");

    let mut d = [MonthDelta::identity(); 12];
    for (i, x) in d.iter_mut().enumerate() {
        x.t_mean = 0.25 + 0.3 * i as f64;
    }
    let s = morph(&w, &d).map_err(|e| e.to_string())?;
    let mut worst: f64 = 0.0;
    for mon in 1..=12u8 {
        let idx: Vec<usize> = (0..w.month.len()).filter(|&h| w.month[h] == mon).collect();
        let mean = |v: &[f64]| idx.iter().map(|&h| v[h]).sum::<f64>() / idx.len() as f64;
        let shift = mean(&s.temperature) - mean(&w.temperature);
        worst = worst.max((shift - d[mon as usize - 1].t_mean).abs());
    }
    ensure!(worst <= 1e-9, "monthly mean shift off by {worst:e}");
    Ok(format!("identity bit-exact over {} hours; mean shift err {worst:.1e}", w.month.len()))
}

fn wind_cf(_: &mut Ctx) -> Check {
    let curve = PowerCurve::onshore();
    let mut site = WindSite::new("s", "z", false, 80.0);
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    let speeds: Vec<f64> = (0..=400).map(|i| i as f64 * 0.1).collect();
    for t in [-45.0, -20.0, 0.0, 15.0, 35.0] {
        let cf = cf_series(&speeds, &vec![t; speeds.len()], &site, &curve).map_err(|e| e.to_string())?;
        for v in cf {
            lo = lo.min(v);
            hi = hi.max(v);
        }
    }
    ensure!(lo >= 0.0 && hi <= 0.81, "cf range [{lo}, {hi}]");

    // Measured at hub height so the rated speed reaches the hub unchanged.
    site.measurement_height = site.hub_height;
    let rated = curve.rated_speed();
    let threshold = -30.0 + 0.65 * site.hub_height / 100.0;
    let temps: Vec<f64> = (-400..=400).map(|k| threshold + k as f64 * 0.01).chain([threshold - 1e-6, threshold + 1e-6]).collect();
    let cf = cf_series(&vec![rated; temps.len()], &temps, &site, &curve).map_err(|e| e.to_string())?;
    for (t, v) in temps.iter().zip(&cf) {
        let cold = t - 0.65 * site.hub_height / 100.0 < -30.0;
        ensure!((*v == 0.0) == cold, "T={t}: cf {v}, cold={cold}");
    }
    let warm = cf_series(&[rated], &[20.0], &site, &curve).map_err(|e| e.to_string())?[0];
    ensure!(warm == 0.81, "rated warm hour {warm}");
    Ok(format!("cf in [{lo}, {hi}], cutoff at {threshold:.3} °C surface, rated {warm}"))
}

/// Moves one column so `row` misses its bound by `excess` (scaled units).
fn push_row(p: &Program, sol: &mut Solution, row: usize, excess: f64) -> Option<String> {
    let c = &p.constraints()[row];
    let &(v, a) = c.terms.iter().find(|(_, a)| *a != 0.0)?;
    let x = sol.dense(p).ok()?;
    let act = c.activity(&x);
    let gap = excess * (1.0 + c.rhs.abs());
    let target = match c.sense {
        jpong_milp::Sense::Le | jpong_milp::Sense::Eq => c.rhs + gap,
        jpong_milp::Sense::Ge => c.rhs - gap,
    };
    let name = &p.variable(v).name;
    *sol.values.entry(name.clone()).or_insert(0.0) += (target - act) / a;
    Some(c.name.clone())
}

fn audit_soundness(ctx: &mut Ctx) -> Check {
    let mut worst: f64 = 0.0;
    let mut names = Vec::new();
    let mut toy = None;
    for f in [fixtures::toy(), fixtures::spike(), fixtures::import(), fixtures::ldes(), lcf_case(100e6)] {
        let inp = ctx.load(&f)?;
        let (p, sol) = ctx.solve(&inp, &ScenarioSpec::default(), &format!("audit_{}", f.name))?;
        let rep = audit(&p, &sol, AUDIT_TOL).map_err(|e| e.to_string())?;
        ensure!(rep.is_feasible(), "{}: {} violations, first {:?}", f.name, rep.violations.len(), rep.violations.first());
        worst = worst.max(rep.max_residual);
        names.push(f.name.clone());
        if f.name == "toy" {
            toy = Some((p, sol));
        }
    }
    let (p, sol) = toy.ok_or("toy not solved")?;

    // One perturbed row per block, one bound and one binary.
    let mut first_of_block = BTreeMap::new();
    for (i, c) in p.constraints().iter().enumerate() {
        first_of_block.entry(c.block().to_string()).or_insert(i);
    }
    let mut injected = 0;
    for &row in first_of_block.values() {
        let mut s = sol.clone();
        let Some(name) = push_row(&p, &mut s, row, 2.0 * AUDIT_TOL) else { continue };
        let rep = audit(&p, &s, AUDIT_TOL).map_err(|e| e.to_string())?;
        ensure!(rep.violations.iter().any(|v| v.kind == ViolationKind::Row && v.name == name), "row {name} not flagged");
        injected += 1;
    }
    let col = p.variables().iter().find(|v| v.kind == VarKind::Continuous && v.lower.is_finite()).ok_or("no bounded column")?;
    let mut s = sol.clone();
    s.values.insert(col.name.clone(), col.lower - 2.0 * AUDIT_TOL * (1.0 + col.lower.abs()));
    let rep = audit(&p, &s, AUDIT_TOL).map_err(|e| e.to_string())?;
    ensure!(rep.violations.iter().any(|v| v.kind == ViolationKind::Bound && v.name == col.name), "bound on {} not flagged", col.name);
    let bin = p.variables().iter().find(|v| v.kind == VarKind::Binary).ok_or("no binary")?;
    let mut s = sol.clone();
    let b = s.value(&bin.name).unwrap_or(0.0).round();
    s.values.insert(bin.name.clone(), if b > 0.5 { 1.0 - 2.0 * AUDIT_TOL } else { 2.0 * AUDIT_TOL });
    let rep = audit(&p, &s, AUDIT_TOL).map_err(|e| e.to_string())?;
    ensure!(rep.violations.iter().any(|v| v.kind == ViolationKind::Integrality && v.name == bin.name), "binary {} not flagged", bin.name);
    Ok(format!(
        "{} clean (max scaled residual {worst:.1e}); {injected} row, 1 bound and 1 integrality perturbation flagged",
        names.join("/")
    ))
}

fn peak_events(_: &mut Ctx) -> Check {
    let mut plateau = vec![40.0; 500];
    for v in &mut plateau[200..260] {
        *v = 90.0;
    }
    plateau[230] = 100.0;
    let mut spike = vec![60.0; 500];
    spike[321] = 100.0;
    let a = peak_event_length(&plateau, 0..500).map_err(|e| e.to_string())?;
    let b = peak_event_length(&spike, 0..500).map_err(|e| e.to_string())?;
    ensure!(a == 60, "plateau gives {a}");
    ensure!(b == 1, "spike gives {b}");
    Ok(format!("plateau {a} h, spike {b} h"))
}

fn jpong(args: &[&str]) -> Result<(), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_jpong"))
        .args(args)
        .env_remove("JPONG_SOLVER")
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(out.status.success(), "jpong {args:?}: {}", String::from_utf8_lossy(&out.stderr));
    Ok(())
}

fn read(p: &Path) -> Result<Vec<u8>, String> {
    std::fs::read(p).map_err(|e| format!("{}: {e}", p.display()))
}

fn deterministic_runs(ctx: &mut Ctx) -> Check {
    let root = ctx.dir.path().join("determinism");
    let s = |p: &Path| p.to_str().unwrap().to_string();
    let case = root.join("toy");
    jpong(&["example", "toy", "--out", &s(&case)])?;
    let (a, b) = (root.join("a"), root.join("b"));
    for out in [&a, &b] {
        jpong(&["run", "--case", &s(&case), "--out", &s(out)])?;
    }
    let mut same = Vec::new();
    for f in ["model.lp", "audit.json", "report/costs.csv", "report/capacity.csv", "report/storage.csv", "report/gas.csv"] {
        ensure!(read(&a.join(f))? == read(&b.join(f))?, "{f} differs");
        same.push(f);
    }
    let report = |dir: &Path| -> Result<serde_json::Value, String> {
        let mut v: serde_json::Value = serde_json::from_slice(&read(&dir.join("report/report.json"))?).map_err(|e| e.to_string())?;
        v.as_object_mut().ok_or("report is not an object")?.remove("metadata");
        Ok(v)
    };
    ensure!(report(&a)? == report(&b)?, "report.json differs outside metadata");
    Ok(format!("{} and report.json (metadata excluded) identical", same.join(", ")))
}

fn main() {
    let mut ctx = Ctx {
        dir: tempfile::tempdir().expect("temp dir"),
        samples: Vec::new(),
    };
    let criteria: [(&str, fn(&mut Ctx) -> Check); 12] = [
        ("heat-pump COP and capacity", heat_pump_formulas),
        ("capital recovery and NPV offsets", crf_and_npv),
        ("methane-mode parameters", methane_mode),
        ("toy MILP vs exhaustive oracle", toy_oracle),
        ("LCF piecewise pricing and ordering", lcf_piecewise),
        ("emissions target monotonicity", emissions_monotone),
        ("transport flexibility", transport_flex),
        ("weather morphing identity and mean shift", morph_identity_and_shift),
        ("wind capacity factor", wind_cf),
        ("audit soundness", audit_soundness),
        ("peak-event length", peak_events),
        ("deterministic end-to-end runs", deterministic_runs),
    ];
    // Criterion 5 reads the samples gathered by 4, so run in order.
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let r = f(&mut ctx);
        let t = start.elapsed();
        match r {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{t:.1?}]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} [{t:.1?}]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
