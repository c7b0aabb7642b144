//! Small cases solved end to end with HiGHS and checked against hand sums.

mod common;

use approx::assert_relative_eq;
use jpong_core::analytics::{decompose_costs, emissions, gas_summary};
use jpong_core::fixtures::{self, one_node};
use jpong_core::model::{CostCategory, ModelInputs, ScenarioSpec, DAYS, HOURS};
use jpong_milp::SolveStatus;

const PLANT: &str = "base,thermal,,100,0,,8,0,1000000,10000,20,0,1000000000,30";

fn inputs(f: &fixtures::Fixture) -> (tempfile::TempDir, ModelInputs) {
    let dir = tempfile::tempdir().unwrap();
    let inp = common::load(f, dir.path());
    (dir, inp)
}

#[test]
fn flat_demand_is_met_by_dispatch() {
    let (dir, inp) = inputs(&one_node(&[PLANT], &["n1,base,2,false"], &[], 150.0));
    let (p, sol) = common::solve(&inp, &ScenarioSpec::default(), dir.path(), "flat");
    for t in 0..24 {
        assert_relative_eq!(sol.value(&format!("gen.n1.base.{t}")).unwrap(), 150.0, epsilon = 1e-6);
        assert!(sol.value(&format!("shed.n1.{t}")).unwrap_or(0.0).abs() < 1e-6);
    }
    let costs = decompose_costs(&p, &sol).unwrap();
    assert_relative_eq!(costs.get(CostCategory::Vom), 8760.0 * 150.0 * 20.0, max_relative = 1e-9);
    assert_relative_eq!(costs.get(CostCategory::PlantFom), 2.0 * 100.0 * 10_000.0, max_relative = 1e-9);
    assert_relative_eq!(costs.total, sol.objective.unwrap(), max_relative = 1e-9);
}

#[test]
fn zero_demand_keeps_existing_fleet() {
    let (dir, inp) = inputs(&one_node(&[PLANT], &["n1,base,2,false"], &[], 0.0));
    let (p, sol) = common::solve(&inp, &ScenarioSpec::default(), dir.path(), "zero");
    // Retiring costs 1e9·100/10 per unit, far above the FOM.
    assert_relative_eq!(sol.value("xop.n1.base").unwrap(), 2.0, epsilon = 1e-9);
    let fom = 2.0 * 100.0 * 10_000.0;
    assert_relative_eq!(sol.objective.unwrap(), fom, max_relative = 1e-9);
    assert_relative_eq!(decompose_costs(&p, &sol).unwrap().total, fom, max_relative = 1e-9);
}

#[test]
fn shedding_only_system() {
    // Running the standby plant costs twice the shedding penalty.
    let standby = "standby,thermal,,100,0,,0,0,0,0,20000,0,0,30";
    let (dir, inp) = inputs(&one_node(&[standby], &["n1,standby,2,false"], &[], 100.0));
    let (p, sol) = common::solve(&inp, &ScenarioSpec::default(), dir.path(), "shed");
    let want = 8760.0 * 100.0 * 10_000.0;
    assert_relative_eq!(sol.objective.unwrap(), want, max_relative = 1e-9);
    let costs = decompose_costs(&p, &sol).unwrap();
    assert_relative_eq!(costs.share(&[CostCategory::PowerShedding]), 1.0, max_relative = 1e-9);
}

#[test]
fn reserve_margin_threshold() {
    let unit = "unit,thermal,,1,0,,8,0,1000000,0,20,0,0,30";
    for (units, feasible) in [(114, false), (115, true)] {
        let np = format!("n1,unit,{units},false");
        let (dir, inp) = inputs(&one_node(&[unit], &[&np], &[], 100.0));
        let sol = common::try_solve(&inp, &ScenarioSpec::default(), dir.path(), "crm");
        assert_eq!(sol.status.has_values(), feasible, "{units} MW: {:?}", sol.status);
        if !feasible {
            assert_eq!(sol.status, SolveStatus::Infeasible);
        }
    }
}

#[test]
fn import_without_inflow_exports_nothing() {
    let mut f = fixtures::import();
    f.demand.import_inflow = Some(vec![0.0; HOURS]);
    // Start and end both at 70%; lift the spring cap so the level may stay put.
    f.files.get_mut("params.csv").unwrap().push_str("import_spring_level,0.7\n");
    let (dir, inp) = inputs(&f);
    let (_, sol) = common::solve(&inp, &ScenarioSpec::default(), dir.path(), "imp0");
    let exported: f64 = (0..inp.time.num_hours())
        .map(|t| inp.time.hour_weight(t) * sol.value(&format!("imp_gen.{t}")).unwrap_or(0.0))
        .sum();
    assert!(exported.abs() < 1e-3, "{exported}");
}

#[test]
fn import_without_export_path_is_infeasible() {
    let mut f = fixtures::import();
    let lines = f.files.get_mut("lines.csv").unwrap();
    *lines = lines.lines().next().unwrap().to_string() + "\n";
    let (dir, inp) = inputs(&f);
    let sol = common::try_solve(&inp, &ScenarioSpec::default(), dir.path(), "impx");
    assert_eq!(sol.status, SolveStatus::Infeasible);
}

/// One power node with no load and a gas pair k1 -> k2 where fossil gas is
/// dearer than every LCF level, so LCF serves the whole annual demand.
fn lcf_case(annual: f64) -> fixtures::Fixture {
    let mut f = one_node(&[PLANT], &["n1,base,1,false"], &["ng_price[$/MMBtu],60"], 0.0);
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

#[test]
fn lcf_steps_price_forced_consumption() {
    let (dir, inp) = inputs(&lcf_case(100e6));
    let (p, sol) = common::solve(&inp, &ScenarioSpec::default(), dir.path(), "lcf");
    let gas = gas_summary(&inp, &sol);
    assert_relative_eq!(gas.lcf, 100e6, max_relative = 1e-9);
    let costs = decompose_costs(&p, &sol).unwrap();
    assert_relative_eq!(costs.get(CostCategory::Lcf), 70.8e6 * 10.0 + 29.2e6 * 25.0, max_relative = 1e-9);
    assert_relative_eq!(sol.value("lam.0").unwrap(), 1.0, epsilon = 1e-9);
    assert_relative_eq!(sol.value("lam.1").unwrap(), 29.2 / 143.7, max_relative = 1e-9);
    assert!(sol.value("lam.2").unwrap().abs() < 1e-9);
    assert_eq!(sol.value("ylcf.0").unwrap().round(), 1.0);
    assert_eq!(sol.value("ylcf.1").unwrap().round(), 1.0);
    assert!((gas.lcf_share - 1.0).abs() < 1e-9);
}

#[test]
fn full_decarbonization_leaves_no_emissions() {
    let (dir, inp) = inputs(&fixtures::toy());
    let sc = ScenarioSpec {
        emissions_target: 1.0,
        ..Default::default()
    };
    let (_, sol) = common::solve(&inp, &sc, dir.path(), "z1");
    let e = emissions(&inp, &sc, &sol);
    assert!(e.total.abs() < 1e-3, "{e:?}");
    // Power emissions are nonnegative, so gas demand must be covered by LCF
    // or shed; LCF burned in plants is credited on the gas side.
    let gas = gas_summary(&inp, &sol);
    assert!(gas.lcf + gas.shed >= gas.demand * (1.0 - 1e-9), "{gas:?}");
}

#[test]
fn methane_accounting_cuts_fossil_gas() {
    let (dir, inp) = inputs(&fixtures::toy());
    let base = ScenarioSpec {
        emissions_target: 0.95,
        ..Default::default()
    };
    let methane = ScenarioSpec {
        methane_accounting: true,
        ..base.clone()
    };
    let (_, a) = common::solve(&inp, &base, dir.path(), "m0");
    let (_, b) = common::solve(&inp, &methane, dir.path(), "m1");
    let fa = gas_summary(&inp, &a).fossil;
    let fb = gas_summary(&inp, &b).fossil;
    assert!(fb <= fa + 1e-6 * (1.0 + fa), "{fb} > {fa}");
    for (sc, sol) in [(&base, &a), (&methane, &b)] {
        let e = emissions(&inp, sc, sol);
        assert!(e.total <= e.cap * (1.0 + 1e-6), "{e:?}");
        assert_relative_eq!(e.power, e.model_power.unwrap(), max_relative = 1e-6, epsilon = 1e-3);
        assert_relative_eq!(e.gas, e.model_gas.unwrap(), max_relative = 1e-6, epsilon = 1e-3);
    }
}

#[test]
fn long_duration_storage_case() {
    let (dir, inp) = inputs(&fixtures::ldes());
    let (p, sol) = common::solve(&inp, &ScenarioSpec::default(), dir.path(), "ldes");
    // Hourly balance recomputed from the reported columns.
    let ts = &inp.time;
    for t in 0..ts.num_hours() {
        let v = |n: String| sol.value(&n).unwrap_or(0.0);
        let supply = v(format!("gen.n1.base.{t}"))
            + v(format!("gen.n1.peaker.{t}"))
            + v(format!("gen.n1.solar.{t}"))
            + v(format!("shed.n1.{t}"))
            + v(format!("dis.n1.li_ion.{t}"))
            + v(format!("dis.n1.ldes.{t}"))
            - v(format!("chg.n1.li_ion.{t}"))
            - v(format!("chg.n1.ldes.{t}"));
        let d = inp.demand.power_demand("n1", ts.original_hour(t));
        assert!((supply - d).abs() <= 1e-6 * (1.0 + d), "hour {t}: {supply} vs {d}");
    }
    let costs = decompose_costs(&p, &sol).unwrap();
    assert_relative_eq!(costs.total, sol.objective.unwrap(), max_relative = 1e-9);
}
