mod common;

use approx::assert_relative_eq;
use jpong_core::analytics::*;
use jpong_core::fixtures::{self, one_node};
use jpong_core::model::{CostCategory, ScenarioSpec};
use jpong_milp::{Program, Solution};

/// A 200 MW baseload block serving a flat 200 MW and a 100 MW standby block
/// kept only for the reserve margin.
fn two_block_case(dir: &std::path::Path) -> (jpong_core::model::ModelInputs, Program, Solution) {
    let f = one_node(
        &[
            "nuc,nuclear,nuclear,100,0,,10,0,0,10000,2,0.72,1000000000,40",
            "standby,thermal,,100,0,,10,0,0,5000,500,0,1000000000,30",
        ],
        &["n1,nuc,2,false", "n1,standby,1,false"],
        &[],
        200.0,
    );
    let inp = common::load(&f, dir);
    let (p, sol) = common::solve(&inp, &ScenarioSpec::default(), dir, "cf");
    (inp, p, sol)
}

#[test]
fn capacity_factors_by_hand() {
    let dir = tempfile::tempdir().unwrap();
    let (inp, _, sol) = two_block_case(dir.path());
    let plants = plant_summary(&inp, &inp.network, &sol);
    let cf = capacity_factor_report(&plants);
    assert_relative_eq!(cf["nuclear"].capacity, 200.0, max_relative = 1e-9);
    assert_relative_eq!(cf["nuclear"].generation, 200.0 * 8760.0, max_relative = 1e-9);
    assert_relative_eq!(cf["nuclear"].capacity_factor, 1.0, max_relative = 1e-9);
    assert!(cf["thermal"].capacity_factor.abs() < 1e-9);
}

#[test]
fn cost_categories_by_hand() {
    let dir = tempfile::tempdir().unwrap();
    let (_, p, sol) = two_block_case(dir.path());
    let c = decompose_costs(&p, &sol).unwrap();
    assert_relative_eq!(c.get(CostCategory::Vom), 200.0 * 8760.0 * 2.0, max_relative = 1e-9);
    assert_relative_eq!(c.get(CostCategory::NonGasFuel), 200.0 * 8760.0 * 10.0 * 0.72, max_relative = 1e-9);
    assert_relative_eq!(c.get(CostCategory::PlantFom), 200.0 * 10_000.0 + 100.0 * 5_000.0, max_relative = 1e-9);
    let sum: f64 = c.categories.values().sum();
    assert_relative_eq!(sum, sol.objective.unwrap(), max_relative = 1e-9);
    assert_relative_eq!(c.power_total + c.gas_total, c.total, max_relative = 1e-12);
    assert_eq!(c.categories.len(), CostCategory::ALL.len());
}

#[test]
fn toy_report_is_consistent() {
    let dir = tempfile::tempdir().unwrap();
    let inp = common::load(&fixtures::toy(), dir.path());
    let sc = ScenarioSpec::default();
    let (p, sol) = common::solve(&inp, &sc, dir.path(), "toy");
    let r = build_report(&p, &inp, &sc, &sol).unwrap();
    assert_relative_eq!(r.costs.total, sol.objective.unwrap(), max_relative = 1e-9);
    // Gas conservation: injections plus shed cover demand and plant burn,
    // up to the net SVL storage change, which is zero over a cyclic year.
    let g = &r.gas;
    let svl_loss: f64 = (0..365)
        .map(|d| {
            let v = |n: String| sol.value(&n).unwrap_or(0.0);
            v(format!("fgl.k2.s1.{d}")) - v(format!("fvg.s1.{d}.k2"))
        })
        .sum();
    assert_relative_eq!(g.fossil + g.lcf + g.shed, g.demand + g.to_power + svl_loss, max_relative = 1e-6);
    assert!(svl_loss >= -1e-6);
    assert_relative_eq!(r.emissions.power, r.emissions.model_power.unwrap(), max_relative = 1e-6, epsilon = 1e-3);
    assert!(r.emissions.total <= r.emissions.cap);
    assert_eq!(r.pipelines.len(), 2);

    let out = dir.path().join("report");
    r.write(&out).unwrap();
    for f in ["report.json", "costs.csv", "capacity.csv", "storage.csv", "gas.csv"] {
        assert!(out.join(f).exists(), "{f}");
    }
    let back: SolutionReport = serde_json::from_str(&std::fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    assert_eq!(back.costs.categories.len(), r.costs.categories.len());
    assert_eq!(back.scenario, r.scenario);
    let costs = std::fs::read_to_string(out.join("costs.csv")).unwrap();
    assert!(costs.starts_with("category,cost[$/yr]\n"));
    assert_eq!(costs.lines().count(), 1 + CostCategory::ALL.len() + 1);
}

#[test]
fn lcf_share_of_injection() {
    let dir = tempfile::tempdir().unwrap();
    let inp = common::load(&fixtures::toy(), dir.path());
    let sc = ScenarioSpec {
        emissions_target: 0.95,
        ..Default::default()
    };
    let (_, sol) = common::solve(&inp, &sc, dir.path(), "share");
    let g = gas_summary(&inp, &sol);
    let lcf: f64 = (0..365).map(|d| sol.value(&format!("lcf.k1.{d}")).unwrap_or(0.0)).sum();
    let fossil: f64 = (0..365).map(|d| sol.value(&format!("g.k1.{d}")).unwrap_or(0.0)).sum();
    assert_relative_eq!(g.lcf_share, lcf / (lcf + fossil), max_relative = 1e-12);
    assert!((0.0..=1.0).contains(&g.lcf_share));
}
