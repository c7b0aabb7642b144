//! Post-solve reporting: cost breakdown, capacity and generation summaries,
//! gas supply, emissions recomputed from primal values.

use std::collections::BTreeMap;
use std::path::Path;

use jpong_milp::{Program, Solution};
use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::model::{CostCategory, ModelInputs, ScenarioSpec, DAYS};
use crate::network::NetworkModel;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

const HOURS_PER_YEAR: f64 = 8760.0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CostReport {
    /// $/yr per category; every category is listed, zero if unused.
    pub categories: BTreeMap<String, f64>,
    pub power_total: f64,
    pub gas_total: f64,
    pub total: f64,
}

impl CostReport {
    pub fn get(&self, c: CostCategory) -> f64 {
        self.categories.get(c.as_str()).copied().unwrap_or(0.0)
    }

    /// Share of the total in the given categories.
    pub fn share(&self, cats: &[CostCategory]) -> f64 {
        if self.total == 0.0 {
            return 0.0;
        }
        cats.iter().map(|c| self.get(*c)).sum::<f64>() / self.total
    }
}

fn values(program: &Program, sol: &Solution) -> Result<Vec<f64>> {
    if !sol.status.has_values() {
        return Err(CoreError::invalid(format!("solution status `{}` carries no values", sol.status.as_str())));
    }
    Ok(sol.dense(program)?)
}

/// Sums every tagged objective term and constant by category.
pub fn decompose_costs(program: &Program, sol: &Solution) -> Result<CostReport> {
    let x = values(program, sol)?;
    let mut categories: BTreeMap<String, f64> = CostCategory::ALL.iter().map(|c| (c.as_str().to_string(), 0.0)).collect();
    for term in program.objective_terms() {
        let slot = categories.get_mut(&term.category).ok_or_else(|| {
            CoreError::invalid(format!(
                "objective term on {} has unknown category `{}`",
                program.variable(term.var).name,
                term.category
            ))
        })?;
        *slot += term.coef * x[term.var.0];
    }
    for (cat, v) in program.objective_constants() {
        *categories
            .get_mut(cat)
            .ok_or_else(|| CoreError::invalid(format!("objective constant has unknown category `{cat}`")))? += v;
    }
    let mut power_total = 0.0;
    let mut gas_total = 0.0;
    for c in CostCategory::ALL {
        if c.is_power() {
            power_total += categories[c.as_str()];
        } else {
            gas_total += categories[c.as_str()];
        }
    }
    Ok(CostReport {
        categories,
        power_total,
        gas_total,
        total: power_total + gas_total,
    })
}

/// `(node, plant, hour)` of a `gen.node.plant.hour` column.
fn split_gen(name: &str) -> Option<(&str, &str, usize)> {
    let mut it = name.split('.');
    if it.next()? != "gen" {
        return None;
    }
    let node = it.next()?;
    let plant = it.next()?;
    let t = it.next()?.parse().ok()?;
    Some((node, plant, t))
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PlantSummary {
    pub node: String,
    pub plant: String,
    pub class: String,
    /// Operational plants after investment and retirement.
    pub units: f64,
    pub built: f64,
    pub retired: f64,
    /// MW.
    pub capacity: f64,
    /// MWh/yr.
    pub generation: f64,
}

/// One row per (node, plant type) with capacity and weighted annual output.
pub fn plant_summary(inputs: &ModelInputs, net: &NetworkModel, sol: &Solution) -> Vec<PlantSummary> {
    let ts = &inputs.time;
    let mut out: BTreeMap<(String, String), PlantSummary> = BTreeMap::new();
    for node in &net.power_nodes {
        for np in &node.plants {
            let Some(pl) = net.plant(&np.plant) else { continue };
            let key = format!("{}.{}", node.id, pl.id);
            let units = sol.value(&format!("xop.{key}")).unwrap_or(0.0);
            out.insert(
                (node.id.clone(), pl.id.clone()),
                PlantSummary {
                    node: node.id.clone(),
                    plant: pl.id.clone(),
                    class: format!("{:?}", pl.class).to_ascii_lowercase(),
                    units,
                    built: sol.value(&format!("xest.{key}")).unwrap_or(0.0),
                    retired: sol.value(&format!("xdec.{key}")).unwrap_or(0.0),
                    capacity: units * pl.nameplate,
                    generation: 0.0,
                },
            );
        }
    }
    for (name, v) in &sol.values {
        if let Some((node, plant, t)) = split_gen(name) {
            if let Some(s) = out.get_mut(&(node.to_string(), plant.to_string())) {
                s.generation += ts.hour_weight(t) * v;
            }
        }
    }
    out.into_values().collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassFactor {
    pub capacity: f64,
    pub generation: f64,
    pub capacity_factor: f64,
}

/// Capacity factor per plant class, `Σ w·p / (8760·U·x^op)`. Classes with
/// no installed capacity are omitted.
pub fn capacity_factor_report(plants: &[PlantSummary]) -> BTreeMap<String, ClassFactor> {
    let mut acc: BTreeMap<String, (f64, f64)> = BTreeMap::new();
    for p in plants {
        let e = acc.entry(p.class.clone()).or_default();
        e.0 += p.capacity;
        e.1 += p.generation;
    }
    acc.into_iter()
        .filter(|(_, (cap, _))| *cap > 0.0)
        .map(|(class, (capacity, generation))| {
            (
                class,
                ClassFactor {
                    capacity,
                    generation,
                    capacity_factor: generation / (HOURS_PER_YEAR * capacity),
                },
            )
        })
        .collect()
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct GasSummary {
    /// MMBtu/yr.
    pub demand: f64,
    pub fossil: f64,
    pub lcf: f64,
    pub shed: f64,
    /// Delivered to power plants over the year.
    pub to_power: f64,
    /// LCF share of gas injected.
    pub lcf_share: f64,
}

pub fn gas_summary(inputs: &ModelInputs, sol: &Solution) -> GasSummary {
    let ts = &inputs.time;
    let mut s = GasSummary {
        demand: inputs.demand.gas.values().flat_map(|v| v.iter()).sum(),
        ..Default::default()
    };
    for (name, v) in &sol.values {
        let block = name.split('.').next().unwrap_or("");
        match block {
            "g" => s.fossil += v,
            "lcf" => s.lcf += v,
            "gshed" => s.shed += v,
            "fge" => {
                let r: usize = name.rsplit('.').next().and_then(|x| x.parse().ok()).unwrap_or(0);
                s.to_power += ts.day_weight(r) * v;
            }
            _ => {}
        }
    }
    let injected = s.fossil + s.lcf;
    s.lcf_share = if injected > 0.0 { s.lcf / injected } else { 0.0 };
    s
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Emissions {
    /// t CO2(eq)/yr recomputed from generation, LCF and gas shedding.
    pub power: f64,
    pub gas: f64,
    pub total: f64,
    pub cap: f64,
    /// Values of the model's emission columns.
    pub model_power: Option<f64>,
    pub model_gas: Option<f64>,
}

/// Recomputes both sectors' emissions from primal values with the
/// scenario's factors.
pub fn emissions(inputs: &ModelInputs, scenario: &ScenarioSpec, sol: &Solution) -> Emissions {
    let net = scenario.apply(&inputs.network);
    let prm = &net.params;
    let ts = &inputs.time;
    let mut power = 0.0;
    for (name, v) in &sol.values {
        let Some((_, plant, t)) = split_gen(name) else { continue };
        let Some(pl) = net.plant(plant) else { continue };
        if pl.class.is_gas_fired() {
            power += ts.hour_weight(t) * (1.0 - pl.capture_rate) * prm.ng_emission_factor * pl.heat_rate * v;
        }
    }
    let mut gas = 0.0;
    for g in &net.gas_nodes {
        for d in 0..DAYS {
            let dmd = inputs.demand.gas_demand(&g.id, d);
            let lcf = sol.value(&format!("lcf.{}.{d}", g.id)).unwrap_or(0.0);
            let shed = sol.value(&format!("gshed.{}.{d}", g.id)).unwrap_or(0.0);
            gas += prm.ng_emission_factor * (dmd - lcf - shed) + prm.lcf_emission_factor * lcf;
        }
    }
    Emissions {
        power,
        gas,
        total: power + gas,
        cap: (1.0 - scenario.emissions_target) * prm.emissions_baseline(),
        model_power: sol.value("co2_power"),
        model_gas: sol.value("co2_gas"),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolutionReport {
    pub schema_version: u32,
    pub scenario: ScenarioSpec,
    pub status: String,
    pub objective: Option<f64>,
    pub mip_gap: Option<f64>,
    pub costs: CostReport,
    pub capacity_factors: BTreeMap<String, ClassFactor>,
    pub plants: Vec<PlantSummary>,
    /// MW / MWh per (node, storage type).
    pub storage: BTreeMap<String, (f64, f64)>,
    pub lines_built: Vec<String>,
    pub pipelines: BTreeMap<String, String>,
    pub gas: GasSummary,
    pub emissions: Emissions,
    /// Run metadata; the only field allowed to differ between identical runs.
    pub metadata: BTreeMap<String, String>,
}

pub fn build_report(program: &Program, inputs: &ModelInputs, scenario: &ScenarioSpec, sol: &Solution) -> Result<SolutionReport> {
    let net = scenario.apply(&inputs.network);
    let costs = decompose_costs(program, sol)?;
    let plants = plant_summary(inputs, &net, sol);
    let mut storage = BTreeMap::new();
    for (name, v) in &sol.values {
        if let Some(key) = name.strip_prefix("ycd.") {
            let lev = sol.value(&format!("ylev.{key}")).unwrap_or(0.0);
            storage.insert(key.to_string(), (*v, lev));
        }
    }
    let lines_built = net
        .lines
        .iter()
        .filter(|l| !l.exists && sol.value(&format!("zline.{}", l.id)).unwrap_or(0.0) > 0.5)
        .map(|l| l.id.clone())
        .collect();
    let pipelines = net
        .pipelines
        .iter()
        .map(|p| {
            let op = sol.value(&format!("zpop.{}", p.id)).unwrap_or(0.0) > 0.5;
            let state = match (p.exists, op) {
                (true, true) => "kept",
                (true, false) => "retired",
                (false, true) => "built",
                (false, false) => "not built",
            };
            (p.id.clone(), state.to_string())
        })
        .collect();
    let mut metadata = BTreeMap::new();
    let now = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    metadata.insert("generated_at_unix".into(), now.to_string());
    Ok(SolutionReport {
        schema_version: REPORT_SCHEMA_VERSION,
        scenario: scenario.clone(),
        status: sol.status.as_str().to_string(),
        objective: sol.objective,
        mip_gap: sol.mip_gap,
        capacity_factors: capacity_factor_report(&plants),
        costs,
        plants,
        storage,
        lines_built,
        pipelines,
        gas: gas_summary(inputs, sol),
        emissions: emissions(inputs, scenario, sol),
        metadata,
    })
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| CoreError::Io {
        path: path.to_path_buf(),
        source,
    })
}

impl SolutionReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Writes `report.json` plus `costs.csv`, `capacity.csv`, `storage.csv`
    /// and `gas.csv` into `dir`.
    pub fn write(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir).map_err(|source| CoreError::Io {
            path: dir.to_path_buf(),
            source,
        })?;
        let mut j = self.to_json();
        j.push('\n');
        write_text(&dir.join("report.json"), &j)?;

        let mut costs = String::from("category,cost[$/yr]\n");
        for (k, v) in &self.costs.categories {
            costs.push_str(&format!("{k},{v}\n"));
        }
        costs.push_str(&format!("total,{}\n", self.costs.total));
        write_text(&dir.join("costs.csv"), &costs)?;

        let mut cap = String::from("node,plant,class,units,built,retired,capacity[MW],generation[MWh]\n");
        for p in &self.plants {
            cap.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                p.node, p.plant, p.class, p.units, p.built, p.retired, p.capacity, p.generation
            ));
        }
        write_text(&dir.join("capacity.csv"), &cap)?;

        let mut sto = String::from("node_storage,power[MW],energy[MWh]\n");
        for (k, (p, e)) in &self.storage {
            sto.push_str(&format!("{k},{p},{e}\n"));
        }
        write_text(&dir.join("storage.csv"), &sto)?;

        let g = &self.gas;
        let gas = format!(
            "quantity,value[MMBtu]\ndemand,{}\nfossil,{}\nlcf,{}\nshed,{}\nto_power,{}\n",
            g.demand, g.fossil, g.lcf, g.shed, g.to_power
        );
        write_text(&dir.join("gas.csv"), &gas)
    }
}

