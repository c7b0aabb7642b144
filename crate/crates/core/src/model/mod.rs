//! Joint power-gas capacity-expansion MILP.
//!
//! [`assemble`] turns a [`NetworkModel`], a [`TimeStructure`] and the case
//! time series into one [`Program`]. Variable and row names follow
//! `block.index...`; the block prefixes are listed in [`BLOCKS`] and every
//! objective term carries a [`CostCategory`] tag.

mod coupling;
mod flex;
mod gas;
mod import;
mod inputs;
mod power;
mod time;

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use jpong_milp::{Program, Sense, VarId};
use serde::{Deserialize, Serialize};

pub use inputs::DemandInputs;
pub use time::{TimeStructure, DAYS, HOURS, HOURS_PER_DAY};

use crate::error::{CoreError, Result};
use crate::network::{load_network, LcfLevel, NetworkModel};

/// Parameter keys read by each builder, for auditing against the catalog.
pub const BUILDER_PARAMS: &[(&str, &[&str])] = &[
    ("power", power::PARAMS),
    ("import", import::PARAMS),
    ("gas", gas::PARAMS),
    ("coupling", coupling::PARAMS),
    ("flex", flex::PARAMS),
];

/// Block prefix -> quantity it holds.
pub const BLOCKS: &[(&str, &str)] = &[
    ("xop", "operational plants per node and type"),
    ("xest", "new plants"),
    ("xdec", "retired plants"),
    ("gen", "generation, MW"),
    ("commit", "committed plants"),
    ("shed", "power load shedding, MW"),
    ("flow", "line flow, MW"),
    ("zline", "candidate line built"),
    ("theta", "voltage angle"),
    ("ycd", "storage power capacity, MW"),
    ("ylev", "storage energy capacity, MWh"),
    ("chg", "storage charge, MW"),
    ("dis", "storage discharge, MW"),
    ("lev", "storage level, MWh"),
    ("rem", "storage carried across days, MWh"),
    ("sday", "storage level at day start, MWh"),
    ("capt", "captured CO2, t/h"),
    ("co2pipe", "CO2 pipeline capacity, t/h"),
    ("imp_gen", "import node output, MW"),
    ("imp_res", "import reservoir level, MWh"),
    ("g", "fossil gas injection, MMBtu/d"),
    ("lcf", "low-carbon fuel injection, MMBtu/d"),
    ("gshed", "gas load shedding, MMBtu/d"),
    ("fpipe", "pipeline flow, MMBtu/d"),
    ("zpinv", "candidate pipeline built"),
    ("zpdec", "existing pipeline retired"),
    ("zpop", "pipeline operational"),
    ("fge", "gas delivered to a power node, MMBtu/d"),
    ("fgl", "gas sent to liquefaction, MMBtu/d"),
    ("fvg", "vaporized gas returned, MMBtu/d"),
    ("liq", "liquefaction, MMBtu/d"),
    ("vpr", "vaporization, MMBtu/d"),
    ("gsto", "liquefied gas in storage, MMBtu"),
    ("xstr", "added tank capacity, MMBtu"),
    ("xvpr", "added vaporization capacity, MMBtu/d"),
    ("lam", "share of an LCF step used"),
    ("ylcf", "LCF step unlocked"),
    ("co2_power", "power-sector emissions, t"),
    ("co2_gas", "gas-sector emissions, t"),
    ("tdef", "deferred transport load, MW"),
    ("tser", "served deferred transport load, MW"),
    ("trem", "outstanding transport deferral, MWh"),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CostCategory {
    PlantCapex,
    PlantFom,
    StorageCapex,
    StorageFom,
    Decommissioning,
    Vom,
    NonGasFuel,
    TransmissionCapex,
    TransmissionFom,
    Ccs,
    PowerShedding,
    ImportFom,
    PipelineCapex,
    PipelineFom,
    PipelineDecommissioning,
    NgSupply,
    SvlCapex,
    SvlFom,
    GasShedding,
    Lcf,
}

impl CostCategory {
    pub const ALL: [CostCategory; 20] = [
        CostCategory::PlantCapex,
        CostCategory::PlantFom,
        CostCategory::StorageCapex,
        CostCategory::StorageFom,
        CostCategory::Decommissioning,
        CostCategory::Vom,
        CostCategory::NonGasFuel,
        CostCategory::TransmissionCapex,
        CostCategory::TransmissionFom,
        CostCategory::Ccs,
        CostCategory::PowerShedding,
        CostCategory::ImportFom,
        CostCategory::PipelineCapex,
        CostCategory::PipelineFom,
        CostCategory::PipelineDecommissioning,
        CostCategory::NgSupply,
        CostCategory::SvlCapex,
        CostCategory::SvlFom,
        CostCategory::GasShedding,
        CostCategory::Lcf,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CostCategory::PlantCapex => "plant_capex",
            CostCategory::PlantFom => "plant_fom",
            CostCategory::StorageCapex => "storage_capex",
            CostCategory::StorageFom => "storage_fom",
            CostCategory::Decommissioning => "decommissioning",
            CostCategory::Vom => "vom",
            CostCategory::NonGasFuel => "non_gas_fuel",
            CostCategory::TransmissionCapex => "transmission_capex",
            CostCategory::TransmissionFom => "transmission_fom",
            CostCategory::Ccs => "ccs",
            CostCategory::PowerShedding => "power_shedding",
            CostCategory::ImportFom => "import_fom",
            CostCategory::PipelineCapex => "pipeline_capex",
            CostCategory::PipelineFom => "pipeline_fom",
            CostCategory::PipelineDecommissioning => "pipeline_decommissioning",
            CostCategory::NgSupply => "ng_supply",
            CostCategory::SvlCapex => "svl_capex",
            CostCategory::SvlFom => "svl_fom",
            CostCategory::GasShedding => "gas_shedding",
            CostCategory::Lcf => "lcf",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.as_str() == s)
    }

    /// True for terms of the power-system objective, false for gas.
    pub fn is_power(self) -> bool {
        !matches!(
            self,
            CostCategory::PipelineCapex
                | CostCategory::PipelineFom
                | CostCategory::PipelineDecommissioning
                | CostCategory::NgSupply
                | CostCategory::SvlCapex
                | CostCategory::SvlFom
                | CostCategory::GasShedding
                | CostCategory::Lcf
        )
    }
}

/// Deferrable transport load windows, hours.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlexSpec {
    pub advance: usize,
    pub defer: usize,
}

impl Default for FlexSpec {
    fn default() -> Self {
        FlexSpec { advance: 5, defer: 5 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScenarioSpec {
    pub name: String,
    /// Emissions reduction relative to the baseline, in [0, 1].
    pub emissions_target: f64,
    pub allow_ccs: bool,
    pub methane_accounting: bool,
    pub transport_flex: Option<FlexSpec>,
    /// Adds angle-based flow rows on top of the transport bounds.
    pub dc_power_flow: bool,
    pub lcf_levels: Option<Vec<LcfLevel>>,
}

impl Default for ScenarioSpec {
    fn default() -> Self {
        ScenarioSpec {
            name: "base".into(),
            emissions_target: 0.0,
            allow_ccs: true,
            methane_accounting: false,
            transport_flex: None,
            dc_power_flow: false,
            lcf_levels: None,
        }
    }
}

impl ScenarioSpec {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.emissions_target) {
            return Err(CoreError::invalid(format!(
                "emissions target must lie in [0, 1], got {}",
                self.emissions_target
            )));
        }
        if let Some(f) = self.transport_flex {
            if f.advance >= HOURS_PER_DAY || f.defer >= HOURS_PER_DAY {
                return Err(CoreError::invalid(format!(
                    "flexibility windows ({}, {}) must be shorter than a day",
                    f.advance, f.defer
                )));
            }
        }
        Ok(())
    }

    /// The network as this scenario sees it.
    pub fn apply(&self, net: &NetworkModel) -> NetworkModel {
        let mut m = if self.allow_ccs { net.clone() } else { net.without_ccs() };
        if self.methane_accounting {
            m = m.with_methane_accounting();
        }
        if let Some(levels) = &self.lcf_levels {
            m.params.lcf_levels = levels.clone();
        }
        m
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelInputs {
    pub network: NetworkModel,
    pub time: TimeStructure,
    pub demand: DemandInputs,
}

impl ModelInputs {
    /// Loads a case: network files and time series from `dir`, with
    /// `rep_days.csv` if present, otherwise `fallback_rep_days` evenly spaced
    /// days.
    pub fn load(dir: &Path, fallback_rep_days: Option<usize>) -> Result<Self> {
        let rep = dir.join("rep_days.csv");
        let time = match (fallback_rep_days, rep.exists()) {
            (Some(n), _) => TimeStructure::evenly_spaced(n)?,
            (None, true) => TimeStructure::read(&rep)?,
            (None, false) => return Err(CoreError::Missing(rep.display().to_string())),
        };
        Ok(ModelInputs {
            network: load_network(dir)?,
            time,
            demand: DemandInputs::load(dir)?,
        })
    }
}

/// Shared state while the blocks are added.
pub(crate) struct Builder<'a> {
    pub net: &'a NetworkModel,
    pub ts: &'a TimeStructure,
    pub dem: &'a DemandInputs,
    pub sc: &'a ScenarioSpec,
    pub p: Program,
    /// Extra terms of the power balance per node index and model hour.
    pub balance: Vec<Vec<Vec<(VarId, f64)>>>,
    /// Generation variables per (node index, plant id).
    pub gen: BTreeMap<(usize, String), Vec<VarId>>,
    pub xop: BTreeMap<(usize, String), VarId>,
    /// Terms of the capacity reserve row per model hour; the import node
    /// contributes a constant instead.
    pub crm: Vec<Vec<(VarId, f64)>>,
    pub crm_constant: f64,
    /// Power nodes hosting gas-fired plants.
    pub fuel_nodes: BTreeSet<String>,
    /// Gas deliveries per power node: one series of representative-day
    /// variables per adjacent gas node.
    pub fge: BTreeMap<String, Vec<Vec<VarId>>>,
}

impl<'a> Builder<'a> {
    pub fn obj(&mut self, v: VarId, coef: f64, cat: CostCategory) -> Result<()> {
        Ok(self.p.add_objective(v, coef, cat.as_str())?)
    }

    pub fn constant(&mut self, cat: CostCategory, value: f64) -> Result<()> {
        Ok(self.p.add_objective_constant(cat.as_str(), value)?)
    }

    pub fn row(&mut self, name: String, terms: Vec<(VarId, f64)>, sense: Sense, rhs: f64) -> Result<()> {
        self.p.add_constr(name, terms, sense, rhs)?;
        Ok(())
    }

    pub fn node_index(&self, id: &str) -> usize {
        self.net.power_nodes.iter().position(|n| n.id == id).expect("validated node id")
    }

    /// Demand at model hour `t`.
    pub fn demand(&self, node: &str, t: usize) -> f64 {
        self.dem.power_demand(node, self.ts.original_hour(t))
    }

    pub fn wacc(&self) -> f64 {
        self.net.params.wacc
    }
}

/// Builds the full program for one scenario.
pub fn assemble(inputs: &ModelInputs, scenario: &ScenarioSpec) -> Result<Program> {
    scenario.validate()?;
    let net = scenario.apply(&inputs.network);
    net.params.validate()?;
    inputs.demand.validate(&net)?;
    let ts = &inputs.time;
    let hours = ts.num_hours();
    let mut b = Builder {
        net: &net,
        ts,
        dem: &inputs.demand,
        sc: scenario,
        p: Program::new(scenario.name.clone()),
        balance: vec![vec![Vec::new(); hours]; net.power_nodes.len()],
        gen: BTreeMap::new(),
        xop: BTreeMap::new(),
        crm: vec![Vec::new(); hours],
        crm_constant: 0.0,
        fuel_nodes: net
            .power_nodes
            .iter()
            .filter(|n| {
                n.plants
                    .iter()
                    .any(|np| net.plant(&np.plant).is_some_and(|p| p.class.is_gas_fired()))
            })
            .map(|n| n.id.clone())
            .collect(),
        fge: BTreeMap::new(),
    };
    power::build(&mut b)?;
    import::build(&mut b)?;
    if let Some(f) = scenario.transport_flex {
        flex::build(&mut b, f)?;
    }
    power::finish(&mut b)?;
    gas::build(&mut b)?;
    coupling::build(&mut b)?;

    let mut p = b.p;
    p.metadata.insert(
        "scenario".into(),
        serde_json::to_string(scenario).map_err(|e| CoreError::invalid(e.to_string()))?,
    );
    p.metadata.insert("rep_days".into(), ts.num_rep_days().to_string());
    for (block, role) in BLOCKS {
        if p.variables().iter().any(|v| v.block() == *block) {
            p.metadata.insert(format!("block.{block}"), role.to_string());
        }
    }
    Ok(p)
}

/// (variables, constraints) per block prefix.
pub fn block_counts(p: &Program) -> BTreeMap<String, (usize, usize)> {
    let mut out: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    for v in p.variables() {
        out.entry(v.block().to_string()).or_default().0 += 1;
    }
    for c in p.constraints() {
        out.entry(c.block().to_string()).or_default().1 += 1;
    }
    out
}
