//! Two-network system: power nodes, plants, lines, gas nodes, pipelines and
//! storage-vaporization-liquefaction (SVL) sites, plus system-wide economic
//! and emissions parameters.
//!
//! All quantities are stored in canonical units (MW, MWh, MMBtu, t, $, yr,
//! miles). Cost fields hold overnight capital cost per asset; annualisation
//! happens in [`annualize`] / [`effective_capex`] when the model is built.

mod catalog;
mod econ;
mod load;
mod params;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

pub use catalog::{lookup as lookup_symbol, FieldRef, CATALOG};
pub use econ::{annualize, capital_recovery_factor, effective_capex, npv_offset};
pub use load::{load_network, NETWORK_FILES};
pub use params::{is_param_key, LcfLevel, SystemParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PlantClass {
    /// Generic thermal unit that burns neither pipeline gas nor uranium.
    Thermal,
    Vre,
    /// Gas-fired without capture.
    Gas,
    /// Gas-fired with carbon capture.
    Ccs,
    Nuclear,
    Hydro,
}

impl PlantClass {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s.to_ascii_lowercase().as_str() {
            "thermal" => PlantClass::Thermal,
            "vre" => PlantClass::Vre,
            "gas" | "gas-fired" | "gas_fired" => PlantClass::Gas,
            "ccs" => PlantClass::Ccs,
            "nuclear" => PlantClass::Nuclear,
            "hydro" => PlantClass::Hydro,
            _ => return None,
        })
    }

    /// Units with commitment, minimum output and ramping.
    pub fn is_thermal(self) -> bool {
        matches!(self, PlantClass::Thermal | PlantClass::Gas | PlantClass::Ccs | PlantClass::Nuclear)
    }

    pub fn is_gas_fired(self) -> bool {
        matches!(self, PlantClass::Gas | PlantClass::Ccs)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlantType {
    pub id: String,
    pub class: PlantClass,
    /// Resource-availability class (e.g. `solar`), if the type counts
    /// against a regional cap.
    pub resource_class: Option<String>,
    pub nameplate: f64,
    pub min_output: f64,
    /// Hourly ramp limit as a fraction of nameplate; `None` means unlimited.
    pub ramp: Option<f64>,
    pub heat_rate: f64,
    pub capture_rate: f64,
    /// Overnight capital cost, $/plant.
    pub capex: f64,
    /// $/plant/yr.
    pub fom: f64,
    /// $/MWh.
    pub vom: f64,
    /// $/MMBtu, for fuels bought outside the gas network.
    pub fuel_price: f64,
    /// $/plant, already spread over the ten-year retirement window.
    pub decom_cost: f64,
    pub lifetime: f64,
    /// State -> CAPEX multiplier. Empty means 1 everywhere.
    pub multipliers: BTreeMap<String, f64>,
}

impl PlantType {
    pub fn capacity(&self) -> f64 {
        self.nameplate
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NodePlant {
    pub plant: String,
    /// Initial number of plants.
    pub existing: f64,
    pub buildable: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PowerNode {
    pub id: String,
    /// Zone or state id, used for regional CAPEX multipliers.
    pub zone: String,
    pub is_import: bool,
    /// Distance to the CO2 storage site, miles.
    pub co2_distance: f64,
    pub gas_nodes: Vec<String>,
    pub plants: Vec<NodePlant>,
}

impl PowerNode {
    pub fn plant(&self, id: &str) -> Option<&NodePlant> {
        self.plants.iter().find(|p| p.plant == id)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransmissionLine {
    pub id: String,
    pub from: String,
    pub to: String,
    pub exists: bool,
    /// MW: initial capacity if existing, upper bound if candidate.
    pub capacity: f64,
    pub susceptance: f64,
    /// Overnight $/line.
    pub capex: f64,
    /// $/line/yr.
    pub fom: f64,
    pub length: f64,
    pub lifetime: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GasNodeKind {
    Load,
    Boundary,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GasNode {
    pub id: String,
    pub kind: GasNodeKind,
    /// MMBtu/day.
    pub inj_min: f64,
    pub inj_max: f64,
    pub svl: Vec<String>,
    /// Filled in from the power nodes' gas adjacency.
    pub power_nodes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Pipeline {
    pub id: String,
    pub from: String,
    pub to: String,
    pub exists: bool,
    /// MMBtu/day.
    pub capacity: f64,
    /// Overnight $/line.
    pub capex: f64,
    /// $/line/yr.
    pub fom: f64,
    /// $/line, already spread over the retirement window.
    pub decom_cost: f64,
    pub length: f64,
    pub lifetime: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SvlNode {
    pub id: String,
    /// MMBtu.
    pub init_storage: f64,
    /// MMBtu/day.
    pub init_vaporization: f64,
    pub init_liquefaction: f64,
    pub liq_efficiency: f64,
    pub vpr_efficiency: f64,
    /// Daily boil-off fraction.
    pub boil_off: f64,
    /// Overnight $/MMBtu of tank.
    pub storage_capex: f64,
    /// Overnight $/(MMBtu/d) of vaporizer.
    pub vaporizer_capex: f64,
    pub storage_fom: f64,
    pub vaporizer_fom: f64,
    pub lifetime: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Duration {
    Short,
    Long,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StorageType {
    pub id: String,
    pub duration: Duration,
    pub charge_eff: f64,
    pub discharge_eff: f64,
    /// Hourly self-discharge fraction.
    pub self_discharge: f64,
    /// Overnight $/MWh.
    pub energy_capex: f64,
    /// Overnight $/MW.
    pub power_capex: f64,
    /// $/MWh/yr.
    pub energy_fom: f64,
    /// $/MW/yr.
    pub power_fom: f64,
    pub lifetime: f64,
}

impl StorageType {
    pub fn round_trip(&self) -> f64 {
        self.charge_eff * self.discharge_eff
    }
}

/// Fully cross-referenced network. Immutable once loaded.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NetworkModel {
    pub power_nodes: Vec<PowerNode>,
    pub plants: Vec<PlantType>,
    pub lines: Vec<TransmissionLine>,
    pub gas_nodes: Vec<GasNode>,
    pub pipelines: Vec<Pipeline>,
    pub svl: Vec<SvlNode>,
    pub storage: Vec<StorageType>,
    /// Resource class -> cap, MW.
    pub resource_caps: BTreeMap<String, f64>,
    pub params: SystemParams,
}

impl NetworkModel {
    pub fn plant(&self, id: &str) -> Option<&PlantType> {
        self.plants.iter().find(|p| p.id == id)
    }

    pub fn power_node(&self, id: &str) -> Option<&PowerNode> {
        self.power_nodes.iter().find(|n| n.id == id)
    }

    pub fn import_node(&self) -> Option<&PowerNode> {
        self.power_nodes.iter().find(|n| n.is_import)
    }

    pub fn gas_node(&self, id: &str) -> Option<&GasNode> {
        self.gas_nodes.iter().find(|n| n.id == id)
    }

    /// Removes every plant type with carbon capture and all references to it.
    pub fn without_ccs(&self) -> NetworkModel {
        let mut m = self.clone();
        let dropped: BTreeSet<String> = m
            .plants
            .iter()
            .filter(|p| p.class == PlantClass::Ccs)
            .map(|p| p.id.clone())
            .collect();
        m.plants.retain(|p| !dropped.contains(&p.id));
        for n in &mut m.power_nodes {
            n.plants.retain(|p| !dropped.contains(&p.plant));
        }
        m
    }

    /// Copy with the methane-leakage accounting applied to the parameters and
    /// to every capture-equipped plant.
    pub fn with_methane_accounting(&self) -> NetworkModel {
        let mut m = self.clone();
        m.params = m.params.methane_mode();
        for p in &mut m.plants {
            if p.class == PlantClass::Ccs {
                p.capture_rate = m.params.methane_capture_rate;
            }
        }
        m
    }
}
