//! Map from the parameter keys requested by the model builders to the input
//! file and column that supply them.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FieldRef {
    pub key: &'static str,
    pub file: &'static str,
    /// Column name, or key name for `params.csv`.
    pub column: &'static str,
}

macro_rules! catalog {
    ($($key:literal => $file:literal : $col:literal,)*) => {
        pub const CATALOG: &[FieldRef] = &[$(FieldRef { key: $key, file: $file, column: $col },)*];
    };
}

catalog! {
    "node.co2_distance" => "nodes.csv": "co2_distance",
    "node.is_import" => "nodes.csv": "is_import",
    "node.zone" => "nodes.csv": "zone",
    "node.gas_nodes" => "nodes.csv": "gas_nodes",
    "node_plant.existing" => "node_plants.csv": "existing",
    "node_plant.buildable" => "node_plants.csv": "buildable",
    "plant.class" => "plants.csv": "class",
    "plant.resource_class" => "plants.csv": "resource_class",
    "plant.nameplate" => "plants.csv": "nameplate",
    "plant.min_output" => "plants.csv": "min_output",
    "plant.ramp" => "plants.csv": "ramp",
    "plant.heat_rate" => "plants.csv": "heat_rate",
    "plant.capture_rate" => "plants.csv": "capture_rate",
    "plant.capex" => "plants.csv": "capex",
    "plant.fom" => "plants.csv": "fom",
    "plant.vom" => "plants.csv": "vom",
    "plant.fuel_price" => "plants.csv": "fuel_price",
    "plant.decom_cost" => "plants.csv": "decom_cost",
    "plant.lifetime" => "plants.csv": "lifetime",
    "plant.multiplier" => "multipliers.csv": "multiplier",
    "resource.cap" => "resource_caps.csv": "cap",
    "line.exists" => "lines.csv": "exists",
    "line.capacity" => "lines.csv": "capacity",
    "line.susceptance" => "lines.csv": "susceptance",
    "line.capex" => "lines.csv": "capex",
    "line.fom" => "lines.csv": "fom",
    "line.lifetime" => "lines.csv": "lifetime",
    "storage.duration" => "storage.csv": "duration",
    "storage.charge_eff" => "storage.csv": "charge_eff",
    "storage.discharge_eff" => "storage.csv": "discharge_eff",
    "storage.self_discharge" => "storage.csv": "self_discharge",
    "storage.energy_capex" => "storage.csv": "energy_capex",
    "storage.power_capex" => "storage.csv": "power_capex",
    "storage.energy_fom" => "storage.csv": "energy_fom",
    "storage.power_fom" => "storage.csv": "power_fom",
    "storage.lifetime" => "storage.csv": "lifetime",
    "gas_node.inj_min" => "gas_nodes.csv": "inj_min",
    "gas_node.inj_max" => "gas_nodes.csv": "inj_max",
    "gas_node.svl" => "gas_nodes.csv": "svl",
    "pipe.exists" => "pipelines.csv": "exists",
    "pipe.capacity" => "pipelines.csv": "capacity",
    "pipe.capex" => "pipelines.csv": "capex",
    "pipe.fom" => "pipelines.csv": "fom",
    "pipe.decom_cost" => "pipelines.csv": "decom_cost",
    "pipe.lifetime" => "pipelines.csv": "lifetime",
    "svl.init_storage" => "svl.csv": "init_storage",
    "svl.init_vaporization" => "svl.csv": "init_vaporization",
    "svl.init_liquefaction" => "svl.csv": "init_liquefaction",
    "svl.liq_efficiency" => "svl.csv": "liq_efficiency",
    "svl.vpr_efficiency" => "svl.csv": "vpr_efficiency",
    "svl.boil_off" => "svl.csv": "boil_off",
    "svl.storage_capex" => "svl.csv": "storage_capex",
    "svl.vaporizer_capex" => "svl.csv": "vaporizer_capex",
    "svl.storage_fom" => "svl.csv": "storage_fom",
    "svl.vaporizer_fom" => "svl.csv": "vaporizer_fom",
    "svl.lifetime" => "svl.csv": "lifetime",
    "param.wacc" => "params.csv": "wacc",
    "param.ng_price" => "params.csv": "ng_price",
    "param.lcf_cap" => "params.csv": "lcf_cap",
    "param.lcf_price" => "params.csv": "lcf_price",
    "param.power_shed_cost" => "params.csv": "power_shed_cost",
    "param.gas_shed_cost" => "params.csv": "gas_shed_cost",
    "param.reserve_margin" => "params.csv": "reserve_margin",
    "param.ng_emission_factor" => "params.csv": "ng_emission_factor",
    "param.lcf_emission_factor" => "params.csv": "lcf_emission_factor",
    "param.power_baseline_emissions" => "params.csv": "power_baseline_emissions",
    "param.gas_baseline_emissions" => "params.csv": "gas_baseline_emissions",
    "param.ccs_capacity" => "params.csv": "ccs_capacity",
    "param.co2_pipe_cost" => "params.csv": "co2_pipe_cost",
    "param.co2_storage_cost" => "params.csv": "co2_storage_cost",
    "param.co2_pipe_energy" => "params.csv": "co2_pipe_energy",
    "param.co2_pump_energy" => "params.csv": "co2_pump_energy",
    "param.compressor_spacing" => "params.csv": "compressor_spacing",
    "param.import_energy_cap" => "params.csv": "import_energy_cap",
    "param.import_power_cap" => "params.csv": "import_power_cap",
    "param.import_fom" => "params.csv": "import_fom",
    "param.import_start_level" => "params.csv": "import_start_level",
    "param.import_spring_level" => "params.csv": "import_spring_level",
    "param.import_spring_hour" => "params.csv": "import_spring_hour",
    "param.import_end_level" => "params.csv": "import_end_level",
    "param.import_min_output" => "params.csv": "import_min_output",
    "param.import_ramp" => "params.csv": "import_ramp",
    "param.theta_max" => "params.csv": "theta_max",
}

pub fn lookup(key: &str) -> Option<&'static FieldRef> {
    CATALOG.iter().find(|f| f.key == key)
}
