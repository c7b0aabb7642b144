use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use crate::error::{CoreError, Result};
use crate::table::Table;

use super::{
    Duration, GasNode, GasNodeKind, NetworkModel, NodePlant, Pipeline, PlantClass, PlantType, PowerNode,
    StorageType, SvlNode, SystemParams, TransmissionLine,
};

/// Files that must be present in a network directory. `params.csv`,
/// `multipliers.csv` and `resource_caps.csv` are optional.
pub const NETWORK_FILES: &[&str] = &[
    "nodes.csv",
    "plants.csv",
    "node_plants.csv",
    "lines.csv",
    "gas_nodes.csv",
    "pipelines.csv",
    "svl.csv",
    "storage.csv",
];

/// Decommissioning costs are spread over a ten-year retirement window.
const DECOM_SPREAD: f64 = 10.0;

fn read(dir: &Path, name: &str) -> Result<Table> {
    let path = dir.join(name);
    if !path.exists() {
        return Err(CoreError::Missing(path.display().to_string()));
    }
    Table::read(&path)
}

fn read_opt(dir: &Path, name: &str) -> Result<Option<Table>> {
    let path = dir.join(name);
    if path.exists() {
        Table::read(&path).map(Some)
    } else {
        Ok(None)
    }
}

struct Ids {
    file: &'static str,
    seen: BTreeSet<String>,
}

impl Ids {
    fn new(file: &'static str) -> Self {
        Ids {
            file,
            seen: BTreeSet::new(),
        }
    }

    fn insert(&mut self, id: &str) -> Result<()> {
        if !self.seen.insert(id.to_string()) {
            return Err(CoreError::DuplicateId {
                file: self.file.into(),
                id: id.into(),
            });
        }
        Ok(())
    }
}

fn dangling(file: &str, id: &str, kind: &'static str, target: &str) -> CoreError {
    CoreError::DanglingReference {
        file: file.into(),
        id: id.into(),
        kind,
        target: target.into(),
    }
}

fn fraction(row: &crate::table::Row<'_>, field: &str, v: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&v) {
        return Err(row.error(field, format!("must lie in [0, 1], got {v}")));
    }
    Ok(v)
}

/// Loads and cross-checks a network directory.
pub fn load_network(dir: &Path) -> Result<NetworkModel> {
    let params = match dir.join("params.csv") {
        p if p.exists() => SystemParams::load(&p)?,
        _ => SystemParams::default(),
    };

    let plants = load_plants(dir)?;
    let storage = load_storage(dir)?;
    let svl = load_svl(dir)?;
    let mut gas_nodes = load_gas_nodes(dir, &svl)?;
    let mut power_nodes = load_power_nodes(dir, &gas_nodes)?;
    attach_plants(dir, &mut power_nodes, &plants)?;
    for g in &mut gas_nodes {
        g.power_nodes = power_nodes
            .iter()
            .filter(|n| n.gas_nodes.contains(&g.id))
            .map(|n| n.id.clone())
            .collect();
    }
    let lines = load_lines(dir, &power_nodes, &params)?;
    let pipelines = load_pipelines(dir, &gas_nodes, &params)?;

    let mut model = NetworkModel {
        power_nodes,
        plants,
        lines,
        gas_nodes,
        pipelines,
        svl,
        storage,
        resource_caps: BTreeMap::new(),
        params,
    };
    load_multipliers(dir, &mut model)?;
    load_resource_caps(dir, &mut model)?;
    Ok(model)
}

fn load_plants(dir: &Path) -> Result<Vec<PlantType>> {
    let t = read(dir, "plants.csv")?;
    t.require(&["id", "class", "nameplate", "heat_rate", "capex", "lifetime"])?;
    let mut ids = Ids::new("plants.csv");
    let mut out = Vec::new();
    for row in t.rows() {
        let id = row.id("id")?;
        ids.insert(&id)?;
        let class_s = row.str("class")?;
        let class = PlantClass::parse(class_s).ok_or_else(|| row.error("class", format!("unknown class `{class_s}`")))?;
        let nameplate = row.f64("nameplate", "MW")?;
        if !(nameplate > 0.0) {
            return Err(row.error("nameplate", "must be positive"));
        }
        let min_output = fraction(&row, "min_output", row.opt_f64("min_output", "")?.unwrap_or(0.0))?;
        let ramp = match row.opt_f64("ramp", "")? {
            Some(r) => Some(fraction(&row, "ramp", r)?),
            None => None,
        };
        let heat_rate = row.f64("heat_rate", "MMBtu/MWh")?;
        if heat_rate < 0.0 {
            return Err(row.error("heat_rate", "must be nonnegative"));
        }
        let capture_rate = fraction(&row, "capture_rate", row.opt_f64("capture_rate", "")?.unwrap_or(0.0))?;
        let per_plant = [("$", 1.0), ("$/MW", nameplate)];
        let per_plant_yr = [("$/yr", 1.0), ("$/MW/yr", nameplate)];
        let capex = row.opt_f64_per("capex", &per_plant)?.ok_or_else(|| row.error("capex", "missing value"))?;
        let fom = row.opt_f64_per("fom", &per_plant_yr)?.unwrap_or(0.0);
        let vom = row.opt_f64("vom", "$/MWh")?.unwrap_or(0.0);
        let fuel_price = row.opt_f64("fuel_price", "$/MMBtu")?.unwrap_or(0.0);
        if class.is_gas_fired() && fuel_price != 0.0 {
            return Err(row.error("fuel_price", "gas-fired plants buy fuel through the gas network"));
        }
        let decom_cost = row.opt_f64_per("decom_cost", &per_plant)?.unwrap_or(0.0) / DECOM_SPREAD;
        let lifetime = row.f64("lifetime", "yr")?;
        if !(lifetime > 0.0) {
            return Err(row.error("lifetime", "must be positive"));
        }
        out.push(PlantType {
            id,
            class,
            resource_class: row.opt_str("resource_class").map(str::to_string),
            nameplate,
            min_output,
            ramp,
            heat_rate,
            capture_rate,
            capex,
            fom,
            vom,
            fuel_price,
            decom_cost,
            lifetime,
            multipliers: BTreeMap::new(),
        });
    }
    Ok(out)
}

fn load_storage(dir: &Path) -> Result<Vec<StorageType>> {
    let t = read(dir, "storage.csv")?;
    t.require(&["id", "charge_eff", "discharge_eff", "energy_capex", "power_capex", "lifetime"])?;
    let mut ids = Ids::new("storage.csv");
    let mut out = Vec::new();
    for row in t.rows() {
        let id = row.id("id")?;
        ids.insert(&id)?;
        let duration = match row.opt_str("duration").unwrap_or("short").to_ascii_lowercase().as_str() {
            "short" => Duration::Short,
            "long" => Duration::Long,
            other => return Err(row.error("duration", format!("expected short or long, got `{other}`"))),
        };
        let s = StorageType {
            id,
            duration,
            charge_eff: row.f64("charge_eff", "")?,
            discharge_eff: row.f64("discharge_eff", "")?,
            self_discharge: row.opt_f64("self_discharge", "")?.unwrap_or(0.0),
            energy_capex: row.f64("energy_capex", "$/MWh")?,
            power_capex: row.f64("power_capex", "$/MW")?,
            energy_fom: row.opt_f64("energy_fom", "$/MWh/yr")?.unwrap_or(0.0),
            power_fom: row.opt_f64("power_fom", "$/MW/yr")?.unwrap_or(0.0),
            lifetime: row.f64("lifetime", "yr")?,
        };
        for (f, v) in [("charge_eff", s.charge_eff), ("discharge_eff", s.discharge_eff)] {
            if !(v > 0.0 && v <= 1.0) {
                return Err(row.error(f, format!("must lie in (0, 1], got {v}")));
            }
        }
        let rt = s.round_trip();
        if !(rt > 0.0 && rt <= 1.0) {
            return Err(row.error("charge_eff", format!("round-trip efficiency {rt} outside (0, 1]")));
        }
        if !(0.0..1.0).contains(&s.self_discharge) {
            return Err(row.error("self_discharge", "must lie in [0, 1)"));
        }
        if !(s.lifetime > 0.0) {
            return Err(row.error("lifetime", "must be positive"));
        }
        out.push(s);
    }
    Ok(out)
}

fn load_svl(dir: &Path) -> Result<Vec<SvlNode>> {
    let t = read(dir, "svl.csv")?;
    t.require(&["id", "liq_efficiency", "vpr_efficiency", "storage_capex", "vaporizer_capex", "lifetime"])?;
    let mut ids = Ids::new("svl.csv");
    let mut out = Vec::new();
    for row in t.rows() {
        let id = row.id("id")?;
        ids.insert(&id)?;
        let s = SvlNode {
            id,
            init_storage: row.opt_f64("init_storage", "MMBtu")?.unwrap_or(0.0),
            init_vaporization: row.opt_f64("init_vaporization", "MMBtu/d")?.unwrap_or(0.0),
            init_liquefaction: row.opt_f64("init_liquefaction", "MMBtu/d")?.unwrap_or(0.0),
            liq_efficiency: row.f64("liq_efficiency", "")?,
            vpr_efficiency: row.f64("vpr_efficiency", "")?,
            boil_off: row.opt_f64("boil_off", "")?.unwrap_or(0.0),
            storage_capex: row.f64("storage_capex", "$/MMBtu")?,
            vaporizer_capex: row.f64("vaporizer_capex", "$/MMBtu/d")?,
            storage_fom: row.opt_f64("storage_fom", "$/MMBtu/yr")?.unwrap_or(0.0),
            vaporizer_fom: row.opt_f64("vaporizer_fom", "$/MMBtu/d/yr")?.unwrap_or(0.0),
            lifetime: row.f64("lifetime", "yr")?,
        };
        for (f, v) in [("liq_efficiency", s.liq_efficiency), ("vpr_efficiency", s.vpr_efficiency)] {
            if !(v > 0.0 && v <= 1.0) {
                return Err(row.error(f, format!("must lie in (0, 1], got {v}")));
            }
        }
        if !(0.0..1.0).contains(&s.boil_off) {
            return Err(row.error("boil_off", "must lie in [0, 1)"));
        }
        for (f, v) in [
            ("init_storage", s.init_storage),
            ("init_vaporization", s.init_vaporization),
            ("init_liquefaction", s.init_liquefaction),
        ] {
            if v < 0.0 {
                return Err(row.error(f, "must be nonnegative"));
            }
        }
        if !(s.lifetime > 0.0) {
            return Err(row.error("lifetime", "must be positive"));
        }
        out.push(s);
    }
    Ok(out)
}

fn load_gas_nodes(dir: &Path, svl: &[SvlNode]) -> Result<Vec<GasNode>> {
    let t = read(dir, "gas_nodes.csv")?;
    t.require(&["id", "kind"])?;
    let mut ids = Ids::new("gas_nodes.csv");
    let mut out = Vec::new();
    for row in t.rows() {
        let id = row.id("id")?;
        ids.insert(&id)?;
        let kind = match row.str("kind")?.to_ascii_lowercase().as_str() {
            "load" => GasNodeKind::Load,
            "boundary" => GasNodeKind::Boundary,
            other => return Err(row.error("kind", format!("expected load or boundary, got `{other}`"))),
        };
        let inj_min = row.opt_f64("inj_min", "MMBtu/d")?.unwrap_or(0.0);
        let inj_max = row.opt_f64("inj_max", "MMBtu/d")?.unwrap_or(0.0);
        if inj_min < 0.0 || inj_min > inj_max {
            return Err(row.error("inj_min", format!("need 0 <= inj_min <= inj_max, got {inj_min} > {inj_max}")));
        }
        let svl_ids = row.id_list("svl")?;
        for s in &svl_ids {
            if !svl.iter().any(|x| &x.id == s) {
                return Err(dangling("gas_nodes.csv", &id, "SVL site", s));
            }
        }
        out.push(GasNode {
            id,
            kind,
            inj_min,
            inj_max,
            svl: svl_ids,
            power_nodes: Vec::new(),
        });
    }
    Ok(out)
}

fn load_power_nodes(dir: &Path, gas: &[GasNode]) -> Result<Vec<PowerNode>> {
    let t = read(dir, "nodes.csv")?;
    t.require(&["id"])?;
    let mut ids = Ids::new("nodes.csv");
    let mut out = Vec::new();
    for row in t.rows() {
        let id = row.id("id")?;
        ids.insert(&id)?;
        let co2_distance = row.opt_f64("co2_distance", "mi")?.unwrap_or(0.0);
        if co2_distance < 0.0 {
            return Err(row.error("co2_distance", "must be nonnegative"));
        }
        let gas_nodes = row.id_list("gas_nodes")?;
        for g in &gas_nodes {
            if !gas.iter().any(|x| &x.id == g) {
                return Err(dangling("nodes.csv", &id, "gas node", g));
            }
        }
        out.push(PowerNode {
            zone: row.opt_str("zone").unwrap_or(&id).to_string(),
            id,
            is_import: row.opt_bool("is_import", false)?,
            co2_distance,
            gas_nodes,
            plants: Vec::new(),
        });
    }
    if out.iter().filter(|n| n.is_import).count() > 1 {
        return Err(CoreError::invalid("nodes.csv: at most one node may be flagged as the import node"));
    }
    Ok(out)
}

fn attach_plants(dir: &Path, nodes: &mut [PowerNode], plants: &[PlantType]) -> Result<()> {
    let t = read(dir, "node_plants.csv")?;
    t.require(&["node", "plant"])?;
    let mut seen = BTreeSet::new();
    for row in t.rows() {
        let node = row.id("node")?;
        let plant = row.id("plant")?;
        if !plants.iter().any(|p| p.id == plant) {
            return Err(dangling("node_plants.csv", &node, "plant type", &plant));
        }
        let key = format!("{node}/{plant}");
        if !seen.insert(key.clone()) {
            return Err(CoreError::DuplicateId {
                file: "node_plants.csv".into(),
                id: key,
            });
        }
        let existing = row.opt_f64("existing", "")?.unwrap_or(0.0);
        if existing < 0.0 {
            return Err(row.error("existing", "must be nonnegative"));
        }
        let n = nodes
            .iter_mut()
            .find(|n| n.id == node)
            .ok_or_else(|| dangling("node_plants.csv", &plant, "power node", &node))?;
        if n.is_import {
            return Err(row.error("node", "the import node cannot host plants"));
        }
        n.plants.push(NodePlant {
            plant,
            existing,
            buildable: row.opt_bool("buildable", true)?,
        });
    }
    Ok(())
}

fn load_lines(dir: &Path, nodes: &[PowerNode], params: &SystemParams) -> Result<Vec<TransmissionLine>> {
    let t = read(dir, "lines.csv")?;
    t.require(&["id", "from", "to", "exists", "capacity"])?;
    let mut ids = Ids::new("lines.csv");
    let mut out = Vec::new();
    for row in t.rows() {
        let id = row.id("id")?;
        ids.insert(&id)?;
        let from = row.id("from")?;
        let to = row.id("to")?;
        for end in [&from, &to] {
            if !nodes.iter().any(|n| &n.id == end) {
                return Err(dangling("lines.csv", &id, "power node", end));
            }
        }
        if from == to {
            return Err(row.error("to", "endpoints must differ"));
        }
        let capacity = row.f64("capacity", "MW")?;
        if !(capacity > 0.0) {
            return Err(row.error("capacity", "must be positive"));
        }
        let length = row.opt_f64("length", "mi")?.unwrap_or(0.0);
        let capex = row.opt_f64_per("capex", &[("$", 1.0), ("$/MW/mi", capacity * length)])?.unwrap_or(0.0);
        let fom = row
            .opt_f64_per("fom", &[("$/yr", 1.0), ("$/MW/mi/yr", capacity * length)])?
            .unwrap_or(params.line_fom * capacity * length);
        out.push(TransmissionLine {
            id,
            from,
            to,
            exists: row.bool("exists")?,
            capacity,
            susceptance: row.opt_f64("susceptance", "")?.unwrap_or(0.0),
            capex,
            fom,
            length,
            lifetime: row.opt_f64("lifetime", "yr")?.unwrap_or(30.0),
        });
    }
    Ok(out)
}

fn load_pipelines(dir: &Path, gas: &[GasNode], params: &SystemParams) -> Result<Vec<Pipeline>> {
    let t = read(dir, "pipelines.csv")?;
    t.require(&["id", "from", "to", "exists", "capacity"])?;
    let mut ids = Ids::new("pipelines.csv");
    let mut out = Vec::new();
    for row in t.rows() {
        let id = row.id("id")?;
        ids.insert(&id)?;
        let from = row.id("from")?;
        let to = row.id("to")?;
        for end in [&from, &to] {
            if !gas.iter().any(|n| &n.id == end) {
                return Err(dangling("pipelines.csv", &id, "gas node", end));
            }
        }
        if from == to {
            return Err(row.error("to", "endpoints must differ"));
        }
        let capacity = row.f64("capacity", "MMBtu/d")?;
        if !(capacity > 0.0) {
            return Err(row.error("capacity", "must be positive"));
        }
        let length = row.opt_f64("length", "mi")?.unwrap_or(0.0);
        let capex = row.opt_f64_per("capex", &[("$", 1.0), ("$/mi", length)])?.unwrap_or(0.0);
        let fom = row
            .opt_f64_per("fom", &[("$/yr", 1.0), ("$/mi/yr", length)])?
            .unwrap_or(params.pipe_fom * length);
        let decom_cost = row.opt_f64_per("decom_cost", &[("$", 1.0), ("$/mi", length)])?.unwrap_or(0.0) / DECOM_SPREAD;
        out.push(Pipeline {
            id,
            from,
            to,
            exists: row.bool("exists")?,
            capacity,
            capex,
            fom,
            decom_cost,
            length,
            lifetime: row.opt_f64("lifetime", "yr")?.unwrap_or(50.0),
        });
    }
    Ok(out)
}

fn load_multipliers(dir: &Path, model: &mut NetworkModel) -> Result<()> {
    let Some(t) = read_opt(dir, "multipliers.csv")? else {
        return Ok(());
    };
    t.require(&["plant", "state", "multiplier"])?;
    for row in t.rows() {
        let plant = row.id("plant")?;
        let state = row.id("state")?;
        let m = row.f64("multiplier", "")?;
        if !(m > 0.0) {
            return Err(row.error("multiplier", "must be positive"));
        }
        let p = model
            .plants
            .iter_mut()
            .find(|p| p.id == plant)
            .ok_or_else(|| dangling("multipliers.csv", &state, "plant type", &plant))?;
        if p.multipliers.insert(state.clone(), m).is_some() {
            return Err(CoreError::DuplicateId {
                file: "multipliers.csv".into(),
                id: format!("{plant}/{state}"),
            });
        }
    }
    Ok(())
}

fn load_resource_caps(dir: &Path, model: &mut NetworkModel) -> Result<()> {
    let Some(t) = read_opt(dir, "resource_caps.csv")? else {
        return Ok(());
    };
    t.require(&["class", "cap"])?;
    for row in t.rows() {
        let class = row.id("class")?;
        let cap = row.f64("cap", "MW")?;
        if cap < 0.0 {
            return Err(row.error("cap", "must be nonnegative"));
        }
        if model.resource_caps.insert(class.clone(), cap).is_some() {
            return Err(CoreError::DuplicateId {
                file: "resource_caps.csv".into(),
                id: class,
            });
        }
    }
    Ok(())
}
