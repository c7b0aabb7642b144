//! Time series that drive one model run.
//!
//! Files in a case directory (wide tables, 0-based index):
//! * `power_demand.csv`: `hour` + one MW column per power node (8760 rows).
//! * `gas_demand.csv`: `day` + one MMBtu column per gas node (365 rows).
//! * `cf.csv`: `hour` + one column per VRE plant, named `node.plant` or just
//!   `plant` for a profile shared by every node.
//! * `import_inflow.csv`: `hour, inflow[MWh]` for the import reservoir.
//! * `transport_share.csv`: `hour` + one column per node, the flexible
//!   transport fraction of load.
//!
//! Missing demand columns mean zero demand.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::time::{DAYS, HOURS};
use crate::error::{CoreError, Result};
use crate::network::{GasNodeKind, NetworkModel, PlantClass};
use crate::table::{read_wide, write_wide};

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct DemandInputs {
    pub power: BTreeMap<String, Vec<f64>>,
    pub gas: BTreeMap<String, Vec<f64>>,
    pub cf: BTreeMap<String, Vec<f64>>,
    pub import_inflow: Option<Vec<f64>>,
    pub transport_share: BTreeMap<String, Vec<f64>>,
}

fn read_map(path: &Path, index: &str, unit: &str) -> Result<BTreeMap<String, Vec<f64>>> {
    Ok(read_wide(path, index, unit)?.into_iter().collect())
}

fn opt_map(path: &Path, index: &str, unit: &str) -> Result<BTreeMap<String, Vec<f64>>> {
    if path.exists() {
        read_map(path, index, unit)
    } else {
        Ok(BTreeMap::new())
    }
}

impl DemandInputs {
    pub fn load(dir: &Path) -> Result<Self> {
        let power_path = dir.join("power_demand.csv");
        let gas_path = dir.join("gas_demand.csv");
        for p in [&power_path, &gas_path] {
            if !p.exists() {
                return Err(CoreError::Missing(p.display().to_string()));
            }
        }
        let inflow_path = dir.join("import_inflow.csv");
        let import_inflow = if inflow_path.exists() {
            let m = read_map(&inflow_path, "hour", "MWh")?;
            Some(
                m.get("inflow")
                    .cloned()
                    .ok_or_else(|| CoreError::Missing("column `inflow` in import_inflow.csv".into()))?,
            )
        } else {
            None
        };
        Ok(DemandInputs {
            power: read_map(&power_path, "hour", "MW")?,
            gas: read_map(&gas_path, "day", "MMBtu")?,
            cf: opt_map(&dir.join("cf.csv"), "hour", "")?,
            import_inflow,
            transport_share: opt_map(&dir.join("transport_share.csv"), "hour", "")?,
        })
    }

    pub fn write(&self, dir: &Path) -> Result<()> {
        let cols = |m: &BTreeMap<String, Vec<f64>>| m.iter().map(|(k, v)| (k.clone(), v.clone())).collect::<Vec<_>>();
        write_wide(&dir.join("power_demand.csv"), "hour", "MW", &cols(&self.power))?;
        write_wide(&dir.join("gas_demand.csv"), "day", "MMBtu", &cols(&self.gas))?;
        if !self.cf.is_empty() {
            write_wide(&dir.join("cf.csv"), "hour", "", &cols(&self.cf))?;
        }
        if let Some(inflow) = &self.import_inflow {
            write_wide(&dir.join("import_inflow.csv"), "hour", "MWh", &[("inflow".into(), inflow.clone())])?;
        }
        if !self.transport_share.is_empty() {
            write_wide(&dir.join("transport_share.csv"), "hour", "", &cols(&self.transport_share))?;
        }
        Ok(())
    }

    /// MW at calendar hour `h`.
    pub fn power_demand(&self, node: &str, h: usize) -> f64 {
        self.power.get(node).map_or(0.0, |s| s[h])
    }

    /// MMBtu on calendar day `d`.
    pub fn gas_demand(&self, node: &str, d: usize) -> f64 {
        self.gas.get(node).map_or(0.0, |s| s[d])
    }

    /// Capacity-factor series of `plant` at `node`, falling back to a
    /// plant-wide column.
    pub fn cf(&self, node: &str, plant: &str) -> Option<&[f64]> {
        self.cf
            .get(&format!("{node}.{plant}"))
            .or_else(|| self.cf.get(plant))
            .map(Vec::as_slice)
    }

    pub fn transport_share(&self, node: &str, h: usize) -> f64 {
        self.transport_share.get(node).map_or(0.0, |s| s[h])
    }

    /// Checks lengths, signs and that every column names a known node or
    /// plant.
    pub fn validate(&self, net: &NetworkModel) -> Result<()> {
        let check = |what: &str, key: &str, s: &[f64], len: usize, max: f64| -> Result<()> {
            if s.len() != len {
                return Err(CoreError::invalid(format!("{what} `{key}`: {} values, expected {len}", s.len())));
            }
            if s.iter().any(|v| !(*v >= 0.0 && *v <= max)) {
                return Err(CoreError::invalid(format!("{what} `{key}`: values must lie in [0, {max}]")));
            }
            Ok(())
        };
        for (k, s) in &self.power {
            if net.power_node(k).is_none() {
                return Err(CoreError::invalid(format!("power demand for unknown node `{k}`")));
            }
            check("power demand", k, s, HOURS, f64::INFINITY)?;
        }
        for (k, s) in &self.gas {
            let g = net
                .gas_node(k)
                .ok_or_else(|| CoreError::invalid(format!("gas demand for unknown gas node `{k}`")))?;
            check("gas demand", k, s, DAYS, f64::INFINITY)?;
            if g.kind == GasNodeKind::Boundary && s.iter().any(|v| *v != 0.0) {
                return Err(CoreError::invalid(format!("boundary gas node `{k}` has nonzero demand")));
            }
        }
        for (k, s) in &self.cf {
            let plant = k.rsplit('.').next().unwrap_or(k);
            match net.plant(plant) {
                Some(p) if p.class == PlantClass::Vre => {}
                _ => return Err(CoreError::invalid(format!("capacity factor column `{k}` does not name a VRE plant"))),
            }
            if let Some((node, _)) = k.rsplit_once('.') {
                if net.power_node(node).is_none() {
                    return Err(CoreError::invalid(format!("capacity factor column `{k}` names an unknown node")));
                }
            }
            check("capacity factor", k, s, HOURS, 1.0)?;
        }
        for (k, s) in &self.transport_share {
            if net.power_node(k).is_none() {
                return Err(CoreError::invalid(format!("transport share for unknown node `{k}`")));
            }
            check("transport share", k, s, HOURS, 1.0)?;
        }
        if let Some(s) = &self.import_inflow {
            check("import inflow", "inflow", s, HOURS, f64::INFINITY)?;
        }
        Ok(())
    }
}
