//! File layer for demand synthesis.
//!
//! * `archetypes.csv`: `id, zone, fuel, efficiency, ducted, existing_heat_pump, loads, improved`
//!   where `loads`/`improved` name per-archetype CSVs with columns
//!   `hour, heat[kW], cool[kW], elec[kW], gas[kW]`.
//! * weights: `zone, homes, s, se, w, we` (shares of homes per archetype).
//! * temperatures: `hour` plus one °C column per zone.

use std::collections::BTreeMap;
use std::path::Path;

use super::{aggregate_zone, Archetype, Backup, Fuel, Loads, ScenarioWeights, ZoneDemand};
use crate::error::{CoreError, Result};
use crate::table::{read_wide, write_wide, Table};

/// Upgrade shares (summer, summer+envelope, winter, winter+envelope) of the
/// reference and electrification scenarios, as fractions of all homes.
pub fn named_scenario(name: &str) -> Option<[f64; 4]> {
    let pct = match name.to_ascii_uppercase().as_str() {
        "RF" => [6.2, 0.0, 0.0, 0.0],
        "ME" => [41.2, 0.0, 16.1, 0.0],
        "MX" => [12.4, 28.8, 4.8, 11.3],
        "HE" => [16.8, 0.0, 62.1, 0.0],
        "HX" => [5.0, 11.8, 18.6, 43.4],
        _ => return None,
    };
    Some(pct.map(|p| p / 100.0))
}

fn read_loads(path: &Path) -> Result<Loads> {
    let t = Table::read(path)?;
    t.require(&["heat", "cool", "elec", "gas"])?;
    Ok(Loads {
        heat: t.column("heat", "kW")?,
        cool: t.column("cool", "kW")?,
        elec: t.column("elec", "kW")?,
        gas: t.column("gas", "kW")?,
    })
}

pub fn load_archetypes(dir: &Path) -> Result<Vec<Archetype>> {
    let t = Table::read(&dir.join("archetypes.csv"))?;
    t.require(&["id", "zone", "fuel", "efficiency", "loads"])?;
    let mut out: Vec<Archetype> = Vec::new();
    for row in t.rows() {
        let id = row.id("id")?;
        if out.iter().any(|a| a.id == id) {
            return Err(CoreError::DuplicateId {
                file: "archetypes.csv".into(),
                id,
            });
        }
        let fuel_s = row.str("fuel")?;
        let fuel = Fuel::parse(fuel_s).ok_or_else(|| row.error("fuel", format!("unknown fuel `{fuel_s}`")))?;
        let efficiency = row.f64("efficiency", "")?;
        if !(efficiency > 0.0) {
            return Err(row.error("efficiency", "must be positive"));
        }
        let improved = match row.opt_str("improved") {
            Some(f) => Some(read_loads(&dir.join(f))?),
            None => None,
        };
        out.push(Archetype {
            zone: row.id("zone")?,
            backup: Backup {
                fuel,
                efficiency,
                ducted: row.opt_bool("ducted", false)?,
                existing_heat_pump: row.opt_bool("existing_heat_pump", false)?,
            },
            base: read_loads(&dir.join(row.str("loads")?))?,
            improved,
            id,
        });
    }
    Ok(out)
}

/// Per-zone homes per archetype and upgrade shares.
pub fn load_weights(path: &Path) -> Result<BTreeMap<String, (f64, [f64; 4])>> {
    let t = Table::read(path)?;
    t.require(&["zone", "homes", "s", "se", "w", "we"])?;
    let mut out = BTreeMap::new();
    for row in t.rows() {
        let zone = row.id("zone")?;
        let shares = [row.f64("s", "")?, row.f64("se", "")?, row.f64("w", "")?, row.f64("we", "")?];
        if out.insert(zone.clone(), (row.f64("homes", "")?, shares)).is_some() {
            return Err(CoreError::DuplicateId {
                file: t.file.clone(),
                id: zone,
            });
        }
    }
    Ok(out)
}

/// Builds zonal demand for every zone that has both weights and a
/// temperature column. `scenario` replaces the file shares when given.
pub fn synthesize(
    archetypes: &[Archetype],
    weights: &BTreeMap<String, (f64, [f64; 4])>,
    temps: &BTreeMap<String, Vec<f64>>,
    scenario: Option<[f64; 4]>,
) -> Result<BTreeMap<String, ZoneDemand>> {
    let mut out = BTreeMap::new();
    for (zone, (homes, shares)) in weights {
        let t = temps
            .get(zone)
            .ok_or_else(|| CoreError::Missing(format!("temperature series for zone {zone}")))?;
        let items: Vec<(Archetype, ScenarioWeights)> = archetypes
            .iter()
            .filter(|a| &a.zone == zone)
            .map(|a| {
                ScenarioWeights::from_shares(*homes, scenario.unwrap_or(*shares), a.backup.existing_heat_pump)
                    .map(|w| (a.clone(), w))
            })
            .collect::<Result<_>>()?;
        out.insert(zone.clone(), aggregate_zone(&items, t)?);
    }
    Ok(out)
}

pub fn read_temperatures(path: &Path) -> Result<BTreeMap<String, Vec<f64>>> {
    Ok(read_wide(path, "hour", "")?.into_iter().collect())
}

/// Writes `power_demand.csv` (hourly MW) and `gas_demand.csv` (daily MMBtu)
/// with one column per zone.
pub fn write_zone_demand(dir: &Path, zones: &BTreeMap<String, ZoneDemand>) -> Result<()> {
    let elec: Vec<(String, Vec<f64>)> = zones.iter().map(|(z, d)| (z.clone(), d.elec.clone())).collect();
    let gas: Vec<(String, Vec<f64>)> = zones.iter().map(|(z, d)| (z.clone(), d.gas_daily.clone())).collect();
    write_wide(&dir.join("power_demand.csv"), "hour", "MW", &elec)?;
    write_wide(&dir.join("gas_demand.csv"), "day", "MMBtu", &gas)
}
