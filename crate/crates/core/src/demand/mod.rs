//! Residential heat-pump demand: COP and capacity regressions, sizing,
//! hourly dispatch with backup heating, aggregation of sub-archetypes into
//! zonal profiles, and the peak-event length metric.

mod aggregate;
pub mod io;

use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};

pub use aggregate::{
    aggregate_zone, sub_archetype_profile, Archetype, Loads, Profile, ScenarioWeights, SubArchetype, ZoneDemand,
    KWH_TO_MMBTU,
};

/// Lower bound on either COP; the linear fits go below resistance heating
/// at extreme temperatures.
pub const COP_FLOOR: f64 = 1.0;
/// Capacity loss per °C below the rating temperature.
pub const DERATE_PER_DEG: f64 = 0.0153;
/// Temperature at which nameplate heating capacity is quoted.
pub const NAMEPLATE_TEMP: f64 = 8.3;
pub const SUMMER_OVERSIZE: f64 = 1.3;
pub const DEFAULT_SWITCHOVER: f64 = 5.0;
/// Capacity given to summer-sized pumps in homes with no cooling load, kW.
pub const DEFAULT_MIN_CAPACITY: f64 = 1.0;

pub fn cop_heating(t: f64) -> f64 {
    (0.045 * t + 2.73).max(COP_FLOOR)
}

pub fn cop_cooling(t: f64) -> f64 {
    (-0.116 * t + 7.35).max(COP_FLOOR)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SizingMode {
    Summer,
    Winter,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HeatPumpSpec {
    /// Heating capacity at `rating_temp`, kW.
    pub capacity: f64,
    /// Temperature used to pick the size, °C.
    pub sizing_temp: f64,
    pub mode: SizingMode,
    /// Temperature-invariant cooling capacity, kW.
    pub cooling_capacity: f64,
    pub switchover: Option<f64>,
}

impl HeatPumpSpec {
    /// Anchor of the derating line: the sizing temperature for winter-sized
    /// pumps, the nameplate temperature for summer-sized ones.
    pub fn rating_temp(&self) -> f64 {
        match self.mode {
            SizingMode::Winter => self.sizing_temp,
            SizingMode::Summer => NAMEPLATE_TEMP,
        }
    }

    pub fn with_switchover(mut self, t: f64) -> Self {
        self.switchover = Some(t);
        self
    }
}

pub fn heating_capacity(t: f64, spec: &HeatPumpSpec) -> f64 {
    ((1.0 - DERATE_PER_DEG * (spec.rating_temp() - t)) * spec.capacity).max(0.0)
}

/// Nearest-rank percentile: the value at 1-based rank `ceil(p/100 · n)` of
/// the sorted data (rank 1 for p = 0).
pub fn percentile(values: &[f64], p: f64) -> Result<f64> {
    if values.is_empty() {
        return Err(CoreError::invalid("percentile of an empty series"));
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    let rank = ((p / 100.0) * n as f64).ceil().clamp(1.0, n as f64) as usize;
    Ok(v[rank - 1])
}

fn check_pair(load: &[f64], temp: &[f64]) -> Result<()> {
    if load.is_empty() || load.len() != temp.len() {
        return Err(CoreError::invalid(format!(
            "sizing needs equal-length nonempty series, got {} and {}",
            load.len(),
            temp.len()
        )));
    }
    Ok(())
}

/// Sizes for the 99th-percentile heating load at the 1st-percentile
/// temperature.
pub fn size_winter(heat: &[f64], temp: &[f64]) -> Result<HeatPumpSpec> {
    check_pair(heat, temp)?;
    let mut spec = HeatPumpSpec {
        capacity: percentile(heat, 99.0)?,
        sizing_temp: percentile(temp, 1.0)?,
        mode: SizingMode::Winter,
        cooling_capacity: 0.0,
        switchover: None,
    };
    spec.cooling_capacity = heating_capacity(NAMEPLATE_TEMP, &spec);
    Ok(spec)
}

/// Sizes cooling at 1.3× the 99th-percentile cooling load; heating
/// nameplate equals the cooling capacity. `min_capacity` applies when the
/// home has no cooling load.
pub fn size_summer(cool: &[f64], temp: &[f64], min_capacity: f64) -> Result<HeatPumpSpec> {
    check_pair(cool, temp)?;
    let c = (SUMMER_OVERSIZE * percentile(cool, 99.0)?).max(min_capacity);
    Ok(HeatPumpSpec {
        capacity: c,
        sizing_temp: percentile(temp, 99.0)?,
        mode: SizingMode::Summer,
        cooling_capacity: c,
        switchover: None,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Fuel {
    Gas,
    Oil,
    Propane,
    Electric,
    Other,
    None,
}

impl Fuel {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s.to_ascii_lowercase().as_str() {
            "gas" | "natural_gas" | "ng" => Fuel::Gas,
            "oil" | "fuel_oil" => Fuel::Oil,
            "propane" => Fuel::Propane,
            "electric" | "electricity" => Fuel::Electric,
            "other" | "wood" => Fuel::Other,
            "none" => Fuel::None,
            _ => return None,
        })
    }
}

/// The home's existing heating system.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Backup {
    pub fuel: Fuel,
    pub efficiency: f64,
    pub ducted: bool,
    pub existing_heat_pump: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BackupConfig {
    /// Ducted, existing system as backup, heat pump off below switchover.
    Switchover,
    /// Existing system tops up the heat pump's shortfall.
    TopUp,
    /// Electric resistance tops up the shortfall at 100 % efficiency.
    Resistance,
}

impl Backup {
    pub fn config(&self) -> BackupConfig {
        if self.existing_heat_pump || matches!(self.fuel, Fuel::Electric | Fuel::None) {
            BackupConfig::Resistance
        } else if self.ducted {
            BackupConfig::Switchover
        } else {
            BackupConfig::TopUp
        }
    }
}

/// One hour of a heat pump plus backup, kW.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Dispatch {
    pub hp_electric: f64,
    pub backup_electric: f64,
    /// Fuel input to a combustion backup.
    pub backup_fuel: f64,
    pub hp_heat: f64,
    pub backup_heat: f64,
}

/// Serves one hour of heating and cooling load.
///
/// Below the switchover temperature a switchover system runs the backup
/// alone; above it any shortfall is topped up by the backup within the hour.
pub fn dispatch_hour(heat: f64, cool: f64, t: f64, spec: &HeatPumpSpec, config: BackupConfig, backup_eff: f64) -> Dispatch {
    let mut d = Dispatch::default();
    let off = config == BackupConfig::Switchover && spec.switchover.is_some_and(|s| t < s);
    d.hp_heat = if off { 0.0 } else { heat.min(heating_capacity(t, spec)) };
    d.backup_heat = heat - d.hp_heat;
    match config {
        BackupConfig::Resistance => d.backup_electric = d.backup_heat,
        _ => d.backup_fuel = if d.backup_heat > 0.0 { d.backup_heat / backup_eff } else { 0.0 },
    }
    d.hp_electric = d.hp_heat / cop_heating(t) + cool / cop_cooling(t);
    d
}

/// Length of the contiguous run around the highest value in `series`
/// during which every hour exceeds 75 % of that peak.
pub fn peak_event_length(series: &[f64], window: std::ops::Range<usize>) -> Result<usize> {
    if window.is_empty() || window.end > series.len() {
        return Err(CoreError::invalid("peak window must be nonempty and inside the series"));
    }
    let w = &series[window];
    let (arg, &peak) = w
        .iter()
        .enumerate()
        .fold((0, &w[0]), |best, cur| if cur.1 > best.1 { cur } else { best });
    let threshold = 0.75 * peak;
    let above = |v: f64| v > threshold;
    let mut lo = arg;
    while lo > 0 && above(w[lo - 1]) {
        lo -= 1;
    }
    let mut hi = arg;
    while hi + 1 < w.len() && above(w[hi + 1]) {
        hi += 1;
    }
    Ok(hi - lo + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nearest_rank() {
        let v: Vec<f64> = (0..100).map(f64::from).collect();
        assert_eq!(percentile(&v, 99.0).unwrap(), 98.0);
        assert_eq!(percentile(&v, 1.0).unwrap(), 0.0);
        assert_eq!(percentile(&v, 100.0).unwrap(), 99.0);
        assert_eq!(percentile(&[5.0], 50.0).unwrap(), 5.0);
        assert!(percentile(&[], 50.0).is_err());
    }

    #[test]
    fn backup_configs() {
        let b = |fuel, ducted, hp| Backup {
            fuel,
            efficiency: 0.9,
            ducted,
            existing_heat_pump: hp,
        };
        assert_eq!(b(Fuel::Gas, true, false).config(), BackupConfig::Switchover);
        assert_eq!(b(Fuel::Oil, false, false).config(), BackupConfig::TopUp);
        assert_eq!(b(Fuel::Electric, true, false).config(), BackupConfig::Resistance);
        assert_eq!(b(Fuel::Gas, true, true).config(), BackupConfig::Resistance);
    }
}
