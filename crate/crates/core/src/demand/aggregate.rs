use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{
    cop_cooling, dispatch_hour, size_summer, size_winter, Backup, BackupConfig, Fuel, DEFAULT_MIN_CAPACITY,
    DEFAULT_SWITCHOVER,
};
use crate::error::{CoreError, Result};

/// 1 kWh = 3412.14 Btu.
pub const KWH_TO_MMBTU: f64 = 3412.141_633e-6;

/// Hourly per-home series, kW. `elec` and `gas` are the non-HVAC end uses.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Loads {
    pub heat: Vec<f64>,
    pub cool: Vec<f64>,
    pub elec: Vec<f64>,
    pub gas: Vec<f64>,
}

impl Loads {
    pub fn len(&self) -> usize {
        self.heat.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heat.is_empty()
    }

    pub fn validate(&self, id: &str) -> Result<()> {
        let n = self.heat.len();
        for (name, s) in [("heat", &self.heat), ("cool", &self.cool), ("elec", &self.elec), ("gas", &self.gas)] {
            if s.len() != n {
                return Err(CoreError::invalid(format!("archetype {id}: `{name}` has {} hours, expected {n}", s.len())));
            }
            if s.iter().any(|v| !(*v >= 0.0)) {
                return Err(CoreError::invalid(format!("archetype {id}: `{name}` has negative or NaN values")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Archetype {
    pub id: String,
    pub zone: String,
    pub backup: Backup,
    pub base: Loads,
    /// Loads after envelope upgrades, if modelled.
    pub improved: Option<Loads>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubArchetype {
    Baseline,
    Summer,
    SummerEnvelope,
    Winter,
    WinterEnvelope,
}

impl SubArchetype {
    pub const ALL: [SubArchetype; 5] = [
        SubArchetype::Baseline,
        SubArchetype::Summer,
        SubArchetype::SummerEnvelope,
        SubArchetype::Winter,
        SubArchetype::WinterEnvelope,
    ];

    pub fn code(self) -> &'static str {
        match self {
            SubArchetype::Baseline => "b",
            SubArchetype::Summer => "s",
            SubArchetype::SummerEnvelope => "se",
            SubArchetype::Winter => "w",
            SubArchetype::WinterEnvelope => "we",
        }
    }

    pub fn from_code(s: &str) -> Option<Self> {
        SubArchetype::ALL.into_iter().find(|u| u.code() == s)
    }

    fn envelope(self) -> bool {
        matches!(self, SubArchetype::SummerEnvelope | SubArchetype::WinterEnvelope)
    }
}

/// Hourly per-home electricity and pipeline-gas demand, kW.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Profile {
    pub elec: Vec<f64>,
    pub gas: Vec<f64>,
}

/// Per-home demand of one sub-archetype over the given weather.
///
/// Heat pumps are sized on the same series they are dispatched against.
/// Baseline homes heat with their existing system and cool with an air
/// conditioner on the heat-pump cooling curve; homes that already own a heat
/// pump run it with resistance backup.
pub fn sub_archetype_profile(arch: &Archetype, sub: SubArchetype, temps: &[f64]) -> Result<Profile> {
    let loads = if sub.envelope() {
        arch.improved
            .as_ref()
            .ok_or_else(|| CoreError::Missing(format!("envelope-upgrade loads for archetype {}", arch.id)))?
    } else {
        &arch.base
    };
    loads.validate(&arch.id)?;
    if loads.len() != temps.len() {
        return Err(CoreError::invalid(format!(
            "archetype {}: {} hours of load but {} hours of temperature",
            arch.id,
            loads.len(),
            temps.len()
        )));
    }
    let b = &arch.backup;
    if b.existing_heat_pump && sub != SubArchetype::Baseline {
        return Err(CoreError::invalid(format!(
            "archetype {} already has a heat pump and takes no upgrades",
            arch.id
        )));
    }
    let mut elec = loads.elec.clone();
    let mut gas = loads.gas.clone();

    if sub == SubArchetype::Baseline && !b.existing_heat_pump {
        for h in 0..temps.len() {
            let fuel = loads.heat[h] / b.efficiency;
            match b.fuel {
                Fuel::Gas => gas[h] += fuel,
                Fuel::Electric => elec[h] += fuel,
                _ => {}
            }
            elec[h] += loads.cool[h] / cop_cooling(temps[h]);
        }
        return Ok(Profile { elec, gas });
    }

    let winter = matches!(sub, SubArchetype::Winter | SubArchetype::WinterEnvelope);
    let config = b.config();
    let spec = if winter {
        size_winter(&loads.heat, temps)?
    } else {
        let s = size_summer(&loads.cool, temps, DEFAULT_MIN_CAPACITY)?;
        if config == BackupConfig::Switchover {
            s.with_switchover(DEFAULT_SWITCHOVER)
        } else {
            s
        }
    };
    for h in 0..temps.len() {
        let d = dispatch_hour(loads.heat[h], loads.cool[h], temps[h], &spec, config, b.efficiency);
        elec[h] += d.hp_electric + d.backup_electric;
        if b.fuel == Fuel::Gas {
            gas[h] += d.backup_fuel;
        }
    }
    Ok(Profile { elec, gas })
}

/// Number of homes of one archetype in each sub-archetype.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScenarioWeights {
    /// Homes represented by the archetype.
    pub homes: f64,
    pub weights: BTreeMap<SubArchetype, f64>,
}

impl ScenarioWeights {
    /// Splits `homes` by shares of (summer, summer+envelope, winter,
    /// winter+envelope); the rest stays baseline. Homes that already have a
    /// heat pump stay baseline entirely.
    pub fn from_shares(homes: f64, shares: [f64; 4], existing_heat_pump: bool) -> Result<Self> {
        let total: f64 = shares.iter().sum();
        if shares.iter().any(|s| *s < 0.0) || total > 1.0 + 1e-12 {
            return Err(CoreError::invalid(format!("upgrade shares must be nonnegative and sum to at most 1, got {total}")));
        }
        let mut weights = BTreeMap::new();
        if existing_heat_pump {
            weights.insert(SubArchetype::Baseline, homes);
        } else {
            let subs = &SubArchetype::ALL[1..];
            let mut assigned = 0.0;
            for (u, s) in subs.iter().zip(shares) {
                weights.insert(*u, s * homes);
                assigned += s * homes;
            }
            weights.insert(SubArchetype::Baseline, (homes - assigned).max(0.0));
        }
        let w = ScenarioWeights { homes, weights };
        w.validate()?;
        Ok(w)
    }

    pub fn get(&self, u: SubArchetype) -> f64 {
        self.weights.get(&u).copied().unwrap_or(0.0)
    }

    pub fn validate(&self) -> Result<()> {
        if self.weights.values().any(|w| !(*w >= 0.0)) {
            return Err(CoreError::invalid("sub-archetype weights must be nonnegative"));
        }
        let sum: f64 = self.weights.values().sum();
        if (sum - self.homes).abs() > 1e-9 * self.homes.abs().max(1.0) {
            return Err(CoreError::invalid(format!(
                "sub-archetype weights sum to {sum}, archetype weight is {}",
                self.homes
            )));
        }
        Ok(())
    }

    pub fn scaled(&self, k: f64) -> Self {
        ScenarioWeights {
            homes: self.homes * k,
            weights: self.weights.iter().map(|(u, w)| (*u, w * k)).collect(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ZoneDemand {
    /// MW per hour.
    pub elec: Vec<f64>,
    /// MMBtu per hour.
    pub gas_hourly: Vec<f64>,
    /// MMBtu per day.
    pub gas_daily: Vec<f64>,
}

/// Weighted sum of sub-archetype profiles over the archetypes of one zone.
pub fn aggregate_zone(items: &[(Archetype, ScenarioWeights)], temps: &[f64]) -> Result<ZoneDemand> {
    let n = temps.len();
    let mut elec = vec![0.0; n];
    let mut gas = vec![0.0; n];
    for (arch, w) in items {
        w.validate().map_err(|e| CoreError::invalid(format!("archetype {}: {e}", arch.id)))?;
        for u in SubArchetype::ALL {
            let wu = w.get(u);
            if wu == 0.0 {
                continue;
            }
            let p = sub_archetype_profile(arch, u, temps)?;
            for h in 0..n {
                elec[h] += wu * p.elec[h] / 1000.0;
                gas[h] += wu * p.gas[h] * KWH_TO_MMBTU;
            }
        }
    }
    let gas_daily = gas.chunks(24).map(|c| c.iter().sum()).collect();
    Ok(ZoneDemand {
        elec,
        gas_hourly: gas,
        gas_daily,
    })
}
