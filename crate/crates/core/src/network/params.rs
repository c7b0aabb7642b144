use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::table::Table;
use crate::units;

/// One step of the low-carbon-fuel supply curve: the cumulative availability
/// at the top of the step and the price within it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LcfLevel {
    /// MMBtu/yr.
    pub cap: f64,
    /// $/MMBtu.
    pub price: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SystemParams {
    pub wacc: f64,
    /// $/MMBtu.
    pub ng_price: f64,
    pub lcf_levels: Vec<LcfLevel>,
    /// $/MWh.
    pub power_shed_cost: f64,
    /// $/MMBtu.
    pub gas_shed_cost: f64,
    pub reserve_margin: f64,
    /// t CO2 per MMBtu of fossil gas.
    pub ng_emission_factor: f64,
    /// t CO2eq per MMBtu of LCF consumed; zero unless methane accounting is on.
    pub lcf_emission_factor: f64,
    /// t CO2.
    pub power_baseline_emissions: f64,
    pub gas_baseline_emissions: f64,
    /// t CO2/yr.
    pub ccs_capacity: f64,
    /// Levelised $/mile per annual tonne of pipeline capacity.
    pub co2_pipe_cost: f64,
    /// $/t stored.
    pub co2_storage_cost: f64,
    /// MWh per mile per (t/h) of pipeline capacity.
    pub co2_pipe_energy: f64,
    /// MWh per (t/h) captured, per compressor.
    pub co2_pump_energy: f64,
    /// Miles between compressor stations.
    pub compressor_spacing: f64,
    /// MWh.
    pub import_energy_cap: f64,
    /// MW.
    pub import_power_cap: f64,
    /// $/MW/yr.
    pub import_fom: f64,
    pub import_start_level: f64,
    pub import_spring_level: f64,
    /// Calendar hour (1-based, counted from the start of the year) at which
    /// the spring ceiling applies.
    pub import_spring_hour: usize,
    pub import_end_level: f64,
    /// Optional minimum output and hourly ramp of the import node, as
    /// fractions of its power capacity.
    pub import_min_output: Option<f64>,
    pub import_ramp: Option<f64>,
    /// Default transmission FOM, $/MW/mile/yr.
    pub line_fom: f64,
    /// Default pipeline FOM, $/mile/yr.
    pub pipe_fom: f64,
    pub methane_ng_intensity: f64,
    pub methane_lcf_intensity: f64,
    pub methane_capture_rate: f64,
    /// Phase-angle bound (radians) for the optional DC power-flow rows.
    pub theta_max: f64,
}

impl Default for SystemParams {
    fn default() -> Self {
        SystemParams {
            wacc: 0.071,
            ng_price: 5.45,
            lcf_levels: vec![
                LcfLevel { cap: 70.8e6, price: 10.0 },
                LcfLevel { cap: 214.5e6, price: 25.0 },
                LcfLevel { cap: 1000e6, price: 50.0 },
            ],
            power_shed_cost: 10_000.0,
            gas_shed_cost: 10_000.0,
            reserve_margin: 0.15,
            ng_emission_factor: 0.053,
            lcf_emission_factor: 0.0,
            power_baseline_emissions: 43.9e6,
            gas_baseline_emissions: 23.6e6,
            ccs_capacity: 12.78e6,
            co2_pipe_cost: 0.0196,
            co2_storage_cost: 0.13,
            co2_pipe_energy: 0.00365e-6,
            co2_pump_energy: 0.478e-6,
            compressor_spacing: 3.3,
            import_energy_cap: 175.5e6,
            import_power_cap: 41_100.0,
            import_fom: 29_312.0,
            import_start_level: 0.7,
            import_spring_level: 0.55,
            import_spring_hour: 2881,
            import_end_level: 0.7,
            import_min_output: None,
            import_ramp: None,
            line_fom: 49.3,
            pipe_fom: 21_600.0,
            methane_ng_intensity: 0.0649,
            methane_lcf_intensity: 0.00161,
            methane_capture_rate: 0.693,
            theta_max: 1.0,
        }
    }
}

/// (key, canonical unit). Keys not listed here are rejected.
const KEYS: &[(&str, &str)] = &[
    ("wacc", ""),
    ("ng_price", "$/MMBtu"),
    ("power_shed_cost", "$/MWh"),
    ("gas_shed_cost", "$/MMBtu"),
    ("reserve_margin", ""),
    ("ng_emission_factor", "t/MMBtu"),
    ("lcf_emission_factor", "t/MMBtu"),
    ("power_baseline_emissions", "t"),
    ("gas_baseline_emissions", "t"),
    ("ccs_capacity", "t/yr"),
    ("co2_pipe_cost", "$/mi/t"),
    ("co2_storage_cost", "$/t"),
    ("co2_pipe_energy", "MWh/mi/t/h"),
    ("co2_pump_energy", "MWh/t/h"),
    ("compressor_spacing", "mi"),
    ("import_energy_cap", "MWh"),
    ("import_power_cap", "MW"),
    ("import_fom", "$/MW/yr"),
    ("import_start_level", ""),
    ("import_spring_level", ""),
    ("import_spring_hour", ""),
    ("import_end_level", ""),
    ("import_min_output", ""),
    ("import_ramp", ""),
    ("line_fom", "$/MW/mi/yr"),
    ("pipe_fom", "$/mi/yr"),
    ("methane_ng_intensity", "t/MMBtu"),
    ("methane_lcf_intensity", "t/MMBtu"),
    ("methane_capture_rate", ""),
    ("theta_max", ""),
];

/// True if `key` (without unit) is accepted in `params.csv`.
pub fn is_param_key(key: &str) -> bool {
    KEYS.iter().any(|(k, _)| *k == key) || key == "lcf_cap" || key == "lcf_price"
}

impl SystemParams {
    /// Reads `params.csv` (`key,value` with the unit in the key, e.g.
    /// `ng_price[$/MMBtu],5.45`) on top of the defaults. LCF steps use keys
    /// `lcf_cap_<k>` and `lcf_price_<k>`; if any is present the whole curve
    /// is replaced.
    pub fn load(path: &Path) -> Result<Self> {
        let table = Table::read(path)?;
        table.require(&["key", "value"])?;
        let mut p = SystemParams::default();
        let mut caps: Vec<(usize, f64)> = Vec::new();
        let mut prices: Vec<(usize, f64)> = Vec::new();
        for row in table.rows() {
            let raw_key = row.str("key")?;
            let (key, unit) = units::split_header(raw_key);
            let raw: f64 = row.number("value")?;
            if let Some(k) = key.strip_prefix("lcf_cap_") {
                let idx = k.parse::<usize>().map_err(|_| row.error("key", "bad LCF level index"))?;
                let v = units::convert(raw, unit, "MMBtu").map_err(|e| row.error("value", e.to_string()))?;
                caps.push((idx, v));
                continue;
            }
            if let Some(k) = key.strip_prefix("lcf_price_") {
                let idx = k.parse::<usize>().map_err(|_| row.error("key", "bad LCF level index"))?;
                let v = units::convert(raw, unit, "$/MMBtu").map_err(|e| row.error("value", e.to_string()))?;
                prices.push((idx, v));
                continue;
            }
            let canonical = KEYS
                .iter()
                .find(|(k, _)| *k == key)
                .map(|(_, u)| *u)
                .ok_or_else(|| row.error("key", format!("unknown parameter `{key}`")))?;
            let v = units::convert(raw, unit, canonical).map_err(|e| row.error("value", e.to_string()))?;
            p.set(key, v);
        }
        if !caps.is_empty() || !prices.is_empty() {
            caps.sort_by_key(|c| c.0);
            prices.sort_by_key(|c| c.0);
            let ci: Vec<usize> = caps.iter().map(|c| c.0).collect();
            let pi: Vec<usize> = prices.iter().map(|c| c.0).collect();
            if ci != pi {
                return Err(CoreError::invalid("params.csv: LCF caps and prices must use the same level indices"));
            }
            p.lcf_levels = caps
                .iter()
                .zip(&prices)
                .map(|(c, pr)| LcfLevel { cap: c.1, price: pr.1 })
                .collect();
        }
        p.validate()?;
        Ok(p)
    }

    fn set(&mut self, key: &str, v: f64) {
        match key {
            "wacc" => self.wacc = v,
            "ng_price" => self.ng_price = v,
            "power_shed_cost" => self.power_shed_cost = v,
            "gas_shed_cost" => self.gas_shed_cost = v,
            "reserve_margin" => self.reserve_margin = v,
            "ng_emission_factor" => self.ng_emission_factor = v,
            "lcf_emission_factor" => self.lcf_emission_factor = v,
            "power_baseline_emissions" => self.power_baseline_emissions = v,
            "gas_baseline_emissions" => self.gas_baseline_emissions = v,
            "ccs_capacity" => self.ccs_capacity = v,
            "co2_pipe_cost" => self.co2_pipe_cost = v,
            "co2_storage_cost" => self.co2_storage_cost = v,
            "co2_pipe_energy" => self.co2_pipe_energy = v,
            "co2_pump_energy" => self.co2_pump_energy = v,
            "compressor_spacing" => self.compressor_spacing = v,
            "import_energy_cap" => self.import_energy_cap = v,
            "import_power_cap" => self.import_power_cap = v,
            "import_fom" => self.import_fom = v,
            "import_start_level" => self.import_start_level = v,
            "import_spring_level" => self.import_spring_level = v,
            "import_spring_hour" => self.import_spring_hour = v as usize,
            "import_end_level" => self.import_end_level = v,
            "import_min_output" => self.import_min_output = Some(v),
            "import_ramp" => self.import_ramp = Some(v),
            "line_fom" => self.line_fom = v,
            "pipe_fom" => self.pipe_fom = v,
            "methane_ng_intensity" => self.methane_ng_intensity = v,
            "methane_lcf_intensity" => self.methane_lcf_intensity = v,
            "methane_capture_rate" => self.methane_capture_rate = v,
            "theta_max" => self.theta_max = v,
            _ => unreachable!("key checked against KEYS"),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.wacc > 0.0) {
            return Err(CoreError::invalid("wacc must be positive"));
        }
        let mut prev_cap = 0.0;
        let mut prev_price = f64::NEG_INFINITY;
        for (k, l) in self.lcf_levels.iter().enumerate() {
            if !(l.cap > prev_cap) {
                return Err(CoreError::invalid(format!("LCF level {} must exceed the previous level", k + 1)));
            }
            if l.price < prev_price {
                return Err(CoreError::invalid(format!("LCF price at level {} decreases", k + 1)));
            }
            prev_cap = l.cap;
            prev_price = l.price;
        }
        for (name, v) in [
            ("reserve_margin", self.reserve_margin),
            ("import_start_level", self.import_start_level),
            ("import_spring_level", self.import_spring_level),
            ("import_end_level", self.import_end_level),
            ("methane_capture_rate", self.methane_capture_rate),
        ] {
            if !(0.0..=1.0).contains(&v) {
                return Err(CoreError::invalid(format!("{name} must lie in [0, 1], got {v}")));
            }
        }
        if !(self.compressor_spacing > 0.0) {
            return Err(CoreError::invalid("compressor_spacing must be positive"));
        }
        Ok(())
    }

    /// Methane-leakage accounting: upstream CO2eq intensity for fossil gas,
    /// a midstream debit on LCF and the reduced effective capture rate.
    pub fn methane_mode(&self) -> SystemParams {
        SystemParams {
            ng_emission_factor: self.methane_ng_intensity,
            lcf_emission_factor: self.methane_lcf_intensity,
            ..self.clone()
        }
    }

    /// LCF step widths `U_l − U_{l−1}`, with `U_0 = 0`.
    pub fn lcf_widths(&self) -> Vec<f64> {
        let mut prev = 0.0;
        self.lcf_levels
            .iter()
            .map(|l| {
                let w = l.cap - prev;
                prev = l.cap;
                w
            })
            .collect()
    }

    pub fn emissions_baseline(&self) -> f64 {
        self.power_baseline_emissions + self.gas_baseline_emissions
    }
}
