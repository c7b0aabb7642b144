//! TOML run configuration.
//!
//! ```toml
//! case = "cases/toy"
//! out = "out/toy"
//! rep_days = 30            # optional; replaces rep_days.csv
//!
//! [scenario]
//! emissions_target = 0.8
//! transport_flex = { advance = 5, defer = 5 }
//!
//! [scenarios.deep]         # selected with --scenario deep
//! emissions_target = 0.95
//!
//! [solver]
//! command = "python3 tools/highs_solve.py {input} {output} --mip-gap {mip_gap}"
//! mip_gap = 0.01
//!
//! [tolerances]
//! audit = 1e-6
//! ```
//!
//! Relative paths are resolved against the directory holding the file.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use jpong_core::model::{FlexSpec, ScenarioSpec};
use jpong_core::network::LcfLevel;
use jpong_milp::solver::{FileFormat, SolutionFormat};
use serde::Deserialize;

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Network tables, demand series and `rep_days.csv`.
    pub case: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub rep_days: Option<usize>,
    #[serde(default)]
    pub scenario: ScenarioPatch,
    #[serde(default)]
    pub scenarios: BTreeMap<String, ScenarioPatch>,
    #[serde(default)]
    pub solver: SolverConfig,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub demand: DemandPaths,
    #[serde(default)]
    pub weather: WeatherPaths,
    #[serde(default)]
    pub wind: WindPaths,
}

/// Scenario fields; anything left out keeps the default.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioPatch {
    pub emissions_target: Option<f64>,
    pub allow_ccs: Option<bool>,
    pub methane_accounting: Option<bool>,
    pub transport_flex: Option<FlexSpec>,
    pub dc_power_flow: Option<bool>,
    pub lcf_levels: Option<Vec<LcfLevel>>,
}

impl ScenarioPatch {
    pub fn apply(&self, s: &mut ScenarioSpec) {
        if let Some(v) = self.emissions_target {
            s.emissions_target = v;
        }
        if let Some(v) = self.allow_ccs {
            s.allow_ccs = v;
        }
        if let Some(v) = self.methane_accounting {
            s.methane_accounting = v;
        }
        if let Some(v) = self.transport_flex {
            s.transport_flex = Some(v);
        }
        if let Some(v) = self.dc_power_flow {
            s.dc_power_flow = v;
        }
        if let Some(v) = &self.lcf_levels {
            s.lcf_levels = Some(v.clone());
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverConfig {
    /// Template with `{input}`, `{output}` and `{mip_gap}` placeholders.
    pub command: Option<String>,
    pub mip_gap: f64,
    pub file_format: FileFormat,
    pub solution_format: SolutionFormat,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            command: None,
            mip_gap: jpong_milp::solver::DEFAULT_MIP_GAP,
            file_format: FileFormat::Lp,
            solution_format: SolutionFormat::Json,
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub audit: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { audit: 1e-6 }
    }
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DemandPaths {
    pub archetypes: Option<PathBuf>,
    pub weights: Option<PathBuf>,
    pub temperatures: Option<PathBuf>,
    /// RF, ME, MX, HE or HX; replaces the shares in the weights file.
    pub scenario: Option<String>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeatherPaths {
    pub weather: Option<PathBuf>,
    pub deltas: Option<PathBuf>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindPaths {
    pub sites: Option<PathBuf>,
    pub zones: Option<PathBuf>,
    pub speeds: Option<PathBuf>,
    pub temperatures: Option<PathBuf>,
    pub onshore_curve: Option<PathBuf>,
    pub offshore_curve: Option<PathBuf>,
}

impl RunConfig {
    pub fn read(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        let mut cfg: RunConfig = toml::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        let base = path.parent().unwrap_or(Path::new("."));
        cfg.resolve(base);
        cfg.check_paths()?;
        Ok(cfg)
    }

    fn resolve(&mut self, base: &Path) {
        let fix = |p: &mut Option<PathBuf>| {
            if let Some(x) = p {
                if x.is_relative() {
                    *x = base.join(&*x);
                }
            }
        };
        fix(&mut self.case);
        fix(&mut self.out);
        for p in [
            &mut self.demand.archetypes,
            &mut self.demand.weights,
            &mut self.demand.temperatures,
            &mut self.weather.weather,
            &mut self.weather.deltas,
            &mut self.wind.sites,
            &mut self.wind.zones,
            &mut self.wind.speeds,
            &mut self.wind.temperatures,
            &mut self.wind.onshore_curve,
            &mut self.wind.offshore_curve,
        ] {
            fix(p);
        }
    }

    /// Every input path named in the file must exist before anything runs.
    fn check_paths(&self) -> Result<(), String> {
        let inputs = [
            &self.case,
            &self.demand.archetypes,
            &self.demand.weights,
            &self.demand.temperatures,
            &self.weather.weather,
            &self.weather.deltas,
            &self.wind.sites,
            &self.wind.zones,
            &self.wind.speeds,
            &self.wind.temperatures,
            &self.wind.onshore_curve,
            &self.wind.offshore_curve,
        ];
        for p in inputs.into_iter().flatten() {
            if !p.exists() {
                return Err(format!("config path {} does not exist", p.display()));
            }
        }
        Ok(())
    }

    /// Base scenario with the named variant, if any, applied on top.
    pub fn scenario(&self, name: Option<&str>) -> Result<ScenarioSpec, String> {
        let mut s = ScenarioSpec::default();
        self.scenario.apply(&mut s);
        if let Some(n) = name {
            let patch = self
                .scenarios
                .get(n)
                .ok_or_else(|| format!("no scenario `{n}` in config"))?;
            patch.apply(&mut s);
            s.name = n.to_string();
        }
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_scenario_layers_on_base() {
        let cfg: RunConfig = toml::from_str(
            "[scenario]\nemissions_target = 0.5\nallow_ccs = false\n[scenarios.deep]\nemissions_target = 0.95\n",
        )
        .unwrap();
        let s = cfg.scenario(Some("deep")).unwrap();
        assert_eq!(s.emissions_target, 0.95);
        assert!(!s.allow_ccs);
        assert_eq!(s.name, "deep");
        assert!(cfg.scenario(Some("nope")).is_err());
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(toml::from_str::<RunConfig>("cas = \"x\"").is_err());
    }

    #[test]
    fn missing_path_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("run.toml");
        std::fs::write(&p, "case = \"nowhere\"\n").unwrap();
        let err = RunConfig::read(&p).unwrap_err();
        assert!(err.contains("nowhere"), "{err}");
    }
}
