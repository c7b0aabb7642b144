//! Input preparation commands: demand synthesis, weather morphing and wind
//! capacity factors. Outputs use the case-directory file names.

use std::path::Path;

use jpong_core::demand::io::{load_archetypes, load_weights, named_scenario, read_temperatures, synthesize, write_zone_demand};
use jpong_core::morph::{morph, read_deltas, WeatherSeries};
use jpong_core::table::{read_wide, write_wide};
use jpong_core::windcf::{cf_series, read_sites, read_zones, zone_cf, PowerCurve};

use crate::pipeline::{create_dir, log, output_err, Code, Failure, Stage};

fn input<T>(r: jpong_core::Result<T>) -> Stage<T> {
    r.map_err(|e| Failure::new(Code::Input, e))
}

pub fn synth_demand(archetypes: &Path, weights: &Path, temperatures: &Path, scenario: Option<&str>, out: &Path) -> Stage<()> {
    let shares = match scenario {
        Some(s) => Some(named_scenario(s).ok_or_else(|| {
            Failure::new(Code::Usage, format!("unknown electrification scenario `{s}` (RF, ME, MX, HE, HX)"))
        })?),
        None => None,
    };
    let arch = input(load_archetypes(archetypes))?;
    let w = input(load_weights(weights))?;
    let t = input(read_temperatures(temperatures))?;
    let zones = input(synthesize(&arch, &w, &t, shares))?;
    create_dir(out)?;
    write_zone_demand(out, &zones).map_err(|e| output_err(out, e))?;
    for (zone, d) in &zones {
        let peak = d.elec.iter().cloned().fold(f64::MIN, f64::max);
        log(
            "synth-demand",
            &[
                ("zone", zone.clone()),
                ("peak_mw", peak.to_string()),
                ("gas_mmbtu", d.gas_daily.iter().sum::<f64>().to_string()),
            ],
        );
    }
    Ok(())
}

pub fn morph_weather(weather: &Path, deltas: &Path, out: &Path) -> Stage<()> {
    let w = input(WeatherSeries::read(weather))?;
    let d = input(read_deltas(deltas))?;
    let m = input(morph(&w, &d))?;
    create_dir(out)?;
    let path = out.join("weather_morphed.csv");
    m.write(&path).map_err(|e| output_err(&path, e))?;
    log("morph", &[("hours", m.len().to_string()), ("out", path.display().to_string())]);
    Ok(())
}

pub struct WindInputs<'a> {
    pub sites: &'a Path,
    pub zones: &'a Path,
    /// Wide table: `hour` plus one m/s column per site id.
    pub speeds: &'a Path,
    /// Wide table: `hour` plus one °C column per site id.
    pub temperatures: &'a Path,
    pub onshore_curve: Option<&'a Path>,
    pub offshore_curve: Option<&'a Path>,
}

pub fn wind_cf(w: &WindInputs, out: &Path) -> Stage<()> {
    let sites = input(read_sites(w.sites))?;
    let zones = input(read_zones(w.zones))?;
    let speeds = input(read_wide(w.speeds, "hour", "m/s"))?;
    let temps = input(read_wide(w.temperatures, "hour", "C"))?;
    let curve = |p: Option<&Path>, fallback: fn() -> PowerCurve| match p {
        Some(p) => input(PowerCurve::read(p)),
        None => Ok(fallback()),
    };
    let onshore = curve(w.onshore_curve, PowerCurve::onshore)?;
    let offshore = curve(w.offshore_curve, PowerCurve::offshore)?;
    let column = |cols: &[(String, Vec<f64>)], id: &str, file: &Path| -> Stage<Vec<f64>> {
        cols.iter()
            .find(|(n, _)| n == id)
            .map(|(_, v)| v.clone())
            .ok_or_else(|| Failure::new(Code::Input, format!("{}: no column for site {id}", file.display())))
    };
    let mut cfs = Vec::with_capacity(sites.len());
    for s in &sites {
        let v = column(&speeds, &s.id, w.speeds)?;
        let t = column(&temps, &s.id, w.temperatures)?;
        let c = if s.offshore { &offshore } else { &onshore };
        cfs.push(input(cf_series(&v, &t, s, c))?);
    }
    let by_zone = input(zone_cf(&zones, &sites, &cfs))?;
    let cols: Vec<(String, Vec<f64>)> = by_zone.into_iter().collect();
    let path = out.join("wind_cf.csv");
    write_wide(&path, "hour", "", &cols).map_err(|e| output_err(&path, e))?;
    for (z, v) in &cols {
        let mean = if v.is_empty() { 0.0 } else { v.iter().sum::<f64>() / v.len() as f64 };
        log("windcf", &[("zone", z.clone()), ("mean_cf", mean.to_string())]);
    }
    Ok(())
}
