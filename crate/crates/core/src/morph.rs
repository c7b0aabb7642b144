//! Monthly "shift" and "stretch" morphing of hourly weather by climate-model
//! deltas, plus dew point from the morphed temperature and humidity.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::table::Table;

/// Magnus coefficients (Sonntag 1990 fit over water).
pub const MAGNUS_A: f64 = 17.62;
pub const MAGNUS_B: f64 = 243.12;

const PERCENT: (f64, f64) = (0.0, 100.0);

/// Calendar month (1-12) per hour of a 365-day year starting 1 January.
pub fn months_of_year(hours: usize) -> Vec<u8> {
    const DAYS: [usize; 12] = [31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31];
    let mut out = Vec::with_capacity(hours);
    'outer: loop {
        for (m, d) in DAYS.iter().enumerate() {
            for _ in 0..d * 24 {
                if out.len() == hours {
                    break 'outer;
                }
                out.push(m as u8 + 1);
            }
        }
        if out.len() == hours {
            break;
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeatherSeries {
    /// Calendar month (1-12) of each hour, taken from the timestamp.
    pub month: Vec<u8>,
    pub timestamp: Vec<String>,
    pub temperature: Vec<f64>,
    pub wind_speed: Vec<f64>,
    pub relative_humidity: Vec<f64>,
    pub pressure: Vec<f64>,
    pub sky_cover: Vec<f64>,
    pub ghi: Vec<f64>,
    /// Other radiation columns (name, values); they share the GHI factor.
    pub radiation: Vec<(String, Vec<f64>)>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct MonthDelta {
    pub t_mean: f64,
    pub t_max: f64,
    pub t_min: f64,
    pub wind_scale: f64,
    pub rh_scale: f64,
    pub radiation_scale: f64,
    pub pressure_shift: f64,
    pub sky_shift: f64,
}

impl MonthDelta {
    pub fn identity() -> Self {
        MonthDelta {
            wind_scale: 1.0,
            rh_scale: 1.0,
            radiation_scale: 1.0,
            ..Default::default()
        }
    }
}

pub type MonthlyDeltas = [MonthDelta; 12];

fn month_index(m: u8) -> Result<usize> {
    if !(1..=12).contains(&m) {
        return Err(CoreError::invalid(format!("month {m} outside 1-12")));
    }
    Ok(m as usize - 1)
}

fn clamp(v: f64, bounds: Option<(f64, f64)>) -> f64 {
    match bounds {
        Some((lo, hi)) => v.clamp(lo, hi),
        None => v,
    }
}

/// `x + Δ_month`, optionally clamped.
pub fn shift(series: &[f64], months: &[u8], deltas: &[f64; 12], bounds: Option<(f64, f64)>) -> Result<Vec<f64>> {
    series
        .iter()
        .zip(months)
        .map(|(&x, &m)| {
            let d = deltas[month_index(m)?];
            let y = if d == 0.0 { x } else { x + d };
            Ok(clamp(y, bounds))
        })
        .collect()
}

/// `α_month · x`, optionally clamped.
pub fn stretch(series: &[f64], months: &[u8], factors: &[f64; 12], bounds: Option<(f64, f64)>) -> Result<Vec<f64>> {
    if let Some(f) = factors.iter().find(|f| !(**f >= 0.0)) {
        return Err(CoreError::invalid(format!("stretch factor {f} is negative")));
    }
    series
        .iter()
        .zip(months)
        .map(|(&x, &m)| Ok(clamp(x * factors[month_index(m)?], bounds)))
        .collect()
}

/// Shifts the monthly mean by `t_mean` and stretches deviations from it so
/// the monthly range grows by `t_max − t_min`.
pub fn morph_temperature(series: &[f64], months: &[u8], deltas: &MonthlyDeltas) -> Result<Vec<f64>> {
    let mut sum = [0.0; 12];
    let mut count = [0usize; 12];
    let mut hi = [f64::NEG_INFINITY; 12];
    let mut lo = [f64::INFINITY; 12];
    for (&t, &m) in series.iter().zip(months) {
        let i = month_index(m)?;
        sum[i] += t;
        count[i] += 1;
        hi[i] = hi[i].max(t);
        lo[i] = lo[i].min(t);
    }
    let mut alpha = [0.0; 12];
    let mut mean = [0.0; 12];
    for i in 0..12 {
        if count[i] > 0 {
            mean[i] = sum[i] / count[i] as f64;
            let range = hi[i] - lo[i];
            if range > 0.0 {
                alpha[i] = (deltas[i].t_max - deltas[i].t_min) / range;
            }
        }
    }
    series
        .iter()
        .zip(months)
        .map(|(&t, &m)| {
            let i = month_index(m)?;
            let d = &deltas[i];
            if d.t_mean == 0.0 && alpha[i] == 0.0 {
                return Ok(t);
            }
            Ok(t + d.t_mean + alpha[i] * (t - mean[i]))
        })
        .collect()
}

pub fn dew_point(t: f64, rh: f64) -> Result<f64> {
    if !(rh > 0.0 && rh <= 100.0) {
        return Err(CoreError::invalid(format!("relative humidity {rh} outside (0, 100]")));
    }
    let g = (rh / 100.0).ln() + MAGNUS_A * t / (MAGNUS_B + t);
    Ok(MAGNUS_B * g / (MAGNUS_A - g))
}

/// Applies every monthly operation to a weather series.
pub fn morph(w: &WeatherSeries, d: &MonthlyDeltas) -> Result<WeatherSeries> {
    let pick = |f: fn(&MonthDelta) -> f64| -> [f64; 12] { std::array::from_fn(|i| f(&d[i])) };
    let rad = pick(|x| x.radiation_scale);
    let months = &w.month;
    Ok(WeatherSeries {
        month: w.month.clone(),
        timestamp: w.timestamp.clone(),
        temperature: morph_temperature(&w.temperature, months, d)?,
        wind_speed: stretch(&w.wind_speed, months, &pick(|x| x.wind_scale), None)?,
        relative_humidity: stretch(&w.relative_humidity, months, &pick(|x| x.rh_scale), Some(PERCENT))?,
        pressure: shift(&w.pressure, months, &pick(|x| x.pressure_shift), None)?,
        sky_cover: shift(&w.sky_cover, months, &pick(|x| x.sky_shift), Some(PERCENT))?,
        ghi: stretch(&w.ghi, months, &rad, None)?,
        radiation: w
            .radiation
            .iter()
            .map(|(n, v)| Ok((n.clone(), stretch(v, months, &rad, None)?)))
            .collect::<Result<_>>()?,
    })
}

impl WeatherSeries {
    pub fn len(&self) -> usize {
        self.temperature.len()
    }

    pub fn is_empty(&self) -> bool {
        self.temperature.is_empty()
    }

    pub fn dew_points(&self) -> Result<Vec<f64>> {
        self.temperature
            .iter()
            .zip(&self.relative_humidity)
            .map(|(&t, &rh)| dew_point(t, rh.max(f64::MIN_POSITIVE)))
            .collect()
    }

    /// Columns: `timestamp` (ISO, month taken from characters 5-6),
    /// `temperature[C]`, `wind_speed[m/s]`, `relative_humidity`, `pressure[Pa]`,
    /// `sky_cover`, `ghi[W/m2]`, and any further `*_radiation` columns.
    pub fn read(path: &Path) -> Result<Self> {
        let t = Table::read(path)?;
        t.require(&["timestamp", "temperature", "wind_speed", "relative_humidity", "pressure", "sky_cover", "ghi"])?;
        let mut month = Vec::new();
        let mut timestamp = Vec::new();
        for row in t.rows() {
            let ts = row.str("timestamp")?;
            let m: u8 = ts
                .get(5..7)
                .and_then(|s| s.parse().ok())
                .filter(|m| (1..=12).contains(m))
                .ok_or_else(|| row.error("timestamp", format!("cannot read month from `{ts}`")))?;
            month.push(m);
            timestamp.push(ts.to_string());
        }
        let w = WeatherSeries {
            month,
            timestamp,
            temperature: t.column("temperature", "C")?,
            wind_speed: t.column("wind_speed", "m/s")?,
            relative_humidity: t.column("relative_humidity", "")?,
            pressure: t.column("pressure", "Pa")?,
            sky_cover: t.column("sky_cover", "")?,
            ghi: t.column("ghi", "W/m2")?,
            radiation: t
                .names()
                .iter()
                .filter(|n| n.ends_with("_radiation"))
                .map(|n| Ok((n.clone(), t.column(n, "W/m2")?)))
                .collect::<Result<_>>()?,
        };
        for (i, (&rh, &sky)) in w.relative_humidity.iter().zip(&w.sky_cover).enumerate() {
            if !(0.0..=100.0).contains(&rh) || !(0.0..=100.0).contains(&sky) {
                return Err(CoreError::invalid(format!("{}: humidity or sky cover outside [0, 100] at row {}", t.file, i + 1)));
            }
        }
        if w.ghi.iter().chain(w.radiation.iter().flat_map(|r| r.1.iter())).any(|v| *v < 0.0) {
            return Err(CoreError::invalid(format!("{}: negative radiation", t.file)));
        }
        Ok(w)
    }

    /// Writes the series back in the input layout with a `dew_point[C]`
    /// column appended.
    pub fn write(&self, path: &Path) -> Result<()> {
        let io = |source| CoreError::Io {
            path: path.to_path_buf(),
            source,
        };
        let dew = self.dew_points()?;
        let mut s = String::from(
            "timestamp,temperature[C],wind_speed[m/s],relative_humidity,pressure[Pa],sky_cover,ghi[W/m2]",
        );
        for (n, _) in &self.radiation {
            s.push_str(&format!(",{n}[W/m2]"));
        }
        s.push_str(",dew_point[C]\n");
        for h in 0..self.len() {
            s.push_str(&format!(
                "{},{},{},{},{},{},{}",
                self.timestamp[h],
                self.temperature[h],
                self.wind_speed[h],
                self.relative_humidity[h],
                self.pressure[h],
                self.sky_cover[h],
                self.ghi[h]
            ));
            for (_, v) in &self.radiation {
                s.push_str(&format!(",{}", v[h]));
            }
            s.push_str(&format!(",{}\n", dew[h]));
        }
        std::fs::write(path, s).map_err(io)
    }
}

/// Reads a 12-row deltas file with columns `month, t_mean, t_max, t_min,
/// wind, rh, radiation, pressure, sky_cover`; missing columns mean no change.
pub fn read_deltas(path: &Path) -> Result<MonthlyDeltas> {
    let t = Table::read(path)?;
    t.require(&["month"])?;
    let mut out = [MonthDelta::identity(); 12];
    let mut seen = [false; 12];
    for row in t.rows() {
        let m = row.number("month")?;
        if !(1.0..=12.0).contains(&m) || m.fract() != 0.0 {
            return Err(row.error("month", "expected 1-12"));
        }
        let i = m as usize - 1;
        if std::mem::replace(&mut seen[i], true) {
            return Err(row.error("month", "duplicate month"));
        }
        let d = &mut out[i];
        d.t_mean = row.opt_f64("t_mean", "C")?.unwrap_or(0.0);
        d.t_max = row.opt_f64("t_max", "C")?.unwrap_or(0.0);
        d.t_min = row.opt_f64("t_min", "C")?.unwrap_or(0.0);
        d.wind_scale = row.opt_f64("wind", "")?.unwrap_or(1.0);
        d.rh_scale = row.opt_f64("rh", "")?.unwrap_or(1.0);
        d.radiation_scale = row.opt_f64("radiation", "")?.unwrap_or(1.0);
        d.pressure_shift = row.opt_f64("pressure", "Pa")?.unwrap_or(0.0);
        d.sky_shift = row.opt_f64("sky_cover", "")?.unwrap_or(0.0);
        for (f, v) in [("wind", d.wind_scale), ("rh", d.rh_scale), ("radiation", d.radiation_scale)] {
            if !(v > 0.0) {
                return Err(row.error(f, "scale factor must be positive"));
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(CoreError::invalid(format!("{}: expected all 12 months", t.file)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn calendar() {
        let m = months_of_year(8760);
        assert_eq!(m[0], 1);
        assert_eq!(m[31 * 24], 2);
        assert_eq!(m[8759], 12);
    }
}
