//! Hourly wind capacity factors from measured speeds: power-law shear to hub
//! height, tabulated power curve, cold-weather cutoff and a flat loss factor.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::table::Table;

/// Share of output kept after losses and downtime.
pub const LOSS_FACTOR: f64 = 0.81;
/// °C per metre of altitude.
pub const LAPSE_RATE: f64 = 6.5 / 1000.0;
/// Turbines stop below this hub-height temperature, °C.
pub const COLD_CUTOFF: f64 = -30.0;

pub const ONSHORE_HUB: f64 = 100.0;
pub const OFFSHORE_HUB: f64 = 150.0;
pub const ONSHORE_SHEAR: f64 = 1.0 / 7.0;
pub const OFFSHORE_SHEAR: f64 = 0.11;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PowerCurve {
    /// (speed m/s, output fraction), speeds strictly increasing.
    pub points: Vec<(f64, f64)>,
    /// Output is zero above this speed.
    pub cut_out: f64,
}

impl PowerCurve {
    pub fn new(points: Vec<(f64, f64)>, cut_out: f64) -> Result<Self> {
        if points.len() < 2 {
            return Err(CoreError::invalid("a power curve needs at least two points"));
        }
        for w in points.windows(2) {
            if !(w[1].0 > w[0].0) {
                return Err(CoreError::invalid("power curve speeds must be strictly increasing"));
            }
        }
        if points.iter().any(|p| !(0.0..=1.0).contains(&p.1)) {
            return Err(CoreError::invalid("power curve outputs must lie in [0, 1]"));
        }
        if cut_out < points[0].0 {
            return Err(CoreError::invalid("cut-out speed below cut-in"));
        }
        Ok(PowerCurve { points, cut_out })
    }

    /// `speed[m/s], output` table; the last speed is the cut-out.
    pub fn parse(name: &str, text: &str) -> Result<Self> {
        let t = Table::parse(name, text.as_bytes())?;
        t.require(&["speed", "output"])?;
        let points: Vec<(f64, f64)> = t
            .rows()
            .map(|r| Ok((r.f64("speed", "m/s")?, r.f64("output", "")?)))
            .collect::<Result<_>>()?;
        let cut_out = points.last().map(|p| p.0).unwrap_or(0.0);
        PowerCurve::new(points, cut_out)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CoreError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&path.display().to_string(), &text)
    }

    pub fn onshore() -> Self {
        Self::parse("onshore_power_curve.csv", include_str!("../data/onshore_power_curve.csv"))
            .expect("bundled onshore curve is valid")
    }

    pub fn offshore() -> Self {
        Self::parse("offshore_power_curve.csv", include_str!("../data/offshore_power_curve.csv"))
            .expect("bundled offshore curve is valid")
    }

    pub fn cut_in(&self) -> f64 {
        self.points[0].0
    }

    /// Speed at which the curve first reaches its maximum.
    pub fn rated_speed(&self) -> f64 {
        let max = self.points.iter().map(|p| p.1).fold(0.0, f64::max);
        self.points.iter().find(|p| p.1 == max).map(|p| p.0).unwrap_or(self.cut_out)
    }
}

/// Power-law shear from measurement height to hub height.
pub fn adjust_speed(v: f64, h_meas: f64, h_hub: f64, shear: f64) -> f64 {
    v * (h_hub / h_meas).powf(shear)
}

/// Linear interpolation on the curve; zero below cut-in and above cut-out.
pub fn curve_output(v: f64, curve: &PowerCurve) -> f64 {
    let pts = &curve.points;
    if v < pts[0].0 || v > curve.cut_out {
        return 0.0;
    }
    let last = pts[pts.len() - 1];
    if v >= last.0 {
        return last.1;
    }
    let k = pts.partition_point(|p| p.0 <= v);
    let (a, b) = (pts[k - 1], pts[k]);
    a.1 + (b.1 - a.1) * (v - a.0) / (b.0 - a.0)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WindSite {
    pub id: String,
    pub zone: String,
    pub offshore: bool,
    pub measurement_height: f64,
    pub hub_height: f64,
    pub shear: f64,
    pub x: f64,
    pub y: f64,
}

impl WindSite {
    pub fn new(id: &str, zone: &str, offshore: bool, measurement_height: f64) -> Self {
        WindSite {
            id: id.into(),
            zone: zone.into(),
            offshore,
            measurement_height,
            hub_height: if offshore { OFFSHORE_HUB } else { ONSHORE_HUB },
            shear: if offshore { OFFSHORE_SHEAR } else { ONSHORE_SHEAR },
            x: 0.0,
            y: 0.0,
        }
    }
}

/// True when the lapse-rate estimate of hub temperature is below the cutoff.
pub fn too_cold(surface_temp: f64, hub_height: f64) -> bool {
    surface_temp - LAPSE_RATE * hub_height < COLD_CUTOFF
}

pub fn cf_series(speeds: &[f64], surface_temps: &[f64], site: &WindSite, curve: &PowerCurve) -> Result<Vec<f64>> {
    if speeds.len() != surface_temps.len() {
        return Err(CoreError::invalid(format!(
            "site {}: {} speeds but {} temperatures",
            site.id,
            speeds.len(),
            surface_temps.len()
        )));
    }
    if !(site.measurement_height > 0.0 && site.hub_height > 0.0) {
        return Err(CoreError::invalid(format!("site {}: heights must be positive", site.id)));
    }
    Ok(speeds
        .iter()
        .zip(surface_temps)
        .map(|(&v, &t)| {
            if too_cold(t, site.hub_height) {
                0.0
            } else {
                LOSS_FACTOR * curve_output(adjust_speed(v.max(0.0), site.measurement_height, site.hub_height, site.shear), curve)
            }
        })
        .collect())
}

/// Zone centroid used to borrow a profile when no site lies in the zone.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Zone {
    pub id: String,
    pub x: f64,
    pub y: f64,
}

/// Mean of the member sites' series per zone; a zone without sites takes
/// the series of the site nearest its centroid.
pub fn zone_cf(zones: &[Zone], sites: &[WindSite], cfs: &[Vec<f64>]) -> Result<BTreeMap<String, Vec<f64>>> {
    if sites.is_empty() {
        return Err(CoreError::invalid("no wind sites"));
    }
    let mut out = BTreeMap::new();
    for z in zones {
        let members: Vec<usize> = (0..sites.len()).filter(|&i| sites[i].zone == z.id).collect();
        let series = if members.is_empty() {
            let d = |s: &WindSite| (s.x - z.x).powi(2) + (s.y - z.y).powi(2);
            let nearest = (0..sites.len())
                .min_by(|&a, &b| d(&sites[a]).total_cmp(&d(&sites[b])))
                .expect("nonempty");
            cfs[nearest].clone()
        } else {
            let n = cfs[members[0]].len();
            (0..n)
                .map(|h| members.iter().map(|&i| cfs[i][h]).sum::<f64>() / members.len() as f64)
                .collect()
        };
        out.insert(z.id.clone(), series);
    }
    Ok(out)
}

/// `sites.csv`: `id, zone, offshore, measurement_height[m], hub_height[m], shear, x, y`.
pub fn read_sites(path: &Path) -> Result<Vec<WindSite>> {
    let t = Table::read(path)?;
    t.require(&["id", "zone", "offshore", "measurement_height"])?;
    let mut out: Vec<WindSite> = Vec::new();
    for row in t.rows() {
        let id = row.id("id")?;
        if out.iter().any(|s| s.id == id) {
            return Err(CoreError::DuplicateId {
                file: t.file.clone(),
                id,
            });
        }
        let mut s = WindSite::new(&id, &row.id("zone")?, row.bool("offshore")?, row.f64("measurement_height", "m")?);
        if let Some(h) = row.opt_f64("hub_height", "m")? {
            s.hub_height = h;
        }
        if let Some(a) = row.opt_f64("shear", "")? {
            s.shear = a;
        }
        s.x = row.opt_f64("x", "")?.unwrap_or(0.0);
        s.y = row.opt_f64("y", "")?.unwrap_or(0.0);
        if !(s.measurement_height > 0.0 && s.hub_height > 0.0) {
            return Err(row.error("measurement_height", "heights must be positive"));
        }
        out.push(s);
    }
    Ok(out)
}

/// `zones.csv`: `id, x, y`.
pub fn read_zones(path: &Path) -> Result<Vec<Zone>> {
    let t = Table::read(path)?;
    t.require(&["id", "x", "y"])?;
    t.rows()
        .map(|r| {
            Ok(Zone {
                id: r.id("id")?,
                x: r.f64("x", "")?,
                y: r.f64("y", "")?,
            })
        })
        .collect()
}
