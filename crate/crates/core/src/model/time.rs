//! Representative-day time structure.
//!
//! Model hours run `0..24·R` over the `R` representative days in calendar
//! order. Every calendar day maps to one representative day, and each
//! representative day maps to itself. An hour's weight is the number of
//! calendar days its representative day stands in for.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::table::Table;

pub const DAYS: usize = 365;
pub const HOURS_PER_DAY: usize = 24;
pub const HOURS: usize = DAYS * HOURS_PER_DAY;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TimeStructure {
    /// Calendar day (0-based) of each representative day, increasing.
    pub rep_days: Vec<usize>,
    /// Calendar day -> index into `rep_days`.
    pub day_map: Vec<usize>,
}

impl TimeStructure {
    /// `day_map[d]` is the calendar day standing in for day `d`.
    pub fn from_calendar_map(map: &[usize]) -> Result<Self> {
        if map.len() != DAYS {
            return Err(CoreError::invalid(format!("day map covers {} days, expected {DAYS}", map.len())));
        }
        let mut rep_days: Vec<usize> = map.to_vec();
        rep_days.sort_unstable();
        rep_days.dedup();
        for &r in &rep_days {
            if r >= DAYS {
                return Err(CoreError::invalid(format!("representative day {r} outside the year")));
            }
            if map[r] != r {
                return Err(CoreError::invalid(format!(
                    "representative day {r} maps to {} instead of itself",
                    map[r]
                )));
            }
        }
        let day_map = map
            .iter()
            .map(|d| rep_days.binary_search(d).expect("present"))
            .collect();
        Ok(TimeStructure { rep_days, day_map })
    }

    /// `n` representative days, each the first day of an equal block of the
    /// year. Used when no clustering result is supplied.
    pub fn evenly_spaced(n: usize) -> Result<Self> {
        if n == 0 || n > DAYS {
            return Err(CoreError::invalid(format!("need between 1 and {DAYS} representative days, got {n}")));
        }
        let starts: Vec<usize> = (0..n).map(|k| (k * DAYS).div_ceil(n)).collect();
        let map: Vec<usize> = (0..DAYS)
            .map(|d| starts[starts.partition_point(|&s| s <= d) - 1])
            .collect();
        Self::from_calendar_map(&map)
    }

    /// `rep_days.csv`: `day, rep` with 0-based calendar days.
    pub fn read(path: &Path) -> Result<Self> {
        let t = Table::read(path)?;
        t.require(&["day", "rep"])?;
        let mut map = vec![usize::MAX; DAYS];
        for row in t.rows() {
            let d = row.number("day")?;
            let r = row.number("rep")?;
            let ok = |v: f64| v >= 0.0 && v.fract() == 0.0 && (v as usize) < DAYS;
            if !ok(d) || !ok(r) {
                return Err(row.error("day", format!("days must be integers in 0..{DAYS}")));
            }
            if map[d as usize] != usize::MAX {
                return Err(row.error("day", format!("day {d} listed twice")));
            }
            map[d as usize] = r as usize;
        }
        if let Some(d) = map.iter().position(|&r| r == usize::MAX) {
            return Err(CoreError::invalid(format!("{}: day {d} has no representative day", t.file)));
        }
        Self::from_calendar_map(&map)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let mut s = String::from("day,rep\n");
        for (d, &r) in self.day_map.iter().enumerate() {
            s.push_str(&format!("{d},{}\n", self.rep_days[r]));
        }
        std::fs::write(path, s).map_err(|source| CoreError::Io {
            path: path.to_path_buf(),
            source,
        })
    }

    pub fn num_rep_days(&self) -> usize {
        self.rep_days.len()
    }

    pub fn num_hours(&self) -> usize {
        self.rep_days.len() * HOURS_PER_DAY
    }

    pub fn hours(&self) -> std::ops::Range<usize> {
        0..self.num_hours()
    }

    /// Calendar days represented by representative day `r`.
    pub fn day_weight(&self, r: usize) -> f64 {
        self.day_map.iter().filter(|&&m| m == r).count() as f64
    }

    pub fn weights(&self) -> Vec<f64> {
        let mut w = vec![0.0; self.rep_days.len()];
        for &m in &self.day_map {
            w[m] += 1.0;
        }
        w
    }

    /// Weight of model hour `t`.
    pub fn hour_weight(&self, t: usize) -> f64 {
        self.day_weight(t / HOURS_PER_DAY)
    }

    /// Calendar hour (0-based) that model hour `t` stands for.
    pub fn original_hour(&self, t: usize) -> usize {
        self.rep_days[t / HOURS_PER_DAY] * HOURS_PER_DAY + t % HOURS_PER_DAY
    }

    /// Model hour that serves calendar hour `h`.
    pub fn model_hour(&self, h: usize) -> usize {
        self.day_map[h / HOURS_PER_DAY] * HOURS_PER_DAY + h % HOURS_PER_DAY
    }

    pub fn day_start(r: usize) -> usize {
        r * HOURS_PER_DAY
    }

    pub fn day_end(r: usize) -> usize {
        r * HOURS_PER_DAY + HOURS_PER_DAY - 1
    }

    /// Previous hour within the same representative day, wrapping from the
    /// first hour to the last.
    pub fn prev_in_day(t: usize) -> usize {
        if t % HOURS_PER_DAY == 0 {
            t + HOURS_PER_DAY - 1
        } else {
            t - 1
        }
    }

    /// Hour `t + k` within the same representative day, wrapping.
    pub fn shift_in_day(t: usize, k: usize) -> usize {
        let day = t / HOURS_PER_DAY;
        day * HOURS_PER_DAY + (t % HOURS_PER_DAY + k) % HOURS_PER_DAY
    }
}
