//! Unit-annotated CSV headers.
//!
//! Every numeric column is written as `field[unit]`; values are converted
//! once, at load time, into the canonical units used everywhere else:
//! MW, MWh, MMBtu, t (CO₂), $, yr, h, d and miles. A unit string is a
//! product of factors separated by `/` (everything after the first `/` is
//! in the denominator), e.g. `$/kW/yr` or `MWh/mi/t/h`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{CoreError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dim {
    Power,
    Energy,
    Heat,
    Mass,
    Money,
    Year,
    Hour,
    Day,
    Length,
    Count,
}

/// A parsed unit: scale to canonical units and dimension exponents.
#[derive(Clone, Debug, PartialEq)]
pub struct Unit {
    pub scale: f64,
    pub dims: BTreeMap<Dim, i32>,
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} x {:?}", self.scale, self.dims)
    }
}

fn atom(token: &str) -> Option<(f64, Option<Dim>)> {
    use Dim::*;
    let v = match token {
        "" | "-" | "1" | "frac" | "fraction" => (1.0, None),
        "%" | "pct" => (0.01, None),
        "kW" => (1e-3, Some(Power)),
        "MW" => (1.0, Some(Power)),
        "GW" => (1e3, Some(Power)),
        "kWh" => (1e-3, Some(Energy)),
        "MWh" => (1.0, Some(Energy)),
        "GWh" => (1e3, Some(Energy)),
        "TWh" => (1e6, Some(Energy)),
        "Btu" => (1e-6, Some(Heat)),
        "MMBtu" => (1.0, Some(Heat)),
        "tBtu" | "TBtu" => (1e6, Some(Heat)),
        "t" | "tCO2" | "tCO2eq" | "ton" => (1.0, Some(Mass)),
        "kt" => (1e3, Some(Mass)),
        "Mt" => (1e6, Some(Mass)),
        "$" | "USD" => (1.0, Some(Money)),
        "k$" => (1e3, Some(Money)),
        "M$" => (1e6, Some(Money)),
        "yr" | "year" => (1.0, Some(Year)),
        "h" | "hr" => (1.0, Some(Hour)),
        "d" | "day" => (1.0, Some(Day)),
        "mi" | "mile" => (1.0, Some(Length)),
        "km" => (0.621_371_192_237_333_9, Some(Length)),
        "plant" | "line" | "unit" => (1.0, Some(Count)),
        "C" | "degC" | "m" | "s" | "Pa" | "W" | "m2" => (1.0, None),
        _ => return None,
    };
    Some(v)
}

impl Unit {
    pub fn dimensionless() -> Self {
        Unit {
            scale: 1.0,
            dims: BTreeMap::new(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut unit = Unit::dimensionless();
        for (k, token) in text.split('/').enumerate() {
            let token = token.trim();
            let (scale, dim) = atom(token).ok_or_else(|| CoreError::Unit(format!("unknown unit `{token}` in `{text}`")))?;
            let sign = if k == 0 { 1 } else { -1 };
            unit.scale *= if sign > 0 { scale } else { 1.0 / scale };
            if let Some(d) = dim {
                *unit.dims.entry(d).or_insert(0) += sign;
            }
        }
        unit.dims.retain(|_, e| *e != 0);
        Ok(unit)
    }

    /// Dimension signature with `Count` dropped, so `$/plant` and `$` match.
    fn signature(&self) -> BTreeMap<Dim, i32> {
        self.dims.iter().filter(|(d, _)| **d != Dim::Count).map(|(d, e)| (*d, *e)).collect()
    }

    pub fn same_dims(&self, other: &Unit) -> bool {
        self.signature() == other.signature()
    }
}

/// Converts `value` given in `from` into `canonical`, which must have the
/// same dimensions.
pub fn convert(value: f64, from: &str, canonical: &str) -> Result<f64> {
    let f = Unit::parse(from)?;
    let c = Unit::parse(canonical)?;
    if !f.same_dims(&c) {
        return Err(CoreError::Unit(format!("cannot convert `{from}` to `{canonical}`")));
    }
    Ok(value * f.scale / c.scale)
}

/// Splits a `name[unit]` header into its parts; a bare name has an empty unit.
pub fn split_header(header: &str) -> (&str, &str) {
    let h = header.trim();
    match (h.find('['), h.ends_with(']')) {
        (Some(i), true) => (h[..i].trim(), &h[i + 1..h.len() - 1]),
        _ => (h, ""),
    }
}
