use crate::error::{CoreError, Result};

use super::PlantType;

/// Capital recovery factor `ω / (1 − (1+ω)^−lt)`.
pub fn capital_recovery_factor(lifetime: f64, wacc: f64) -> Result<f64> {
    if !(lifetime >= 1.0) {
        return Err(CoreError::invalid(format!("lifetime must be at least 1 year, got {lifetime}")));
    }
    if !(wacc > 0.0) {
        return Err(CoreError::invalid(format!("discount rate must be positive, got {wacc}")));
    }
    Ok(wacc / (1.0 - (1.0 + wacc).powf(-lifetime)))
}

/// Equivalent annual cost of an overnight `capex` over `lifetime` years.
pub fn annualize(capex: f64, lifetime: f64, wacc: f64) -> Result<f64> {
    Ok(capex * capital_recovery_factor(lifetime, wacc)?)
}

/// Annualised CAPEX per plant with the regional multiplier for `state`.
///
/// A plant type without any multipliers uses 1 everywhere; one that has
/// multipliers but none for `state` is an error.
pub fn effective_capex(plant: &PlantType, state: &str, wacc: f64) -> Result<f64> {
    let mult = if plant.multipliers.is_empty() {
        1.0
    } else {
        *plant.multipliers.get(state).ok_or_else(|| CoreError::UnknownState {
            plant: plant.id.clone(),
            state: state.to_string(),
        })?
    };
    Ok(annualize(plant.capex, plant.lifetime, wacc)? * mult)
}

/// Share of an up-front cost that annual savings pay back, with the cost
/// spread as a uniform series over `horizon` years at `rate`.
pub fn npv_offset(cost_per_home: f64, homes: f64, savings_per_year: f64, horizon: f64, rate: f64) -> Result<f64> {
    let annual = annualize(cost_per_home * homes, horizon, rate)?;
    if annual <= 0.0 {
        return Err(CoreError::invalid("envelope cost must be positive"));
    }
    Ok(savings_per_year / annual)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_year_annuity() {
        let x = 1234.5;
        assert!((annualize(x, 1.0, 0.05).unwrap() - x * 1.05).abs() < 1e-9);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(annualize(1.0, 0.0, 0.05).is_err());
        assert!(annualize(1.0, 10.0, 0.0).is_err());
    }
}
