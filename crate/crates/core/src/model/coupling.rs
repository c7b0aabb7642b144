//! Gas burned by power plants and the joint emissions cap.

use jpong_milp::Sense;

use super::time::{DAYS, HOURS_PER_DAY};
use super::Builder;
use crate::error::{CoreError, Result};

pub const PARAMS: &[&str] = &[
    "node.gas_nodes",
    "plant.heat_rate",
    "plant.capture_rate",
    "param.ng_emission_factor",
    "param.lcf_emission_factor",
    "param.power_baseline_emissions",
    "param.gas_baseline_emissions",
];

pub(crate) fn build(b: &mut Builder) -> Result<()> {
    let net = b.net;
    let prm = &net.params;
    let ts = b.ts;
    let eta_g = prm.ng_emission_factor;

    let mut co2_power = Vec::new();
    for (ni, node) in net.power_nodes.iter().enumerate() {
        if !b.fuel_nodes.contains(&node.id) {
            continue;
        }
        let deliveries = b.fge.get(&node.id).cloned().unwrap_or_default();
        if deliveries.is_empty() {
            return Err(CoreError::invalid(format!(
                "power node {} hosts gas-fired plants but is not linked to a gas node",
                node.id
            )));
        }
        let plants: Vec<_> = node
            .plants
            .iter()
            .filter_map(|np| net.plant(&np.plant))
            .filter(|p| p.class.is_gas_fired())
            .collect();
        for r in 0..ts.num_rep_days() {
            let mut terms: Vec<_> = deliveries.iter().map(|series| (series[r], 1.0)).collect();
            for pl in &plants {
                let gens = &b.gen[&(ni, pl.id.clone())];
                for t in r * HOURS_PER_DAY..(r + 1) * HOURS_PER_DAY {
                    terms.push((gens[t], -pl.heat_rate));
                }
            }
            b.row(format!("coup_fuel.{}.{r}", node.id), terms, Sense::Eq, 0.0)?;
        }
        for pl in &plants {
            let gens = &b.gen[&(ni, pl.id.clone())];
            for t in ts.hours() {
                co2_power.push((gens[t], -ts.hour_weight(t) * (1.0 - pl.capture_rate) * eta_g * pl.heat_rate));
            }
        }
    }

    let ep = b.p.free("co2_power")?;
    co2_power.push((ep, 1.0));
    b.row("co2_power_def".into(), co2_power, Sense::Eq, 0.0)?;

    let eg = b.p.free("co2_gas")?;
    let mut gas_terms = vec![(eg, 1.0)];
    let mut demand = 0.0;
    for g in &net.gas_nodes {
        for d in 0..DAYS {
            demand += b.dem.gas_demand(&g.id, d);
            if let Some(v) = b.p.var(&format!("lcf.{}.{d}", g.id)) {
                gas_terms.push((v, eta_g - prm.lcf_emission_factor));
            }
            if let Some(v) = b.p.var(&format!("gshed.{}.{d}", g.id)) {
                gas_terms.push((v, eta_g));
            }
        }
    }
    b.row("co2_gas_def".into(), gas_terms, Sense::Eq, eta_g * demand)?;

    let cap = (1.0 - b.sc.emissions_target) * prm.emissions_baseline();
    b.row("co2_cap".into(), vec![(ep, 1.0), (eg, 1.0)], Sense::Le, cap)?;
    Ok(())
}
