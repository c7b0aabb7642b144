//! Hydro import node: an 8760-hour reservoir whose output in each calendar
//! hour is the output of the matching representative hour.

use jpong_milp::{Sense, VarKind};

use super::time::{TimeStructure, HOURS};
use super::{Builder, CostCategory};
use crate::error::{CoreError, Result};

pub const PARAMS: &[&str] = &[
    "node.is_import",
    "param.import_energy_cap",
    "param.import_power_cap",
    "param.import_fom",
    "param.import_start_level",
    "param.import_spring_level",
    "param.import_spring_hour",
    "param.import_end_level",
    "param.import_min_output",
    "param.import_ramp",
];

pub(crate) fn build(b: &mut Builder) -> Result<()> {
    let Some(node) = b.net.import_node() else {
        return Ok(());
    };
    let prm = &b.net.params;
    let inflow = b
        .dem
        .import_inflow
        .as_ref()
        .ok_or_else(|| CoreError::Missing("inflow series for the import node (import_inflow.csv)".into()))?;
    let ni = b.node_index(&node.id);
    let ts = b.ts;
    let power = prm.import_power_cap;
    let energy = prm.import_energy_cap;
    let lo = prm.import_min_output.unwrap_or(0.0) * power;

    let mut gen = Vec::with_capacity(ts.num_hours());
    for t in ts.hours() {
        let g = b.p.add_var(format!("imp_gen.{t}"), lo, power, VarKind::Continuous)?;
        b.balance[ni][t].push((g, 1.0));
        gen.push(g);
    }
    if let Some(r) = prm.import_ramp {
        for t in ts.hours() {
            let prev = gen[TimeStructure::prev_in_day(t)];
            b.row(format!("imp_ramp_up.{t}"), vec![(gen[t], 1.0), (prev, -1.0)], Sense::Le, r * power)?;
            b.row(format!("imp_ramp_dn.{t}"), vec![(prev, 1.0), (gen[t], -1.0)], Sense::Le, r * power)?;
        }
    }
    b.crm_constant += power;
    // Capacity is fixed at the import limit; its FOM is a constant.
    b.constant(CostCategory::ImportFom, prm.import_fom * power)?;

    // Reservoir levels are named by 1-based calendar hour.
    let start = prm.import_start_level * energy;
    let mut prev = None;
    let mut levels = Vec::with_capacity(HOURS);
    for h in 0..HOURS {
        let s = b.p.add_var(format!("imp_res.{}", h + 1), 0.0, energy, VarKind::Continuous)?;
        let mut terms = vec![(s, 1.0), (gen[ts.model_hour(h)], 1.0)];
        let mut rhs = inflow[h];
        match prev {
            Some(p) => terms.push((p, -1.0)),
            None => rhs += start,
        }
        b.row(format!("imp_res.{}", h + 1), terms, Sense::Eq, rhs)?;
        prev = Some(s);
        levels.push(s);
    }
    let spring = prm.import_spring_hour;
    if spring == 0 || spring > HOURS {
        return Err(CoreError::invalid(format!("import spring hour {spring} outside 1..={HOURS}")));
    }
    b.row("imp_may".into(), vec![(levels[spring - 1], 1.0)], Sense::Le, prm.import_spring_level * energy)?;
    b.row("imp_end".into(), vec![(levels[HOURS - 1], 1.0)], Sense::Eq, prm.import_end_level * energy)?;
    Ok(())
}
