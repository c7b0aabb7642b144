//! Power-system objective and constraints: plants, storage, lines, CCS,
//! shedding, resource caps, nodal balance and the capacity reserve margin.

use jpong_milp::{Sense, VarId, VarKind};

use super::time::{TimeStructure, HOURS_PER_DAY};
use super::{Builder, CostCategory};
use crate::error::{CoreError, Result};
use crate::network::{annualize, effective_capex, Duration, PlantClass};

pub const PARAMS: &[&str] = &[
    "node.zone",
    "node.is_import",
    "node.co2_distance",
    "node_plant.existing",
    "node_plant.buildable",
    "plant.class",
    "plant.resource_class",
    "plant.nameplate",
    "plant.min_output",
    "plant.ramp",
    "plant.heat_rate",
    "plant.capture_rate",
    "plant.capex",
    "plant.fom",
    "plant.vom",
    "plant.fuel_price",
    "plant.decom_cost",
    "plant.lifetime",
    "plant.multiplier",
    "resource.cap",
    "line.exists",
    "line.capacity",
    "line.susceptance",
    "line.capex",
    "line.fom",
    "line.lifetime",
    "storage.duration",
    "storage.charge_eff",
    "storage.discharge_eff",
    "storage.self_discharge",
    "storage.energy_capex",
    "storage.power_capex",
    "storage.energy_fom",
    "storage.power_fom",
    "storage.lifetime",
    "param.wacc",
    "param.power_shed_cost",
    "param.reserve_margin",
    "param.ng_emission_factor",
    "param.ccs_capacity",
    "param.co2_pipe_cost",
    "param.co2_storage_cost",
    "param.co2_pipe_energy",
    "param.co2_pump_energy",
    "param.compressor_spacing",
    "param.theta_max",
];

/// Hours in a year, for CO2 pipeline costs quoted per annual tonne.
const HOURS_PER_YEAR: f64 = 8760.0;

pub(crate) fn build(b: &mut Builder) -> Result<()> {
    plants(b)?;
    storage(b)?;
    lines(b)?;
    ccs(b)?;
    shedding(b)?;
    resource_caps(b)
}

fn plants(b: &mut Builder) -> Result<()> {
    let net = b.net;
    let wacc = b.wacc();
    for (ni, node) in net.power_nodes.iter().enumerate() {
        if node.is_import {
            continue;
        }
        for np in &node.plants {
            let pl = net.plant(&np.plant).expect("validated plant id");
            let key = format!("{}.{}", node.id, pl.id);
            let u = pl.nameplate;
            if pl.min_output > 1.0 {
                return Err(CoreError::invalid(format!("plant {}: minimum output above nameplate", pl.id)));
            }

            let xop = b.p.nonneg(format!("xop.{key}"))?;
            let mut inv = vec![(xop, 1.0)];
            if np.buildable {
                let xest = b.p.nonneg(format!("xest.{key}"))?;
                inv.push((xest, -1.0));
                b.obj(xest, effective_capex(pl, &node.zone, wacc)?, CostCategory::PlantCapex)?;
            }
            if np.existing > 0.0 {
                let xdec = b.p.add_var(format!("xdec.{key}"), 0.0, np.existing, VarKind::Continuous)?;
                inv.push((xdec, 1.0));
                b.obj(xdec, pl.decom_cost, CostCategory::Decommissioning)?;
            }
            b.row(format!("invest.{key}"), inv, Sense::Eq, np.existing)?;
            b.obj(xop, pl.fom, CostCategory::PlantFom)?;

            let cf = if pl.class == PlantClass::Vre {
                Some(b.dem.cf(&node.id, &pl.id).ok_or_else(|| {
                    CoreError::Missing(format!("capacity factor series for {} at node {}", pl.id, node.id))
                })?)
            } else {
                None
            };

            let mut gens = Vec::with_capacity(b.ts.num_hours());
            for t in b.ts.hours() {
                let g = b.p.nonneg(format!("gen.{key}.{t}"))?;
                let w = b.ts.hour_weight(t);
                b.obj(g, w * pl.vom, CostCategory::Vom)?;
                b.obj(g, w * pl.fuel_price * pl.heat_rate, CostCategory::NonGasFuel)?;
                b.balance[ni][t].push((g, 1.0));
                gens.push(g);
            }

            if pl.class.is_thermal() {
                let mut commit = Vec::with_capacity(gens.len());
                for t in b.ts.hours() {
                    let x = b.p.nonneg(format!("commit.{key}.{t}"))?;
                    b.row(format!("commit_cap.{key}.{t}"), vec![(x, 1.0), (xop, -1.0)], Sense::Le, 0.0)?;
                    if pl.min_output > 0.0 {
                        b.row(
                            format!("gen_min.{key}.{t}"),
                            vec![(gens[t], 1.0), (x, -pl.min_output * u)],
                            Sense::Ge,
                            0.0,
                        )?;
                    }
                    b.row(format!("gen_max.{key}.{t}"), vec![(gens[t], 1.0), (x, -u)], Sense::Le, 0.0)?;
                    commit.push(x);
                }
                if let Some(r) = pl.ramp {
                    for t in b.ts.hours() {
                        let prev = gens[TimeStructure::prev_in_day(t)];
                        b.row(
                            format!("ramp_up.{key}.{t}"),
                            vec![(gens[t], 1.0), (prev, -1.0), (commit[t], -r * u)],
                            Sense::Le,
                            0.0,
                        )?;
                        b.row(
                            format!("ramp_dn.{key}.{t}"),
                            vec![(prev, 1.0), (gens[t], -1.0), (commit[t], -r * u)],
                            Sense::Le,
                            0.0,
                        )?;
                    }
                }
            } else {
                for t in b.ts.hours() {
                    let (name, a) = match cf {
                        Some(cf) => ("vre", cf[b.ts.original_hour(t)] * u),
                        None => ("hydro", u),
                    };
                    b.row(format!("{name}.{key}.{t}"), vec![(gens[t], 1.0), (xop, -a)], Sense::Le, 0.0)?;
                }
            }

            for t in b.ts.hours() {
                let derate = cf.map_or(1.0, |cf| cf[b.ts.original_hour(t)]);
                b.crm[t].push((xop, derate * u));
            }
            b.gen.insert((ni, pl.id.clone()), gens);
            b.xop.insert((ni, pl.id.clone()), xop);
        }
    }
    Ok(())
}

fn storage(b: &mut Builder) -> Result<()> {
    let net = b.net;
    let wacc = b.wacc();
    let ts = b.ts;
    for (ni, node) in net.power_nodes.iter().enumerate() {
        if node.is_import {
            continue;
        }
        for s in &net.storage {
            let key = format!("{}.{}", node.id, s.id);
            let ycd = b.p.nonneg(format!("ycd.{key}"))?;
            let ylev = b.p.nonneg(format!("ylev.{key}"))?;
            b.obj(ycd, annualize(s.power_capex, s.lifetime, wacc)?, CostCategory::StorageCapex)?;
            b.obj(ylev, annualize(s.energy_capex, s.lifetime, wacc)?, CostCategory::StorageCapex)?;
            b.obj(ycd, s.power_fom, CostCategory::StorageFom)?;
            b.obj(ylev, s.energy_fom, CostCategory::StorageFom)?;

            let keep = 1.0 - s.self_discharge;
            let mut chg = Vec::new();
            let mut dis = Vec::new();
            let mut lev = Vec::new();
            for t in ts.hours() {
                let c = b.p.nonneg(format!("chg.{key}.{t}"))?;
                let d = b.p.nonneg(format!("dis.{key}.{t}"))?;
                let l = b.p.nonneg(format!("lev.{key}.{t}"))?;
                b.row(format!("sto_chg_cap.{key}.{t}"), vec![(c, 1.0), (ycd, -1.0)], Sense::Le, 0.0)?;
                b.row(format!("sto_dis_cap.{key}.{t}"), vec![(d, 1.0), (ycd, -1.0)], Sense::Le, 0.0)?;
                b.row(format!("sto_lev_cap.{key}.{t}"), vec![(l, 1.0), (ylev, -1.0)], Sense::Le, 0.0)?;
                b.balance[ni][t].push((d, 1.0));
                b.balance[ni][t].push((c, -1.0));
                b.crm[t].push((d, 1.0));
                b.crm[t].push((c, -1.0));
                chg.push(c);
                dis.push(d);
                lev.push(l);
            }

            let long = s.duration == Duration::Long;
            let mut rem = Vec::new();
            if long {
                for r in 0..ts.num_rep_days() {
                    rem.push(b.p.free(format!("rem.{key}.{r}"))?);
                }
            }
            for t in ts.hours() {
                let r = t / HOURS_PER_DAY;
                let prev = TimeStructure::prev_in_day(t);
                let mut terms = vec![
                    (lev[t], 1.0),
                    (lev[prev], -keep),
                    (chg[t], -s.charge_eff),
                    (dis[t], 1.0 / s.discharge_eff),
                ];
                let name = if t == TimeStructure::day_start(r) {
                    if long {
                        terms.push((rem[r], keep));
                    }
                    "sto_wrap"
                } else {
                    "sto_dyn"
                };
                b.row(format!("{name}.{key}.{t}"), terms, Sense::Eq, 0.0)?;
            }

            if long {
                let day_keep = 1.0 - HOURS_PER_DAY as f64 * s.self_discharge;
                let n_days = ts.day_map.len();
                let mut sday = Vec::with_capacity(n_days);
                for d in 0..n_days {
                    let v = b.p.nonneg(format!("sday.{key}.{d}"))?;
                    b.row(format!("sday_cap.{key}.{d}"), vec![(v, 1.0), (ylev, -1.0)], Sense::Le, 0.0)?;
                    sday.push(v);
                }
                for d in 0..n_days {
                    let next = (d + 1) % n_days;
                    b.row(
                        format!("sday_link.{key}.{d}"),
                        vec![(sday[next], 1.0), (sday[d], -day_keep), (rem[ts.day_map[d]], -1.0)],
                        Sense::Eq,
                        0.0,
                    )?;
                }
                for (r, &day) in ts.rep_days.iter().enumerate() {
                    b.row(
                        format!("sday_rep.{key}.{r}"),
                        vec![(sday[day], 1.0), (lev[TimeStructure::day_end(r)], -1.0), (rem[r], 1.0)],
                        Sense::Eq,
                        0.0,
                    )?;
                }
            }
        }
    }
    Ok(())
}

fn lines(b: &mut Builder) -> Result<()> {
    let net = b.net;
    let wacc = b.wacc();
    let ts = b.ts;
    let dc = b.sc.dc_power_flow;
    let theta_max = net.params.theta_max;
    let mut theta: Vec<Vec<VarId>> = Vec::new();
    if dc {
        for (ni, node) in net.power_nodes.iter().enumerate() {
            let mut row = Vec::new();
            for t in ts.hours() {
                // The first node is the angle reference.
                let bound = if ni == 0 { 0.0 } else { theta_max };
                row.push(b.p.add_var(format!("theta.{}.{t}", node.id), -bound, bound, VarKind::Continuous)?);
            }
            theta.push(row);
        }
    }
    for line in &net.lines {
        let from = b.node_index(&line.from);
        let to = b.node_index(&line.to);
        let z = if line.exists {
            b.constant(CostCategory::TransmissionFom, line.fom)?;
            None
        } else {
            let z = b.p.binary(format!("zline.{}", line.id))?;
            b.obj(z, annualize(line.capex, line.lifetime, wacc)?, CostCategory::TransmissionCapex)?;
            b.obj(z, line.fom, CostCategory::TransmissionFom)?;
            Some(z)
        };
        let big_m = line.susceptance.abs() * 2.0 * theta_max;
        for t in ts.hours() {
            let name = format!("{}.{t}", line.id);
            let f = match z {
                None => b.p.add_var(format!("flow.{name}"), -line.capacity, line.capacity, VarKind::Continuous)?,
                Some(z) => {
                    let f = b.p.free(format!("flow.{name}"))?;
                    b.row(format!("line_cap_fwd.{name}"), vec![(f, 1.0), (z, -line.capacity)], Sense::Le, 0.0)?;
                    b.row(format!("line_cap_rev.{name}"), vec![(f, -1.0), (z, -line.capacity)], Sense::Le, 0.0)?;
                    f
                }
            };
            b.balance[from][t].push((f, -1.0));
            b.balance[to][t].push((f, 1.0));
            if dc {
                let s = line.susceptance;
                let (tf, tt) = (theta[from][t], theta[to][t]);
                match z {
                    None => b.row(format!("dcpf.{name}"), vec![(f, 1.0), (tf, -s), (tt, s)], Sense::Eq, 0.0)?,
                    Some(z) => {
                        b.row(
                            format!("dcpf_hi.{name}"),
                            vec![(f, 1.0), (tf, -s), (tt, s), (z, big_m)],
                            Sense::Le,
                            big_m,
                        )?;
                        b.row(
                            format!("dcpf_lo.{name}"),
                            vec![(f, -1.0), (tf, s), (tt, -s), (z, big_m)],
                            Sense::Le,
                            big_m,
                        )?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn ccs(b: &mut Builder) -> Result<()> {
    let net = b.net;
    let prm = &net.params;
    let ts = b.ts;
    let mut annual = Vec::new();
    for (ni, node) in net.power_nodes.iter().enumerate() {
        let ccs_plants: Vec<_> = node
            .plants
            .iter()
            .filter_map(|np| net.plant(&np.plant))
            .filter(|p| p.class == PlantClass::Ccs)
            .collect();
        if ccs_plants.is_empty() {
            continue;
        }
        let d = node.co2_distance;
        let pipe = b.p.nonneg(format!("co2pipe.{}", node.id))?;
        b.obj(pipe, d * prm.co2_pipe_cost * HOURS_PER_YEAR, CostCategory::Ccs)?;
        let compressors = d / prm.compressor_spacing;
        for t in ts.hours() {
            let capt = b.p.nonneg(format!("capt.{}.{t}", node.id))?;
            let mut terms = vec![(capt, 1.0)];
            for pl in &ccs_plants {
                let g = b.gen[&(ni, pl.id.clone())][t];
                terms.push((g, -prm.ng_emission_factor * pl.capture_rate * pl.heat_rate));
            }
            b.row(format!("ccs_capt.{}.{t}", node.id), terms, Sense::Eq, 0.0)?;
            b.row(format!("ccs_pipe.{}.{t}", node.id), vec![(capt, 1.0), (pipe, -1.0)], Sense::Le, 0.0)?;
            let w = ts.hour_weight(t);
            b.obj(capt, w * prm.co2_storage_cost, CostCategory::Ccs)?;
            b.balance[ni][t].push((pipe, -d * prm.co2_pipe_energy));
            b.balance[ni][t].push((capt, -compressors * prm.co2_pump_energy));
            annual.push((capt, w));
        }
    }
    if !annual.is_empty() {
        b.row("ccs_annual".into(), annual, Sense::Le, prm.ccs_capacity)?;
    }
    Ok(())
}

fn shedding(b: &mut Builder) -> Result<()> {
    let net = b.net;
    for (ni, node) in net.power_nodes.iter().enumerate() {
        for t in b.ts.hours() {
            let dmd = b.demand(&node.id, t);
            if dmd <= 0.0 {
                continue;
            }
            let s = b.p.add_var(format!("shed.{}.{t}", node.id), 0.0, dmd, VarKind::Continuous)?;
            b.obj(s, b.ts.hour_weight(t) * net.params.power_shed_cost, CostCategory::PowerShedding)?;
            b.balance[ni][t].push((s, 1.0));
        }
    }
    Ok(())
}

fn resource_caps(b: &mut Builder) -> Result<()> {
    let net = b.net;
    for (class, cap) in &net.resource_caps {
        let mut terms = Vec::new();
        for ((_, pid), &xop) in &b.xop {
            let pl = net.plant(pid).expect("validated plant id");
            if pl.resource_class.as_deref() == Some(class.as_str()) {
                terms.push((xop, pl.nameplate));
            }
        }
        if !terms.is_empty() {
            b.row(format!("resource.{class}"), terms, Sense::Le, *cap)?;
        }
    }
    Ok(())
}

/// Emits the nodal balance and capacity reserve rows once every block has
/// contributed its terms.
pub(crate) fn finish(b: &mut Builder) -> Result<()> {
    let net = b.net;
    let ts = b.ts;
    for (ni, node) in net.power_nodes.iter().enumerate() {
        for t in ts.hours() {
            let terms = std::mem::take(&mut b.balance[ni][t]);
            let rhs = b.demand(&node.id, t);
            if terms.is_empty() && rhs == 0.0 {
                continue;
            }
            b.row(format!("balance.{}.{t}", node.id), terms, Sense::Eq, rhs)?;
        }
    }
    let margin = 1.0 + net.params.reserve_margin;
    for t in ts.hours() {
        let load: f64 = net.power_nodes.iter().map(|n| b.demand(&n.id, t)).sum();
        let terms = std::mem::take(&mut b.crm[t]);
        b.row(format!("crm.{t}"), terms, Sense::Ge, margin * load - b.crm_constant)?;
    }
    Ok(())
}
