//! Gas system over 365 days: injection, LCF supply curve, pipelines with
//! build/retire binaries, SVL storage and the daily nodal balance.

use jpong_milp::{Sense, VarId, VarKind};

use super::time::DAYS;
use super::{Builder, CostCategory};
use crate::error::{CoreError, Result};
use crate::network::annualize;

pub const PARAMS: &[&str] = &[
    "gas_node.inj_min",
    "gas_node.inj_max",
    "gas_node.svl",
    "node.gas_nodes",
    "pipe.exists",
    "pipe.capacity",
    "pipe.capex",
    "pipe.fom",
    "pipe.decom_cost",
    "pipe.lifetime",
    "svl.init_storage",
    "svl.init_vaporization",
    "svl.init_liquefaction",
    "svl.liq_efficiency",
    "svl.vpr_efficiency",
    "svl.boil_off",
    "svl.storage_capex",
    "svl.vaporizer_capex",
    "svl.storage_fom",
    "svl.vaporizer_fom",
    "svl.lifetime",
    "param.wacc",
    "param.ng_price",
    "param.gas_shed_cost",
    "param.lcf_cap",
    "param.lcf_price",
];

pub(crate) fn build(b: &mut Builder) -> Result<()> {
    let net = b.net;
    let prm = &net.params;
    let wacc = b.wacc();
    let ts = b.ts;
    let mut bal: Vec<Vec<Vec<(VarId, f64)>>> = vec![vec![Vec::new(); DAYS]; net.gas_nodes.len()];
    let gidx = |id: &str| net.gas_nodes.iter().position(|g| g.id == id).expect("validated gas node id");

    // Injection of fossil gas and LCF.
    let mut lcf_all = Vec::new();
    let has_lcf = !prm.lcf_levels.is_empty();
    for (k, g) in net.gas_nodes.iter().enumerate() {
        if g.inj_max <= 0.0 {
            continue;
        }
        for d in 0..DAYS {
            let name = format!("{}.{d}", g.id);
            let a = b.p.nonneg(format!("g.{name}"))?;
            b.obj(a, prm.ng_price, CostCategory::NgSupply)?;
            bal[k][d].push((a, 1.0));
            let mut inj = vec![(a, 1.0)];
            if has_lcf {
                let l = b.p.nonneg(format!("lcf.{name}"))?;
                bal[k][d].push((l, 1.0));
                inj.push((l, 1.0));
                lcf_all.push(l);
            }
            if g.inj_min > 0.0 {
                b.row(format!("inj_lo.{name}"), inj.clone(), Sense::Ge, g.inj_min)?;
            }
            b.row(format!("inj_hi.{name}"), inj, Sense::Le, g.inj_max)?;
        }
    }

    for (k, g) in net.gas_nodes.iter().enumerate() {
        for d in 0..DAYS {
            let dmd = b.dem.gas_demand(&g.id, d);
            if dmd > 0.0 {
                let s = b.p.add_var(format!("gshed.{}.{d}", g.id), 0.0, dmd, VarKind::Continuous)?;
                b.obj(s, prm.gas_shed_cost, CostCategory::GasShedding)?;
                bal[k][d].push((s, 1.0));
            }
        }
    }

    // Pipelines.
    for pipe in &net.pipelines {
        let op = b.p.binary(format!("zpop.{}", pipe.id))?;
        b.obj(op, pipe.fom, CostCategory::PipelineFom)?;
        let mut status = vec![(op, 1.0)];
        if pipe.exists {
            let dec = b.p.binary(format!("zpdec.{}", pipe.id))?;
            b.obj(dec, pipe.decom_cost, CostCategory::PipelineDecommissioning)?;
            status.push((dec, 1.0));
        } else {
            let inv = b.p.binary(format!("zpinv.{}", pipe.id))?;
            b.obj(inv, annualize(pipe.capex, pipe.lifetime, wacc)?, CostCategory::PipelineCapex)?;
            status.push((inv, -1.0));
        }
        b.row(format!("pipe_op.{}", pipe.id), status, Sense::Eq, if pipe.exists { 1.0 } else { 0.0 })?;
        let (from, to) = (gidx(&pipe.from), gidx(&pipe.to));
        for d in 0..DAYS {
            let f = b.p.nonneg(format!("fpipe.{}.{d}", pipe.id))?;
            b.row(format!("pipe_cap.{}.{d}", pipe.id), vec![(f, 1.0), (op, -pipe.capacity)], Sense::Le, 0.0)?;
            bal[from][d].push((f, -1.0));
            bal[to][d].push((f, 1.0));
        }
    }

    // Deliveries to power nodes, one variable per representative day; the
    // coupling rows tie them to gas-fired generation.
    for (k, g) in net.gas_nodes.iter().enumerate() {
        for pn in &g.power_nodes {
            if !b.fuel_nodes.contains(pn) {
                continue;
            }
            let mut per_rep = Vec::with_capacity(ts.num_rep_days());
            for r in 0..ts.num_rep_days() {
                per_rep.push(b.p.nonneg(format!("fge.{}.{pn}.{r}", g.id))?);
            }
            for d in 0..DAYS {
                bal[k][d].push((per_rep[ts.day_map[d]], -1.0));
            }
            b.fge.entry(pn.clone()).or_default().push(per_rep);
        }
    }

    // SVL facilities.
    for s in &net.svl {
        let adjacent: Vec<usize> = (0..net.gas_nodes.len())
            .filter(|&k| net.gas_nodes[k].svl.contains(&s.id))
            .collect();
        if adjacent.is_empty() {
            return Err(CoreError::invalid(format!("SVL site {} is not adjacent to any gas node", s.id)));
        }
        let xstr = b.p.nonneg(format!("xstr.{}", s.id))?;
        let xvpr = b.p.nonneg(format!("xvpr.{}", s.id))?;
        b.obj(xstr, annualize(s.storage_capex, s.lifetime, wacc)?, CostCategory::SvlCapex)?;
        b.obj(xvpr, annualize(s.vaporizer_capex, s.lifetime, wacc)?, CostCategory::SvlCapex)?;
        b.obj(xstr, s.storage_fom, CostCategory::SvlFom)?;
        b.obj(xvpr, s.vaporizer_fom, CostCategory::SvlFom)?;
        b.constant(
            CostCategory::SvlFom,
            s.storage_fom * s.init_storage + s.vaporizer_fom * s.init_vaporization,
        )?;

        let mut sto = Vec::with_capacity(DAYS);
        let mut liq = Vec::with_capacity(DAYS);
        let mut vpr = Vec::with_capacity(DAYS);
        for d in 0..DAYS {
            let name = format!("{}.{d}", s.id);
            let l = b.p.add_var(format!("liq.{name}"), 0.0, s.init_liquefaction, VarKind::Continuous)?;
            let v = b.p.nonneg(format!("vpr.{name}"))?;
            let st = b.p.nonneg(format!("gsto.{name}"))?;
            let mut l_terms = vec![(l, -1.0)];
            let mut v_terms = vec![(v, -1.0)];
            for &k in &adjacent {
                let gid = &net.gas_nodes[k].id;
                let fgl = b.p.nonneg(format!("fgl.{gid}.{name}"))?;
                let fvg = b.p.nonneg(format!("fvg.{name}.{gid}"))?;
                bal[k][d].push((fgl, -1.0));
                bal[k][d].push((fvg, 1.0));
                l_terms.push((fgl, 1.0));
                v_terms.push((fvg, 1.0));
            }
            b.row(format!("liq_sum.{name}"), l_terms, Sense::Eq, 0.0)?;
            b.row(format!("vpr_sum.{name}"), v_terms, Sense::Eq, 0.0)?;
            b.row(format!("vpr_cap.{name}"), vec![(v, 1.0), (xvpr, -1.0)], Sense::Le, s.init_vaporization)?;
            b.row(format!("gsto_cap.{name}"), vec![(st, 1.0), (xstr, -1.0)], Sense::Le, s.init_storage)?;
            sto.push(st);
            liq.push(l);
            vpr.push(v);
        }
        for d in 0..DAYS {
            let prev = (d + DAYS - 1) % DAYS;
            b.row(
                format!("gsto.{}.{d}", s.id),
                vec![
                    (sto[d], 1.0),
                    (sto[prev], -(1.0 - s.boil_off)),
                    (liq[d], -s.liq_efficiency),
                    (vpr[d], 1.0 / s.vpr_efficiency),
                ],
                Sense::Eq,
                0.0,
            )?;
        }
    }

    // LCF supply curve.
    if !lcf_all.is_empty() {
        let widths = prm.lcf_widths();
        let mut total = lcf_all.iter().map(|&v| (v, 1.0)).collect::<Vec<_>>();
        let mut prev_y: Option<VarId> = None;
        for (l, (lvl, w)) in prm.lcf_levels.iter().zip(&widths).enumerate() {
            let lam = b.p.add_var(format!("lam.{l}"), 0.0, 1.0, VarKind::Continuous)?;
            let y = b.p.binary(format!("ylcf.{l}"))?;
            b.obj(lam, lvl.price * w, CostCategory::Lcf)?;
            b.row(format!("lcf_share.{l}"), vec![(lam, 1.0), (y, -1.0)], Sense::Le, 0.0)?;
            if let Some(py) = prev_y {
                b.row(format!("lcf_order.{l}"), vec![(y, 1.0), (py, -1.0)], Sense::Le, 0.0)?;
            }
            total.push((lam, -w));
            prev_y = Some(y);
        }
        b.row("lcf_total".into(), total, Sense::Eq, 0.0)?;
    }

    for (k, g) in net.gas_nodes.iter().enumerate() {
        for d in 0..DAYS {
            let terms = std::mem::take(&mut bal[k][d]);
            let rhs = b.dem.gas_demand(&g.id, d);
            if terms.is_empty() && rhs == 0.0 {
                continue;
            }
            b.row(format!("gbal.{}.{d}", g.id), terms, Sense::Eq, rhs)?;
        }
    }
    Ok(())
}
