//! Deferrable transport load: a share of each node's demand may be served
//! up to `defer` hours late or `advance` hours early within the same
//! representative day.

use jpong_milp::{Sense, VarKind};

use super::time::TimeStructure;
use super::{Builder, FlexSpec};
use crate::error::Result;

pub const PARAMS: &[&str] = &["node.is_import"];

pub(crate) fn build(b: &mut Builder, spec: FlexSpec) -> Result<()> {
    let net = b.net;
    let ts = b.ts;
    for (ni, node) in net.power_nodes.iter().enumerate() {
        if node.is_import || !b.dem.transport_share.contains_key(&node.id) {
            continue;
        }
        let mut def = Vec::new();
        let mut ser = Vec::new();
        let mut rem = Vec::new();
        for t in ts.hours() {
            let key = format!("{}.{t}", node.id);
            let cap = b.dem.transport_share(&node.id, ts.original_hour(t)) * b.demand(&node.id, t);
            let d = b.p.add_var(format!("tdef.{key}"), 0.0, cap, VarKind::Continuous)?;
            let s = b.p.nonneg(format!("tser.{key}"))?;
            let r = b.p.free(format!("trem.{key}"))?;
            b.balance[ni][t].push((d, 1.0));
            b.balance[ni][t].push((s, -1.0));
            def.push(d);
            ser.push(s);
            rem.push(r);
        }
        for t in ts.hours() {
            let key = format!("{}.{t}", node.id);
            let prev = TimeStructure::prev_in_day(t);
            b.row(
                format!("flex_state.{key}"),
                vec![(rem[t], 1.0), (rem[prev], -1.0), (def[t], -1.0), (ser[t], 1.0)],
                Sense::Eq,
                0.0,
            )?;
            let mut serve = vec![(rem[t], -1.0)];
            for k in 1..=spec.defer {
                serve.push((ser[TimeStructure::shift_in_day(t, k)], 1.0));
            }
            b.row(format!("flex_defer.{key}"), serve, Sense::Ge, 0.0)?;
            let mut advance = vec![(rem[t], 1.0)];
            for k in 1..=spec.advance {
                advance.push((def[TimeStructure::shift_in_day(t, k)], 1.0));
            }
            b.row(format!("flex_advance.{key}"), advance, Sense::Ge, 0.0)?;
        }
    }
    Ok(())
}
