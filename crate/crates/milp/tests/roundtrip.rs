use jpong_milp::{lp, mps, Program, Sense, VarKind};
use proptest::prelude::*;

fn bound() -> impl Strategy<Value = (f64, f64)> {
    prop_oneof![
        Just((0.0, f64::INFINITY)),
        Just((f64::NEG_INFINITY, f64::INFINITY)),
        (-100i32..100).prop_map(|u| (f64::NEG_INFINITY, u as f64)),
        (-100i32..100, 0i32..100).prop_map(|(l, w)| (l as f64 / 4.0, (l + w) as f64 / 4.0)),
    ]
}

fn program() -> impl Strategy<Value = Program> {
    let var = (any::<bool>(), bound());
    (prop::collection::vec(var, 1..50), prop::collection::vec(any::<u64>(), 0..20)).prop_map(|(vars, seeds)| {
        let mut p = Program::new("prop");
        for (i, (is_bin, (lo, up))) in vars.iter().enumerate() {
            if *is_bin {
                p.binary(format!("b.{i}")).unwrap();
            } else {
                p.add_var(format!("x.{i}"), *lo, *up, VarKind::Continuous).unwrap();
            }
        }
        let n = vars.len();
        for (r, seed) in seeds.iter().enumerate() {
            let k = 1 + (*seed as usize % n.min(6));
            let terms: Vec<_> = (0..k)
                .map(|j| {
                    let v = (seed.rotate_left(7 * j as u32) as usize) % n;
                    let c = ((seed >> (j * 5)) % 41) as f64 / 8.0 - 2.5;
                    (jpong_milp::VarId(v), if c == 0.0 { 1.5 } else { c })
                })
                .collect();
            let sense = [Sense::Le, Sense::Ge, Sense::Eq][(seed % 3) as usize];
            let rhs = ((seed >> 40) % 200) as f64 / 3.0 - 30.0;
            p.add_constr(format!("row.{r}"), terms, sense, rhs).unwrap();
        }
        for j in (0..n).step_by(3) {
            p.add_objective(jpong_milp::VarId(j), j as f64 * 0.1 + 1e-7, "cost").unwrap();
        }
        p
    })
}

fn sorted_rows(p: &Program) -> Vec<jpong_milp::Constraint> {
    p.constraints()
        .iter()
        .map(|c| {
            let mut c = c.clone();
            c.terms.sort_by_key(|t| t.0);
            c
        })
        .collect()
}

proptest! {
    #[test]
    fn mps_emit_parse_is_lossless(p in program()) {
        let text = mps::to_string(&p);
        let q = mps::parse(&text).unwrap();
        prop_assert_eq!(q.variables(), p.variables());
        // MPS is column-major, so terms come back ordered by column
        prop_assert_eq!(sorted_rows(&q), sorted_rows(&p));
        prop_assert_eq!(q.objective_coefficients(), p.objective_coefficients());
        // parsing is a fixed point of the writer as well
        prop_assert_eq!(mps::to_string(&q), text);
    }

    #[test]
    fn writers_are_deterministic(p in program()) {
        prop_assert_eq!(lp::to_string(&p), lp::to_string(&p.clone()));
        prop_assert_eq!(mps::to_string(&p), mps::to_string(&p.clone()));
    }
}

fn toy() -> Program {
    let mut p = Program::new("toy");
    let x = p.add_var("x", 0.0, 10.0, VarKind::Continuous).unwrap();
    let y = p.free("y").unwrap();
    let z = p.binary("z").unwrap();
    let w = p.add_var("w", -3.0, f64::INFINITY, VarKind::Continuous).unwrap();
    p.add_constr("c1", [(x, 1.0), (y, -2.0)], Sense::Ge, 1.0).unwrap();
    p.add_constr("c2", [(y, 1.0), (z, 3.5), (w, 1e-7)], Sense::Le, 4.0).unwrap();
    p.add_constr("c3", [(w, 1.0), (x, 1.0)], Sense::Eq, 2e15).unwrap();
    p.add_objective(x, 1.0, "a").unwrap();
    p.add_objective(z, -2.0, "b").unwrap();
    p.add_objective_constant("c", 5.0).unwrap();
    p
}

#[test]
fn lp_matches_golden_file() {
    assert_eq!(lp::to_string(&toy()), include_str!("golden/toy.lp"));
}

#[test]
fn mps_matches_golden_file() {
    assert_eq!(mps::to_string(&toy()), include_str!("golden/toy.mps"));
}
