use approx::assert_relative_eq;
use jpong_core::demand::*;
use proptest::prelude::*;

fn winter_spec(capacity: f64, sizing_temp: f64) -> HeatPumpSpec {
    HeatPumpSpec {
        capacity,
        sizing_temp,
        mode: SizingMode::Winter,
        cooling_capacity: capacity,
        switchover: None,
    }
}

#[test]
fn cop_reference_points() {
    assert_eq!(cop_heating(0.0), 2.73);
    assert_relative_eq!(cop_heating(-20.0), 1.83, epsilon = 1e-12);
    assert_eq!(cop_heating(-60.0), 1.0);
    assert_eq!(cop_cooling(0.0), 7.35);
    assert_relative_eq!(cop_cooling(35.0), 7.35 - 0.116 * 35.0, epsilon = 1e-12);
    assert_relative_eq!(cop_cooling(35.0), 3.29, epsilon = 1e-12);
    assert!(cop_cooling(60.0) >= 1.0);
}

#[test]
fn capacity_derating() {
    let s = winter_spec(10.0, -15.0);
    assert_eq!(heating_capacity(-15.0, &s), 10.0);
    assert_relative_eq!(heating_capacity(-5.0, &s), 11.53, epsilon = 1e-12);
    assert_eq!(heating_capacity(-95.0, &s), 0.0);
}

#[test]
fn winter_sizing() {
    let s = size_winter(&[4.0; 50], &[-12.0; 50]).unwrap();
    assert_eq!((s.capacity, s.sizing_temp), (4.0, -12.0));

    // Nearest rank on 0..99: rank ceil(0.99·100) = 99 -> value 98.
    let ramp: Vec<f64> = (0..100).map(f64::from).collect();
    let temps: Vec<f64> = (0..100).map(|i| -20.0 + 0.3 * i as f64).collect();
    let s = size_winter(&ramp, &temps).unwrap();
    assert_eq!(s.capacity, 98.0);
    assert_eq!(s.sizing_temp, -20.0);
    assert_relative_eq!(s.cooling_capacity, (1.0 - 0.0153 * (-20.0 - 8.3)) * 98.0, epsilon = 1e-12);

    assert!(size_winter(&[], &[]).is_err());
}

#[test]
fn summer_sizing() {
    let s = size_summer(&[2.0; 24], &[30.0; 24], DEFAULT_MIN_CAPACITY).unwrap();
    assert_relative_eq!(s.cooling_capacity, 2.6, epsilon = 1e-12);
    assert_eq!(s.capacity, s.cooling_capacity);
    let s = size_summer(&[0.0; 24], &[30.0; 24], DEFAULT_MIN_CAPACITY).unwrap();
    assert_eq!(s.capacity, DEFAULT_MIN_CAPACITY);
    assert!(size_summer(&[1.0], &[], 1.0).is_err());
}

#[test]
fn switchover_below_threshold() {
    let s = winter_spec(20.0, -10.0).with_switchover(5.0);
    let d = dispatch_hour(10.0, 0.0, 4.0, &s, BackupConfig::Switchover, 0.9);
    assert_relative_eq!(d.backup_fuel, 10.0 / 0.9, epsilon = 1e-12);
    assert!((d.backup_fuel - 11.11).abs() < 5e-3);
    assert_eq!(d.hp_electric, 0.0);
}

#[test]
fn top_up_without_shortfall() {
    let s = winter_spec(20.0, -10.0);
    let d = dispatch_hour(8.0, 0.0, 0.0, &s, BackupConfig::TopUp, 0.8);
    assert_eq!(d.backup_fuel, 0.0);
    assert_relative_eq!(d.hp_electric, 8.0 / 2.73, epsilon = 1e-12);
}

#[test]
fn resistance_tops_up_shortfall() {
    // Capacity 5 kW at -10 °C.
    let s = winter_spec(5.0, -10.0);
    let d = dispatch_hour(8.0, 0.0, -10.0, &s, BackupConfig::Resistance, 1.0);
    assert_relative_eq!(d.hp_electric, 5.0 / 2.28, epsilon = 1e-12);
    assert_relative_eq!(d.backup_electric, 3.0, epsilon = 1e-12);
    assert_eq!(d.backup_fuel, 0.0);
}

#[test]
fn cooling_uses_cooling_cop() {
    let s = winter_spec(5.0, -10.0);
    let d = dispatch_hour(0.0, 3.0, 30.0, &s, BackupConfig::TopUp, 0.9);
    assert_relative_eq!(d.hp_electric, 3.0 / (7.35 - 0.116 * 30.0), epsilon = 1e-12);
}

#[test]
fn peak_events() {
    assert_eq!(peak_event_length(&[5.0; 48], 0..48).unwrap(), 48);

    let mut spike = vec![1.0; 200];
    spike[77] = 10.0;
    assert_eq!(peak_event_length(&spike, 0..200).unwrap(), 1);

    // 60 hours at 0.8·peak around the peak, 0.5·peak elsewhere.
    let mut plateau = vec![50.0; 300];
    for v in &mut plateau[100..160] {
        *v = 80.0;
    }
    plateau[130] = 100.0;
    assert_eq!(peak_event_length(&plateau, 0..300).unwrap(), 60);

    // Exactly 75 % of the peak does not count.
    let edge = [75.0, 100.0, 75.0];
    assert_eq!(peak_event_length(&edge, 0..3).unwrap(), 1);
    assert!(peak_event_length(&edge, 0..0).is_err());
}

fn archetype(id: &str, heat: Vec<f64>, cool: Vec<f64>, fuel: Fuel, ducted: bool) -> Archetype {
    let n = heat.len();
    Archetype {
        id: id.into(),
        zone: "z".into(),
        backup: Backup {
            fuel,
            efficiency: 0.85,
            ducted,
            existing_heat_pump: false,
        },
        base: Loads {
            heat,
            cool,
            elec: vec![0.5; n],
            gas: vec![0.2; n],
        },
        improved: None,
    }
}

fn temps(n: usize) -> Vec<f64> {
    (0..n).map(|h| 5.0 + 15.0 * ((h as f64) / 9.0).sin()).collect()
}

#[test]
fn all_baseline_is_scaled_profile() {
    let n = 48;
    let t = temps(n);
    let a = archetype("a", (0..n).map(|h| (h % 7) as f64).collect(), vec![0.3; n], Fuel::Gas, true);
    let w = ScenarioWeights::from_shares(120.0, [0.0; 4], false).unwrap();
    let zone = aggregate_zone(&[(a.clone(), w)], &t).unwrap();
    let p = sub_archetype_profile(&a, SubArchetype::Baseline, &t).unwrap();
    for h in 0..n {
        assert_relative_eq!(zone.elec[h], 120.0 * p.elec[h] / 1000.0, max_relative = 1e-12);
        assert_relative_eq!(zone.gas_hourly[h], 120.0 * p.gas[h] * KWH_TO_MMBTU, max_relative = 1e-12);
    }
    assert_eq!(zone.gas_daily.len(), 2);
}

#[test]
fn half_split_matches_hand_sum() {
    let n = 24;
    let t = temps(n);
    let with_envelope = |mut a: Archetype, k: f64| {
        a.improved = Some(Loads {
            heat: a.base.heat.iter().map(|v| k * v).collect(),
            ..a.base.clone()
        });
        a
    };
    let a = archetype("a", (0..n).map(|h| 2.0 + (h % 5) as f64).collect(), vec![0.0; n], Fuel::Gas, false);
    let b = archetype("b", (0..n).map(|h| 1.0 + (h % 3) as f64).collect(), vec![0.5; n], Fuel::Oil, false);
    let split = |homes| ScenarioWeights::from_shares(homes, [0.0, 0.0, 0.5, 0.5], false).unwrap();

    // Envelope share without envelope loads is an error, not a silent drop.
    assert!(aggregate_zone(&[(a.clone(), split(10.0))], &t).is_err());

    let (a, b) = (with_envelope(a, 0.7), with_envelope(b, 0.6));
    let zone = aggregate_zone(&[(a.clone(), split(10.0)), (b.clone(), split(30.0))], &t).unwrap();
    for h in [0, 7, 19] {
        let mut want = 0.0;
        for (arch, homes) in [(&a, 10.0), (&b, 30.0)] {
            for sub in [SubArchetype::Winter, SubArchetype::WinterEnvelope] {
                want += 0.5 * homes * sub_archetype_profile(arch, sub, &t).unwrap().elec[h] / 1000.0;
            }
        }
        assert_relative_eq!(zone.elec[h], want, max_relative = 1e-12);
    }
}

#[test]
fn hx_weights_accepted() {
    let w = ScenarioWeights::from_shares(1000.0, [0.05, 0.118, 0.186, 0.434], false).unwrap();
    assert_relative_eq!(w.get(SubArchetype::WinterEnvelope), 434.0, max_relative = 1e-12);
    assert_relative_eq!(w.get(SubArchetype::Baseline), 212.0, max_relative = 1e-9);
    assert!(ScenarioWeights::from_shares(10.0, [0.5, 0.6, 0.0, 0.0], false).is_err());
    let mut bad = w.clone();
    bad.homes += 1.0;
    assert!(bad.validate().is_err());
}

proptest! {
    #[test]
    fn cop_monotone(a in -37.0f64..50.0, b in -37.0f64..50.0) {
        prop_assume!(a < b);
        prop_assert!(cop_heating(a) < cop_heating(b));
        if b < 54.0 {
            prop_assert!(cop_cooling(a) > cop_cooling(b));
        }
    }

    #[test]
    fn dispatch_conserves_heat(
        heat in 0.0f64..40.0,
        t in -40.0f64..20.0,
        cap in 0.5f64..30.0,
        sizing in -30.0f64..0.0,
        eff in 0.5f64..1.0,
        cfg in 0usize..3,
    ) {
        let config = [BackupConfig::Switchover, BackupConfig::TopUp, BackupConfig::Resistance][cfg];
        let s = winter_spec(cap, sizing).with_switchover(5.0);
        let d = dispatch_hour(heat, 0.0, t, &s, config, eff);
        let backup_out = if config == BackupConfig::Resistance { d.backup_electric } else { d.backup_fuel * eff };
        prop_assert!((d.hp_heat + backup_out - heat).abs() <= 1e-9 * heat.max(1.0));
        prop_assert!(d.hp_heat >= 0.0 && d.backup_heat >= 0.0);
    }

    #[test]
    fn resistance_never_uses_less_electricity(
        heat in 0.0f64..40.0,
        cool in 0.0f64..5.0,
        t in -40.0f64..35.0,
        cap in 0.5f64..30.0,
    ) {
        let s = winter_spec(cap, -15.0);
        let top = dispatch_hour(heat, cool, t, &s, BackupConfig::TopUp, 0.9);
        let res = dispatch_hour(heat, cool, t, &s, BackupConfig::Resistance, 0.9);
        prop_assert!(res.hp_electric + res.backup_electric >= top.hp_electric + top.backup_electric);
    }

    // Winter sizing on loads that never exceed the sized capacity: with the
    // sizing temperature at or below every hour, capacity never derates
    // below the load and no backup runs.
    #[test]
    fn winter_sized_needs_no_backup(
        loads in proptest::collection::vec(0.0f64..10.0, 10..200),
        temps in proptest::collection::vec(-25.0f64..15.0, 200),
    ) {
        let n = loads.len();
        let peak = loads.iter().cloned().fold(0.0, f64::max);
        let t = &temps[..n];
        let mut s = size_winter(&loads, t).unwrap();
        let tmin = t.iter().cloned().fold(f64::INFINITY, f64::min);
        s.capacity = peak.max(1e-9);
        s.sizing_temp = tmin;
        for h in 0..n {
            let d = dispatch_hour(loads[h], 0.0, t[h], &s, BackupConfig::TopUp, 0.9);
            prop_assert_eq!(d.backup_fuel, 0.0);
        }
    }

    #[test]
    fn aggregation_is_linear(k in 0.1f64..10.0, shares in proptest::array::uniform4(0.0f64..0.25)) {
        let n = 24;
        let t = temps(n);
        let mut a = archetype("a", (0..n).map(|h| 1.0 + (h % 4) as f64).collect(), vec![0.2; n], Fuel::Gas, false);
        a.improved = Some(a.base.clone());
        let w = ScenarioWeights::from_shares(50.0, shares, false).unwrap();
        let one = aggregate_zone(&[(a.clone(), w.clone())], &t).unwrap();
        let many = aggregate_zone(&[(a, w.scaled(k))], &t).unwrap();
        for h in 0..n {
            prop_assert!((many.elec[h] - k * one.elec[h]).abs() <= 1e-9 * (k * one.elec[h]).abs().max(1e-12));
            prop_assert!((many.gas_hourly[h] - k * one.gas_hourly[h]).abs() <= 1e-9 * (k * one.gas_hourly[h]).abs().max(1e-12));
        }
    }
}
