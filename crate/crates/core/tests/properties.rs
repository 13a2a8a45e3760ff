#![allow(clippy::result_large_err)]

mod common;

use common::value_at;
use delaykit::io::{VcdExport, WaveFile};
use delaykit::sim::{simulate, Netlist, Stimulus};
use delaykit::{int, rat, Bit, IntervalSet, Rational, Signal};
use proptest::prelude::*;

fn signal() -> impl Strategy<Value = Signal> {
    (any::<bool>(), proptest::collection::btree_set((0i64..48, 1i64..5), 0..6)).prop_map(|(b, ks)| {
        let mut edges: Vec<Rational> = ks.into_iter().map(|(n, d)| rat(n, d)).collect();
        edges.sort();
        edges.dedup();
        Signal::new(Bit::new(b), edges).unwrap()
    })
}

fn window() -> impl Strategy<Value = (Rational, Rational)> {
    (0i64..16).prop_flat_map(|d| (Just(d), 0..=d)).prop_map(|(d, m)| (rat(d, 4), rat(m, 4)))
}

fn probes(signals: &[&Signal]) -> Vec<Rational> {
    let mut pts = vec![int(0), int(20)];
    for s in signals {
        for e in s.edges() {
            pts.push(e.clone());
            pts.push(e - rat(1, 97));
            pts.push(e + rat(1, 97));
        }
    }
    pts.retain(|t| *t >= int(0));
    pts
}

fn interval_set() -> impl Strategy<Value = IntervalSet> {
    proptest::collection::vec((0i64..40, 0i64..8, 0u8..3), 0..4).prop_map(|parts| {
        parts.into_iter().fold(IntervalSet::empty(), |acc, (a, len, kind)| {
            let (a, b) = (rat(a, 2), rat(a + len, 2));
            let part = match kind {
                0 => IntervalSet::half_open(a, b),
                1 => IntervalSet::closed(a, b),
                _ => IntervalSet::point(a),
            };
            acc.union(&part)
        })
    })
}

fn set_probes() -> Vec<Rational> {
    (-2..=100).map(|k| rat(k, 4)).collect()
}

proptest! {
    #[test]
    fn set_operations_are_pointwise(a in interval_set(), b in interval_set()) {
        let (u, i, d, c) = (a.union(&b), a.intersection(&b), a.difference(&b), a.complement());
        for t in set_probes() {
            let (x, y) = (a.contains(&t), b.contains(&t));
            prop_assert_eq!(u.contains(&t), x || y);
            prop_assert_eq!(i.contains(&t), x && y);
            prop_assert_eq!(d.contains(&t), x && !y);
            prop_assert_eq!(c.contains(&t), !x);
        }
        prop_assert_eq!(a.is_subset(&u), true);
    }

    #[test]
    fn reflect_and_shift_move_points(a in interval_set(), c in -10i64..10) {
        let c = rat(c, 2);
        let (r, s) = (a.reflect(&c), a.shift(&c));
        for t in set_probes() {
            prop_assert_eq!(r.contains(&(&c - &t)), a.contains(&t));
            prop_assert_eq!(s.contains(&(&t + &c)), a.contains(&t));
        }
    }

    #[test]
    fn boolean_ops_are_pointwise(a in signal(), b in signal()) {
        let (and, or, xor, not) = (a.and(&b), a.or(&b), a.xor(&b), a.negate());
        for t in probes(&[&a, &b]) {
            let (x, y) = (value_at(&a, &t), value_at(&b, &t));
            prop_assert_eq!(value_at(&and, &t), x && y);
            prop_assert_eq!(value_at(&or, &t), x || y);
            prop_assert_eq!(value_at(&xor, &t), x ^ y);
            prop_assert_eq!(value_at(&not, &t), !x);
        }
    }

    #[test]
    fn edges_stay_canonical(a in signal(), b in signal()) {
        for s in [a.xor(&b), a.and(&b), a.or(&b)] {
            prop_assert!(s.edges().windows(2).all(|w| w[0] < w[1]));
            prop_assert!(Signal::new(s.initial(), s.edges().to_vec()).is_ok());
        }
    }

    #[test]
    fn translations_compose(a in signal(), s in 0i64..12, r in -6i64..6) {
        let (s, r) = (rat(s, 2), rat(r, 2));
        let once = a.translate(&(&s + &r));
        if let Ok(step) = a.translate(&s).and_then(|x| x.translate(&r)) {
            prop_assert_eq!(Ok(step), once);
        }
        prop_assert_eq!(a.translate(&s).unwrap().translate(&-s.clone()).unwrap(), a);
    }

    #[test]
    fn windows_are_de_morgan_duals(a in signal(), (d, m) in window()) {
        let all = a.window_all(&d, &m).unwrap();
        let any_neg = a.negate().window_any(&d, &m).unwrap();
        prop_assert_eq!(all, any_neg.negate());
    }

    #[test]
    fn windows_commute_with_delay(a in signal(), (d, m) in window(), s in 0i64..10) {
        let s = rat(s, 2);
        let shifted = a.translate(&s).unwrap();
        prop_assert_eq!(shifted.window_all(&d, &m).unwrap(), a.window_all(&d, &m).unwrap().translate(&s).unwrap());
        prop_assert_eq!(shifted.window_any(&d, &m).unwrap(), a.window_any(&d, &m).unwrap().translate(&s).unwrap());
    }

    #[test]
    fn window_all_lies_below_window_any(a in signal(), (d, m) in window()) {
        let (all, any) = (a.window_all(&d, &m).unwrap(), a.window_any(&d, &m).unwrap());
        prop_assert_eq!(all.and(&any), all);
    }

    #[test]
    fn truncation_keeps_the_prefix(a in signal(), h in 0i64..30) {
        let h = rat(h, 2);
        let after = a.truncate_after(&h);
        for t in probes(&[&a]) {
            if t <= h {
                prop_assert_eq!(value_at(&after, &t), value_at(&a, &t));
            }
        }
        prop_assert!(after.edges().iter().all(|e| *e <= h));
    }

    #[test]
    fn wavefiles_round_trip(signals in proptest::collection::vec(signal(), 0..6)) {
        let w: WaveFile = signals.iter().enumerate().map(|(k, s)| (format!("w{k}"), s.clone())).collect();
        let text = w.to_string();
        let back = WaveFile::parse(&text).unwrap();
        prop_assert_eq!(back.to_string(), text);
        prop_assert_eq!(back, w);
    }

    #[test]
    fn vcd_times_scale_exactly(signals in proptest::collection::vec(signal(), 1..5)) {
        let named: Vec<(String, &Signal)> = signals.iter().enumerate().map(|(k, s)| (format!("v{k}"), s)).collect();
        let export = VcdExport::new(named.iter().map(|(n, s)| (n.as_str(), *s))).unwrap();
        prop_assert!(export.changes.windows(2).all(|w| w[0].0 < w[1].0));
        let scale = Rational::from_integer(export.scale.clone());
        let mut seen = 0;
        for (time, group) in &export.changes {
            let t = Rational::from_integer((*time).into()) / &scale;
            for (k, v) in group {
                prop_assert!(signals[*k].edges().contains(&t));
                prop_assert_eq!(*v, signals[*k].eval(&t));
                seen += 1;
            }
        }
        prop_assert_eq!(seen, signals.iter().map(|s| s.edges().len()).sum::<usize>());
    }

    #[test]
    fn simulation_is_deterministic(u in signal()) {
        let net: Netlist = "input u\n\
                            delay a = pure(1/2) u\n\
                            gate w = xor u a\n\
                            delay x = window_any(1, 1/2) w\n\
                            gate y = and x u\n\
                            output y\n".parse().unwrap();
        let stim = Stimulus::new().with("u", u);
        let (r1, r2) = (simulate(&net, &stim, &int(60)).unwrap(), simulate(&net, &stim, &int(60)).unwrap());
        prop_assert!(r1.is_settled());
        prop_assert_eq!(r1, r2);
    }
}
