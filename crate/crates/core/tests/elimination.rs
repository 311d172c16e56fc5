//! Elimination soundness against points of the relation variety built
//! directly from the relations.

use std::collections::BTreeMap;

use lgmirror::mirror::{builtin_model, LGModel};
use lgmirror::C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn params(kv: &[(&str, f64)]) -> BTreeMap<String, C64> {
    kv.iter().map(|(k, v)| (k.to_string(), C64::new(*v, 0.0))).collect()
}

/// Fills in every non-free coordinate by repeatedly taking a relation with a
/// single unknown and solving it; each preset relation is affine in the
/// unknown, so two evaluations determine the root.
fn variety_point(model: &LGModel, free: &[String], values: &[C64]) -> Vec<C64> {
    let n = model.variables.len();
    let mut known: Vec<Option<C64>> = vec![None; n];
    for (v, x) in free.iter().zip(values) {
        let i = model.variables.iter().position(|w| w == v).unwrap();
        known[i] = Some(*x);
    }
    let mut done = vec![false; model.relations.len()];
    loop {
        let mut progressed = false;
        for (r, rel) in model.relations.iter().enumerate() {
            if done[r] {
                continue;
            }
            let diff = rel.difference();
            let unknown: Vec<usize> = (0..n).filter(|&i| known[i].is_none() && diff.involves(i)).collect();
            if unknown.len() != 1 {
                continue;
            }
            let u = unknown[0];
            let at = |z: C64| {
                let p: Vec<C64> = known.iter().enumerate().map(|(i, k)| if i == u { z } else { k.unwrap_or_default() }).collect();
                diff.eval(&p).unwrap()
            };
            let f0 = at(C64::new(0.0, 0.0));
            let f1 = at(C64::new(1.0, 0.0));
            known[u] = Some(-f0 / (f1 - f0));
            done[r] = true;
            progressed = true;
        }
        if !progressed {
            break;
        }
    }
    known.into_iter().map(|k| k.expect("all coordinates determined")).collect()
}

fn check(name: &str, p: &BTreeMap<String, C64>) {
    let model = builtin_model(name, p).unwrap();
    let elim = model.eliminate().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..50 {
        let free: Vec<C64> = elim
            .free
            .iter()
            .map(|_| C64::from_polar(rng.gen_range(0.3..2.0), rng.gen_range(-3.1..3.1)))
            .collect();
        let full = variety_point(&model, &elim.free, &free);
        for r in &model.relations {
            assert!(r.difference().eval(&full).unwrap().norm() < 1e-10);
        }
        let want = model.potential.eval(&full).unwrap();
        let got = elim.potential.eval(&free).unwrap();
        assert!((got - want).norm() <= 1e-9 * want.norm().max(1e-300), "{name}: {got} vs {want}");
    }
}

#[test]
fn delpezzo4() {
    check("delpezzo4", &params(&[("A", 1.0)]));
}

#[test]
fn delpezzo4_deformed() {
    check("delpezzo4_deformed", &params(&[("e", 0.1)]));
}

#[test]
fn genus2() {
    check("genus2", &params(&[("a1", 0.013), ("a2", 0.021)]));
}

#[test]
fn hyperelliptic() {
    check("hyperelliptic", &params(&[("k", 5.0), ("a1", 0.2), ("a2", 0.3)]));
}

#[test]
fn quadrics_x4() {
    check("quadrics_x4", &BTreeMap::new());
}

#[test]
fn cubic_quadric_s() {
    check("cubic_quadric_S", &params(&[("A", 0.7)]));
}

#[test]
fn weighted_n() {
    check("weighted_N", &params(&[("a", 0.4)]));
}

#[test]
fn closed_forms() {
    let elim = builtin_model("genus2", &params(&[("a1", 0.3), ("a2", 0.5)])).unwrap().eliminate().unwrap();
    assert_eq!(elim.free, vec!["x1", "x3", "x4"]);
    let (x1, x3, x4) = (C64::new(0.4, 0.2), C64::new(-0.7, 0.1), C64::new(1.2, -0.5));
    let want = x1 + 0.3 * x3.powi(3) / x1 + x3 + x4 + 0.5 * x3 * x3 / x4;
    assert!((elim.potential.eval(&[x1, x3, x4]).unwrap() - want).norm() < 1e-13);

    let elim = builtin_model("quadrics_x4", &BTreeMap::new()).unwrap().eliminate().unwrap();
    assert_eq!(elim.free, vec!["x1", "x3", "x5"]);
    let (x1, x3, x5) = (C64::new(0.4, 0.2), C64::new(-0.7, 0.1), C64::new(1.2, -0.5));
    let want = x5 + 1.0 / (x1 * (-1.0 - x1) * x3 * (-1.0 - x3) * x5);
    assert!((elim.potential.eval(&[x1, x3, x5]).unwrap() - want).norm() < 1e-12);
}
