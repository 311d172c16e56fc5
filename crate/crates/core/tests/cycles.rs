use std::collections::BTreeMap;
use std::sync::OnceLock;

use lgmirror::critical::{critical_values, stationary_points, CriticalPoint, SearchConfig};
use lgmirror::cycles::{
    clockwise_order, default_arcs, del_pezzo_arcs, quiver_matrix, reference_branch_points, track_branch_points,
    vanishing_cycles, ArcKind, ArcSpec, CycleError, CycleRun, FiberSpec, StepConfig,
};
use lgmirror::laurent::{LaurentPoly, RationalPotential};
use lgmirror::mirror::builtin_model;
use lgmirror::C64;
use nalgebra::DMatrix;

const E: f64 = 0.1;

fn c(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn del_pezzo(e: f64) -> RationalPotential {
    let p: BTreeMap<String, C64> = [("e".to_string(), c(e))].into();
    builtin_model("delpezzo4_deformed", &p).unwrap().eliminate().unwrap().potential
}

struct Setup {
    spec: FiberSpec,
    points: Vec<CriticalPoint>,
    values: Vec<C64>,
    lambda0: C64,
    arcs: Vec<ArcSpec>,
}

fn setup() -> &'static Setup {
    static S: OnceLock<Setup> = OnceLock::new();
    S.get_or_init(|| {
        let f = del_pezzo(E);
        let r = stationary_points(&f, &SearchConfig::default()).unwrap();
        let values: Vec<C64> = critical_values(&r.points, 1e-8, 1e-12).clusters.iter().map(|c| c.value).collect();
        let spec = FiberSpec::new(f, "u", "t").unwrap();
        let (lambda0, arcs) = del_pezzo_arcs(E, &values);
        Setup { spec, points: r.points, values, lambda0, arcs }
    })
}

fn run_with(arcs: &[ArcSpec], cfg: &StepConfig) -> CycleRun {
    let s = setup();
    vanishing_cycles(&s.spec, s.lambda0, arcs, &s.points, cfg).unwrap()
}

fn default_run() -> &'static CycleRun {
    static R: OnceLock<CycleRun> = OnceLock::new();
    R.get_or_init(|| run_with(&setup().arcs, &StepConfig::default()))
}

const EXPECTED: [[u32; 8]; 8] = [
    [1, 0, 0, 0, 1, 1, 1, 1],
    [0, 1, 0, 0, 1, 1, 1, 1],
    [0, 0, 1, 0, 1, 1, 1, 1],
    [0, 0, 0, 1, 1, 1, 1, 1],
    [0, 0, 0, 0, 1, 2, 2, 4],
    [0, 0, 0, 0, 0, 1, 0, 2],
    [0, 0, 0, 0, 0, 0, 1, 2],
    [0, 0, 0, 0, 0, 0, 0, 1],
];

fn assert_expected_quiver(run: &CycleRun) {
    let q = run.quiver().unwrap();
    let rows: Vec<Vec<u32>> = EXPECTED.iter().map(|r| r.to_vec()).collect();
    assert_eq!(q.entries, rows, "{}", q.to_csv());
}

/// Roots as eigenvalues of the companion matrix, for ascending `coeffs`.
fn companion_roots(coeffs: &[C64]) -> Vec<C64> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n].re;
    let m = DMatrix::from_fn(n, n, |i, j| {
        if j == n - 1 {
            -coeffs[i].re / lead
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    });
    m.complex_eigenvalues().iter().copied().collect()
}

#[test]
fn discriminant_is_the_branch_quartic() {
    for e in [0.1, 0.37] {
        let spec = FiberSpec::new(del_pezzo(e), "u", "t").unwrap();
        assert_eq!(spec.lambda_variable(), "lambda");
        let params: BTreeMap<String, C64> = [("e".to_string(), c(e))].into();
        let quartic = LaurentPoly::parse(
            "lambda^2*(t+1)^2 + e^2*t^2*(t-e)^2 + (4+2*e)*lambda*t*(t-e)*(t+1)",
            &names(&["t", "lambda"]),
            &params,
        )
        .unwrap();
        assert!(spec.discriminant().approx_eq(&quartic, 1e-14), "{:?}", spec.discriminant());
    }
}

#[test]
fn square_root_normal_form() {
    let vars = names(&["t", "u"]);
    let w = LaurentPoly::parse("u^2 - t", &vars, &BTreeMap::new()).unwrap();
    let spec = FiberSpec::new(RationalPotential::from_poly(w), "u", "t").unwrap();
    let lam = c(0.75);
    let b = spec.branch_polynomial(lam);
    let expected = LaurentPoly::parse("4*t + 3", &names(&["t"]), &BTreeMap::new()).unwrap();
    assert!(b.approx_eq(&expected, 1e-14), "{b:?}");
    let roots = reference_branch_points(&spec, lam);
    assert_eq!(roots.len(), 1);
    assert!((roots[0] + lam).norm() < 1e-14);
}

#[test]
fn cubic_cover_is_rejected() {
    let vars = names(&["t", "u"]);
    let w = LaurentPoly::parse("u^3 + t", &vars, &BTreeMap::new()).unwrap();
    let err = FiberSpec::new(RationalPotential::from_poly(w), "u", "t").unwrap_err();
    assert_eq!(err, CycleError::NotQuadratic { degree: 3 });
}

#[test]
fn four_distinct_branch_points_at_reference() {
    let s = setup();
    let ours = reference_branch_points(&s.spec, s.lambda0);
    let oracle = companion_roots(&s.spec.branch_coefficients(s.lambda0));
    assert_eq!(ours.len(), 4);
    assert_eq!(oracle.len(), 4);
    for z in &ours {
        let d = oracle.iter().map(|w| (w - z).norm()).fold(f64::INFINITY, f64::min);
        assert!(d < 1e-10, "{z} not among {oracle:?}");
    }
    for i in 0..4 {
        for j in i + 1..4 {
            assert!((oracle[i] - oracle[j]).norm() > 1e-4, "{oracle:?}");
        }
    }
}

#[test]
fn arc_preset_shape() {
    let s = setup();
    assert!((s.lambda0 - c(E.powi(4) / 32.0)).norm() < 1e-20);
    let kinds: Vec<ArcKind> = s.arcs.iter().map(|a| a.kind).collect();
    assert_eq!(kinds, [ArcKind::Straight, ArcKind::Straight, ArcKind::ArcBelowReal, ArcKind::ArcBelowReal]);
    let targets: Vec<f64> = s.arcs.iter().map(|a| a.to.re).collect();
    assert!(targets[0].abs() < 1e-15);
    assert!(targets.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(s.values.len(), 4);
    // the straight segment to the third value runs over the second
    let straight = ArcSpec::straight(s.lambda0, s.arcs[2].to);
    assert!(matches!(straight.check_clearance(&[s.arcs[1].to], 1e-12), Err(CycleError::ArcClearance { .. })));
    for (i, a) in s.arcs.iter().enumerate() {
        let others: Vec<C64> = s.values.iter().copied().filter(|v| (v - a.to).norm() > 1e-15).collect();
        assert_eq!(others.len(), 3, "arc {i}");
        assert!(a.check_clearance(&others, 1e-7).is_ok(), "arc {i}");
    }
}

#[test]
fn clockwise_order_ignores_round_off() {
    let l0 = c(1.0);
    let values = [C64::new(3.0, -1e-70), C64::new(2.0, 1e-71), C64::new(1e-21, -1e-66), C64::new(5.0, 0.0)];
    assert_eq!(clockwise_order(l0, &values), vec![2, 1, 0, 3]);
    let arcs = default_arcs(l0, &values);
    assert_eq!(arcs[0].kind, ArcKind::Straight);
    assert_eq!(arcs[1].kind, ArcKind::Straight);
    assert_eq!(arcs[2].kind, ArcKind::ArcBelowReal);
}

#[test]
fn constant_arc_has_no_collision() {
    let s = setup();
    let arc = ArcSpec::straight(s.lambda0, s.lambda0);
    let b = track_branch_points(&s.spec, &arc, &StepConfig::default()).unwrap();
    assert!(b.collisions.is_empty());
    assert_eq!(b.start().points, b.end().points);
}

#[test]
fn straight_arc_to_fifth_value_pinches_one_pair() {
    let s = setup();
    let arc = &s.arcs[1];
    let b = track_branch_points(&s.spec, arc, &StepConfig::default()).unwrap();
    assert_eq!(b.collisions.len(), 1);
    let (i, j) = b.collisions[0].pair;
    let end = &b.end().points;
    let others: Vec<C64> = (0..4).filter(|&k| k != i && k != j).map(|k| end[k]).collect();
    assert!((others[0] - others[1]).norm() > 1e-3);
    assert!(b.collisions[0].gap < 1e-3 * (others[0] - others[1]).norm());
}

#[test]
fn degenerate_arc_stops_short_of_zero() {
    let s = setup();
    let cfg = StepConfig::default();
    let b = track_branch_points(&s.spec, &s.arcs[0], &cfg).unwrap();
    let stop = b.end().lambda.norm();
    assert!((stop - cfg.degenerate_cutoff * s.lambda0.norm()).abs() < 1e-9 * stop);
    // the two double roots t = 0 and t = e of the zero fiber
    assert_eq!(b.collisions.len(), 2);
    let mut at: Vec<f64> = b.collisions.iter().map(|c| c.position.re).collect();
    at.sort_by(f64::total_cmp);
    assert!(at[0].abs() < 1e-3 && (at[1] - E).abs() < 1e-3, "{at:?}");
}

#[test]
fn braid_is_stable_under_step_halving() {
    let s = setup();
    let coarse = StepConfig::default();
    let fine = StepConfig { max_step: coarse.max_step / 2.0, min_step: coarse.min_step / 2.0, ..coarse.clone() };
    for arc in &s.arcs[1..] {
        let a = track_branch_points(&s.spec, arc, &coarse).unwrap();
        let b = track_branch_points(&s.spec, arc, &fine).unwrap();
        let mut common = 0;
        for x in &a.samples {
            if let Some(y) = b.samples.iter().find(|y| y.s == x.s) {
                common += 1;
                for (p, q) in x.points.iter().zip(&y.points) {
                    assert!((p - q).norm() < 1e-6, "s = {}: {p} vs {q}", x.s);
                }
            }
        }
        assert!(common * 2 >= a.samples.len(), "{common} of {}", a.samples.len());
        assert_eq!(a.collisions.iter().map(|c| c.pair).collect::<Vec<_>>(), b.collisions.iter().map(|c| c.pair).collect::<Vec<_>>());
    }
}

#[test]
fn del_pezzo_quiver_matrix() {
    let run = default_run();
    assert_eq!(run.cycles.len(), 8);
    let labels: Vec<&str> = run.cycles.iter().map(|c| c.label.as_str()).collect();
    assert_eq!(labels, ["L1", "L2", "L3", "L4", "L5", "L6", "L7", "L8"]);
    assert_expected_quiver(run);
    assert_eq!(run.intersection(4, 7).unwrap(), 4);
    assert_eq!(run.intersection(5, 6).unwrap(), 0);
    for i in 0..8 {
        for j in 0..8 {
            assert_eq!(run.intersection(i, j).unwrap(), run.intersection(j, i).unwrap());
        }
    }
    for cyc in &run.cycles[..4] {
        assert!(cyc.source_critical_value.norm() < 1e-15);
    }
}

#[test]
fn cycles_enclose_their_pairs() {
    let run = default_run();
    for cyc in &run.cycles {
        let (a, b) = cyc.matched_pair;
        let arc = &cyc.connecting_arc;
        assert!((arc[0] - run.reference_points[a]).norm() < 1e-12);
        assert!((arc[arc.len() - 1] - run.reference_points[b]).norm() < 1e-12);
        assert!(cyc.period.norm() > 0.0);
    }
}

#[test]
fn quiver_invariant_under_refinement() {
    let s = setup();
    let d = StepConfig::default();
    let halved = StepConfig { max_step: d.max_step / 2.0, min_step: d.min_step / 2.0, ..d.clone() };
    assert_expected_quiver(&run_with(&s.arcs, &halved));
    let tighter = StepConfig {
        max_step: d.max_step / 4.0,
        end_cutoff: d.end_cutoff / 10.0,
        degenerate_cutoff: d.degenerate_cutoff / 10.0,
        collision_ratio: d.collision_ratio / 2.0,
        ..d
    };
    assert_expected_quiver(&run_with(&s.arcs, &tighter));
}

#[test]
fn quiver_invariant_under_arc_perturbation() {
    let s = setup();
    let sep = 0.1 * (s.arcs[1].to - s.lambda0).norm();
    let mut arcs = s.arcs.clone();
    for (k, arc) in arcs.iter_mut().enumerate().skip(2) {
        let bottom = arc.point(0.5);
        let wobble = C64::new(0.1 * sep, -0.1 * sep) * (k as f64 - 1.5);
        *arc = ArcSpec::polyline(arc.from, vec![arc.point(0.02), bottom + wobble, arc.point(0.98)], arc.to);
    }
    assert_expected_quiver(&run_with(&arcs, &StepConfig::default()));
}

#[test]
fn single_cycle_quiver() {
    let run = default_run();
    let q = quiver_matrix(&run.cycles[4..5], run.covolume).unwrap();
    assert_eq!(q.entries, vec![vec![1]]);
    assert_eq!(q.to_csv(), "1\n");
}
