//! Multistart Newton with deflation on the cleared gradient system.
//!
//! Starts are processed in batches. Every start in a batch is deflated
//! against the roots known when the batch began, so the merged result does
//! not depend on how rayon schedules the work.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::homotopy;
use super::completeness::{completeness, resultant_oracle, torus_variables, Completeness};
use super::{classify_hessian, value_order, Classification, CriticalError, CriticalPoint};
use crate::laurent::{clear_denominators, ClearedSystem, LaurentError, LaurentPoly, RationalPotential};
use crate::C64;

#[derive(Clone, Debug, Serialize)]
pub struct SearchConfig {
    pub seed: u64,
    /// Upper limit on the number of starts.
    pub starts: usize,
    pub batch: usize,
    /// Stop after this many consecutive batches without a new root.
    pub stall_batches: usize,
    /// Start moduli are `exp(U(-r, r))`.
    pub log_radius: f64,
    pub max_iterations: usize,
    /// Bound on the largest first partial at an accepted point.
    pub residual_tol: f64,
    pub dedup_rel: f64,
    pub dedup_abs: f64,
    /// Points with some excluded factor below this modulus are discarded.
    pub exclusion_tol: f64,
    /// The total-degree homotopy runs first when it needs at most this many
    /// paths; zero disables it.
    pub max_paths: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            seed: 0,
            starts: 2000,
            batch: 32,
            stall_batches: 8,
            log_radius: 5.0,
            max_iterations: 120,
            residual_tol: 1e-8,
            dedup_rel: 1e-6,
            dedup_abs: 1e-10,
            exclusion_tol: 1e-6,
            max_paths: 20_000,
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SolverDiagnostics {
    pub paths_tracked: usize,
    pub starts_used: usize,
    pub converged: usize,
    pub diverged: usize,
    pub discarded_excluded: usize,
    pub discarded_residual: usize,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StationaryReport {
    pub variables: Vec<String>,
    pub points: Vec<CriticalPoint>,
    pub completeness: Option<Completeness>,
    pub diagnostics: SolverDiagnostics,
}

struct System {
    polys: Vec<LaurentPoly>,
    jac: Vec<Vec<LaurentPoly>>,
    /// Torus coordinates are updated multiplicatively (Newton in `log x`),
    /// which keeps iterates from being drawn into the excluded hyperplanes.
    torus: Vec<bool>,
}

impl System {
    fn new(cleared: &ClearedSystem) -> Self {
        let n = cleared.polys.len();
        let jac = cleared.polys.iter().map(|p| (0..n).map(|j| p.derivative(j)).collect()).collect();
        System { polys: cleared.polys.clone(), jac, torus: torus_variables(cleared) }
    }

    /// Newton correction in mixed coordinates: `log x_i` for torus
    /// variables, `x_i` otherwise.
    fn log_step(&self, x: &[C64]) -> Option<Vec<C64>> {
        let n = x.len();
        let f = DVector::from_iterator(n, self.polys.iter().map(|p| -p.eval_unchecked(x)));
        let j = DMatrix::from_fn(n, n, |r, c| {
            let d = self.jac[r][c].eval_unchecked(x);
            if self.torus[c] {
                d * x[c]
            } else {
                d
            }
        });
        let d = j.lu().solve(&f)?;
        d.iter().all(|c| c.is_finite()).then(|| d.iter().copied().collect())
    }

    /// First-order displacement in `x` for a mixed-coordinate step.
    fn linear_displacement(&self, x: &[C64], d: &[C64]) -> Vec<C64> {
        (0..x.len()).map(|i| if self.torus[i] { x[i] * d[i] } else { d[i] }).collect()
    }

    fn apply(&self, x: &mut [C64], d: &[C64]) {
        for i in 0..x.len() {
            if self.torus[i] {
                x[i] *= d[i].exp();
            } else {
                x[i] += d[i];
            }
        }
    }

    /// Undeflated Newton correction.
    fn step(&self, x: &[C64]) -> Option<Vec<C64>> {
        let n = x.len();
        let f = DVector::from_iterator(n, self.polys.iter().map(|p| -p.eval_unchecked(x)));
        let j = DMatrix::from_fn(n, n, |r, c| self.jac[r][c].eval_unchecked(x));
        let d = j.lu().solve(&f)?;
        d.iter().all(|c| c.is_finite()).then(|| d.iter().copied().collect())
    }
}

fn norm_diff(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt()
}

fn norm(x: &[C64]) -> f64 {
    x.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

enum Outcome {
    Root(Vec<C64>),
    Diverged,
}

/// Deflation `M(x) = prod_r (|x - r|^-2 + 1)`. With the plain step `d`,
/// the deflated step is `d / (1 - D log M [d])` (Sherman-Morrison).
fn deflation_factor(x: &[C64], d: &[C64], roots: &[Vec<C64>]) -> f64 {
    let mut dlog = 0.0;
    for r in roots {
        let mut y2 = 0.0;
        let mut re_inner = 0.0;
        for ((xi, ri), di) in x.iter().zip(r).zip(d) {
            let y = xi - ri;
            y2 += y.norm_sqr();
            re_inner += (y.conj() * di).re;
        }
        if y2 == 0.0 {
            return f64::NAN;
        }
        dlog += -2.0 * re_inner / (y2 * y2) / (1.0 / y2 + 1.0);
    }
    1.0 / (1.0 - dlog)
}

fn run_start(sys: &System, mut x: Vec<C64>, known: &[Vec<C64>], max_iter: usize) -> Outcome {
    let mut converged = false;
    for _ in 0..max_iter {
        let Some(mut d) = sys.log_step(&x) else { return Outcome::Diverged };
        let lin = sys.linear_displacement(&x, &d);
        let tau = deflation_factor(&x, &lin, known);
        if !tau.is_finite() {
            return Outcome::Diverged;
        }
        let xn = norm(&x);
        // Trust region: at most 2 in each log coordinate, 2(1 + |x|) overall
        // in the affine ones.
        let mut scale = tau;
        for i in 0..x.len() {
            let m = (d[i] * tau).norm();
            let cap = if sys.torus[i] { 2.0 } else { 2.0 * (1.0 + xn) };
            if m > cap {
                scale = scale.min(tau * cap / m);
            }
        }
        for di in d.iter_mut() {
            *di *= scale;
        }
        let moved = norm(&lin) * scale.abs();
        sys.apply(&mut x, &d);
        if !x.iter().all(|c| c.is_finite()) || norm(&x) > 1e10 {
            return Outcome::Diverged;
        }
        if moved <= 1e-13 * (1.0 + norm(&x)) {
            converged = true;
            break;
        }
    }
    if !converged {
        return Outcome::Diverged;
    }
    for _ in 0..6 {
        let Some(d) = sys.step(&x) else { break };
        for (xi, di) in x.iter_mut().zip(&d) {
            *xi += di;
        }
        if norm(&d) <= 1e-16 * (1.0 + norm(&x)) {
            break;
        }
    }
    Outcome::Root(x)
}

fn start_point(seed: u64, index: u64, n: usize, log_radius: f64) -> Vec<C64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    (0..n)
        .map(|_| {
            let r = rng.gen_range(-log_radius..log_radius).exp();
            C64::from_polar(r, rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI))
        })
        .collect()
}

/// Largest first partial. The pole test applies to `f`; the partials'
/// squared denominators are only required to be nonzero.
fn gradient_residual(f: &RationalPotential, partials: &[RationalPotential], x: &[C64]) -> Result<f64, LaurentError> {
    f.eval(x)?;
    let mut m = 0.0f64;
    for p in partials {
        let v = p.eval_with_tol(x, 0.0)?;
        if !v.is_finite() {
            return Err(LaurentError::PoleError { magnitude: 0.0, tol: 0.0 });
        }
        m = m.max(v.norm());
    }
    Ok(m)
}

fn lex_cmp(a: &[C64], b: &[C64]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        let o = x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im));
        if o.is_ne() {
            return o;
        }
    }
    std::cmp::Ordering::Equal
}

/// All isolated stationary points found by the multistart search, with a
/// completeness report for one and two variables.
pub fn stationary_points(f: &RationalPotential, cfg: &SearchConfig) -> Result<StationaryReport, CriticalError> {
    let n = f.nvars();
    if n == 0 {
        return Err(CriticalError::NoVariables);
    }
    if n > 4 {
        return Err(CriticalError::DimensionTooLarge(n));
    }
    let partials: Vec<RationalPotential> = (0..n).map(|i| f.partial_derivative_idx(i)).collect();
    let cleared = clear_denominators(&partials)?;
    let sys = System::new(&cleared);
    let oracle = resultant_oracle(&cleared, cfg.exclusion_tol);
    let target = oracle.as_ref().map(|o| o.len());

    let mut diag = SolverDiagnostics::default();
    let mut roots: Vec<Vec<C64>> = Vec::new();
    // Limits on the excluded locus (typically singular solutions of the
    // cleared system) are deflated too, so later starts are pushed away.
    let mut boundary: Vec<Vec<C64>> = Vec::new();
    let same = |a: &[C64], b: &[C64]| {
        let d: f64 = a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt();
        d <= cfg.dedup_rel * norm(a).max(norm(b)) + cfg.dedup_abs
    };
    let accept = |o: Outcome, diag: &mut SolverDiagnostics, roots: &mut Vec<Vec<C64>>, boundary: &mut Vec<Vec<C64>>| {
        let x = match o {
            Outcome::Diverged => {
                diag.diverged += 1;
                return;
            }
            Outcome::Root(x) => x,
        };
        diag.converged += 1;
        if cleared.on_excluded(&x, cfg.exclusion_tol) {
            diag.discarded_excluded += 1;
            if boundary.iter().all(|b| norm_diff(b, &x) > 1e-4 * norm(&x) + 1e-6) {
                boundary.push(x);
            }
            return;
        }
        if roots.iter().any(|r| same(r, &x)) {
            return;
        }
        let residual = gradient_residual(f, &partials, &x).unwrap_or(f64::INFINITY);
        if !(residual < cfg.residual_tol) {
            diag.discarded_residual += 1;
            return;
        }
        roots.push(x);
    };

    if homotopy::path_count(&cleared.polys).is_some_and(|k| k <= cfg.max_paths) {
        let ends = homotopy::endpoints(&sys.polys, &sys.jac);
        diag.paths_tracked = homotopy::path_count(&cleared.polys).unwrap_or(0);
        let outcomes: Vec<Outcome> =
            ends.into_par_iter().map(|x| run_start(&sys, x, &[], cfg.max_iterations)).collect();
        for o in outcomes {
            accept(o, &mut diag, &mut roots, &mut boundary);
        }
    }

    let mut stall = 0;
    let mut next = 0usize;
    while next < cfg.starts && stall < cfg.stall_batches && target.is_none_or(|t| roots.len() < t) {
        let end = (next + cfg.batch.max(1)).min(cfg.starts);
        let snapshot: Vec<Vec<C64>> = roots.iter().chain(&boundary).cloned().collect();
        let outcomes: Vec<Outcome> = (next..end)
            .into_par_iter()
            .map(|i| run_start(&sys, start_point(cfg.seed, i as u64, n, cfg.log_radius), &snapshot, cfg.max_iterations))
            .collect();
        diag.starts_used += end - next;
        next = end;
        let before = roots.len();
        for o in outcomes {
            accept(o, &mut diag, &mut roots, &mut boundary);
        }
        stall = if roots.len() > before { 0 } else { stall + 1 };
    }

    let mut points = Vec::with_capacity(roots.len());
    let mut kept = Vec::with_capacity(roots.len());
    for x in roots {
        let classified = (|| {
            let residual = gradient_residual(f, &partials, &x)?;
            let p = CriticalPoint {
                value: f.eval(&x)?,
                location: x.clone(),
                hessian_det: C64::new(0.0, 0.0),
                classification: Classification::Degenerate,
                residual,
            };
            classify_hessian(f, &p)
        })();
        match classified {
            Ok(p) => {
                points.push(p);
                kept.push(x);
            }
            // too close to a pole for second derivatives
            Err(_) => diag.discarded_excluded += 1,
        }
    }
    let roots = kept;
    points.sort_by(|a, b| value_order(&a.value, &b.value).then_with(|| lex_cmp(&a.location, &b.location)));

    let completeness = completeness(&cleared, &roots, oracle.as_deref(), cfg.dedup_rel);
    if let Some(c) = &completeness {
        if c.shortfall > 0 {
            diag.warnings.push(format!(
                "non-convergence: {} of {} oracle roots not reached",
                c.shortfall,
                c.oracle_count.unwrap_or(0)
            ));
        }
    }
    if n <= 2 && oracle.is_none() {
        diag.warnings.push("resultant vanishes identically; no completeness oracle".into());
    }
    if points.iter().any(|p| p.classification == Classification::Degenerate) {
        diag.warnings.push("degenerate critical point found".into());
    }
    Ok(StationaryReport { variables: f.vars().to_vec(), points, completeness, diagnostics: diag })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    #[test]
    fn x_plus_inverse() {
        let v = vec!["x".to_string()];
        let f = RationalPotential::from_poly(LaurentPoly::parse("x + x^-1", &v, &BTreeMap::new()).unwrap());
        let r = stationary_points(&f, &SearchConfig::default()).unwrap();
        let xs: Vec<C64> = r.points.iter().map(|p| p.location[0]).collect();
        assert_eq!(xs.len(), 2);
        assert!((xs[0] - C64::new(1.0, 0.0)).norm() < 1e-12 || (xs[0] - C64::new(-1.0, 0.0)).norm() < 1e-12);
        assert!((xs[0] + xs[1]).norm() < 1e-12);
        let c = r.completeness.unwrap();
        assert_eq!((c.bkk_bound, c.oracle_count, c.shortfall), (2, Some(2), 0));
    }

    #[test]
    fn too_many_variables() {
        let v: Vec<String> = (1..=5).map(|i| format!("x{i}")).collect();
        let f = RationalPotential::from_poly(LaurentPoly::parse("x1+x2+x3+x4+x5", &v, &BTreeMap::new()).unwrap());
        assert_eq!(stationary_points(&f, &SearchConfig::default()).unwrap_err(), CriticalError::DimensionTooLarge(5));
    }
}
