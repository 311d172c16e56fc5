use nalgebra::{DMatrix, DVector};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::quaternion::Su2;
use super::{conjugation_invariants, HolonomyProblem, SolutionSet, SolutionStatus, Su2Error, Tuple};

#[derive(Clone, Debug, Serialize)]
pub struct Su2Search {
    pub starts: usize,
    pub seed: u64,
    pub max_iterations: usize,
    /// Newton stops once `|[A1,B1][A2,B2] - target|` falls below this.
    pub residual_tol: f64,
    /// Max-norm radius for merging invariant signatures.
    pub cluster_tol: f64,
    /// Relative singular value cutoff for numerical ranks.
    pub rank_tol: f64,
}

impl Default for Su2Search {
    fn default() -> Self {
        Su2Search {
            starts: 10_000,
            seed: 0,
            max_iterations: 80,
            residual_tol: 1e-13,
            cluster_tol: 1e-6,
            rank_tol: 1e-6,
        }
    }
}

const FD_STEP: f64 = 1e-6;
/// Representatives kept when the solutions form a continuum.
const MAX_REPORTED: usize = 16;

fn basis(k: usize) -> [f64; 3] {
    let mut e = [0.0; 3];
    e[k] = 1.0;
    e
}

struct Setup<'a> {
    problem: &'a HolonomyProblem,
    free: Vec<usize>,
}

impl Setup<'_> {
    fn tuple(&self, free: &[Su2]) -> Tuple {
        let mut t = [Su2::IDENTITY; 4];
        for (g, x) in &self.problem.fixed {
            t[g.index()] = *x;
        }
        for (slot, x) in self.free.iter().zip(free) {
            t[*slot] = *x;
        }
        t
    }

    fn residual(&self, free: &[Su2]) -> DVector<f64> {
        let t = self.tuple(free);
        let p = super::commutator(t[0], t[1]) * super::commutator(t[2], t[3]);
        DVector::from_iterator(4, p.0.iter().zip(&self.problem.target.0).map(|(a, b)| a - b))
    }

    fn perturbed(free: &[Su2], k: usize, xi: [f64; 3]) -> Vec<Su2> {
        let mut out = free.to_vec();
        out[k] = out[k] * Su2::exp(xi);
        out
    }

    /// Derivative with respect to `X_k -> X_k exp(ξ)` for each free `k`.
    fn jacobian(&self, free: &[Su2]) -> DMatrix<f64> {
        let n = 3 * free.len();
        let mut j = DMatrix::zeros(4, n);
        for k in 0..free.len() {
            for m in 0..3 {
                let e = basis(m).map(|x| x * FD_STEP);
                let plus = self.residual(&Self::perturbed(free, k, e));
                let minus = self.residual(&Self::perturbed(free, k, e.map(|x| -x)));
                j.set_column(3 * k + m, &((plus - minus) / (2.0 * FD_STEP)));
            }
        }
        j
    }

    fn newton(&self, mut x: Vec<Su2>, cfg: &Su2Search) -> Option<Vec<Su2>> {
        let mut r = self.residual(&x);
        for _ in 0..cfg.max_iterations {
            if r.norm() < cfg.residual_tol {
                return Some(x);
            }
            let j = self.jacobian(&x);
            let step = j.svd(true, true).solve(&(-&r), cfg.rank_tol).ok()?;
            let mut scale = 1.0;
            let mut accepted = false;
            for _ in 0..12 {
                let trial: Vec<Su2> = x
                    .iter()
                    .enumerate()
                    .map(|(k, xk)| *xk * Su2::exp([0, 1, 2].map(|m| scale * step[3 * k + m])))
                    .collect();
                let rt = self.residual(&trial);
                if rt.norm() < r.norm() {
                    x = trial.into_iter().map(|q| Su2::normalized(q.0)).collect();
                    r = rt;
                    accepted = true;
                    break;
                }
                scale /= 2.0;
            }
            if !accepted {
                break;
            }
        }
        (r.norm() < cfg.residual_tol).then_some(x)
    }

    /// Dimension of the solution set modulo the conjugations that preserve
    /// the fixed generators, at a solution.
    fn local_dimension(&self, x: &[Su2], cfg: &Su2Search) -> usize {
        let tangent = 3 * x.len() - rank(&self.jacobian(x), cfg.rank_tol);
        // infinitesimal conjugation by η moves X by ηX - Xη
        let bracket = |eta: [f64; 3], q: &Su2| {
            let e = Su2([0.0, eta[0], eta[1], eta[2]]);
            let (a, b) = (e * *q, *q * e);
            [0, 1, 2, 3].map(|i| a.0[i] - b.0[i])
        };
        let fixed: Vec<Su2> = self.problem.fixed.values().copied().collect();
        let mut on_fixed = DMatrix::zeros(4 * fixed.len().max(1), 3);
        for m in 0..3 {
            for (i, f) in fixed.iter().enumerate() {
                let v = bracket(basis(m), f);
                for r in 0..4 {
                    on_fixed[(4 * i + r, m)] = v[r];
                }
            }
        }
        let stabilizer = null_space(&on_fixed, cfg.rank_tol);
        let mut on_free = DMatrix::zeros(4 * x.len(), stabilizer.ncols());
        for c in 0..stabilizer.ncols() {
            let eta = [stabilizer[(0, c)], stabilizer[(1, c)], stabilizer[(2, c)]];
            for (i, q) in x.iter().enumerate() {
                let v = bracket(eta, q);
                for r in 0..4 {
                    on_free[(4 * i + r, c)] = v[r];
                }
            }
        }
        let orbit = if stabilizer.ncols() == 0 { 0 } else { rank(&on_free, cfg.rank_tol) };
        tangent.saturating_sub(orbit)
    }
}

fn rank(m: &DMatrix<f64>, tol: f64) -> usize {
    if m.is_empty() {
        return 0;
    }
    let s = m.singular_values();
    let top = s.max().max(1.0);
    s.iter().filter(|v| **v > tol * top).count()
}

/// Orthonormal basis of the kernel of `m`, as columns.
fn null_space(m: &DMatrix<f64>, tol: f64) -> DMatrix<f64> {
    let n = m.ncols();
    // pad to square so that the SVD returns a full right basis
    let mut sq = DMatrix::zeros(m.nrows().max(n), n);
    sq.view_mut((0, 0), (m.nrows(), n)).copy_from(m);
    let svd = sq.svd(false, true);
    let v_t = svd.v_t.expect("requested");
    let top = svd.singular_values.max().max(1.0);
    let cols: Vec<DVector<f64>> = (0..n)
        .filter(|&i| svd.singular_values[i] <= tol * top)
        .map(|i| v_t.row(i).transpose())
        .collect();
    if cols.is_empty() {
        DMatrix::zeros(n, 0)
    } else {
        DMatrix::from_columns(&cols)
    }
}

fn max_diff(a: &[f64; 8], b: &[f64; 8]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Multistart Newton from Haar-random free generators; solutions are merged
/// by their conjugation invariants. Emptiness is only as strong as the start
/// budget.
pub fn solve_relation(problem: &HolonomyProblem, cfg: &Su2Search) -> Result<SolutionSet, Su2Error> {
    let setup = Setup { problem, free: problem.free().iter().map(|g| g.index()).collect() };
    let nfree = setup.free.len();
    let solutions: Vec<Vec<Su2>> = (0..cfg.starts)
        .into_par_iter()
        .filter_map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(i as u64);
            let start: Vec<Su2> = (0..nfree).map(|_| Su2::random(&mut rng)).collect();
            if nfree == 0 {
                let r = setup.residual(&start);
                return (r.norm() < cfg.residual_tol).then_some(start);
            }
            setup.newton(start, cfg)
        })
        .collect();
    let converged = solutions.len();

    let mut clusters: Vec<([f64; 8], Vec<Su2>)> = Vec::new();
    let mut closest_outside = f64::INFINITY;
    for x in &solutions {
        let sig = conjugation_invariants(&setup.tuple(x));
        let mut home = None;
        for (k, (s, _)) in clusters.iter().enumerate() {
            let d = max_diff(s, &sig);
            if d <= cfg.cluster_tol {
                home = Some(k);
                break;
            }
            closest_outside = closest_outside.min(d);
        }
        if home.is_none() {
            clusters.push((sig, x.clone()));
        }
    }
    clusters.sort_by(|a, b| {
        a.0.iter().zip(&b.0).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal)
    });
    let mut local_dimensions: Vec<usize> = clusters.iter().map(|(_, x)| setup.local_dimension(x, cfg)).collect();
    let status = if clusters.is_empty() {
        SolutionStatus::Empty
    } else if local_dimensions.iter().any(|d| *d > 0) {
        SolutionStatus::PositiveDimensional
    } else {
        if closest_outside < 100.0 * cfg.cluster_tol {
            return Err(Su2Error::BudgetExhaustedAmbiguous { distance: closest_outside });
        }
        SolutionStatus::Finite
    };
    let count = (status != SolutionStatus::PositiveDimensional).then_some(clusters.len());
    if status == SolutionStatus::PositiveDimensional {
        clusters.truncate(MAX_REPORTED);
        local_dimensions.truncate(MAX_REPORTED);
    }
    Ok(SolutionSet {
        status,
        representatives: clusters.iter().map(|(_, x)| setup.tuple(x)).collect(),
        invariant_signatures: clusters.iter().map(|(s, _)| *s).collect(),
        count,
        local_dimensions,
        starts: cfg.starts,
        converged,
    })
}
