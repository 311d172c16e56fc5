use serde::Serialize;

use super::{ArcSpec, CycleError, FiberSpec};
use crate::{univariate, C64};

#[derive(Clone, Debug, Serialize)]
pub struct StepConfig {
    /// Largest step in the arc parameter.
    pub max_step: f64,
    pub min_step: f64,
    /// Tracking stops this far from a nonzero endpoint, relative to
    /// `|to - from|`.
    pub end_cutoff: f64,
    /// Tracking towards `λ = 0` stops at `|λ| = degenerate_cutoff · |from|`.
    pub degenerate_cutoff: f64,
    /// A pair has collided when its gap is below this fraction of the
    /// distance to every other branch point.
    pub collision_ratio: f64,
}

impl Default for StepConfig {
    fn default() -> Self {
        StepConfig { max_step: 1.0 / 128.0, min_step: 1e-14, end_cutoff: 1e-6, degenerate_cutoff: 1e-4, collision_ratio: 0.05 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BraidSample {
    pub s: f64,
    pub lambda: C64,
    /// Branch points, indexed persistently from the start of the arc.
    pub points: Vec<C64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Collision {
    pub pair: (usize, usize),
    pub lambda: C64,
    /// Midpoint of the pair at the last sample.
    pub position: C64,
    pub gap: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct BranchBraid {
    pub samples: Vec<BraidSample>,
    pub collisions: Vec<Collision>,
}

impl BranchBraid {
    pub fn start(&self) -> &BraidSample {
        &self.samples[0]
    }

    pub fn end(&self) -> &BraidSample {
        self.samples.last().expect("a braid has at least one sample")
    }
}

pub(crate) fn min_gap(z: &[C64]) -> f64 {
    let mut g = f64::INFINITY;
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            g = g.min((z[i] - z[j]).norm());
        }
    }
    g
}

/// Roots in a deterministic order, so that every arc leaving the same
/// reference value labels the branch points identically.
pub fn reference_branch_points(spec: &FiberSpec, lambda: C64) -> Vec<C64> {
    let mut r = univariate::roots(&spec.branch_coefficients(lambda));
    r.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    r
}

/// Nearest-neighbour matching of `next` to `prev`; `None` unless it is a
/// bijection with every move below a third of the smallest gap.
fn match_roots(prev: &[C64], next: &[C64]) -> Option<Vec<C64>> {
    let limit = min_gap(prev) / 3.0;
    let mut out = vec![C64::new(0.0, 0.0); prev.len()];
    let mut used = vec![false; next.len()];
    for (i, p) in prev.iter().enumerate() {
        let (k, d) = next
            .iter()
            .enumerate()
            .map(|(k, q)| (k, (q - p).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))?;
        if used[k] || d > limit {
            return None;
        }
        used[k] = true;
        out[i] = next[k];
    }
    Some(out)
}

/// Follows the branch points along `arc`. Arcs ending at a critical value
/// stop short of it; the pairs that have nearly met there are reported as
/// collisions.
pub fn track_branch_points(spec: &FiberSpec, arc: &ArcSpec, cfg: &StepConfig) -> Result<BranchBraid, CycleError> {
    let start = reference_branch_points(spec, arc.from);
    let scale = start.iter().map(|z| z.norm()).fold(1.0, f64::max);
    if start.len() < 2 || min_gap(&start) < 1e-10 * scale {
        return Err(CycleError::UnexpectedCollision { lambda: arc.from, pair: closest_pair(&start) });
    }
    let s_end = if arc.to == arc.from {
        0.0
    } else if arc.to.norm() <= 1e-9 * arc.from.norm() {
        arc.stop_parameter(cfg.degenerate_cutoff * arc.from.norm())
    } else {
        arc.stop_parameter(cfg.end_cutoff * (arc.to - arc.from).norm())
    };
    let mut samples = vec![BraidSample { s: 0.0, lambda: arc.from, points: start.clone() }];
    let mut s = 0.0;
    let mut h = cfg.max_step;
    let mut streak = 0;
    let mut prev = start;
    while s < s_end {
        let step = h.min(s_end - s);
        let lambda = arc.point(s + step);
        let coeffs = spec.branch_coefficients(lambda);
        let next = univariate::roots_from(&coeffs, &prev);
        if next.len() != prev.len() {
            return Err(CycleError::BranchCountChanged { lambda, expected: prev.len(), found: next.len() });
        }
        match match_roots(&prev, &next) {
            Some(m) => {
                s += step;
                if s_end - s < 1e-15 {
                    s = s_end;
                }
                let scale = m.iter().map(|z| z.norm()).fold(1.0, f64::max);
                if s < s_end && min_gap(&m) < 1e-12 * scale {
                    return Err(CycleError::UnexpectedCollision { lambda, pair: closest_pair(&m) });
                }
                samples.push(BraidSample { s, lambda, points: m.clone() });
                prev = m;
                streak += 1;
                if streak >= 2 {
                    h = (h * 2.0).min(cfg.max_step);
                    streak = 0;
                }
            }
            None => {
                h /= 2.0;
                streak = 0;
                if h < cfg.min_step {
                    return Err(CycleError::TrackingAmbiguity { lambda });
                }
            }
        }
    }
    let last = samples.last().expect("non-empty");
    let collisions = if (arc.to - arc.from).norm() == 0.0 {
        Vec::new()
    } else {
        find_collisions(&last.points, last.lambda, cfg.collision_ratio)
    };
    Ok(BranchBraid { samples, collisions })
}

fn closest_pair(z: &[C64]) -> (usize, usize) {
    let mut best = (0, 0, f64::INFINITY);
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            let d = (z[i] - z[j]).norm();
            if d < best.2 {
                best = (i, j, d);
            }
        }
    }
    (best.0, best.1)
}

fn find_collisions(z: &[C64], lambda: C64, ratio: f64) -> Vec<Collision> {
    let mut out = Vec::new();
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            let gap = (z[i] - z[j]).norm();
            let others = (0..z.len())
                .filter(|&k| k != i && k != j)
                .map(|k| (z[i] - z[k]).norm().min((z[j] - z[k]).norm()))
                .fold(f64::INFINITY, f64::min);
            if gap < ratio * others {
                out.push(Collision { pair: (i, j), lambda, position: (z[i] + z[j]) / 2.0, gap });
            }
        }
    }
    out
}
