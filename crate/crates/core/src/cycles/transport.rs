//! Moving curves in the base plane backwards along a braid, and periods of
//! `dt / sqrt(Δ)` over closed curves.
//!
//! Curves are carried by the flow of the vector field that interpolates the
//! branch-point velocities with inverse-square-distance weights. The field
//! moves every branch point exactly and stays bounded far away, so the
//! isotopy class of a curve in the punctured plane is preserved as long as
//! each step is small compared with the distances involved, which the step
//! checks enforce.

use super::braid::BranchBraid;
use super::CycleError;
use crate::{univariate, C64};

const MAX_VERTICES: usize = 200_000;
const MAX_DEPTH: u32 = 30;

/// A polygon in the base plane. Open curves may be pinned at both ends to
/// branch points (by index).
#[derive(Clone, Debug)]
pub(crate) struct Curve {
    pub points: Vec<C64>,
    pub closed: bool,
    pub anchors: Option<(usize, usize)>,
}

impl Curve {
    pub fn circle(center: C64, radius: f64, n: usize) -> Self {
        let points = (0..n)
            .map(|k| center + C64::from_polar(radius, 2.0 * std::f64::consts::PI * k as f64 / n as f64))
            .collect();
        Curve { points, closed: true, anchors: None }
    }

    pub fn segment(a: C64, b: C64, pins: (usize, usize)) -> Self {
        Curve { points: vec![a, b], closed: false, anchors: Some(pins) }
    }

    fn edge_count(&self) -> usize {
        if self.closed {
            self.points.len()
        } else {
            self.points.len() - 1
        }
    }

    /// Branch point a vertex sits on, if it is a pinned end.
    fn pin(&self, i: usize) -> Option<usize> {
        let (a, b) = self.anchors?;
        if i == 0 {
            Some(a)
        } else if i + 1 == self.points.len() {
            Some(b)
        } else {
            None
        }
    }

    /// Branch point to ignore when measuring clearance along edge `e`.
    fn edge_pin(&self, e: usize) -> Option<usize> {
        let (a, b) = self.anchors?;
        if e == 0 {
            Some(a)
        } else if e + 2 == self.points.len() {
            Some(b)
        } else {
            None
        }
    }
}

fn clearance(v: C64, z: &[C64], skip: Option<usize>) -> f64 {
    z.iter()
        .enumerate()
        .filter(|(j, _)| Some(*j) != skip)
        .map(|(_, w)| (v - w).norm())
        .fold(f64::INFINITY, f64::min)
}

/// Splits edges longer than `ratio` times the clearance of their ends.
fn refine(c: &mut Curve, z: &[C64], ratio: f64) -> Result<(), CycleError> {
    loop {
        let mut out = Vec::with_capacity(c.points.len() * 2);
        let n = c.points.len();
        let mut changed = false;
        for e in 0..c.edge_count() {
            let (p, q) = (c.points[e], c.points[(e + 1) % n]);
            out.push(p);
            let skip = c.edge_pin(e);
            let d = clearance(p, z, skip).min(clearance(q, z, skip));
            if (q - p).norm() > ratio * d {
                out.push((p + q) / 2.0);
                changed = true;
            }
        }
        if !c.closed {
            out.push(c.points[n - 1]);
        }
        c.points = out;
        if c.points.len() > MAX_VERTICES {
            return Err(CycleError::TransportFailed("curve needs too many vertices".into()));
        }
        if !changed {
            return Ok(());
        }
    }
}

fn inside_triangle(p: C64, a: C64, b: C64, c: C64) -> bool {
    let cross = |u: C64, v: C64| u.re * v.im - u.im * v.re;
    let d1 = cross(b - a, p - a);
    let d2 = cross(c - b, p - b);
    let d3 = cross(a - c, p - c);
    let neg = d1 < 0.0 || d2 < 0.0 || d3 < 0.0;
    let pos = d1 > 0.0 || d2 > 0.0 || d3 > 0.0;
    !(neg && pos)
}

/// Drops vertices whose removal keeps edges short and sweeps no branch point.
fn coarsen(c: &mut Curve, z: &[C64], ratio: f64) {
    let n = c.points.len();
    let min_len = if c.closed { 12 } else { 2 };
    if n <= min_len {
        return;
    }
    let mut keep = vec![true; n];
    let mut i = if c.closed { 0 } else { 1 };
    let last = if c.closed { n } else { n - 1 };
    while i < last {
        let (prev, next) = ((i + n - 1) % n, (i + 1) % n);
        if !keep[prev] || !keep[next] || c.pin(i).is_some() || c.edge_pin(prev).is_some() || c.edge_pin(i).is_some() {
            i += 1;
            continue;
        }
        let (a, b, m) = (c.points[prev], c.points[next], c.points[i]);
        let d = clearance(a, z, None).min(clearance(b, z, None));
        if (b - a).norm() <= ratio * d && !z.iter().any(|w| inside_triangle(*w, a, m, b)) {
            keep[i] = false;
            i += 2;
        } else {
            i += 1;
        }
    }
    let kept: Vec<C64> = c.points.iter().zip(&keep).filter(|(_, k)| **k).map(|(p, _)| *p).collect();
    if kept.len() >= min_len {
        c.points = kept;
    }
}

/// Inverse-square-distance interpolation of the branch-point velocities
/// `delta` at `v`, with a bound on the derivative of the interpolant.
fn shepard(v: C64, z: &[C64], delta: &[C64]) -> (C64, f64) {
    let a: Vec<f64> = z.iter().map(|w| 1.0 / (v - w).norm_sqr()).collect();
    if let Some(j) = a.iter().position(|x| !x.is_finite()) {
        return (delta[j], 0.0);
    }
    let total: f64 = a.iter().sum();
    let dv: C64 = a.iter().zip(delta).map(|(x, d)| d * (x / total)).sum();
    let jac = a.iter().zip(delta).zip(z).map(|((x, d), w)| 2.0 * x / total * (d - dv).norm() / (v - w).norm()).sum();
    (dv, jac)
}

/// One flow step from branch configuration `z0` to `z1`, subdivided until
/// every vertex moves consistently with its neighbourhood.
fn advance(c: &mut Curve, z0: &[C64], z1: &[C64], depth: u32) -> Result<(), CycleError> {
    refine(c, z0, 0.5)?;
    let delta: Vec<C64> = z0.iter().zip(z1).map(|(a, b)| b - a).collect();
    let mut moves = Vec::with_capacity(c.points.len());
    let mut ok = true;
    for (i, &v) in c.points.iter().enumerate() {
        if let Some(j) = c.pin(i) {
            moves.push(delta[j]);
            continue;
        }
        let (dv, jac) = shepard(v, z0, &delta);
        if jac > 0.25 {
            ok = false;
            break;
        }
        for (j, w) in z0.iter().enumerate() {
            if (dv - delta[j]).norm() > 0.25 * (v - w).norm() {
                ok = false;
                break;
            }
        }
        if !ok {
            break;
        }
        moves.push(dv);
    }
    if ok {
        for (p, m) in c.points.iter_mut().zip(&moves) {
            *p += m;
        }
        if let Some((a, b)) = c.anchors {
            c.points[0] = z1[a];
            let n = c.points.len();
            c.points[n - 1] = z1[b];
        }
        coarsen(c, z1, 0.2);
        return Ok(());
    }
    if depth >= MAX_DEPTH {
        return Err(CycleError::TransportFailed("flow step could not be resolved".into()));
    }
    let mid: Vec<C64> = z0.iter().zip(z1).map(|(a, b)| (a + b) / 2.0).collect();
    advance(c, z0, &mid, depth + 1)?;
    advance(c, &mid, z1, depth + 1)
}

/// Carries curves given at the last sample of `braid` back to its first.
pub(crate) fn transport_back(braid: &BranchBraid, curves: &mut [Curve]) -> Result<(), CycleError> {
    for k in (1..braid.samples.len()).rev() {
        let (z0, z1) = (&braid.samples[k].points, &braid.samples[k - 1].points);
        for c in curves.iter_mut() {
            advance(c, z0, z1, 0)?;
        }
    }
    let z = &braid.samples[0].points;
    for c in curves.iter_mut() {
        refine(c, z, 0.5)?;
    }
    Ok(())
}

/// Number of times a closed polygon winds around `w`.
pub(crate) fn winding_number(points: &[C64], w: C64) -> i64 {
    let n = points.len();
    let mut total = 0.0;
    for i in 0..n {
        let a = points[i] - w;
        let b = points[(i + 1) % n] - w;
        total += (b / a).arg();
    }
    (total / (2.0 * std::f64::consts::PI)).round() as i64
}

const GAUSS_NODES: [f64; 8] = [
    -0.960_289_856_497_536_2,
    -0.796_666_477_413_626_7,
    -0.525_532_409_916_329,
    -0.183_434_642_495_649_8,
    0.183_434_642_495_649_8,
    0.525_532_409_916_329,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_2,
];
const GAUSS_WEIGHTS: [f64; 8] = [
    0.101_228_536_290_376_3,
    0.222_381_034_453_374_5,
    0.313_706_645_877_887_3,
    0.362_683_783_378_362,
    0.362_683_783_378_362,
    0.313_706_645_877_887_3,
    0.222_381_034_453_374_5,
    0.101_228_536_290_376_3,
];

/// `∮ dt / sqrt(Δ(t))` along a closed polygon, continuing the square root
/// from the principal value at the first vertex. Fails unless the root
/// returns to its starting value, i.e. the loop encloses an even number of
/// branch points.
pub(crate) fn loop_period(points: &[C64], coeffs: &[C64], branch: &[C64]) -> Result<C64, CycleError> {
    let mut c = Curve { points: points.to_vec(), closed: true, anchors: None };
    refine(&mut c, branch, 0.1)?;
    let p = &c.points;
    let n = p.len();
    let mut root = univariate::eval(coeffs, p[0]).sqrt();
    let first = root;
    let mut total = C64::new(0.0, 0.0);
    let follow = |prev: C64, t: C64| {
        let r = univariate::eval(coeffs, t).sqrt();
        if (r - prev).norm() <= (r + prev).norm() {
            r
        } else {
            -r
        }
    };
    for i in 0..n {
        let (a, b) = (p[i], p[(i + 1) % n]);
        let half = (b - a) / 2.0;
        let mid = (a + b) / 2.0;
        for (x, w) in GAUSS_NODES.iter().zip(GAUSS_WEIGHTS) {
            let t = mid + half * *x;
            root = follow(root, t);
            total += half * w / root;
        }
        root = follow(root, b);
    }
    if (root - first).norm() > (root + first).norm() {
        return Err(CycleError::TransportFailed("loop encloses an odd number of branch points".into()));
    }
    Ok(total)
}

/// A thin ellipse with foci `a` and `b` that excludes the other points.
pub(crate) fn ellipse_around(a: C64, b: C64, others: &[C64], n: usize) -> Option<Vec<C64>> {
    let h = (b - a) / 2.0;
    let m = (a + b) / 2.0;
    let mut rho_max = f64::INFINITY;
    for w in others {
        let s = ((w - a).norm() + (w - b).norm()) / (2.0 * h.norm());
        rho_max = rho_max.min(s.acosh());
    }
    if !(rho_max > 1e-6) {
        return None;
    }
    let rho = (0.5 * rho_max).min(0.5);
    Some(
        (0..n)
            .map(|k| {
                let th = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
                m + h * C64::new(th, rho).cos()
            })
            .collect(),
    )
}
