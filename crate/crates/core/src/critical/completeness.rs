//! Completeness checks for one- and two-variable systems: a mixed-volume
//! bound on the number of isolated roots, and an independent root list from
//! the Sylvester resultant.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use serde::Serialize;

use crate::laurent::{ClearedSystem, LaurentPoly};
use crate::{univariate, C64};

#[derive(Clone, Debug, Serialize)]
pub struct Completeness {
    /// Mixed volume of the cleared system's supports.
    pub bkk_bound: usize,
    /// Isolated roots off the excluded locus recovered from the resultant.
    pub oracle_count: Option<usize>,
    pub found: usize,
    /// Found points that coincide with an oracle root.
    pub matched: usize,
    pub shortfall: usize,
}

fn hull(mut pts: Vec<(i64, i64)>) -> Vec<(i64, i64)> {
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0);
    let mut lower: Vec<(i64, i64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn twice_area(pts: &[(i64, i64)]) -> i64 {
    let h = hull(pts.to_vec());
    if h.len() < 3 {
        return 0;
    }
    let mut s = 0;
    for i in 0..h.len() {
        let (a, b) = (h[i], h[(i + 1) % h.len()]);
        s += a.0 * b.1 - a.1 * b.0;
    }
    s.abs()
}

/// `area(P + Q) - area(P) - area(Q)` for lattice point sets.
pub fn mixed_volume_2d(p: &[(i64, i64)], q: &[(i64, i64)]) -> usize {
    let sum: Vec<(i64, i64)> = p.iter().flat_map(|a| q.iter().map(move |b| (a.0 + b.0, a.1 + b.1))).collect();
    let twice = twice_area(&sum) - twice_area(p) - twice_area(q);
    (twice / 2) as usize
}

fn support(p: &LaurentPoly) -> Vec<(i64, i64)> {
    p.terms().map(|(m, _)| (m.0[0] as i64, m.0[1] as i64)).collect()
}

/// Variables whose coordinate hyperplane is excluded are torus variables.
pub(crate) fn torus_variables(cleared: &ClearedSystem) -> Vec<bool> {
    let n = cleared.vars().len();
    (0..n)
        .map(|i| {
            cleared.excluded.iter().any(|f| {
                f.len() == 1 && f.as_single_term().is_some_and(|(e, _)| e.iter().enumerate().all(|(j, &x)| x == (j == i) as i32))
            })
        })
        .collect()
}

pub(crate) fn bkk_bound(cleared: &ClearedSystem) -> Option<usize> {
    let torus = torus_variables(cleared);
    let augment = torus.iter().any(|t| !t);
    match cleared.polys.len() {
        1 => {
            let (lo, hi) = cleared.polys[0].degree_range(0)?;
            Some(if augment { hi.max(0) } else { hi - lo } as usize)
        }
        2 => {
            let mut p = support(&cleared.polys[0]);
            let mut q = support(&cleared.polys[1]);
            if augment {
                p.push((0, 0));
                q.push((0, 0));
            }
            Some(mixed_volume_2d(&p, &q))
        }
        _ => None,
    }
}

/// Ascending coefficients of `p` in variable `var` with the others fixed.
fn univariate_at(p: &LaurentPoly, var: usize, point: &[C64]) -> Vec<C64> {
    let hi = p.degree_range(var).map_or(0, |r| r.1.max(0)) as usize;
    let mut out = vec![C64::new(0.0, 0.0); hi + 1];
    for (m, c) in p.terms() {
        let mut t = *c;
        for (j, &e) in m.0.iter().enumerate() {
            if j != var && e != 0 {
                t *= point[j].powi(e);
            }
        }
        out[m.0[var] as usize] += t;
    }
    out
}

fn sylvester_det(f: &[C64], g: &[C64], m: usize, n: usize) -> (C64, f64) {
    let size = m + n;
    let mut s = DMatrix::from_element(size, size, C64::new(0.0, 0.0));
    for k in 0..n {
        for i in 0..=m {
            s[(k, k + i)] = f[m - i];
        }
    }
    for k in 0..m {
        for j in 0..=n {
            s[(n + k, k + j)] = g[n - j];
        }
    }
    let hadamard: f64 = s.row_iter().map(|r| r.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()).product();
    (s.determinant(), hadamard)
}

fn relative_residual(p: &LaurentPoly, x: &[C64]) -> f64 {
    let mut scale = 0.0;
    for (m, c) in p.terms() {
        let mut t = c.norm();
        for (xi, &e) in x.iter().zip(&m.0) {
            t *= xi.norm().powi(e);
        }
        scale += t;
    }
    // Floor the scale at the coefficient size: near a factor such as `t` the
    // term sum itself goes to zero.
    p.eval(x).map_or(f64::INFINITY, |v| v.norm() / scale.max(p.max_abs_coeff()))
}

fn polish(polys: &[LaurentPoly], jac: &[Vec<LaurentPoly>], mut x: Vec<C64>) -> Vec<C64> {
    let n = x.len();
    for _ in 0..40 {
        let f = nalgebra::DVector::from_iterator(n, polys.iter().map(|p| -p.eval(&x).unwrap()));
        let j = DMatrix::from_fn(n, n, |r, c| jac[r][c].eval(&x).unwrap());
        let Some(d) = j.lu().solve(&f) else { break };
        if !d.iter().all(|c| c.is_finite()) {
            break;
        }
        for i in 0..n {
            x[i] += d[i];
        }
        let norm: f64 = x.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if d.norm() <= 1e-15 * (1.0 + norm) {
            break;
        }
    }
    x
}

fn dist(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt()
}

/// Isolated common roots of a one- or two-variable cleared system, off the
/// excluded locus. `None` when the resultant vanishes identically (shared
/// components) or the system is larger.
pub fn resultant_oracle(cleared: &ClearedSystem, exclusion_tol: f64) -> Option<Vec<Vec<C64>>> {
    let polys = &cleared.polys;
    let n = polys.len();
    if n == 0 || n > 2 || cleared.vars().len() != n {
        return None;
    }
    let jac: Vec<Vec<LaurentPoly>> = polys.iter().map(|p| (0..n).map(|j| p.derivative(j)).collect()).collect();
    let accept = |x: &[C64], out: &mut Vec<Vec<C64>>| {
        if x.iter().any(|c| !c.is_finite() || c.norm() > 1e12) {
            return;
        }
        if polys.iter().any(|p| relative_residual(p, x) > 1e-9) || cleared.on_excluded(x, exclusion_tol) {
            return;
        }
        let norm = x.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if out.iter().all(|y| dist(x, y) > 1e-6 * norm + 1e-10) {
            out.push(x.to_vec());
        }
    };
    let mut out = Vec::new();
    if n == 1 {
        for r in univariate::roots(&univariate_at(&polys[0], 0, &[C64::new(0.0, 0.0)])) {
            let x = polish(polys, &jac, vec![r]);
            accept(&x, &mut out);
        }
        return Some(out);
    }

    // Eliminate variable 1 (u); the resultant is a polynomial in variable 0 (t).
    let deg = |p: &LaurentPoly, v: usize| p.degree_range(v).map_or(0, |r| r.1.max(0)) as usize;
    let (f, g) = (&polys[0], &polys[1]);
    let (m, nn) = (deg(f, 1), deg(g, 1));
    let t_roots: Vec<C64> = if m == 0 || nn == 0 {
        // One equation is free of u: its t-roots come directly.
        let free = if m == 0 { f } else { g };
        if deg(free, 0) == 0 {
            return None;
        }
        univariate::roots(&univariate_at(free, 0, &[C64::new(0.0, 0.0); 2]))
    } else {
        let bound = nn * deg(f, 0) + m * deg(g, 0);
        let samples = bound + 1;
        let mut values = Vec::with_capacity(samples);
        let mut identically_zero = true;
        for k in 0..samples {
            let t = C64::from_polar(1.0, 2.0 * PI * k as f64 / samples as f64);
            let pt = [t, C64::new(0.0, 0.0)];
            let (d, h) = sylvester_det(&univariate_at(f, 1, &pt), &univariate_at(g, 1, &pt), m, nn);
            if d.norm() > 1e-10 * h {
                identically_zero = false;
            }
            values.push(d);
        }
        if identically_zero {
            return None;
        }
        let coeffs: Vec<C64> = (0..samples)
            .map(|k| {
                let s: C64 = values
                    .iter()
                    .enumerate()
                    .map(|(j, v)| v * C64::from_polar(1.0, -2.0 * PI * (j * k) as f64 / samples as f64))
                    .sum();
                s / samples as f64
            })
            .collect();
        univariate::roots(&univariate::trim(&coeffs, 1e-12))
    };
    for t in t_roots {
        let pt = [t, C64::new(0.0, 0.0)];
        let fu = univariate::trim(&univariate_at(f, 1, &pt), 1e-12);
        let gu = univariate::trim(&univariate_at(g, 1, &pt), 1e-12);
        let mut us = univariate::roots(&fu);
        us.extend(univariate::roots(&gu));
        for u in us {
            let x = polish(polys, &jac, vec![t, u]);
            accept(&x, &mut out);
        }
    }
    Some(out)
}

pub(crate) fn completeness(
    cleared: &ClearedSystem,
    found: &[Vec<C64>],
    oracle: Option<&[Vec<C64>]>,
    dedup_rel: f64,
) -> Option<Completeness> {
    let bkk = bkk_bound(cleared)?;
    let matched = oracle.map_or(0, |o| {
        o.iter()
            .filter(|r| {
                let norm = r.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
                found.iter().any(|p| dist(p, r) <= dedup_rel * norm.max(1.0) * 10.0)
            })
            .count()
    });
    let oracle_count = oracle.map(|o| o.len());
    Some(Completeness {
        bkk_bound: bkk,
        oracle_count,
        found: found.len(),
        matched,
        shortfall: oracle_count.map_or(0, |c| c.saturating_sub(matched)),
    })
}
