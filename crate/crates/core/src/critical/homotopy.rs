//! Total-degree homotopy on the cleared gradient system.
//!
//! `H(x, t) = (1 - t) γ g(x) + t f(x)` with `g_i = x_i^{d_i} - 1`. Every
//! isolated finite root of `f` is the end of some path; paths heading to
//! infinity are dropped. Endpoints are handed back unpolished.

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use crate::laurent::LaurentPoly;
use crate::C64;

const GAMMA_ARG: f64 = 0.7137;
const MAX_STEPS: usize = 4000;
const MIN_DT: f64 = 1e-12;
const ESCAPE: f64 = 1e9;

struct Homotopy<'a> {
    f: &'a [LaurentPoly],
    jac: &'a [Vec<LaurentPoly>],
    degrees: Vec<i32>,
    gamma: C64,
}

impl Homotopy<'_> {
    fn g(&self, x: &[C64]) -> Vec<C64> {
        x.iter().zip(&self.degrees).map(|(xi, &d)| xi.powi(d) - 1.0).collect()
    }

    fn value(&self, x: &[C64], t: f64) -> DVector<C64> {
        let g = self.g(x);
        DVector::from_iterator(
            x.len(),
            self.f.iter().zip(g).map(|(p, gi)| self.gamma * gi * (1.0 - t) + p.eval_unchecked(x) * t),
        )
    }

    fn dx(&self, x: &[C64], t: f64) -> DMatrix<C64> {
        let n = x.len();
        DMatrix::from_fn(n, n, |r, c| {
            let mut v = self.jac[r][c].eval_unchecked(x) * t;
            if r == c {
                let d = self.degrees[r];
                v += self.gamma * (1.0 - t) * x[r].powi(d - 1) * d as f64;
            }
            v
        })
    }

    fn tangent(&self, x: &[C64], t: f64) -> Option<DVector<C64>> {
        let g = self.g(x);
        let ht = DVector::from_iterator(
            x.len(),
            self.f.iter().zip(g).map(|(p, gi)| p.eval_unchecked(x) - self.gamma * gi),
        );
        let v = self.dx(x, t).lu().solve(&(-ht))?;
        v.iter().all(|c| c.is_finite()).then_some(v)
    }

    fn predict(&self, x: &DVector<C64>, t: f64, dt: f64) -> Option<DVector<C64>> {
        let s = |v: &DVector<C64>| v.iter().copied().collect::<Vec<_>>();
        let k1 = self.tangent(&s(x), t)?;
        let k2 = self.tangent(&s(&(x + &k1 * C64::from(dt / 2.0))), t + dt / 2.0)?;
        let k3 = self.tangent(&s(&(x + &k2 * C64::from(dt / 2.0))), t + dt / 2.0)?;
        let k4 = self.tangent(&s(&(x + &k3 * C64::from(dt))), t + dt)?;
        Some(x + (k1 + k2 * C64::from(2.0) + k3 * C64::from(2.0) + k4) * C64::from(dt / 6.0))
    }

    fn correct(&self, mut x: DVector<C64>, t: f64) -> Option<DVector<C64>> {
        for k in 0..3 {
            let xs: Vec<C64> = x.iter().copied().collect();
            let d = self.dx(&xs, t).lu().solve(&(-self.value(&xs, t)))?;
            let scale = 1.0 + x.norm();
            if !d.iter().all(|c| c.is_finite()) || (k == 0 && d.norm() > 0.05 * scale) {
                return None;
            }
            x += &d;
            if d.norm() <= 1e-10 * scale {
                return Some(x);
            }
        }
        let xs: Vec<C64> = x.iter().copied().collect();
        let d = self.dx(&xs, t).lu().solve(&(-self.value(&xs, t)))?;
        (d.norm() <= 1e-7 * (1.0 + x.norm())).then_some(x + d)
    }

    fn track(&self, start: Vec<C64>) -> Option<Vec<C64>> {
        let mut x = DVector::from_vec(start);
        let mut t = 0.0f64;
        let mut dt = 0.01f64;
        let mut streak = 0;
        for _ in 0..MAX_STEPS {
            if t >= 1.0 {
                break;
            }
            let h = dt.min(1.0 - t);
            let next = self.predict(&x, t, h).and_then(|p| self.correct(p, t + h));
            match next {
                Some(y) => {
                    x = y;
                    t += h;
                    streak += 1;
                    if streak >= 3 {
                        dt = (dt * 2.0).min(0.1);
                        streak = 0;
                    }
                    if x.norm() > ESCAPE {
                        return None;
                    }
                }
                None => {
                    dt /= 2.0;
                    streak = 0;
                    if dt < MIN_DT {
                        break;
                    }
                }
            }
        }
        // Singular endpoints stall just short of t = 1; Newton on f sorts
        // them out afterwards.
        (t > 0.9).then(|| x.iter().copied().collect())
    }
}

/// Number of paths the total-degree homotopy would need.
pub(super) fn path_count(f: &[LaurentPoly]) -> Option<usize> {
    f.iter().try_fold(1usize, |acc, p| {
        let d = p.terms().map(|(m, _)| m.degree()).max()?;
        if d < 1 || p.min_exponents().iter().any(|&e| e < 0) {
            return None;
        }
        acc.checked_mul(d as usize)
    })
}

/// Endpoints of all paths that stayed bounded, in start order.
pub(super) fn endpoints(f: &[LaurentPoly], jac: &[Vec<LaurentPoly>]) -> Vec<Vec<C64>> {
    let degrees: Vec<i32> = f.iter().map(|p| p.terms().map(|(m, _)| m.degree() as i32).max().unwrap_or(0)).collect();
    let h = Homotopy { f, jac, degrees: degrees.clone(), gamma: C64::from_polar(1.0, GAMMA_ARG) };
    let total: usize = degrees.iter().map(|&d| d as usize).product();
    let starts: Vec<Vec<C64>> = (0..total)
        .map(|mut k| {
            degrees
                .iter()
                .map(|&d| {
                    let j = k % d as usize;
                    k /= d as usize;
                    C64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / d as f64)
                })
                .collect()
        })
        .collect();
    let ends: Vec<Option<Vec<C64>>> = starts.into_par_iter().map(|s| h.track(s)).collect();
    ends.into_iter().flatten().collect()
}
