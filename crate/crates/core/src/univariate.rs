//! Dense univariate polynomials over `C64`, stored with ascending coefficients.
//!
//! Root finding uses the Aberth–Ehrlich simultaneous iteration, optionally
//! warm-started from a previous root set (used by branch-point tracking).

use crate::C64;

/// Horner evaluation of `sum coeffs[k] z^k`.
pub fn eval(coeffs: &[C64], z: C64) -> C64 {
    coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// Value and first derivative in one Horner pass.
pub fn eval_with_derivative(coeffs: &[C64], z: C64) -> (C64, C64) {
    let mut p = C64::new(0.0, 0.0);
    let mut dp = C64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Drops leading coefficients that are negligible relative to the largest one.
pub fn trim(coeffs: &[C64], rel_tol: f64) -> Vec<C64> {
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut end = coeffs.len();
    while end > 0 && coeffs[end - 1].norm() <= rel_tol * scale {
        end -= 1;
    }
    coeffs[..end].to_vec()
}

pub fn derivative(coeffs: &[C64]) -> Vec<C64> {
    coeffs.iter().enumerate().skip(1).map(|(k, &c)| c * k as f64).collect()
}

pub fn mul(a: &[C64], b: &[C64]) -> Vec<C64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![C64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// All complex roots with multiplicity. Exact zero trailing coefficients give
/// roots at the origin; negligible leading coefficients are dropped first.
pub fn roots(coeffs: &[C64]) -> Vec<C64> {
    let trimmed = trim(coeffs, 1e-14);
    if trimmed.len() <= 1 {
        return Vec::new();
    }
    let zeros = trimmed.iter().take_while(|c| c.norm() == 0.0).count();
    let reduced = &trimmed[zeros..];
    let mut out = vec![C64::new(0.0, 0.0); zeros];
    let degree = reduced.len() - 1;
    if degree == 0 {
        return out;
    }
    let guesses = initial_guesses(reduced);
    out.extend(aberth(reduced, guesses, 500));
    out
}

/// Roots refined from a caller-supplied starting set of the right size.
pub fn roots_from(coeffs: &[C64], start: &[C64]) -> Vec<C64> {
    let trimmed = trim(coeffs, 1e-14);
    if trimmed.len() != start.len() + 1 {
        return roots(coeffs);
    }
    aberth(&trimmed, start.to_vec(), 200)
}

fn initial_guesses(coeffs: &[C64]) -> Vec<C64> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    // Fujiwara-style radius estimate, geometric mean of root moduli as centre scale.
    let mut radius: f64 = 0.0;
    for (k, c) in coeffs[..n].iter().enumerate() {
        let r = (c.norm() / lead.norm()).powf(1.0 / (n - k) as f64);
        radius = radius.max(r);
    }
    let geo = (coeffs[0].norm() / lead.norm()).powf(1.0 / n as f64);
    let r = if geo.is_finite() && geo > 0.0 { geo } else { radius.max(1.0) };
    (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4;
            C64::from_polar(r, theta)
        })
        .collect()
}

fn aberth(coeffs: &[C64], mut z: Vec<C64>, max_iter: usize) -> Vec<C64> {
    let n = z.len();
    for _ in 0..max_iter {
        let mut max_corr: f64 = 0.0;
        for i in 0..n {
            let (p, dp) = eval_with_derivative(coeffs, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let mut s = C64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    let d = z[i] - z[j];
                    if d.norm() > 0.0 {
                        s += C64::new(1.0, 0.0) / d;
                    }
                }
            }
            let denom = C64::new(1.0, 0.0) - ratio * s;
            let w = if denom.norm() > 0.0 && denom.is_finite() { ratio / denom } else { ratio };
            if w.is_finite() {
                z[i] -= w;
                max_corr = max_corr.max(w.norm() / (1.0 + z[i].norm()));
            }
        }
        if max_corr < 1e-15 {
            break;
        }
    }
    // A couple of plain Newton steps tighten simple roots.
    for zi in z.iter_mut() {
        for _ in 0..2 {
            let (p, dp) = eval_with_derivative(coeffs, *zi);
            if dp.norm() > 0.0 {
                let step = p / dp;
                if step.is_finite() && step.norm() < 1e-6 * (1.0 + zi.norm()) {
                    *zi -= step;
                }
            }
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn quadratic_roots() {
        // z^2 - 1
        let mut r = roots(&[c(-1.0), c(0.0), c(1.0)]);
        r.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        assert!((r[0] - c(-1.0)).norm() < 1e-12);
        assert!((r[1] - c(1.0)).norm() < 1e-12);
    }

    #[test]
    fn roots_at_origin_are_kept() {
        // z^2 (z - 2)
        let r = roots(&[c(0.0), c(0.0), c(-2.0), c(1.0)]);
        assert_eq!(r.len(), 3);
        assert_eq!(r.iter().filter(|z| z.norm() == 0.0).count(), 2);
    }

    #[test]
    fn roots_reconstruct_polynomial() {
        let p = [C64::new(1.0, 2.0), c(-3.0), C64::new(0.5, -1.0), c(0.0), c(2.0)];
        for z in roots(&p) {
            assert!(eval(&p, z).norm() < 1e-10, "residual at {z}");
        }
    }
}
