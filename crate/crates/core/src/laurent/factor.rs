//! Numerical extraction of factors of the form `x_k - r` from a Laurent
//! polynomial. This is not a factorization algorithm: it only peels off
//! single-variable linear factors, which is what pole and deleted-divisor
//! bookkeeping needs.

use super::LaurentPoly;
use crate::{univariate, C64};

/// `var - root`, with `var` an index into the owning variable list.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearFactor {
    pub var: usize,
    pub root: C64,
}

impl LinearFactor {
    pub fn to_poly(&self, vars: &[String]) -> LaurentPoly {
        let mut e = vec![0; vars.len()];
        e[self.var] = 1;
        &LaurentPoly::monomial(vars, e, C64::new(1.0, 0.0)) - &LaurentPoly::constant(vars, self.root)
    }
}

/// `p = monomial * prod(linear) * rest`, with `rest` carrying the scalar.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub monomial: Vec<i32>,
    pub linear: Vec<LinearFactor>,
    pub rest: LaurentPoly,
}

const DIVISIBILITY_TOL: f64 = 1e-9;

// Fixed generic specialization values for the variables not being split.
fn generic_point(n: usize) -> Vec<C64> {
    (0..n)
        .map(|k| C64::new(0.613 + 0.217 * k as f64, 0.389 - 0.131 * k as f64))
        .collect()
}

pub fn split_linear_factors(p: &LaurentPoly) -> Factorization {
    let n = p.nvars();
    if p.is_zero() {
        return Factorization { monomial: vec![0; n], linear: Vec::new(), rest: p.clone() };
    }
    let monomial = p.min_exponents();
    let neg: Vec<i32> = monomial.iter().map(|e| -e).collect();
    let mut rest = p.mul_monomial(&neg);
    let mut linear = Vec::new();
    let point = generic_point(n);
    for var in 0..n {
        loop {
            let (_, hi) = match rest.degree_range(var) {
                Some(r) => r,
                None => break,
            };
            if hi < 1 {
                break;
            }
            let uni = specialize(&rest, var, &point);
            let raw = univariate::roots(&uni);
            let mut candidates = cluster_centroids(&uni, &raw);
            candidates.extend(raw);
            let mut found = None;
            for r in candidates {
                if let Some(q) = try_divide(&rest, var, r) {
                    found = Some((r, q));
                    break;
                }
            }
            match found {
                Some((r, q)) => {
                    linear.push(LinearFactor { var, root: clean(r) });
                    rest = q;
                }
                None => break,
            }
        }
    }
    Factorization { monomial, linear, rest }
}

/// Univariate coefficients (ascending) of `p` in `var` with the other
/// variables fixed at `point`.
fn specialize(p: &LaurentPoly, var: usize, point: &[C64]) -> Vec<C64> {
    let (lo, hi) = p.degree_range(var).unwrap_or((0, 0));
    let mut out = vec![C64::new(0.0, 0.0); (hi - lo + 1) as usize];
    for (m, c) in p.terms() {
        let mut t = *c;
        for (j, &e) in m.0.iter().enumerate() {
            if j != var && e != 0 {
                t *= point[j].powi(e);
            }
        }
        out[(m.0[var] - lo) as usize] += t;
    }
    out
}

/// Repeated roots come back from the root finder as a small cluster. A
/// cluster of size `m` is refined by Newton on the `(m-1)`-th derivative,
/// where the root is simple.
fn cluster_centroids(coeffs: &[C64], roots: &[C64]) -> Vec<C64> {
    let mut used = vec![false; roots.len()];
    let mut out = Vec::new();
    for i in 0..roots.len() {
        if used[i] {
            continue;
        }
        let mut sum = C64::new(0.0, 0.0);
        let mut count = 0usize;
        for j in i..roots.len() {
            if !used[j] && (roots[j] - roots[i]).norm() <= 1e-3 * (1.0 + roots[i].norm()) {
                used[j] = true;
                sum += roots[j];
                count += 1;
            }
        }
        let mut z = sum / count as f64;
        let mut d = coeffs.to_vec();
        for _ in 1..count {
            d = univariate::derivative(&d);
        }
        for _ in 0..8 {
            let (p, dp) = univariate::eval_with_derivative(&d, z);
            let step = p / dp;
            if !step.is_finite() || step.norm() > 1e-3 * (1.0 + z.norm()) {
                break;
            }
            z -= step;
        }
        out.push(z);
    }
    out
}

fn clean(r: C64) -> C64 {
    let snap = |x: f64| {
        let rounded = x.round();
        if (x - rounded).abs() < 1e-12 {
            rounded
        } else if x.abs() < 1e-14 {
            0.0
        } else {
            x
        }
    };
    C64::new(snap(r.re), snap(r.im))
}

/// Synthetic division by `(x_var - r)` when the remainder is negligible.
pub(crate) fn try_divide(p: &LaurentPoly, var: usize, r: C64) -> Option<LaurentPoly> {
    let rem = p.substitute_value(var, r);
    let scale = p.max_abs_coeff() * (1.0 + r.norm()).powi(p.degree_range(var)?.1.max(1));
    if rem.max_abs_coeff() > DIVISIBILITY_TOL * scale {
        return None;
    }
    let coeffs = p.coefficients_in(var);
    let (&lo, _) = coeffs.iter().next()?;
    let (&hi, _) = coeffs.iter().next_back()?;
    if hi <= lo {
        return None;
    }
    let vars = p.vars().to_vec();
    let zero = LaurentPoly::zero(&vars);
    // p = sum_{k=lo}^{hi} c_k x^k ; q has exponents lo..hi-1.
    let mut q_coeffs = vec![zero.clone(); (hi - lo) as usize];
    let mut carry = zero.clone();
    for k in (lo + 1..=hi).rev() {
        let ck = coeffs.get(&k).cloned().unwrap_or_else(|| zero.clone());
        carry = &ck + &carry.scale(r);
        q_coeffs[(k - 1 - lo) as usize] = carry.clone();
    }
    let mut q = zero;
    for (i, c) in q_coeffs.into_iter().enumerate() {
        let mut e = vec![0; vars.len()];
        e[var] = lo + i as i32;
        q = &q + &c.mul_monomial(&e);
    }
    Some(q.prune(1e-15))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn peels_pole_lines() {
        let v = vars(&["t", "u"]);
        let p = LaurentPoly::parse("(t+1)*(u+1)*t^2", &v, &BTreeMap::new()).unwrap();
        let f = split_linear_factors(&p);
        assert_eq!(f.monomial, vec![2, 0]);
        assert_eq!(f.linear.len(), 2);
        assert!(f.linear.iter().any(|l| l.var == 0 && l.root == C64::new(-1.0, 0.0)));
        assert!(f.linear.iter().any(|l| l.var == 1 && l.root == C64::new(-1.0, 0.0)));
        assert_eq!(f.rest.as_constant(), Some(C64::new(1.0, 0.0)));
    }

    #[test]
    fn keeps_irreducible_rest() {
        let v = vars(&["x", "y"]);
        let p = LaurentPoly::parse("(x^2 + y^2 + 1)*(x - 3)", &v, &BTreeMap::new()).unwrap();
        let f = split_linear_factors(&p);
        assert_eq!(f.linear, vec![LinearFactor { var: 0, root: C64::new(3.0, 0.0) }]);
        assert_eq!(f.rest.len(), 3);
    }
}
