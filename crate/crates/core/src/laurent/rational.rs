use super::factor::{split_linear_factors, try_divide};
use super::{LaurentError, LaurentPoly};
use crate::C64;

/// Default threshold on `|denominator|` below which evaluation reports a pole.
pub const DEFAULT_POLE_TOL: f64 = 1e-12;

/// A ratio of Laurent polynomials over a shared variable list, plus the
/// factors whose zero sets are removed from the domain.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalPotential {
    numerator: LaurentPoly,
    denominator: LaurentPoly,
    excluded: Vec<LaurentPoly>,
}

impl RationalPotential {
    pub fn new(numerator: LaurentPoly, denominator: LaurentPoly) -> Result<Self, LaurentError> {
        if numerator.vars() != denominator.vars() {
            return Err(LaurentError::VariableMismatch(
                numerator.vars().to_vec(),
                denominator.vars().to_vec(),
            ));
        }
        if denominator.is_zero() {
            return Err(LaurentError::ZeroDenominator);
        }
        Ok(RationalPotential { numerator, denominator, excluded: Vec::new() })
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        let one = LaurentPoly::constant(p.vars(), C64::new(1.0, 0.0));
        RationalPotential { numerator: p, denominator: one, excluded: Vec::new() }
    }

    /// Adds deleted-divisor factors; duplicates (up to scaling) are dropped.
    pub fn with_excluded(mut self, factors: impl IntoIterator<Item = LaurentPoly>) -> Self {
        for f in factors {
            push_unique(&mut self.excluded, f);
        }
        self
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.numerator
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.denominator
    }

    pub fn excluded(&self) -> &[LaurentPoly] {
        &self.excluded
    }

    pub fn vars(&self) -> &[String] {
        self.numerator.vars()
    }

    pub fn nvars(&self) -> usize {
        self.numerator.nvars()
    }

    pub fn eval(&self, point: &[C64]) -> Result<C64, LaurentError> {
        self.eval_with_tol(point, DEFAULT_POLE_TOL)
    }

    pub fn eval_with_tol(&self, point: &[C64], pole_tol: f64) -> Result<C64, LaurentError> {
        let d = self.denominator.eval(point)?;
        if d.norm() < pole_tol || !d.is_finite() {
            return Err(LaurentError::PoleError { magnitude: d.norm(), tol: pole_tol });
        }
        Ok(self.numerator.eval_unchecked(point) / d)
    }

    pub fn partial_derivative(&self, var: &str) -> Result<Self, LaurentError> {
        let idx = self.numerator.var_index(var)?;
        Ok(self.partial_derivative_idx(idx))
    }

    /// Quotient rule, left unreduced: `(N' D - N D') / D^2`.
    pub fn partial_derivative_idx(&self, idx: usize) -> Self {
        let dn = self.numerator.derivative(idx);
        if let Some(c) = self.denominator.as_constant() {
            return RationalPotential {
                numerator: dn.scale(C64::new(1.0, 0.0) / c),
                denominator: LaurentPoly::constant(self.vars(), C64::new(1.0, 0.0)),
                excluded: self.excluded.clone(),
            };
        }
        let dd = self.denominator.derivative(idx);
        let num = &(&dn * &self.denominator) - &(&self.numerator * &dd);
        RationalPotential {
            numerator: num,
            denominator: &self.denominator * &self.denominator,
            excluded: self.excluded.clone(),
        }
    }

    /// All deleted-divisor factors: the stored ones together with the
    /// split factors of the denominator and of negative-power variables.
    pub fn excluded_factors(&self) -> Vec<LaurentPoly> {
        let mut out = Vec::new();
        for f in &self.excluded {
            for g in normalized_factors(f) {
                push_unique(&mut out, g);
            }
        }
        for g in normalized_factors(&self.denominator) {
            push_unique(&mut out, g);
        }
        let mins = self.numerator.min_exponents();
        for (i, &m) in mins.iter().enumerate() {
            if m < 0 {
                push_unique(&mut out, variable_poly(self.vars(), i));
            }
        }
        out
    }

    /// Distance-like margin of `point` from the excluded locus: the smallest
    /// `|factor(point)|` over all excluded factors (infinite when none).
    pub fn excluded_margin(&self, point: &[C64]) -> f64 {
        self.excluded_factors()
            .iter()
            .map(|f| f.eval_unchecked(point).norm())
            .fold(f64::INFINITY, f64::min)
    }
}

fn variable_poly(vars: &[String], i: usize) -> LaurentPoly {
    let mut e = vec![0; vars.len()];
    e[i] = 1;
    LaurentPoly::monomial(vars, e, C64::new(1.0, 0.0))
}

/// Splits into monic pieces: one per variable in the monomial content, one
/// per linear factor, and the non-constant remainder.
pub(crate) fn normalized_factors(p: &LaurentPoly) -> Vec<LaurentPoly> {
    let f = split_linear_factors(p);
    let vars = p.vars();
    let mut out = Vec::new();
    for (i, &e) in f.monomial.iter().enumerate() {
        if e != 0 {
            out.push(variable_poly(vars, i));
        }
    }
    for l in &f.linear {
        out.push(l.to_poly(vars));
    }
    if f.rest.as_constant().is_none() {
        out.push(f.rest.monic());
    }
    out
}

pub(crate) fn push_unique(list: &mut Vec<LaurentPoly>, f: LaurentPoly) {
    if f.as_constant().is_some() {
        return;
    }
    let m = f.monic();
    let tol = 1e-12 * (1.0 + m.max_abs_coeff());
    if !list.iter().any(|g| g.monic().approx_eq(&m, tol)) {
        list.push(m);
    }
}

/// Polynomials whose common zeros away from `excluded` are the common zeros
/// of the original rational functions.
#[derive(Clone, Debug)]
pub struct ClearedSystem {
    pub polys: Vec<LaurentPoly>,
    pub excluded: Vec<LaurentPoly>,
}

impl ClearedSystem {
    pub fn vars(&self) -> &[String] {
        self.polys[0].vars()
    }

    /// True when `point` lies within `tol` of some excluded factor's zero set.
    pub fn on_excluded(&self, point: &[C64], tol: f64) -> bool {
        self.excluded.iter().any(|f| f.eval_unchecked(point).norm() < tol)
    }
}

/// Multiplies each function through by its denominator (and by the
/// monomial making exponents non-negative), then strips every excluded
/// single-variable linear factor and excluded variable power that divides
/// the result.
pub fn clear_denominators(system: &[RationalPotential]) -> Result<ClearedSystem, LaurentError> {
    let first = system.first().ok_or(LaurentError::EmptySystem)?;
    let vars = first.vars().to_vec();
    for f in system {
        if f.vars() != vars.as_slice() {
            return Err(LaurentError::VariableMismatch(vars.clone(), f.vars().to_vec()));
        }
    }
    let mut excluded = Vec::new();
    for f in system {
        for g in f.excluded_factors() {
            push_unique(&mut excluded, g);
        }
    }
    let polys = system
        .iter()
        .map(|f| strip_excluded(&f.numerator.to_polynomial().0, &excluded))
        .collect();
    Ok(ClearedSystem { polys, excluded })
}

fn strip_excluded(p: &LaurentPoly, excluded: &[LaurentPoly]) -> LaurentPoly {
    let mut g = p.clone();
    let n = g.nvars();
    for f in excluded {
        match classify(f) {
            Some((var, None)) => {
                // excluded coordinate hyperplane: drop the common power
                let lo = g.degree_range(var).map(|r| r.0).unwrap_or(0);
                if lo > 0 {
                    let mut e = vec![0; n];
                    e[var] = -lo;
                    g = g.mul_monomial(&e);
                }
            }
            Some((var, Some(root))) => {
                while let Some(q) = try_divide(&g, var, root) {
                    g = q;
                }
            }
            None => {}
        }
    }
    g
}

/// `(var, None)` for `x_var`, `(var, Some(r))` for `x_var - r`.
fn classify(f: &LaurentPoly) -> Option<(usize, Option<C64>)> {
    let mut var = None;
    let mut constant = C64::new(0.0, 0.0);
    for (m, c) in f.terms() {
        let nz: Vec<usize> = (0..m.0.len()).filter(|&i| m.0[i] != 0).collect();
        match nz.as_slice() {
            [] => constant = *c,
            [i] if m.0[*i] == 1 && *c == C64::new(1.0, 0.0) && var.is_none() => var = Some(*i),
            _ => return None,
        }
    }
    let var = var?;
    if constant == C64::new(0.0, 0.0) {
        Some((var, None))
    } else {
        Some((var, Some(-constant)))
    }
}
