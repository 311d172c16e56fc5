//! Sparse multivariate Laurent polynomials with complex coefficients, and
//! rational functions built from them.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vectors under
//! graded-lexicographic order, so iteration and printing are deterministic.

mod factor;
mod parse;
mod rational;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::C64;

pub use factor::{split_linear_factors, Factorization, LinearFactor};
pub use parse::ParseError;
pub use rational::{clear_denominators, ClearedSystem, RationalPotential, DEFAULT_POLE_TOL};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LaurentError {
    #[error("expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("pole: |denominator| = {magnitude:e} below tolerance {tol:e}")]
    PoleError { magnitude: f64, tol: f64 },
    #[error("variable lists differ: {0:?} vs {1:?}")]
    VariableMismatch(Vec<String>, Vec<String>),
    #[error("denominator is identically zero")]
    ZeroDenominator,
    #[error("empty system")]
    EmptySystem,
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Exponent vector, one entry per variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<i32>);

impl Monomial {
    pub fn zero(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn exponents(&self) -> &[i32] {
        &self.0
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LaurentPoly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, C64>,
}

impl LaurentPoly {
    pub fn zero(vars: &[String]) -> Self {
        LaurentPoly { vars: vars.to_vec(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &[String], c: C64) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(Monomial::zero(vars.len()), c);
        p
    }

    pub fn from_real(vars: &[String], c: f64) -> Self {
        Self::constant(vars, C64::new(c, 0.0))
    }

    pub fn var(vars: &[String], name: &str) -> Result<Self, LaurentError> {
        let idx = index_of(vars, name)?;
        let mut exps = vec![0; vars.len()];
        exps[idx] = 1;
        Ok(Self::monomial(vars, exps, C64::new(1.0, 0.0)))
    }

    pub fn monomial(vars: &[String], exps: Vec<i32>, c: C64) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent vector length");
        let mut p = Self::zero(vars);
        p.add_term(Monomial(exps), c);
        p
    }

    pub fn from_terms<I>(vars: &[String], terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<i32>, C64)>,
    {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent vector length");
            p.add_term(Monomial(e), c);
        }
        p
    }

    /// Parses the plain-text expression grammar. Identifiers found in
    /// `params` are replaced by their values; all others must be variables.
    pub fn parse(
        input: &str,
        vars: &[String],
        params: &BTreeMap<String, C64>,
    ) -> Result<Self, ParseError> {
        parse::parse_expression(input, vars, params)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Result<usize, LaurentError> {
        index_of(&self.vars, name)
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(c)` when the polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<C64> {
        match self.terms.len() {
            0 => Some(C64::new(0.0, 0.0)),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.0.iter().all(|&e| e == 0).then_some(*c)
            }
            _ => None,
        }
    }

    /// `Some((exponents, coefficient))` for a single-term polynomial.
    pub fn as_single_term(&self) -> Option<(&[i32], C64)> {
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            Some((&m.0, *c))
        } else {
            None
        }
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    fn add_term(&mut self, m: Monomial, c: C64) {
        if c == C64::new(0.0, 0.0) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if *v == C64::new(0.0, 0.0) {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check_vars(&self, other: &Self) {
        assert!(
            self.vars == other.vars,
            "variable lists differ: {:?} vs {:?}",
            self.vars,
            other.vars
        );
    }

    pub fn scale(&self, c: C64) -> Self {
        if c == C64::new(0.0, 0.0) {
            return Self::zero(&self.vars);
        }
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, exps: &[i32]) -> Self {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, v)| {
                    let e = m.0.iter().zip(exps).map(|(a, b)| a + b).collect();
                    (Monomial(e), *v)
                })
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::constant(&self.vars, C64::new(1.0, 0.0));
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                out = &out * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        out
    }

    pub fn eval(&self, point: &[C64]) -> Result<C64, LaurentError> {
        if point.len() != self.vars.len() {
            return Err(LaurentError::DimensionMismatch { expected: self.vars.len(), got: point.len() });
        }
        Ok(self.eval_unchecked(point))
    }

    pub(crate) fn eval_unchecked(&self, point: &[C64]) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = *c;
            for (x, &e) in point.iter().zip(&m.0) {
                if e != 0 {
                    t *= x.powi(e);
                }
            }
            acc += t;
        }
        acc
    }

    /// Partial derivative with respect to variable `idx`.
    pub fn derivative(&self, idx: usize) -> Self {
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[idx];
            if e != 0 {
                let mut m2 = m.clone();
                m2.0[idx] -= 1;
                out.add_term(m2, c * e as f64);
            }
        }
        out
    }

    /// Minimum and maximum exponent of variable `idx` over all terms.
    pub fn degree_range(&self, idx: usize) -> Option<(i32, i32)> {
        let mut it = self.terms.keys().map(|m| m.0[idx]);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), e| (lo.min(e), hi.max(e))))
    }

    /// Per-variable minimum exponents (0 for an empty polynomial).
    pub fn min_exponents(&self) -> Vec<i32> {
        (0..self.nvars())
            .map(|i| self.degree_range(i).map(|r| r.0).unwrap_or(0))
            .collect()
    }

    /// Whether variable `idx` appears in any term.
    pub fn involves(&self, idx: usize) -> bool {
        self.terms.keys().any(|m| m.0[idx] != 0)
    }

    /// Splits into coefficients of powers of variable `idx`; the coefficient
    /// polynomials keep the full variable list with that exponent zeroed.
    pub fn coefficients_in(&self, idx: usize) -> BTreeMap<i32, LaurentPoly> {
        let mut out: BTreeMap<i32, LaurentPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[idx];
            let mut m2 = m.clone();
            m2.0[idx] = 0;
            out.entry(e).or_insert_with(|| Self::zero(&self.vars)).add_term(m2, *c);
        }
        out
    }

    /// Multiplies by the smallest monomial that makes every exponent
    /// non-negative; positive common powers are kept. Returns the polynomial
    /// and the shift applied.
    pub fn to_polynomial(&self) -> (Self, Vec<i32>) {
        let shift: Vec<i32> = self.min_exponents().iter().map(|&m| (-m).max(0)).collect();
        (self.mul_monomial(&shift), shift)
    }

    /// Substitutes a numeric value for variable `idx`.
    pub fn substitute_value(&self, idx: usize, value: C64) -> Self {
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            let e = m2.0[idx];
            m2.0[idx] = 0;
            out.add_term(m2, c * value.powi(e));
        }
        out
    }

    /// Re-expresses over a different variable list. Every variable that
    /// occurs with a non-zero exponent must be present in `new_vars`.
    pub fn with_vars(&self, new_vars: &[String]) -> Result<Self, LaurentError> {
        let mut map = Vec::with_capacity(self.vars.len());
        for (i, v) in self.vars.iter().enumerate() {
            match new_vars.iter().position(|n| n == v) {
                Some(j) => map.push(Some(j)),
                None if self.involves(i) => return Err(LaurentError::UnknownVariable(v.clone())),
                None => map.push(None),
            }
        }
        let mut out = Self::zero(new_vars);
        for (m, c) in &self.terms {
            let mut e = vec![0; new_vars.len()];
            for (i, &ex) in m.0.iter().enumerate() {
                if let Some(j) = map[i] {
                    e[j] = ex;
                }
            }
            out.add_term(Monomial(e), *c);
        }
        Ok(out)
    }

    /// Drops coefficients below `rel_tol` times the largest magnitude.
    pub fn prune(&self, rel_tol: f64) -> Self {
        let cut = rel_tol * self.max_abs_coeff();
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(_, c)| c.norm() > cut)
                .map(|(m, c)| (m.clone(), *c))
                .collect(),
        }
    }

    /// Coefficient-wise comparison with an absolute tolerance.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        if self.vars != other.vars {
            return false;
        }
        let diff = self - other;
        diff.max_abs_coeff() <= tol
    }

    /// Leading term under graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, C64)> {
        self.terms.iter().next_back().map(|(m, c)| (m, *c))
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some((_, c)) => self.scale(C64::new(1.0, 0.0) / c),
            None => self.clone(),
        }
    }
}

fn index_of(vars: &[String], name: &str) -> Result<usize, LaurentError> {
    vars.iter()
        .position(|v| v == name)
        .ok_or_else(|| LaurentError::UnknownVariable(name.to_string()))
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), *c);
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.check_vars(rhs);
        let mut out = LaurentPoly::zero(&self.vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let e = m1.0.iter().zip(&m2.0).map(|(a, b)| a + b).collect();
                out.add_term(Monomial(e), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(C64::new(-1.0, 0.0))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

pub(crate) fn format_coeff(c: C64) -> String {
    if c.im == 0.0 {
        format!("{}", c.re)
    } else if c.re == 0.0 {
        format!("{}i", c.im)
    } else if c.im < 0.0 {
        format!("({}-{}i)", c.re, -c.im)
    } else {
        format!("({}+{}i)", c.re, c.im)
    }
}

impl fmt::Display for LaurentPoly {
    /// Writes terms from the leading one down, in the parseable grammar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let mut c = *c;
            // Fold a real negative sign into the joining operator.
            let negative = c.im == 0.0 && c.re < 0.0;
            if negative {
                c = -c;
            }
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            let factors: Vec<String> = m
                .0
                .iter()
                .zip(&self.vars)
                .filter(|(&e, _)| e != 0)
                .map(|(&e, v)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
                .collect();
            let is_one = c == C64::new(1.0, 0.0);
            match (factors.is_empty(), is_one) {
                (true, _) => write!(f, "{}", format_coeff(c))?,
                (false, true) => write!(f, "{}", factors.join("*"))?,
                (false, false) => write!(f, "{}*{}", format_coeff(c), factors.join("*"))?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn p(s: &str, v: &[String]) -> LaurentPoly {
        LaurentPoly::parse(s, v, &BTreeMap::new()).unwrap()
    }

    #[test]
    fn graded_lex_order_is_deterministic() {
        let v = vars(&["x", "y"]);
        let a = p("y + x^2 + x*y + 1", &v);
        let exps: Vec<Vec<i32>> = a.terms().map(|(m, _)| m.0.clone()).collect();
        assert_eq!(exps, vec![vec![0, 0], vec![0, 1], vec![1, 1], vec![2, 0]]);
    }

    #[test]
    fn cancellation_removes_terms() {
        let v = vars(&["x"]);
        let a = p("x + 1", &v);
        let b = p("x - 1", &v);
        let d = &a - &b;
        assert_eq!(d.len(), 1);
        assert_eq!(d.as_constant(), Some(C64::new(2.0, 0.0)));
    }

    #[test]
    fn derivative_of_laurent_monomial() {
        let v = vars(&["x"]);
        let a = p("x + x^-1", &v);
        assert_eq!(a.derivative(0), p("1 - x^-2", &v));
    }

    #[test]
    fn coefficients_in_round_trip() {
        let v = vars(&["t", "u"]);
        let a = p("t^2*u - 3*t*u^-1 + u + 2", &v);
        let coeffs = a.coefficients_in(0);
        let mut back = LaurentPoly::zero(&v);
        for (k, c) in coeffs {
            let mut e = vec![0; 2];
            e[0] = k;
            back = &back + &c.mul_monomial(&e);
        }
        assert_eq!(back, a);
    }

    #[test]
    fn eval_arity_is_checked() {
        let v = vars(&["x", "y"]);
        let a = p("x*y", &v);
        assert!(matches!(a.eval(&[C64::new(1.0, 0.0)]), Err(LaurentError::DimensionMismatch { .. })));
    }

    #[test]
    fn display_parses_back() {
        let v = vars(&["x", "y"]);
        let a = p("(1.5-2i)*x^-2*y + 0.1*x - y^3 - 7", &v);
        let s = a.to_string();
        assert_eq!(p(&s, &v), a, "{s}");
    }

    #[test]
    fn with_vars_rejects_dropped_variable() {
        let v = vars(&["x", "y"]);
        let a = p("x*y", &v);
        assert!(a.with_vars(&vars(&["x"])).is_err());
        let b = p("x + 2", &v);
        assert_eq!(b.with_vars(&vars(&["x"])).unwrap().to_string(), "x + 2");
    }
}
