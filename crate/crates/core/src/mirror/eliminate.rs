use std::collections::BTreeSet;

use super::{LGModel, MirrorError, Pick};
use crate::laurent::{LaurentPoly, RationalPotential};
use crate::C64;

/// `var = numerator / denominator`, over the model's full variable list.
/// Expressions may mention variables solved by later picks.
#[derive(Clone, Debug)]
pub struct SolvedVariable {
    pub var: String,
    pub numerator: LaurentPoly,
    pub denominator: LaurentPoly,
}

#[derive(Clone, Debug)]
pub struct Elimination {
    /// Over `free` only.
    pub potential: RationalPotential,
    pub free: Vec<String>,
    /// In pick order.
    pub solved: Vec<SolvedVariable>,
    all_vars: Vec<String>,
}

impl Elimination {
    /// Full coordinates (model variable order) from free coordinates.
    pub fn lift(&self, free_point: &[C64]) -> Vec<C64> {
        let mut full = vec![C64::new(0.0, 0.0); self.all_vars.len()];
        for (v, x) in self.free.iter().zip(free_point) {
            full[index(&self.all_vars, v)] = *x;
        }
        for s in self.solved.iter().rev() {
            let i = index(&self.all_vars, &s.var);
            full[i] = s.numerator.eval_unchecked(&full) / s.denominator.eval_unchecked(&full);
        }
        full
    }

    pub fn all_variables(&self) -> &[String] {
        &self.all_vars
    }
}

fn index(vars: &[String], v: &str) -> usize {
    vars.iter().position(|x| x == v).expect("known variable")
}

/// Solves each picked relation for its variable (which must occur as
/// `v^m (a v + b)` after clearing) and substitutes `v = -b/a` everywhere.
/// The excluded locus collects `a`, and `b` when `v` is a torus variable,
/// pushed through later substitutions, plus the free torus variables.
pub fn eliminate(model: &LGModel, picks: &[Pick]) -> Result<Elimination, MirrorError> {
    model.validate()?;
    let vars = model.variables.clone();
    let one = LaurentPoly::constant(&vars, C64::new(1.0, 0.0));
    let mut relations: Vec<LaurentPoly> = model.relations.iter().map(|r| r.difference()).collect();
    let mut num = model.potential.clone();
    let mut den = one.clone();
    let mut excluded: Vec<LaurentPoly> = Vec::new();
    let mut solved: Vec<SolvedVariable> = Vec::new();
    let mut used_vars = BTreeSet::new();
    let mut used_rels = BTreeSet::new();

    for pick in picks {
        let v = vars
            .iter()
            .position(|x| *x == pick.var)
            .ok_or_else(|| MirrorError::Laurent(crate::laurent::LaurentError::UnknownVariable(pick.var.clone())))?;
        if pick.relation >= relations.len() {
            return Err(MirrorError::UnknownRelation(pick.relation));
        }
        if !used_vars.insert(v) {
            return Err(MirrorError::CyclicOrder(format!("variable `{}`", pick.var)));
        }
        if !used_rels.insert(pick.relation) {
            return Err(MirrorError::CyclicOrder(format!("relation {}", pick.relation)));
        }
        let nonsolvable = || MirrorError::NonSolvablePick { var: pick.var.clone(), relation: pick.relation };
        let (rel, _) = relations[pick.relation].to_polynomial();
        let coeffs = rel.coefficients_in(v);
        let keys: Vec<i32> = coeffs.keys().copied().collect();
        let (a, b) = match keys.as_slice() {
            [m0, m1] if *m1 == m0 + 1 => (coeffs[m1].clone(), coeffs[m0].clone()),
            _ => return Err(nonsolvable()),
        };
        let p = -&b;
        let q = a.clone();

        for (i, r) in relations.iter_mut().enumerate() {
            if i != pick.relation {
                let (t, kmin, _) = substitute(r, v, &p, &q);
                *r = if kmin > 0 { &t * &p.pow(kmin as u32) } else { t };
            }
        }
        let (tn, an, bn) = substitute(&num, v, &p, &q);
        let (td, ad, bd) = substitute(&den, v, &p, &q);
        let ep = an - ad;
        let eq = bd - bn;
        num = &(&tn * &p.pow(ep.max(0) as u32)) * &q.pow(eq.max(0) as u32);
        den = &(&td * &p.pow((-ep).max(0) as u32)) * &q.pow((-eq).max(0) as u32);
        for f in excluded.iter_mut() {
            *f = substitute(f, v, &p, &q).0;
        }
        for s in solved.iter_mut() {
            let (sn, a1, b1) = substitute(&s.numerator, v, &p, &q);
            let (sd, a2, b2) = substitute(&s.denominator, v, &p, &q);
            let ep = a1 - a2;
            let eq = b2 - b1;
            s.numerator = &(&sn * &p.pow(ep.max(0) as u32)) * &q.pow(eq.max(0) as u32);
            s.denominator = &(&sd * &p.pow((-ep).max(0) as u32)) * &q.pow((-eq).max(0) as u32);
        }
        excluded.push(q.clone());
        if !model.is_affine(&pick.var) {
            excluded.push(p.clone());
        }
        solved.push(SolvedVariable { var: pick.var.clone(), numerator: p, denominator: q });
    }

    let unused: Vec<usize> = (0..relations.len()).filter(|i| !used_rels.contains(i)).collect();
    if !unused.is_empty() {
        return Err(MirrorError::IncompleteElimination(unused));
    }

    let free: Vec<String> = vars
        .iter()
        .enumerate()
        .filter(|(i, _)| !used_vars.contains(i))
        .map(|(_, v)| v.clone())
        .collect();
    for v in &free {
        if !model.is_affine(v) {
            excluded.push(LaurentPoly::var(&vars, v)?);
        }
    }
    if let Some(c) = den.as_constant() {
        num = num.scale(C64::new(1.0, 0.0) / c);
        den = one;
    }
    let restrict = |p: &LaurentPoly| p.with_vars(&free);
    let excluded_free = excluded
        .iter()
        .filter(|f| f.as_constant().is_none())
        .map(restrict)
        .collect::<Result<Vec<_>, _>>()?;
    let potential = RationalPotential::new(restrict(&num)?, restrict(&den)?)?.with_excluded(excluded_free);
    Ok(Elimination { potential, free, solved, all_vars: vars })
}

/// `f(v = p/q) = result * p^kmin * q^(-kmax)` with `result` free of the
/// quotient; returns `(result, kmin, kmax)`.
fn substitute(f: &LaurentPoly, v: usize, p: &LaurentPoly, q: &LaurentPoly) -> (LaurentPoly, i32, i32) {
    if !f.involves(v) {
        return (f.clone(), 0, 0);
    }
    let coeffs = f.coefficients_in(v);
    let kmin = *coeffs.keys().next().unwrap();
    let kmax = *coeffs.keys().next_back().unwrap();
    let mut out = LaurentPoly::zero(f.vars());
    for (k, c) in coeffs {
        let term = &(&c * &p.pow((k - kmin) as u32)) * &q.pow((kmax - k) as u32);
        out = &out + &term;
    }
    (out, kmin, kmax)
}
