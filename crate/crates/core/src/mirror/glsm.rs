use super::{LGModel, MirrorError, Relation};
use crate::laurent::LaurentPoly;
use crate::C64;

/// Charges of a GLSM: `q[i][a]` for coordinate `i` and torus factor `a`,
/// `d[alpha][a]` for section `alpha`, and the Kahler parameters `t[a]`.
#[derive(Clone, Debug, PartialEq)]
pub struct GlsmData {
    pub q: Vec<Vec<i32>>,
    pub d: Vec<Vec<i32>>,
    pub t: Vec<C64>,
}

impl GlsmData {
    pub fn new(q: Vec<Vec<i32>>, d: Vec<Vec<i32>>, t: Vec<C64>) -> Result<Self, MirrorError> {
        let k = t.len();
        if k == 0 {
            return Err(MirrorError::InvalidGlsm("no torus factors".into()));
        }
        if q.is_empty() {
            return Err(MirrorError::InvalidGlsm("no coordinates".into()));
        }
        for (name, rows) in [("Q", &q), ("d", &d)] {
            if let Some(bad) = rows.iter().position(|r| r.len() != k) {
                return Err(MirrorError::InvalidGlsm(format!("{name} row {bad} has wrong length (want {k})")));
            }
        }
        for a in 0..k {
            if q.iter().all(|r| r[a] == 0) {
                return Err(MirrorError::InvalidGlsm(format!("column {a} of Q is zero")));
            }
        }
        Ok(GlsmData { q, d, t })
    }

    /// From a weight table with one row per torus factor: coordinate weights
    /// followed by the weights of the sections. Sections carry the opposite
    /// sign to their degree, so a weight `-3` becomes `d = 3`.
    pub fn from_weight_table(
        coordinates: &[Vec<i32>],
        sections: &[Vec<i32>],
        t: Vec<C64>,
    ) -> Result<Self, MirrorError> {
        let k = coordinates.len();
        if sections.len() != k {
            return Err(MirrorError::InvalidGlsm("coordinate and section tables differ in rows".into()));
        }
        let n = coordinates.first().map_or(0, |r| r.len());
        let m = sections.first().map_or(0, |r| r.len());
        let q = (0..n).map(|i| coordinates.iter().map(|row| row[i]).collect()).collect();
        let d = (0..m).map(|j| sections.iter().map(|row| -row[j]).collect()).collect();
        GlsmData::new(q, d, t)
    }

    /// `x1..xN` followed by `u1..um`.
    pub fn variables(&self) -> Vec<String> {
        let xs = (1..=self.q.len()).map(|i| format!("x{i}"));
        let us = (1..=self.d.len()).map(|j| format!("u{j}"));
        xs.chain(us).collect()
    }

    /// The relations with potential `x1 + ... + xN + u1 + ... + um`. Linear
    /// constraints are model-specific and are not produced here.
    pub fn skeleton_model(&self) -> LGModel {
        let vars = self.variables();
        let mut potential = LaurentPoly::zero(&vars);
        for v in &vars {
            potential = &potential + &LaurentPoly::var(&vars, v).expect("own variable");
        }
        LGModel {
            affine: Vec::new(),
            parameters: Default::default(),
            relations: monomial_relations_from_glsm(self),
            potential,
            eliminate: Vec::new(),
            variables: vars,
        }
    }
}

/// `prod_i x_i^{Q_ia} = exp(-t_a) prod_alpha u_alpha^{d_alpha a}`, one per `a`.
pub fn monomial_relations_from_glsm(g: &GlsmData) -> Vec<Relation> {
    let vars = g.variables();
    let n = g.q.len();
    (0..g.t.len())
        .map(|a| {
            let mut lhs = vec![0; vars.len()];
            let mut rhs = vec![0; vars.len()];
            for i in 0..n {
                lhs[i] = g.q[i][a];
            }
            for (alpha, row) in g.d.iter().enumerate() {
                rhs[n + alpha] = row[a];
            }
            Relation::new(
                LaurentPoly::monomial(&vars, lhs, C64::new(1.0, 0.0)),
                LaurentPoly::monomial(&vars, rhs, (-g.t[a]).exp()),
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exponents(p: &LaurentPoly) -> Vec<i32> {
        p.as_single_term().unwrap().0.to_vec()
    }

    #[test]
    fn genus_two_table() {
        let t = vec![C64::new(0.7, 0.0), C64::new(1.3, 0.0)];
        let g = GlsmData::from_weight_table(&[vec![1, 1, 0, 0], vec![0, 0, 1, 1]], &[vec![-3], vec![-2]], t.clone())
            .unwrap();
        let rels = monomial_relations_from_glsm(&g);
        assert_eq!(exponents(&rels[0].lhs), vec![1, 1, 0, 0, 0]);
        assert_eq!(exponents(&rels[0].rhs), vec![0, 0, 0, 0, 3]);
        assert_eq!(exponents(&rels[1].lhs), vec![0, 0, 1, 1, 0]);
        assert_eq!(exponents(&rels[1].rhs), vec![0, 0, 0, 0, 2]);
        let a1 = rels[0].rhs.as_single_term().unwrap().1;
        assert!((a1 - (-t[0]).exp()).norm() < 1e-15);
    }

    #[test]
    fn exponent_matrix_matches_charges() {
        let q = vec![vec![1, 0], vec![2, -1], vec![0, 3]];
        let d = vec![vec![4, 1]];
        let g = GlsmData::new(q.clone(), d.clone(), vec![C64::new(0.0, 0.0); 2]).unwrap();
        for (a, r) in monomial_relations_from_glsm(&g).iter().enumerate() {
            let l = exponents(&r.lhs);
            let rr = exponents(&r.rhs);
            for i in 0..3 {
                assert_eq!(l[i], q[i][a]);
            }
            assert_eq!(rr[3], d[0][a]);
        }
    }

    #[test]
    fn one_variable() {
        let t0 = C64::new(0.25, 0.5);
        let g = GlsmData::new(vec![vec![1]], vec![], vec![t0]).unwrap();
        let rels = monomial_relations_from_glsm(&g);
        assert_eq!(rels.len(), 1);
        assert_eq!(rels[0].lhs.to_string(), "x1");
        assert!((rels[0].rhs.as_constant().unwrap() - (-t0).exp()).norm() < 1e-15);
    }

    #[test]
    fn rejects_zero_column() {
        let err = GlsmData::new(vec![vec![1, 0]], vec![], vec![C64::new(0.0, 0.0); 2]).unwrap_err();
        assert!(matches!(err, MirrorError::InvalidGlsm(_)));
    }
}
