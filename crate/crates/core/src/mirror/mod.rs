//! Affine Landau-Ginzburg models: GLSM relations, built-in presets, the
//! model-file format, and substitution elimination down to a rational
//! potential on the free variables.

mod eliminate;
mod file;
mod glsm;
mod presets;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::laurent::{LaurentError, LaurentPoly};
use crate::C64;

pub use eliminate::{eliminate, Elimination, SolvedVariable};
pub use file::{parse_model_file, write_model_file};
pub use glsm::{monomial_relations_from_glsm, GlsmData};
pub use presets::{builtin_model, PRESETS};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MirrorError {
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("preset `{preset}` needs parameter `{name}`")]
    MissingParameter { preset: String, name: String },
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: String, reason: String },
    #[error("cannot isolate `{var}` from relation {relation}")]
    NonSolvablePick { var: String, relation: usize },
    #[error("elimination order reuses {0}")]
    CyclicOrder(String),
    #[error("relation index {0} out of range")]
    UnknownRelation(usize),
    #[error("relations {0:?} were not used by the elimination order")]
    IncompleteElimination(Vec<usize>),
    #[error("invalid GLSM data: {0}")]
    InvalidGlsm(String),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

/// `lhs = rhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct Relation {
    pub lhs: LaurentPoly,
    pub rhs: LaurentPoly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelationKind {
    /// Both sides single terms.
    Monomial,
    /// Both sides affine-linear.
    Linear,
    Other,
}

impl Relation {
    pub fn new(lhs: LaurentPoly, rhs: LaurentPoly) -> Self {
        Relation { lhs, rhs }
    }

    /// `lhs - rhs`.
    pub fn difference(&self) -> LaurentPoly {
        &self.lhs - &self.rhs
    }

    pub fn kind(&self) -> RelationKind {
        let single = |p: &LaurentPoly| p.len() <= 1;
        let linear = |p: &LaurentPoly| {
            p.terms().all(|(m, _)| m.0.iter().all(|&e| e == 0 || e == 1) && m.degree() <= 1)
        };
        if single(&self.lhs) && single(&self.rhs) {
            RelationKind::Monomial
        } else if linear(&self.lhs) && linear(&self.rhs) {
            RelationKind::Linear
        } else {
            RelationKind::Other
        }
    }
}

/// Solve relation `relation` for `var`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pick {
    pub var: String,
    pub relation: usize,
}

impl Pick {
    pub fn new(var: &str, relation: usize) -> Self {
        Pick { var: var.to_string(), relation }
    }
}

/// An affine LG model. Variables not listed in `affine` live on the torus
/// (nonzero); affine ones may vanish.
#[derive(Clone, Debug, PartialEq)]
pub struct LGModel {
    pub variables: Vec<String>,
    pub affine: Vec<String>,
    pub parameters: BTreeMap<String, C64>,
    pub relations: Vec<Relation>,
    pub potential: LaurentPoly,
    pub eliminate: Vec<Pick>,
}

impl LGModel {
    /// Builds a model from expression strings, substituting `parameters`.
    pub fn from_strings(
        variables: &[&str],
        affine: &[&str],
        parameters: BTreeMap<String, C64>,
        relations: &[&str],
        potential: &str,
        picks: &[(&str, usize)],
    ) -> Result<Self, MirrorError> {
        let vars: Vec<String> = variables.iter().map(|s| s.to_string()).collect();
        let parse = |s: &str| {
            LaurentPoly::parse(s, &vars, &parameters).map_err(|e| MirrorError::Parse {
                line: 1,
                column: e.column,
                message: format!("{} in `{s}`", e.message),
            })
        };
        let mut rels = Vec::new();
        for r in relations {
            let (lhs, rhs) = split_relation(r).ok_or_else(|| MirrorError::Parse {
                line: 1,
                column: 1,
                message: format!("relation `{r}` needs exactly one `=`"),
            })?;
            rels.push(Relation::new(parse(lhs)?, parse(rhs)?));
        }
        let model = LGModel {
            potential: parse(potential)?,
            variables: vars.clone(),
            affine: affine.iter().map(|s| s.to_string()).collect(),
            parameters: parameters.clone(),
            relations: rels,
            eliminate: picks.iter().map(|(v, r)| Pick::new(v, *r)).collect(),
        };
        model.validate()?;
        Ok(model)
    }

    pub fn validate(&self) -> Result<(), MirrorError> {
        let mut seen = std::collections::BTreeSet::new();
        for v in &self.variables {
            if !seen.insert(v) {
                return Err(MirrorError::InvalidModel(format!("duplicate variable `{v}`")));
            }
        }
        for a in &self.affine {
            if !self.variables.contains(a) {
                return Err(MirrorError::InvalidModel(format!("affine variable `{a}` not declared")));
            }
        }
        let polys = self
            .relations
            .iter()
            .flat_map(|r| [&r.lhs, &r.rhs])
            .chain(std::iter::once(&self.potential));
        for p in polys {
            if p.vars() != self.variables.as_slice() {
                return Err(MirrorError::InvalidModel("polynomial over a different variable list".into()));
            }
        }
        if self.relations.len() >= self.variables.len() {
            return Err(MirrorError::InvalidModel(format!(
                "{} relations for {} variables",
                self.relations.len(),
                self.variables.len()
            )));
        }
        for p in &self.eliminate {
            if !self.variables.contains(&p.var) {
                return Err(MirrorError::Laurent(LaurentError::UnknownVariable(p.var.clone())));
            }
            if p.relation >= self.relations.len() {
                return Err(MirrorError::UnknownRelation(p.relation));
            }
        }
        Ok(())
    }

    pub fn is_affine(&self, var: &str) -> bool {
        self.affine.iter().any(|a| a == var)
    }

    pub fn monomial_relations(&self) -> Vec<&Relation> {
        self.relations.iter().filter(|r| r.kind() == RelationKind::Monomial).collect()
    }

    pub fn linear_relations(&self) -> Vec<&Relation> {
        self.relations.iter().filter(|r| r.kind() == RelationKind::Linear).collect()
    }

    /// Eliminates with the model's own pick list.
    pub fn eliminate(&self) -> Result<Elimination, MirrorError> {
        eliminate(self, &self.eliminate)
    }
}

pub(crate) fn split_relation(s: &str) -> Option<(&str, &str)> {
    let mut parts = s.split('=');
    let lhs = parts.next()?;
    let rhs = parts.next()?;
    if parts.next().is_some() {
        return None;
    }
    Some((lhs, rhs))
}
