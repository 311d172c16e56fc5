//! Holonomy equations `[A1,B1][A2,B2] = ±I` in SU(2) with some generators
//! pinned, solved by multistart Newton and counted modulo conjugation.

mod quaternion;
mod solve;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use quaternion::{commutator, Su2};
pub use solve::{solve_relation, Su2Search};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Su2Error {
    #[error("unknown generator `{0}`; expected one of a1, b1, a2, b2")]
    UnknownGenerator(String),
    #[error("invalid holonomy problem: {0}")]
    InvalidProblem(String),
    #[error("solution clusters are not separable: signatures {distance:e} apart")]
    BudgetExhaustedAmbiguous { distance: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Generator {
    A1,
    B1,
    A2,
    B2,
}

impl Generator {
    pub const ALL: [Generator; 4] = [Generator::A1, Generator::B1, Generator::A2, Generator::B2];

    /// Position in a tuple `(A1, B1, A2, B2)`.
    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Generator::A1 => "a1",
            Generator::B1 => "b1",
            Generator::A2 => "a2",
            Generator::B2 => "b2",
        };
        f.write_str(s)
    }
}

impl FromStr for Generator {
    type Err = Su2Error;

    fn from_str(s: &str) -> Result<Self, Su2Error> {
        match s.trim().to_ascii_lowercase().as_str() {
            "a1" => Ok(Generator::A1),
            "b1" => Ok(Generator::B1),
            "a2" => Ok(Generator::A2),
            "b2" => Ok(Generator::B2),
            _ => Err(Su2Error::UnknownGenerator(s.to_string())),
        }
    }
}

/// `(A1, B1, A2, B2)`.
pub type Tuple = [Su2; 4];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HolonomyProblem {
    pub fixed: BTreeMap<Generator, Su2>,
    /// `I` or `-I`.
    pub target: Su2,
}

impl HolonomyProblem {
    pub fn new(fixed: BTreeMap<Generator, Su2>, target: Su2) -> Result<Self, Su2Error> {
        let central = target.0[1..].iter().all(|x| x.abs() < 1e-12) && (target.0[0].abs() - 1.0).abs() < 1e-12;
        if !central {
            return Err(Su2Error::InvalidProblem("target must be I or -I".into()));
        }
        for (g, x) in &fixed {
            if x.norm_defect() > 1e-10 {
                return Err(Su2Error::InvalidProblem(format!("{g} is not a unit quaternion")));
            }
        }
        Ok(HolonomyProblem { fixed, target })
    }

    /// Pins each listed generator to the identity.
    pub fn identity_on(generators: &[Generator], target: Su2) -> Result<Self, Su2Error> {
        Self::new(generators.iter().map(|g| (*g, Su2::IDENTITY)).collect(), target)
    }

    pub fn free(&self) -> Vec<Generator> {
        Generator::ALL.into_iter().filter(|g| !self.fixed.contains_key(g)).collect()
    }

    /// The same problem with every fixed element conjugated by `g`.
    pub fn conjugated(&self, g: &Su2) -> Self {
        let fixed = self.fixed.iter().map(|(k, x)| (*k, x.conjugate_by(g))).collect();
        HolonomyProblem { fixed, target: self.target }
    }

    pub fn residual(&self, t: &Tuple) -> f64 {
        (commutator(t[0], t[1]) * commutator(t[2], t[3])).distance(&self.target)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolutionStatus {
    Empty,
    Finite,
    PositiveDimensional,
}

#[derive(Clone, Debug, Serialize)]
pub struct SolutionSet {
    pub status: SolutionStatus,
    /// One tuple per cluster, ordered by signature.
    pub representatives: Vec<Tuple>,
    pub invariant_signatures: Vec<[f64; 8]>,
    pub count: Option<usize>,
    /// Dimension of the solution set modulo conjugation near each
    /// representative.
    pub local_dimensions: Vec<usize>,
    pub starts: usize,
    pub converged: usize,
}

/// `(tr A1, tr B1, tr A2, tr B2, tr A2B2, tr A1A2, tr B1B2, tr A1B2)`.
pub fn conjugation_invariants(t: &Tuple) -> [f64; 8] {
    let [a1, b1, a2, b2] = *t;
    [
        a1.trace(),
        b1.trace(),
        a2.trace(),
        b2.trace(),
        (a2 * b2).trace(),
        (a1 * a2).trace(),
        (b1 * b2).trace(),
        (a1 * b2).trace(),
    ]
}

/// Geometric intersection numbers of the standard generators on a genus two
/// surface, with self-intersections taken as zero.
pub fn surface_loop_intersections(g1: &str, g2: &str) -> Result<u32, Su2Error> {
    let (x, y): (Generator, Generator) = (g1.parse()?, g2.parse()?);
    use Generator::*;
    Ok(match (x, y) {
        (A1, B1) | (B1, A1) | (A2, B2) | (B2, A2) => 1,
        _ => 0,
    })
}
