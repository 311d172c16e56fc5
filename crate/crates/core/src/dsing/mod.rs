//! Hom ranks in the category of singularities of a fiber made of three
//! rational surfaces `S1, S2, S3` glued along rational curves
//! `q1 = S1∩S3`, `q2 = S2∩S3`, `q3 = S1∩S2`.
//!
//! On `S_i` the anticanonical cycle `C_i` is the union of the two
//! intersection curves lying on `S_i`, which meet in two nodes. Sheaves are
//! line bundles on one component, described by their degrees on its two
//! intersection curves. Everything is computed with exact rationals.

mod linear;

use std::collections::BTreeMap;
use std::fmt;

use num::{BigRational, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::su2::{surface_loop_intersections, Generator};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DsingError {
    #[error("gluing scalars must be nonzero")]
    ZeroGluing,
    #[error("configuration mismatch: {0}")]
    ConfigMismatch(String),
    #[error("unknown sheaf preset `{0}`")]
    UnknownPreset(String),
}

/// `(h0, h1)` of `O(d)` on the projective line.
pub fn p1_cohomology(d: i64) -> (u64, u64) {
    ((d + 1).max(0) as u64, (-d - 1).max(0) as u64)
}

/// `(h0, h1)` of a line bundle of bidegree `(d1, d2)` on a cycle of two
/// rational curves. In an affine coordinate on each component the first
/// node sits at `0` on both, the second at `g1` on the first component and
/// at `g2` on the second.
pub fn cycle_cohomology(bidegree: (i64, i64), gluing: (&BigRational, &BigRational)) -> Result<(u64, u64), DsingError> {
    if gluing.0.is_zero() || gluing.1.is_zero() {
        return Err(DsingError::ZeroGluing);
    }
    let (d1, d2) = bidegree;
    let n1 = (d1 + 1).max(0) as usize;
    let n2 = (d2 + 1).max(0) as usize;
    // sections are polynomials of degree <= d on each component; the rows
    // ask that the two values agree at each node
    let mut m = vec![vec![BigRational::zero(); n1 + n2]; 2];
    let powers = |z: &BigRational, n: usize| -> Vec<BigRational> {
        let mut out = Vec::with_capacity(n);
        let mut p = BigRational::from_integer(1.into());
        for _ in 0..n {
            out.push(p.clone());
            p = &p * z;
        }
        out
    };
    let zero = BigRational::zero();
    for (row, (za, zb)) in [(&zero, &zero), (gluing.0, gluing.1)].into_iter().enumerate() {
        for (k, v) in powers(za, n1).into_iter().enumerate() {
            m[row][k] = v;
        }
        for (k, v) in powers(zb, n2).into_iter().enumerate() {
            m[row][n1 + k] = -v;
        }
    }
    let r = linear::rank(m) as u64;
    let h0 = (n1 + n2) as u64 - r;
    let h1 = p1_cohomology(d1).1 + p1_cohomology(d2).1 + 2 - r;
    Ok((h0, h1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Curve {
    /// `S1 ∩ S3`
    Q1,
    /// `S2 ∩ S3`
    Q2,
    /// `S1 ∩ S2`
    Q3,
}

impl Curve {
    pub fn between(i: usize, j: usize) -> Option<Curve> {
        match (i.min(j), i.max(j)) {
            (1, 3) => Some(Curve::Q1),
            (2, 3) => Some(Curve::Q2),
            (1, 2) => Some(Curve::Q3),
            _ => None,
        }
    }

    /// The two curves on component `i`, in the order used for bidegrees
    /// on `C_i`.
    pub fn on_component(i: usize) -> Option<[Curve; 2]> {
        match i {
            1 => Some([Curve::Q3, Curve::Q1]),
            2 => Some([Curve::Q3, Curve::Q2]),
            3 => Some([Curve::Q1, Curve::Q2]),
            _ => None,
        }
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Curve::Q1 => "q1",
            Curve::Q2 => "q2",
            Curve::Q3 => "q3",
        };
        f.write_str(s)
    }
}

/// Gluing data at the two nodes of each `C_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct NcConfig {
    pub gluing: [(BigRational, BigRational); 3],
}

impl NcConfig {
    pub fn new(gluing: [(BigRational, BigRational); 3]) -> Result<Self, DsingError> {
        if gluing.iter().any(|(a, b)| a.is_zero() || b.is_zero()) {
            return Err(DsingError::ZeroGluing);
        }
        Ok(NcConfig { gluing })
    }

    pub fn standard() -> Self {
        let q = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        NcConfig { gluing: [(q(2, 3), q(5, 7)), (q(-3, 4), q(7, 11)), (q(9, 5), q(-4, 13))] }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SheafOnNc {
    pub name: String,
    /// Component index in `1..=3`.
    pub component: usize,
    pub deg_on_q: BTreeMap<Curve, i64>,
}

impl SheafOnNc {
    pub fn new(name: &str, component: usize, deg_on_q: BTreeMap<Curve, i64>) -> Result<Self, DsingError> {
        let curves = Curve::on_component(component)
            .ok_or_else(|| DsingError::ConfigMismatch(format!("component {component} is not 1, 2 or 3")))?;
        if deg_on_q.len() != 2 || !curves.iter().all(|c| deg_on_q.contains_key(c)) {
            return Err(DsingError::ConfigMismatch(format!(
                "a sheaf on S{component} needs degrees on exactly {} and {}",
                curves[0], curves[1]
            )));
        }
        Ok(SheafOnNc { name: name.to_string(), component, deg_on_q })
    }

    /// `O_{S_i}` twisted to have the given degrees on the curves of `S_i`.
    pub fn with_degrees(component: usize, degrees: [i64; 2]) -> Result<Self, DsingError> {
        let curves = Curve::on_component(component)
            .ok_or_else(|| DsingError::ConfigMismatch(format!("component {component} is not 1, 2 or 3")))?;
        let name = format!("O_S{component}({},{})", degrees[0], degrees[1]);
        Self::new(&name, component, curves.into_iter().zip(degrees).collect())
    }

    /// `O_S1`, `O_S2`, `O_S3`, and `O_S1(E'12)`, `O_S1(E'13)` etc.: a
    /// (-1)-curve `E'_ij` on `S_i` meets `Q_ij` once and the other curve
    /// not at all.
    pub fn preset(name: &str) -> Result<Self, DsingError> {
        let unknown = || DsingError::UnknownPreset(name.to_string());
        let rest = name.strip_prefix("O_S").ok_or_else(unknown)?;
        let mut chars = rest.chars();
        let i = chars.next().and_then(|c| c.to_digit(10)).ok_or_else(unknown)? as usize;
        let curves = Curve::on_component(i).ok_or_else(unknown)?;
        let twist = chars.as_str();
        let mut deg: BTreeMap<Curve, i64> = curves.iter().map(|c| (*c, 0)).collect();
        if !twist.is_empty() {
            let inner = twist.strip_prefix("(E'").and_then(|s| s.strip_suffix(')')).ok_or_else(unknown)?;
            let digits: Vec<usize> = inner.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect::<Option<_>>().ok_or_else(unknown)?;
            if digits.len() != 2 || digits[0] != i {
                return Err(unknown());
            }
            let q = Curve::between(digits[0], digits[1]).ok_or_else(unknown)?;
            *deg.get_mut(&q).ok_or_else(unknown)? = 1;
        }
        Self::new(name, i, deg)
    }

    pub fn degree_on(&self, q: Curve) -> Option<i64> {
        self.deg_on_q.get(&q).copied()
    }

    /// Bidegree of the restriction to `C_i`.
    pub fn deg_on_c(&self) -> (i64, i64) {
        let [a, b] = Curve::on_component(self.component).expect("validated");
        (self.deg_on_q[&a], self.deg_on_q[&b])
    }
}

/// Rank of `Hom(L, M[shift])`; shifts are taken mod 2.
pub fn dsing_hom_rank(config: &NcConfig, l: &SheafOnNc, m: &SheafOnNc, shift: i64) -> Result<u64, DsingError> {
    for s in [l, m] {
        SheafOnNc::new(&s.name, s.component, s.deg_on_q.clone())?;
    }
    let even = shift.rem_euclid(2) == 0;
    if l.component == m.component {
        let (a, b) = (l.deg_on_c(), m.deg_on_c());
        let g = &config.gluing[l.component - 1];
        let (h0, h1) = cycle_cohomology((b.0 - a.0, b.1 - a.1), (&g.0, &g.1))?;
        return Ok(if even { h0 } else { h1 });
    }
    let q = Curve::between(l.component, m.component).expect("distinct components in 1..=3");
    let (li, mj) = (l.degree_on(q).expect("validated"), m.degree_on(q).expect("validated"));
    // the normal bundle of Q_ij in S_j has degree -1
    let (h0, h1) = p1_cohomology(mj - li - 1);
    Ok(if even { h1 } else { h0 })
}

#[derive(Clone, Debug, Serialize)]
pub struct FloerMatch {
    pub objects: Vec<String>,
    pub loops: Vec<Generator>,
    /// `ranks[i][j] = (rank Hom(E_i, E_j), rank Hom(E_i, E_j[1]))`.
    pub ranks: Vec<Vec<(u64, u64)>>,
    pub loop_intersections: Vec<Vec<u32>>,
    pub agrees: bool,
}

/// The four objects of the comparison and the loops they correspond to.
pub const FLOER_OBJECTS: [(&str, Generator); 4] = [
    ("O_S1(E'12)", Generator::A1),
    ("O_S1(E'13)", Generator::A2),
    ("O_S2", Generator::B1),
    ("O_S3", Generator::B2),
];

/// Hom ranks among the four objects against Floer ranks of the standard
/// loops: a circle has `HF(L, L)` of rank one in each degree, and distinct
/// loops have total rank equal to their intersection number.
pub fn floer_match_table(config: &NcConfig) -> Result<FloerMatch, DsingError> {
    let sheaves: Vec<SheafOnNc> = FLOER_OBJECTS.iter().map(|(n, _)| SheafOnNc::preset(n)).collect::<Result<_, _>>()?;
    let loops: Vec<Generator> = FLOER_OBJECTS.iter().map(|(_, g)| *g).collect();
    let n = sheaves.len();
    let mut ranks = vec![vec![(0, 0); n]; n];
    let mut inter = vec![vec![0; n]; n];
    let mut agrees = true;
    for i in 0..n {
        for j in 0..n {
            let r = (dsing_hom_rank(config, &sheaves[i], &sheaves[j], 0)?, dsing_hom_rank(config, &sheaves[i], &sheaves[j], 1)?);
            ranks[i][j] = r;
            let k = surface_loop_intersections(&loops[i].to_string(), &loops[j].to_string()).expect("standard generators");
            inter[i][j] = k;
            agrees &= if i == j { r == (1, 1) } else { r.0 + r.1 == u64::from(k) };
        }
    }
    Ok(FloerMatch {
        objects: sheaves.into_iter().map(|s| s.name).collect(),
        loops,
        ranks,
        loop_intersections: inter,
        agrees,
    })
}
