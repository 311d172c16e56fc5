use rayon::prelude::*;
use serde::Serialize;

use super::braid::{reference_branch_points, track_branch_points, BranchBraid, StepConfig};
use super::transport::{ellipse_around, loop_period, transport_back, winding_number, Curve};
use super::{ArcSpec, CycleError, FiberSpec};
use crate::critical::CriticalPoint;
use crate::C64;

const LOOP_VERTICES: usize = 48;
const INTEGRALITY_TOL: f64 = 1e-3;

#[derive(Clone, Debug, Serialize)]
pub struct VanishingCycle {
    pub label: String,
    pub arc_index: usize,
    /// Branch points (reference indices) joined by the cycle.
    pub matched_pair: (usize, usize),
    /// Path between the matched branch points in the reference fiber.
    pub connecting_arc: Vec<C64>,
    /// Closed curve around `connecting_arc` whose lift is the cycle.
    pub enclosing_loop: Vec<C64>,
    /// Which lift of the loop: `+1` starts on the principal square root.
    pub sheet: i8,
    pub period: C64,
    pub source_critical_value: C64,
    pub critical_point: Vec<C64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuiverMatrix {
    pub size: usize,
    /// Row-major; zero below the diagonal.
    pub entries: Vec<Vec<u32>>,
}

impl QuiverMatrix {
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i][j]
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CycleRun {
    pub lambda0: C64,
    pub reference_points: Vec<C64>,
    pub arcs: Vec<ArcSpec>,
    pub braids: Vec<BranchBraid>,
    pub cycles: Vec<VanishingCycle>,
    /// Periods of a standard basis of the fiber's first homology.
    pub lattice_basis: [C64; 2],
    /// `|Im(conj(a) b)|` for the basis periods `a`, `b`.
    pub covolume: f64,
}

impl CycleRun {
    pub fn intersection(&self, i: usize, j: usize) -> Result<u32, CycleError> {
        intersection_number(&self.cycles[i], &self.cycles[j], self.covolume)
    }

    pub fn quiver(&self) -> Result<QuiverMatrix, CycleError> {
        quiver_matrix(&self.cycles, self.covolume)
    }
}

/// Geometric intersection number of two cycles on the compact genus one
/// fiber: the absolute value of their algebraic intersection, which is
/// `Im(conj(P1) P2)` measured in units of the period lattice covolume.
pub fn intersection_number(a: &VanishingCycle, b: &VanishingCycle, covolume: f64) -> Result<u32, CycleError> {
    let x = (a.period.conj() * b.period).im.abs() / covolume;
    let r = x.round();
    if (x - r).abs() > INTEGRALITY_TOL * r.max(1.0) {
        return Err(CycleError::NonIntegral { value: x });
    }
    Ok(r as u32)
}

pub fn quiver_matrix(cycles: &[VanishingCycle], covolume: f64) -> Result<QuiverMatrix, CycleError> {
    let n = cycles.len();
    let mut entries = vec![vec![0u32; n]; n];
    for i in 0..n {
        entries[i][i] = 1;
        for j in i + 1..n {
            entries[i][j] = intersection_number(&cycles[i], &cycles[j], covolume)?;
        }
    }
    Ok(QuiverMatrix { size: n, entries })
}

/// Straight segments where they clear the other critical values, half
/// circles below the chord otherwise; arcs are returned in clockwise order.
pub fn default_arcs(lambda0: C64, values: &[C64]) -> Vec<ArcSpec> {
    let mut pts = values.to_vec();
    pts.push(lambda0);
    let mut sep = f64::INFINITY;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            sep = sep.min((pts[i] - pts[j]).norm());
        }
    }
    let clearance = 0.1 * sep;
    super::clockwise_order(lambda0, values)
        .into_iter()
        .map(|i| {
            let others: Vec<C64> = values.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, v)| *v).collect();
            let straight = ArcSpec::straight(lambda0, values[i]);
            if straight.check_clearance(&others, clearance).is_ok() {
                straight
            } else {
                ArcSpec::below(lambda0, values[i])
            }
        })
        .collect()
}

/// The reference value and arcs used for the deformed degree-4 del Pezzo
/// mirror: `λ0 = e^4 / 32`, straight to `0` and to the smallest nonzero
/// value, below the real axis to the rest.
pub fn del_pezzo_arcs(e: f64, values: &[C64]) -> (C64, Vec<ArcSpec>) {
    let lambda0 = C64::new(e.powi(4) / 32.0, 0.0);
    (lambda0, default_arcs(lambda0, values))
}

fn same_value(a: C64, b: C64) -> bool {
    (a - b).norm() <= 1e-6 * a.norm().max(b.norm()).max(1e-12)
}

fn lex(a: &[C64], b: &[C64]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        let o = x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im));
        if o.is_ne() {
            return o;
        }
    }
    std::cmp::Ordering::Equal
}

fn lattice_basis(spec: &FiberSpec, lambda0: C64, z: &[C64]) -> Result<([C64; 2], f64), CycleError> {
    let coeffs = spec.branch_coefficients(lambda0);
    let n = z.len();
    let mut best: Option<(f64, Vec<C64>, Vec<C64>)> = None;
    for b in 0..n {
        for a in 0..n {
            for c in a + 1..n {
                if a == b || c == b {
                    continue;
                }
                let rest = |x: usize, y: usize| -> Vec<C64> {
                    (0..n).filter(|&k| k != x && k != y).map(|k| z[k]).collect()
                };
                let (Some(e1), Some(e2)) = (
                    ellipse_around(z[a], z[b], &rest(a, b), 256),
                    ellipse_around(z[b], z[c], &rest(b, c), 256),
                ) else {
                    continue;
                };
                let width = |e: &[C64], p: C64, q: C64| {
                    e.iter().map(|w| (w - p).norm().min((w - q).norm())).fold(f64::INFINITY, f64::min) / (p - q).norm()
                };
                let score = width(&e1, z[a], z[b]).min(width(&e2, z[b], z[c]));
                if best.as_ref().is_none_or(|(s, _, _)| score > *s) {
                    best = Some((score, e1, e2));
                }
            }
        }
    }
    let (_, e1, e2) = best.ok_or_else(|| CycleError::TransportFailed("no basis loops in the reference fiber".into()))?;
    let p1 = loop_period(&e1, &coeffs, z)?;
    let p2 = loop_period(&e2, &coeffs, z)?;
    let covolume = (p1.conj() * p2).im.abs();
    if !(covolume > 0.0) {
        return Err(CycleError::TransportFailed("degenerate period lattice".into()));
    }
    Ok(([p1, p2], covolume))
}

/// Tracks every arc, carries loops around the colliding pairs back to the
/// reference fiber and labels the resulting cycles `L1, L2, ...` in arc
/// order, and within an arc by critical point location.
pub fn vanishing_cycles(
    spec: &FiberSpec,
    lambda0: C64,
    arcs: &[ArcSpec],
    critical: &[CriticalPoint],
    cfg: &StepConfig,
) -> Result<CycleRun, CycleError> {
    let reference = reference_branch_points(spec, lambda0);
    if !(3..=4).contains(&reference.len()) {
        return Err(CycleError::UnsupportedGenus(reference.len()));
    }
    let coeffs = spec.branch_coefficients(lambda0);
    let vars = spec.potential().vars();
    let base = vars.iter().position(|v| v == spec.base_variable()).expect("base variable");
    let cover = vars.iter().position(|v| v == spec.cover_variable()).expect("cover variable");

    let braids: Vec<BranchBraid> = arcs
        .par_iter()
        .map(|arc| {
            if arc.from != lambda0 {
                return Err(CycleError::InvalidSpec(format!("arc starts at {} instead of {lambda0}", arc.from)));
            }
            track_branch_points(spec, arc, cfg)
        })
        .collect::<Result<_, _>>()?;

    let per_arc: Vec<Vec<VanishingCycle>> = arcs
        .par_iter()
        .zip(&braids)
        .enumerate()
        .map(|(ai, (arc, braid))| {
            let mut targets: Vec<&CriticalPoint> = critical.iter().filter(|p| same_value(p.value, arc.to)).collect();
            if targets.is_empty() {
                return Err(CycleError::NoCriticalPoint { arc: ai, value: arc.to });
            }
            let key = |p: &CriticalPoint| vec![p.location[base], p.location[cover]];
            targets.sort_by(|a, b| lex(&key(a), &key(b)));
            let cols = &braid.collisions;
            if cols.is_empty() {
                return Err(CycleError::Unmatched { arc: ai, reason: "no branch points collide".into() });
            }
            let owner: Vec<usize> = targets
                .iter()
                .map(|p| {
                    let t = p.location[base];
                    (0..cols.len())
                        .min_by(|&i, &j| (cols[i].position - t).norm().total_cmp(&(cols[j].position - t).norm()))
                        .expect("non-empty")
                })
                .collect();
            for (ci, _) in cols.iter().enumerate() {
                let k = owner.iter().filter(|&&o| o == ci).count();
                if k == 0 || k > 2 {
                    return Err(CycleError::Unmatched {
                        arc: ai,
                        reason: format!("collision {ci} accounts for {k} critical points"),
                    });
                }
            }
            let end = braid.end();
            let mut curves = Vec::new();
            for c in cols {
                let (a, b) = c.pair;
                let others: Vec<C64> = (0..end.points.len())
                    .filter(|&k| k != a && k != b)
                    .map(|k| end.points[k])
                    .collect();
                let room = others.iter().map(|w| (w - c.position).norm()).fold(f64::INFINITY, f64::min);
                let radius = c.gap.max(1e-300).min(0.3 * room);
                curves.push(Curve::circle(c.position, radius, LOOP_VERTICES));
                curves.push(Curve::segment(end.points[a], end.points[b], (a, b)));
            }
            transport_back(braid, &mut curves)?;
            let start = &braid.start().points;
            let mut out = Vec::new();
            let mut seen = vec![0usize; cols.len()];
            for (p, &ci) in targets.iter().zip(&owner) {
                let (a, b) = cols[ci].pair;
                let lp = &curves[2 * ci];
                for (k, w) in start.iter().enumerate() {
                    let want = if k == a || k == b { 1 } else { 0 };
                    if winding_number(&lp.points, *w).abs() != want {
                        return Err(CycleError::TransportFailed(format!(
                            "loop for arc {ai} does not enclose exactly its pair"
                        )));
                    }
                }
                let sheet: i8 = if seen[ci] == 0 { 1 } else { -1 };
                seen[ci] += 1;
                let period = loop_period(&lp.points, &coeffs, start)? * f64::from(sheet);
                out.push(VanishingCycle {
                    label: String::new(),
                    arc_index: ai,
                    matched_pair: (a, b),
                    connecting_arc: curves[2 * ci + 1].points.clone(),
                    enclosing_loop: lp.points.clone(),
                    sheet,
                    period,
                    source_critical_value: p.value,
                    critical_point: p.location.clone(),
                });
            }
            Ok(out)
        })
        .collect::<Result<_, _>>()?;

    let mut cycles: Vec<VanishingCycle> = per_arc.into_iter().flatten().collect();
    for (i, c) in cycles.iter_mut().enumerate() {
        c.label = format!("L{}", i + 1);
    }
    let (lattice_basis, covolume) = lattice_basis(spec, lambda0, &reference)?;
    Ok(CycleRun { lambda0, reference_points: reference, arcs: arcs.to_vec(), braids, cycles, lattice_basis, covolume })
}
