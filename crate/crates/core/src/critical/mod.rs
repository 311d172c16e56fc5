//! Isolated stationary points of rational potentials, Hessian
//! classification, and clustering of critical values.

mod completeness;
mod hessian;
mod homotopy;
mod solver;

use serde::Serialize;
use thiserror::Error;

use crate::laurent::LaurentError;
use crate::C64;

pub use completeness::{mixed_volume_2d, resultant_oracle, Completeness};
pub use hessian::{classify_hessian, hessian};
pub use solver::{stationary_points, SearchConfig, StationaryReport};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CriticalError {
    #[error("{0} variables; at most 4 are supported")]
    DimensionTooLarge(usize),
    #[error("potential has no variables")]
    NoVariables,
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Nondegenerate,
    Degenerate,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriticalPoint {
    pub location: Vec<C64>,
    pub value: C64,
    pub hessian_det: C64,
    pub classification: Classification,
    /// Largest modulus of a first partial at the point.
    pub residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriticalValueCluster {
    pub value: C64,
    pub members: Vec<usize>,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ValueClusters {
    pub clusters: Vec<CriticalValueCluster>,
    /// Pairs of cluster indices closer than ten times the tolerance.
    pub ambiguous: Vec<(usize, usize)>,
}

/// `|a - b| <= rel * max(|a|, |b|) + abs`.
pub fn close(a: C64, b: C64, rel: f64, abs: f64) -> bool {
    (a - b).norm() <= rel * a.norm().max(b.norm()) + abs
}

/// Orders by modulus, then argument in `(-pi, pi]`.
pub fn value_order(a: &C64, b: &C64) -> std::cmp::Ordering {
    a.norm().total_cmp(&b.norm()).then(a.arg().total_cmp(&b.arg()))
}

/// Groups points whose values are linked by chains of `close` pairs.
pub fn critical_values(points: &[CriticalPoint], rel_tol: f64, abs_tol: f64) -> ValueClusters {
    let values: Vec<C64> = points.iter().map(|p| p.value).collect();
    let groups = link_groups(&values, |a, b| close(a, b, rel_tol, abs_tol));
    let mut clusters: Vec<CriticalValueCluster> = groups
        .into_iter()
        .map(|members| {
            let sum: C64 = members.iter().map(|&i| values[i]).sum();
            CriticalValueCluster { value: sum / members.len() as f64, multiplicity: members.len(), members }
        })
        .collect();
    clusters.sort_by(|a, b| value_order(&a.value, &b.value));
    let mut ambiguous = Vec::new();
    for i in 0..clusters.len() {
        for j in i + 1..clusters.len() {
            let near = clusters[i].members.iter().any(|&a| {
                clusters[j].members.iter().any(|&b| close(values[a], values[b], 10.0 * rel_tol, 10.0 * abs_tol))
            });
            if near {
                ambiguous.push((i, j));
            }
        }
    }
    ValueClusters { clusters, ambiguous }
}

/// Connected components of the "related" graph, each sorted, in order of
/// first member.
pub(crate) fn link_groups<T: Copy>(items: &[T], related: impl Fn(T, T) -> bool) -> Vec<Vec<usize>> {
    let n = items.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        let mut c = i;
        while p[c] != r {
            let next = p[c];
            p[c] = r;
            c = next;
        }
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if related(items[i], items[j]) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[r]].push(i);
    }
    groups
}
