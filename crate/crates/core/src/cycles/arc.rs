use serde::Serialize;

use super::CycleError;
use crate::C64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ArcKind {
    Straight,
    /// Half circle on the chord `from -> to`, bulging below it.
    ArcBelowReal,
    Polyline,
}

/// A path in the `λ`-plane from the reference value to a critical value.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ArcSpec {
    pub kind: ArcKind,
    pub from: C64,
    pub to: C64,
    pub waypoints: Vec<C64>,
}

impl ArcSpec {
    pub fn straight(from: C64, to: C64) -> Self {
        ArcSpec { kind: ArcKind::Straight, from, to, waypoints: Vec::new() }
    }

    pub fn below(from: C64, to: C64) -> Self {
        ArcSpec { kind: ArcKind::ArcBelowReal, from, to, waypoints: Vec::new() }
    }

    pub fn polyline(from: C64, waypoints: Vec<C64>, to: C64) -> Self {
        ArcSpec { kind: ArcKind::Polyline, from, to, waypoints }
    }

    fn vertices(&self) -> Vec<C64> {
        let mut v = vec![self.from];
        v.extend(&self.waypoints);
        v.push(self.to);
        v
    }

    /// Position at parameter `s` in `[0, 1]`.
    pub fn point(&self, s: f64) -> C64 {
        match self.kind {
            ArcKind::Straight => self.from + (self.to - self.from) * s,
            ArcKind::ArcBelowReal => {
                let m = (self.from + self.to) / 2.0;
                let r = self.from - m;
                let sign = if (r * C64::new(0.0, 1.0)).im < 0.0 { 1.0 } else { -1.0 };
                m + r * C64::from_polar(1.0, sign * std::f64::consts::PI * s)
            }
            ArcKind::Polyline => {
                let v = self.vertices();
                let lens: Vec<f64> = v.windows(2).map(|w| (w[1] - w[0]).norm()).collect();
                let total: f64 = lens.iter().sum();
                if total == 0.0 {
                    return self.from;
                }
                let mut target = s.clamp(0.0, 1.0) * total;
                for (i, &l) in lens.iter().enumerate() {
                    if target <= l || i + 1 == lens.len() {
                        let f = if l > 0.0 { (target / l).min(1.0) } else { 0.0 };
                        return v[i] + (v[i + 1] - v[i]) * f;
                    }
                    target -= l;
                }
                self.to
            }
        }
    }

    /// Start of the final smooth piece, where distance to `to` decreases
    /// monotonically.
    fn last_piece_start(&self) -> f64 {
        if self.kind != ArcKind::Polyline || self.waypoints.is_empty() {
            return 0.0;
        }
        let v = self.vertices();
        let lens: Vec<f64> = v.windows(2).map(|w| (w[1] - w[0]).norm()).collect();
        let total: f64 = lens.iter().sum();
        1.0 - lens.last().copied().unwrap_or(0.0) / total
    }

    /// Largest parameter whose point is still `distance` away from `to`.
    pub fn stop_parameter(&self, distance: f64) -> f64 {
        if (self.to - self.from).norm() == 0.0 {
            return 1.0;
        }
        let (mut lo, mut hi) = (self.last_piece_start(), 1.0);
        if (self.point(lo) - self.to).norm() <= distance {
            return lo;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if (self.point(mid) - self.to).norm() > distance {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }

    /// Smallest distance from the arc to any of `values`.
    pub fn clearance(&self, values: &[C64]) -> f64 {
        values.iter().map(|v| self.distance_to(*v)).fold(f64::INFINITY, f64::min)
    }

    fn distance_to(&self, v: C64) -> f64 {
        match self.kind {
            ArcKind::Straight => segment_distance(v, self.from, self.to),
            ArcKind::Polyline => {
                self.vertices().windows(2).map(|w| segment_distance(v, w[0], w[1])).fold(f64::INFINITY, f64::min)
            }
            ArcKind::ArcBelowReal => {
                let m = (self.from + self.to) / 2.0;
                let r = (self.from - m).norm();
                let ends = (v - self.from).norm().min((v - self.to).norm());
                if r == 0.0 {
                    return ends;
                }
                // on the arc iff the direction from the centre lies on the
                // same side of the chord as the midpoint of the arc
                let mid = self.point(0.5) - m;
                let d = v - m;
                if d.norm() > 0.0 && (d * mid.conj()).re > 0.0 {
                    (d.norm() - r).abs().min(ends)
                } else {
                    ends
                }
            }
        }
    }

    /// Rejects arcs passing within `min_clearance` of another critical value.
    pub fn check_clearance(&self, other_values: &[C64], min_clearance: f64) -> Result<(), CycleError> {
        for v in other_values {
            let d = self.clearance(std::slice::from_ref(v));
            if d <= min_clearance {
                return Err(CycleError::ArcClearance { value: *v, distance: d });
            }
        }
        if (self.to - self.from).norm() == 0.0 && !self.waypoints.is_empty() {
            return Err(CycleError::InvalidSpec("closed polyline arc".into()));
        }
        Ok(())
    }
}

fn segment_distance(v: C64, a: C64, b: C64) -> f64 {
    let ab = b - a;
    let l2 = ab.norm_sqr();
    if l2 == 0.0 {
        return (v - a).norm();
    }
    let t = ((v - a) * ab.conj()).re / l2;
    (v - (a + ab * t.clamp(0.0, 1.0))).norm()
}

/// Clockwise order around `lambda0`: decreasing `arg(v - λ0)` starting from
/// `π`, ties broken by `|v|`.
pub fn clockwise_order(lambda0: C64, values: &[C64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    // Arguments are compared on a 1e-9 grid so that round-off in values
    // that are real up to noise does not reorder them; -π counts as π.
    let key = |v: C64| {
        let a = ((v - lambda0).arg() * 1e9).round() as i64;
        let pi = (std::f64::consts::PI * 1e9).round() as i64;
        if a <= -pi {
            pi
        } else {
            a
        }
    };
    idx.sort_by(|&a, &b| key(values[b]).cmp(&key(values[a])).then(values[a].norm().total_cmp(&values[b].norm())));
    idx
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64, y: f64) -> C64 {
        C64::new(x, y)
    }

    #[test]
    fn half_circle_goes_below() {
        let a = ArcSpec::below(c(0.0, 0.0), c(2.0, 0.0));
        assert!((a.point(0.0) - c(0.0, 0.0)).norm() < 1e-15);
        assert!((a.point(1.0) - c(2.0, 0.0)).norm() < 1e-15);
        assert!((a.point(0.5) - c(1.0, -1.0)).norm() < 1e-15);
        let b = ArcSpec::below(c(2.0, 0.0), c(0.0, 0.0));
        assert!(b.point(0.5).im < 0.0);
    }

    #[test]
    fn stop_parameter_on_straight_line() {
        let a = ArcSpec::straight(c(1.0, 0.0), c(0.0, 0.0));
        let s = a.stop_parameter(1e-4);
        assert!((s - (1.0 - 1e-4)).abs() < 1e-12);
        assert_eq!(ArcSpec::straight(c(1.0, 0.0), c(1.0, 0.0)).stop_parameter(0.1), 1.0);
    }

    #[test]
    fn polyline_passes_waypoints() {
        let a = ArcSpec::polyline(c(0.0, 0.0), vec![c(1.0, 0.0)], c(1.0, 1.0));
        assert!((a.point(0.5) - c(1.0, 0.0)).norm() < 1e-15);
        assert!((a.point(0.75) - c(1.0, 0.5)).norm() < 1e-15);
    }

    #[test]
    fn clockwise_from_the_left() {
        let l0 = c(1.0, 0.0);
        let values = [c(5.0, 0.0), c(0.0, 0.0), c(2.0, 0.0), c(1.0, -3.0)];
        assert_eq!(clockwise_order(l0, &values), vec![1, 2, 0, 3]);
    }
}
