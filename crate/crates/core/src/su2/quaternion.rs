use std::ops::Mul;

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::C64;

/// A unit quaternion `q0 + q1 i + q2 j + q3 k`, identified with the SU(2)
/// matrix `[[q0 + i q1, q2 + i q3], [-q2 + i q3, q0 - i q1]]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Su2(pub [f64; 4]);

impl Su2 {
    pub const IDENTITY: Su2 = Su2([1.0, 0.0, 0.0, 0.0]);
    pub const MINUS_IDENTITY: Su2 = Su2([-1.0, 0.0, 0.0, 0.0]);

    pub fn new(q: [f64; 4]) -> Self {
        Su2(q)
    }

    /// Rescales to unit length.
    pub fn normalized(q: [f64; 4]) -> Self {
        let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
        Su2(q.map(|x| x / n))
    }

    /// Haar-random element.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let q: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
            if q.iter().map(|x| x * x).sum::<f64>() > 1e-12 {
                return Su2::normalized(q);
            }
        }
    }

    /// `exp(x1 i + x2 j + x3 k)`.
    pub fn exp(x: [f64; 3]) -> Self {
        let t = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
        let s = if t < 1e-8 { 1.0 - t * t / 6.0 } else { t.sin() / t };
        Su2([t.cos(), s * x[0], s * x[1], s * x[2]])
    }

    /// From a 2x2 complex matrix, which must be in SU(2).
    pub fn from_matrix(m: [[C64; 2]; 2]) -> Self {
        Su2([m[0][0].re, m[0][0].im, m[0][1].re, m[0][1].im])
    }

    pub fn to_matrix(&self) -> [[C64; 2]; 2] {
        let [a, b, c, d] = self.0;
        [[C64::new(a, b), C64::new(c, d)], [C64::new(-c, d), C64::new(a, -b)]]
    }

    pub fn inverse(&self) -> Self {
        let [a, b, c, d] = self.0;
        Su2([a, -b, -c, -d])
    }

    pub fn trace(&self) -> f64 {
        2.0 * self.0[0]
    }

    pub fn norm_defect(&self) -> f64 {
        (self.0.iter().map(|x| x * x).sum::<f64>() - 1.0).abs()
    }

    /// Operator-norm distance, which for quaternions is the Euclidean one.
    pub fn distance(&self, other: &Su2) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
    }

    pub fn conjugate_by(&self, g: &Su2) -> Self {
        *g * *self * g.inverse()
    }
}

impl Mul for Su2 {
    type Output = Su2;

    fn mul(self, o: Su2) -> Su2 {
        let [a1, b1, c1, d1] = self.0;
        let [a2, b2, c2, d2] = o.0;
        Su2([
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        ])
    }
}

/// `a b a^-1 b^-1`.
pub fn commutator(a: Su2, b: Su2) -> Su2 {
    a * b * a.inverse() * b.inverse()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matmul(x: [[C64; 2]; 2], y: [[C64; 2]; 2]) -> [[C64; 2]; 2] {
        let mut out = [[C64::new(0.0, 0.0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
            }
        }
        out
    }

    #[test]
    fn product_matches_matrices() {
        let x = Su2::normalized([0.3, -0.2, 0.9, 0.1]);
        let y = Su2::normalized([-0.5, 0.4, 0.1, 0.7]);
        let m = matmul(x.to_matrix(), y.to_matrix());
        let q = (x * y).to_matrix();
        for i in 0..2 {
            for j in 0..2 {
                assert!((m[i][j] - q[i][j]).norm() < 1e-15);
            }
        }
        assert_eq!(Su2::from_matrix(q), x * y);
    }

    #[test]
    fn exp_of_quarter_turn() {
        let q = Su2::exp([std::f64::consts::FRAC_PI_2, 0.0, 0.0]);
        assert!(q.distance(&Su2([0.0, 1.0, 0.0, 0.0])) < 1e-15);
        assert!((q * q).distance(&Su2::MINUS_IDENTITY) < 1e-15);
    }
}
