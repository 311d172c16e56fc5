use nalgebra::DMatrix;

use super::{Classification, CriticalPoint};
use crate::laurent::{LaurentError, RationalPotential};
use crate::C64;

const DEGENERACY_TOL: f64 = 1e-8;

/// Second partials at `point`. Only `f` itself is checked against the pole
/// tolerance: the unreduced quotient-rule denominators are powers of the
/// original one and underflow long before a pole is near.
pub fn hessian(f: &RationalPotential, point: &[C64]) -> Result<DMatrix<C64>, LaurentError> {
    f.eval(point)?;
    let n = f.nvars();
    let mut h = DMatrix::from_element(n, n, C64::new(0.0, 0.0));
    for i in 0..n {
        let fi = f.partial_derivative_idx(i);
        for j in i..n {
            let v = fi.partial_derivative_idx(j).eval_with_tol(point, 0.0)?;
            if !v.is_finite() {
                return Err(LaurentError::PoleError { magnitude: 0.0, tol: 0.0 });
            }
            h[(i, j)] = v;
            h[(j, i)] = v;
        }
    }
    Ok(h)
}

/// Nondegenerate iff `|det H| > tol * (max |H_ij|)^n`.
pub fn classify_hessian(f: &RationalPotential, p: &CriticalPoint) -> Result<CriticalPoint, LaurentError> {
    let h = hessian(f, &p.location)?;
    let n = h.nrows() as i32;
    let det = h.clone().determinant();
    let scale = h.iter().map(|c| c.norm()).fold(0.0, f64::max).powi(n);
    let classification = if det.norm() > DEGENERACY_TOL * scale {
        Classification::Nondegenerate
    } else {
        Classification::Degenerate
    };
    Ok(CriticalPoint { hessian_det: det, classification, ..p.clone() })
}
