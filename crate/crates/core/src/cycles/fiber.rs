use super::CycleError;
use crate::laurent::{LaurentPoly, RationalPotential};
use crate::C64;

/// A two-variable potential whose fibers `w = λ` are double covers of the
/// `base` line, branched where the discriminant in `cover` vanishes.
#[derive(Clone, Debug)]
pub struct FiberSpec {
    potential: RationalPotential,
    base: usize,
    cover: usize,
    lambda_name: String,
    /// Cleared `N - λ D` over `[base, cover, λ]`.
    fiber: LaurentPoly,
    /// Discriminant over `[base, λ]`.
    discriminant: LaurentPoly,
    /// `coeffs[k]` is the coefficient of `base^k`, as a polynomial in `λ`
    /// stored ascending. Common powers of `base` are removed.
    dense: Vec<Vec<C64>>,
}

impl FiberSpec {
    pub fn new(potential: RationalPotential, cover_variable: &str, base_variable: &str) -> Result<Self, CycleError> {
        if potential.nvars() != 2 {
            return Err(CycleError::InvalidSpec(format!(
                "fiber specs need exactly two variables, got {}",
                potential.nvars()
            )));
        }
        let cover = potential.numerator().var_index(cover_variable)?;
        let base = potential.numerator().var_index(base_variable)?;
        if cover == base {
            return Err(CycleError::InvalidSpec("cover and base variable coincide".into()));
        }
        let vars = potential.vars();
        let mut lambda_name = "lambda".to_string();
        while vars.contains(&lambda_name) {
            lambda_name.push('_');
        }
        let names = vec![vars[base].clone(), vars[cover].clone(), lambda_name.clone()];
        let num = potential.numerator().with_vars(&names)?;
        let den = potential.denominator().with_vars(&names)?;
        let lam = LaurentPoly::var(&names, &lambda_name)?;
        let (mut fiber, _) = (&num - &(&lam * &den)).to_polynomial();
        // A common power of the cover variable only adds the excluded
        // component `cover = 0`.
        if let Some((lo, _)) = fiber.degree_range(1) {
            if lo > 0 {
                fiber = fiber.mul_monomial(&[0, -lo, 0]);
            }
        }
        let parts = fiber.coefficients_in(1);
        let degree = parts.keys().next_back().copied().unwrap_or(0);
        if degree != 2 || parts.keys().any(|&k| k < 0) {
            return Err(CycleError::NotQuadratic { degree });
        }
        let zero = LaurentPoly::zero(&names);
        let get = |k: i32| parts.get(&k).cloned().unwrap_or_else(|| zero.clone());
        let (a, b, c) = (get(2), get(1), get(0));
        let four = C64::new(4.0, 0.0);
        let disc3 = &(&b * &b) - &(&a * &c).scale(four);
        let disc_names = vec![names[0].clone(), lambda_name.clone()];
        let discriminant = disc3.with_vars(&disc_names)?;
        let dense = dense_coefficients(&discriminant);
        if dense.len() < 2 {
            return Err(CycleError::InvalidSpec("discriminant does not depend on the base variable".into()));
        }
        Ok(FiberSpec { potential, base, cover, lambda_name, fiber, discriminant, dense })
    }

    pub fn potential(&self) -> &RationalPotential {
        &self.potential
    }

    pub fn base_variable(&self) -> &str {
        &self.potential.vars()[self.base]
    }

    pub fn cover_variable(&self) -> &str {
        &self.potential.vars()[self.cover]
    }

    /// Name used for the fiber parameter in [`FiberSpec::discriminant`].
    pub fn lambda_variable(&self) -> &str {
        &self.lambda_name
    }

    /// The cleared fiber equation over `[base, cover, λ]`.
    pub fn fiber_polynomial(&self) -> &LaurentPoly {
        &self.fiber
    }

    /// Discriminant in the cover variable, over `[base, λ]`.
    pub fn discriminant(&self) -> &LaurentPoly {
        &self.discriminant
    }

    /// The discriminant at a fixed `λ`, as a polynomial in the base variable.
    pub fn branch_polynomial(&self, lambda: C64) -> LaurentPoly {
        let p = self.discriminant.substitute_value(1, lambda);
        p.with_vars(&[self.base_variable().to_string()]).expect("only the base variable remains")
    }

    /// Ascending dense coefficients in the base variable, with any common
    /// power of it removed (those roots lie on the excluded line).
    pub fn branch_coefficients(&self, lambda: C64) -> Vec<C64> {
        self.dense.iter().map(|c| crate::univariate::eval(c, lambda)).collect()
    }

    /// The two cover coordinates over `base = t` in the fiber `w = λ`.
    pub fn cover_values(&self, lambda: C64, t: C64) -> [C64; 2] {
        let mut q = [C64::new(0.0, 0.0); 3];
        for (m, c) in self.fiber.terms() {
            let e = m.exponents();
            q[e[1] as usize] += c * t.powi(e[0]) * lambda.powi(e[2]);
        }
        let s = (q[1] * q[1] - q[0] * q[2] * 4.0).sqrt();
        [(-q[1] + s) / (q[2] * 2.0), (-q[1] - s) / (q[2] * 2.0)]
    }
}

fn dense_coefficients(disc: &LaurentPoly) -> Vec<Vec<C64>> {
    let (lo, hi) = disc.degree_range(0).unwrap_or((0, 0));
    let lam_hi = disc.degree_range(1).map(|r| r.1).unwrap_or(0).max(0) as usize;
    let mut out = vec![vec![C64::new(0.0, 0.0); lam_hi + 1]; (hi - lo + 1) as usize];
    for (m, c) in disc.terms() {
        let e = m.exponents();
        out[(e[0] - lo) as usize][e[1] as usize] += c;
    }
    while out.last().is_some_and(|c| c.iter().all(|x| x.norm() == 0.0)) {
        out.pop();
    }
    out
}
