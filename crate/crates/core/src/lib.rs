//! Numerical tools for affine Landau-Ginzburg mirror models.
//!
//! The crate is organised bottom-up: [`laurent`] holds the polynomial and
//! rational-function arithmetic, [`mirror`] builds potentials from GLSM data,
//! [`critical`] solves for critical points, [`cycles`] tracks branch points of
//! a fibration and computes vanishing-cycle intersections, [`su2`] counts
//! SU(2) holonomy solutions and [`dsing`] computes Ext ranks for nodal-curve
//! sheaves.

pub mod critical;
pub mod dsing;
pub mod cycles;
pub mod laurent;
pub mod mirror;
pub mod su2;
pub mod univariate;

pub type C64 = num_complex::Complex64;
