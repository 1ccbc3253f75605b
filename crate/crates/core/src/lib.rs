//! Exact q-series engine for strip geometries: quantum curves, wave
//! functions, symmetric-quiver forms, DT exponents and q-Barnes residues.

pub mod error;
pub mod series;

pub use error::{Error, Result};
pub use series::{Direction, Monomial, MultiPoly, QLaurent, Rat, TMono, Var, XSeries};
pub mod geometry;
pub mod numeric;

pub use geometry::{Basepoint, ClassicalCurve, Param, StripGeometry};
pub mod quantization;
pub mod quiver;
pub mod dt;
pub mod barnes;

pub use barnes::{BarnesIntegrand, ShiftRatio, ShiftReport};
pub use dt::{DTFactor, DTFactorization};
pub use quiver::{QuiverMatrix, QuiverModel, QuiverNode};
