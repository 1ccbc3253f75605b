//! Exact truncated q-series.

pub mod multipoly;
pub mod pochhammer;
pub mod qlaurent;
pub mod rat;
pub mod xseries;

pub use multipoly::{Monomial, MultiPoly, Var, MAX_PARAMS};
pub use pochhammer::{euler_poch, euler_poch_inv, inv_qq, poch_finite, poch_inf, TMono};
pub use qlaurent::QLaurent;
pub use rat::Rat;
pub use xseries::{Direction, XSeries};
