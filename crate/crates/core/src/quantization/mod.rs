//! Quantum curves, their series solutions and the dual wave function.

pub mod curve;
pub mod dual;
pub mod operator;
pub mod solve;

pub use curve::{build_quantum_curve, classical_factorization, classical_limit, ClassicalFactorization};
pub use dual::{decay_check, dual_wave, omega_dual_expansion, verify_dual_difference, DualCheck, DualWave, HbarExpansion};
pub use operator::QOperator;
pub use solve::{
    check_annihilation, closed_form_psi, closed_form_psi_in, frobenius_solve, frobenius_solve_auto,
    preferred_direction, Annihilation,
};
