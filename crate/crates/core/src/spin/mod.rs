//! Exact representations of the standard and step-`n` angular-momentum
//! algebras, their verification, rotation representations, and bracket
//! checks for pairs of spin observables.

mod matrix;
mod operators;
mod quantization;
mod rotation;
mod verify;

pub use matrix::{OperatorMatrix, StateVector};
pub(crate) use operators::lowering_factor;
pub use operators::{anticommutator, build_operators, commutator, pauli, Operators, SpinSpace, MAX_TWO_L};
pub use quantization::{
    check_independent_commute, check_singlet_anticommute, exclusivity_check, pauli_tensor, random_pauli_operator,
    trichotomy_sweep, Exclusivity,
};
pub use rotation::{max_abs_diff, mul2, rotation, scaled, Matrix2, IDENTITY2};
pub use verify::{verify_casimir, verify_ladder_adjoint, verify_lie_algebra, verify_lowering_chain, verify_space};
