//! Concrete operators: Pauli words, stabilizer projectors, CNC operators,
//! phase-space point operators and the discrete Wigner function.

pub mod cnc;
pub mod hermitian;
pub mod lambda;
pub mod pauli;
pub mod stabilizer;
pub mod wigner;

pub use cnc::{
    cnc_value_assignments, enumerate_cnc_qubits, enumerate_cnc_sets, single_qudit_full_cnc,
    CncOperator, CncSet,
};
pub use hermitian::{HermitianOperator, OperatorJson, OperatorLabel};
pub use lambda::{is_lambda_vertex, min_stabilizer_overlap, qutrit_lambda_vertices, tight_set};
pub use pauli::pauli_word;
pub use stabilizer::{
    enumerate_stabilizer_states, stabilizer_projector, stabilizer_projectors,
    stabilizer_state_count, StabilizerState, ValueAssignment,
};
pub use wigner::{
    parity_operator, phase_point_operator, phase_point_operators, wigner_function, WignerFunction,
};
