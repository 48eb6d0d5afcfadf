//! Standard states, gates and the two protocol verifications.

pub mod circuit;
pub mod qkd;
pub mod report;
pub mod sdc;
pub mod states;

pub use circuit::{cnot, hadamard, pauli, wires, Circuit, Pauli};
pub use qkd::{
    qkd_check_lemmas, qkd_simulate, qkd_simulate_with, Basis, EavesdropHook, NoEavesdropCheck,
    QkdRound,
};
pub use report::{CaseVerdict, Estimate, ProtocolReport};
pub use sdc::{
    decode_basis, ghz_class_state, ghz_measurement, n_ghz_encodings, sdc_decode, sdc_n_ghz_verify,
    sdc_verify_all, GhzClassIndex, Table,
};
pub use states::{ghz_n, ghz_state, w_state};
