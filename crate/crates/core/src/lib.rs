//! Decoherence dynamics of a two-qubit system coupled to two independent
//! single-qubit environments, with classical, discord-type, and entanglement
//! correlation measures for every bipartition of the four-party system.
//!
//! The crate is organized bottom-up:
//!
//! - [`tensor`] and [`eig`]: dense complex matrices, tensor-product helpers,
//!   partial trace/transpose, and a Jacobi Hermitian eigensolver;
//! - [`states`]: Pauli basis, Bell-diagonal/Werner/general two-qubit
//!   constructors, system (x) vacuum products;
//! - [`channels`]: the five canonical Kraus channels, operator-sum
//!   application, and their isometric dilations;
//! - [`measures`]: entropies, mutual information, Henderson-Vedral classical
//!   correlation, quantum discord, two-side measures, concurrence,
//!   negativity;
//! - [`oracles`]: closed-form reduced matrices and analytic correlation
//!   formulas used as independent checks;
//! - [`dynamics`]: sweeps over the parametrized time p, sudden death/birth
//!   detection, and the operational measures.

pub mod channels;
pub mod dynamics;
pub mod eig;
pub mod error;
pub mod measures;
pub mod optim;
pub mod oracles;
pub mod rng;
pub mod states;
pub mod tensor;
pub mod tol;

pub use channels::{
    apply_local_channels, completeness_check, dilate_and_evolve_global, make_channel, ChannelKind,
    KrausChannel,
};
pub use dynamics::{
    extract_bipartition, find_transition, operational_measures, sweep, CorrelationReport,
    InitialState, MeasureKind, SweepConfig, Trajectory, TransitionKind,
};
pub use eig::{hermitian_eigen, hermitian_eigenvalues, psd_sqrt, Eigen};
pub use error::{Error, Result};
pub use measures::{
    classical_correlation_hv, classical_mutual_information, concurrence_general,
    measured_conditional_entropy, mutual_information, negativity, quantum_discord,
    shannon_entropy, two_side_classical, two_side_quantum, von_neumann_entropy, xstate_concurrence,
    MeasuredSide, MeasurementBasis,
};
pub use optim::OptimizerSettings;
pub use oracles::{
    analytic_classical_correlation, analytic_discord, chi, closed_form_reduced,
    equivalence_deviation, evolve_and_extract, ghz_asymptote_fidelity, BipartitionLabel,
};
pub use states::{
    attach_vacuum_environments, bell_diagonal_state, general_two_qubit_state, pauli,
    pauli_coefficients, werner_state, BellDiagonalParams, GeneralTwoQubitParams,
};
pub use tensor::{
    kron, partial_trace, partial_transpose, partial_transpose_matrix, trace_distance,
    validate_density, ComplexMatrix, DensityMatrix,
};
