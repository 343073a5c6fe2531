//! Multipartite entanglement of small qubit registers and the local
//! Hamiltonians that admit maximally multipartite entangled states (MMES)
//! as eigenstates.
//!
//! The crate is organised bottom-up:
//!
//! - [`state`]: pure-state registers and bipartitions,
//! - [`entanglement`]: reduced density matrices, purity and the potential of
//!   multipartite entanglement `pi_ME`,
//! - [`pauli`]: Pauli-string operators, locality and projector expansion,
//! - [`spectral`]: dense Hermitian diagonalization and level bookkeeping,
//! - [`models`]: the named states and Hamiltonians (GHZ basis, `M4`, `M5`,
//!   `H_Jk` families),
//! - [`search`]: null-space search for local Hamiltonians stabilizing a state
//!   and seeded random-coupling experiments,
//! - [`optimize`]: numerical minimization of `pi_ME`,
//! - [`format`]: text file formats and CSV number formatting.
//!
//! Computational basis indices are read MSB-first: qubit 1 is the most
//! significant bit, and `Z|0> = |0>`, `Z|1> = -|1>`.

pub mod entanglement;
pub mod error;
pub mod format;
pub mod models;
pub mod optimize;
pub mod pauli;
pub mod search;
pub mod spectral;
pub mod state;

pub use entanglement::{
    balanced_bipartitions, is_perfect_mmes, pme, purity, purity_table, reduced_density,
    DensityMatrix,
};
pub use error::{Error, Result};
pub use pauli::{Pauli, PauliOperator, PauliTerm, Topology, TopologyKind};
pub use spectral::{eigh, LevelPosition, Spectrum};
pub use state::{Bipartition, PureState};

pub use nalgebra::DMatrix;
pub use num_complex::Complex64;
