//! DSRG parameters, the dihedrant type and the three verifiers.

mod dihedrant;
mod params;
mod verify;

pub use dihedrant::{canonical_form, complement_dihedrant, transform, AdjacencyMatrix, Dihedrant};
pub use params::{complement_params, duval_feasible, spectrum, DsrgParams, Eigenvalues, Infeasible};
pub use verify::{verify_adjacency, verify_fourier, verify_groupring, verify_matrix, Identity, MatrixViolation, Verdict};
