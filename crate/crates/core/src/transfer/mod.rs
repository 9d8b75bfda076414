//! Chained junction transfer matrices: transmission spectra, bound-state
//! energies and eigenfunctions.
//!
//! Wave region `j` carries `psi = A_j f1(u) + B_j f2(u)` in a local
//! coordinate `u` whose origin is the region's left breakpoint (the first
//! region uses the first breakpoint). The total product maps the
//! amplitudes of the last region onto those of the first.

mod bound;
mod chain;
mod matrix;

pub use bound::{bound_determinant, eigenfunction, eigenvalues, BoundState, Eigenvalue, DEFAULT_SCAN_POINTS, STALE_TOLERANCE};
pub use chain::{
    junction_pair_matrix, scattering_point, total_transfer, transmission_spectrum, RegionWave, ScatteringPoint,
    SpectrumEntry, WaveCase,
};
pub use matrix::{ScaledTransfer, TransferMatrix2};
