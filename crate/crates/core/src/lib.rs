//! Transfer-matrix solver for one-dimensional Schrödinger problems in which
//! an arbitrary potential (and effective mass) is represented by a chain of
//! ultra-short junctions separated by constant-potential wave regions.
//!
//! * [`closed_form`]: exact results for a single ultra-short potential, the
//!   Dirac delta and the rectangular barrier/well.
//! * [`profile`]: potential profiles and their segmentation into junctions.
//! * [`transfer`]: the chain product, transmission spectra and bound states.
//! * [`laplace`]: the Laplace-domain propagator of a single junction.
//! * [`validate`]: independent oracles (analytic square well, finite differences).

pub mod closed_form;
pub mod error;
pub mod laplace;
pub mod profile;
pub mod quad;
pub mod roots;
pub mod transfer;
pub mod validate;
pub mod wavefunction;

pub use num_complex::Complex64;

pub use closed_form::{BoundEnergy, Scattering, UltraShortParams};
pub use error::{Error, Result};
pub use laplace::{InitialPacket, LaplaceQuery};
pub use profile::{discretize, load_tabulated, PotentialProfile, SegmentedProfile};
pub use transfer::{
    bound_determinant, eigenfunction, eigenvalues, total_transfer, transmission_spectrum, BoundState, Eigenvalue,
    ScaledTransfer, ScatteringPoint, SpectrumEntry, TransferMatrix2,
};
pub use validate::{direct_ode_eigenvalues, rect_well_eigenvalues, RectangularWellSpec};
pub use wavefunction::{Piece, PieceForm, PiecewiseWavefunction};
