//! Hermitian matrices, spectral calculus, entropies and seeded HPD generation.

pub mod entropy;
pub mod functions;
pub mod io;
pub mod matrix;
pub mod random;
pub mod spectral;

pub use entropy::{entropy_renyi, entropy_tsallis, entropy_von_neumann, logdet, power_mean};
pub use functions::{
    matrix_function, pd_spectrum, trace_function, validate_hpd, FunctionKind, HpdDiagnostics,
    PD_THRESHOLD,
};
pub use io::{matrix_from_json, matrix_to_json, read_matrix, write_matrix};
pub use matrix::{HermitianMatrix, SquareMatrix};
pub use random::{
    derive_seed, random_hermitian_direction, random_hpd, random_unitary, HpdGenConfig,
};
pub use spectral::{spectral_decompose, SpectralDecomposition};
