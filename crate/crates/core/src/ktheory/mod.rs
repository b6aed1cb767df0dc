//! Equivariant K-theory representatives and the modular index pairings.

mod element;
mod index;
mod kernel;
mod operators;
pub mod series;

pub use element::{
    podles_projection_numerator, podles_projection_p, suq2_unitary_v, symbolic_checks,
    CharacterWeight, MatrixAlgebraElement, SymbolicChecks,
};
pub use index::{
    amplify, index_even, index_even_operator, index_odd, IMAGINARY_TOLERANCE, ODD_POWER,
};
pub use kernel::{modular_index_kernel, KernelOptions, KernelReport};
pub use operators::{
    circle_generator, circle_residual, homotopy_f, projection_residual, shift, spectral_projection,
    Sign, TruncatedOperator,
};
