//! Modular Fredholm modules over the Podleś spheres and SU_q(2): symbolic
//! algebra, truncated representations, twisted Chern characters and modular
//! index pairings.

pub mod error;
pub mod ktheory;
pub mod linalg;
pub mod modular;
pub mod ncalg;
pub mod rep;

pub use error::{Error, Result};
pub use ktheory::{CharacterWeight, MatrixAlgebraElement};
pub use linalg::{SparseMatrix, C64};
pub use modular::PairingReport;
pub use ncalg::{AlgebraKind, FreeProductElement, Generator, NCPolynomial, Scalar};
pub use rep::{build_module, ModularModule, ModuleKind, Params, TruncationWindow};
