//! Truncated matrix realizations of the Podleś, basic SU_q(2) and DLSSV
//! representations together with `F`, `gamma` and `K`.

pub mod basis;
pub mod dlssv;
mod module;
pub mod podles;
pub mod suq2;

pub use basis::{Arrow, Basis, BasisIndex, TruncationWindow};
pub use dlssv::{growth_profile, q_number};
pub use module::{
    build_module, max_residual, relations_residual, ModularModule, ModuleKind, Params, Parity,
    ResidualRow,
};

#[cfg(test)]
mod tests;
