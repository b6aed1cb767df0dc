//! Exact symbolic arithmetic in the Podleś and SU_q(2) *-algebras and in the
//! unital free product of an algebra with itself.

pub mod free_product;
pub mod poly;
pub mod presentation;
pub mod scalar;

pub use free_product::{
    apply_sigma_tilde, q_map, q_product, verify_q_identity, Factor, FreeProductElement, Inclusion,
    SpanningForm, DEFAULT_Q_DEGREE_BOUND,
};
pub use poly::{format_terms, format_word, normal_monomials, NCPolynomial};
pub use presentation::{AlgebraKind, Generator, Presentation, Strategy, Word};
pub use scalar::Scalar;
