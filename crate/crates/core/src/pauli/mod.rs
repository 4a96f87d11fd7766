//! Pauli-string algebra: exact brackets, Lie closures and the star-space
//! operators used by the splitting lemmas.

mod closure;
mod coeff;
mod star;
mod sum;

use thiserror::Error;

pub use closure::{
    lie_closure, span_membership, ClosureOptions, LieBasis, DEFAULT_CLOSURE_QUBITS,
    ENGINE_QUBIT_LIMIT,
};
pub use coeff::{rational_to_f64, Coeff, Mod61, FLOAT_PIVOT_EPS};
pub use star::{
    even_parity_vectors, f_apply, hamiltonians_for_graph, krylov_contains, lagrange_projection,
    split_generators, xz_star, xz_star_spectrum,
};
pub use sum::{PauliSum, PauliTerm};

pub type Rational = num_rational::BigRational;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PauliError {
    #[error("invalid Pauli letter {0:?}")]
    BadPauliChar(char),
    #[error("closure on {n} qubits exceeds the engine limit of {limit}")]
    TooManyQubits { n: usize, limit: usize },
    #[error("generator on {found} qubits, expected {expected}")]
    QubitMismatch { expected: usize, found: usize },
    #[error("closure dimension {partial_dim} exceeded the limit {max_dim}")]
    ClosureOverflow { partial_dim: usize, max_dim: usize },
    #[error("vertex {vertex} has degree {degree}; star spaces are limited to degree {limit}")]
    DegreeTooLarge {
        vertex: usize,
        degree: usize,
        limit: usize,
    },
    #[error("vertex {0} is isolated")]
    IsolatedVertex(usize),
}
