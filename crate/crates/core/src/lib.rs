//! Freeness of QAOA dynamical Lie algebras for MaxCut.

pub mod classifier;
pub mod graph;
pub mod io;
pub mod pauli;
pub mod splitter;
