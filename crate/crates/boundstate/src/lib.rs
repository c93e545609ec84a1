//! Analysis of one-dimensional quantum bound states.

pub mod cli;
pub mod decay;
pub mod eigensolver;
pub mod expr;
pub mod inverse;
pub mod manifest;
pub mod observables;
pub mod quadrature;
pub mod report;
pub mod wavefunction;
