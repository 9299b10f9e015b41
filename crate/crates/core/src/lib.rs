//! Topological and monodromy zeta functions of plane meromorphic germs
//! `f = P/Q`, computed exactly from dual resolution graphs, together with an
//! embedded-resolution engine that produces those graphs from polynomials and
//! checkers for the structural facts relating poles to monodromy eigenvalues.

pub mod conjecture;
pub mod exactalg;
pub mod poleanalysis;
pub mod resgraph;
pub mod resolve;
pub mod structure;
pub mod zeta;
