//! Counting Eulerian circuits of even-degree graphs.
//!
//! The crate pairs a closed-form asymptotic estimate of the circuit count with
//! three independent computations: exact backtracking, exact quadrature of an
//! n-dimensional integral representation, and a Monte Carlo estimate of its
//! Gaussian-type approximation.

pub mod asymptotic;
pub mod enumeration;
pub mod graph;
pub mod integral;
pub mod matrix;
pub mod rng;
pub mod spectral;

pub use graph::{complete_graph, cycle_graph, parse_graph, random_even_graph, validate, Graph, GraphError, ValidationReport};
pub use matrix::Matrix;

/// Big integers serialize as decimal strings.
pub(crate) fn serialize_bigint<S: serde::Serializer>(x: &num_bigint::BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_str_radix(10))
}
