//! Bandwidth of Hamming graphs `K_{n_1} x ... x K_{n_d}`.
//!
//! A labeling of the product of cliques is the same thing as an arrangement
//! of `1..=n_1 n_2 ... n_d` in an `n_1 x ... x n_d` matrix, and its bandwidth
//! is the arrangement's spread: the largest difference between two numbers
//! sharing a line. This crate provides
//!
//! - [`shape`] / [`arrangement`]: shapes, arrangements, labelings, spread,
//!   bandwidth and the line-sorting transform;
//! - [`bounds`]: lower and upper bounds on the bandwidth;
//! - [`hypercube`]: optimal numberings of `K_2^d` and orthant splits;
//! - [`construct`]: arrangements meeting the upper bounds (optimal in 2D);
//! - [`oracle`]: exact minimum spread for small shapes;
//! - [`io`]: JSON and CSV formats.

pub mod arrangement;
pub mod bounds;
pub mod construct;
pub mod error;
pub mod hypercube;
pub mod io;
pub mod oracle;
pub mod shape;

pub use arrangement::{graph_bandwidth, spread, Arrangement, Labeling};
pub use bounds::{
    hypercube_bandwidth, lower_bound, lower_bound_2d, quadrant_lower_bound_2d, upper_bound,
    BoundsReport,
};
pub use construct::{construct, ConstructionResult};
pub use error::{Error, Result};
pub use hypercube::{align_max_edges_to_dim1, decompose, harper_numbering, HypercubeNumbering};
pub use oracle::{
    count_linear_extensions, exact_min_spread, exact_min_spread_unrestricted, OracleResult,
};
pub use shape::{Cell, Line, Shape};
