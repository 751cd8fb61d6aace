//! Exact computations on free double covers of metric graphs.

pub mod abel_prym;
pub mod chain;
pub mod cover;
pub mod divisor;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod io;
pub mod lattice;
pub mod matrix;
pub mod ogod;
pub mod poly;
pub mod prym_group;
pub mod rat;
pub mod random;
pub mod snf;
pub mod zeta;

pub use chain::Chain;
pub use cover::{CoverIsomorphism, CoverOptions, DoubleCover, Sheet};
pub use divisor::Divisor;
pub use error::{PrymError, Result};
pub use graph::{Component, Edge, EdgeId, EdgeSet, Graph, VertexId};
pub use matrix::{IntMatrix, Matrix, RatMatrix};
pub use ogod::Ogod;
pub use poly::IntPolynomial;
pub use rat::{format_rat, parse_rat, Rat};
pub use snf::{AbelianGroup, SmithForm};

pub use num_bigint::BigInt;
