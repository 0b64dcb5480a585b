//! Path algebras and Leavitt path algebras of finite directed graphs.

pub mod analysis;
pub mod builders;
pub mod dsl;
pub mod element;
pub mod error;
pub mod expr;
pub mod graph;
pub mod laurent;
pub mod matrix;
pub mod rewrite;
pub mod quotients;
pub mod scalar;
pub mod semisimple;
pub mod toeplitz;

pub use dsl::parse_graph;
pub use element::{basis_monomials_up_to, Element, Monomial};
pub use error::{Error, Result};
pub use expr::{parse_element, parse_element_in};
pub use graph::{Cycle, EdgeId, Graph, Path, VertexId, VertexSet, Walk, WalkStep};
pub use scalar::{Field, Scalar};
