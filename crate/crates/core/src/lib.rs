//! Exact computations in the shuffle bialgebra, the dendriform algebra of
//! graded permutations, its descent subalgebra, and abstract shuffle bialgebras.

pub mod action;
pub mod algebra;
pub mod biword;
pub mod combinatorics;
pub mod descent;
pub mod error;
pub mod rigidity;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
