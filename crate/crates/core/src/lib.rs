//! Exact computation of the cell structure, connected components and Betti
//! numbers of tropical prevarieties, together with checks of the classical
//! face-count bounds in terms of Newton polytope volumes, degrees and
//! sparsity.
//!
//! Everything is computed over the rationals; no floating point enters any
//! decision.

pub mod arrangement;
pub mod bounds;
pub mod corpus;
pub mod error;
pub mod exactgeom;
pub mod oracle;
pub mod prevariety;
pub mod realize;
pub mod topology;
pub mod tropical;

pub use error::{Error, Result};
