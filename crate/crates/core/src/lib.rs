//! Exact lattice and cone computations behind the combinatorial
//! classification of compact connected contact toric manifolds.
//!
//! The pipeline is: build a [`cone::Cone`] from inward normals or rays,
//! decide goodness ([`goodness`]), emit the symplectic-reduction
//! presentation ([`reduction`]), and dispatch to the matching
//! classification case ([`classify`]). The [`cli`] module wraps all of it
//! in a batch front end.

pub mod classify;
pub mod cli;
pub mod cone;
pub mod error;
pub mod goodness;
pub mod lattice;
pub mod reduction;

pub use error::{Error, Result};
