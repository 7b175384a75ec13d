//! Polygon domains of a genus-g surface with one boundary component, triangle
//! cut-slide moves on them, and the reduction machinery that factorizes
//! boundary-preserving automorphisms of the surface group into such moves.
//!
//! The main pieces:
//!
//! - [`word`]: reduced words over the fixed symplectic alphabet, with the
//!   positional energy ordering.
//! - [`domain`]: polygon domains (labelled side sequences with a pairing
//!   involution), validation, and balance classification.
//! - [`moves`]: triangle cut-slide moves, their inverses, induced generator
//!   substitutions, and general cut-slides decomposed into triangle moves.
//! - [`reduction`]: the greedy reduction driving any domain to the standard
//!   symplectic one, and mapping-class factorization built on it.
//! - [`triangulation`]: one-vertex triangulations, the fan construction, its
//!   greedy inverse, diagonal exchanges, and flip-path translation.
//! - [`chord`]: the dual linear chord diagram view with slides and rendering.
//! - [`relations`]: relation loops in the move groupoid and loop mining.
//! - [`walk`]: seeded random walks used to build test corpora.
//! - [`io`]: JSON file formats shared by the CLI and the tests.

pub mod chord;
pub mod domain;
pub mod error;
pub mod io;
pub mod moves;
pub mod reduction;
pub mod relations;
pub mod triangulation;
pub mod walk;
pub mod word;

pub use error::{Error, Result};
pub use word::{GenusContext, Letter, Word};
