//! Exact computations for Hom-Lie algebras and bialgebras: validators,
//! α-type Chevalley–Eilenberg cohomology, morphism complexes, formal
//! deformations, the grand crochet and the bialgebra complex.

pub mod alpha_ce;
pub mod bialgebra_alpha;
pub mod brackets;
pub mod catalog;
pub mod cli_io;
pub mod cochain;
pub mod deformation;
pub mod error;
pub mod hom;
pub mod exterior;
pub mod linalg;
pub mod morphism;

pub use error::{Error, Result};
