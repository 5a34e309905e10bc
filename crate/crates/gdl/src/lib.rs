//! Graded local cohomology at the irrelevant ideal of `R[u1..un]`, computed
//! three independent ways, and slice-by-slice checks of graded duality.

pub mod cli;
pub mod complexes;
pub mod error;
pub mod graded;
pub mod grobner;
pub mod harness;
pub mod linalg;
pub mod local_cohomology;
pub mod poly;
pub mod rational;
pub mod rmod;

pub use error::{Error, Result};
pub use poly::{Context, Monomial, MonomialOrder, Polynomial};
pub use rational::Rational;
