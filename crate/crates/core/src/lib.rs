//! Exact checkers for Lorentzian polynomials, their Rayleigh-type and
//! splitting inequalities, and the convex-geometric and matroidal objects
//! they come from.

pub mod convgeom;
pub mod derivs;
pub mod error;
pub mod harness;
pub mod ineq;
pub mod io;
pub mod lorentz;
pub mod matrix;
pub mod matroid;
pub mod poly;
pub mod rational;
pub mod schurmix;
pub mod verdict;

pub use error::{Error, Result};
pub use poly::{HomPoly, MultiIndex};
pub use rational::Rat;
pub use verdict::{Verdict, Witness};
