//! Exact computation of Hochschild-type calculus structures, higher residue
//! pairings, primitive forms and formal Frobenius potentials for finite
//! models of graded dg algebras.
//!
//! The crate is organized bottom-up:
//!
//! * [`scalar`], [`graded`], [`homology`], [`series`], [`sign`] — exact
//!   rational graded linear algebra, deterministic homology splittings and
//!   truncated series arithmetic.
//! * [`dg`], [`hochschild`] — dg algebra presentations, normalized bar-type
//!   cochain and chain complexes with their cup product, bracket, boundary
//!   operators and the cyclic differential, and the induced finite calculus.
//! * [`calculus`] — the abstract calculus package (operations tables plus
//!   volume-class data), its validation gates, Jacobian ring, residue
//!   pairings, weight bigrading and exponents.
//! * [`derham`] — the u-twisted boundary complex, its connection in the
//!   u-direction, very good sections, higher residue pairings and opposite
//!   submodules.
//! * [`deformation`] — the divergence operator, the order-by-order
//!   Maurer-Cartan solver with weight homogeneity, deformed Jacobian rings,
//!   primitive/Euler fields and the deformed connection.
//! * [`primitive`] — exponential trivialization, the primitive form solver
//!   and the assembled Frobenius structure with its potential.
//! * [`models`] — the bundled example corpus, built programmatically.
//! * [`io`] — JSON schemas for all inputs and reports ("p/q" rationals,
//!   no floats).

pub mod book;
pub mod calculus;
pub mod deformation;
pub mod derham;
pub mod dg;
pub mod error;
pub mod graded;
pub mod hochschild;
pub mod homology;
pub mod io;
pub mod models;
pub mod primitive;
pub mod report;
pub mod scalar;
pub mod series;
pub mod sign;

pub use error::{Error, Result};
pub use scalar::Q;
