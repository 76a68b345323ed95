//! Computation of subalgebra saturations via Groebner elimination, toric
//! ideals, and SAGBI bases, with a driver for classical U-invariant algebras.

pub mod coeff;
pub mod error;
pub mod groebner;
pub mod problem;
pub mod ring;
pub mod toric;

pub use coeff::{Field, FieldElement};
pub use error::{Error, Result};
pub use ring::{Grading, PolyRing, Polynomial, Term, TermOrdering};
