pub mod grading;
pub mod ordering;
pub mod poly;
pub mod term;

pub use grading::Grading;
pub use ordering::TermOrdering;
pub use poly::{Homogeneity, PolyRing, Polynomial};
pub use term::Term;
