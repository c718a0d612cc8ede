//! Galois conjugates and irreducible polynomials of modular function values
//! at CM points, computed through extended form class groups.

pub mod cli;
pub mod conjugates;
pub mod error;
pub mod modfunc;
pub mod modgroup;
pub mod polyalgebra;
pub mod quadforms;

pub use conjugates::{run, ClassFieldJob, JobResult};
pub use error::{Error, Result};
pub use modfunc::{ModularFunction, PrecisionConfig};
pub use polyalgebra::IntPolynomial;
pub use quadforms::{CMOrder, ExactCMPoint, QuadraticForm};
