//! Exact Macdonald symmetric-function and deformed Virasoro computations.

pub mod coeff;
pub mod duality;
pub mod error;
pub mod factor;
pub mod fock;
pub mod geometry;
pub mod gcd;
pub mod int;
pub mod modp;
pub mod partition;
pub mod macdonald;
pub mod poly;
pub mod report;
pub mod suites;
pub mod symfunc;
pub mod whittaker;

pub use coeff::{Coeff, CoeffJson, Var};
pub use error::{CoeffError, Error, Result};
pub use int::Int;
pub use partition::{partitions, partitions_upto, Cell, Partition};
pub use poly::{Mono, Poly};
pub use symfunc::SymFunc;
