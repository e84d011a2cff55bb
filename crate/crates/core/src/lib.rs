//! Exact computations with Laurent symmetric functions, the infinite
//! Calogero–Moser–Sutherland operators acting on them, and Jack–Laurent
//! symmetric functions.

pub mod arith;
pub mod error;
pub mod finite;
pub mod jack;
pub mod mbasis;
pub mod ops;
pub mod parse;
pub mod partitions;
pub mod pieri;
pub mod psym;
pub mod report;
pub mod verify;

pub use arith::{BigRational, Coeff, ParamPoly, Params, RatFunc};
pub use error::{Error, Result};
pub use partitions::{BiPartition, Partition};
pub use psym::{PMonomial, SymFunc};
