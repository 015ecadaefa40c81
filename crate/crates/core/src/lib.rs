//! Exact computations with determinantal and Hankel-type polynomials:
//! structured matrices, Groebner bases, syzygies, Hessians, polar maps and a
//! registry of worked scenarios whose facts are re-derived on demand.

pub mod budget;
pub mod casebook;
pub mod error;
pub mod groebner;
pub mod hankelplucker;
pub mod linalg;
pub mod polar;
pub mod polyring;
pub mod structmat;
pub mod subhankel;
pub mod syzygy;

pub use budget::Budget;
pub use error::{AlgebraError, Result};
