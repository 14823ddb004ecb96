pub mod error;
pub mod excursion;
pub mod field;
pub mod group;
pub mod hecke;
pub mod io;
pub mod linalg;
pub mod linkage;
pub mod random;
pub mod selftest;
pub mod sigma_mod;
pub mod smith;
pub mod tate_complex;
pub mod torus;

pub use error::{Error, Result};
pub use field::{Fe, Field};
pub use linalg::{Mat, Subquotient, Subspace};
