//! Exact algebra for coherent systems described by their minimal cut sets:
//! lcm-filtrations, free resolutions, K-polynomials and failure statistics.

pub mod combinat;
pub mod error;
pub mod filtration;
pub mod io;
pub mod linalg;
pub mod monomial;
pub mod poly;
pub mod profile;
pub mod resolution;
pub mod stats;
pub mod systems;

pub use error::{Error, Result};
pub use filtration::{full_filtration, k_fold_ideal, k_fold_raw, staircase, Filtration, Guard};
pub use monomial::{minimalize, Monomial, MonomialIdeal, VarSet};
pub use poly::UniPoly;
