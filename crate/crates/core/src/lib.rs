//! Exact computation of Chow, dual Chow and Kazhdan–Lusztig–Stanley
//! polynomials of ranked posets, together with ab-index and matroid
//! deletion machinery.

pub mod abindex;
pub mod cli;
pub mod error;
pub mod poly;
pub mod incidence;
pub mod kls;
pub mod matroid;
pub mod poset;
pub mod report;

pub use abindex::{AbPolynomial, AbWord};
pub use error::{Error, Result};
pub use poly::Polynomial;
pub use incidence::IncidenceFunction;
pub use kls::KernelContext;
pub use matroid::{FlatLattice, Matroid};
pub use poset::Poset;
pub use report::Report;
