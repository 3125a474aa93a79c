//! Exact growth series of Coxeter groups.
//!
//! The growth series `W(t) = sum_w t^{l(w)}` of every parabolic subgroup is
//! computed as a reduced rational function from the alternating-sum
//! recurrences over subsets of generators, and checked against brute-force
//! enumeration of group elements and against Euler-characteristic censuses
//! of the Coxeter complex, the Davis complex and the Tits non-complex.

pub mod catalog;
pub mod census;
pub mod classify;
pub mod cli;
pub mod error;
pub mod geometric;
pub mod growth;
pub mod matrix;
pub mod oracle;
pub mod poly;
pub mod ratfunc;
pub mod report;

pub use classify::{classify, spherical_subsets, FiniteFamily, FiniteTypeInfo};
pub use error::{Error, Result};
pub use growth::{
    chi_coefficient, growth_series, nerve_link, verify_identity, GrowthTable, Identity,
    IdentityReport, IdentityStatus, NerveLink,
};
pub use matrix::{CoxeterMatrix, Order, SubsetMask};
pub use oracle::{bfs_enumerate, Ball, NormalFormWord};
pub use poly::IntPolynomial;
pub use ratfunc::{RationalFunction, SeriesTruncation};
