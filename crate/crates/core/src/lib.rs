//! Linear MDS b-symbol codes over finite fields.
//!
//! Modules build bottom-up: [`gf`] (field and polynomial arithmetic),
//! [`linalg`] (dense matrices and linear codes), [`bmetric`] (b-symbol
//! weights and minimum-distance certification), [`geometry`] (projective
//! point orderings that yield parity-check matrices), [`constacyclic`]
//! (constacyclic codes and the cyclotomic construction) and [`fixtures`]
//! (the reference matrices used for regression runs).

pub mod gf;
pub mod linalg;
pub mod bmetric;
pub mod geometry;
pub mod constacyclic;
pub mod fixtures;
