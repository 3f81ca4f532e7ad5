//! Exact-arithmetic toolkit for divisor class group bounds of terminal
//! Gorenstein Fano threefolds: sparse multivariate polynomials over field
//! towers, a Gröbner engine, the quartic-with-a-plane fibration pipeline,
//! and a combinatorial MMP bound enumerator.

pub mod fibration;
pub mod fixture;
pub mod pipeline;
pub mod field;
pub mod ideals;
pub mod mmp;
pub mod parse;
pub mod poly;
pub mod roots;
pub mod univar;
