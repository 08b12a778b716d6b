//! Exact topological recursion on one-branchpoint spectral curves, and the
//! intersection numbers on moduli spaces of curves that it computes.

pub mod algebra;
pub mod curve;
pub mod toprec;
pub mod intersect;
pub mod bridge;
pub mod harness;
