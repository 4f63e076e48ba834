//! Chain-level regulators on `GL_2` group chains and on linear cycles in the
//! algebraic simplex, built on exact Gaussian-rational arithmetic and a
//! Bloch-Wigner dilogarithm.
//!
//! The modules stack bottom to top: [`scalar`] and [`dilog`], then [`linalg`]
//! and [`projline`], then [`simplicial`] and [`grouphom`], and finally
//! [`regulators`]. [`sampling`] and [`cli`] drive randomized checks and the
//! `linchow` binary.

pub mod scalar;
pub mod dilog;
pub mod linalg;
pub mod projline;
pub mod simplicial;
pub mod grouphom;
pub mod regulators;
pub mod sampling;
pub mod cli;
