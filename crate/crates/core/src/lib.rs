//! Exact computations with the weighted relative Weyl groups attached to
//! cuspidal induction data: finite and affine Coxeter arithmetic, relative
//! groups generated by `w0(J+k) w0(J)`, weight functions, Kazhdan-Lusztig
//! cells and a-values, and the parametric atlas of induction data.

pub mod coxeter;
pub mod data;
pub mod kl;
pub mod relative;
pub mod report;
pub mod weight;
pub mod error;

pub use error::{Error, Result};
