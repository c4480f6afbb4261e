//! Finite and affine crystallographic Coxeter groups in the integral
//! reflection representation.

mod catalog;
mod element;
mod matrix;
mod presentation;
mod recognize;

pub use catalog::{Component, Family, TypeDescriptor};
pub use element::{GroupElement, Side};
pub use matrix::IntMatrix;
pub use presentation::{build_presentation, CoxeterPresentation, NodeLabel};
pub use recognize::{labelled_isomorphism, Bond, CoxeterMatrix};
