//! Equal-parameter Kazhdan-Lusztig theory on finite Coxeter groups:
//! polynomials, cells and the a-function.

pub mod cache;
mod cells;
mod cuspidal;
mod poly;
mod table;

pub use cache::load_or_build;
pub use cells::{
    a_by_structure_constants, delta, two_sided_cells, two_sided_cells_with, AMethod,
    CellPartition, STRUCTURE_CONSTANT_CAP,
};
pub use cuspidal::{
    cuspidal_cell, ell_from_afunction, parabolic_components, CellChoice, CuspidalComponent,
};
pub use poly::LaurentPoly;
pub use table::{KlGroup, DEFAULT_KL_CAP};
