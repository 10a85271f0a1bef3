//! Exact enumeration of planes on split cubic fourfolds
//! F1(x0,x1,x2) = F2(y0,y1,y2) and certification of their intersection
//! lattices, over number fields with arbitrary-precision rational
//! coefficients.

pub mod group_ring;
pub mod error;
pub mod fermat;
pub mod hesse;
pub mod json;
pub mod lattice;
pub mod matrix;
pub mod numfield;
pub mod plane;
pub mod poly;
pub mod rational;

pub use error::{Error, Result};
