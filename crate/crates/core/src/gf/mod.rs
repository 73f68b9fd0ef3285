//! Finite-field tower arithmetic.

pub mod matrix;
pub mod poly;
pub mod prime;
mod table;
mod tower;

pub use table::GfTable;
pub use tower::{
    parse_u32_list, ArithOp, Element, FieldTower, Level, TowerSpec, DEFAULT_BUDGET,
};
