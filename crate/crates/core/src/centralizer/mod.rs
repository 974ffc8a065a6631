//! Centralizer members by search and by decomposition, and the counting
//! formulas for centralizers of semilattices.

mod counting;
mod decompose;
mod search;

pub use counting::*;
pub use decompose::*;
pub use search::*;
