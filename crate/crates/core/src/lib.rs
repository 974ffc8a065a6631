//! Centralizer clones of finite semilattices, lattices and Boolean functions.
//!
//! Operations are value tables ([`ops::OpTable`]); ordered structures live in
//! [`order`]. Homomorphism search and the Galois correspondence between
//! join-homomorphisms and meet-homomorphisms are in [`homs`], centralizer
//! search and counting in [`centralizer`], congruences and the cube
//! predicates in [`congruence`], Boolean clones in [`boolean`].

pub mod boolean;
pub mod centralizer;
pub mod cli;
pub mod congruence;
pub mod error;
pub mod homs;
pub mod ops;
pub mod order;
pub mod suite;

pub use error::{Error, Result};
pub use ops::OpTable;
pub use order::{Lattice, Poset, Semilattice};
