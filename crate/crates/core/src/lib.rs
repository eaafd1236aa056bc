//! Finite groups, their non-cyclic graphs, cyclizers, Hamiltonian-cycle
//! certificates and perfect codes.

pub mod arith;
pub mod catalog;
pub mod codes;
pub mod cyclizer;
pub mod error;
pub mod graph;
pub mod group;
pub mod hamiltonian;
pub mod nilpotent;
pub mod verify;

pub use catalog::{parse_spec, Atom, GroupSpec};
pub use error::{Error, Result};
pub use group::{CyclicSubgroup, Element, FiniteGroup};
pub use nilpotent::{classify_nilpotent, NilpotentClass, NilpotentTag};
