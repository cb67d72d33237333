pub mod automaton;
pub mod constructions;
pub mod cover;
pub mod diophantine;
pub mod document;
pub mod error;
pub mod fixtures;
pub mod group;
pub mod hom;
pub mod lattice;
pub mod pipeline;
pub mod paths;
pub mod pumpable;
pub mod search;
pub mod wqo;

pub use error::{Error, Result};
