//! Structured cospans over finitely cocomplete categories, with graphs,
//! Petri nets and resistor circuits as open systems.

pub mod error;
pub mod finset;
pub mod instances;
pub mod matrix;
pub mod rational;
pub mod circuits;
pub mod cospan;
pub mod dynamics;
pub mod functor;
pub mod hypergraph;
pub mod io;

pub use error::{Error, Result};
pub use finset::{FinFunction, FinSet};
