//! Coherence, representation and natural extension for sets of desirable
//! things and sets of desirable sets of things, over finite universes.

pub mod claims;
pub mod closure;
pub mod coherence;
pub mod document;
pub mod error;
pub mod extension;
pub mod model;
pub mod representation;
pub mod vector;
pub mod verdict;

pub use error::{Error, Result};
