//! Exact computations with finite groups around `p`-stability: witness
//! constructions, stability and involvement decisions, fusion systems of
//! groups, and order arithmetic for groups of Lie type.

pub mod caps;
pub mod constructions;
pub mod corpus;
pub mod engine;
pub mod error;
pub mod fusion;
pub mod lie;
pub mod report;
pub mod stability;

pub use caps::Caps;
pub use error::{Error, Result};
