//! Exact finite group machinery on permutation groups.

pub mod field;
pub mod group;
pub mod iso;
pub mod lattice;
pub mod local;
pub mod matrix;
pub mod perm;
pub mod quotient;
pub mod spec;

pub use field::FqField;
pub use group::{Group, Subgroup};
pub use iso::{find_subgroup_isomorphic, fingerprint, is_isomorphic, Fingerprint};
pub use local::CoreMode;
pub use matrix::FqMatrix;
pub use perm::Perm;
pub use quotient::{coset_action, quotient, quotient_of, Hom};
