//! Locally finite groups with finite centralizer indices: periodic Dedekind
//! groups, their power automorphisms, cyclic extensions, and brute-force
//! checks on finite truncations.

pub mod abelian;
pub mod arith;
pub mod bruteforce;
pub mod cardinal;
pub mod corpus;
pub mod dedekind;
pub mod document;
pub mod error;
pub mod extension;
pub mod power_aut;
pub mod suites;

pub use cardinal::Cardinal;
pub use error::{Error, Result};
