//! Exact combinatorics of even Heckoid groups `H(r;n) = <a, b | u_r^n>` of
//! 2-bridge links: Riley words and their S/T-sequences, the Farey-orbit
//! normal form of simple-loop slopes, small cancellation checks, a Dehn
//! word-problem engine, numeric parabolic representations with trace
//! certificates, and decision procedures for triviality, conjugacy,
//! peripherality and torsion of simple loops.

mod dd;
pub mod decide;
pub mod error;
pub mod farey;
pub mod kleinian;
pub mod presentation;
pub mod rational;
pub mod smallcancel;
pub mod verify;
pub mod word;

pub use error::{Error, Result};
pub use rational::{ContinuedFraction, Slope};
pub use word::{CyclicWord, Letter, Word};

/// Version tag placed under the `schema` key of every JSON document.
pub const SCHEMA: &str = "heckoid/1";
