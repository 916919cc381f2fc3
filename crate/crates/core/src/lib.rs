//! Cyclic-subgroup density of finite groups and the center inequality.
//!
//! Groups are dense Cayley tables ([`group::FiniteGroup`]). The [`catalog`]
//! builds the standard families, [`density`] computes `|C(G)|/|G|` and the
//! average order exactly, and [`theorem`] checks `alpha(G) <= alpha(Z(G))`
//! together with every intermediate step and consequence, per group.

pub mod arith;
pub mod catalog;
pub mod density;
pub mod error;
pub mod group;
pub mod rational;
pub mod theorem;

pub use catalog::{BuildOptions, Family, GroupSpec, Sign, SpecError};
pub use error::{GroupError, Result};
pub use group::{ElementId, FiniteGroup, SizeLimit, Subgroup};
pub use rational::Rational;
