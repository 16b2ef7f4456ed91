//! Group-theoretic machinery for studying wild ramification of Galois covers
//! of the affine line in positive characteristic.
//!
//! The crate provides exact permutation-group computation (stabilizer chains,
//! Sylow subgroups, normalizers), classification of cyclic-by-tame inertia
//! subgroups, ramification filtrations and jump arithmetic, genus bookkeeping
//! for covers and their quotients, and a certification engine that combines
//! computed data with cited external facts to decide which inertia candidates
//! are realizable.

pub mod atlas;
pub mod certify;
pub mod error;
pub mod genus;
pub mod group;
pub mod inertia;
pub mod perm;
pub mod quasip;
pub mod ramfilt;
pub mod subgrp;
pub mod tails;

pub use error::{Error, Result};
pub use group::PermGroup;
pub use perm::Permutation;
