//! Desk-scale workbench for differential equivariant K-theory of finite
//! group actions: representation rings, equivariant characteristic forms,
//! reduced eta invariants and the pushforward identities on model
//! geometries.

pub mod char_forms;
pub mod clifford_spinor;
pub mod error;
pub mod group_rep;
pub mod models;
pub mod r_torus;
pub mod spectral_eta;
pub mod verify;

pub use error::{Error, Result};
