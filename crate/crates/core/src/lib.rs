//! Chiral cavity QED numerics.
//!
//! A chiral two-level molecule coupled to one or two circularly polarised
//! standing-wave cavity modes: Jaynes-Cummings excitation blocks, Rabi
//! splittings with their handedness-dependent (chiral) component, the
//! strong-coupling Casimir-Polder force, and order-of-magnitude estimates
//! for real molecules.

pub mod coupling;
pub mod error;
pub mod estimates;
pub mod linalg;
pub mod mode_field;
pub mod molecule;
pub mod single_mode;
pub mod two_mode;
pub mod units;

pub use error::{Error, Result};
