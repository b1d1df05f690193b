//! Computational core for the weight-graded presentation of the genus-two
//! relative completion: Sp4 characters, branching to the wreath product,
//! free Lie algebra characters, nilpotent cohomology, level-one modular forms
//! and the Gysin-sequence weight bookkeeping that ties them together.

pub mod branching;
pub mod char_ring;
pub mod error;
pub mod facts;
pub mod gysin;
pub mod laurent;
pub mod lie_structure;
pub mod linalg;
pub mod modular;
pub mod nilpotent;
pub mod weights;

pub use error::{Error, Result};
