//! Reduced words of the longest permutation, their word posets, and the
//! gallery-connected (GC) classes singled out by vanishing A/D-indices.

pub mod cli;
pub mod error;
pub mod gc;
pub mod indices;
pub mod poset;
pub mod verify;
pub mod wiring;
pub mod words;

pub use error::{Error, Result};
pub use gc::{Budget, StrictPartition};
pub use indices::{DeltaSeq, IndexVector, Side};
pub use poset::{Ideal, WordPoset};
pub use wiring::WiringDiagram;
pub use words::{Permutation, Word};
