//! Semifree noncommutative differential graded algebras with action
//! filtrations.
//!
//! The crate provides exact arithmetic in free algebras ([`freealg`]),
//! semifree DGA presentations and tame moves ([`dga`]), the weak division
//! algorithm for the action-induced degree function ([`weakalg`]),
//! boundary witnesses and bounded characteristic-algebra probes
//! ([`charalg`]) and a separate graded-commutative engine ([`supercomm`]).

pub mod charalg;
pub mod dga;
pub mod error;
pub mod fixtures;
pub mod freealg;
pub mod linalg;
pub mod scalar;
pub mod supercomm;
pub mod text;
pub mod weakalg;

pub use error::{Bounded, Error, Result};
pub use freealg::{DegreeFunction, GeneratorInfo, Grading, Poly, Signature, Word};
pub use scalar::{Field, Scalar};
