//! Finite ring workbench: Cayley-table rings, ring maps, duality-preserving
//! bases, skew polynomials and module θ-codes.

pub mod bases;
pub mod codes;
pub mod config;
pub mod linalg;
pub mod morphisms;
pub mod par;
pub mod ring;
pub mod skew;

pub use ring::{build_ring, Elem, FiniteRing, RingError, RingPresentation, SubringHandle};
