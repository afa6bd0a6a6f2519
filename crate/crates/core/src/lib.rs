//! Computational lab for left-cancellative semigroups: constructible right
//! ideals, independence, amenability certificates, ring ideals of quadratic
//! fields and the left regular representation on finite windows.

pub mod amenability;
pub mod cli;
pub mod error;
pub mod group;
pub mod ideal_engine;
mod lattice;
pub mod operator;
pub mod parse;
pub mod ring;
pub mod ring_ideals;
pub mod semigroup;

pub use error::{LabError, Result};
pub use ring::{RingDescriptor, RingElem};
pub use semigroup::{Element, ModelKind, NumericalSemigroup, SemigroupModel};
