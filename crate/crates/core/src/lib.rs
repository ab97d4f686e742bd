//! Polynomial functions on Young diagrams and the Plancherel measure.

pub mod algebra;
pub mod characters;
pub mod error;
pub mod limits;
pub mod observables;
pub mod partitions;
pub mod plancherel;
pub mod poly;
pub mod rational;
pub mod series;
pub mod suite;

pub use error::{Error, Result};
pub use partitions::{Partition, YoungDiagram};
pub use rational::Rational;
