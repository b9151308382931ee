//! Exact-arithmetic matroid toolkit.
//!
//! Matroids are rank oracles ([`Matroid`]) built from exact matrices,
//! gain graphs, incidence lists, or lazy constructions on other matroids.
//! On top of that sit flat enumeration ([`flats`]), k-degeneracy search
//! ([`degeneracy`]), incidence-inequality checks ([`verify`]) and the
//! instance file formats used by the command-line tool ([`io`]).

pub mod algebra;
pub mod corpus;
pub mod degeneracy;
pub mod elemset;
pub mod error;
pub mod flats;
pub mod generators;
pub mod instance;
pub mod io;
pub mod matroid;
pub mod report;
pub mod verify;

pub use elemset::ElemSet;
pub use error::{Error, Result};
pub use instance::{Instance, InstanceMeta, Representability};
pub use matroid::{GroundSet, Kind, Matroid};
