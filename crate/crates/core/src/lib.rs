pub mod analysis;
pub mod boundary;
pub mod config;
pub mod dynamics;
pub mod error;
pub mod exact;
pub mod io;
pub mod lattice;
pub mod rng;

pub use config::{BoundarySpec, Configuration};
pub use dynamics::{DirectedFace, Orientation, Schedule};
pub use error::{IceError, Result};
pub use lattice::{build_domain, FlipFamily, HexDomain, LatticeKind};
