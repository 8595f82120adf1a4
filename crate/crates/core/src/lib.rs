//! Triangulated spheres, orientations, integral homology and simplicial
//! maps of prescribed degree.

pub mod bundle;
pub mod complex;
pub mod constructions;
pub mod disc;
pub mod error;
pub mod fixtures;
pub mod homology;
pub mod io;
pub mod label;
pub mod minimality;
pub mod orientation;
pub mod simplex;
pub mod simplicial_map;

pub use bundle::ConstructionBundle;
pub use complex::{Complex, FVector, PseudomanifoldReport};
pub use error::{Error, Result};
pub use label::VertexLabel;
pub use orientation::{OrientedComplex, Sign};
pub use simplex::Simplex;
pub use simplicial_map::VertexMap;
