pub mod descriptor;
pub mod diagram;
pub mod elementary;
pub mod error;
pub mod intmat;
pub mod lattice;

pub use descriptor::{Body, DegreeBound, MotifDescriptor, Piece, SeifertSymbol};
pub use elementary::{Ambient, ElementaryLink, Family};
pub use error::{Error, Result};
pub use lattice::Lattice;
