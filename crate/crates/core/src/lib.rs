pub mod chain;
pub mod elmendorf;
pub mod error;
pub mod fixtures;
pub mod group;
pub mod gset;
pub mod io;
pub mod linalg;
pub mod orbitcat;
pub mod simplicial;
pub mod whitehead;

pub use error::{Error, Result};
