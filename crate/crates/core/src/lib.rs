pub mod cli;
pub mod equations;
pub mod error;
pub mod free_solvable;
pub mod group;
pub mod group_ring;
pub mod linalg;
pub mod magnus;
pub mod verify;
pub mod word;
pub mod wreath;

pub use error::{Error, Result};
