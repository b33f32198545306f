pub mod catalog;
pub mod error;
pub mod groupdesc;
pub mod lattice;
pub mod par;
pub mod rootsys;
pub mod snf;
pub mod surface;
pub mod wpoly;

pub use error::{Error, Result};
