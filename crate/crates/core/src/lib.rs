pub mod action;
pub mod chart;
pub mod cli;
pub mod cone;
pub mod covering;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod perm;
pub mod pi1;
pub mod report;
pub mod simplicial;
pub mod workspace;

pub use error::{Error, Result};
