pub mod cli;
pub mod closedform;
pub mod error;
pub mod gfpipe;
pub mod laws;
pub mod oracle;
pub mod pseries;

pub use error::{Error, Result};
