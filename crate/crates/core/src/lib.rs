pub mod crit;
pub mod error;
pub mod fixtures;
pub mod gf;
pub mod lattice;
pub mod poly;
pub mod qpm;
pub mod rcode;
pub mod report;
pub mod wlat;

pub use error::{Error, Result};
