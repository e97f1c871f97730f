pub mod cli;
pub mod error;
pub mod exact;
pub mod ideals;
pub mod liealg;
pub mod parse;
pub mod pbw;
pub mod poly;
pub mod report;
pub mod reps;
pub mod starprod;
pub mod walg;

pub use error::{Error, Result};
