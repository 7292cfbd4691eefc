pub mod error;
pub mod semifield;

pub use error::{Error, Result};
pub mod rootdata;
pub mod braid;
pub mod umonoid;
pub mod charts;
pub mod gmonoid;
pub mod matrixmodel;
pub mod flagcharts;
pub mod involutions;
pub mod tropical;
pub mod cli;
