pub mod audit;
pub mod error;
pub mod exact;
pub mod exp_series;
pub mod expand;
pub mod findiff;
pub mod oeis;
pub mod triangle;

pub use error::{Error, Result};
