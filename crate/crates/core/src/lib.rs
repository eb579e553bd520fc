//! Finding binomials in polynomial ideals over the rationals.

pub mod artinian;
pub mod error;
pub mod groebner;
pub mod intlat;
pub mod linalg;
pub mod numeric;
pub mod pipeline;
pub mod poly;
pub mod tropical;

pub use error::{Error, Result};
