//! Exact arithmetic and statistics for Farey-type sequences of the Hecke
//! triangle groups `G_q`.

pub mod bcz;
pub mod cli;
pub mod config;
pub mod context;
pub mod error;
pub mod field;
pub mod io;
pub mod nextterm;
pub mod poly;
pub mod stats;
pub mod sternbrocot;

pub use context::{HeckeContext, Mat2, PlaneVec};
pub use error::{Error, Result};
pub use field::{AlgNum, NumberField};
