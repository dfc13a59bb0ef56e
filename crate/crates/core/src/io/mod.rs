//! Output tables (CSV and JSON) and SVG figures.

pub mod svg;
pub mod table;

pub use table::{Cell, Format, Table};
