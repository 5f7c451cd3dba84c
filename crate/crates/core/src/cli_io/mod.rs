//! Input documents, reports and the command-line surface.
//!
//! Rationals are always strings "p/q" (or integers); indices are 1-based;
//! bracket keys "i,j" require i < j, and skew-symmetry fills in the rest.

mod commands;
mod document;
pub mod json;
mod report;

pub use commands::{run, Outcome, EXIT_OK, EXIT_UNMET, EXIT_USAGE};
pub use document::{format_rational, parse_matrix_document, parse_rational_str, sparse_cochain, AlgebraDocument, DeformationTerm, ModuleBlock, FORMAT_VERSION};
pub use report::{render_table, Finding, Report, Table, TableRow, TABLE_HEADER};
