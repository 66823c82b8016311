//! Library half of the CLI: JSON document types shared with tests.

pub mod document;
