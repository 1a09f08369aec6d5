//! Generalized suffix array construction for collections of highly similar
//! strings, driven by a compressed representation of matching statistics
//! against a reference.
//!
//! The pipeline: index the (augmented) reference, stream per-document
//! matching statistics into compact insert-head records, bucket and sort the
//! S*-suffixes through those records, and induce the full generalized suffix
//! array with two linear scans.

pub mod builder;
pub mod error;
pub mod ingest;
pub mod kernels;
pub mod matching;
pub mod oracle;
pub mod order;
pub mod reference;
pub mod serialize;
pub mod store;
pub mod text;

pub use error::{Error, Result};
pub use text::{ByteText, Collection, IntText, TERM_DOC, TERM_REF};
