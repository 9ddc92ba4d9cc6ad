//! Field-like Tambara functors for cyclic `p`-groups over finite fields and
//! rational function fields.

pub mod analysis;
pub mod aut;
pub mod census;
pub mod cli;
pub mod construct;
pub mod error;
pub mod field;
pub mod gring;
pub mod poly;
pub mod spec;
pub mod subfield;
pub mod validate;

pub use error::{Error, Result};
