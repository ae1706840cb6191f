//! Enumeration of preferred extensions for abstract argumentation
//! frameworks, decomposed along strongly connected components and fanned
//! out over a worker pool, plus the supporting pieces: a brute-force
//! oracle, a random framework generator, and APX interchange support.

mod error;

pub mod apx;
pub mod base;
pub mod budget;
pub mod engine;
pub mod framework;
pub mod gen;
pub mod grounded;
pub mod labelling;
pub mod oracle;
pub mod sat;
pub mod scc;

pub use error::{Error, Result};
pub use framework::{ArgId, ArgSet, ArgumentationFramework};
pub use labelling::{Label, Labelling, LabellingSet};
