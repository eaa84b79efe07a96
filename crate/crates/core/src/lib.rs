//! Theory presentation combinators.
//!
//! Parses `.tpc` modules, type-checks combinator expressions, runs the
//! constructions (rename, extend, combine, mixin) on theory presentations
//! of a small dependently typed kernel, and produces flattened theories
//! together with the induced embeddings and views.

pub mod cli;
pub mod combinators;
pub mod elaborator;
pub mod error;
pub mod kernel;
pub mod morphism;
pub mod presentation;
pub mod syntax;

pub use error::{Error, Pos, Result};
