//! Joinless codes and finite-table right-ideal morphisms on the n-fold
//! Cantor space, the monoid they generate, its word problem, and a bridge
//! from acyclic boolean circuits to that word problem.
//!
//! Values are immutable and every operation is a pure function, so anything
//! here may be shared across threads freely.

pub mod circuit;
pub mod code;
pub mod error;
pub mod monoid;
pub mod oracle;
pub mod table;
pub mod word;

pub use code::{Code, DEFAULT_CAP};
pub use error::{Error, Result};
pub use monoid::{GeneratorSet, MonoidWord};
pub use table::{MorphismClass, Table};
pub use word::{Context, Side, Word};
