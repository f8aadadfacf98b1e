//! Numerical laboratory for Müntz spaces `M_Λ^p`.
//!
//! The crate evaluates moments of measures on `[0,1)`, the mixed-moment
//! sequence `D_n(p)` that dominates Carleson embeddings, closed-form norm
//! bounds for the synthesis operator `J_Λ`, and, for `p = 2`, the exact
//! singular values of truncated embeddings. Everything is carried in the log
//! domain so that exponents far beyond `10^{15}` stay representable.
//!
//! See the `examples/` directory for one runnable program per capability.

pub mod bounds;
pub mod cli;
pub mod counterexamples;
pub mod dnp;
pub mod error;
pub mod hilbert;
pub mod linalg;
pub mod logvalue;
pub mod lpnorm;
pub mod measures;
pub mod quadrature;
pub mod sequences;
pub mod specs;
pub mod verify;

pub use error::{Error, Result};
pub use logvalue::LogValue;
pub use measures::{Atom, Measure};
pub use sequences::ExponentSequence;
