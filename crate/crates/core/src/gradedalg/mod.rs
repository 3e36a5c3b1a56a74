//! Presentations of connected graded algebras and their degreewise realization.

pub mod expr;
pub mod fdalg;
pub mod presentation;
pub mod quotient;

pub use expr::{parse_expr, render_word, word_degree, NCPoly, Word};
pub use fdalg::{FdAlgebra, FdAlgebraFile};
pub use presentation::{GeneratorSpec, Presentation, PresentationFile};
pub use quotient::{DegreeBasis, GradedQuotient};
