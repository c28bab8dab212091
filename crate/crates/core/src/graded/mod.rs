//! Graded free modules, homogeneous matrices, presented modules and
//! Hilbert functions.

mod hilbert;
mod matrix;
mod presented;

pub use hilbert::{dm_homology_hilbert, hilbert_function, HilbertFunction, Oracle};
pub use matrix::{EntryDefect, FreeModule, GradedMatrix};
pub use presented::{subquotient_presentation, PresentationSummary, PresentedModule, Subquotient};
