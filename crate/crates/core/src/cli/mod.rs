//! Artifact files and the `dmres` command line.

pub mod artifact;
mod lexer;
mod run;

pub use artifact::{parse, print, Artifact, Complex, FlagObject, MorphismObject, Named, Object};
pub use run::{execute, exit_code, main, run, Cli, Command, Execution, Outcome};
