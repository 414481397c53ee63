//! Library side of the `courant` command: model files, suites, rendering.

pub mod emit;
pub mod render;
pub mod model_file;
pub mod suites;

pub use model_file::{load_file, load_str, write_model, LoadError, LoadedModel};
pub use suites::{run, run_with, Bracket, RunReport, Suite};
