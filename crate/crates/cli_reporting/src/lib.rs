//! Command-line front end: recipe files, the exact invariants and worked
//! examples, numeric curvature and Chern-Simons checks, and their reports.

pub mod error;
pub mod exact;
pub mod numeric;
pub mod recipe_file;
pub mod report;

pub use error::CliError;
pub use exact::{cmd_invariants, cmd_verify_example, match_example, ExampleValues};
pub use numeric::{cmd_numeric, parse_grid, NumericCheck, NumericOptions};
pub use recipe_file::RecipeFile;
pub use report::{Check, Report, Scalar};
