//! Front end for single points, parameter scans and validation suites.

pub mod output;
pub mod rows;
pub mod validate;

pub use output::{format_number, write_csv, write_json, CSV_HEADER};
pub use rows::{run_compute, run_scan, OutputKind, OutputRow, ScanSpec};
pub use validate::{run_validate, CheckResult, Level, ValidationReport};

use xx_entropy::Error;

/// Process exit code for a library error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Domain(_) | Error::Size(_) => 1,
        Error::Computational(_) | Error::Integrity(_) => 2,
    }
}

pub const EXIT_VALIDATION_FAILED: i32 = 3;
