//! Command-line surface: polynomial parsing, the JSON manifest format, and
//! subcommand dispatch.  The binary is a thin wrapper around [`execute`],
//! which takes explicit argv and output streams so tests can drive the full
//! command path in-process.

pub mod commands;
pub mod manifest;
pub mod parser;

pub use commands::{execute, EXIT_BUDGET, EXIT_INTERNAL, EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION};
pub use parser::{parse_poly, ParseError};

/// Convenience wrapper used by tests: run with string args, capture stdout
/// and stderr.
pub fn run_captured(args: &[&str]) -> (i32, String, String) {
    let argv: Vec<String> = std::iter::once("singeq".to_string())
        .chain(args.iter().map(|s| s.to_string()))
        .collect();
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = execute(&argv, &mut out, &mut err);
    (code, String::from_utf8_lossy(&out).into_owned(), String::from_utf8_lossy(&err).into_owned())
}
