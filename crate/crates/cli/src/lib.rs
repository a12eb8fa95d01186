//! Command-line front end: presentation files, presets, commands and reports.

pub mod build;
pub mod cli;
pub mod commands;
pub mod error;
pub mod format;
pub mod presets;
pub mod report;

use clap::Parser;

pub use error::CliError;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Parse `args` (program name first), run, print, and return the exit status.
pub fn main_with(args: Vec<String>) -> i32 {
    let cli = match cli::Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    let echo = args.iter().skip(1).cloned().collect::<Vec<_>>().join(" ");
    let report = match commands::run(&cli, echo) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let text = report.render();
    print!("{text}");
    if let Some(path) = &cli.common.out {
        if let Err(e) = std::fs::write(path, &text) {
            eprintln!("error: {}: {e}", path.display());
            return EXIT_USAGE;
        }
    }
    if report.passed() {
        EXIT_PASS
    } else {
        EXIT_CHECK_FAILED
    }
}
