#![no_main]

use clap::Parser;
use libfuzzer_sys::fuzz_target;
use vfive_cli::Cli;

// Argument parsing only: targets, quaternions and precision lists go through
// the same value parsers as on the command line.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let argv = std::iter::once("vfive").chain(text.split_whitespace());
    let _ = Cli::try_parse_from(argv);
});
