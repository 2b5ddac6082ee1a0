use std::fs;
use std::path::PathBuf;

use clap::Parser;
use vfive_cli::Cli;

#[test]
fn cli_argument_seeds() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus/cli_args");
    let (mut ok, mut rejected) = (0, 0);
    for entry in fs::read_dir(dir).unwrap() {
        let text = fs::read_to_string(entry.unwrap().path()).unwrap();
        let argv = std::iter::once("vfive").chain(text.split_whitespace());
        match Cli::try_parse_from(argv) {
            Ok(_) => ok += 1,
            Err(_) => rejected += 1,
        }
    }
    assert_eq!((ok, rejected), (6, 1));
}
