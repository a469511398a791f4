#![no_main]

use clap::Parser;
use libfuzzer_sys::fuzz_target;
use lqnash_cli::Cli;

// Argument vectors are NUL-separated.
fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let args = std::iter::once("lqnash").chain(s.split('\0'));
    let Ok(cli) = Cli::try_parse_from(args) else { return };
    if let lqnash_cli::Command::Solve { game, .. } | lqnash_cli::Command::GroebnerCheck { game } = &cli.command {
        let _ = game.params();
    }
});
