//! Replays the checked-in fuzz corpus through the same entry points the
//! fuzz targets exercise, so seeds stay meaningful on stable toolchains.

use std::path::PathBuf;

use clap::Parser;
use lqnash::exactalg::parse_rational;
use lqnash_cli::sweep::SweepConfig;
use lqnash_cli::Cli;

fn seeds(target: &str) -> Vec<(String, Vec<u8>)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<(String, Vec<u8>)> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let p = e.unwrap().path();
            (
                p.file_name().unwrap().to_string_lossy().into_owned(),
                std::fs::read(&p).unwrap(),
            )
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn parse_rational_seeds() {
    let mut accepted = 0;
    for (name, data) in seeds("parse_rational") {
        let s = String::from_utf8(data).unwrap();
        if let Ok(x) = parse_rational(&s) {
            assert_eq!(parse_rational(&x.to_string()).unwrap(), x, "{name}");
            accepted += 1;
        }
    }
    assert!(accepted >= 5);
}

#[test]
fn sweep_config_seeds() {
    let mut planned = 0;
    for (name, data) in seeds("sweep_config") {
        let s = String::from_utf8(data).unwrap();
        if let Ok(plan) = SweepConfig::from_json(&s).and_then(|c| c.plan()) {
            assert!(plan.r2_values.windows(2).all(|w| w[0] < w[1]), "{name}");
            planned += 1;
        }
    }
    assert!(planned >= 3);
}

#[test]
fn cli_args_seeds() {
    for (name, data) in seeds("cli_args") {
        let s = String::from_utf8(data).unwrap();
        let cli = Cli::try_parse_from(std::iter::once("lqnash").chain(s.split('\0')));
        assert!(cli.is_ok(), "{name}: {:?}", cli.err());
    }
}
