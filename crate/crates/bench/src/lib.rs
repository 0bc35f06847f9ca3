//! Shared inputs for the benchmarks.

use std::path::PathBuf;

use paradd::format::{parse_json, RuleFile, SystemFile};
use paradd::{CarryCertificate, LocalRule, NumerationSystem, PositionedWord};

fn read(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub fn system(name: &str) -> NumerationSystem {
    let f: SystemFile = parse_json(&read(name), name).expect("fixture parses");
    f.to_system().expect("fixture system is valid")
}

pub fn rule(name: &str) -> (LocalRule, CarryCertificate) {
    let f: RuleFile = parse_json(&read(name), name).expect("fixture parses");
    let (rule, cert) = f.to_rule().expect("fixture rule is valid");
    (rule, cert.expect("fixture rule has a certificate"))
}

/// `len` digits starting at exponent 0, cycling through the alphabet with stride `step`.
pub fn word(sys: &NumerationSystem, len: usize, step: usize) -> PositionedWord {
    let n = sys.alphabet().len();
    PositionedWord::from_pairs((0..len).map(|i| (i as i64, (i * step + 1) % n)))
}
