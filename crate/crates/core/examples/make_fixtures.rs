//! Regenerates the JSON fixtures under `fixtures/`.
//!
//! cargo run -p paradd-core --example make_fixtures

use std::path::{Path, PathBuf};

use paradd::conversion::{search_rule, sum_alphabet, SearchLimits};
use paradd::format::{RuleFile, SystemFile, WordFile};
use paradd::numsystem::{build_system, integer_system};
use paradd::ring::default_precision;
use paradd::{CarryCertificate, LocalRule, NumerationSystem, PositionedWord, RingElement};

fn write<T: serde::Serialize>(dir: &Path, name: &str, value: &T) {
    let text = serde_json::to_string_pretty(value).unwrap() + "\n";
    std::fs::write(dir.join(name), text).unwrap();
    println!("wrote {name}");
}

fn int(v: i64) -> num_bigint::BigInt {
    v.into()
}

fn threshold(v: &num_bigint::BigInt, at: i64) -> i64 {
    if *v >= int(at) {
        1
    } else if *v <= int(-at) {
        -1
    } else {
        0
    }
}

fn avizienis() -> (NumerationSystem, LocalRule, CarryCertificate) {
    let sys = integer_system(10, -6..=6).unwrap();
    let b = sum_alphabet(sys.alphabet());
    let psi = b.iter().map(|w| RingElement::from_i64(&[threshold(&w.coords()[0], 6)])).collect();
    let cert = CarryCertificate::new(psi);
    let rule =
        LocalRule::from_certificate(sys.context(), sys.base(), b, sys.alphabet().to_vec(), 1, 0, &cert).unwrap();
    (sys, rule, cert)
}

/// Base `√5` in `Z[√5]`: carries skip one position, so the carry window
/// `(w_j, w_(j-1))` holds `c(w_(j-1)) + c(w_j) √5`.
fn sqrt5() -> (NumerationSystem, LocalRule, CarryCertificate) {
    let coords = |v: &[i64]| v.iter().map(|&x| int(x)).collect::<Vec<_>>();
    let sys = build_system(
        paradd::IntPolynomial::from_i64(&[-5, 0, 1]),
        coords(&[0, 1]),
        (-3..=3).map(|a| coords(&[a, 0])).collect(),
        1,
        default_precision(),
    )
    .unwrap();
    let b = sum_alphabet(sys.alphabet());
    let nb = b.len();
    let psi = (0..nb * nb)
        .map(|i| {
            let (wj, wj1) = (&b[i / nb].coords()[0], &b[i % nb].coords()[0]);
            RingElement::from_i64(&[threshold(wj1, 3), threshold(wj, 3)])
        })
        .collect();
    let cert = CarryCertificate::new(psi);
    let rule =
        LocalRule::from_certificate(sys.context(), sys.base(), b, sys.alphabet().to_vec(), 2, 0, &cert).unwrap();
    (sys, rule, cert)
}

fn main() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    std::fs::create_dir_all(&dir).unwrap();

    let (sys, rule, cert) = avizienis();
    write(&dir, "avizienis_system.json", &SystemFile::from_system(&sys));
    write(&dir, "avizienis_rule.json", &RuleFile::from_rule(&rule, Some(&cert)));

    let (sys, rule, cert) = sqrt5();
    write(&dir, "sqrt5_system.json", &SystemFile::from_system(&sys));
    write(&dir, "sqrt5_rule.json", &RuleFile::from_rule(&rule, Some(&cert)));

    let minus_sqrt5 = build_system(
        paradd::IntPolynomial::from_i64(&[-1, -1, 1]),
        vec![int(1), int(-2)],
        (-2..=3).map(|a| vec![int(a), int(0)]).collect(),
        0,
        default_precision(),
    )
    .unwrap();
    write(&dir, "minus_sqrt5_system.json", &SystemFile::from_system(&minus_sqrt5));

    let limits = SearchLimits { r_max: 2, t_max: 2, carry_bound: 2 };
    for (name, digits) in [("binary_012", 0..=2), ("binary_signed", -1..=1), ("binary_01", 0..=1)] {
        let sys = integer_system(2, digits).unwrap();
        write(&dir, &format!("{name}_system.json"), &SystemFile::from_system(&sys));
        if let Some((rule, cert)) = search_rule(&sys, limits).unwrap() {
            write(&dir, &format!("{name}_rule.json"), &RuleFile::from_rule(&rule, Some(&cert)));
        }
    }

    let mut no_zero = SystemFile::from_system(&integer_system(10, -6..=6).unwrap());
    no_zero.alphabet.retain(|a| a[0].0 != int(0));
    write(&dir, "no_zero_system.json", &no_zero);

    // base ω where ω is a Salem number
    let salem = paradd::IntPolynomial::from_i64(&[1, -1, -1, -1, 1]);
    let salem_sys = (0..4)
        .find_map(|k| {
            build_system(
                salem.clone(),
                vec![int(0), int(1), int(0), int(0)],
                (-1..=1).map(|a| vec![int(a), int(0), int(0), int(0)]).collect(),
                k,
                default_precision(),
            )
            .ok()
        })
        .unwrap();
    write(&dir, "salem_system.json", &SystemFile::from_system(&salem_sys));

    // 66.5 over {-6..6}
    let word = PositionedWord::from_pairs([(1, 12), (0, 12), (-1, 11)]);
    write(&dir, "word.json", &WordFile::from_word(&word));
}
