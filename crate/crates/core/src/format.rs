//! JSON file formats for systems, words and rules.
//!
//! Integers are written as decimal strings; on input both strings and plain
//! JSON integers are accepted. Unknown keys are rejected.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::conversion::{CarryCertificate, LocalRule};
use crate::error::{Error, Result};
use crate::numsystem::{NumerationSystem, PositionedWord};
use crate::poly::IntPolynomial;
use crate::ring::{default_precision, RingContext, RingElement};

/// Arbitrary-precision integer as a JSON decimal string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Int(pub BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct IntVisitor;
        impl Visitor<'_> for IntVisitor {
            type Value = Int;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal integer string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Int, E> {
                Ok(Int(v.into()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Int, E> {
                Ok(Int(v.into()))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Int, E> {
                BigInt::from_str(v.trim())
                    .map(Int)
                    .map_err(|_| E::custom(format!("invalid integer {v:?}")))
            }
        }
        d.deserialize_any(IntVisitor)
    }
}

fn ints(v: &[BigInt]) -> Vec<Int> {
    v.iter().cloned().map(Int).collect()
}

fn bigs(v: &[Int]) -> Vec<BigInt> {
    v.iter().map(|i| i.0.clone()).collect()
}

/// Parses `"p/q"`, an integer, or a decimal such as `"0.000001"` or `"1e-6"`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Invalid(format!("invalid rational {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (int_part, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if frac.chars().any(|c| !c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac}");
    let n = BigInt::from_str(&digits).map_err(|_| bad())?;
    let scale = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    Ok(if scale >= 0 {
        BigRational::from_integer(n * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(n, num_traits::pow(ten, (-scale) as usize))
    })
}

pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses JSON, reporting failures by byte offset into `text`.
pub fn parse_json<T: for<'de> Deserialize<'de>>(text: &str, file: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        file: file.to_string(),
        offset: byte_offset(text, e.line(), e.column()),
        message: e.to_string(),
    })
}

fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    if line == 0 {
        return 0;
    }
    let start: usize = text.split_inclusive('\n').take(line - 1).map(str::len).sum();
    (start + column.saturating_sub(1)).min(text.len())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemFile {
    pub min_poly: Vec<Int>,
    pub base: Vec<Int>,
    pub alphabet: Vec<Vec<Int>>,
    #[serde(default)]
    pub embedding_index: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<String>,
}

impl SystemFile {
    pub fn precision(&self) -> Result<BigRational> {
        match &self.precision {
            Some(p) => {
                let q = parse_rational(p)?;
                if !q.is_positive() {
                    return Err(Error::Invalid("precision must be positive".into()));
                }
                Ok(q)
            }
            None => Ok(default_precision()),
        }
    }

    pub fn to_system(&self) -> Result<NumerationSystem> {
        self.to_system_with(None)
    }

    /// Builds the system, with `precision` overriding the file's value.
    pub fn to_system_with(&self, precision: Option<BigRational>) -> Result<NumerationSystem> {
        let precision = match precision {
            Some(p) => p,
            None => self.precision()?,
        };
        let ctx = RingContext::new(IntPolynomial::new(bigs(&self.min_poly)), precision)?;
        NumerationSystem::new(
            ctx,
            RingElement::new(bigs(&self.base)),
            self.alphabet.iter().map(|a| RingElement::new(bigs(a))).collect(),
            self.embedding_index,
        )
    }

    pub fn from_system(sys: &NumerationSystem) -> Self {
        SystemFile {
            min_poly: ints(sys.context().min_poly().coeffs()),
            base: ints(sys.base().coords()),
            alphabet: sys.alphabet().iter().map(|a| ints(a.coords())).collect(),
            embedding_index: sys.embedding_index(),
            precision: Some(format_rational(sys.context().precision())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DigitEntry {
    pub exp: i64,
    pub digit: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WordFile {
    pub digits: Vec<DigitEntry>,
}

impl WordFile {
    pub fn to_word(&self) -> Result<PositionedWord> {
        let mut seen = BTreeMap::new();
        for e in &self.digits {
            if seen.insert(e.exp, e.digit).is_some() {
                return Err(Error::Invalid(format!("exponent {} listed twice", e.exp)));
            }
        }
        Ok(PositionedWord::from_pairs(seen))
    }

    /// Most significant digit first.
    pub fn from_word(w: &PositionedWord) -> Self {
        WordFile {
            digits: w
                .iter()
                .rev()
                .map(|(exp, digit)| DigitEntry { exp, digit })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableEntry {
    pub window: Vec<usize>,
    pub out: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CarryEntry {
    pub window: Vec<usize>,
    pub carry: Vec<Int>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateFile {
    pub psi: Vec<CarryEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleFile {
    pub r: usize,
    pub t: usize,
    pub input_alphabet: Vec<Vec<Int>>,
    pub output_alphabet: Vec<Vec<Int>>,
    pub table: Vec<TableEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateFile>,
}

fn fill<T: Clone>(
    entries: impl Iterator<Item = (Vec<usize>, T)>,
    len: usize,
    nb: usize,
    what: &str,
) -> Result<Vec<T>> {
    let mut slots: Vec<Option<T>> = vec![None; crate::conversion::window_count(nb, len).ok_or_else(|| {
        Error::ShapeMismatch(format!("{what} has too many windows"))
    })?];
    for (window, value) in entries {
        if window.len() != len {
            return Err(Error::ShapeMismatch(format!(
                "{what} window {window:?} has length {}, expected {len}",
                window.len()
            )));
        }
        if let Some(&d) = window.iter().find(|&&d| d >= nb) {
            return Err(Error::DigitIndexOutOfRange { index: d, size: nb });
        }
        let idx = window.iter().fold(0, |acc, &d| acc * nb + d);
        if slots[idx].replace(value).is_some() {
            return Err(Error::ShapeMismatch(format!("{what} window {window:?} listed twice")));
        }
    }
    slots
        .into_iter()
        .enumerate()
        .map(|(i, s)| {
            s.ok_or_else(|| {
                Error::ShapeMismatch(format!(
                    "{what} misses window {:?}",
                    crate::conversion::digits_of(i, nb, len)
                ))
            })
        })
        .collect()
}

impl RuleFile {
    pub fn to_rule(&self) -> Result<(LocalRule, Option<CarryCertificate>)> {
        let b: Vec<RingElement> = self.input_alphabet.iter().map(|a| RingElement::new(bigs(a))).collect();
        let a: Vec<RingElement> = self.output_alphabet.iter().map(|a| RingElement::new(bigs(a))).collect();
        let p = self.r + self.t + 1;
        let nb = b.len();
        let table = fill(
            self.table.iter().map(|e| (e.window.clone(), e.out)),
            p,
            nb,
            "table",
        )?;
        let rule = LocalRule::new(b, a, self.r, self.t, table)?;
        let cert = match &self.certificate {
            Some(c) => Some(CarryCertificate::new(fill(
                c.psi.iter().map(|e| (e.window.clone(), RingElement::new(bigs(&e.carry)))),
                p - 1,
                nb,
                "certificate",
            )?)),
            None => None,
        };
        Ok((rule, cert))
    }

    pub fn from_rule(rule: &LocalRule, cert: Option<&CarryCertificate>) -> Self {
        let nb = rule.input_alphabet().len();
        let p = rule.window_len();
        RuleFile {
            r: rule.memory(),
            t: rule.anticipation(),
            input_alphabet: rule.input_alphabet().iter().map(|a| ints(a.coords())).collect(),
            output_alphabet: rule.output_alphabet().iter().map(|a| ints(a.coords())).collect(),
            table: rule
                .table()
                .iter()
                .enumerate()
                .map(|(i, &out)| TableEntry {
                    window: rule.window_digits(i),
                    out,
                })
                .collect(),
            certificate: cert.map(|c| CertificateFile {
                psi: c
                    .psi()
                    .iter()
                    .enumerate()
                    .map(|(i, carry)| CarryEntry {
                        window: crate::conversion::digits_of(i, nb, p - 1),
                        carry: ints(carry.coords()),
                    })
                    .collect(),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("1/1000000").unwrap(), default_precision());
        assert_eq!(parse_rational("0.000001").unwrap(), default_precision());
        assert_eq!(parse_rational("1e-6").unwrap(), default_precision());
        assert_eq!(parse_rational("3").unwrap(), BigRational::from_integer(3.into()));
        assert!(parse_rational("1/0").is_err());
        assert_eq!(format_rational(&default_precision()), "1/1000000");
    }

    #[test]
    fn system_roundtrip() {
        let text = r#"{"min_poly": ["-1", "-1", "1"], "base": [1, -2],
            "alphabet": [["-2","0"],["-1","0"],["0","0"],["1","0"],["2","0"],["3","0"]],
            "embedding_index": 0, "precision": "1/1000000"}"#;
        let f: SystemFile = parse_json(text, "sys.json").unwrap();
        let sys = f.to_system().unwrap();
        let back = SystemFile::from_system(&sys);
        assert_eq!(back.base, vec![Int(1.into()), Int((-2).into())]);
        let again: SystemFile = parse_json(&serde_json::to_string(&back).unwrap(), "x").unwrap();
        assert_eq!(again, back);
    }

    #[test]
    fn parse_errors_have_offsets() {
        let text = "{\n  \"min_poly\": [1,\n  oops\n}";
        match parse_json::<SystemFile>(text, "bad.json") {
            Err(Error::Parse { file, offset, .. }) => {
                assert_eq!(file, "bad.json");
                assert_eq!(&text[offset..offset + 1], "o");
            }
            other => panic!("{other:?}"),
        }
        let unknown = r#"{"min_poly": [], "base": [], "alphabet": [], "colour": 1}"#;
        assert!(matches!(parse_json::<SystemFile>(unknown, "u"), Err(Error::Parse { .. })));
    }

    #[test]
    fn rule_table_must_be_total() {
        let f = RuleFile {
            r: 0,
            t: 0,
            input_alphabet: vec![vec![Int(0.into())], vec![Int(1.into())]],
            output_alphabet: vec![vec![Int(0.into())], vec![Int(1.into())]],
            table: vec![TableEntry { window: vec![0], out: 0 }],
            certificate: None,
        };
        assert!(matches!(f.to_rule(), Err(Error::ShapeMismatch(_))));
    }
}
