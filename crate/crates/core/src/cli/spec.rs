//! JSON group specifications.
//!
//! ```json
//! { "name": "mu3", "cyclotomic_order": 3, "dimension": 1, "generators": [[["z^1"]]] }
//! ```
//!
//! A matrix entry is a string `"p/q"`, `"z^k"`, `"-z^k"`, `"p/q*z^k"`, an
//! integer, or an array of φ(N) power-basis coefficients.

use std::fmt;
use std::str::FromStr;

use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::exact::{CycMatrix, CycNum, CyclotomicField, Rational};

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    #[serde(default)]
    pub name: Option<String>,
    pub cyclotomic_order: u64,
    pub dimension: usize,
    pub generators: Vec<Vec<Vec<Entry>>>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Entry {
    /// `c·ζ^k`; a plain rational has k = 0.
    Power(Rational, i64),
    Coeffs(Vec<Rational>),
}

fn parse_entry(s: &str) -> std::result::Result<Entry, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("`{s}` is not a cyclotomic entry (expected p/q, z^k, or c*z^k)");
    let (coeff, power) = match t.find('z') {
        None => (t.as_str(), None),
        Some(i) => {
            let head = &t[..i];
            let head = head.strip_suffix('*').unwrap_or(head);
            let tail = &t[i + 1..];
            let k = if tail.is_empty() { 1 } else { tail.strip_prefix('^').ok_or_else(bad)?.parse::<i64>().map_err(|_| bad())? };
            (head, Some(k))
        }
    };
    let c = match (coeff, power) {
        ("" | "+", Some(_)) => Rational::one(),
        ("-", Some(_)) => Rational::from_int(-1),
        (c, _) => Rational::from_str(c).map_err(|_| bad())?,
    };
    Ok(Entry::Power(c, power.unwrap_or(0)))
}

struct EntryVisitor;

impl<'de> Visitor<'de> for EntryVisitor {
    type Value = Entry;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a string like \"1/2\" or \"z^2\", an integer, or an array of coefficients")
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Entry, E> {
        parse_entry(v).map_err(E::custom)
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Entry, E> {
        Ok(Entry::Power(Rational::from_int(v), 0))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Entry, E> {
        let v = i64::try_from(v).map_err(|_| E::custom("integer entry out of range"))?;
        self.visit_i64(v)
    }

    fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<Entry, A::Error> {
        let mut coeffs = Vec::new();
        while let Some(c) = seq.next_element::<Coefficient>()? {
            coeffs.push(c.0);
        }
        Ok(Entry::Coeffs(coeffs))
    }
}

impl<'de> Deserialize<'de> for Entry {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Entry, D::Error> {
        d.deserialize_any(EntryVisitor)
    }
}

/// A rational coefficient inside an array entry.
struct Coefficient(Rational);

impl<'de> Deserialize<'de> for Coefficient {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Coefficient, D::Error> {
        match Entry::deserialize(d)? {
            Entry::Power(c, 0) => Ok(Coefficient(c)),
            _ => Err(de::Error::custom("coefficient arrays hold rationals only")),
        }
    }
}

/// Syntax errors carry serde's line/column; shape errors carry the JSON path.
pub fn parse_group_spec(text: &str) -> Result<GroupSpec> {
    let spec: GroupSpec = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if spec.cyclotomic_order == 0 {
        return Err(Error::Parse("cyclotomic_order: must be at least 1".into()));
    }
    if spec.dimension == 0 {
        return Err(Error::Parse("dimension: must be at least 1".into()));
    }
    if spec.generators.is_empty() {
        return Err(Error::Parse("generators: at least one generator is required".into()));
    }
    let degree = CyclotomicField::get(spec.cyclotomic_order).degree();
    for (i, g) in spec.generators.iter().enumerate() {
        if g.len() != spec.dimension {
            return Err(Error::Parse(format!("generators[{i}]: expected {} rows, found {}", spec.dimension, g.len())));
        }
        for (r, row) in g.iter().enumerate() {
            if row.len() != spec.dimension {
                return Err(Error::Parse(format!(
                    "generators[{i}][{r}]: expected {} entries, found {}",
                    spec.dimension,
                    row.len()
                )));
            }
            for (c, e) in row.iter().enumerate() {
                if let Entry::Coeffs(v) = e {
                    if v.len() != degree {
                        return Err(Error::Parse(format!(
                            "generators[{i}][{r}][{c}]: expected {degree} coefficients for Q(zeta_{}), found {}",
                            spec.cyclotomic_order,
                            v.len()
                        )));
                    }
                }
            }
        }
    }
    Ok(spec)
}

impl GroupSpec {
    pub fn matrices(&self) -> Result<Vec<CycMatrix>> {
        let n = self.cyclotomic_order;
        self.generators
            .iter()
            .map(|g| {
                let rows = g
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|e| match e {
                                Entry::Power(c, k) => CycNum::zeta_pow(n, *k).scale(c),
                                Entry::Coeffs(v) => CycNum::from_power_coeffs(n, v),
                            })
                            .collect()
                    })
                    .collect();
                CycMatrix::from_rows(rows)
            })
            .collect()
    }
}
