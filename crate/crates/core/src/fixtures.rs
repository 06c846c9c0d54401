//! Pinned arc words and convention constants, loaded from a TOML fixture.
//!
//! The shipped fixture is embedded at compile time; a different file can be
//! supplied at run time. Reports carry the SHA-256 of the fixture bytes.

use serde::Deserialize;
use sha2::{Digest, Sha256};

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::factorization::HalfTwist;

pub const DEFAULT_FIXTURE: &str = include_str!("../fixtures/arcs.toml");

#[derive(Debug, Clone, Deserialize)]
struct RawFixture {
    version: u32,
    arcs: RawArcs,
    conventions: RawConventions,
}

#[derive(Debug, Clone, Deserialize)]
struct RawArcs {
    a: RawArc,
    b: RawArc,
    c: RawFamilyArc,
}

#[derive(Debug, Clone, Deserialize)]
struct RawArc {
    index: usize,
    conjugator: String,
}

#[derive(Debug, Clone, Deserialize)]
struct RawFamilyArc {
    prefix: String,
    run_from: usize,
    run_to_offset: usize,
    index_offset: usize,
}

#[derive(Debug, Clone, Deserialize)]
struct RawConventions {
    artin: String,
    burau: String,
    endpoint: String,
    factor_order: String,
    epsilon: i32,
}

/// Conjugator and index of a fixed arc, valid on any number of strands large
/// enough to contain it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcWord {
    pub index: usize,
    pub conjugator: Vec<i32>,
}

impl ArcWord {
    pub fn on(&self, strands: usize) -> Result<HalfTwist> {
        HalfTwist::new(BraidWord::new(strands, self.conjugator.clone())?, self.index)
    }
}

/// The `c_n` arc: `prefix · σ_{run_from} ⋯ σ_{n + run_to_offset}`, index `n + index_offset`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyArc {
    pub prefix: Vec<i32>,
    pub run_from: usize,
    pub run_to_offset: usize,
    pub index_offset: usize,
}

impl FamilyArc {
    pub fn at(&self, n: usize) -> Result<HalfTwist> {
        let strands = n + 3;
        let mut letters = self.prefix.clone();
        letters.extend((self.run_from..=n + self.run_to_offset).map(|g| g as i32));
        HalfTwist::new(BraidWord::new(strands, letters)?, n + self.index_offset)
    }
}

#[derive(Debug, Clone)]
pub struct Fixtures {
    pub version: u32,
    pub a: ArcWord,
    pub b: ArcWord,
    pub c: FamilyArc,
    /// Sign in front of the ordered intersection term of the Gram formula.
    pub epsilon: i32,
    pub hash: String,
}

fn parse_letters(s: &str) -> Result<Vec<i32>> {
    s.split_whitespace()
        .map(|t| {
            t.parse::<i32>()
                .ok()
                .filter(|&g| g != 0)
                .ok_or_else(|| Error::Fixture(format!("bad braid letter {t:?}")))
        })
        .collect()
}

impl Fixtures {
    pub fn parse(text: &str) -> Result<Fixtures> {
        let raw: RawFixture = toml::from_str(text).map_err(|e| Error::Fixture(e.to_string()))?;
        let conv = &raw.conventions;
        let expect = |field: &str, got: &str, want: &str| {
            if got == want {
                Ok(())
            } else {
                Err(Error::Fixture(format!(
                    "convention {field} = {got:?} is not supported (expected {want:?})"
                )))
            }
        };
        expect("artin", &conv.artin, "left-to-right")?;
        expect("burau", &conv.burau, "reduced-row")?;
        expect("endpoint", &conv.endpoint, "smaller")?;
        expect("factor_order", &conv.factor_order, "listed")?;
        if conv.epsilon.abs() != 1 {
            return Err(Error::Fixture("epsilon must be +1 or -1".into()));
        }
        let arc = |r: &RawArc| -> Result<ArcWord> {
            if r.index == 0 {
                return Err(Error::Fixture("arc index must be positive".into()));
            }
            Ok(ArcWord {
                index: r.index,
                conjugator: parse_letters(&r.conjugator)?,
            })
        };
        let hash = hex::encode(Sha256::digest(text.as_bytes()));
        Ok(Fixtures {
            version: raw.version,
            a: arc(&raw.arcs.a)?,
            b: arc(&raw.arcs.b)?,
            c: FamilyArc {
                prefix: parse_letters(&raw.arcs.c.prefix)?,
                run_from: raw.arcs.c.run_from,
                run_to_offset: raw.arcs.c.run_to_offset,
                index_offset: raw.arcs.c.index_offset,
            },
            epsilon: conv.epsilon,
            hash,
        })
    }

    pub fn load(path: &std::path::Path) -> Result<Fixtures> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Fixture(format!("{}: {e}", path.display())))?;
        Fixtures::parse(&text)
    }

    /// Short form of the content hash for report headers.
    pub fn short_hash(&self) -> &str {
        &self.hash[..12]
    }
}

impl Default for Fixtures {
    fn default() -> Self {
        Fixtures::parse(DEFAULT_FIXTURE).expect("shipped fixture parses")
    }
}
