//! Recovering the arc words of the family from its relator lists.
//!
//! The arcs are determined only through the relations they induce, so we
//! search conjugators by length, keep the half-twists whose relator matches,
//! and then discard candidates that break the commutation with `H(d₂)` or the
//! equality of the two boundary braids.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::factorization::{beta_family, HalfTwist};
use crate::fixtures::{ArcWord, FamilyArc, Fixtures};
use crate::presentation::{family_relators, find_arc_words};

#[derive(Debug, Clone, Serialize)]
pub struct PinReport {
    pub n: usize,
    pub max_len: usize,
    pub a_candidates: Vec<String>,
    pub b_candidates: Vec<String>,
    /// `(a, b)` pairs whose product commutes with `H(d₂)`.
    pub accepted_pairs: Vec<(String, String)>,
    pub c_candidates: Vec<String>,
    /// The fixture's arcs are among the accepted candidates.
    pub fixture_matches: bool,
    /// `product(β₁(n)) = product(β₂(n))` with the fixture's arcs.
    pub boundary_equal: bool,
}

fn same_twist(h: &HalfTwist, others: &[HalfTwist]) -> bool {
    let key = h.artin_key();
    others.iter().any(|o| o.artin_key() == key)
}

fn commutes_with_d2(a: &HalfTwist, b: &HalfTwist) -> Result<bool> {
    let m = a.strands();
    let ab = a.as_braid().compose(&b.as_braid())?;
    let d2 = HalfTwist::straight(m, 2)?.as_braid();
    ab.compose(&d2)?.braids_equal(&d2.compose(&ab)?)
}

/// Searches conjugators of length at most `max_len` for the arcs of the
/// `n`-th member and checks the fixture against the survivors.
pub fn pin_arcs(n: usize, max_len: usize, fixtures: &Fixtures) -> Result<PinReport> {
    let m = n + 3;
    let rel = family_relators(n, 1)?;
    let a = find_arc_words(&rel[0], 1, max_len)?;
    let b = find_arc_words(&rel[1], 1, max_len)?;
    let c = find_arc_words(&rel[3], n + 2, max_len)?;
    let mut accepted = Vec::new();
    for x in &a {
        for y in &b {
            if commutes_with_d2(x, y)? {
                accepted.push((x.clone(), y.clone()));
            }
        }
    }
    let fa = fixtures.a.on(m)?;
    let fb = fixtures.b.on(m)?;
    let fc = fixtures.c.at(n)?;
    let pair_ok = accepted
        .iter()
        .any(|(x, y)| x.artin_key() == fa.artin_key() && y.artin_key() == fb.artin_key());
    let c_ok = same_twist(&fc, &c) || fc.conjugator().len() > max_len;
    let p1 = beta_family(n, 1, fixtures)?.product();
    let p2 = beta_family(n, 2, fixtures)?.product();
    let show = |v: &[HalfTwist]| v.iter().map(|h| h.to_string()).collect::<Vec<_>>();
    Ok(PinReport {
        n,
        max_len,
        a_candidates: show(&a),
        b_candidates: show(&b),
        accepted_pairs: accepted.iter().map(|(x, y)| (x.to_string(), y.to_string())).collect(),
        c_candidates: show(&c),
        fixture_matches: pair_ok && c_ok,
        boundary_equal: p1.braids_equal(&p2)?,
    })
}

/// Fixture text for the shortest accepted candidates at `n = 0`, with the
/// `c_n` family given explicitly.
pub fn fixture_from_candidates(a: &HalfTwist, b: &HalfTwist, c: &FamilyArc, epsilon: i32) -> Result<String> {
    if a.index() != b.index() {
        return Err(Error::Fixture("a and b must share an index".into()));
    }
    let word = |w: &ArcWord| w.conjugator.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(" ");
    let aw = ArcWord {
        index: a.index(),
        conjugator: a.conjugator().letters().to_vec(),
    };
    let bw = ArcWord {
        index: b.index(),
        conjugator: b.conjugator().letters().to_vec(),
    };
    let prefix = c.prefix.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(" ");
    Ok(format!(
        "version = 1\n\n[arcs.a]\nindex = {}\nconjugator = \"{}\"\n\n[arcs.b]\nindex = {}\nconjugator = \"{}\"\n\n\
         [arcs.c]\nprefix = \"{prefix}\"\nrun_from = {}\nrun_to_offset = {}\nindex_offset = {}\n\n\
         [conventions]\nartin = \"left-to-right\"\nburau = \"reduced-row\"\nendpoint = \"smaller\"\n\
         factor_order = \"listed\"\nepsilon = {epsilon}\n",
        aw.index,
        word(&aw),
        bw.index,
        word(&bw),
        c.run_from,
        c.run_to_offset,
        c.index_offset,
    ))
}
