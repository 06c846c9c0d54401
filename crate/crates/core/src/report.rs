//! The per-`n` ledger for the family `(β₁(n), β₂(n))` and its output formats.

use std::fmt::Write as _;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::burau::{alexander_of_closure, knot_determinant};
use crate::cover::{cover_form, forms_certificate, FormCertificate};
use crate::error::{Error, Result};
use crate::factorization::{beta_family, Factorization};
use crate::fixtures::Fixtures;
use crate::intlinalg::{big_to_json, IntMatrix};
use crate::presentation::{canonical_multiset, family_relators, tietze_simplify, vk_presentation, VkMode};
use crate::qform::{self, IntersectionForm};

/// Tietze eliminations allowed per presentation.
pub const TIETZE_BUDGET: usize = 10_000;

fn ser_big<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    big_to_json(x).serialize(s)
}

/// Expected determinant of both forms and of the closure.
pub fn expected_det(n: usize) -> BigInt {
    BigInt::from(16 * n as u64 + 31)
}

/// The printed form for the first variant, `[[−2n−4, −1], [−1, −8]]`.
pub fn expected_gram1(n: usize) -> IntersectionForm {
    let d = -2 * n as i64 - 4;
    IntersectionForm::from_i64(&[&[d, -1], &[-1, -8]]).expect("symmetric")
}

#[derive(Debug, Clone, Serialize)]
pub struct VariantReport {
    pub relators: Vec<String>,
    pub relators_match: bool,
    pub pi1: String,
    pub pi1_is_z: bool,
    pub gram: IntMatrix,
    #[serde(serialize_with = "ser_big")]
    pub det: BigInt,
    pub h1: String,
    pub h1_trivial: bool,
    pub h2_rank: usize,
    pub represents_minus_two: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyReport {
    pub n: usize,
    pub strands: usize,
    pub boundary_equal: bool,
    pub variant1: VariantReport,
    pub variant2: VariantReport,
    pub gram1_matches_expected: bool,
    pub forms_equivalent: bool,
    pub certificate: String,
    pub alexander: String,
    #[serde(serialize_with = "ser_big")]
    pub knot_determinant: BigInt,
    pub self_linking: Option<i64>,
    pub euler_char: i64,
    pub passed: bool,
}

fn variant_report(n: usize, f: &Factorization, variant: u8, epsilon: i32) -> Result<VariantReport> {
    let vk = vk_presentation(f, VkMode::Single);
    let printed = family_relators(n, variant).map_err(Error::at(n, "relators"))?;
    let relators_match = vk.canonical_relators() == canonical_multiset(&printed);
    let t = tietze_simplify(&vk, TIETZE_BUDGET);
    let cover = cover_form(f, epsilon).map_err(Error::at(n, "cover form"))?;
    Ok(VariantReport {
        relators: vk.relators().iter().map(|r| r.to_string()).collect(),
        relators_match,
        pi1: t.presentation.summary(),
        pi1_is_z: t.proves_infinite_cyclic(),
        gram: cover.gram.gram().clone(),
        det: cover.det(),
        h1: cover.h1.to_string(),
        h1_trivial: cover.h1.is_trivial(),
        h2_rank: cover.h2_rank(),
        represents_minus_two: cover.represents_minus_two(),
    })
}

pub fn report_for(n: usize, fixtures: &Fixtures) -> Result<FamilyReport> {
    let f1 = beta_family(n, 1, fixtures).map_err(Error::at(n, "family"))?;
    let f2 = beta_family(n, 2, fixtures).map_err(Error::at(n, "family"))?;
    let p1 = f1.product();
    let boundary_equal = p1.braids_equal(&f2.product()).map_err(Error::at(n, "boundary"))?;
    let v1 = variant_report(n, &f1, 1, fixtures.epsilon)?;
    let v2 = variant_report(n, &f2, 2, fixtures.epsilon)?;
    let q1 = IntersectionForm::new(v1.gram.clone())?;
    let q2 = IntersectionForm::new(v2.gram.clone())?;
    let certificate = forms_certificate(&q1, &q2);
    let forms_equivalent = certificate == FormCertificate::Equivalent;
    let gram1_matches_expected = qform::equivalent(&q1, &expected_gram1(n)).unwrap_or(false);
    let alexander = alexander_of_closure(&p1).map_err(Error::at(n, "alexander"))?;
    let kd = knot_determinant(&p1).map_err(Error::at(n, "knot determinant"))?;
    let inv = f1.closure_invariants();
    let det = expected_det(n);
    let passed = boundary_equal
        && v1.relators_match
        && v2.relators_match
        && v1.pi1_is_z
        && v2.pi1_is_z
        && gram1_matches_expected
        && v1.det.magnitude() == det.magnitude()
        && v2.det.magnitude() == det.magnitude()
        && kd == det
        && v1.represents_minus_two == Some(false)
        && v2.represents_minus_two == Some(true)
        && !forms_equivalent
        && v1.h1_trivial
        && v2.h1_trivial
        && v1.h2_rank == 2
        && v2.h2_rank == 2
        && inv.self_linking == Some(1)
        && inv.euler_char == -1;
    Ok(FamilyReport {
        n,
        strands: f1.strands(),
        boundary_equal,
        variant1: v1,
        variant2: v2,
        gram1_matches_expected,
        forms_equivalent,
        certificate: certificate.to_string(),
        alexander: alexander.to_string(),
        knot_determinant: kd,
        self_linking: inv.self_linking,
        euler_char: inv.euler_char,
        passed,
    })
}

/// Reports for every `n` in the range, computed in parallel and returned in
/// order of `n`.
pub fn family_report(ns: std::ops::Range<usize>, fixtures: &Fixtures) -> Result<Vec<FamilyReport>> {
    ns.into_par_iter().map(|n| report_for(n, fixtures)).collect()
}

pub fn all_passed(reports: &[FamilyReport]) -> bool {
    reports.iter().all(|r| r.passed)
}

#[derive(Serialize)]
struct JsonDoc<'a> {
    fixture_hash: &'a str,
    epsilon: i32,
    passed: bool,
    reports: &'a [FamilyReport],
}

pub fn to_json(reports: &[FamilyReport], fixtures: &Fixtures) -> String {
    let doc = JsonDoc {
        fixture_hash: &fixtures.hash,
        epsilon: fixtures.epsilon,
        passed: all_passed(reports),
        reports,
    };
    serde_json::to_string_pretty(&doc).expect("report serializes")
}

/// Column order of the CSV output. Changing it is a breaking change.
pub const CSV_COLUMNS: [&str; 21] = [
    "n",
    "strands",
    "boundary_equal",
    "relators_match_1",
    "relators_match_2",
    "pi1_1",
    "pi1_2",
    "gram_1",
    "gram_2",
    "det_1",
    "det_2",
    "knot_determinant",
    "represents_minus_two_1",
    "represents_minus_two_2",
    "forms_equivalent",
    "h1_1",
    "h1_2",
    "self_linking",
    "euler_char",
    "passed",
    "fixture_hash",
];

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map_or_else(|| "unsupported".into(), T::to_string)
}

pub fn to_csv(reports: &[FamilyReport], fixtures: &Fixtures) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_COLUMNS).expect("in-memory write");
    for r in reports {
        let (a, b) = (&r.variant1, &r.variant2);
        w.write_record([
            r.n.to_string(),
            r.strands.to_string(),
            r.boundary_equal.to_string(),
            a.relators_match.to_string(),
            b.relators_match.to_string(),
            a.pi1.clone(),
            b.pi1.clone(),
            a.gram.to_string(),
            b.gram.to_string(),
            a.det.to_string(),
            b.det.to_string(),
            r.knot_determinant.to_string(),
            opt(&a.represents_minus_two),
            opt(&b.represents_minus_two),
            r.forms_equivalent.to_string(),
            a.h1.clone(),
            b.h1.clone(),
            opt(&r.self_linking),
            r.euler_char.to_string(),
            r.passed.to_string(),
            fixtures.hash.clone(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

pub fn to_text(reports: &[FamilyReport], fixtures: &Fixtures) -> String {
    let mut s = String::new();
    writeln!(s, "fixture {} (epsilon {})", fixtures.short_hash(), fixtures.epsilon).unwrap();
    for r in reports {
        let (a, b) = (&r.variant1, &r.variant2);
        let flag = if r.passed { "ok  " } else { "FAIL" };
        writeln!(
            s,
            "{flag} n={:<2} det {} / {} / knot {}  gram1 {}  gram2 {}  -2: {} / {}  {}  pi1 {} {}",
            r.n,
            a.det,
            b.det,
            r.knot_determinant,
            a.gram,
            b.gram,
            opt(&a.represents_minus_two),
            opt(&b.represents_minus_two),
            r.certificate,
            a.pi1,
            b.pi1,
        )
        .unwrap();
    }
    let passed = reports.iter().filter(|r| r.passed).count();
    writeln!(s, "{passed}/{} passed", reports.len()).unwrap();
    s
}
