//! Homology of the double cover of the 4-disk branched along a braided
//! surface, read as a Lefschetz fibration over the disk.
//!
//! The fiber is the double cover of the disk branched at `m` points. Its `H₁`
//! has the basis of arc lifts `e_1..e_{m-1}`, and each half-twist factor
//! contributes a vanishing cycle. `H₂` of the total space is the kernel of the
//! map sending each 2-handle to its vanishing cycle.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;
use serde_json::json;

use crate::burau::{burau_at_minus_one, skew_form};
use crate::error::{Error, Result};
use crate::factorization::Factorization;
use crate::intlinalg::{big_to_json, cokernel, integer_kernel, AbelianGroup, IntMatrix};
use crate::qform::{self, definiteness, represents, IntersectionForm, Representation};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberData {
    pub strands: usize,
    pub h1_rank: usize,
    pub genus: usize,
    pub boundary_components: usize,
    #[serde(skip)]
    pub skew_form: IntMatrix,
}

pub fn fiber_data(m: usize) -> Result<FiberData> {
    if m < 2 {
        return Err(Error::TooFewStrands { needed: 2, got: m });
    }
    let boundary_components = if m % 2 == 1 { 1 } else { 2 };
    Ok(FiberData {
        strands: m,
        h1_rank: m - 1,
        genus: (m - boundary_components) / 2,
        boundary_components,
        skew_form: skew_form(m - 1),
    })
}

/// Vanishing-cycle classes as the columns of an `(m−1) × k` matrix.
///
/// Factor `(w, i)` maps to row `i` of the Burau matrix of `w⁻¹` at `t = −1`,
/// i.e. the straight lift `e_i` carried along the arc. Signs are a consistent
/// but arbitrary choice.
pub fn cycle_classes(f: &Factorization) -> Result<IntMatrix> {
    let m = f.strands();
    if m < 2 {
        return Err(Error::TooFewStrands { needed: 2, got: m });
    }
    let cols: Vec<Vec<BigInt>> = f
        .factors()
        .iter()
        .map(|h| {
            let r = burau_at_minus_one(&h.conjugator().invert())?;
            Ok(r.row(h.index() - 1).to_vec())
        })
        .collect::<Result<_>>()?;
    Ok(IntMatrix::from_columns(m - 1, &cols))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverHomology {
    pub fiber: FiberData,
    /// Column `j` is the class of the `j`-th vanishing cycle.
    pub boundary_map: IntMatrix,
    /// Columns span `H₂`.
    pub h2_basis: IntMatrix,
    pub gram: IntersectionForm,
    pub h1: AbelianGroup,
    /// `|det gram|` when `H₁ = 0` (zero meaning infinite); `None` otherwise.
    pub boundary_h1_order: Option<BigInt>,
}

impl CoverHomology {
    pub fn h2_rank(&self) -> usize {
        self.h2_basis.cols()
    }

    pub fn det(&self) -> BigInt {
        self.gram.det()
    }

    pub fn represents_minus_two(&self) -> Option<bool> {
        match represents(&self.gram, &BigInt::from(-2), None) {
            Ok(r) => Some(r.is_yes()),
            Err(_) => None,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "m": self.fiber.strands,
            "k": self.boundary_map.cols(),
            "fiber": self.fiber,
            "boundary_map": self.boundary_map,
            "h2_rank": self.h2_rank(),
            "gram": self.gram.gram(),
            "h1": self.h1,
            "det": big_to_json(&self.det()),
            "boundary_h1_order": self.boundary_h1_order.as_ref().map(big_to_json),
            "represents_minus_two": self.represents_minus_two(),
        })
    }
}

/// Intersection form on `H₂` for a framing sign `epsilon`:
/// `Q(x, y) = −Σ x_j y_j + ε·Σ_{i<j} x_i y_j ⟨c_i, c_j⟩`.
pub fn gram_on_kernel(classes: &IntMatrix, kernel: &IntMatrix, epsilon: i32) -> IntMatrix {
    let k = classes.cols();
    let j = skew_form(classes.rows());
    let pairing = classes.transpose().mul(&j).and_then(|p| p.mul(classes)).expect("shapes");
    let r = kernel.cols();
    let eps = BigInt::from(epsilon);
    let mut g = IntMatrix::zeros(r, r);
    for a in 0..r {
        let x = kernel.column(a);
        for b in 0..r {
            let y = kernel.column(b);
            let mut s = BigInt::zero();
            for i in 0..k {
                if x[i].is_zero() {
                    continue;
                }
                s -= &x[i] * &y[i];
                for jj in i + 1..k {
                    if !y[jj].is_zero() && !pairing[(i, jj)].is_zero() {
                        s += &eps * &x[i] * &y[jj] * &pairing[(i, jj)];
                    }
                }
            }
            g[(a, b)] = s;
        }
    }
    g
}

pub fn cover_form(f: &Factorization, epsilon: i32) -> Result<CoverHomology> {
    let fiber = fiber_data(f.strands())?;
    let boundary_map = cycle_classes(f)?;
    let h2_basis = integer_kernel(&boundary_map);
    let g = gram_on_kernel(&boundary_map, &h2_basis, epsilon);
    if !g.is_symmetric() {
        return Err(Error::Invariant(format!("intersection form is not symmetric: {g}")));
    }
    let gram = IntersectionForm::new(g)?;
    let h1 = cokernel(&boundary_map);
    let boundary_h1_order = h1.is_trivial().then(|| gram.det().abs());
    Ok(CoverHomology {
        fiber,
        boundary_map,
        h2_basis,
        gram,
        h1,
        boundary_h1_order,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Rank(usize, usize),
    Determinant(BigInt, BigInt),
    /// Definite of opposite signs, or definite against indefinite.
    Sign(String, String),
    Represents { target: BigInt, first: bool, second: bool },
    Parity { first_even: bool },
    Minimum(BigInt, BigInt),
    ReducedForm(IntMatrix, IntMatrix),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let yn = |b: &bool| if *b { "yes" } else { "no" };
        match self {
            Witness::Rank(a, b) => write!(f, "rank {a} vs {b}"),
            Witness::Determinant(a, b) => write!(f, "determinant {a} vs {b}"),
            Witness::Sign(a, b) => write!(f, "{a} vs {b}"),
            Witness::Represents { target, first, second } => {
                write!(f, "represents {target}: {} vs {}", yn(first), yn(second))
            }
            Witness::Parity { first_even } => {
                let (a, b) = if *first_even { ("even", "odd") } else { ("odd", "even") };
                write!(f, "parity {a} vs {b}")
            }
            Witness::Minimum(a, b) => write!(f, "minimum {a} vs {b}"),
            Witness::ReducedForm(a, b) => write!(f, "reduced form {a} vs {b}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FormCertificate {
    Equivalent,
    Inequivalent(Witness),
    Undecided(String),
}

impl fmt::Display for FormCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormCertificate::Equivalent => write!(f, "equivalent"),
            FormCertificate::Inequivalent(w) => write!(f, "inequivalent ({w})"),
            FormCertificate::Undecided(why) => write!(f, "undecided ({why})"),
        }
    }
}

/// Compares cheap invariants first so that an inequivalence comes with the
/// most readable witness available.
pub fn forms_certificate(q1: &IntersectionForm, q2: &IntersectionForm) -> FormCertificate {
    use FormCertificate::*;
    if q1.rank() != q2.rank() {
        return Inequivalent(Witness::Rank(q1.rank(), q2.rank()));
    }
    let (d1, d2) = (q1.det(), q2.det());
    if d1 != d2 {
        return Inequivalent(Witness::Determinant(d1, d2));
    }
    let (s1, s2) = (definiteness(q1), definiteness(q2));
    if s1 != s2 {
        return Inequivalent(Witness::Sign(s1.to_string(), s2.to_string()));
    }
    if !s1.is_definite() {
        return Undecided(format!("both forms are {s1}"));
    }
    let target = BigInt::from(if s1 == qform::Definiteness::NegativeDefinite { -2 } else { 2 });
    let rep = |q| represents(q, &target, None).map(|r: Representation| r.is_yes());
    match (rep(q1), rep(q2)) {
        (Ok(a), Ok(b)) if a != b => {
            return Inequivalent(Witness::Represents {
                target,
                first: a,
                second: b,
            })
        }
        (Ok(_), Ok(_)) => {}
        (Err(e), _) | (_, Err(e)) => return Undecided(e.to_string()),
    }
    if q1.is_even() != q2.is_even() {
        return Inequivalent(Witness::Parity {
            first_even: q1.is_even(),
        });
    }
    if q1.rank() > 0 {
        match (qform::minimum(q1), qform::minimum(q2)) {
            (Ok(a), Ok(b)) if a != b => return Inequivalent(Witness::Minimum(a, b)),
            (Ok(_), Ok(_)) => {}
            (Err(e), _) | (_, Err(e)) => return Undecided(e.to_string()),
        }
    }
    match qform::equivalent(q1, q2) {
        Ok(true) => Equivalent,
        Ok(false) => match (qform::gauss_reduce_binary(q1), qform::gauss_reduce_binary(q2)) {
            (Ok(r1), Ok(r2)) => Inequivalent(Witness::ReducedForm(r1.form, r2.form)),
            _ => Undecided("reduction failed".into()),
        },
        Err(e) => Undecided(e.to_string()),
    }
}

pub fn forms_equivalent_certificate(
    f1: &Factorization,
    f2: &Factorization,
    epsilon: i32,
) -> Result<FormCertificate> {
    let c1 = cover_form(f1, epsilon)?;
    let c2 = cover_form(f2, epsilon)?;
    Ok(forms_certificate(&c1.gram, &c2.gram))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::BraidWord;
    use crate::factorization::{beta_family, HalfTwist};
    use crate::fixtures::Fixtures;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn fiber_examples() {
        let f = fiber_data(2).unwrap();
        assert_eq!((f.h1_rank, f.genus, f.boundary_components), (1, 0, 2));
        let f = fiber_data(3).unwrap();
        assert_eq!((f.h1_rank, f.genus, f.boundary_components), (2, 1, 1));
        for m in 2..20 {
            let f = fiber_data(m).unwrap();
            assert_eq!(2 * f.genus + f.boundary_components - 1, m - 1);
        }
        assert!(fiber_data(1).is_err());
    }

    #[test]
    fn straight_factor_is_standard_class() {
        let f = Factorization::new(4, vec![HalfTwist::straight(4, 2).unwrap()]).unwrap();
        assert_eq!(cycle_classes(&f).unwrap(), IntMatrix::from_i64(&[&[0], &[1], &[0]]));
    }

    #[test]
    fn twisted_factor_in_b3() {
        let h = HalfTwist::new(BraidWord::new(3, [2]).unwrap(), 1).unwrap();
        let f = Factorization::new(3, vec![h]).unwrap();
        let c = cycle_classes(&f).unwrap();
        assert_eq!(c.cols(), 1);
        assert!(!c.is_zero());
    }

    #[test]
    fn parallel_pair_has_square_minus_two() {
        let d = HalfTwist::straight(2, 1).unwrap();
        let f = Factorization::new(2, vec![d.clone(), d]).unwrap();
        let c = cover_form(&f, -1).unwrap();
        assert_eq!(c.h2_rank(), 1);
        assert_eq!(c.gram.gram(), &IntMatrix::from_i64(&[&[-2]]));
    }

    #[test]
    fn beta_zero() {
        let fx = Fixtures::default();
        let f1 = beta_family(0, 1, &fx).unwrap();
        let f2 = beta_family(0, 2, &fx).unwrap();
        let c1 = cover_form(&f1, fx.epsilon).unwrap();
        assert_eq!(c1.boundary_map.rank(), 2);
        assert_eq!(c1.h2_rank(), 2);
        assert!(c1.h1.is_trivial());
        assert_eq!(c1.boundary_h1_order, Some(big(31)));
        let q = IntersectionForm::from_i64(&[&[-4, -1], &[-1, -8]]).unwrap();
        assert!(qform::equivalent(&c1.gram, &q).unwrap());
        match forms_equivalent_certificate(&f1, &f2, fx.epsilon).unwrap() {
            FormCertificate::Inequivalent(Witness::Represents { first, second, .. }) => {
                assert!(!first && second)
            }
            other => panic!("unexpected certificate {other}"),
        }
        assert_eq!(
            forms_equivalent_certificate(&f1, &f1, fx.epsilon).unwrap(),
            FormCertificate::Equivalent
        );
    }

    #[test]
    fn too_few_cycles_gives_empty_h2() {
        let f = Factorization::new(4, vec![HalfTwist::straight(4, 1).unwrap()]).unwrap();
        let c = cover_form(&f, -1).unwrap();
        assert_eq!(c.h2_rank(), 0);
        assert_eq!(c.h1, AbelianGroup { free_rank: 2, torsion: vec![] });
        assert_eq!(c.boundary_h1_order, None);
    }
}
