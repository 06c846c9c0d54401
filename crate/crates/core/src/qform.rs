//! Integral symmetric bilinear forms of low rank.
//!
//! Representability is decided by Fincke–Pohst enumeration over exact
//! rationals, so a `No` answer is a proof of exhaustion. Equivalence is
//! decided for definite forms of rank at most 2 via Gauss reduction under
//! `GL₂(ℤ)`; higher ranks are reported as unsupported.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::intlinalg::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntersectionForm {
    gram: IntMatrix,
    #[serde(skip_serializing_if = "Option::is_none")]
    basis_labels: Option<Vec<String>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Definiteness {
    NegativeDefinite,
    PositiveDefinite,
    Indefinite,
    Degenerate,
}

impl Definiteness {
    pub fn is_definite(self) -> bool {
        matches!(self, Definiteness::NegativeDefinite | Definiteness::PositiveDefinite)
    }
}

impl fmt::Display for Definiteness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Definiteness::NegativeDefinite => "negative definite",
            Definiteness::PositiveDefinite => "positive definite",
            Definiteness::Indefinite => "indefinite",
            Definiteness::Degenerate => "degenerate",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Representation {
    Yes(Vec<BigInt>),
    No,
}

impl Representation {
    pub fn is_yes(&self) -> bool {
        matches!(self, Representation::Yes(_))
    }
}

/// Reduced binary form together with a unimodular `U` such that
/// `Uᵀ · Q · U = form`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedBinary {
    pub form: IntMatrix,
    pub transform: IntMatrix,
}

impl IntersectionForm {
    pub fn new(gram: IntMatrix) -> Result<Self> {
        if !gram.is_symmetric() {
            return Err(Error::Shape("intersection form must be square and symmetric".into()));
        }
        Ok(IntersectionForm {
            gram,
            basis_labels: None,
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        IntersectionForm::new(IntMatrix::from_i64(rows))
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.rank() {
            return Err(Error::Shape("one label per basis vector".into()));
        }
        self.basis_labels = Some(labels);
        Ok(self)
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.basis_labels.as_deref()
    }

    /// Dimension of the underlying lattice.
    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn det(&self) -> BigInt {
        self.gram.det().expect("square")
    }

    pub fn value(&self, x: &[BigInt]) -> BigInt {
        self.gram.bilinear(x, x)
    }

    /// Even iff every diagonal entry is even.
    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram[(i, i)].is_even())
    }

    /// Change of basis `Uᵀ·Q·U`.
    pub fn transformed(&self, u: &IntMatrix) -> Result<IntersectionForm> {
        let g = u.transpose().mul(&self.gram)?.mul(u)?;
        IntersectionForm::new(g)
    }

    fn negated(&self) -> IntersectionForm {
        IntersectionForm {
            gram: self.gram.neg(),
            basis_labels: self.basis_labels.clone(),
        }
    }
}

impl fmt::Display for IntersectionForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.gram.fmt(f)
    }
}

fn leading_minor(g: &IntMatrix, k: usize) -> BigInt {
    let idx: Vec<usize> = (0..k).collect();
    g.select_rows(&idx).select_columns(&idx).det().expect("square")
}

/// Sylvester's criterion. The empty form counts as positive definite.
pub fn definiteness(q: &IntersectionForm) -> Definiteness {
    let n = q.rank();
    if n > 0 && q.det().is_zero() {
        return Definiteness::Degenerate;
    }
    let minors: Vec<BigInt> = (1..=n).map(|k| leading_minor(&q.gram, k)).collect();
    if minors.iter().all(|d| d.is_positive()) {
        return Definiteness::PositiveDefinite;
    }
    let alternating = minors
        .iter()
        .enumerate()
        .all(|(k, d)| if k % 2 == 0 { d.is_negative() } else { d.is_positive() });
    if alternating {
        Definiteness::NegativeDefinite
    } else {
        Definiteness::Indefinite
    }
}

/// `Q(x) = Σ_i q_ii (x_i + Σ_{j>i} q_ij x_j)²` for a positive definite gram.
struct Cholesky {
    q: Vec<Vec<BigRational>>,
}

impl Cholesky {
    fn new(g: &IntMatrix) -> Cholesky {
        let n = g.rows();
        let mut q: Vec<Vec<BigRational>> = (0..n)
            .map(|i| (0..n).map(|j| BigRational::from_integer(g[(i, j)].clone())).collect())
            .collect();
        for i in 0..n {
            for j in i + 1..n {
                q[j][i] = q[i][j].clone();
                q[i][j] = &q[i][j] / &q[i][i];
            }
            for k in i + 1..n {
                for l in k..n {
                    let d = &q[k][i] * &q[i][l];
                    q[k][l] -= d;
                }
            }
        }
        Cholesky { q }
    }

    /// Visits every `x` with `Q(x) ≤ bound` (zero included); stops when the
    /// visitor returns true and reports whether it did.
    fn enumerate(&self, bound: &BigInt, visit: &mut dyn FnMut(&[BigInt], &BigInt) -> bool) -> bool {
        let n = self.q.len();
        let mut x = vec![BigInt::zero(); n];
        let rem = BigRational::from_integer(bound.clone());
        self.descend(n, &rem, &mut x, bound, visit)
    }

    fn descend(
        &self,
        level: usize,
        rem: &BigRational,
        x: &mut Vec<BigInt>,
        bound: &BigInt,
        visit: &mut dyn FnMut(&[BigInt], &BigInt) -> bool,
    ) -> bool {
        if level == 0 {
            let used = bound - rem.to_integer();
            return visit(x, &used);
        }
        let i = level - 1;
        let mut center = BigRational::zero();
        for (qij, xj) in self.q[i].iter().zip(x.iter()).skip(i + 1) {
            if !xj.is_zero() {
                center -= qij * BigRational::from_integer(xj.clone());
            }
        }
        let qii = &self.q[i][i];
        // |x_i − center| ≤ sqrt(rem / q_ii); widen by one and filter exactly
        let r = (rem / qii).floor().to_integer().max(BigInt::zero()).sqrt() + BigInt::one();
        let lo = (&center - BigRational::from_integer(r.clone())).ceil().to_integer();
        let hi = (&center + BigRational::from_integer(r)).floor().to_integer();
        let mut xi = lo;
        while xi <= hi {
            let d = BigRational::from_integer(xi.clone()) - &center;
            let term = qii * &d * &d;
            if &term <= rem {
                x[i] = xi.clone();
                let next = rem - term;
                if self.descend(i, &next, x, bound, visit) {
                    return true;
                }
            }
            xi += 1;
        }
        x[i] = BigInt::zero();
        false
    }
}

/// Is `target = xᵀQx` solvable over the integers?
///
/// Definite forms are enumerated exhaustively and `bound` is ignored. Other
/// forms need a `bound`, which restricts the search to the box
/// `|x_i| ≤ bound`; without one the call is unsupported.
pub fn represents(q: &IntersectionForm, target: &BigInt, bound: Option<u64>) -> Result<Representation> {
    let n = q.rank();
    if target.is_zero() {
        return Ok(Representation::Yes(vec![BigInt::zero(); n]));
    }
    if n == 0 {
        return Ok(Representation::No);
    }
    let def = definiteness(q);
    let (p, t) = match def {
        Definiteness::PositiveDefinite => (q.clone(), target.clone()),
        Definiteness::NegativeDefinite => (q.negated(), -target),
        _ => {
            return match bound {
                Some(b) => Ok(box_search(q, target, b)),
                None => Err(Error::Unsupported(format!(
                    "representability for a {def} form needs a search bound"
                ))),
            }
        }
    };
    if t.is_negative() {
        return Ok(Representation::No);
    }
    let chol = Cholesky::new(&p.gram);
    let mut found = None;
    chol.enumerate(&t, &mut |x, v| {
        if *v == t {
            found = Some(x.to_vec());
            true
        } else {
            false
        }
    });
    Ok(found.map_or(Representation::No, |x| Representation::Yes(sign_normalized(x))))
}

/// `Q(−x) = Q(x)`: report witnesses with a positive leading coordinate.
fn sign_normalized(mut x: Vec<BigInt>) -> Vec<BigInt> {
    if x.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) {
        x.iter_mut().for_each(|c| *c = -&*c);
    }
    x
}

fn box_search(q: &IntersectionForm, target: &BigInt, bound: u64) -> Representation {
    let n = q.rank();
    let b = bound as i64;
    let mut x = vec![-b; n];
    loop {
        let v: Vec<BigInt> = x.iter().map(|&c| BigInt::from(c)).collect();
        if q.value(&v) == *target {
            return Representation::Yes(sign_normalized(v));
        }
        let mut i = 0;
        loop {
            if i == n {
                return Representation::No;
            }
            if x[i] < b {
                x[i] += 1;
                break;
            }
            x[i] = -b;
            i += 1;
        }
    }
}

/// Smallest `|Q(x)|` over nonzero `x`, for definite forms.
pub fn minimum(q: &IntersectionForm) -> Result<BigInt> {
    let p = match definiteness(q) {
        Definiteness::PositiveDefinite => q.clone(),
        Definiteness::NegativeDefinite => q.negated(),
        d => return Err(Error::Unsupported(format!("minimum of a {d} form"))),
    };
    let n = p.rank();
    if n == 0 {
        return Err(Error::Unsupported("minimum of the zero lattice".into()));
    }
    let diag_min = (0..n).map(|i| p.gram[(i, i)].clone()).min().expect("n > 0");
    let mut best = diag_min.clone();
    Cholesky::new(&p.gram).enumerate(&diag_min, &mut |x, v| {
        if x.iter().any(|c| !c.is_zero()) && *v < best {
            best = v.clone();
        }
        false
    });
    Ok(best)
}

/// Round `b / a` to the nearest integer, ties toward −∞ of the remainder.
fn nearest_quotient(b: &BigInt, a: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    (&two * b + a).div_floor(&(&two * a))
}

/// Gauss reduction of a definite binary form under `GL₂(ℤ)`.
///
/// Negative definite input is negated, reduced to `0 ≤ 2b ≤ a ≤ c` and
/// negated back, so the output has the input's sign.
pub fn gauss_reduce_binary(q: &IntersectionForm) -> Result<ReducedBinary> {
    if q.rank() != 2 {
        return Err(Error::Unsupported(format!("binary reduction of a rank {} form", q.rank())));
    }
    let sign = match definiteness(q) {
        Definiteness::PositiveDefinite => BigInt::one(),
        Definiteness::NegativeDefinite => -BigInt::one(),
        d => return Err(Error::Unsupported(format!("binary reduction of a {d} form"))),
    };
    let g = &q.gram;
    let (mut a, mut b, mut c) = (&sign * &g[(0, 0)], &sign * &g[(0, 1)], &sign * &g[(1, 1)]);
    let mut u = IntMatrix::identity(2);
    loop {
        let k = nearest_quotient(&b, &a);
        if !k.is_zero() {
            // y ↦ y − k·x
            c = &c - 2 * &k * &b + &k * &k * &a;
            b = &b - &k * &a;
            u.add_col_multiple(1, 0, &-k);
        }
        if a > c {
            std::mem::swap(&mut a, &mut c);
            u.swap_cols(0, 1);
        } else {
            break;
        }
    }
    if b.is_negative() {
        b = -b;
        u.negate_col(1);
    }
    let form = IntMatrix::from_rows(&[vec![&sign * &a, &sign * &b], vec![&sign * &b, &sign * &c]])?;
    Ok(ReducedBinary { form, transform: u })
}

/// `GL(ℤ)`-equivalence for definite forms of rank at most 2.
pub fn equivalent(q1: &IntersectionForm, q2: &IntersectionForm) -> Result<bool> {
    if q1.rank() != q2.rank() || q1.det() != q2.det() {
        return Ok(false);
    }
    match q1.rank() {
        0 => Ok(true),
        1 => Ok(q1.gram == q2.gram),
        2 => {
            let (d1, d2) = (definiteness(q1), definiteness(q2));
            if !d1.is_definite() || !d2.is_definite() {
                return Err(Error::Unsupported("equivalence of indefinite binary forms".into()));
            }
            if d1 != d2 {
                return Ok(false);
            }
            Ok(gauss_reduce_binary(q1)?.form == gauss_reduce_binary(q2)?.form)
        }
        r => Err(Error::Unsupported(format!("equivalence in rank {r}"))),
    }
}

/// Small-integer view for report output; `None` if an entry overflows.
pub fn gram_as_i64(q: &IntersectionForm) -> Option<Vec<Vec<i64>>> {
    q.gram.to_rows().iter().map(|r| r.iter().map(|x| x.to_i64()).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(rows: &[&[i64]]) -> IntersectionForm {
        IntersectionForm::from_i64(rows).unwrap()
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn q1(n: i64) -> IntersectionForm {
        f(&[&[-2 * n - 4, -1], &[-1, -8]])
    }

    #[test]
    fn definiteness_examples() {
        assert_eq!(definiteness(&f(&[&[-2]])), Definiteness::NegativeDefinite);
        assert_eq!(definiteness(&f(&[&[0]])), Definiteness::Degenerate);
        assert_eq!(definiteness(&f(&[&[1, 0], &[0, -1]])), Definiteness::Indefinite);
        assert_eq!(definiteness(&f(&[&[0, 1], &[1, 0]])), Definiteness::Indefinite);
        assert_eq!(definiteness(&f(&[&[2, 1], &[1, 2]])), Definiteness::PositiveDefinite);
        for n in 0..=16 {
            assert_eq!(definiteness(&q1(n)), Definiteness::NegativeDefinite);
        }
    }

    #[test]
    fn asymmetric_rejected() {
        assert!(IntersectionForm::new(IntMatrix::from_i64(&[&[1, 2], &[3, 4]])).is_err());
    }

    #[test]
    fn represents_examples() {
        assert_eq!(
            represents(&f(&[&[-2]]), &big(-2), None).unwrap(),
            Representation::Yes(vec![big(1)])
        );
        for n in 0..=16 {
            assert_eq!(represents(&q1(n), &big(-2), None).unwrap(), Representation::No);
        }
        assert!(represents(&q1(0), &big(-8), None).unwrap().is_yes());
        assert!(represents(&q1(0), &big(3), None).unwrap() == Representation::No);
        assert!(represents(&f(&[&[1, 0], &[0, -1]]), &big(3), None).is_err());
        assert!(represents(&f(&[&[1, 0], &[0, -1]]), &big(3), Some(3)).unwrap().is_yes());
    }

    #[test]
    fn witness_has_target_value() {
        let q = f(&[&[-5, 2], &[2, -3]]);
        if let Representation::Yes(x) = represents(&q, &big(-4), None).unwrap() {
            assert_eq!(q.value(&x), big(-4));
        } else {
            panic!("x = (1, 1) gives −4");
        }
    }

    #[test]
    fn reduction_examples() {
        let r = gauss_reduce_binary(&f(&[&[-4, -1], &[-1, -8]])).unwrap();
        assert_eq!(r.form.det().unwrap(), big(31));
        let id = f(&[&[-1, 0], &[0, -1]]);
        assert_eq!(gauss_reduce_binary(&id).unwrap().form, id.gram);
        let q = f(&[&[-8, -3], &[-3, -2]]);
        let moved = q.transformed(&IntMatrix::from_i64(&[&[1, 1], &[0, 1]])).unwrap();
        assert_eq!(
            gauss_reduce_binary(&q).unwrap().form,
            gauss_reduce_binary(&moved).unwrap().form
        );
    }

    #[test]
    fn transform_is_recorded() {
        let q = f(&[&[-30, 17], &[17, -11]]);
        let r = gauss_reduce_binary(&q).unwrap();
        assert_eq!(q.transformed(&r.transform).unwrap().gram, r.form);
        assert_eq!(r.transform.det().unwrap().abs(), big(1));
        let again = gauss_reduce_binary(&IntersectionForm::new(r.form.clone()).unwrap()).unwrap();
        assert_eq!(again.form, r.form);
    }

    #[test]
    fn equivalence_examples() {
        assert!(equivalent(&q1(0), &q1(0)).unwrap());
        assert!(!equivalent(&q1(0), &q1(1)).unwrap());
        let u = IntMatrix::from_i64(&[&[2, 3], &[1, 2]]);
        assert!(equivalent(&q1(3), &q1(3).transformed(&u).unwrap()).unwrap());
        // same determinant, different parity
        assert!(!equivalent(&f(&[&[-2, -1], &[-1, -8]]), &f(&[&[-1, 0], &[0, -15]])).unwrap());
        assert!(equivalent(&f(&[&[-2]]), &f(&[&[-2]])).unwrap());
    }

    #[test]
    fn minimum_values() {
        assert_eq!(minimum(&q1(0)).unwrap(), big(4));
        assert_eq!(minimum(&f(&[&[-5, 2], &[2, -3]])).unwrap(), big(3));
        assert_eq!(minimum(&f(&[&[2, 1], &[1, 2]])).unwrap(), big(2));
    }

    #[test]
    fn parity() {
        assert!(q1(0).is_even());
        assert!(!f(&[&[-1]]).is_even());
    }
}
