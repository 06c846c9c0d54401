//! Reduced Burau representation and Alexander polynomials of braid closures.
//!
//! Row-vector convention: a class `x` (row vector in the basis of arc lifts
//! `d_1..d_{m-1}`) is sent to `x·R(β)`, and `R(u·v) = R(u)·R(v)`. The matrices
//! are the Fox Jacobian of the Artin action, restricted to the span of
//! `d_i = e_i − e_{i+1}`. For `σ_i` only column `i` differs from the identity:
//! `R[i][i] = −t`, `R[i−1][i] = t`, `R[i+1][i] = 1`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::intlinalg::{det_laurent, IntMatrix, LaurentMatrix, LaurentPoly};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BurauImage {
    pub matrix: LaurentMatrix,
}

/// Column `i` (0-based) of the generator matrix for signed letter `g`,
/// as `(row, entry)` pairs for rows `i-1`, `i`, `i+1`.
fn generator_column(g: i32, dim: usize) -> Vec<(usize, LaurentPoly)> {
    let i = g.unsigned_abs() as usize - 1;
    let mut col = Vec::with_capacity(3);
    let (above, diag, below) = if g > 0 {
        (LaurentPoly::t(), LaurentPoly::monomial(-BigInt::one(), 1), LaurentPoly::one())
    } else {
        (
            LaurentPoly::one(),
            LaurentPoly::monomial(-BigInt::one(), -1),
            LaurentPoly::monomial(BigInt::one(), -1),
        )
    };
    if i >= 1 {
        col.push((i - 1, above));
    }
    col.push((i, diag));
    if i + 1 < dim {
        col.push((i + 1, below));
    }
    col
}

fn check_strands(b: &BraidWord) -> Result<usize> {
    let m = b.strands();
    if m < 2 {
        return Err(Error::TooFewStrands { needed: 2, got: m });
    }
    Ok(m - 1)
}

pub fn reduced_burau(b: &BraidWord) -> Result<BurauImage> {
    let dim = check_strands(b)?;
    let mut m = LaurentMatrix::identity(dim);
    for &g in b.letters() {
        // right multiplication by a generator rewrites one column
        let i = g.unsigned_abs() as usize - 1;
        let col = generator_column(g, dim);
        for r in 0..dim {
            let mut acc = LaurentPoly::zero();
            for (k, entry) in &col {
                let x = &m[(r, *k)];
                if !x.is_zero() {
                    acc = &acc + &(x * entry);
                }
            }
            m[(r, i)] = acc;
        }
    }
    Ok(BurauImage { matrix: m })
}

/// Reduced Burau at `t = −1`, computed directly over the integers.
pub fn burau_at_minus_one(b: &BraidWord) -> Result<IntMatrix> {
    let dim = check_strands(b)?;
    let mut m = IntMatrix::identity(dim);
    for &g in b.letters() {
        let i = g.unsigned_abs() as usize - 1;
        // σ_i: (above, diag, below) = (−1, 1, 1); σ_i⁻¹: (1, 1, −1)
        let (above, below): (i64, i64) = if g > 0 { (-1, 1) } else { (1, -1) };
        for r in 0..dim {
            let mut acc = m[(r, i)].clone();
            if i >= 1 && !m[(r, i - 1)].is_zero() {
                acc += &m[(r, i - 1)] * above;
            }
            if i + 1 < dim && !m[(r, i + 1)].is_zero() {
                acc += &m[(r, i + 1)] * below;
            }
            m[(r, i)] = acc;
        }
    }
    Ok(m)
}

/// The skew pairing on `H₁` of the double cover of the disk branched at `m`
/// points in the arc-lift basis: `J[i][i+1] = 1`, `J[i+1][i] = −1`.
pub fn skew_form(dim: usize) -> IntMatrix {
    let mut j = IntMatrix::zeros(dim, dim);
    for i in 0..dim.saturating_sub(1) {
        j[(i, i + 1)] = BigInt::one();
        j[(i + 1, i)] = -BigInt::one();
    }
    j
}

/// Normalized Alexander polynomial of the closure:
/// `det(R(β) − I) / (1 + t + ⋯ + t^{m−1})`, then scaled by a unit to lowest
/// exponent 0 and positive leading coefficient.
pub fn alexander_of_closure(b: &BraidWord) -> Result<LaurentPoly> {
    let m = b.strands();
    let r = reduced_burau(b)?;
    let shifted = r.matrix.sub(&LaurentMatrix::identity(m - 1))?;
    let d = det_laurent(&shifted)?;
    if d.is_zero() {
        return Ok(LaurentPoly::zero());
    }
    Ok(d.exact_divide(&LaurentPoly::geometric(m))?.normalized())
}

/// `|Δ(−1)|` of a knot closure, evaluated after the exact division.
pub fn knot_determinant(b: &BraidWord) -> Result<BigInt> {
    let components = b.permutation().cycle_count();
    if components != 1 {
        return Err(Error::NotAKnot(components));
    }
    if b.strands() == 1 {
        return Ok(BigInt::one());
    }
    let delta = alexander_of_closure(b)?;
    Ok(delta.evaluate(&-BigInt::one())?.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bw(m: usize, l: &[i32]) -> BraidWord {
        BraidWord::new(m, l.iter().copied()).unwrap()
    }

    fn p(low: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_i64(low, c)
    }

    #[test]
    fn burau_examples() {
        assert_eq!(
            reduced_burau(&BraidWord::identity(3)).unwrap().matrix,
            LaurentMatrix::identity(2)
        );
        assert_eq!(reduced_burau(&bw(2, &[1])).unwrap().matrix[(0, 0)], p(1, &[-1]));
        assert_eq!(reduced_burau(&bw(2, &[1, 1, 1])).unwrap().matrix[(0, 0)], p(3, &[-1]));
        assert!(reduced_burau(&BraidWord::identity(1)).is_err());
    }

    #[test]
    fn generator_times_inverse_is_identity() {
        for m in 2..6 {
            for g in 1..m as i32 {
                let r = reduced_burau(&bw(m, &[g, -g])).unwrap();
                assert_eq!(r.matrix, LaurentMatrix::identity(m - 1));
                let r = reduced_burau(&bw(m, &[-g, g])).unwrap();
                assert_eq!(r.matrix, LaurentMatrix::identity(m - 1));
            }
        }
    }

    #[test]
    fn minus_one_examples() {
        assert_eq!(burau_at_minus_one(&BraidWord::identity(4)).unwrap(), IntMatrix::identity(3));
        assert_eq!(burau_at_minus_one(&bw(2, &[1])).unwrap(), IntMatrix::from_i64(&[&[1]]));
        assert_eq!(
            burau_at_minus_one(&bw(3, &[1])).unwrap(),
            IntMatrix::from_i64(&[&[1, 0], &[1, 1]])
        );
        let w = bw(4, &[1, -2, 3, 2, -1]);
        let via_laurent = reduced_burau(&w).unwrap().matrix.evaluate(&-BigInt::one()).unwrap();
        assert_eq!(burau_at_minus_one(&w).unwrap(), via_laurent);
    }

    #[test]
    fn alexander_small_knots() {
        assert!(alexander_of_closure(&bw(2, &[1])).unwrap().is_one());
        assert_eq!(alexander_of_closure(&bw(2, &[1, 1, 1])).unwrap(), p(0, &[1, -1, 1]));
        // figure eight: σ1σ2⁻¹σ1σ2⁻¹ → t² − 3t + 1
        assert_eq!(
            alexander_of_closure(&bw(3, &[1, -2, 1, -2])).unwrap(),
            p(0, &[1, -3, 1])
        );
        assert_eq!(knot_determinant(&bw(2, &[1])).unwrap(), BigInt::one());
        assert_eq!(knot_determinant(&bw(2, &[1, 1, 1])).unwrap(), BigInt::from(3));
        assert_eq!(knot_determinant(&bw(3, &[1, -2, 1, -2])).unwrap(), BigInt::from(5));
        assert_eq!(knot_determinant(&BraidWord::identity(1)).unwrap(), BigInt::one());
    }

    #[test]
    fn split_link_has_zero_polynomial() {
        assert!(alexander_of_closure(&BraidWord::identity(2)).unwrap().is_zero());
        assert_eq!(knot_determinant(&BraidWord::identity(2)), Err(Error::NotAKnot(2)));
    }
}
