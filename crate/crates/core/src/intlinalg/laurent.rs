//! Laurent polynomials in one variable `t` with big-integer coefficients,
//! and matrices over them.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::error::{Error, Result};

/// `Σ coeffs[k] · t^(low + k)`; leading and trailing coefficients are nonzero
/// unless the polynomial is zero (then `coeffs` is empty and `low` is 0).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn new(low: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = LaurentPoly { low, coeffs };
        p.trim();
        p
    }

    pub fn from_i64(low: i64, coeffs: &[i64]) -> Self {
        LaurentPoly::new(low, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        LaurentPoly {
            low: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        LaurentPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        LaurentPoly::new(0, vec![c])
    }

    /// `c · t^k`
    pub fn monomial(c: BigInt, k: i64) -> Self {
        LaurentPoly::new(k, vec![c])
    }

    pub fn t() -> Self {
        LaurentPoly::monomial(BigInt::one(), 1)
    }

    /// `1 + t + ⋯ + t^(n-1)`
    pub fn geometric(n: usize) -> Self {
        LaurentPoly::new(0, vec![BigInt::one(); n])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn low(&self) -> i64 {
        self.low
    }

    /// Highest exponent; `None` for zero.
    pub fn high(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: i64) -> BigInt {
        let idx = k - self.low;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            BigInt::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    /// A unit of `ℤ[t, t⁻¹]` is `±t^k`.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].abs().is_one()
    }

    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        LaurentPoly::new(self.low, self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Value at `t = x`. Negative powers require `x = ±1`.
    pub fn evaluate(&self, x: &BigInt) -> Result<BigInt> {
        if self.is_zero() {
            return Ok(BigInt::zero());
        }
        if self.low < 0 && !x.abs().is_one() {
            return Err(Error::Unsupported(format!(
                "evaluating a Laurent polynomial with negative powers at {x}"
            )));
        }
        // Horner on the coefficient list, then multiply by x^low
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        let k = self.low;
        let factor = if k >= 0 {
            num_traits::pow(x.clone(), k as usize)
        } else {
            // x = ±1, so x^k = x^|k|
            num_traits::pow(x.clone(), k.unsigned_abs() as usize)
        };
        Ok(acc * factor)
    }

    /// Exact quotient `self / q` in `ℤ[t, t⁻¹]`.
    pub fn exact_divide(&self, q: &LaurentPoly) -> Result<LaurentPoly> {
        if q.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        // Both have nonzero constant terms after factoring out t^low, so
        // divisibility reduces to ordinary long division in ℤ[t].
        let mut rem = self.coeffs.clone();
        let d = &q.coeffs;
        if rem.len() < d.len() {
            return Err(Error::InexactDivision);
        }
        let lead = d.last().expect("nonzero divisor");
        let qlen = rem.len() - d.len() + 1;
        let mut quot = vec![BigInt::zero(); qlen];
        for k in (0..qlen).rev() {
            let top = &rem[k + d.len() - 1];
            if top.is_zero() {
                continue;
            }
            let (c, r) = top.div_rem(lead);
            if !r.is_zero() {
                return Err(Error::InexactDivision);
            }
            for (i, di) in d.iter().enumerate() {
                rem[k + i] -= &c * di;
            }
            quot[k] = c;
        }
        if rem.iter().any(|x| !x.is_zero()) {
            return Err(Error::InexactDivision);
        }
        Ok(LaurentPoly::new(self.low - q.low, quot))
    }

    /// Representative of `self · (±t^k)` with lowest exponent 0 and positive
    /// leading coefficient; zero stays zero.
    pub fn normalized(&self) -> LaurentPoly {
        if self.is_zero() {
            return self.clone();
        }
        let p = self.shift(-self.low);
        if self.coeffs.last().is_some_and(Signed::is_negative) {
            -p
        } else {
            p
        }
    }

    fn fmt_term(c: &BigInt, k: i64, first: bool, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let neg = c.is_negative();
        let a = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, "{}", if neg { " - " } else { " + " })?;
        }
        let show_coeff = !a.is_one() || k == 0;
        if show_coeff {
            write!(f, "{a}")?;
        }
        match k {
            0 => Ok(()),
            1 => write!(f, "t"),
            _ => write!(f, "t^{k}"),
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (idx, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            LaurentPoly::fmt_term(c, self.low + idx as i64, first, f)?;
            first = false;
        }
        Ok(())
    }
}

/// `{"offset": low, "coeffs": [...]}`, lowest exponent first.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("LaurentPoly", 2)?;
        st.serialize_field("offset", &self.low)?;
        let cs: Vec<serde_json::Value> =
            self.coeffs.iter().map(super::matrix::big_to_json).collect();
        st.serialize_field("coeffs", &cs)?;
        st.end()
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let low = self.low.min(o.low);
        let high = self.high().unwrap().max(o.high().unwrap());
        let coeffs = (low..=high).map(|k| self.coeff(k) + o.coeff(k)).collect();
        LaurentPoly::new(low, coeffs)
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        self + &(-o)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || o.is_zero() {
            return LaurentPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        LaurentPoly::new(self.low + o.low, out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, o: LaurentPoly) -> LaurentPoly {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Free function form of [`LaurentPoly::exact_divide`].
pub fn exact_divide(p: &LaurentPoly, q: &LaurentPoly) -> Result<LaurentPoly> {
    p.exact_divide(q)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentMatrix {
    rows: usize,
    cols: usize,
    data: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        LaurentMatrix {
            rows,
            cols,
            data: vec![LaurentPoly::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = LaurentMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = LaurentPoly::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(LaurentMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn mul(&self, o: &LaurentMatrix) -> Result<LaurentMatrix> {
        if self.cols != o.rows {
            return Err(Error::Shape("Laurent matrix product".into()));
        }
        let mut out = LaurentMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = &out[(i, j)] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, o: &LaurentMatrix) -> Result<LaurentMatrix> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::Shape("Laurent matrix difference".into()));
        }
        Ok(LaurentMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        })
    }

    /// Entrywise evaluation at an integer `t = x` (`x = ±1` if negative powers occur).
    pub fn evaluate(&self, x: &BigInt) -> Result<super::IntMatrix> {
        let mut out = super::IntMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].evaluate(x)?;
            }
        }
        Ok(out)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl Index<(usize, usize)> for LaurentMatrix {
    type Output = LaurentPoly;
    fn index(&self, (i, j): (usize, usize)) -> &LaurentPoly {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for LaurentMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut LaurentPoly {
        &mut self.data[i * self.cols + j]
    }
}

/// Exact determinant over `ℤ[t, t⁻¹]` by Bareiss elimination; every division
/// is exact because the ring is an integral domain.
pub fn det_laurent(a: &LaurentMatrix) -> Result<LaurentPoly> {
    if a.rows != a.cols {
        return Err(Error::Shape("determinant of non-square matrix".into()));
    }
    let n = a.rows;
    if n == 0 {
        return Ok(LaurentPoly::one());
    }
    let mut m = a.clone();
    let mut negate = false;
    let mut prev = LaurentPoly::one();
    for k in 0..n - 1 {
        if m[(k, k)].is_zero() {
            match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                Some(p) => {
                    m.swap_rows(k, p);
                    negate = !negate;
                }
                None => return Ok(LaurentPoly::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&m[(k, k)] * &m[(i, j)]) - &(&m[(i, k)] * &m[(k, j)]);
                m[(i, j)] = v.exact_divide(&prev)?;
            }
        }
        prev = m[(k, k)].clone();
    }
    let d = m[(n - 1, n - 1)].clone();
    Ok(if negate { -d } else { d })
}
