//! Smith and Hermite normal forms, integer kernels and cokernels.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::matrix::IntMatrix;

/// Returns `(U, D, V)` with `A = U·D·V`, `U` and `V` unimodular and `D`
/// diagonal, nonnegative, with `d₁ | d₂ | ⋯`.
pub fn smith_normal_form(a: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let (r, c) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);

    // Invariant: a = u · d · v. Each row op E on d is undone on u by E⁻¹ from
    // the right; each column op F on d by F⁻¹ on v from the left.
    let row_add = |d: &mut IntMatrix, u: &mut IntMatrix, dst: usize, src: usize, k: &BigInt| {
        d.add_row_multiple(dst, src, k);
        u.add_col_multiple(src, dst, &-k);
    };
    let col_add = |d: &mut IntMatrix, v: &mut IntMatrix, dst: usize, src: usize, k: &BigInt| {
        d.add_col_multiple(dst, src, k);
        v.add_row_multiple(src, dst, &-k);
    };

    for t in 0..r.min(c) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                let x = &d[(i, j)];
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < d[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap_rows(t, pi);
        u.swap_cols(t, pi);
        d.swap_cols(t, pj);
        v.swap_rows(t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..r {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = &d[(i, t)] / &d[(t, t)];
                row_add(&mut d, &mut u, i, t, &-q);
                if !d[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..c {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = &d[(t, j)] / &d[(t, t)];
                col_add(&mut d, &mut v, j, t, &-q);
                if !d[(t, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // move the smallest nonzero of row/column t into the pivot
                let mut bi = t;
                let mut bj = t;
                for i in t + 1..r {
                    let x = &d[(i, t)];
                    if !x.is_zero() && x.abs() < d[(bi, bj)].abs() {
                        bi = i;
                        bj = t;
                    }
                }
                for j in t + 1..c {
                    let x = &d[(t, j)];
                    if !x.is_zero() && x.abs() < d[(bi, bj)].abs() {
                        bi = t;
                        bj = j;
                    }
                }
                d.swap_rows(t, bi);
                u.swap_cols(t, bi);
                d.swap_cols(t, bj);
                v.swap_rows(t, bj);
                continue;
            }
            // divisibility of the remaining block
            let p = d[(t, t)].clone();
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !d[(i, j)].is_multiple_of(&p)));
            match bad {
                Some(i) => row_add(&mut d, &mut u, t, i, &BigInt::one()),
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_col(t);
        }
    }
    (u, d, v)
}

/// Row-style Hermite normal form: returns `(H, U)` with `U·A = H`, `U`
/// unimodular, `H` in echelon form with positive pivots and entries above each
/// pivot reduced into `[0, pivot)`.
pub fn hermite_normal_form(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (r, c) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut u = IntMatrix::identity(r);
    let mut row = 0;
    for j in 0..c {
        if row == r {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in row..r {
                let x = &h[(i, j)];
                if !x.is_zero() && best.is_none_or(|b| x.abs() < h[(b, j)].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            h.swap_rows(row, b);
            u.swap_rows(row, b);
            let mut clean = true;
            for i in row + 1..r {
                if h[(i, j)].is_zero() {
                    continue;
                }
                let q = &h[(i, j)] / &h[(row, j)];
                h.add_row_multiple(i, row, &-&q);
                u.add_row_multiple(i, row, &-&q);
                if !h[(i, j)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h[(row, j)].is_zero() {
            continue;
        }
        if h[(row, j)].is_negative() {
            h.negate_row(row);
            u.negate_row(row);
        }
        let p = h[(row, j)].clone();
        for i in 0..row {
            let q = h[(i, j)].div_floor(&p);
            h.add_row_multiple(i, row, &-&q);
            u.add_row_multiple(i, row, &-&q);
        }
        row += 1;
    }
    (h, u)
}

/// Basis (as columns) of `{x ∈ ℤⁿ : A·x = 0}`, saturated and in canonical
/// Hermite form so that results are reproducible bit for bit.
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    let n = a.cols();
    let (h, u) = hermite_normal_form(&a.transpose());
    let rank = (0..h.rows())
        .filter(|&i| h.row(i).iter().any(|x| !x.is_zero()))
        .count();
    let kernel_rows: Vec<usize> = (rank..n).collect();
    let k = u.select_rows(&kernel_rows);
    let (canon, _) = hermite_normal_form(&k);
    canon.transpose()
}

/// A finitely generated abelian group `ℤ^free_rank ⊕ ⨁ ℤ/dᵢ` with `dᵢ > 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbelianGroup {
    pub free_rank: usize,
    #[serde(serialize_with = "ser_bigs")]
    pub torsion: Vec<BigInt>,
}

fn ser_bigs<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&super::matrix::big_to_json(x))?;
    }
    seq.end()
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Invariant factors in the `(0 = ℤ)` convention: torsion first, then zeros.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let mut v = self.torsion.clone();
        v.extend(std::iter::repeat_n(BigInt::zero(), self.free_rank));
        v
    }

    /// Order, or `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("ℤ".into()),
            r => parts.push(format!("ℤ^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("ℤ/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}

/// `ℤ^rows / im(A)` where `A` acts on column vectors.
pub fn cokernel(a: &IntMatrix) -> AbelianGroup {
    let (_, d, _) = smith_normal_form(a);
    let diag: Vec<BigInt> = (0..a.rows().min(a.cols()))
        .map(|i| d[(i, i)].clone())
        .filter(|x| !x.is_zero())
        .collect();
    let rank = diag.len();
    AbelianGroup {
        free_rank: a.rows() - rank,
        torsion: diag.into_iter().filter(|x| !x.is_one()).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_snf(a: &IntMatrix) {
        let (u, d, v) = smith_normal_form(a);
        assert_eq!(&u.mul(&d).unwrap().mul(&v).unwrap(), a);
        assert!(u.det().unwrap().abs().is_one());
        assert!(v.det().unwrap().abs().is_one());
        assert!(d.is_diagonal());
        let n = d.rows().min(d.cols());
        for i in 0..n {
            assert!(!d[(i, i)].is_negative());
            if i + 1 < n && !d[(i, i)].is_zero() {
                assert!(d[(i + 1, i + 1)].is_multiple_of(&d[(i, i)]));
            }
        }
    }

    #[test]
    fn snf_examples() {
        let id = IntMatrix::identity(2);
        assert_eq!(smith_normal_form(&id).1, id);
        let a = IntMatrix::from_i64(&[&[2, 4], &[6, 8]]);
        assert_eq!(smith_normal_form(&a).1, IntMatrix::from_i64(&[&[2, 0], &[0, 4]]));
        check_snf(&a);
        let z = IntMatrix::zeros(2, 3);
        assert!(smith_normal_form(&z).1.is_zero());
        check_snf(&IntMatrix::from_i64(&[&[6, 10, 15], &[4, 0, -2]]));
        check_snf(&IntMatrix::from_i64(&[&[0, 0], &[0, 7], &[3, 0]]));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(integer_kernel(&IntMatrix::identity(3)).cols(), 0);
        let k = integer_kernel(&IntMatrix::from_i64(&[&[1, 1]]));
        assert_eq!(k.cols(), 1);
        assert_eq!(k.column(0), vec![BigInt::from(1), BigInt::from(-1)]);
        // saturated: 2x + 4y = 0 has basis (2, -1), not (4, -2)
        let k = integer_kernel(&IntMatrix::from_i64(&[&[2, 4]]));
        assert_eq!(k.column(0), vec![BigInt::from(2), BigInt::from(-1)]);
    }

    #[test]
    fn hnf_shape() {
        let a = IntMatrix::from_i64(&[&[2, 3, 1], &[4, 1, 5], &[6, 4, 6]]);
        let (h, u) = hermite_normal_form(&a);
        assert_eq!(u.mul(&a).unwrap(), h);
        assert!(u.det().unwrap().abs().is_one());
        assert!(h.row(2).iter().all(Zero::is_zero));
    }

    #[test]
    fn cokernel_examples() {
        let g = cokernel(&IntMatrix::from_i64(&[&[2]]));
        assert_eq!(g.torsion, vec![BigInt::from(2)]);
        assert_eq!(g.to_string(), "ℤ/2");
        let g = cokernel(&IntMatrix::zeros(1, 0));
        assert_eq!(g.free_rank, 1);
        assert!(cokernel(&IntMatrix::identity(3)).is_trivial());
    }
}
