//! Braid words, the Artin action on the free group, and cheap braid invariants.
//!
//! Convention: `σ_i` acts by `x_i ↦ x_i x_{i+1} x_i⁻¹`, `x_{i+1} ↦ x_i`, and the
//! letters of a word act left to right, so the automorphism of `u·v` is
//! `φ_v ∘ φ_u`. Every other module relies on this choice.

use std::fmt;

use crate::error::{Error, Result};
use crate::free::FreeWord;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: impl IntoIterator<Item = i32>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::TooFewStrands { needed: 1, got: 0 });
        }
        let letters: Vec<i32> = letters.into_iter().collect();
        for &g in &letters {
            if g == 0 || g.unsigned_abs() as usize >= strands {
                return Err(Error::GeneratorOutOfRange {
                    index: g as i64,
                    strands,
                });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: usize) -> Self {
        assert!(strands >= 1);
        BraidWord {
            strands,
            letters: Vec::new(),
        }
    }

    /// `σ_i^{±1}`; `g` is a signed generator index.
    pub fn generator(strands: usize, g: i32) -> Result<Self> {
        BraidWord::new(strands, [g])
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Concatenation, no normalization.
    pub fn compose(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.strands != other.strands {
            return Err(Error::StrandMismatch(self.strands, other.strands));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord {
            strands: self.strands,
            letters,
        })
    }

    pub fn invert(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|g| -g).collect(),
        }
    }

    /// Cancels adjacent `σ_i σ_i⁻¹` pairs. Same braid, shorter word.
    pub fn freely_reduced(&self) -> BraidWord {
        let mut out: Vec<i32> = Vec::with_capacity(self.letters.len());
        for &g in &self.letters {
            if out.last() == Some(&-g) {
                out.pop();
            } else {
                out.push(g);
            }
        }
        BraidWord {
            strands: self.strands,
            letters: out,
        }
    }

    /// `self · other · self⁻¹`
    pub fn conjugate(&self, other: &BraidWord) -> Result<BraidWord> {
        self.compose(other)?.compose(&self.invert())
    }

    pub fn artin_key(&self) -> ArtinKey {
        let m = self.strands;
        let mut images: Vec<FreeWord> = (1..=m).map(|t| FreeWord::generator(m, t)).collect();
        // Right-composing with each letter's automorphism, last letter first,
        // builds φ_{l_k} ∘ ⋯ ∘ φ_{l_1} while touching only two images per step.
        for &g in self.letters.iter().rev() {
            let i = g.unsigned_abs() as usize - 1;
            let a = images[i].clone();
            let b = images[i + 1].clone();
            if g > 0 {
                images[i] = a.conjugate(&b);
                images[i + 1] = a;
            } else {
                images[i + 1] = b.inverse().mul(&a).mul(&b);
                images[i] = b;
            }
        }
        ArtinKey { images }
    }

    /// Equality in the braid group, decided through the (faithful) Artin action.
    pub fn braids_equal(&self, other: &BraidWord) -> Result<bool> {
        if self.strands != other.strands {
            return Err(Error::StrandMismatch(self.strands, other.strands));
        }
        Ok(self.artin_key() == other.artin_key())
    }

    /// Underlying permutation, read off the Artin images without expanding them.
    pub fn permutation(&self) -> Permutation {
        let mut p: Vec<usize> = (0..self.strands).collect();
        // image of x_t under φ_w is conjugate to x_{p[t]}
        for &g in self.letters.iter().rev() {
            let i = g.unsigned_abs() as usize - 1;
            p.swap(i, i + 1);
        }
        Permutation(p)
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|g| g.signum() as i64).sum()
    }

    /// Whitespace-separated signed generator indices.
    pub fn parse(strands: usize, s: &str) -> Result<BraidWord> {
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            let g: i32 = tok
                .parse()
                .map_err(|_| Error::parse(1, format!("bad braid letter {tok:?}")))?;
            letters.push(g);
        }
        BraidWord::new(strands, letters)
    }

    pub fn to_text(&self) -> String {
        self.letters
            .iter()
            .map(|g| g.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for &g in &self.letters {
            if g > 0 {
                write!(f, "σ{g}")?;
            } else {
                write!(f, "σ{}⁻¹", -g)?;
            }
        }
        Ok(())
    }
}

/// Images of `x_1..x_m` under a braid's Artin automorphism.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArtinKey {
    images: Vec<FreeWord>,
}

impl ArtinKey {
    pub fn images(&self) -> &[FreeWord] {
        &self.images
    }

    pub fn strands(&self) -> usize {
        self.images.len()
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(t, w)| w.letters() == [(t + 1) as i32])
    }

    /// Key of `a·b` from the keys of `a` and `b`: apply `a` first, then `b`.
    pub fn then(&self, next: &ArtinKey) -> ArtinKey {
        ArtinKey {
            images: self
                .images
                .iter()
                .map(|w| w.substitute(&next.images))
                .collect(),
        }
    }

    pub fn apply(&self, w: &FreeWord) -> FreeWord {
        w.substitute(&self.images)
    }

    /// Artin's conditions: images are conjugates of a permutation of the
    /// generators and their product is `x_1⋯x_m`.
    pub fn satisfies_artin_conditions(&self) -> bool {
        let m = self.images.len();
        let mut seen = vec![false; m];
        for w in &self.images {
            match w.conjugated_generator() {
                Some(s) if !seen[s - 1] => seen[s - 1] = true,
                _ => return false,
            }
        }
        let prod = self
            .images
            .iter()
            .fold(FreeWord::identity(m), |acc, w| acc.mul(w));
        prod.letters().iter().copied().eq(1..=m as i32)
    }

    pub fn total_len(&self) -> usize {
        self.images.iter().map(FreeWord::len).sum()
    }
}

/// A permutation of `{1..m}` stored 0-based: `self.0[t]` is the image of `t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(pub Vec<usize>);

impl Permutation {
    pub fn identity(m: usize) -> Self {
        Permutation((0..m).collect())
    }

    pub fn image(&self, t: usize) -> usize {
        self.0[t - 1] + 1
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Points moved by the permutation, 1-based and ascending.
    pub fn moved_points(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(i, &j)| *i != j)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Cycles including fixed points, each starting at its least element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let m = self.0.len();
        let mut seen = vec![false; m];
        let mut out = Vec::new();
        for s in 0..m {
            if seen[s] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut t = s;
            while !seen[t] {
                seen[t] = true;
                cyc.push(t + 1);
                t = self.0[t];
            }
            out.push(cyc);
        }
        out
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }

    pub fn transposition(&self) -> Option<(usize, usize)> {
        match self.moved_points()[..] {
            [p, q] => Some((p, q)),
            _ => None,
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return write!(f, "id");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(m: usize, l: &[i32]) -> BraidWord {
        BraidWord::new(m, l.iter().copied()).unwrap()
    }

    fn fw(m: usize, l: &[i32]) -> FreeWord {
        FreeWord::new(m, l.iter().copied()).unwrap()
    }

    #[test]
    fn compose_concatenates() {
        assert_eq!(b(2, &[1]).compose(&b(2, &[1])).unwrap(), b(2, &[1, 1]));
        assert_eq!(b(2, &[1]).compose(&BraidWord::identity(2)).unwrap(), b(2, &[1]));
        assert!(b(2, &[1]).compose(&b(3, &[1])).is_err());
    }

    #[test]
    fn compose_with_inverse_has_identity_key() {
        let w = b(3, &[1, 2]).compose(&b(3, &[-2, -1])).unwrap();
        assert_eq!(w.letters(), &[1, 2, -2, -1]);
        assert_eq!(w.artin_key(), BraidWord::identity(3).artin_key());
    }

    #[test]
    fn invert_reverses_and_flips() {
        assert_eq!(b(2, &[1]).invert(), b(2, &[-1]));
        assert_eq!(BraidWord::identity(3).invert(), BraidWord::identity(3));
        assert_eq!(b(3, &[1, -2]).invert(), b(3, &[2, -1]));
    }

    #[test]
    fn artin_key_examples() {
        let id = BraidWord::identity(3).artin_key();
        assert_eq!(id.images(), &[fw(3, &[1]), fw(3, &[2]), fw(3, &[3])]);
        let s = b(2, &[1]).artin_key();
        assert_eq!(s.images(), &[fw(2, &[1, 2, -1]), fw(2, &[1])]);
        let ss = b(2, &[1, 1]).artin_key();
        assert_eq!(
            ss.images(),
            &[fw(2, &[1, 2, 1, -2, -1]), fw(2, &[1, 2, -1])]
        );
    }

    #[test]
    fn letters_act_left_to_right() {
        // σ1 then σ2: x1 ↦ x1x2x1⁻¹ ↦ x1 (x2x3x2⁻¹) x1⁻¹
        let k = b(3, &[1, 2]).artin_key();
        assert_eq!(k.images()[0], fw(3, &[1, 2, 3, -2, -1]));
        assert_eq!(k, b(3, &[1]).artin_key().then(&b(3, &[2]).artin_key()));
    }

    #[test]
    fn braid_relations() {
        assert!(b(3, &[1, 2, 1]).braids_equal(&b(3, &[2, 1, 2])).unwrap());
        assert!(!b(3, &[1]).braids_equal(&b(3, &[2])).unwrap());
        assert!(b(4, &[1, 3]).braids_equal(&b(4, &[3, 1])).unwrap());
        assert!(b(3, &[1]).braids_equal(&b(4, &[1])).is_err());
    }

    #[test]
    fn permutation_and_exponent_sum() {
        assert!(BraidWord::identity(3).permutation().is_identity());
        assert_eq!(b(2, &[1]).permutation().transposition(), Some((1, 2)));
        assert_eq!(BraidWord::identity(4).exponent_sum(), 0);
        assert_eq!(b(2, &[-1, 1]).exponent_sum(), 0);
        assert_eq!(b(4, &[1, 2, 3, -1]).exponent_sum(), 2);
    }

    #[test]
    fn permutation_agrees_with_artin_images() {
        let w = b(5, &[1, -3, 2, 4, 2, -1, 3]);
        let key = w.artin_key();
        let p = w.permutation();
        for t in 1..=5 {
            assert_eq!(key.images()[t - 1].conjugated_generator(), Some(p.image(t)));
        }
    }

    #[test]
    fn parse_roundtrip_and_errors() {
        let w = BraidWord::parse(3, "1 2 -1").unwrap();
        assert_eq!(w.letters(), &[1, 2, -1]);
        assert_eq!(w.to_text(), "1 2 -1");
        assert!(BraidWord::parse(3, "1 3").is_err());
        assert!(BraidWord::parse(3, "1 x").is_err());
        assert!(BraidWord::parse(3, "").unwrap().is_empty());
    }

    #[test]
    fn display() {
        assert_eq!(b(3, &[1, -2]).to_string(), "σ1σ2⁻¹");
        assert_eq!(b(3, &[2, 1, -2]).permutation().to_string(), "(1 3)");
    }
}
