//! Freely reduced words in a free group of finite rank.
//!
//! Letters are signed 1-based generator indices: `3` is `x3`, `-3` is `x3⁻¹`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord {
    rank: usize,
    letters: Vec<i32>,
}

fn push_reduced(out: &mut Vec<i32>, g: i32) {
    if out.last() == Some(&-g) {
        out.pop();
    } else {
        out.push(g);
    }
}

impl FreeWord {
    pub fn new(rank: usize, letters: impl IntoIterator<Item = i32>) -> Result<Self> {
        let mut out = Vec::new();
        for g in letters {
            if g == 0 || g.unsigned_abs() as usize > rank {
                return Err(Error::GeneratorOutOfRange {
                    index: g as i64,
                    strands: rank,
                });
            }
            push_reduced(&mut out, g);
        }
        Ok(FreeWord { rank, letters: out })
    }

    /// Builds a word from letters already known to be in range.
    pub(crate) fn from_letters_unchecked(rank: usize, letters: impl IntoIterator<Item = i32>) -> Self {
        let mut out = Vec::new();
        for g in letters {
            push_reduced(&mut out, g);
        }
        FreeWord { rank, letters: out }
    }

    pub fn identity(rank: usize) -> Self {
        FreeWord {
            rank,
            letters: Vec::new(),
        }
    }

    pub fn generator(rank: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= rank, "generator x{i} outside rank {rank}");
        FreeWord {
            rank,
            letters: vec![i as i32],
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
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

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        debug_assert_eq!(self.rank, other.rank);
        let mut out = self.letters.clone();
        for &g in &other.letters {
            push_reduced(&mut out, g);
        }
        FreeWord {
            rank: self.rank,
            letters: out,
        }
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|g| -g).collect(),
        }
    }

    /// `self · other · self⁻¹`
    pub fn conjugate(&self, other: &FreeWord) -> FreeWord {
        self.mul(other).mul(&self.inverse())
    }

    /// Replaces every `x_i` by `images[i-1]`.
    pub fn substitute(&self, images: &[FreeWord]) -> FreeWord {
        let mut out: Vec<i32> = Vec::new();
        for &g in &self.letters {
            let img = &images[g.unsigned_abs() as usize - 1];
            if g > 0 {
                for &h in &img.letters {
                    push_reduced(&mut out, h);
                }
            } else {
                for &h in img.letters.iter().rev() {
                    push_reduced(&mut out, -h);
                }
            }
        }
        let rank = images.first().map_or(self.rank, |w| w.rank);
        FreeWord { rank, letters: out }
    }

    /// Strips matching first/last letters: the shortest conjugate reachable by
    /// cancellation at the ends.
    pub fn cyclically_reduced(&self) -> FreeWord {
        let l = &self.letters;
        let (mut lo, mut hi) = (0usize, l.len());
        while hi - lo >= 2 && l[lo] == -l[hi - 1] {
            lo += 1;
            hi -= 1;
        }
        FreeWord {
            rank: self.rank,
            letters: l[lo..hi].to_vec(),
        }
    }

    /// Canonical representative of the relator class `{rotations of w, w⁻¹}`:
    /// the lexicographically least rotation of the cyclically reduced word or
    /// its inverse. Two relators define the same relation in this strict sense
    /// iff their canonical forms agree.
    pub fn cyclic_canonical(&self) -> FreeWord {
        let c = self.cyclically_reduced();
        if c.letters.is_empty() {
            return c;
        }
        let inv = c.inverse();
        let mut best: Option<Vec<i32>> = None;
        for w in [&c.letters, &inv.letters] {
            let n = w.len();
            for r in 0..n {
                let cand: Vec<i32> = w[r..].iter().chain(&w[..r]).copied().collect();
                if best.as_ref().is_none_or(|b| cand < *b) {
                    best = Some(cand);
                }
            }
        }
        FreeWord {
            rank: self.rank,
            letters: best.unwrap_or_default(),
        }
    }

    /// Exponent sum of each generator (the abelianization image).
    pub fn exponent_sums(&self) -> Vec<i64> {
        let mut v = vec![0i64; self.rank];
        for &g in &self.letters {
            v[g.unsigned_abs() as usize - 1] += g.signum() as i64;
        }
        v
    }

    /// If the word is `u·x_s·u⁻¹` (reduced) returns `s`.
    pub fn conjugated_generator(&self) -> Option<usize> {
        let n = self.letters.len();
        if n.is_multiple_of(2) {
            return None;
        }
        let mid = self.letters[n / 2];
        if mid < 0 {
            return None;
        }
        for k in 0..n / 2 {
            if self.letters[k] != -self.letters[n - 1 - k] {
                return None;
            }
        }
        Some(mid as usize)
    }

    /// Number of occurrences of generator `g` (either sign).
    pub fn occurrences(&self, g: usize) -> usize {
        self.letters
            .iter()
            .filter(|&&h| h.unsigned_abs() as usize == g)
            .count()
    }

    pub fn with_rank(mut self, rank: usize) -> FreeWord {
        self.rank = rank;
        self
    }

    /// Whitespace-separated signed integers, the same syntax as braid words.
    pub fn to_plain(&self) -> String {
        self.letters
            .iter()
            .map(|g| g.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn parse_plain(rank: usize, s: &str) -> Result<FreeWord> {
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            let g: i32 = tok
                .parse()
                .map_err(|_| Error::parse(1, format!("bad letter {tok:?}")))?;
            letters.push(g);
        }
        FreeWord::new(rank, letters)
    }

    /// Parses `"lhs = rhs"` (or a bare word) into the relator `lhs·rhs⁻¹`.
    pub fn parse_relation(rank: usize, s: &str) -> Result<FreeWord> {
        match s.split_once('=') {
            Some((l, r)) => {
                let l = FreeWord::parse_plain(rank, l)?;
                let r = FreeWord::parse_plain(rank, r)?;
                Ok(l.mul(&r.inverse()))
            }
            None => FreeWord::parse_plain(rank, s),
        }
    }
}

const SUPERSCRIPT_MINUS_ONE: &str = "⁻¹";

pub(crate) fn gamma(g: i32) -> String {
    if g > 0 {
        format!("γ{g}")
    } else {
        format!("γ{}{}", -g, SUPERSCRIPT_MINUS_ONE)
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for &g in &self.letters {
            write!(f, "{}", gamma(g))?;
        }
        Ok(())
    }
}
