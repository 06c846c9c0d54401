//! Half-twists, braid monodromy factorizations, Hurwitz moves and the
//! β₁(n) / β₂(n) families.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::braid::{ArtinKey, BraidWord, Permutation};
use crate::error::{Error, Result};
use crate::fixtures::Fixtures;

/// The positive half-twist `w·σ_i·w⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HalfTwist {
    conjugator: BraidWord,
    index: usize,
}

impl HalfTwist {
    pub fn new(conjugator: BraidWord, index: usize) -> Result<Self> {
        let m = conjugator.strands();
        if index == 0 || index >= m {
            return Err(Error::GeneratorOutOfRange {
                index: index as i64,
                strands: m,
            });
        }
        Ok(HalfTwist { conjugator, index })
    }

    /// Half-twist along the straight arc joining punctures `i` and `i+1`.
    pub fn straight(strands: usize, index: usize) -> Result<Self> {
        HalfTwist::new(BraidWord::identity(strands), index)
    }

    pub fn conjugator(&self) -> &BraidWord {
        &self.conjugator
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn strands(&self) -> usize {
        self.conjugator.strands()
    }

    pub fn as_braid(&self) -> BraidWord {
        let s = BraidWord::generator(self.strands(), self.index as i32).expect("index checked");
        self.conjugator
            .conjugate(&s)
            .expect("same strand count by construction")
    }

    pub fn artin_key(&self) -> ArtinKey {
        self.as_braid().artin_key()
    }

    /// The two punctures joined by the arc, ascending.
    pub fn endpoints(&self) -> (usize, usize) {
        self.as_braid()
            .permutation()
            .transposition()
            .expect("a half-twist permutes exactly two punctures")
    }

    pub fn inverse_braid(&self) -> BraidWord {
        self.as_braid().invert()
    }
}

impl fmt::Display for HalfTwist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} : {}", self.index, self.conjugator.to_text())
    }
}

/// Half-twist along the image of `h`'s arc under the braid `beta`.
///
/// With letters acting left to right the image arc has conjugator `β⁻¹·w`, so
/// `as_braid(result) = β⁻¹ · as_braid(h) · β`.
pub fn twist_arc_action(beta: &BraidWord, h: &HalfTwist) -> Result<HalfTwist> {
    let conj = beta.invert().compose(&h.conjugator)?.freely_reduced();
    HalfTwist::new(conj, h.index)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    strands: usize,
    factors: Vec<HalfTwist>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClosureInvariants {
    pub components: usize,
    /// Defined only for knots.
    pub self_linking: Option<i64>,
    pub euler_char: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum HurwitzStep {
    /// 1-based position and direction of an elementary Hurwitz move.
    Move { pos: usize, dir: i32 },
    /// Simultaneous conjugation of every factor by `σ_g` (signed).
    Conjugate { generator: i32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum HurwitzOutcome {
    Connected(Vec<HurwitzStep>),
    Exhausted { visited: usize },
    BudgetExceeded { visited: usize },
}

#[derive(Debug, Clone, Copy)]
pub struct HurwitzSearchOptions {
    pub depth: usize,
    /// Maximum number of distinct nodes visited before giving up.
    pub budget: usize,
    pub allow_conjugation: bool,
}

impl Default for HurwitzSearchOptions {
    fn default() -> Self {
        HurwitzSearchOptions {
            depth: 4,
            budget: 200_000,
            allow_conjugation: false,
        }
    }
}

impl Factorization {
    pub fn new(strands: usize, factors: Vec<HalfTwist>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::TooFewStrands { needed: 1, got: 0 });
        }
        for h in &factors {
            if h.strands() != strands {
                return Err(Error::StrandMismatch(strands, h.strands()));
            }
        }
        Ok(Factorization { strands, factors })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn factors(&self) -> &[HalfTwist] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Left-to-right product of the factors.
    pub fn product(&self) -> BraidWord {
        let mut letters = Vec::new();
        for h in &self.factors {
            letters.extend_from_slice(h.as_braid().letters());
        }
        BraidWord::new(self.strands, letters).expect("factors share the strand count")
    }

    /// Elementary Hurwitz move at 1-based `pos`: `dir = +1` replaces
    /// `(a, b)` by `(a·b·a⁻¹, a)`, `dir = -1` by `(b, b⁻¹·a·b)`.
    pub fn hurwitz_move(&self, pos: usize, dir: i32) -> Result<Factorization> {
        if pos == 0 || pos >= self.factors.len() {
            return Err(Error::PositionOutOfRange {
                pos,
                len: self.factors.len(),
            });
        }
        let a = &self.factors[pos - 1];
        let b = &self.factors[pos];
        let (first, second) = match dir {
            1 => {
                let conj = a.as_braid().compose(&b.conjugator)?.freely_reduced();
                (HalfTwist::new(conj, b.index)?, a.clone())
            }
            -1 => {
                let conj = b.inverse_braid().compose(&a.conjugator)?.freely_reduced();
                (b.clone(), HalfTwist::new(conj, a.index)?)
            }
            d => return Err(Error::BadDirection(d)),
        };
        let mut factors = self.factors.clone();
        factors[pos - 1] = first;
        factors[pos] = second;
        Ok(Factorization {
            strands: self.strands,
            factors,
        })
    }

    /// Conjugates every factor by `σ_g` (`g` signed): `h ↦ σ_g·h·σ_g⁻¹`.
    pub fn conjugate_all(&self, g: i32) -> Result<Factorization> {
        let s = BraidWord::generator(self.strands, g)?;
        let factors = self
            .factors
            .iter()
            .map(|h| {
                let conj = s.compose(&h.conjugator)?.freely_reduced();
                HalfTwist::new(conj, h.index)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Factorization {
            strands: self.strands,
            factors,
        })
    }

    /// Node key for Hurwitz search: the tuple of per-factor Artin keys.
    pub fn key(&self) -> Vec<ArtinKey> {
        self.factors.iter().map(HalfTwist::artin_key).collect()
    }

    pub fn closure_invariants(&self) -> ClosureInvariants {
        let product = self.product();
        let components = product.permutation().cycle_count();
        let m = self.strands as i64;
        ClosureInvariants {
            components,
            self_linking: (components == 1).then(|| product.exponent_sum() - m),
            euler_char: m - self.factors.len() as i64,
        }
    }

    /// Text format: header `m k`, then one `i : w` line per factor. Blank
    /// lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Factorization> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hl, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing header \"m k\""))?;
        let nums: Vec<&str> = header.split_whitespace().collect();
        let [ms, ks] = nums[..] else {
            return Err(Error::parse(hl, "header must be \"m k\""));
        };
        let m: usize = ms
            .parse()
            .map_err(|_| Error::parse(hl, format!("bad strand count {ms:?}")))?;
        let k: usize = ks
            .parse()
            .map_err(|_| Error::parse(hl, format!("bad factor count {ks:?}")))?;
        if m == 0 {
            return Err(Error::parse(hl, "strand count must be positive"));
        }
        let mut factors = Vec::with_capacity(k);
        let mut last_line = hl;
        for (ln, line) in lines {
            last_line = ln;
            let (is, ws) = line
                .split_once(':')
                .ok_or_else(|| Error::parse(ln, "expected \"i : w\""))?;
            let i: usize = is
                .trim()
                .parse()
                .map_err(|_| Error::parse(ln, format!("bad index {:?}", is.trim())))?;
            let w = BraidWord::parse(m, ws).map_err(|e| Error::parse(ln, e.to_string()))?;
            let h = HalfTwist::new(w, i).map_err(|e| Error::parse(ln, e.to_string()))?;
            factors.push(h);
        }
        if factors.len() != k {
            return Err(Error::parse(
                last_line,
                format!("header announces {k} factors, found {}", factors.len()),
            ));
        }
        Factorization::new(m, factors)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.strands, self.factors.len());
        for h in &self.factors {
            s.push_str(&h.to_string());
            s.push('\n');
        }
        s
    }
}

/// β₁(n) (`variant = 1`) or β₂(n) (`variant = 2`) on `n + 3` strands:
/// `H(a)·H(b)·H(d₁)·H(c_n)·H(d_{n+2})⋯H(d₃)`, with the first two factors
/// replaced by their images under `H(d₂)` for the second variant.
pub fn beta_family(n: usize, variant: u8, fixtures: &Fixtures) -> Result<Factorization> {
    let m = n + 3;
    let mut a = fixtures.a.on(m)?;
    let mut b = fixtures.b.on(m)?;
    match variant {
        1 => {}
        2 => {
            let d2 = HalfTwist::straight(m, 2)?.as_braid();
            a = twist_arc_action(&d2, &a)?;
            b = twist_arc_action(&d2, &b)?;
        }
        v => {
            return Err(Error::Unsupported(format!(
                "family variant {v} (expected 1 or 2)"
            )))
        }
    }
    let mut factors = vec![a, b, HalfTwist::straight(m, 1)?, fixtures.c.at(n)?];
    for j in (3..=n + 2).rev() {
        factors.push(HalfTwist::straight(m, j)?);
    }
    Factorization::new(m, factors)
}

/// Bounded breadth-first search for a sequence of Hurwitz moves taking `f` to
/// `g`. Never certifies inequivalence: failure is reported as `Exhausted` (all
/// nodes up to `depth` seen) or `BudgetExceeded`.
pub fn hurwitz_search(
    f: &Factorization,
    g: &Factorization,
    opts: HurwitzSearchOptions,
) -> Result<HurwitzOutcome> {
    if f.strands != g.strands {
        return Err(Error::StrandMismatch(f.strands, g.strands));
    }
    if f.len() != g.len() {
        return Err(Error::Shape(format!(
            "factorizations of length {} and {}",
            f.len(),
            g.len()
        )));
    }
    let target = g.key();
    let start_key = f.key();
    if start_key == target {
        return Ok(HurwitzOutcome::Connected(Vec::new()));
    }
    let mut steps: Vec<HurwitzStep> = Vec::new();
    for pos in 1..f.len() {
        steps.push(HurwitzStep::Move { pos, dir: 1 });
        steps.push(HurwitzStep::Move { pos, dir: -1 });
    }
    if opts.allow_conjugation {
        for gen in 1..f.strands as i32 {
            steps.push(HurwitzStep::Conjugate { generator: gen });
            steps.push(HurwitzStep::Conjugate { generator: -gen });
        }
    }

    // parent links: node index -> (parent index, step)
    let mut parents: Vec<Option<(usize, HurwitzStep)>> = vec![None];
    let mut seen: HashMap<Vec<ArtinKey>, usize> = HashMap::new();
    seen.insert(start_key, 0);
    let mut queue: VecDeque<(Factorization, usize, usize)> = VecDeque::new();
    queue.push_back((f.clone(), 0, 0));

    while let Some((node, idx, depth)) = queue.pop_front() {
        if depth == opts.depth {
            continue;
        }
        for &step in &steps {
            let next = match step {
                HurwitzStep::Move { pos, dir } => node.hurwitz_move(pos, dir)?,
                HurwitzStep::Conjugate { generator } => node.conjugate_all(generator)?,
            };
            let key = next.key();
            if seen.contains_key(&key) {
                continue;
            }
            let nidx = parents.len();
            parents.push(Some((idx, step)));
            if key == target {
                let mut path = Vec::new();
                let mut cur = nidx;
                while let Some((p, s)) = parents[cur] {
                    path.push(s);
                    cur = p;
                }
                path.reverse();
                return Ok(HurwitzOutcome::Connected(path));
            }
            seen.insert(key, nidx);
            if seen.len() >= opts.budget {
                return Ok(HurwitzOutcome::BudgetExceeded { visited: seen.len() });
            }
            queue.push_back((next, nidx, depth + 1));
        }
    }
    Ok(HurwitzOutcome::Exhausted { visited: seen.len() })
}

/// Replays a search path.
pub fn apply_path(f: &Factorization, path: &[HurwitzStep]) -> Result<Factorization> {
    let mut cur = f.clone();
    for step in path {
        cur = match *step {
            HurwitzStep::Move { pos, dir } => cur.hurwitz_move(pos, dir)?,
            HurwitzStep::Conjugate { generator } => cur.conjugate_all(generator)?,
        };
    }
    Ok(cur)
}

/// Endpoints of every factor, for display.
pub fn transpositions(f: &Factorization) -> Vec<(usize, usize)> {
    f.factors.iter().map(HalfTwist::endpoints).collect()
}

pub fn product_permutation(f: &Factorization) -> Permutation {
    f.product().permutation()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bw(m: usize, l: &[i32]) -> BraidWord {
        BraidWord::new(m, l.iter().copied()).unwrap()
    }

    #[test]
    fn as_braid_examples() {
        assert_eq!(HalfTwist::straight(2, 1).unwrap().as_braid(), bw(2, &[1]));
        let h = HalfTwist::new(bw(3, &[2]), 1).unwrap();
        assert_eq!(h.as_braid(), bw(3, &[2, 1, -2]));
        assert_eq!(h.endpoints(), (1, 3));
        assert!(HalfTwist::new(bw(3, &[]), 3).is_err());
    }

    #[test]
    fn twist_arc_action_examples() {
        let h = HalfTwist::straight(3, 1).unwrap();
        let same = twist_arc_action(&BraidWord::identity(3), &h).unwrap();
        assert!(same.as_braid().braids_equal(&h.as_braid()).unwrap());
        let s1 = bw(3, &[1]);
        let r = twist_arc_action(&s1, &h).unwrap();
        assert!(r.as_braid().braids_equal(&s1).unwrap());
        let beta = bw(3, &[2, -1, 2]);
        let h = HalfTwist::new(bw(3, &[1, 2]), 1).unwrap();
        let r = twist_arc_action(&beta, &h).unwrap();
        let expect = beta.invert().compose(&h.as_braid()).unwrap().compose(&beta).unwrap();
        assert!(r.as_braid().braids_equal(&expect).unwrap());
    }

    #[test]
    fn empty_product_is_identity() {
        let f = Factorization::new(3, vec![]).unwrap();
        assert!(f.product().is_empty());
        let c = f.closure_invariants();
        assert_eq!(c.components, 3);
        let disk = Factorization::new(1, vec![]).unwrap().closure_invariants();
        assert_eq!((disk.components, disk.euler_char), (1, 1));
    }

    #[test]
    fn hurwitz_move_edge_cases() {
        let f = Factorization::new(2, vec![HalfTwist::straight(2, 1).unwrap()]).unwrap();
        assert!(f.hurwitz_move(1, 1).is_err());
        let g = Factorization::new(
            3,
            vec![HalfTwist::straight(3, 1).unwrap(), HalfTwist::straight(3, 2).unwrap()],
        )
        .unwrap();
        assert!(g.hurwitz_move(1, 2).is_err());
        assert!(g.hurwitz_move(0, 1).is_err());
        let back = g.hurwitz_move(1, 1).unwrap().hurwitz_move(1, -1).unwrap();
        for (x, y) in back.factors().iter().zip(g.factors()) {
            assert!(x.as_braid().braids_equal(&y.as_braid()).unwrap());
        }
    }

    #[test]
    fn text_format_roundtrip() {
        let f = beta_family(1, 2, &Fixtures::default()).unwrap();
        let g = Factorization::parse(&f.to_text()).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn text_format_errors_carry_line_numbers() {
        let e = Factorization::parse("3 2\n1 : \n# c\n2 : 1 5\n").unwrap_err();
        assert_eq!(e, Error::parse(4, "generator index 5 out of range for 3 strands"));
        let e = Factorization::parse("3 2\n1 : \n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        let e = Factorization::parse("3\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }));
        let e = Factorization::parse("3 1\n1 2\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn family_shapes() {
        let fx = Fixtures::default();
        let f = beta_family(0, 1, &fx).unwrap();
        assert_eq!((f.strands(), f.len()), (3, 4));
        let g = beta_family(1, 2, &fx).unwrap();
        assert_eq!((g.strands(), g.len()), (4, 5));
        let expect = twist_arc_action(&bw(4, &[2]), &fx.a.on(4).unwrap()).unwrap();
        assert_eq!(g.factors()[0], expect);
        for n in 0..6 {
            let f1 = beta_family(n, 1, &fx).unwrap();
            let f2 = beta_family(n, 2, &fx).unwrap();
            assert_ne!(f1.factors()[0].artin_key(), f2.factors()[0].artin_key());
            assert_ne!(f1.factors()[1].artin_key(), f2.factors()[1].artin_key());
            assert_eq!(f1.factors()[2..], f2.factors()[2..]);
        }
        assert!(beta_family(0, 3, &fx).is_err());
    }

    #[test]
    fn d_arcs_are_generators() {
        let fx = Fixtures::default();
        let f = beta_family(3, 1, &fx).unwrap();
        let tail: Vec<usize> = f.factors()[4..].iter().map(|h| h.index()).collect();
        assert_eq!(tail, vec![5, 4, 3]);
        assert!(f.factors()[4..].iter().all(|h| h.conjugator().is_empty()));
    }

    #[test]
    fn search_trivial_cases() {
        let fx = Fixtures::default();
        let f = beta_family(0, 1, &fx).unwrap();
        let opts = HurwitzSearchOptions {
            depth: 1,
            ..Default::default()
        };
        assert_eq!(hurwitz_search(&f, &f, opts).unwrap(), HurwitzOutcome::Connected(vec![]));
        let g = f.hurwitz_move(2, -1).unwrap();
        match hurwitz_search(&f, &g, opts).unwrap() {
            HurwitzOutcome::Connected(p) => {
                assert_eq!(p.len(), 1);
                assert_eq!(apply_path(&f, &p).unwrap().key(), g.key());
            }
            other => panic!("expected a path, got {other:?}"),
        }
    }
}
