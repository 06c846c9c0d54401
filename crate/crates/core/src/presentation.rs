//! Zariski–van Kampen presentations of braided-surface complements, Tietze
//! simplification, abelianization and the arc-word search.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::factorization::{Factorization, HalfTwist};
use crate::free::FreeWord;
use crate::intlinalg::{cokernel, AbelianGroup, IntMatrix};

/// `⟨ γ_g (g ∈ generators) | relators ⟩`. Relators live in the free group on
/// `rank` letters; `generators` lists the labels still present.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPresentation {
    rank: usize,
    generators: Vec<usize>,
    relators: Vec<FreeWord>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VkMode {
    /// One relator `A_j·B_j⁻¹` per factor.
    Single,
    /// `γ_t = φ_j(γ_t)` for every generator and factor.
    Full,
}

impl GroupPresentation {
    pub fn new(rank: usize, relators: Vec<FreeWord>) -> Self {
        let relators = relators
            .into_iter()
            .map(|r| r.with_rank(rank))
            .filter(|r| !r.is_identity())
            .collect();
        GroupPresentation {
            rank,
            generators: (1..=rank).collect(),
            relators,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn relators(&self) -> &[FreeWord] {
        &self.relators
    }

    /// True for `⟨γ | −⟩`.
    pub fn is_infinite_cyclic_presentation(&self) -> bool {
        self.generators.len() == 1 && self.relators.is_empty()
    }

    /// Relators as canonical cyclic words, sorted: the multiset used for
    /// string-level comparison of relator lists.
    pub fn canonical_relators(&self) -> Vec<FreeWord> {
        canonical_multiset(&self.relators)
    }

    pub fn summary(&self) -> String {
        self.to_string()
    }
}

pub fn canonical_multiset(words: &[FreeWord]) -> Vec<FreeWord> {
    let mut v: Vec<FreeWord> = words.iter().map(FreeWord::cyclic_canonical).collect();
    v.sort();
    v
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| format!("γ{g}")).collect();
        let rels: Vec<String> = self.relators.iter().map(|r| r.to_string()).collect();
        let rels = if rels.is_empty() {
            "−".to_string()
        } else {
            rels.join(", ")
        };
        write!(f, "⟨{} | {}⟩", gens.join(", "), rels)
    }
}

/// Relator contributed by one factor in single mode: `A·B⁻¹` with `A = γ_p`
/// for `p` the smaller endpoint of the factor's arc and `B` its image under
/// the factor's Artin automorphism.
pub fn single_relator(h: &HalfTwist) -> FreeWord {
    let m = h.strands();
    let (p, _) = h.endpoints();
    let key = h.artin_key();
    let a = FreeWord::generator(m, p);
    a.mul(&key.images()[p - 1].inverse())
}

pub fn vk_presentation(f: &Factorization, mode: VkMode) -> GroupPresentation {
    let m = f.strands();
    let mut relators = Vec::new();
    for h in f.factors() {
        match mode {
            VkMode::Single => relators.push(single_relator(h)),
            VkMode::Full => {
                let key = h.artin_key();
                for (t, img) in key.images().iter().enumerate() {
                    relators.push(FreeWord::generator(m, t + 1).mul(&img.inverse()));
                }
            }
        }
    }
    GroupPresentation::new(m, relators)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TietzeResult {
    pub presentation: GroupPresentation,
    /// Reached a fixpoint of the rewriting loop (as opposed to running out of budget).
    pub is_final: bool,
    pub steps: usize,
}

impl TietzeResult {
    /// Success in the only direction the heuristic can certify.
    pub fn proves_infinite_cyclic(&self) -> bool {
        self.presentation.is_infinite_cyclic_presentation()
    }
}

fn normalize_relators(relators: &mut Vec<FreeWord>) {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for r in relators.drain(..) {
        let c = r.cyclically_reduced();
        if c.is_identity() {
            continue;
        }
        if seen.insert(c.cyclic_canonical()) {
            out.push(c);
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.letters().cmp(b.letters())));
    *relators = out;
}

/// Deterministic Tietze loop: cyclic reduction, removal of trivial and
/// duplicate relators, then elimination of a generator occurring exactly once
/// in the shortest possible relator (highest label first). Each elimination
/// costs one step of `budget`.
pub fn tietze_simplify(p: &GroupPresentation, budget: usize) -> TietzeResult {
    let mut pres = p.clone();
    let mut steps = 0;
    loop {
        normalize_relators(&mut pres.relators);
        let candidate = pres.relators.iter().enumerate().find_map(|(ri, r)| {
            pres.generators
                .iter()
                .rev()
                .find(|&&g| r.occurrences(g) == 1)
                .map(|&g| (ri, g))
        });
        let Some((ri, g)) = candidate else {
            return TietzeResult {
                presentation: pres,
                is_final: true,
                steps,
            };
        };
        if steps >= budget {
            return TietzeResult {
                presentation: pres,
                is_final: false,
                steps,
            };
        }
        let r = pres.relators.remove(ri);
        let letters = r.letters();
        let pos = letters
            .iter()
            .position(|&x| x.unsigned_abs() as usize == g)
            .expect("generator occurs");
        let e = letters[pos];
        let u = FreeWord::from_letters_unchecked(pres.rank, letters[..pos].iter().copied());
        let v = FreeWord::from_letters_unchecked(pres.rank, letters[pos + 1..].iter().copied());
        // u·g^e·v = 1
        let value = if e > 0 {
            u.inverse().mul(&v.inverse())
        } else {
            v.mul(&u)
        };
        let images: Vec<FreeWord> = (1..=pres.rank)
            .map(|t| {
                if t == g {
                    value.clone()
                } else {
                    FreeWord::generator(pres.rank, t)
                }
            })
            .collect();
        for rel in pres.relators.iter_mut() {
            *rel = rel.substitute(&images);
        }
        pres.generators.retain(|&x| x != g);
        steps += 1;
    }
}

/// Abelianization via the Smith form of the relator exponent-sum matrix.
pub fn abelianization(p: &GroupPresentation) -> AbelianGroup {
    let gens = &p.generators;
    let mut m = IntMatrix::zeros(gens.len(), p.relators.len());
    for (j, r) in p.relators.iter().enumerate() {
        let sums = r.exponent_sums();
        for (i, &g) in gens.iter().enumerate() {
            m[(i, j)] = sums[g - 1].into();
        }
    }
    cokernel(&m)
}

/// Every reduced conjugator word is visited in this order: shorter first, then
/// lexicographically with letters ordered `1, -1, 2, -2, …`.
fn for_each_word(
    strands: usize,
    max_len: usize,
    mut visit: impl FnMut(&[i32]) -> bool,
) -> bool {
    let alphabet: Vec<i32> = (1..strands as i32).flat_map(|g| [g, -g]).collect();
    fn rec(
        alphabet: &[i32],
        cur: &mut Vec<i32>,
        left: usize,
        visit: &mut dyn FnMut(&[i32]) -> bool,
    ) -> bool {
        if left == 0 {
            return visit(cur);
        }
        for &g in alphabet {
            if cur.last() == Some(&-g) {
                continue;
            }
            cur.push(g);
            let stop = rec(alphabet, cur, left - 1, visit);
            cur.pop();
            if stop {
                return true;
            }
        }
        false
    }
    for len in 0..=max_len {
        if rec(&alphabet, &mut Vec::new(), len, &mut visit) {
            return true;
        }
    }
    false
}

/// All half-twists `(w, index)` with `|w| ≤ max_len` whose single-mode relator
/// agrees with `target` up to rotation and inversion, one per distinct braid,
/// in search order.
pub fn find_arc_words(target: &FreeWord, index: usize, max_len: usize) -> Result<Vec<HalfTwist>> {
    let m = target.rank();
    if index == 0 || index >= m {
        return Err(Error::GeneratorOutOfRange {
            index: index as i64,
            strands: m,
        });
    }
    let want = target.cyclic_canonical();
    let mut found = Vec::new();
    let mut keys = HashSet::new();
    for_each_word(m, max_len, |w| {
        let conj = BraidWord::new(m, w.iter().copied()).expect("alphabet in range");
        let h = HalfTwist::new(conj, index).expect("index checked");
        if single_relator(&h).cyclic_canonical() == want && keys.insert(h.artin_key()) {
            found.push(h);
        }
        false
    });
    Ok(found)
}

/// First half-twist in search order reproducing `target`.
pub fn find_arc_word(target: &FreeWord, index: usize, max_len: usize) -> Result<HalfTwist> {
    let m = target.rank();
    if index == 0 || index >= m {
        return Err(Error::GeneratorOutOfRange {
            index: index as i64,
            strands: m,
        });
    }
    let want = target.cyclic_canonical();
    let mut hit = None;
    for_each_word(m, max_len, |w| {
        let conj = BraidWord::new(m, w.iter().copied()).expect("alphabet in range");
        let h = HalfTwist::new(conj, index).expect("index checked");
        if single_relator(&h).cyclic_canonical() == want {
            hit = Some(h);
            return true;
        }
        false
    });
    hit.ok_or(Error::ArcNotFound(max_len))
}

/// The relations printed for the complement of S_variant(n), as relators
/// `lhs·rhs⁻¹`, in the printed order.
pub fn family_relators(n: usize, variant: u8) -> Result<Vec<FreeWord>> {
    let m = n + 3;
    let w = |l: &[i32]| FreeWord::new(m, l.iter().copied());
    let rel = |lhs: &[i32], rhs: &[i32]| -> Result<FreeWord> { Ok(w(lhs)?.mul(&w(rhs)?.inverse())) };
    let mut out = match variant {
        1 => vec![rel(&[1], &[2, 3, -2])?, rel(&[1], &[3])?, rel(&[1], &[2])?],
        2 => vec![rel(&[2], &[-3, -2, 1, 2, 3])?, rel(&[1], &[2])?, rel(&[1], &[2])?],
        v => return Err(Error::Unsupported(format!("family variant {v}"))),
    };
    // (γ1⋯γ_{n+2}) γ_{n+3} (γ1⋯γ_{n+2})⁻¹ = γ2
    let prefix: Vec<i32> = (1..=(n + 2) as i32).collect();
    let pw = w(&prefix)?;
    let conj = pw.mul(&FreeWord::generator(m, m)).mul(&pw.inverse());
    out.push(conj.mul(&FreeWord::generator(m, 2).inverse()));
    for j in 3..=(n + 2) as i32 {
        out.push(rel(&[j], &[j + 1])?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::Fixtures;
    use num_bigint::BigInt;

    fn fw(m: usize, l: &[i32]) -> FreeWord {
        FreeWord::new(m, l.iter().copied()).unwrap()
    }

    #[test]
    fn straight_factor_gives_adjacent_equality() {
        for m in 2..6 {
            for i in 1..m {
                let h = HalfTwist::straight(m, i).unwrap();
                let r = single_relator(&h);
                let want = fw(m, &[i as i32, -(i as i32 + 1)]);
                assert_eq!(r.cyclic_canonical(), want.cyclic_canonical());
            }
        }
    }

    #[test]
    fn tietze_single_elimination() {
        let p = GroupPresentation::new(2, vec![fw(2, &[1, -2])]);
        let t = tietze_simplify(&p, 10);
        assert!(t.is_final);
        assert_eq!(t.presentation.generators(), &[1]);
        assert!(t.presentation.relators().is_empty());
        assert_eq!(t.presentation.to_string(), "⟨γ1 | −⟩");
    }

    #[test]
    fn tietze_budget_exhaustion_is_flagged() {
        let p = GroupPresentation::new(3, vec![fw(3, &[1, -2]), fw(3, &[2, -3])]);
        let t = tietze_simplify(&p, 1);
        assert!(!t.is_final);
        assert_eq!(t.steps, 1);
        assert_eq!(t.presentation.generators().len(), 2);
    }

    #[test]
    fn tietze_keeps_torsion_relator() {
        let p = GroupPresentation::new(1, vec![fw(1, &[1, 1])]);
        let t = tietze_simplify(&p, 10);
        assert!(t.is_final);
        assert_eq!(t.presentation.relators().len(), 1);
        assert!(!t.proves_infinite_cyclic());
    }

    #[test]
    fn abelianization_examples() {
        let z = abelianization(&GroupPresentation::new(1, vec![]));
        assert_eq!((z.free_rank, z.torsion.len()), (1, 0));
        let z2 = abelianization(&GroupPresentation::new(1, vec![fw(1, &[1, 1])]));
        assert_eq!(z2.free_rank, 0);
        assert_eq!(z2.torsion, vec![BigInt::from(2)]);
    }

    #[test]
    fn find_arc_word_examples() {
        let h = find_arc_word(&fw(3, &[1, -2]), 1, 2).unwrap();
        assert!(h.conjugator().is_empty());
        assert_eq!(h.index(), 1);
        assert!(matches!(
            find_arc_word(&fw(3, &[1, 1, -2]), 1, 2),
            Err(Error::ArcNotFound(2))
        ));
        assert!(find_arc_word(&fw(3, &[1, -2]), 3, 2).is_err());
    }

    #[test]
    fn arc_a_search_finds_short_conjugator() {
        let target = FreeWord::parse_relation(3, "1 = 2 3 -2").unwrap();
        let h = find_arc_word(&target, 1, 2).unwrap();
        assert!(h.conjugator().len() <= 2);
        assert_eq!(single_relator(&h).cyclic_canonical(), target.cyclic_canonical());
    }

    #[test]
    fn arc_c0_search() {
        let rels = family_relators(0, 1).unwrap();
        let h = find_arc_word(&rels[3], 2, 3).unwrap();
        assert_eq!(h.endpoints(), (2, 3));
        let fx = Fixtures::default();
        let pinned = fx.c.at(0).unwrap();
        assert!(h.as_braid().braids_equal(&pinned.as_braid()).unwrap());
    }

    #[test]
    fn full_and_single_agree_on_a_small_family() {
        let fx = Fixtures::default();
        let f = crate::factorization::beta_family(1, 2, &fx).unwrap();
        let s = vk_presentation(&f, VkMode::Single);
        let full = vk_presentation(&f, VkMode::Full);
        assert_eq!(abelianization(&s), abelianization(&full));
        assert!(tietze_simplify(&full, 1000).proves_infinite_cyclic());
    }

    #[test]
    fn printed_relator_lists_have_expected_length() {
        assert_eq!(family_relators(0, 1).unwrap().len(), 4);
        assert_eq!(family_relators(5, 2).unwrap().len(), 9);
        assert!(family_relators(0, 7).is_err());
    }
}
