use braidcover::burau::{alexander_of_closure, burau_at_minus_one, reduced_burau, skew_form};
use braidcover::cover::{cover_form, cycle_classes, gram_on_kernel};
use braidcover::factorization::{apply_path, beta_family, HurwitzStep};
use braidcover::intlinalg::{hermite_normal_form, integer_kernel, smith_normal_form, IntMatrix, LaurentPoly};
use braidcover::presentation::{abelianization, tietze_simplify, GroupPresentation};
use braidcover::qform::{self, definiteness, represents, IntersectionForm, Representation};
use braidcover::{BraidWord, Fixtures, FreeWord};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn letter(m: usize) -> impl Strategy<Value = i32> {
    (1..m as i32, any::<bool>()).prop_map(|(g, pos)| if pos { g } else { -g })
}

fn word(m: usize, max: usize) -> impl Strategy<Value = BraidWord> {
    prop::collection::vec(letter(m), 0..max).prop_map(move |l| BraidWord::new(m, l).unwrap())
}

fn braid(max_m: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    (2..=max_m).prop_flat_map(move |m| word(m, max_len))
}

fn pair(max_m: usize, max_len: usize) -> impl Strategy<Value = (BraidWord, BraidWord)> {
    (2..=max_m).prop_flat_map(move |m| (word(m, max_len), word(m, max_len)))
}

/// Product of random elementary matrices.
fn unimodular() -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec((0..4u8, -3i64..=3), 0..8).prop_map(|ops| {
        let mut u = IntMatrix::identity(2);
        for (op, k) in ops {
            match op {
                0 => u.add_col_multiple(1, 0, &BigInt::from(k)),
                1 => u.add_col_multiple(0, 1, &BigInt::from(k)),
                2 => u.swap_cols(0, 1),
                _ => u.negate_col(0),
            }
        }
        u
    })
}

/// Definite binary forms with small entries, either sign.
fn definite_binary() -> impl Strategy<Value = IntersectionForm> {
    (1..=15i64, -7..=7i64, 1..=15i64, any::<bool>())
        .prop_filter("definite", |(a, b, c, _)| a * c - b * b > 0)
        .prop_map(|(a, b, c, neg)| {
            let s = if neg { -1 } else { 1 };
            IntersectionForm::from_i64(&[&[s * a, s * b], &[s * b, s * c]]).unwrap()
        })
}

fn matrix(max_r: usize, max_c: usize) -> impl Strategy<Value = IntMatrix> {
    (1..=max_r, 1..=max_c).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-8i64..=8, c), r)
            .prop_map(|rows| IntMatrix::from_rows(&rows).unwrap())
    })
}

fn is_unimodular(u: &IntMatrix) -> bool {
    let d = u.det().unwrap();
    d == BigInt::one() || d == -BigInt::one()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn word_times_inverse_is_trivial(b in braid(8, 16)) {
        let id = BraidWord::identity(b.strands());
        prop_assert!(b.compose(&b.invert()).unwrap().braids_equal(&id).unwrap());
        prop_assert!(b.freely_reduced().braids_equal(&b).unwrap());
        prop_assert!(b.artin_key().satisfies_artin_conditions());
    }

    #[test]
    fn permutation_is_a_homomorphism((u, v) in pair(8, 10)) {
        let uv = u.compose(&v).unwrap().permutation();
        let (pu, pv) = (u.permutation(), v.permutation());
        for t in 1..=u.strands() {
            prop_assert_eq!(uv.image(t), pv.image(pu.image(t)));
        }
    }

    #[test]
    fn conjugation_preserves_equality((u, v) in pair(6, 8)) {
        // v·u·v⁻¹ and v·(u·u⁻¹·u)·v⁻¹ name the same braid
        let padded = u.compose(&u.invert()).unwrap().compose(&u).unwrap();
        let a = v.compose(&u).unwrap().compose(&v.invert()).unwrap();
        let b = v.compose(&padded).unwrap().compose(&v.invert()).unwrap();
        prop_assert!(a.braids_equal(&b).unwrap());
    }

    #[test]
    fn burau_is_a_homomorphism((u, v) in pair(5, 8)) {
        let ru = reduced_burau(&u).unwrap().matrix;
        let rv = reduced_burau(&v).unwrap().matrix;
        let ruv = reduced_burau(&u.compose(&v).unwrap()).unwrap().matrix;
        prop_assert_eq!(ruv, ru.mul(&rv).unwrap());
    }

    #[test]
    fn burau_at_minus_one_preserves_skew_form(b in braid(8, 20)) {
        let r = burau_at_minus_one(&b).unwrap();
        let j = skew_form(b.strands() - 1);
        prop_assert_eq!(r.mul(&j).unwrap().mul(&r.transpose()).unwrap(), j);
    }

    #[test]
    fn alexander_survives_stabilization(b in braid(4, 8)) {
        let m = b.strands();
        let mut letters = b.letters().to_vec();
        letters.push(m as i32);
        let stab = BraidWord::new(m + 1, letters).unwrap();
        prop_assert_eq!(alexander_of_closure(&b).unwrap(), alexander_of_closure(&stab).unwrap());
    }

    #[test]
    fn equal_braids_have_equal_alexander((u, v) in pair(4, 6)) {
        // conjugates close up to the same link
        let c = v.compose(&u).unwrap().compose(&v.invert()).unwrap();
        prop_assert_eq!(alexander_of_closure(&u).unwrap(), alexander_of_closure(&c).unwrap());
    }

    #[test]
    fn hurwitz_moves_preserve_product_and_form(
        n in 0usize..=4,
        variant in 1u8..=2,
        moves in prop::collection::vec((0usize..64, any::<bool>()), 1..6),
    ) {
        let fx = Fixtures::default();
        let f = beta_family(n, variant, &fx).unwrap();
        let path: Vec<HurwitzStep> = moves
            .iter()
            .map(|&(p, d)| HurwitzStep::Move { pos: 1 + p % (f.len() - 1), dir: if d { 1 } else { -1 } })
            .collect();
        let g = apply_path(&f, &path).unwrap();
        prop_assert!(f.product().braids_equal(&g.product()).unwrap());
        let (cf, cg) = (cover_form(&f, fx.epsilon).unwrap(), cover_form(&g, fx.epsilon).unwrap());
        prop_assert_eq!(&cf.h1, &cg.h1);
        prop_assert!(qform::equivalent(&cf.gram, &cg.gram).unwrap());
    }

    #[test]
    fn hurwitz_move_and_inverse_cancel(n in 0usize..=3, p in 0usize..64, d in any::<bool>()) {
        let f = beta_family(n, 1, &Fixtures::default()).unwrap();
        let pos = 1 + p % (f.len() - 1);
        let dir = if d { 1 } else { -1 };
        let back = f.hurwitz_move(pos, dir).unwrap().hurwitz_move(pos, -dir).unwrap();
        prop_assert_eq!(back.key(), f.key());
    }

    #[test]
    fn gram_is_basis_independent(n in 0usize..=6, variant in 1u8..=2, u in unimodular()) {
        let fx = Fixtures::default();
        let f = beta_family(n, variant, &fx).unwrap();
        let classes = cycle_classes(&f).unwrap();
        let k = integer_kernel(&classes);
        let g0 = IntersectionForm::new(gram_on_kernel(&classes, &k, fx.epsilon)).unwrap();
        let g1 = IntersectionForm::new(gram_on_kernel(&classes, &k.mul(&u).unwrap(), fx.epsilon)).unwrap();
        prop_assert!(qform::equivalent(&g0, &g1).unwrap());
    }

    #[test]
    fn cycle_sign_flips_give_equivalent_forms(n in 0usize..=6, variant in 1u8..=2, flips in any::<u32>()) {
        let fx = Fixtures::default();
        let f = beta_family(n, variant, &fx).unwrap();
        let mut classes = cycle_classes(&f).unwrap();
        let base = IntersectionForm::new(gram_on_kernel(&classes, &integer_kernel(&classes), fx.epsilon)).unwrap();
        for j in 0..classes.cols() {
            if flips >> j & 1 == 1 {
                classes.negate_col(j);
            }
        }
        let k = integer_kernel(&classes);
        let flipped = IntersectionForm::new(gram_on_kernel(&classes, &k, fx.epsilon)).unwrap();
        prop_assert!(qform::equivalent(&base, &flipped).unwrap());
    }

    #[test]
    fn smith_form_is_exact(a in matrix(5, 6)) {
        let (u, d, v) = smith_normal_form(&a);
        prop_assert_eq!(u.mul(&d).unwrap().mul(&v).unwrap(), a.clone());
        prop_assert!(d.is_diagonal());
        prop_assert!(is_unimodular(&u) && is_unimodular(&v));
        let diag: Vec<BigInt> = (0..a.rows().min(a.cols())).map(|i| d[(i, i)].clone()).collect();
        for w in diag.windows(2) {
            if w[0].is_zero() {
                prop_assert!(w[1].is_zero());
            } else {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
        }
    }

    #[test]
    fn hermite_form_is_exact(a in matrix(5, 6)) {
        let (h, u) = hermite_normal_form(&a);
        prop_assert_eq!(u.mul(&a).unwrap(), h);
        prop_assert!(is_unimodular(&u));
    }

    #[test]
    fn kernel_is_exact_and_saturated(a in matrix(4, 7)) {
        let k = integer_kernel(&a);
        prop_assert!(a.mul(&k).unwrap().is_zero());
        prop_assert_eq!(k.cols(), a.cols() - a.rank());
        if k.cols() > 0 {
            // saturated: all invariant factors of the basis are 1
            let (_, d, _) = smith_normal_form(&k);
            for i in 0..k.cols() {
                prop_assert!(d[(i, i)] == BigInt::one() || d[(i, i)] == -BigInt::one());
            }
        }
    }

    #[test]
    fn represents_matches_box_search(q in definite_binary(), t in -20i64..=20) {
        prop_assume!(t != 0);
        let lib = represents(&q, &BigInt::from(t), None).unwrap();
        let g = q.gram();
        let (a, b, c) = (g[(0, 0)].clone(), g[(0, 1)].clone(), g[(1, 1)].clone());
        let mut brute = false;
        'outer: for x in -40i64..=40 {
            for y in -40i64..=40 {
                let (x, y) = (BigInt::from(x), BigInt::from(y));
                if &a * &x * &x + 2 * &b * &x * &y + &c * &y * &y == BigInt::from(t) {
                    brute = true;
                    break 'outer;
                }
            }
        }
        prop_assert_eq!(lib.is_yes(), brute);
        if let Representation::Yes(x) = lib {
            prop_assert_eq!(q.value(&x), BigInt::from(t));
        }
    }

    #[test]
    fn equivalence_under_unimodular_change(q in definite_binary(), u in unimodular()) {
        let moved = q.transformed(&u).unwrap();
        prop_assert!(qform::equivalent(&q, &moved).unwrap());
        prop_assert_eq!(q.det(), moved.det());
        prop_assert_eq!(q.is_even(), moved.is_even());
        prop_assert_eq!(qform::minimum(&q).unwrap(), qform::minimum(&moved).unwrap());
    }

    #[test]
    fn reduction_is_a_recorded_fixpoint(q in definite_binary()) {
        let r = qform::gauss_reduce_binary(&q).unwrap();
        let moved = q.transformed(&r.transform).unwrap();
        prop_assert_eq!(moved.gram(), &r.form);
        prop_assert!(is_unimodular(&r.transform));
        let again = qform::gauss_reduce_binary(&IntersectionForm::new(r.form.clone()).unwrap()).unwrap();
        prop_assert_eq!(&again.form, &r.form);
        prop_assert_eq!(definiteness(&q), definiteness(&IntersectionForm::new(r.form).unwrap()));
    }

    #[test]
    fn invariants_agree_with_equivalence(p in definite_binary(), q in definite_binary()) {
        if qform::equivalent(&p, &q).unwrap() {
            prop_assert_eq!(p.det(), q.det());
            prop_assert_eq!(p.is_even(), q.is_even());
            prop_assert_eq!(qform::minimum(&p).unwrap(), qform::minimum(&q).unwrap());
        }
    }

    #[test]
    fn laurent_division_inverts_multiplication(
        a in prop::collection::vec(-5i64..=5, 1..6),
        b in prop::collection::vec(-5i64..=5, 1..5),
        shift in -3i64..=3,
    ) {
        let p = LaurentPoly::from_i64(shift, &a);
        let q = LaurentPoly::from_i64(0, &b);
        prop_assume!(!q.is_zero());
        prop_assert_eq!((&p * &q).exact_divide(&q).unwrap(), p);
    }

    #[test]
    fn cyclic_canonical_ignores_rotation_and_inversion(
        l in prop::collection::vec((1i32..=4, any::<bool>()), 0..10),
        r in 0usize..10,
    ) {
        let letters: Vec<i32> = l.iter().map(|&(g, s)| if s { g } else { -g }).collect();
        let w = FreeWord::new(4, letters).unwrap();
        let c = w.cyclically_reduced();
        let k = if c.is_empty() { 0 } else { r % c.len() };
        let rotated: Vec<i32> = c.letters()[k..].iter().chain(&c.letters()[..k]).copied().collect();
        let rotated = FreeWord::new(4, rotated).unwrap();
        prop_assert_eq!(rotated.cyclic_canonical(), w.cyclic_canonical());
        prop_assert_eq!(w.inverse().cyclic_canonical(), w.cyclic_canonical());
    }

    #[test]
    fn tietze_preserves_abelianization(
        rels in prop::collection::vec(prop::collection::vec((1i32..=4, any::<bool>()), 1..6), 0..4),
    ) {
        let relators: Vec<FreeWord> = rels
            .iter()
            .map(|r| FreeWord::new(4, r.iter().map(|&(g, s)| if s { g } else { -g })).unwrap())
            .collect();
        let p = GroupPresentation::new(4, relators);
        let t = tietze_simplify(&p, 100);
        prop_assert_eq!(abelianization(&t.presentation), abelianization(&p));
    }
}
