use blockzeta::identities::{gen_cyclic_full, Identity};
use blockzeta::numerics::MzvEvaluator;
use blockzeta::rank::{rank_of, vectorize};
use blockzeta::regularise::{regularise, shuffle_words};
use blockzeta::word::{mzv_to_word, BlockDecomposition, Word, ZetaComposition};
use blockzeta::LinComb;
use proptest::prelude::*;

fn lengths() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1usize..5, 2..6).prop_filter("non-trivial", |l| {
        let n: usize = l.iter().sum::<usize>() - 2;
        (n + l.len()) % 2 == 1 && n >= 2
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn identity_json_round_trip(l in lengths()) {
        if let Ok(id) = gen_cyclic_full(&l) {
            let back = Identity::from_json(&id.to_json()).unwrap();
            prop_assert_eq!(back, id);
        }
    }

    #[test]
    fn dual_is_a_signed_involution(l in prop::collection::vec(1usize..6, 1..6)) {
        prop_assume!(l.iter().sum::<usize>() >= 2);
        let b = BlockDecomposition::from_lengths(&l).unwrap();
        let (d, s) = b.dual();
        let (dd, t) = d.dual();
        prop_assert_eq!(dd, b.clone());
        prop_assert_eq!(s * t, 1);
        let rev: Vec<usize> = l.iter().rev().copied().collect();
        prop_assert_eq!(d.lengths(), &rev[..]);
    }

    #[test]
    fn cyclic_rows_are_invariant_under_rotation(l in lengths(), k in 0usize..5) {
        let k = k % l.len();
        let mut r = l[k..].to_vec();
        r.extend_from_slice(&l[..k]);
        if let (Ok(a), Ok(b)) = (gen_cyclic_full(&l), gen_cyclic_full(&r)) {
            let (va, vb) = (vectorize(&a).unwrap(), vectorize(&b).unwrap());
            prop_assert_eq!(rank_of(&[va.clone(), vb]), rank_of(&[va]));
        }
    }
}

#[test]
fn shuffle_matches_numerics() {
    let ev = MzvEvaluator::new();
    let z = |a: &[u32]| ZetaComposition::new(a.to_vec()).unwrap();
    for (a, b) in [(vec![2], vec![3]), (vec![2, 2], vec![3]), (vec![1, 3], vec![2])] {
        let (u, su) = mzv_to_word(&z(&a)).unwrap();
        let (v, sv) = mzv_to_word(&z(&b)).unwrap();
        let prod = shuffle_words(&u, &v).unwrap();
        let lhs = ev.eval_lincomb(&regularise(&prod).unwrap(), 30).unwrap();
        let rhs = ev.eval_mzv(&z(&a), 30).unwrap().mul(&ev.eval_mzv(&z(&b), 30).unwrap()).mul_int((su * sv) as i64);
        let d = lhs.sub(&rhs);
        assert!(d.abs_log10().max(d.err_log10()) < -30.0, "{a:?} {b:?}");
    }
}

#[test]
fn duality_holds_numerically() {
    let ev = MzvEvaluator::new();
    for s in ["01001", "0100101", "01101001"] {
        let w: Word = s.parse().unwrap();
        let (d, sign) = w.blocks().dual();
        let mut c = LinComb::term(w);
        c.add_coeff(d.word(), blockzeta::linear::int(-sign as i64));
        let v = ev.eval_words(&c, 30).unwrap();
        assert!(v.abs_log10().max(v.err_log10()) < -30.0, "{s}");
    }
}
