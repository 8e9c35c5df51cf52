use proptest::prelude::*;
use schubert_core::order::{canonical_u, k_bruhat_interval, k_bruhat_leq, prec_leq, prec_rank};
use schubert_core::partition::{Composition, Partition};
use schubert_core::perm::{grassmannian, grassmannian_shape, irreducible_factorization, shape_embed, Permutation};
use schubert_core::poly::MultiPolynomial;
use schubert_core::poset::LabeledPoset;
use schubert_core::schubert::{expand_in_schubert, from_code, lehmer_code, schubert_poly, skew_schubert, SchubertExpansion};
use schubert_core::stanley::{format_blocks, parse_blocks, reduced_words, word_tableau, word_tableau_of, ReducedWord};

fn perm(max_n: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_n).prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle()).prop_map(|v| Permutation::from_oneline(v).unwrap())
}

fn partition(max_parts: usize, max_part: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(0..=max_part, 0..=max_parts).prop_map(Partition::from_unsorted)
}

/// Positions `p_1 < p_2 < ⋯` of the given length inside `1..=limit`.
fn positions(len: usize, limit: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::sample::subsequence((1..=limit).collect::<Vec<_>>(), len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn group_laws(a in perm(7), b in perm(7), c in perm(7)) {
        prop_assert!(a.compose(&a.inverse()).is_identity());
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        prop_assert_eq!(a.length(), a.inverse().length());
        let ab = a.compose(&b).length() as i64;
        prop_assert_eq!((ab - a.length() as i64 - b.length() as i64).rem_euclid(2), 0);
    }

    #[test]
    fn notation_round_trips(w in perm(12)) {
        prop_assert_eq!(&w.to_string().parse::<Permutation>().unwrap(), &w);
        prop_assert_eq!(&w.cycle_notation().parse::<Permutation>().unwrap(), &w);
        prop_assert_eq!(&from_code(&lehmer_code(&w)), &w);
        let json = serde_json::to_string(&w).unwrap();
        prop_assert_eq!(serde_json::from_str::<Permutation>(&json).unwrap(), w);
    }

    #[test]
    fn partitions_round_trip(l in partition(6, 6)) {
        prop_assert_eq!(&l.conjugate().conjugate(), &l);
        prop_assert_eq!(l.conjugate().size(), l.size());
        prop_assert_eq!(&l.to_string().parse::<Partition>().unwrap(), &l);
        prop_assert!(l.subpartitions().iter().all(|m| l.contains(m)));
    }

    #[test]
    fn grassmannian_round_trip(l in partition(4, 5), extra in 0usize..3) {
        let k = l.len().max(1) + extra;
        let w = grassmannian(&l, k).unwrap();
        prop_assert!(w.descents().iter().all(|&d| d == k));
        prop_assert_eq!(w.length(), l.size());
        prop_assert_eq!(grassmannian_shape(&w, k).unwrap(), l);
    }

    #[test]
    fn divided_differences_lower_schubert_polynomials(w in perm(6), i in 1usize..6) {
        let d = schubert_poly(&w).divided_difference(i);
        if w.apply(i) > w.apply(i + 1) {
            prop_assert_eq!(d, schubert_poly(&w.swap_positions(i, i + 1)));
        } else {
            prop_assert!(d.is_zero());
        }
    }

    #[test]
    fn expansions_recover_combinations(ws in prop::collection::vec((perm(5), -3i64..=3), 1..5)) {
        let mut want = SchubertExpansion::new();
        let mut f = MultiPolynomial::zero();
        for (w, c) in &ws {
            want.add(w.clone(), *c);
            f = &f + &schubert_poly(w).scale(*c);
        }
        prop_assert_eq!(expand_in_schubert(&f).unwrap(), want);
    }

    #[test]
    fn factorization_is_a_disjoint_product(z in perm(7)) {
        let factors = irreducible_factorization(&z);
        let prod = factors.iter().fold(Permutation::identity(), |acc, f| acc.compose(f));
        prop_assert_eq!(&prod, &z);
        prop_assert_eq!(factors.iter().map(prec_rank).sum::<usize>(), prec_rank(&z));
        for f in &factors {
            prop_assert!(prec_leq(f, &z));
        }
    }

    #[test]
    fn canonical_u_is_a_witness(z in perm(7)) {
        prop_assume!(!z.is_identity());
        let (u, k) = canonical_u(&z);
        let w = z.compose(&u);
        prop_assert!(k_bruhat_leq(&u, &w, k));
        prop_assert!(w.descents().iter().all(|&d| d == k));
        prop_assert_eq!(w.length() - u.length(), prec_rank(&z));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn skew_schubert_is_a_shape_invariant(z in perm(4), pos in positions(4, 7)) {
        let e = shape_embed(&z, &pos).unwrap();
        prop_assert_eq!(skew_schubert(&e).unwrap(), skew_schubert(&z).unwrap());
    }

    #[test]
    fn reduced_words_spell_their_target(w in perm(5), pick in any::<prop::sample::Index>()) {
        let words = reduced_words(&w);
        prop_assert!(!words.is_empty());
        let rho = pick.get(&words);
        prop_assert_eq!(rho.len(), w.length());
        prop_assert_eq!(rho.target(), &w);
        prop_assert_eq!(&ReducedWord::new(rho.letters().to_vec()).unwrap(), rho);
        let t = word_tableau_of(rho);
        prop_assert_eq!(t.word(), rho.letters().to_vec());
        prop_assert_eq!(t.composition(), rho.descent_composition());
        // any coarsening of the descent composition also fits
        let alpha = Composition::new(vec![w.length() as i64]);
        prop_assert_eq!(word_tableau(&alpha, rho).is_ok(), rho.descent_set().is_empty());
        let shown = format_blocks(rho.letters(), &rho.descent_composition());
        let (letters, blocks) = parse_blocks(&shown).unwrap();
        prop_assert_eq!(letters.as_slice(), rho.letters());
        prop_assert_eq!(blocks, rho.descent_composition());
    }

    #[test]
    fn intervals_survive_json(u in perm(5), steps in 1usize..4, k in 1usize..5, seed in any::<u64>()) {
        use rand::{seq::SliceRandom, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut w = u.clone();
        for _ in 0..steps {
            let covers: Vec<_> = schubert_core::order::k_bruhat_covers(&w, k).into_iter().map(|c| c.0).collect();
            if let Some(c) = covers.choose(&mut rng) {
                w = c.clone();
            }
        }
        let p = k_bruhat_interval(&u, &w, k).unwrap();
        let back: LabeledPoset = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        prop_assert!(back.is_isomorphic(&p));
        prop_assert_eq!(back.maximal_chain_words(), p.maximal_chain_words());
        prop_assert!(p.is_symmetric());
    }
}
