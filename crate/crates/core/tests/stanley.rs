use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use schubert_core::order::weak_interval;
use schubert_core::partition::{Composition, Partition};
use schubert_core::perm::{all_permutations, Permutation};
use schubert_core::poset::lambda_pi_terms;
use schubert_core::stanley::*;

fn brute_reduced_words(w: &Permutation) -> BTreeSet<Vec<usize>> {
    // every word of length ℓ(w) over 1..n-1 that multiplies out to w
    let n = w.n().max(1);
    let m = w.length();
    let mut out = BTreeSet::new();
    let total = (n.saturating_sub(1)).pow(m as u32);
    for mut code in 0..total {
        let mut letters = Vec::with_capacity(m);
        for _ in 0..m {
            letters.push(code % (n - 1) + 1);
            code /= n - 1;
        }
        let mut cur = Permutation::identity();
        for &i in &letters {
            cur = cur.swap_values(i, i + 1);
        }
        if &cur == w {
            out.insert(letters);
        }
    }
    out
}

fn s4_s5_sample() -> Vec<Permutation> {
    let mut ws = all_permutations(4);
    let s5 = all_permutations(5);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    ws.extend(s5.choose_multiple(&mut rng, 20).cloned());
    ws
}

#[test]
fn reduced_words_match_brute_force() {
    for w in all_permutations(4) {
        let fast: BTreeSet<Vec<usize>> = reduced_words(&w).iter().map(|r| r.letters().to_vec()).collect();
        assert_eq!(fast, brute_reduced_words(&w), "{w}");
        let chains: BTreeSet<Vec<usize>> = weak_interval(&Permutation::identity(), &w)
            .unwrap()
            .maximal_chain_words()
            .into_iter()
            .map(|c| c.into_iter().map(|x| x as usize).collect())
            .collect();
        assert_eq!(fast, chains, "{w}");
    }
    assert_eq!(reduced_words(&Permutation::longest(4)).len(), brute_reduced_words(&Permutation::longest(4)).len());
}

#[test]
fn stanley_matches_weak_interval_symfunc() {
    for w in s4_s5_sample() {
        let f = stanley_function(&w);
        assert!(f.is_nonnegative());
        let p = weak_interval(&Permutation::identity(), &w).unwrap();
        assert_eq!(f, p.symfunc().unwrap(), "F_{w}");
    }
}

#[test]
fn stanley_product_of_disjoint_supports() {
    let w: Permutation = "21".parse().unwrap();
    let u: Permutation = "1243".parse().unwrap();
    let wu: Permutation = "2143".parse().unwrap();
    let prod = stanley_function(&w).mul(&stanley_function(&u)).unwrap();
    assert_eq!(stanley_function(&wu), prod.to_schur());
    let w: Permutation = "321".parse().unwrap();
    let u: Permutation = "12354".parse().unwrap();
    let wu: Permutation = "32154".parse().unwrap();
    let prod = stanley_function(&w).mul(&stanley_function(&u)).unwrap();
    assert_eq!(stanley_function(&wu), prod.to_schur());
}

#[test]
fn theta_is_a_sign_reversing_involution() {
    for w in s4_s5_sample() {
        for lambda in Partition::all(w.length()) {
            let domain = theta_domain(&w, &lambda);
            let mut fixed = 0u64;
            for (sign, pi, rho) in &domain {
                let step = theta(pi, rho, &lambda).unwrap();
                match step.r {
                    None => {
                        fixed += 1;
                        assert!(pi.is_identity());
                        assert_eq!(word_tableau_of(rho).partition_shape().as_ref(), Some(&lambda));
                    }
                    Some(r) => {
                        assert_eq!(pi.length().abs_diff(step.pi.length()), 1);
                        let sign2 = lambda_pi_terms(&lambda).into_iter().find(|t| t.1 == step.pi).unwrap().0;
                        assert_eq!(sign2, -sign);
                        let back = theta(&step.pi, &step.word, &lambda).unwrap();
                        assert_eq!(back.r, Some(r), "{w} {lambda} {rho}");
                        assert_eq!((&back.pi, &back.word), (pi, rho));
                    }
                }
            }
            let a = stanley_coefficient(&w, &lambda);
            assert_eq!(fixed, a, "{w} {lambda}");
            assert_eq!(signed_h_sum(&w, &lambda), a as i64);
        }
    }
}

#[test]
fn two_row_bijections_round_trip() {
    for w in all_permutations(4).into_iter().chain(all_permutations(5).into_iter().step_by(7)) {
        let words = reduced_words(&w);
        let m = w.length();
        for q in 0..=m {
            let p = m - q;
            let alpha = Composition::from_usizes(&[q, p]);
            let dom: Vec<&ReducedWord> = words.iter().filter(|r| r.fits(&alpha)).collect();
            if p < q {
                let image: BTreeSet<ReducedWord> = dom
                    .iter()
                    .map(|r| {
                        let x = two_row_bijection(r, q, p, Variant::Full).unwrap();
                        assert!(x.fits(&Composition::from_usizes(&[p, q])));
                        assert_eq!(&two_row_bijection(&x, p, q, Variant::Full).unwrap(), *r);
                        x
                    })
                    .collect();
                assert_eq!(image.len(), dom.len());
                assert_eq!(image.len(), words.iter().filter(|r| r.fits(&Composition::from_usizes(&[p, q]))).count());
            }
            if q >= 1 {
                let skew: Vec<&&ReducedWord> = dom.iter().filter(|r| !word_tableau(&alpha, r).unwrap().is_partition_shape()).collect();
                let target = Composition::from_usizes(&[p + 1, q - 1]);
                let image: BTreeSet<ReducedWord> = skew
                    .iter()
                    .map(|r| {
                        let x = two_row_bijection(r, q, p, Variant::OffByOne).unwrap();
                        let t = word_tableau(&target, &x).unwrap();
                        assert!(!t.is_partition_shape(), "{r} -> {x}");
                        assert_eq!(&two_row_bijection(&x, p + 1, q - 1, Variant::OffByOne).unwrap(), **r);
                        x
                    })
                    .collect();
                assert_eq!(image.len(), skew.len());
            }
        }
    }
}

#[test]
fn slides_round_trip_on_small_tableaux() {
    for n in 2..=5 {
        for w in all_permutations(n) {
            if w.length() > 8 {
                continue;
            }
            for rho in reduced_words(&w) {
                let m = rho.len();
                for q in 0..=m {
                    let alpha = Composition::from_usizes(&[q, m - q]);
                    let Ok(t) = word_tableau(&alpha, &rho) else { continue };
                    let (y, p) = (t.rows()[0].offset, m - q);
                    if y > 0 {
                        let s = inward_slide(&t).unwrap();
                        assert_eq!(ReducedWord::new(s.word()).unwrap().target(), &w);
                        assert_eq!(outward_slide(&s).unwrap(), t);
                    }
                    if y + p > q {
                        let s = outward_slide(&t).unwrap();
                        assert_eq!(ReducedWord::new(s.word()).unwrap().target(), &w);
                        assert_eq!(inward_slide(&s).unwrap(), t);
                    }
                }
            }
        }
    }
}

#[test]
fn block_swaps_preserve_h_counts() {
    for w in all_permutations(4) {
        let words = reduced_words(&w);
        let m = w.length();
        for alpha in Composition::all_positive(m).into_iter().filter(|a| a.len() >= 2) {
            for j in 1..alpha.len() {
                let dom: Vec<&ReducedWord> = words.iter().filter(|r| r.fits(&alpha)).collect();
                let image: BTreeSet<ReducedWord> = dom.iter().map(|r| swap_blocks(r, &alpha, j).unwrap().0).collect();
                assert_eq!(image.len(), dom.len());
                let mut parts = alpha.parts().to_vec();
                parts.swap(j - 1, j);
                assert_eq!(h_alpha_count(&w, &Composition::new(parts)), dom.len());
            }
        }
    }
}

#[test]
fn selectors_agree_everywhere() {
    for w in all_permutations(4) {
        for lambda in Partition::all(w.length()) {
            for (_, pi, rho) in theta_domain(&w, &lambda) {
                let alpha = schubert_core::poset::lambda_pi(&lambda, &pi, lambda.len()).unwrap();
                let t = word_tableau(&alpha, &rho).unwrap();
                let rows: Vec<Vec<usize>> = t.rows().iter().map(|r| r.entries.clone()).collect();
                assert_eq!(select_row_left_justified(&rows), select_row_by_counts(&rows));
            }
        }
    }
}

#[test]
fn word_tableau_rejects_bad_descents() {
    let rho = ReducedWord::new(vec![2, 1, 2]).unwrap();
    assert!(word_tableau(&Composition::from_usizes(&[3]), &rho).is_err());
    let t = word_tableau(&Composition::from_usizes(&[1, 2]), &rho).unwrap();
    assert_eq!(t.partition_shape(), Some(Partition::new(vec![2, 1]).unwrap()));
    let single = word_tableau(&Composition::from_usizes(&[2]), &ReducedWord::new(vec![1, 2]).unwrap()).unwrap();
    assert_eq!(single.rows().len(), 1);
    assert!(single.is_partition_shape());
}
