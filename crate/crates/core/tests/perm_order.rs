use std::collections::{BTreeSet, VecDeque};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use schubert_core::order::{
    bruhat_covers, canonical_u, k_bruhat_covers, k_bruhat_interval, k_bruhat_leq, order1_map, prec_interval, prec_leq, prec_leq_by_search, prec_rank,
    weak_interval, young_interval, IntervalSpec,
};
use schubert_core::partition::Partition;
use schubert_core::perm::{
    all_permutations, compress, cyclic_shift, decreasing_cycle, grassmannian, grassmannian_shape, increasing_cycle, irreducible_factorization,
    noncrossing_closure, omega0_conjugate, shape_embed, shape_equivalent, up_down_fix, Permutation,
};
use schubert_core::poset::{poset_product, LabeledPoset, NodeKey};
use schubert_core::suite::{disjoint_products, random_k_bruhat_interval};

fn p(s: &str) -> Permutation {
    s.parse().unwrap()
}

fn part(s: &str) -> Partition {
    s.parse().unwrap()
}

#[test]
fn notation_forms_agree() {
    assert_eq!(p("2,5,3,4,1"), p("25341"));
    assert_eq!(p("(4,3,2)"), p("1423"));
    assert_eq!(p("(1,2)(3,4)"), p("2143"));
    assert_eq!(p("12345"), Permutation::identity());
    assert!("1,1".parse::<Permutation>().is_err());
    assert!("0,1".parse::<Permutation>().is_err());
    let w = p("3,1,10,2,4,5,6,7,8,9");
    assert_eq!(w.to_string().parse::<Permutation>().unwrap(), w);
}

#[test]
fn lengths_and_descents() {
    assert_eq!(Permutation::identity().length(), 0);
    assert_eq!(p("4321").length(), 6);
    assert_eq!(p("13542").length(), 4);
    assert_eq!(p("1432").descents(), BTreeSet::from([2, 3]));
    assert!(Permutation::identity().descents().is_empty());
}

#[test]
fn transpositions_change_length_by_an_odd_amount() {
    for w in all_permutations(5) {
        for a in 1..=5 {
            for b in a + 1..=5 {
                let v = w.swap_positions(a, b);
                assert_eq!(v.length().abs_diff(w.length()) % 2, 1, "{w} (a,b)=({a},{b})");
            }
        }
    }
}

#[test]
fn bruhat_covers_match_transposition_search() {
    for n in 1..=5 {
        for w in all_permutations(n) {
            let mut brute = Vec::new();
            for a in 1..=n {
                for b in a + 1..=n {
                    let v = w.swap_positions(a, b);
                    if v.length() == w.length() + 1 {
                        brute.push(v);
                    }
                }
            }
            brute.sort();
            let mut got = bruhat_covers(&w, n);
            got.sort();
            assert_eq!(got, brute, "{w} in S_{n}");
        }
    }
    assert_eq!(bruhat_covers(&Permutation::identity(), 3), vec![p("132"), p("213")]);
    assert!(bruhat_covers(&Permutation::longest(4), 4).is_empty());
}

#[test]
fn grassmannian_examples_and_round_trip() {
    assert_eq!(grassmannian(&Partition::empty(), 3).unwrap(), Permutation::identity());
    assert_eq!(grassmannian(&part("2,1"), 2).unwrap(), p("2413"));
    assert_eq!(grassmannian(&part("2"), 2).unwrap(), increasing_cycle(2, 2).unwrap());
    assert_eq!(increasing_cycle(2, 2).unwrap(), p("1423"));
    assert_eq!(increasing_cycle(1, 1).unwrap(), p("21"));
    assert_eq!(decreasing_cycle(2, 2).unwrap(), p("231"));
    assert_eq!(grassmannian(&part("1,1"), 2).unwrap(), p("231"));
    assert!(grassmannian(&part("1,1,1"), 2).is_err());
    assert!(decreasing_cycle(3, 2).is_err());
    for k in 1..=4 {
        for size in 0..=6 {
            for lambda in Partition::all(size).into_iter().filter(|l| l.len() <= k) {
                let w = grassmannian(&lambda, k).unwrap();
                assert!(w.descents().iter().all(|&d| d == k), "v({lambda},{k}) = {w}");
                assert_eq!(grassmannian_shape(&w, k).unwrap(), lambda);
                for j in 1..=k {
                    let lj = (w.apply(k + 1 - j) + j) as i64 - k as i64 - 1;
                    assert_eq!(lj, lambda.part(j) as i64, "λ_{j} of v({lambda},{k})");
                }
            }
        }
    }
}

#[test]
fn shape_embedding_and_equivalence() {
    assert_eq!(shape_embed(&p("(3,2,1)"), &[2, 4, 5]).unwrap(), p("(5,4,2)"));
    assert_eq!(shape_embed(&p("(1,2)"), &[3, 7]).unwrap(), p("(3,7)"));
    assert!(shape_equivalent(&p("(4,3,2)"), &p("(9,7,5)")));
    assert!(!shape_equivalent(&increasing_cycle(2, 1).unwrap(), &decreasing_cycle(2, 2).unwrap()));
    assert!(shape_embed(&p("321"), &[1, 2]).is_err());

    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let perms = all_permutations(4);
    for zeta in &perms {
        assert!(shape_equivalent(zeta, zeta));
        let mut pool: Vec<usize> = (1..=9).collect();
        pool.shuffle(&mut rng);
        let mut pos = pool[..4].to_vec();
        pos.sort();
        let e = shape_embed(zeta, &pos).unwrap();
        assert!(shape_equivalent(zeta, &e) && shape_equivalent(&e, zeta), "{zeta} via {pos:?}");
        assert_eq!(compress(&e), compress(zeta));
        // the embedding preserves the order-theoretic data used elsewhere
        assert_eq!(prec_rank(&e), prec_rank(zeta), "{zeta} via {pos:?}");
        assert_eq!(irreducible_factorization(&e).len(), irreducible_factorization(zeta).len());
    }
    // transitivity over S_4 (symmetry follows from the compressed form)
    for a in &perms {
        for b in perms.iter().filter(|b| shape_equivalent(a, b)) {
            for c in perms.iter().filter(|c| shape_equivalent(b, c)) {
                assert!(shape_equivalent(a, c));
            }
        }
    }
}

#[test]
fn up_down_fix_examples() {
    let udf = up_down_fix(&p("1423"));
    assert_eq!((udf.up, udf.down), (BTreeSet::from([2]), BTreeSet::from([3, 4])));
    let udf = up_down_fix(&p("231"));
    assert_eq!((udf.up, udf.down), (BTreeSet::from([1, 2]), BTreeSet::from([3])));
    assert!(up_down_fix(&Permutation::identity()).up.is_empty());
}

#[test]
fn factorization_invariants() {
    assert!(irreducible_factorization(&Permutation::identity()).is_empty());
    assert_eq!(irreducible_factorization(&p("(1,2)(3,4)")), vec![p("(1,2)"), p("(3,4)")]);
    assert_eq!(irreducible_factorization(&p("(1,3)(2,4)")), vec![p("(1,3)(2,4)")]);
    for zeta in all_permutations(6) {
        let factors = irreducible_factorization(&zeta);
        let prod = factors.iter().fold(Permutation::identity(), |acc, f| acc.compose(f));
        assert_eq!(prod, zeta);
        for (i, a) in factors.iter().enumerate() {
            assert_eq!(irreducible_factorization(a), vec![a.clone()], "{a} is not irreducible");
            for b in &factors[i + 1..] {
                assert_eq!(a.compose(b), b.compose(a), "{a} and {b} do not commute");
            }
        }
        assert!(noncrossing_closure(&zeta).is_noncrossing());
        let ranks: usize = factors.iter().map(prec_rank).sum();
        assert_eq!(ranks, prec_rank(&zeta), "|ζ| for {zeta}");
    }
}

#[test]
fn shifts_and_conjugation() {
    assert_eq!(omega0_conjugate(&p("1432"), 4).unwrap(), p("3214"));
    assert_eq!(omega0_conjugate(&Permutation::longest(4), 4).unwrap(), Permutation::longest(4));
    assert!(omega0_conjugate(&p("15234"), 4).is_err());
    assert!(cyclic_shift(&p("15234"), 4).is_err());
    let c = p("(1,2,3,4)");
    assert_eq!(cyclic_shift(&p("1243"), 4).unwrap(), c.compose(&p("1243")).compose(&c.inverse()));
    for eta in all_permutations(4) {
        let mut cur = eta.clone();
        for _ in 0..4 {
            cur = cyclic_shift(&cur, 4).unwrap();
        }
        assert_eq!(cur, eta);
        let bar = omega0_conjugate(&eta, 4).unwrap();
        assert_eq!(omega0_conjugate(&bar, 4).unwrap(), eta);
        assert_eq!(bar.length(), eta.length());
    }
}

#[test]
fn k_bruhat_definition_examples() {
    assert!(k_bruhat_leq(&p("13542"), &p("25431"), 2));
    assert!(!k_bruhat_leq(&Permutation::identity(), &p("321"), 1));
    for u in all_permutations(4) {
        for k in 1..=3 {
            assert!(k_bruhat_leq(&u, &u, k));
        }
    }
    assert_eq!(k_bruhat_covers(&Permutation::identity(), 1), vec![(p("21"), 2)]);
}

/// Everything reachable from `u` by `k`-Bruhat covers that stay inside `S_n`.
fn cover_closure(u: &Permutation, k: usize, n: usize) -> BTreeSet<Permutation> {
    let mut seen = BTreeSet::from([u.clone()]);
    let mut queue = VecDeque::from([u.clone()]);
    while let Some(v) = queue.pop_front() {
        for (w, _) in k_bruhat_covers(&v, k) {
            if w.in_sn(n) && seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    seen
}

#[test]
fn k_bruhat_order_is_generated_by_its_covers() {
    let perms = all_permutations(5);
    for k in 1..=4 {
        for u in &perms {
            let reach = cover_closure(u, k, 5);
            for w in &perms {
                assert_eq!(k_bruhat_leq(u, w, k), reach.contains(w), "u={u} w={w} k={k}");
            }
        }
    }
}

#[test]
fn k_bruhat_covers_are_labeled_by_the_larger_value() {
    for u in all_permutations(4) {
        for k in 1..=3 {
            for (w, label) in k_bruhat_covers(&u, k) {
                assert_eq!(w.length(), u.length() + 1);
                let t = w.compose(&u.inverse());
                let moved: Vec<usize> = (1..=t.n()).filter(|&i| t.apply(i) != i).collect();
                assert_eq!(moved.len(), 2, "{u} -> {w} is not a transposition");
                assert_eq!(label, moved[1], "{u} -> {w}");
            }
        }
    }
}

#[test]
fn prec_order_matches_its_definition() {
    let perms = all_permutations(4);
    for eta in &perms {
        for zeta in &perms {
            assert_eq!(prec_leq(eta, zeta), prec_leq_by_search(eta, zeta, 5, 4), "η={eta} ζ={zeta}");
        }
        assert!(prec_leq(&Permutation::identity(), eta));
        assert!(prec_leq(eta, eta));
    }
    // on S_5 the canonical u alone decides the order
    for zeta in all_permutations(5).into_iter().filter(|z| !z.is_identity()) {
        let (u, k) = canonical_u(&zeta);
        let w = zeta.compose(&u);
        for eta in all_permutations(5) {
            let v = eta.compose(&u);
            assert_eq!(prec_leq(&eta, &zeta), k_bruhat_leq(&u, &v, k) && k_bruhat_leq(&v, &w, k), "η={eta} ζ={zeta}");
        }
    }
    assert!(!prec_leq(&p("132"), &p("2143")));
    // the (2 3) cycle against (4,3,2)
    let (a, b) = (p("(2,3)"), p("(4,3,2)"));
    assert_eq!(prec_leq(&a, &b), prec_leq_by_search(&a, &b, 5, 4));
}

#[test]
fn canonical_u_properties() {
    assert_eq!(canonical_u(&Permutation::identity()), (Permutation::identity(), 0));
    assert_eq!(canonical_u(&p("(4,3,2)")).1, 1);
    for zeta in all_permutations(5).into_iter().filter(|z| !z.is_identity()) {
        let (u, k) = canonical_u(&zeta);
        let w = zeta.compose(&u);
        assert_eq!(k, up_down_fix(&zeta).up.len());
        assert!(k_bruhat_leq(&u, &w, k), "ζ={zeta}");
        assert!(w.descents().iter().all(|&d| d == k), "ζu = {w} for ζ={zeta}");
    }
    for m in 1..=3 {
        for k in 1..=3 {
            let r = increasing_cycle(m, k).unwrap();
            let (u, kk) = canonical_u(&r);
            assert_eq!(kk, 1, "r[{m},{k}]");
            let w = r.compose(&u);
            assert_eq!(grassmannian_shape(&w, 1).unwrap().size(), w.length());
        }
        let (u, _) = canonical_u(&increasing_cycle(m, 1).unwrap());
        assert!(u.is_identity());
    }
}

#[test]
fn interval_examples() {
    let u = p("2413");
    let trivial = k_bruhat_interval(&u, &u, 2).unwrap();
    assert_eq!((trivial.len(), trivial.edges().len()), (1, 0));
    for m in 1..=3 {
        for k in 1..=3 {
            let r = increasing_cycle(m, k).unwrap();
            let chain = prec_interval(&Permutation::identity(), &r).unwrap();
            let want: Vec<i64> = (k + 1..=k + m).map(|x| x as i64).collect();
            assert_eq!(chain.maximal_chain_words(), vec![want]);
            assert_eq!(chain.len(), m + 1);
        }
    }
    let young = young_interval(&Partition::empty(), &part("2,1")).unwrap();
    assert_eq!(young.chain_count(), 2);
    assert!(k_bruhat_interval(&p("21"), &p("12"), 1).is_err());
    assert!(prec_interval(&p("(1,2)"), &p("(2,3)")).is_err());
    assert!(young_interval(&part("2"), &part("1,1")).is_err());
    assert!(weak_interval(&p("21"), &p("12")).is_err());
}

#[test]
fn young_cover_labels() {
    let lambda = part("3,2,2");
    let poset = young_interval(&Partition::empty(), &lambda).unwrap();
    for e in poset.edges() {
        let (lo, hi) = (poset.key(e.lower).as_shape().unwrap(), poset.key(e.upper).as_shape().unwrap());
        let i = (1..=hi.len()).find(|&i| hi.part(i) != lo.part(i)).unwrap();
        assert_eq!(e.label, hi.part(i) as i64 - i as i64, "{lo} ⋖ {hi}");
    }
}

#[test]
fn weak_cover_labels() {
    let poset = weak_interval(&Permutation::identity(), &Permutation::longest(4)).unwrap();
    assert_eq!(poset.chain_count(), 16);
    for e in poset.edges() {
        let (lo, hi) = (poset.key(e.lower).as_perm().unwrap(), poset.key(e.upper).as_perm().unwrap());
        let i = e.label as usize;
        assert_eq!(*hi, Permutation::simple(i).compose(lo), "{lo} ⋖ {hi}");
    }
}

#[test]
fn shape_equivalent_intervals_are_isomorphic_via_the_embedding() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..60 {
        let (u, w, k) = random_k_bruhat_interval(&mut rng, 5, 4);
        let zeta = w.compose(&u.inverse());
        if zeta.is_identity() {
            continue;
        }
        let size = zeta.n();
        let mut pool: Vec<usize> = (1..=8).collect();
        pool.shuffle(&mut rng);
        let mut pos = pool[..size].to_vec();
        pos.sort();
        let eta = shape_embed(&zeta, &pos).unwrap();
        let (y, l) = canonical_u(&eta);
        let z = eta.compose(&y);
        let left = k_bruhat_interval(&u, &w, k).unwrap();
        let right = k_bruhat_interval(&y, &z, l).unwrap();
        let map = |key: &NodeKey| NodeKey::Perm(order1_map(key.as_perm().unwrap(), &u, &y, &pos).unwrap());
        assert!(left.is_isomorphism_via(&right, map), "[{u}, {w}]_{k} → [{y}, {z}]_{l} via {pos:?}");
        assert!(left.is_isomorphic(&right));
    }
}

#[test]
fn young_intervals_are_k_bruhat_intervals() {
    for lambda in part("3,3,3").subpartitions() {
        for mu in lambda.subpartitions() {
            let young = young_interval(&mu, &lambda).unwrap();
            for k in [3, 4] {
                let (a, b) = (grassmannian(&mu, k).unwrap(), grassmannian(&lambda, k).unwrap());
                let kb = k_bruhat_interval(&a, &b, k).unwrap();
                let map = |key: &NodeKey| NodeKey::Perm(grassmannian(key.as_shape().unwrap(), k).unwrap());
                assert!(young.is_isomorphism_via(&kb, map), "[{mu}, {lambda}] vs k={k}");
            }
        }
    }
}

#[test]
fn prec_intervals_factor_over_irreducibles() {
    for zeta in disjoint_products(6, 5).iter().step_by(3) {
        let whole = prec_interval(&Permutation::identity(), zeta).unwrap();
        let factors = irreducible_factorization(zeta);
        let prod = factors.iter().map(|f| prec_interval(&Permutation::identity(), f).unwrap()).reduce(|a, b| poset_product(&a, &b)).unwrap();
        assert!(whole.is_isomorphic(&prod), "[1, {zeta}] vs product over {factors:?}");
        // the isomorphism is multiplication of the factor components
        let mul = |key: &NodeKey| NodeKey::Perm(flatten(key).iter().fold(Permutation::identity(), |a, b| a.compose(b)));
        assert!(prod.is_isomorphism_via(&whole, mul), "{zeta}");
    }
}

fn flatten(key: &NodeKey) -> Vec<Permutation> {
    match key {
        NodeKey::Pair(a, b) => {
            let mut v = flatten(a);
            v.extend(flatten(b));
            v
        }
        k => vec![k.as_perm().unwrap().clone()],
    }
}

#[test]
fn interval_specs_round_trip_through_json() {
    let specs = [
        IntervalSpec::KBruhat { k: 2, bottom: p("13542"), top: p("25431") },
        IntervalSpec::Prec { bottom: Permutation::identity(), top: p("(4,3,2)") },
        IntervalSpec::Young { bottom: part("1"), top: part("3,2") },
        IntervalSpec::Weak { bottom: Permutation::identity(), top: p("321") },
    ];
    for spec in specs {
        let s = serde_json::to_string(&spec).unwrap();
        let back: IntervalSpec = serde_json::from_str(&s).unwrap();
        assert_eq!(back, spec);
        let poset = spec.build().unwrap();
        let json = serde_json::to_string(&poset).unwrap();
        let again: LabeledPoset = serde_json::from_str(&json).unwrap();
        assert!(again.is_isomorphic(&poset));
        assert_eq!(again.maximal_chain_words(), poset.maximal_chain_words());
    }
    let spec: IntervalSpec = serde_json::from_str(r#"{"kind":"kBruhat","k":2,"bottom":"1,3,5,4,2","top":"2,5,4,3,1"}"#).unwrap();
    assert_eq!(spec.build().unwrap().rank(), 3);
}

#[test]
fn random_intervals_are_graded() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let n = rng.gen_range(3..=5);
        let (u, w, k) = random_k_bruhat_interval(&mut rng, n, 4);
        let poset = k_bruhat_interval(&u, &w, k).unwrap();
        assert_eq!(poset.rank(), w.length() - u.length());
        for e in poset.edges() {
            assert_eq!(poset.node_rank(e.upper), poset.node_rank(e.lower) + 1);
        }
    }
}
