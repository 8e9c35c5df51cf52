//! The k-Bruhat order, the `⪯` order, Young's lattice and the weak order,
//! with their cover labelings and interval extraction.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::partition::Partition;
use crate::perm::{shape_embed, up_down_fix, Permutation};
use crate::poset::{LabeledPoset, NodeKey};

/// `u ≤_k w`, tested by the two-condition characterization:
/// (1) `a ≤ k < b` implies `u(a) ≤ w(a)` and `u(b) ≥ w(b)`;
/// (2) `a < b`, `u(a) < u(b)`, `w(a) > w(b)` implies `a ≤ k < b`.
pub fn k_bruhat_leq(u: &Permutation, w: &Permutation, k: usize) -> bool {
    let n = u.n().max(w.n()).max(k) + 1;
    for a in 1..=n {
        if a <= k {
            if u.apply(a) > w.apply(a) {
                return false;
            }
        } else if u.apply(a) < w.apply(a) {
            return false;
        }
    }
    for a in 1..=n {
        for b in a + 1..=n {
            if u.apply(a) < u.apply(b) && w.apply(a) > w.apply(b) && !(a <= k && k < b) {
                return false;
            }
        }
    }
    true
}

/// Covers `u ⋖_k w` with their labels: `w = u · (i, j)` for positions
/// `i ≤ k < j` with `ℓ(w) = ℓ(u) + 1`. The label is `b = u(j)`, the larger
/// of the two exchanged values.
pub fn k_bruhat_covers(u: &Permutation, k: usize) -> Vec<(Permutation, usize)> {
    let n = u.n().max(k) + 1;
    let mut out = Vec::new();
    for i in 1..=k {
        let a = u.apply(i);
        for j in k + 1..=n {
            let b = u.apply(j);
            if a < b && (i + 1..j).all(|t| !(a < u.apply(t) && u.apply(t) < b)) {
                out.push((u.swap_positions(i, j), b));
            }
        }
    }
    out.sort();
    out
}

/// Bruhat covers of `w` inside `S_n`.
pub fn bruhat_covers(w: &Permutation, n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            let (a, b) = (w.apply(i), w.apply(j));
            if a < b && (i + 1..j).all(|t| !(a < w.apply(t) && w.apply(t) < b)) {
                out.push(w.swap_positions(i, j));
            }
        }
    }
    out.sort();
    out
}

/// Covers `u ⋖ s_i u` in the weak order on `S_n`, labeled by `i`.
pub fn weak_covers(u: &Permutation, n: usize) -> Vec<(Permutation, usize)> {
    let inv = u.inverse();
    (1..n).filter(|&i| inv.apply(i) < inv.apply(i + 1)).map(|i| (u.swap_values(i, i + 1), i)).collect()
}

/// `u ≤ w` in the weak order: `w = v u` with `ℓ(w) = ℓ(v) + ℓ(u)`.
pub fn weak_leq(u: &Permutation, w: &Permutation) -> bool {
    let v = w.compose(&u.inverse());
    v.length() + u.length() == w.length()
}

/// `η ⪯ ζ`. Besides the three monotonicity conditions on `up(ζ)` and
/// `down(ζ)`, fixed points of `ζ` must be fixed by `η`, and `η` moves each
/// `a ∈ up(ζ)` weakly up and each `b ∈ down(ζ)` weakly down.
pub fn prec_leq(eta: &Permutation, zeta: &Permutation) -> bool {
    let udf = up_down_fix(zeta);
    let n = eta.n().max(zeta.n());
    if (1..=n).any(|c| zeta.apply(c) == c && eta.apply(c) != c) {
        return false;
    }
    if udf.up.iter().any(|&a| eta.apply(a) > zeta.apply(a) || eta.apply(a) < a) {
        return false;
    }
    if udf.down.iter().any(|&b| eta.apply(b) < zeta.apply(b) || eta.apply(b) > b) {
        return false;
    }
    for set in [&udf.up, &udf.down] {
        for &a in set.iter() {
            for &b in set.range(a + 1..) {
                if zeta.apply(a) < zeta.apply(b) && eta.apply(a) > eta.apply(b) {
                    return false;
                }
            }
        }
    }
    true
}

/// `η ⪯ ζ` straight from the definition: some `u ∈ S_nu` and `k ≤ k_max`
/// with `u ≤_k ηu ≤_k ζu`.
pub fn prec_leq_by_search(eta: &Permutation, zeta: &Permutation, nu: usize, k_max: usize) -> bool {
    crate::perm::all_permutations(nu).iter().any(|u| {
        let (eu, zu) = (eta.compose(u), zeta.compose(u));
        (1..=k_max).any(|k| k_bruhat_leq(u, &eu, k) && k_bruhat_leq(&eu, &zu, k))
    })
}

/// The `u` and `k = #up(ζ)` with `u ≤_k ζu` and `ζu` Grassmannian of
/// descent `k`. Positions `1..=k` hold `up(ζ)` sorted by `ζ`-image; the rest
/// hold `fix(ζ) ∪ down(ζ)` sorted by `ζ`-image.
pub fn canonical_u(zeta: &Permutation) -> (Permutation, usize) {
    let udf = up_down_fix(zeta);
    let mut up: Vec<usize> = udf.up.iter().copied().collect();
    up.sort_by_key(|&a| zeta.apply(a));
    let mut rest: Vec<usize> = udf.down.union(&udf.fix).copied().collect();
    rest.sort_by_key(|&b| zeta.apply(b));
    let k = up.len();
    up.extend(rest);
    (Permutation::from_oneline(up).expect("up, down and fix partition 1..=n"), k)
}

/// `|ζ| = ℓ(ζu) - ℓ(u)` for the canonical `u`.
pub fn prec_rank(zeta: &Permutation) -> usize {
    let (u, _) = canonical_u(zeta);
    zeta.compose(&u).length() - u.length()
}

/// An interval in one of the four orders.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum IntervalSpec {
    KBruhat { k: usize, bottom: Permutation, top: Permutation },
    Prec { bottom: Permutation, top: Permutation },
    Young { bottom: Partition, top: Partition },
    Weak { bottom: Permutation, top: Permutation },
}

impl IntervalSpec {
    pub fn build(&self) -> Result<LabeledPoset> {
        match self {
            IntervalSpec::KBruhat { k, bottom, top } => k_bruhat_interval(bottom, top, *k),
            IntervalSpec::Prec { bottom, top } => prec_interval(bottom, top),
            IntervalSpec::Young { bottom, top } => young_interval(bottom, top),
            IntervalSpec::Weak { bottom, top } => weak_interval(bottom, top),
        }
    }
}

/// Breadth-first closure from `bottom` along `covers`, keeping nodes for which `keep` holds.
fn closure<T: Clone + Ord>(bottom: T, covers: impl Fn(&T) -> Vec<(T, i64)>, keep: impl Fn(&T) -> bool) -> (Vec<T>, Vec<(T, T, i64)>) {
    let mut seen = BTreeSet::from([bottom.clone()]);
    let mut queue = VecDeque::from([bottom]);
    let mut edges = Vec::new();
    while let Some(v) = queue.pop_front() {
        for (w, label) in covers(&v) {
            if !keep(&w) {
                continue;
            }
            edges.push((v.clone(), w.clone(), label));
            if seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    (seen.into_iter().collect(), edges)
}

fn perm_poset(nodes: Vec<Permutation>, edges: Vec<(Permutation, Permutation, i64)>, b: &Permutation, t: &Permutation) -> Result<LabeledPoset> {
    LabeledPoset::new(
        nodes.into_iter().map(NodeKey::Perm).collect(),
        edges.into_iter().map(|(a, b, l)| (NodeKey::Perm(a), NodeKey::Perm(b), l)).collect(),
        NodeKey::Perm(b.clone()),
        NodeKey::Perm(t.clone()),
    )
}

/// `[u, w]_k`, covers labeled by the larger exchanged value.
pub fn k_bruhat_interval(u: &Permutation, w: &Permutation, k: usize) -> Result<LabeledPoset> {
    if k == 0 || !k_bruhat_leq(u, w, k) {
        return Err(invalid(format!("{u} is not below {w} in the {k}-Bruhat order")));
    }
    let (nodes, edges) = closure(u.clone(), |v| k_bruhat_covers(v, k).into_iter().map(|(x, b)| (x, b as i64)).collect(), |v| k_bruhat_leq(v, w, k));
    perm_poset(nodes, edges, u, w)
}

/// `[η, ζ]_⪯`, realized as the image of `[ηu, ζu]_k` under `v ↦ v u⁻¹`
/// for the canonical `(u, k)` of `ζ`.
pub fn prec_interval(eta: &Permutation, zeta: &Permutation) -> Result<LabeledPoset> {
    if !prec_leq(eta, zeta) {
        return Err(invalid(format!("{eta} is not ⪯ {zeta}")));
    }
    if zeta.is_identity() {
        return Ok(LabeledPoset::point(NodeKey::Perm(Permutation::identity())));
    }
    let (u, k) = canonical_u(zeta);
    let uinv = u.inverse();
    let (bottom, top) = (eta.compose(&u), zeta.compose(&u));
    let (nodes, edges) = closure(bottom, |v| k_bruhat_covers(v, k).into_iter().map(|(x, b)| (x, b as i64)).collect(), |v| k_bruhat_leq(v, &top, k));
    let shift = |v: &Permutation| v.compose(&uinv);
    perm_poset(nodes.iter().map(shift).collect(), edges.iter().map(|(a, b, l)| (shift(a), shift(b), *l)).collect(), eta, zeta)
}

/// `[μ, λ]` in Young's lattice; adding a box in row `i` of `ν` is labeled `ν_i - i`
/// with `ν` the larger shape.
pub fn young_interval(mu: &Partition, lambda: &Partition) -> Result<LabeledPoset> {
    if !lambda.contains(mu) {
        return Err(invalid(format!("{mu} is not contained in {lambda}")));
    }
    let (nodes, edges) = closure(
        mu.clone(),
        |nu| (1..=nu.len() + 1).filter_map(|i| nu.add_box(i).map(|bigger| (bigger.part(i) as i64 - i as i64, bigger))).map(|(l, b)| (b, l)).collect(),
        |nu| lambda.contains(nu),
    );
    LabeledPoset::new(
        nodes.into_iter().map(NodeKey::Shape).collect(),
        edges.into_iter().map(|(a, b, l)| (NodeKey::Shape(a), NodeKey::Shape(b), l)).collect(),
        NodeKey::Shape(mu.clone()),
        NodeKey::Shape(lambda.clone()),
    )
}

/// `[u, w]` in the weak order, covers `v ⋖ s_i v` labeled `i`.
pub fn weak_interval(u: &Permutation, w: &Permutation) -> Result<LabeledPoset> {
    if !weak_leq(u, w) {
        return Err(invalid(format!("{u} is not below {w} in the weak order")));
    }
    let n = u.n().max(w.n());
    let (nodes, edges) = closure(u.clone(), |v| weak_covers(v, n).into_iter().map(|(x, i)| (x, i as i64)).collect(), |v| weak_leq(v, w));
    perm_poset(nodes, edges, u, w)
}

/// The map `v ↦ ε_P(v u⁻¹) y` carrying `[u, w]_k` onto `[y, z]_l` when
/// `z y⁻¹ = ε_P(w u⁻¹)`.
pub fn order1_map(v: &Permutation, u: &Permutation, y: &Permutation, p: &[usize]) -> Result<Permutation> {
    Ok(shape_embed(&v.compose(&u.inverse()), p)?.compose(y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{grassmannian, increasing_cycle};

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn definition_examples() {
        assert!(k_bruhat_leq(&p("13542"), &p("25431"), 2));
        assert!(!k_bruhat_leq(&Permutation::identity(), &p("321"), 1));
        assert!(k_bruhat_leq(&p("2413"), &p("2413"), 3));
    }

    #[test]
    fn identity_has_one_1_cover() {
        assert_eq!(k_bruhat_covers(&Permutation::identity(), 1), vec![(p("21"), 2)]);
        assert!(k_bruhat_covers(&p("4321"), 2).iter().all(|(w, _)| !w.in_sn(4)));
        assert_eq!(bruhat_covers(&Permutation::identity(), 3), vec![p("132"), p("213")]);
        assert!(bruhat_covers(&p("321"), 3).is_empty());
    }

    #[test]
    fn canonical_u_examples() {
        assert_eq!(canonical_u(&Permutation::identity()), (Permutation::identity(), 0));
        let zeta = p("(4,3,2)");
        let (u, k) = canonical_u(&zeta);
        assert_eq!(k, 1);
        assert!(k_bruhat_leq(&u, &zeta.compose(&u), k));
        let r = increasing_cycle(3, 2).unwrap();
        let (u, k) = canonical_u(&r);
        let w = r.compose(&u);
        assert!(w.descents().iter().all(|&d| d == k));
        assert_eq!(prec_rank(&r), 3);
    }

    #[test]
    fn prec_chain_for_increasing_cycle() {
        let r = increasing_cycle(3, 2).unwrap();
        let poset = prec_interval(&Permutation::identity(), &r).unwrap();
        assert_eq!(poset.maximal_chain_words(), vec![vec![3, 4, 5]]);
    }

    #[test]
    fn young_and_weak() {
        let l: Partition = "2,1".parse().unwrap();
        let y = young_interval(&Partition::empty(), &l).unwrap();
        assert_eq!(y.maximal_chains().len(), 2);
        let g = grassmannian(&l, 2).unwrap();
        let kb = k_bruhat_interval(&Permutation::identity(), &g, 2).unwrap();
        assert!(y.is_isomorphic(&kb));
        let w = weak_interval(&Permutation::identity(), &p("321")).unwrap();
        assert_eq!(w.maximal_chain_words(), vec![vec![1, 2, 1], vec![2, 1, 2]]);
    }

    #[test]
    fn interval_spec_json() {
        let spec = IntervalSpec::KBruhat { k: 2, bottom: p("13542"), top: p("25431") };
        let s = serde_json::to_string(&spec).unwrap();
        assert_eq!(s, r#"{"kind":"kBruhat","k":2,"bottom":"1,3,5,4,2","top":"2,5,4,3,1"}"#);
        assert_eq!(serde_json::from_str::<IntervalSpec>(&s).unwrap(), spec);
        assert!(IntervalSpec::Weak { bottom: p("21"), top: p("12") }.build().is_err());
    }
}
