//! Finite ranked posets with integer labels on their covers.
//!
//! A maximal chain reads off a word of labels. Counting chains by the
//! descent sets of their words gives `#H_α(P)`, and from those counts the
//! Schur coefficients `c^P_λ` and the symmetric function `S_P`.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{internal, invalid, Error, Result};
use crate::partition::{Composition, Partition};
use crate::perm::Permutation;
use crate::symfunc::{Basis, SymFunction};

/// Identity of a poset element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeKey {
    Perm(Permutation),
    Shape(Partition),
    Pair(Box<NodeKey>, Box<NodeKey>),
    Named(String),
}

impl NodeKey {
    pub fn pair(a: NodeKey, b: NodeKey) -> Self {
        NodeKey::Pair(Box::new(a), Box::new(b))
    }

    pub fn as_perm(&self) -> Option<&Permutation> {
        match self {
            NodeKey::Perm(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_shape(&self) -> Option<&Partition> {
        match self {
            NodeKey::Shape(p) => Some(p),
            _ => None,
        }
    }
}

impl fmt::Display for NodeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeKey::Perm(p) => write!(f, "{p}"),
            NodeKey::Shape(p) => write!(f, "{p}"),
            NodeKey::Pair(a, b) => write!(f, "[{a}|{b}]"),
            NodeKey::Named(s) => write!(f, "{s}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoverEdge {
    pub lower: usize,
    pub upper: usize,
    pub label: i64,
}

/// A maximal chain: its nodes from bottom to top and its word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain {
    pub word: Vec<i64>,
    pub nodes: Vec<usize>,
}

/// Descent set `{j : w_j > w_{j+1}}` of a word, positions 1-based.
pub fn descent_set(word: &[i64]) -> BTreeSet<usize> {
    (1..word.len()).filter(|&j| word[j - 1] > word[j]).collect()
}

/// The composition whose partial sums are the descents of `word` plus its length.
pub fn descent_composition(word: &[i64]) -> Composition {
    let mut parts = Vec::new();
    let mut last = 0;
    for d in descent_set(word).into_iter().chain(std::iter::once(word.len())) {
        if d > last || word.is_empty() {
            parts.push((d - last) as i64);
        }
        last = d;
    }
    if word.is_empty() {
        return Composition::default();
    }
    Composition::new(parts)
}

#[derive(Clone, Debug)]
pub struct LabeledPoset {
    keys: Vec<NodeKey>,
    index: HashMap<NodeKey, usize>,
    ranks: Vec<usize>,
    edges: Vec<CoverEdge>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    bottom: usize,
    top: usize,
    histogram: OnceLock<BTreeMap<u64, u64>>,
}

impl LabeledPoset {
    /// Builds a poset from its Hasse diagram. Every node must lie on a
    /// saturated chain from `bottom` to `top`, and all such chains must have
    /// the same length.
    pub fn new(nodes: Vec<NodeKey>, edges: Vec<(NodeKey, NodeKey, i64)>, bottom: NodeKey, top: NodeKey) -> Result<Self> {
        let mut keys: Vec<NodeKey> = nodes;
        keys.sort();
        keys.dedup();
        let pos: HashMap<NodeKey, usize> = keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        let find = |k: &NodeKey| pos.get(k).copied().ok_or_else(|| invalid(format!("edge endpoint {k} is not a node")));
        let b = find(&bottom)?;
        let t = find(&top)?;
        let n = keys.len();
        let mut raw = Vec::with_capacity(edges.len());
        let mut seen = BTreeSet::new();
        for (l, u, label) in &edges {
            let (li, ui) = (find(l)?, find(u)?);
            if !seen.insert((li, ui)) {
                return Err(invalid(format!("duplicate cover {l} -> {u}")));
            }
            raw.push(CoverEdge { lower: li, upper: ui, label: *label });
        }
        let mut up = vec![Vec::new(); n];
        let mut down = vec![Vec::new(); n];
        for (e, edge) in raw.iter().enumerate() {
            up[edge.lower].push(e);
            down[edge.upper].push(e);
        }
        let mut rank = vec![usize::MAX; n];
        rank[b] = 0;
        let mut queue = VecDeque::from([b]);
        while let Some(v) = queue.pop_front() {
            for &e in &up[v] {
                let w = raw[e].upper;
                if rank[w] == usize::MAX {
                    rank[w] = rank[v] + 1;
                    queue.push_back(w);
                } else if rank[w] != rank[v] + 1 {
                    return Err(invalid(format!("poset is not graded at {}", keys[w])));
                }
            }
        }
        if let Some(v) = (0..n).find(|&v| rank[v] == usize::MAX) {
            return Err(invalid(format!("{} is not above the bottom element", keys[v])));
        }
        for edge in &raw {
            if rank[edge.upper] != rank[edge.lower] + 1 {
                return Err(invalid(format!("cover {} -> {} skips a rank", keys[edge.lower], keys[edge.upper])));
            }
        }
        let mut reach = vec![false; n];
        reach[t] = true;
        let mut queue = VecDeque::from([t]);
        while let Some(v) = queue.pop_front() {
            for &e in &down[v] {
                let w = raw[e].lower;
                if !reach[w] {
                    reach[w] = true;
                    queue.push_back(w);
                }
            }
        }
        if let Some(v) = (0..n).find(|&v| !reach[v]) {
            return Err(invalid(format!("{} is not below the top element", keys[v])));
        }
        // canonical numbering: by rank, then key
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| rank[a].cmp(&rank[b]).then_with(|| keys[a].cmp(&keys[b])));
        let mut newpos = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            newpos[old] = new;
        }
        let keys2: Vec<NodeKey> = order.iter().map(|&o| keys[o].clone()).collect();
        let ranks: Vec<usize> = order.iter().map(|&o| rank[o]).collect();
        let mut edges2: Vec<CoverEdge> = raw.iter().map(|e| CoverEdge { lower: newpos[e.lower], upper: newpos[e.upper], label: e.label }).collect();
        edges2.sort_by_key(|e| (e.lower, e.label, e.upper));
        let mut up = vec![Vec::new(); n];
        let mut down = vec![Vec::new(); n];
        for (e, edge) in edges2.iter().enumerate() {
            up[edge.lower].push(e);
            down[edge.upper].push(e);
        }
        let index = keys2.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        Ok(LabeledPoset { keys: keys2, index, ranks, edges: edges2, up, down, bottom: newpos[b], top: newpos[t], histogram: OnceLock::new() })
    }

    /// A chain whose covers carry `labels` in order; nodes are named `0..=m`.
    pub fn chain(labels: &[i64]) -> Self {
        let nodes: Vec<NodeKey> = (0..=labels.len()).map(|i| NodeKey::Named(format!("{i:03}"))).collect();
        let edges = labels.iter().enumerate().map(|(i, &l)| (nodes[i].clone(), nodes[i + 1].clone(), l)).collect();
        let (b, t) = (nodes[0].clone(), nodes[labels.len()].clone());
        Self::new(nodes, edges, b, t).expect("a chain is graded")
    }

    /// The one-element poset.
    pub fn point(key: NodeKey) -> Self {
        Self::new(vec![key.clone()], Vec::new(), key.clone(), key).expect("a point is graded")
    }

    /// The same poset with every label replaced by `f(label)`.
    pub fn relabel(&self, f: impl Fn(i64) -> i64) -> Self {
        let edges = self.edges.iter().map(|e| (self.keys[e.lower].clone(), self.keys[e.upper].clone(), f(e.label))).collect();
        Self::new(self.keys.clone(), edges, self.keys[self.bottom].clone(), self.keys[self.top].clone()).expect("relabeling keeps the poset graded")
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    /// Rank of the top element.
    pub fn rank(&self) -> usize {
        self.ranks[self.top]
    }

    pub fn keys(&self) -> &[NodeKey] {
        &self.keys
    }

    pub fn key(&self, i: usize) -> &NodeKey {
        &self.keys[i]
    }

    pub fn index_of(&self, k: &NodeKey) -> Option<usize> {
        self.index.get(k).copied()
    }

    pub fn node_rank(&self, i: usize) -> usize {
        self.ranks[i]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn edges(&self) -> &[CoverEdge] {
        &self.edges
    }

    pub fn up_edges(&self, i: usize) -> impl Iterator<Item = &CoverEdge> {
        self.up[i].iter().map(move |&e| &self.edges[e])
    }

    pub fn down_edges(&self, i: usize) -> impl Iterator<Item = &CoverEdge> {
        self.down[i].iter().map(move |&e| &self.edges[e])
    }

    /// The label of the cover `lower ⋖ upper`, if it is one.
    pub fn cover_label(&self, lower: usize, upper: usize) -> Option<i64> {
        self.up_edges(lower).find(|e| e.upper == upper).map(|e| e.label)
    }

    /// Distinct labels in increasing order.
    pub fn labels(&self) -> BTreeSet<i64> {
        self.edges.iter().map(|e| e.label).collect()
    }

    /// All maximal chains, sorted by word and then by nodes.
    pub fn maximal_chains(&self) -> Vec<Chain> {
        let mut out = Vec::new();
        let mut nodes = vec![self.bottom];
        let mut word = Vec::new();
        self.chains_from(self.bottom, &mut nodes, &mut word, &mut out);
        out.sort();
        out
    }

    fn chains_from(&self, v: usize, nodes: &mut Vec<usize>, word: &mut Vec<i64>, out: &mut Vec<Chain>) {
        if v == self.top {
            out.push(Chain { word: word.clone(), nodes: nodes.clone() });
            return;
        }
        for &e in &self.up[v] {
            let edge = self.edges[e];
            nodes.push(edge.upper);
            word.push(edge.label);
            self.chains_from(edge.upper, nodes, word, out);
            nodes.pop();
            word.pop();
        }
    }

    /// Words of all maximal chains, sorted.
    pub fn maximal_chain_words(&self) -> Vec<Vec<i64>> {
        self.maximal_chains().into_iter().map(|c| c.word).collect()
    }

    /// Number of maximal chains.
    pub fn chain_count(&self) -> u64 {
        self.descent_histogram().values().sum()
    }

    /// Number of maximal chains by descent set; bit `j-1` marks a descent at `j`.
    pub fn descent_histogram(&self) -> &BTreeMap<u64, u64> {
        self.histogram.get_or_init(|| self.compute_histogram())
    }

    fn compute_histogram(&self) -> BTreeMap<u64, u64> {
        assert!(self.rank() <= 64, "descent masks hold at most 64 positions");
        // state: (last label, descent mask) -> number of partial chains
        let mut states: Vec<HashMap<(i64, u64), u64>> = vec![HashMap::new(); self.len()];
        let mut result = BTreeMap::new();
        if self.rank() == 0 {
            result.insert(0, 1);
            return result;
        }
        for e in self.up_edges(self.bottom) {
            *states[e.upper].entry((e.label, 0)).or_insert(0) += 1;
        }
        // nodes are numbered by rank, so increasing index is a topological order
        for v in 0..self.len() {
            if v == self.bottom || v == self.top {
                continue;
            }
            let here = std::mem::take(&mut states[v]);
            let r = self.ranks[v] as u64;
            for (&(last, mask), &cnt) in &here {
                for e in self.up_edges(v) {
                    let m = if last > e.label { mask | (1 << (r - 1)) } else { mask };
                    *states[e.upper].entry((e.label, m)).or_insert(0) += cnt;
                }
            }
        }
        for (&(_, mask), &cnt) in &states[self.top] {
            *result.entry(mask).or_insert(0) += cnt;
        }
        result
    }

    /// `#H_α(P)`: maximal chains whose descent set lies in the partial sums
    /// of `α`. Zero when a part is negative or `α` does not sum to the rank.
    pub fn h_count(&self, alpha: &Composition) -> u64 {
        let m = self.rank() as i64;
        if alpha.has_negative_part() || alpha.sum() != m {
            return 0;
        }
        let mut allowed = 0u64;
        for s in alpha.partial_sums() {
            if s >= 1 && s < m {
                allowed |= 1 << (s - 1);
            }
        }
        self.descent_histogram().iter().filter(|(&mask, _)| mask & !allowed == 0).map(|(_, &c)| c).sum()
    }

    /// `h_count` computed by listing chains; an independent check on the histogram.
    pub fn h_count_by_enumeration(&self, alpha: &Composition) -> u64 {
        if alpha.has_negative_part() || alpha.sum() != self.rank() as i64 {
            return 0;
        }
        let sums: BTreeSet<usize> = alpha.partial_sums().into_iter().map(|s| s as usize).collect();
        self.maximal_chains().iter().filter(|c| descent_set(&c.word).is_subset(&sums)).count() as u64
    }

    /// Whether `#H_α(P)` depends only on the multiset of parts of `α`.
    pub fn is_symmetric(&self) -> bool {
        let m = self.rank();
        let mut by_shape: HashMap<Partition, u64> = HashMap::new();
        for alpha in Composition::all_positive(m) {
            let key = alpha.sorted_partition().expect("positive parts");
            let c = self.h_count(&alpha);
            match by_shape.get(&key) {
                Some(&prev) if prev != c => return false,
                Some(_) => {}
                None => {
                    by_shape.insert(key, c);
                }
            }
        }
        true
    }

    /// `χ_P(f)` for `f` in the h basis.
    pub fn chi(&self, f: &SymFunction) -> Result<i64> {
        if f.basis() != Basis::Homogeneous {
            return Err(invalid("χ_P is evaluated on the h basis"));
        }
        let mut total = 0i64;
        for (mu, c) in f.terms() {
            let cnt = self.h_count(&Composition::from_usizes(mu.parts())) as i64;
            total = total.checked_add(c.checked_mul(cnt).expect("overflow")).expect("overflow");
        }
        Ok(total)
    }

    /// `c^P_λ = Σ_{π ∈ S_k} ε(π) #H_{λ_π}(P)` with `k = ℓ(λ)`.
    pub fn skew_coefficient(&self, lambda: &Partition) -> Result<i64> {
        if lambda.size() != self.rank() {
            return Err(invalid(format!("{lambda} does not partition the rank {}", self.rank())));
        }
        let mut total = 0i64;
        for (sign, _, alpha) in lambda_pi_terms(lambda) {
            total += sign * self.h_count(&alpha) as i64;
        }
        Ok(total)
    }

    /// `S_P = Σ_{λ ⊢ m} c^P_λ s_λ`.
    pub fn symfunc(&self) -> Result<SymFunction> {
        if !self.is_symmetric() {
            return Err(invalid("S_P is only defined for symmetric labeled posets"));
        }
        self.symfunc_unchecked()
    }

    /// `Σ c^P_λ s_λ` without the symmetry test.
    pub fn symfunc_unchecked(&self) -> Result<SymFunction> {
        let mut f = SymFunction::zero(Basis::Schur);
        for lambda in Partition::all(self.rank()) {
            let c = self.skew_coefficient(&lambda)?;
            f.add_term(lambda, c);
        }
        Ok(f)
    }

    /// Labels replaced by their rank among the distinct labels.
    fn normalized_labels(&self) -> Vec<i64> {
        let order: BTreeMap<i64, i64> = self.labels().into_iter().enumerate().map(|(i, l)| (l, i as i64)).collect();
        self.edges.iter().map(|e| order[&e.label]).collect()
    }

    /// Checks that `f` is an isomorphism of labeled posets onto `other`:
    /// a bijection on elements carrying covers to covers and preserving the
    /// relative order of labels.
    pub fn is_isomorphism_via(&self, other: &LabeledPoset, f: impl Fn(&NodeKey) -> NodeKey) -> bool {
        if self.len() != other.len() || self.edges.len() != other.edges.len() {
            return false;
        }
        let mut image = Vec::with_capacity(self.len());
        let mut hit = vec![false; other.len()];
        for k in &self.keys {
            match other.index_of(&f(k)) {
                Some(j) if !hit[j] => {
                    hit[j] = true;
                    image.push(j);
                }
                _ => return false,
            }
        }
        let mut mapped = Vec::with_capacity(self.edges.len());
        for e in &self.edges {
            match other.cover_label(image[e.lower], image[e.upper]) {
                Some(l) => mapped.push((e.label, l)),
                None => return false,
            }
        }
        for a in &mapped {
            for b in &mapped {
                if a.0 <= b.0 && a.1 > b.1 {
                    return false;
                }
            }
        }
        true
    }

    /// Whether some isomorphism of labeled posets exists.
    pub fn is_isomorphic(&self, other: &LabeledPoset) -> bool {
        if self.len() != other.len() || self.edges.len() != other.edges.len() || self.rank() != other.rank() {
            return false;
        }
        let la = self.normalized_labels();
        let lb = other.normalized_labels();
        let signature = |p: &LabeledPoset, labels: &[i64], v: usize| {
            let mut ups: Vec<i64> = p.up[v].iter().map(|&e| labels[e]).collect();
            let mut downs: Vec<i64> = p.down[v].iter().map(|&e| labels[e]).collect();
            ups.sort();
            downs.sort();
            (p.ranks[v], ups, downs)
        };
        let sa: Vec<_> = (0..self.len()).map(|v| signature(self, &la, v)).collect();
        let sb: Vec<_> = (0..other.len()).map(|v| signature(other, &lb, v)).collect();
        let mut ca = sa.clone();
        let mut cb = sb.clone();
        ca.sort();
        cb.sort();
        if ca != cb {
            return false;
        }
        let mut map = vec![usize::MAX; self.len()];
        let mut used = vec![false; other.len()];
        map[self.bottom] = other.bottom;
        used[other.bottom] = true;
        let order: Vec<usize> = (0..self.len()).filter(|&v| v != self.bottom).collect();
        self.extend_iso(other, &la, &lb, &sa, &sb, &order, 0, &mut map, &mut used)
    }

    #[allow(clippy::too_many_arguments)]
    fn extend_iso(
        &self,
        other: &LabeledPoset,
        la: &[i64],
        lb: &[i64],
        sa: &[(usize, Vec<i64>, Vec<i64>)],
        sb: &[(usize, Vec<i64>, Vec<i64>)],
        order: &[usize],
        pos: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let v = order[pos];
        for cand in 0..other.len() {
            if used[cand] || sa[v] != sb[cand] {
                continue;
            }
            // every cover below v must map to a cover below cand with the same label
            let ok = self.down[v].iter().all(|&e| {
                let lower = map[self.edges[e].lower];
                other.down[cand].iter().any(|&f| other.edges[f].lower == lower && lb[f] == la[e])
            });
            if !ok {
                continue;
            }
            map[v] = cand;
            used[cand] = true;
            if self.extend_iso(other, la, lb, sa, sb, order, pos + 1, map, used) {
                return true;
            }
            map[v] = usize::MAX;
            used[cand] = false;
        }
        false
    }
}

/// The terms `(ε(π), π, λ_π)` of the alternating sum for `c^P_λ`, where
/// `(λ_π)_i = π(i) - i + λ_{k+1-π(i)}` and `k = ℓ(λ)`. Permutations giving a
/// negative part contribute nothing and are skipped.
pub fn lambda_pi_terms(lambda: &Partition) -> Vec<(i64, Permutation, Composition)> {
    let k = lambda.len();
    let mut out = Vec::new();
    let mut pi = Vec::with_capacity(k);
    let mut used = vec![false; k + 1];
    fn rec(k: usize, lambda: &Partition, pi: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<(i64, Permutation, Composition)>) {
        let i = pi.len() + 1;
        if i > k {
            let perm = Permutation::from_oneline(pi.clone()).expect("a bijection");
            let parts = (1..=k).map(|j| lambda_pi_part(lambda, k, j, pi[j - 1])).collect();
            out.push((crate::symfunc::sign(pi), perm, Composition::new(parts)));
            return;
        }
        for v in 1..=k {
            if used[v] || lambda_pi_part(lambda, k, i, v) < 0 {
                continue;
            }
            used[v] = true;
            pi.push(v);
            rec(k, lambda, pi, used, out);
            pi.pop();
            used[v] = false;
        }
    }
    rec(k, lambda, &mut pi, &mut used, &mut out);
    out
}

fn lambda_pi_part(lambda: &Partition, k: usize, i: usize, pi_i: usize) -> i64 {
    pi_i as i64 - i as i64 + lambda.part(k + 1 - pi_i) as i64
}

/// `λ_π` for `π ∈ S_k` (`k ≥ ℓ(λ)`), possibly with negative parts.
pub fn lambda_pi(lambda: &Partition, pi: &Permutation, k: usize) -> Result<Composition> {
    if lambda.len() > k || !pi.in_sn(k) {
        return Err(invalid(format!("need ℓ({lambda}) <= {k} and {pi} in S_{k}")));
    }
    Ok(Composition::new((1..=k).map(|i| lambda_pi_part(lambda, k, i, pi.apply(i))).collect()))
}

/// `P × Q` with componentwise covers carrying their original labels.
pub fn poset_product(p: &LabeledPoset, q: &LabeledPoset) -> LabeledPoset {
    let mut nodes = Vec::with_capacity(p.len() * q.len());
    let mut edges = Vec::new();
    for a in p.keys() {
        for b in q.keys() {
            nodes.push(NodeKey::pair(a.clone(), b.clone()));
        }
    }
    for e in p.edges() {
        for b in q.keys() {
            edges.push((NodeKey::pair(p.key(e.lower).clone(), b.clone()), NodeKey::pair(p.key(e.upper).clone(), b.clone()), e.label));
        }
    }
    for e in q.edges() {
        for a in p.keys() {
            edges.push((NodeKey::pair(a.clone(), q.key(e.lower).clone()), NodeKey::pair(a.clone(), q.key(e.upper).clone()), e.label));
        }
    }
    let bottom = NodeKey::pair(p.key(p.bottom()).clone(), q.key(q.bottom()).clone());
    let top = NodeKey::pair(p.key(p.top()).clone(), q.key(q.top()).clone());
    LabeledPoset::new(nodes, edges, bottom, top).expect("a product of graded posets is graded")
}

fn split_pair(pq: &LabeledPoset, v: usize) -> Result<(&NodeKey, &NodeKey)> {
    match pq.key(v) {
        NodeKey::Pair(a, b) => Ok((a, b)),
        k => Err(invalid(format!("{k} is not a node of a product poset"))),
    }
}

/// Splits a maximal chain of `P × Q` into its chains in `P` and `Q` and the
/// set `B` of (1-based) positions of the covers from `P`.
pub fn sort_chain(pq: &LabeledPoset, p: &LabeledPoset, q: &LabeledPoset, chain: &Chain) -> Result<(Chain, Chain, BTreeSet<usize>)> {
    let mut cp = Chain { word: Vec::new(), nodes: Vec::new() };
    let mut cq = Chain { word: Vec::new(), nodes: Vec::new() };
    let mut b = BTreeSet::new();
    let (a0, b0) = split_pair(pq, chain.nodes[0])?;
    let idx = |poset: &LabeledPoset, k: &NodeKey| poset.index_of(k).ok_or_else(|| invalid(format!("{k} is not a node")));
    cp.nodes.push(idx(p, a0)?);
    cq.nodes.push(idx(q, b0)?);
    for (step, w) in chain.nodes.windows(2).enumerate() {
        let (a1, b1) = split_pair(pq, w[0])?;
        let (a2, b2) = split_pair(pq, w[1])?;
        if a1 != a2 && b1 == b2 {
            cp.nodes.push(idx(p, a2)?);
            cp.word.push(chain.word[step]);
            b.insert(step + 1);
        } else if a1 == a2 && b1 != b2 {
            cq.nodes.push(idx(q, b2)?);
            cq.word.push(chain.word[step]);
        } else {
            return Err(invalid("chain step is not a cover of the product"));
        }
    }
    Ok((cp, cq, b))
}

/// Interleaves chains of `P` and `Q`; `b` lists the positions of the `P` covers.
pub fn unsort_chain(pq: &LabeledPoset, p: &LabeledPoset, q: &LabeledPoset, cp: &Chain, cq: &Chain, b: &BTreeSet<usize>) -> Result<Chain> {
    let m = cp.word.len() + cq.word.len();
    if b.len() != cp.word.len() || b.iter().any(|&x| x == 0 || x > m) {
        return Err(invalid("position set does not match the chain lengths"));
    }
    let (mut i, mut j) = (0, 0);
    let node = |i: usize, j: usize| -> Result<usize> {
        let key = NodeKey::pair(p.key(cp.nodes[i]).clone(), q.key(cq.nodes[j]).clone());
        pq.index_of(&key).ok_or_else(|| internal("product node missing"))
    };
    let mut out = Chain { word: Vec::new(), nodes: vec![node(0, 0)?] };
    for pos in 1..=m {
        if b.contains(&pos) {
            out.word.push(cp.word[i]);
            i += 1;
        } else {
            out.word.push(cq.word[j]);
            j += 1;
        }
        out.nodes.push(node(i, j)?);
    }
    Ok(out)
}

/// The inverse of `sort` on `H_α(P × Q)` when labels are disjoint: within
/// each block of `α` the covers of both chains are merged by label.
pub fn merge_chains(
    pq: &LabeledPoset,
    p: &LabeledPoset,
    q: &LabeledPoset,
    cp: &Chain,
    cq: &Chain,
    beta: &Composition,
    gamma: &Composition,
) -> Result<Chain> {
    if beta.len() != gamma.len() {
        return Err(invalid("β and γ must have the same length"));
    }
    let mut b = BTreeSet::new();
    let (mut i, mut j, mut pos) = (0usize, 0usize, 0usize);
    for (&bi, &gi) in beta.parts().iter().zip(gamma.parts()) {
        if bi < 0 || gi < 0 {
            return Err(invalid("negative block"));
        }
        let (ei, ej) = (i + bi as usize, j + gi as usize);
        if ei > cp.word.len() || ej > cq.word.len() {
            return Err(invalid("blocks exceed the chains"));
        }
        while i < ei || j < ej {
            pos += 1;
            let take_p = j == ej || (i < ei && cp.word[i] < cq.word[j]);
            if take_p {
                b.insert(pos);
                i += 1;
            } else {
                j += 1;
            }
        }
    }
    unsort_chain(pq, p, q, cp, cq, &b)
}

#[derive(Serialize, Deserialize)]
struct NodeJson {
    id: String,
    rank: usize,
}

#[derive(Serialize, Deserialize)]
struct PosetJson {
    nodes: Vec<NodeJson>,
    edges: Vec<(String, String, i64)>,
    bottom: String,
    top: String,
}

impl Serialize for LabeledPoset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PosetJson {
            nodes: self.keys.iter().zip(&self.ranks).map(|(k, &r)| NodeJson { id: k.to_string(), rank: r }).collect(),
            edges: self.edges.iter().map(|e| (self.keys[e.lower].to_string(), self.keys[e.upper].to_string(), e.label)).collect(),
            bottom: self.keys[self.bottom].to_string(),
            top: self.keys[self.top].to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LabeledPoset {
    /// Node ids become [`NodeKey::Named`]; declared ranks must match the diagram.
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = PosetJson::deserialize(d)?;
        let named = |s: &str| NodeKey::Named(s.to_string());
        let p = LabeledPoset::new(
            j.nodes.iter().map(|n| named(&n.id)).collect(),
            j.edges.iter().map(|(a, b, l)| (named(a), named(b), *l)).collect(),
            named(&j.bottom),
            named(&j.top),
        )
        .map_err(serde::de::Error::custom)?;
        for n in &j.nodes {
            let i = p.index_of(&named(&n.id)).expect("node was inserted");
            if p.node_rank(i) != n.rank {
                return Err(serde::de::Error::custom(Error::InvalidInput(format!(
                    "node {} declares rank {} but has rank {}",
                    n.id,
                    n.rank,
                    p.node_rank(i)
                ))));
            }
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_poset() {
        let p = LabeledPoset::point(NodeKey::Named("x".into()));
        assert_eq!(p.maximal_chain_words(), vec![Vec::<i64>::new()]);
        assert_eq!(p.h_count(&Composition::default()), 1);
        assert_eq!(p.skew_coefficient(&Partition::empty()).unwrap(), 1);
    }

    #[test]
    fn increasing_chain() {
        let p = LabeledPoset::chain(&[2, 3, 5]);
        assert!(p.is_symmetric());
        assert_eq!(p.h_count(&Composition::new(vec![3])), 1);
        assert_eq!(p.h_count(&Composition::new(vec![2, -1, 2])), 0);
        assert_eq!(p.h_count(&Composition::new(vec![1, 1])), 0);
        let f = p.symfunc().unwrap();
        assert_eq!(f, SymFunction::schur(Partition::row(3)));
    }

    #[test]
    fn asymmetric_chain() {
        let p = LabeledPoset::chain(&[1, 3, 2]);
        assert!(!p.is_symmetric());
        assert!(p.symfunc().is_err());
    }

    #[test]
    fn rejects_ungraded() {
        let n = |s: &str| NodeKey::Named(s.into());
        let edges = vec![(n("a"), n("b"), 1), (n("b"), n("c"), 1), (n("a"), n("c"), 2)];
        assert!(LabeledPoset::new(vec![n("a"), n("b"), n("c")], edges, n("a"), n("c")).is_err());
    }

    #[test]
    fn product_chain_counts() {
        let p = LabeledPoset::chain(&[1, 2]);
        let q = LabeledPoset::chain(&[10, 11, 12]);
        let pq = poset_product(&p, &q);
        assert_eq!(pq.chain_count(), 10);
        let pt = poset_product(&p, &LabeledPoset::point(NodeKey::Named("o".into())));
        assert!(pt.is_isomorphic(&p));
    }

    #[test]
    fn sort_round_trip() {
        let p = LabeledPoset::chain(&[1, 4]);
        let q = LabeledPoset::chain(&[2, 3, 5]);
        let pq = poset_product(&p, &q);
        for c in pq.maximal_chains() {
            let (cp, cq, b) = sort_chain(&pq, &p, &q, &c).unwrap();
            assert_eq!(unsort_chain(&pq, &p, &q, &cp, &cq, &b).unwrap(), c);
        }
    }

    #[test]
    fn descent_compositions() {
        assert_eq!(descent_composition(&[1, 2, 1]), Composition::new(vec![2, 1]));
        assert_eq!(descent_composition(&[3, 2, 1]), Composition::new(vec![1, 1, 1]));
        assert_eq!(descent_composition(&[]), Composition::default());
    }

    #[test]
    fn json_round_trip() {
        let p = LabeledPoset::chain(&[1, 3]);
        let s = serde_json::to_string(&p).unwrap();
        let q: LabeledPoset = serde_json::from_str(&s).unwrap();
        assert!(p.is_isomorphic(&q));
        let bad = r#"{"nodes":[{"id":"a","rank":0},{"id":"b","rank":2}],"edges":[["a","b",1]],"bottom":"a","top":"b"}"#;
        assert!(serde_json::from_str::<LabeledPoset>(bad).is_err());
    }
}
