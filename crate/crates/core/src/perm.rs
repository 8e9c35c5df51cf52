//! Permutations of the positive integers with finite support.
//!
//! A [`Permutation`] is stored in one-line notation of minimal length, so the
//! identity is the empty sequence and `w(i) = i` for every `i` past the end.
//! Products follow function composition: `(u * v)(i) = u(v(i))`. In this
//! convention `w u⁻¹ = (a, b)` means `w` is `u` with the *values* `a` and `b`
//! exchanged.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::partition::Partition;

#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Permutation {
    oneline: Vec<usize>,
}

impl Permutation {
    pub fn identity() -> Self {
        Permutation { oneline: Vec::new() }
    }

    /// Builds a permutation from the values `w(1), …, w(n)`.
    pub fn from_oneline(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 || v > n || seen[v] {
                return Err(invalid(format!("{values:?} is not a permutation of 1..={n}")));
            }
            seen[v] = true;
        }
        Ok(Self::normalized(values))
    }

    /// Trims trailing fixed points. `values` must already be a bijection.
    pub(crate) fn normalized(mut values: Vec<usize>) -> Self {
        while let Some(&last) = values.last() {
            if last == values.len() {
                values.pop();
            } else {
                break;
            }
        }
        Permutation { oneline: values }
    }

    /// The transposition exchanging `a` and `b`.
    pub fn transposition(a: usize, b: usize) -> Result<Self> {
        if a == 0 || b == 0 || a == b {
            return Err(invalid(format!("transposition ({a},{b}) needs distinct positive entries")));
        }
        let n = a.max(b);
        let mut v: Vec<usize> = (1..=n).collect();
        v.swap(a - 1, b - 1);
        Ok(Self::normalized(v))
    }

    /// The simple transposition `s_i = (i, i+1)`.
    pub fn simple(i: usize) -> Self {
        Self::transposition(i, i + 1).expect("i >= 1")
    }

    /// Builds a permutation from cycles; `(c1, …, cr)` sends `c1 ↦ c2 ↦ ⋯ ↦ cr ↦ c1`.
    /// Cycles are composed right to left.
    pub fn from_cycles(cycles: &[Vec<usize>]) -> Result<Self> {
        let mut acc = Permutation::identity();
        for c in cycles.iter().rev() {
            let cyc = Self::single_cycle(c)?;
            acc = cyc.compose(&acc);
        }
        Ok(acc)
    }

    fn single_cycle(c: &[usize]) -> Result<Self> {
        if c.is_empty() {
            return Ok(Self::identity());
        }
        let distinct: BTreeSet<usize> = c.iter().copied().collect();
        if distinct.len() != c.len() || distinct.contains(&0) {
            return Err(invalid(format!("cycle {c:?} must list distinct positive integers")));
        }
        let n = *distinct.iter().next_back().unwrap();
        let mut v: Vec<usize> = (1..=n).collect();
        for (idx, &x) in c.iter().enumerate() {
            v[x - 1] = c[(idx + 1) % c.len()];
        }
        Ok(Self::normalized(v))
    }

    /// The longest element `ω₀ = n, n-1, …, 1` of `S_n`.
    pub fn longest(n: usize) -> Self {
        Self::normalized((1..=n).rev().collect())
    }

    /// Smallest `n` with `self ∈ S_n` (0 for the identity).
    pub fn n(&self) -> usize {
        self.oneline.len()
    }

    pub fn oneline(&self) -> &[usize] {
        &self.oneline
    }

    /// One-line notation padded (or not) to length `n ≥ self.n()`.
    pub fn oneline_in(&self, n: usize) -> Vec<usize> {
        (1..=n.max(self.n())).map(|i| self.apply(i)).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.oneline.is_empty()
    }

    pub fn in_sn(&self, n: usize) -> bool {
        self.n() <= n
    }

    /// `w(i)`, 1-based.
    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        if i >= 1 && i <= self.oneline.len() {
            self.oneline[i - 1]
        } else {
            i
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.n()];
        for (i, &v) in self.oneline.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { oneline: inv }
    }

    /// `self ∘ other`, i.e. `i ↦ self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Self {
        let n = self.n().max(other.n());
        Self::normalized((1..=n).map(|i| self.apply(other.apply(i))).collect())
    }

    /// `(a, b) · self`: exchanges the values `a` and `b`.
    pub fn swap_values(&self, a: usize, b: usize) -> Self {
        let n = self.n().max(a).max(b);
        let mut v = self.oneline_in(n);
        for x in v.iter_mut() {
            if *x == a {
                *x = b;
            } else if *x == b {
                *x = a;
            }
        }
        Self::normalized(v)
    }

    /// `self · (i, j)`: exchanges the entries in positions `i` and `j`.
    pub fn swap_positions(&self, i: usize, j: usize) -> Self {
        let n = self.n().max(i).max(j);
        let mut v = self.oneline_in(n);
        v.swap(i - 1, j - 1);
        Self::normalized(v)
    }

    /// Number of inversions `ℓ(w)`.
    pub fn length(&self) -> usize {
        let v = &self.oneline;
        let mut count = 0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if v[i] > v[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Positions `j` with `w(j) > w(j+1)`.
    pub fn descents(&self) -> BTreeSet<usize> {
        (1..self.n()).filter(|&j| self.apply(j) > self.apply(j + 1)).collect()
    }

    /// Points moved by the permutation, increasing.
    pub fn support(&self) -> Vec<usize> {
        (1..=self.n()).filter(|&i| self.apply(i) != i).collect()
    }

    /// Cycles of length at least two, each starting at its minimum,
    /// ordered by minimum.
    pub fn cycles(&self) -> Vec<Cycle> {
        let n = self.n();
        let mut seen = vec![false; n + 1];
        let mut out = Vec::new();
        for start in 1..=n {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut elements = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                elements.push(x);
                x = self.apply(x);
            }
            out.push(Cycle { elements });
        }
        out
    }

    /// Compact digit form, available when every value is at most 9.
    pub fn compact(&self) -> Option<String> {
        if self.is_identity() {
            return Some("1".into());
        }
        if self.n() > 9 {
            return None;
        }
        Some(self.oneline.iter().map(|d| char::from(b'0' + *d as u8)).collect())
    }

    /// Cycle notation, e.g. `(1,3)(2,4)`; the identity prints as `()`.
    pub fn cycle_notation(&self) -> String {
        let cs = self.cycles();
        if cs.is_empty() {
            return "()".into();
        }
        cs.iter().map(|c| c.to_string()).collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "1");
        }
        let s: Vec<String> = self.oneline.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.compact() {
            Some(c) => write!(f, "{c}"),
            None => write!(f, "[{self}]"),
        }
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts `2,5,3,4,1`, the compact form `25341`, or cycles `(4,3,2)(1,5)`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() || t == "id" || t == "()" {
            return Ok(Self::identity());
        }
        let parse_num = |x: &str| x.trim().parse::<usize>().map_err(|e| Error::Parse(format!("bad entry {x:?} in permutation {s:?}: {e}")));
        if t.starts_with('(') {
            let mut cycles = Vec::new();
            for chunk in t.split(')') {
                let chunk = chunk.trim();
                if chunk.is_empty() {
                    continue;
                }
                let body = chunk.strip_prefix('(').ok_or_else(|| Error::Parse(format!("malformed cycle notation {s:?}")))?;
                let entries = if body.contains(',') || body.contains(' ') {
                    body.split(|c: char| c == ',' || c.is_whitespace()).filter(|x| !x.is_empty()).map(parse_num).collect::<Result<Vec<_>>>()?
                } else {
                    body.chars().map(|c| parse_num(&c.to_string())).collect::<Result<Vec<_>>>()?
                };
                cycles.push(entries);
            }
            return Self::from_cycles(&cycles).map_err(|e| Error::Parse(e.to_string()));
        }
        let values = if t.contains(',') || t.contains(' ') {
            t.split(|c: char| c == ',' || c.is_whitespace()).filter(|x| !x.is_empty()).map(parse_num).collect::<Result<Vec<_>>>()?
        } else {
            t.chars().map(|c| parse_num(&c.to_string())).collect::<Result<Vec<_>>>()?
        };
        Self::from_oneline(values).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl TryFrom<String> for Permutation {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Permutation> for String {
    fn from(p: Permutation) -> String {
        p.to_string()
    }
}

/// A cycle of length at least two, listed from its minimum.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle {
    elements: Vec<usize>,
}

impl Cycle {
    /// Elements in cycle order, `elements[i] ↦ elements[i+1]`.
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn support(&self) -> BTreeSet<usize> {
        self.elements.iter().copied().collect()
    }

    pub fn to_permutation(&self) -> Permutation {
        Permutation::single_cycle(&self.elements).expect("cycle entries are distinct")
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.elements.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// A partition of a finite set into blocks, no two of which cross.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonCrossingPartition {
    blocks: Vec<BTreeSet<usize>>,
}

impl NonCrossingPartition {
    pub fn blocks(&self) -> &[BTreeSet<usize>] {
        &self.blocks
    }

    pub fn is_noncrossing(&self) -> bool {
        for i in 0..self.blocks.len() {
            for j in i + 1..self.blocks.len() {
                if blocks_cross(&self.blocks[i], &self.blocks[j]) {
                    return false;
                }
            }
        }
        true
    }
}

/// Two disjoint sets cross when some `a < b < c < d` has `a, c` in one and
/// `b, d` in the other. Equivalently some gap between consecutive elements of
/// `a` holds part, but not all, of `b`.
pub fn blocks_cross(a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> bool {
    let av: Vec<usize> = a.iter().copied().collect();
    for gap in av.windows(2) {
        let inside = b.range(gap[0] + 1..gap[1]).count();
        if inside > 0 && inside < b.len() {
            return true;
        }
    }
    false
}

/// `v(λ, k)`, the Grassmannian permutation with descent set in `{k}` and shape `λ`.
pub fn grassmannian(lambda: &Partition, k: usize) -> Result<Permutation> {
    if lambda.len() > k {
        return Err(invalid(format!("{lambda} has more than {k} parts")));
    }
    let n = k + lambda.part(1);
    let mut v = vec![0usize; n];
    let mut used = vec![false; n + 1];
    for j in 1..=k {
        let val = lambda.part(j) + k + 1 - j;
        v[k - j] = val;
        used[val] = true;
    }
    let mut rest = (1..=n).filter(|&x| !used[x]);
    for slot in v.iter_mut().skip(k) {
        *slot = rest.next().expect("exactly n-k unused values");
    }
    Ok(Permutation::normalized(v))
}

/// Recovers `λ_j = w(k+1-j) - k - 1 + j` from a Grassmannian permutation.
pub fn grassmannian_shape(w: &Permutation, k: usize) -> Result<Partition> {
    if w.descents().iter().any(|&d| d != k) {
        return Err(invalid(format!("{w} has a descent outside {{{k}}}")));
    }
    let parts = (1..=k).map(|j| w.apply(k + 1 - j) + j - k - 1).collect();
    Partition::new(parts)
}

/// `r[m, k] = v((m), k)`, the increasing cycle `(k+m, k+m-1, …, k)`.
pub fn increasing_cycle(m: usize, k: usize) -> Result<Permutation> {
    if k == 0 {
        return Err(invalid("r[m,k] needs k >= 1"));
    }
    grassmannian(&Partition::row(m), k)
}

/// `v(1^m, k)`, the decreasing cycle `(k+1-m, …, k, k+1)`.
pub fn decreasing_cycle(m: usize, k: usize) -> Result<Permutation> {
    if k < m {
        return Err(invalid(format!("v(1^{m},{k}) needs k >= m")));
    }
    grassmannian(&Partition::column(m), k)
}

/// `(r[m,k], v(1^m,k))`.
pub fn special_cycles(m: usize, k: usize) -> Result<(Permutation, Permutation)> {
    if m == 0 || k == 0 {
        return Err(invalid("special cycles need m, k >= 1"));
    }
    Ok((increasing_cycle(m, k)?, decreasing_cycle(m, k)?))
}

/// `ε_P(ζ)`: conjugates `ζ` by the order isomorphism `ℕ → P`, where `P`
/// lists the first elements of an infinite increasing set.
pub fn shape_embed(zeta: &Permutation, p: &[usize]) -> Result<Permutation> {
    if p.windows(2).any(|w| w[0] >= w[1]) || p.first() == Some(&0) {
        return Err(invalid(format!("{p:?} is not a strictly increasing sequence of positive integers")));
    }
    if p.len() < zeta.n() {
        return Err(invalid(format!("{p:?} does not cover the support of {zeta}")));
    }
    let n = p.last().copied().unwrap_or(0);
    let mut v: Vec<usize> = (1..=n).collect();
    for i in 1..=zeta.n() {
        v[p[i - 1] - 1] = p[zeta.apply(i) - 1];
    }
    Ok(Permutation::normalized(v))
}

/// Relabels the support of `ζ` as `1, …, s` preserving order.
pub fn compress(zeta: &Permutation) -> Permutation {
    let support = zeta.support();
    let pos = |x: usize| support.binary_search(&x).expect("support is closed under ζ") + 1;
    Permutation::normalized(support.iter().map(|&x| pos(zeta.apply(x))).collect())
}

pub fn shape_equivalent(zeta: &Permutation, eta: &Permutation) -> bool {
    compress(zeta) == compress(eta)
}

/// `up(ζ) = {a : a < ζ(a)}`, `down(ζ) = {b : b > ζ(b)}` and the fixed points
/// of `ζ` inside `1..=n(ζ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpDownFix {
    pub up: BTreeSet<usize>,
    pub down: BTreeSet<usize>,
    pub fix: BTreeSet<usize>,
}

pub fn up_down_fix(zeta: &Permutation) -> UpDownFix {
    let mut r = UpDownFix { up: BTreeSet::new(), down: BTreeSet::new(), fix: BTreeSet::new() };
    for a in 1..=zeta.n() {
        let z = zeta.apply(a);
        if a < z {
            r.up.insert(a);
        } else if a > z {
            r.down.insert(a);
        } else {
            r.fix.insert(a);
        }
    }
    r
}

/// The finest non-crossing partition refined by the cycle supports of `ζ`.
pub fn noncrossing_closure(zeta: &Permutation) -> NonCrossingPartition {
    let mut blocks: Vec<BTreeSet<usize>> = zeta.cycles().iter().map(Cycle::support).collect();
    'merge: loop {
        for i in 0..blocks.len() {
            for j in i + 1..blocks.len() {
                if blocks_cross(&blocks[i], &blocks[j]) {
                    let b = blocks.swap_remove(j);
                    blocks[i].extend(b);
                    continue 'merge;
                }
            }
        }
        break;
    }
    blocks.sort_by_key(|b| *b.iter().next().expect("blocks are nonempty"));
    NonCrossingPartition { blocks }
}

/// Factors `ζ` into irreducibles: one factor per block of
/// [`noncrossing_closure`], ordered by smallest support element.
pub fn irreducible_factorization(zeta: &Permutation) -> Vec<Permutation> {
    let cycles = zeta.cycles();
    noncrossing_closure(zeta)
        .blocks()
        .iter()
        .map(|block| {
            cycles.iter().filter(|c| block.contains(&c.elements()[0])).fold(Permutation::identity(), |acc, c| acc.compose(&c.to_permutation()))
        })
        .collect()
}

/// `η^{(12…n)} = c η c⁻¹` with `c` the long cycle `(1 2 … n)`.
pub fn cyclic_shift(eta: &Permutation, n: usize) -> Result<Permutation> {
    if !eta.in_sn(n) || n == 0 {
        return Err(invalid(format!("{eta} is not in S_{n}")));
    }
    let c = Permutation::from_cycles(&[(1..=n).collect()])?;
    Ok(c.compose(eta).compose(&c.inverse()))
}

/// `ω₀ w ω₀` in `S_n`.
pub fn omega0_conjugate(w: &Permutation, n: usize) -> Result<Permutation> {
    if !w.in_sn(n) {
        return Err(invalid(format!("{w} is not in S_{n}")));
    }
    Ok(Permutation::normalized((1..=n).map(|i| n + 1 - w.apply(n + 1 - i)).collect()))
}

/// Every permutation of `S_n`, in lexicographic order of one-line notation.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=n).collect();
    loop {
        out.push(Permutation::normalized(cur.clone()));
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).expect("a larger suffix entry exists");
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn lengths() {
        assert_eq!(Permutation::identity().length(), 0);
        assert_eq!(p("4321").length(), 6);
        assert_eq!(p("13542").length(), 4);
    }

    #[test]
    fn descents_of_examples() {
        assert!(Permutation::identity().descents().is_empty());
        assert_eq!(p("1432").descents(), [2, 3].into_iter().collect());
    }

    #[test]
    fn minimal_oneline() {
        assert_eq!(p("2134"), p("21"));
        assert_eq!(p("1234"), Permutation::identity());
        assert_eq!(p("2,1,3").n(), 2);
        assert!(Permutation::from_oneline(vec![1, 1]).is_err());
    }

    #[test]
    fn cycle_notation_roundtrip() {
        // (4,3,2) sends 4->3->2->4
        let z = p("(4,3,2)");
        assert_eq!(z, p("1423"));
        assert_eq!(z.cycle_notation(), "(2,4,3)");
        assert_eq!(p(&z.cycle_notation()), z);
        assert_eq!(p("(1,2)(3,4)"), p("2143"));
    }

    #[test]
    fn grassmannian_examples() {
        assert_eq!(grassmannian(&Partition::empty(), 3).unwrap(), Permutation::identity());
        assert_eq!(grassmannian(&Partition::new(vec![2, 1]).unwrap(), 2).unwrap(), p("2413"));
        assert!(grassmannian(&Partition::new(vec![1, 1, 1]).unwrap(), 2).is_err());
        for m in 1..4 {
            for k in 1..4 {
                let r = increasing_cycle(m, k).unwrap();
                let cyc: Vec<usize> = (k..=k + m).rev().collect();
                assert_eq!(r, Permutation::from_cycles(&[cyc]).unwrap());
                assert_eq!(r.descents(), [k].into_iter().collect());
            }
        }
    }

    #[test]
    fn special_cycle_examples() {
        assert_eq!(special_cycles(1, 1).unwrap().0, p("21"));
        assert_eq!(special_cycles(2, 2).unwrap().0, p("1423"));
        assert_eq!(special_cycles(2, 2).unwrap().1, p("231"));
        assert!(decreasing_cycle(3, 2).is_err());
        for m in 1..4 {
            for k in m..5 {
                let cyc: Vec<usize> = (k + 1 - m..=k + 1).collect();
                assert_eq!(decreasing_cycle(m, k).unwrap(), Permutation::from_cycles(&[cyc]).unwrap());
            }
        }
    }

    #[test]
    fn shape_embedding_examples() {
        let z = p("2413");
        assert_eq!(shape_embed(&z, &[1, 2, 3, 4, 5]).unwrap(), z);
        assert_eq!(shape_embed(&p("21"), &[3, 7]).unwrap(), p("(3,7)"));
        assert_eq!(shape_embed(&p("(3,2,1)"), &[2, 4, 5]).unwrap(), p("(5,4,2)"));
        assert!(shape_embed(&z, &[1, 2]).is_err());
        assert!(shape_embed(&z, &[1, 3, 2, 4]).is_err());
    }

    #[test]
    fn shape_equivalence_examples() {
        let z = p("35142");
        assert!(shape_equivalent(&z, &z));
        assert!(shape_equivalent(&p("(4,3,2)"), &p("(9,7,5)")));
        assert!(!shape_equivalent(&p("(3,2,1)"), &p("(1,2,3)")));
    }

    #[test]
    fn up_down_examples() {
        let r = up_down_fix(&p("(4,3,2)"));
        assert_eq!(r.up, [2].into_iter().collect());
        assert_eq!(r.down, [3, 4].into_iter().collect());
        let r = up_down_fix(&p("231"));
        assert_eq!(r.up, [1, 2].into_iter().collect());
        assert_eq!(r.down, [3].into_iter().collect());
        assert!(up_down_fix(&Permutation::identity()).up.is_empty());
    }

    #[test]
    fn factorization_examples() {
        assert!(irreducible_factorization(&Permutation::identity()).is_empty());
        assert_eq!(irreducible_factorization(&p("(1,2)(3,4)")), vec![p("21"), p("(3,4)")]);
        assert_eq!(irreducible_factorization(&p("(1,3)(2,4)")), vec![p("(1,3)(2,4)")]);
        // nested supports do not cross
        assert_eq!(irreducible_factorization(&p("(1,4)(2,3)")).len(), 2);
        // crossing is transitive through merged blocks
        assert_eq!(irreducible_factorization(&p("(1,3)(2,5)(4,6)")).len(), 1);
    }

    #[test]
    fn cyclic_shift_examples() {
        assert_eq!(cyclic_shift(&Permutation::identity(), 4).unwrap(), Permutation::identity());
        let eta = p("(1,2,4,3)");
        // c = (1234): conjugation relabels i -> i+1 mod 4
        assert_eq!(cyclic_shift(&eta, 4).unwrap(), p("(2,3,1,4)"));
        let mut x = eta.clone();
        for _ in 0..4 {
            x = cyclic_shift(&x, 4).unwrap();
        }
        assert_eq!(x, eta);
        assert!(cyclic_shift(&p("12354"), 4).is_err());
    }

    #[test]
    fn omega0_examples() {
        assert_eq!(omega0_conjugate(&Permutation::longest(4), 4).unwrap(), Permutation::longest(4));
        assert_eq!(omega0_conjugate(&p("1432"), 4).unwrap(), p("3214"));
        assert!(omega0_conjugate(&p("12354"), 4).is_err());
    }

    #[test]
    fn enumerates_sn() {
        assert_eq!(all_permutations(4).len(), 24);
        assert_eq!(all_permutations(0), vec![Permutation::identity()]);
    }
}
