//! Symmetric functions in the Schur and complete-homogeneous bases.
//!
//! Schur polynomials are built from the Jacobi–Trudi determinant, so every
//! computation stays in exact integer arithmetic. Littlewood–Richardson
//! coefficients are read off by peeling dominance-maximal terms from a
//! product of Schur polynomials.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
pub use crate::partition::{Composition, Partition};
use crate::perm::all_permutations;
use crate::poly::{complete_homogeneous, MultiPolynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    /// Schur functions `s_λ`.
    Schur,
    /// Products `h_λ = h_{λ_1} h_{λ_2} ⋯`.
    #[serde(rename = "h")]
    Homogeneous,
}

/// A finite integer combination of basis elements indexed by partitions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymFunction {
    basis: Basis,
    terms: BTreeMap<Partition, i64>,
}

impl SymFunction {
    pub fn zero(basis: Basis) -> Self {
        SymFunction { basis, terms: BTreeMap::new() }
    }

    pub fn one(basis: Basis) -> Self {
        Self::basis_element(basis, Partition::empty())
    }

    pub fn schur(lambda: Partition) -> Self {
        Self::basis_element(Basis::Schur, lambda)
    }

    /// `h_α`; the parts are sorted since the `h_i` commute.
    pub fn h(alpha: &Composition) -> Result<Self> {
        let p = alpha.sorted_partition().ok_or_else(|| invalid(format!("h_{alpha} has a negative part")))?;
        Ok(Self::basis_element(Basis::Homogeneous, p))
    }

    pub fn basis_element(basis: Basis, key: Partition) -> Self {
        let mut f = Self::zero(basis);
        f.add_term(key, 1);
        f
    }

    pub fn from_terms(basis: Basis, terms: impl IntoIterator<Item = (Partition, i64)>) -> Self {
        let mut f = Self::zero(basis);
        for (k, c) in terms {
            f.add_term(k, c);
        }
        f
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn add_term(&mut self, key: Partition, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let e = self.terms.entry(key.clone()).or_insert(0);
        *e = e.checked_add(coeff).expect("coefficient overflow");
        if *e == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn coeff(&self, key: &Partition) -> i64 {
        self.terms.get(key).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, i64)> {
        self.terms.iter().map(|(k, &c)| (k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|&c| c > 0)
    }

    pub fn add(&self, other: &SymFunction) -> Result<SymFunction> {
        if self.basis != other.basis {
            return Err(invalid("cannot add symmetric functions in different bases"));
        }
        let mut out = self.clone();
        for (k, &c) in &other.terms {
            out.add_term(k.clone(), c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: i64) -> SymFunction {
        let mut out = Self::zero(self.basis);
        for (k, &v) in &self.terms {
            out.add_term(k.clone(), v.checked_mul(c).expect("coefficient overflow"));
        }
        out
    }

    /// Product of two functions in the same basis.
    pub fn mul(&self, other: &SymFunction) -> Result<SymFunction> {
        if self.basis != other.basis {
            return Err(invalid("cannot multiply symmetric functions in different bases"));
        }
        let mut out = Self::zero(self.basis);
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                let c = ca.checked_mul(cb).expect("coefficient overflow");
                match self.basis {
                    Basis::Homogeneous => {
                        let mut parts = a.parts().to_vec();
                        parts.extend_from_slice(b.parts());
                        out.add_term(Partition::from_unsorted(parts), c);
                    }
                    Basis::Schur => {
                        for (nu, d) in schur_product(a, b) {
                            out.add_term(nu, c.checked_mul(d).expect("coefficient overflow"));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Converts to the Schur basis.
    pub fn to_schur(&self) -> SymFunction {
        match self.basis {
            Basis::Schur => self.clone(),
            Basis::Homogeneous => h_to_schur(self),
        }
    }

    /// Evaluates in `n` variables.
    pub fn to_polynomial(&self, n: usize) -> MultiPolynomial {
        let mut out = MultiPolynomial::zero();
        for (k, &c) in &self.terms {
            let p = match self.basis {
                Basis::Schur => schur_poly(k, n),
                Basis::Homogeneous => k.parts().iter().fold(MultiPolynomial::one(), |acc, &m| &acc * &complete_homogeneous(m, n)),
            };
            out = &out + &p.scale(c);
        }
        out
    }
}

impl fmt::Display for SymFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let sym = match self.basis {
            Basis::Schur => "s",
            Basis::Homogeneous => "h",
        };
        // largest shapes first
        for (idx, (k, &c)) in self.terms.iter().rev().enumerate() {
            let body = if c.unsigned_abs() == 1 { format!("{sym}{k}") } else { format!("{}*{sym}{k}", c.unsigned_abs()) };
            if idx == 0 {
                write!(f, "{}{body}", if c < 0 { "-" } else { "" })?;
            } else {
                write!(f, " {} {body}", if c < 0 { '-' } else { '+' })?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    shape: Vec<usize>,
    coeff: i64,
}

#[derive(Serialize, Deserialize)]
struct SymFunctionJson {
    basis: Basis,
    terms: Vec<TermJson>,
}

impl Serialize for SymFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SymFunctionJson {
            basis: self.basis,
            terms: self.terms.iter().rev().map(|(k, &c)| TermJson { shape: k.parts().to_vec(), coeff: c }).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SymFunction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = SymFunctionJson::deserialize(d)?;
        let mut f = SymFunction::zero(j.basis);
        for t in j.terms {
            let key = match j.basis {
                Basis::Schur => Partition::new(t.shape).map_err(serde::de::Error::custom)?,
                Basis::Homogeneous => Partition::from_unsorted(t.shape),
            };
            f.add_term(key, t.coeff);
        }
        Ok(f)
    }
}

fn schur_cache() -> &'static RwLock<HashMap<(Partition, usize), MultiPolynomial>> {
    static C: OnceLock<RwLock<HashMap<(Partition, usize), MultiPolynomial>>> = OnceLock::new();
    C.get_or_init(Default::default)
}

/// `s_λ(x_1, …, x_n)` from the Jacobi–Trudi determinant `det(h_{λ_i - i + j})`.
pub fn schur_poly(lambda: &Partition, n: usize) -> MultiPolynomial {
    let key = (lambda.clone(), n);
    if let Some(p) = schur_cache().read().expect("cache poisoned").get(&key) {
        return p.clone();
    }
    let l = lambda.len();
    let mut out = MultiPolynomial::zero();
    if l > n {
        // vanishes; the determinant agrees but is slower to evaluate
    } else {
        let h = |d: i64| -> MultiPolynomial {
            if d < 0 {
                MultiPolynomial::zero()
            } else {
                complete_homogeneous(d as usize, n)
            }
        };
        for pi in all_permutations(l) {
            let mut term = MultiPolynomial::constant(sign(&pi.oneline_in(l)));
            for i in 1..=l {
                let d = lambda.part(i) as i64 - i as i64 + pi.apply(i) as i64;
                term = &term * &h(d);
                if term.is_zero() {
                    break;
                }
            }
            out = &out + &term;
        }
    }
    schur_cache().write().expect("cache poisoned").insert(key, out.clone());
    out
}

/// Sign of a permutation given in one-line notation.
pub fn sign(oneline: &[usize]) -> i64 {
    let mut inv = 0;
    for i in 0..oneline.len() {
        for j in i + 1..oneline.len() {
            if oneline[i] > oneline[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Expands a symmetric polynomial in `n` variables in the Schur basis by
/// repeatedly removing the lexicographically leading term.
pub fn schur_expand_polynomial(f: &MultiPolynomial, n: usize) -> Result<SymFunction> {
    let mut rest = f.clone();
    let mut out = SymFunction::zero(Basis::Schur);
    let mut guard = 0usize;
    while let Some((m, c)) = rest.leading_lex() {
        guard += 1;
        if guard > 100_000 {
            return Err(Error::Internal("Schur expansion did not terminate".into()));
        }
        if m.len() > n || m.windows(2).any(|w| w[0] < w[1]) {
            return Err(invalid(format!("polynomial is not symmetric in {n} variables")));
        }
        let lambda = Partition::new(m.iter().map(|&e| e as usize).collect())?;
        rest = &rest - &schur_poly(&lambda, n).scale(c);
        out.add_term(lambda, c);
    }
    Ok(out)
}

type ProductKey = (Partition, Partition, usize);

fn product_cache() -> &'static RwLock<HashMap<ProductKey, BTreeMap<Partition, i64>>> {
    static C: OnceLock<RwLock<HashMap<ProductKey, BTreeMap<Partition, i64>>>> = OnceLock::new();
    C.get_or_init(Default::default)
}

/// `s_μ s_ν` restricted to shapes with at most `n` rows.
fn schur_product_in(mu: &Partition, nu: &Partition, n: usize) -> BTreeMap<Partition, i64> {
    let key = (mu.clone(), nu.clone(), n);
    if let Some(p) = product_cache().read().expect("cache poisoned").get(&key) {
        return p.clone();
    }
    let prod = &schur_poly(mu, n) * &schur_poly(nu, n);
    let f = schur_expand_polynomial(&prod, n).expect("products of Schur polynomials are symmetric");
    let map: BTreeMap<Partition, i64> = f.terms().map(|(k, c)| (k.clone(), c)).collect();
    product_cache().write().expect("cache poisoned").insert(key, map.clone());
    map
}

/// `s_μ s_ν` in the full ring of symmetric functions.
pub fn schur_product(mu: &Partition, nu: &Partition) -> BTreeMap<Partition, i64> {
    // shapes in s_μ s_ν have at most ℓ(μ)+ℓ(ν) rows
    schur_product_in(mu, nu, mu.len() + nu.len())
}

/// The Littlewood–Richardson coefficient `c^λ_{μν}`.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if lambda.size() != mu.size() + nu.size() || !lambda.contains(mu) || !lambda.contains(nu) {
        return 0;
    }
    let c = schur_product_in(mu, nu, lambda.len()).get(lambda).copied().unwrap_or(0);
    u64::try_from(c).expect("Littlewood-Richardson coefficients are nonnegative")
}

/// `s_{λ/μ} = Σ_ν c^λ_{μν} s_ν`.
pub fn skew_schur(lambda: &Partition, mu: &Partition) -> Result<SymFunction> {
    if !lambda.contains(mu) {
        return Err(invalid(format!("{mu} is not contained in {lambda}")));
    }
    let m = lambda.size() - mu.size();
    Ok(SymFunction::from_terms(
        Basis::Schur,
        Partition::all(m).into_iter().map(|nu| {
            let c = lr_coefficient(lambda, mu, &nu) as i64;
            (nu, c)
        }),
    ))
}

/// Horizontal strips `ν/κ` of size `a` with `ν ⊆ bound`.
fn horizontal_strips(kappa: &Partition, a: usize, bound: &Partition) -> Vec<Partition> {
    let rows = bound.len();
    let mut out = Vec::new();
    fn rec(i: usize, rows: usize, left: usize, kappa: &Partition, bound: &Partition, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if i > rows {
            if left == 0 {
                out.push(Partition::new(cur.clone()).expect("interlacing keeps the parts decreasing"));
            }
            return;
        }
        let lo = kappa.part(i);
        let hi = if i == 1 { bound.part(1) } else { kappa.part(i - 1).min(bound.part(i)) };
        for v in lo..=hi.max(lo) {
            if v > bound.part(i) || v - lo > left {
                break;
            }
            cur.push(v);
            rec(i + 1, rows, left - (v - lo), kappa, bound, cur, out);
            cur.pop();
        }
    }
    if !bound.contains(kappa) {
        return out;
    }
    rec(1, rows, a, kappa, bound, &mut Vec::new(), &mut out);
    out
}

/// Kostka number `K_{λα}`: semistandard tableaux of shape `λ` and content `α`.
pub fn kostka(lambda: &Partition, alpha: &Composition) -> u64 {
    if alpha.has_negative_part() || alpha.sum() != lambda.size() as i64 {
        return 0;
    }
    let mut layer: BTreeMap<Partition, u64> = BTreeMap::new();
    layer.insert(Partition::empty(), 1);
    for &a in alpha.parts() {
        let mut next: BTreeMap<Partition, u64> = BTreeMap::new();
        for (kappa, cnt) in &layer {
            for nu in horizontal_strips(kappa, a as usize, lambda) {
                *next.entry(nu).or_insert(0) += cnt;
            }
        }
        layer = next;
    }
    layer.get(lambda).copied().unwrap_or(0)
}

/// `h_μ = Σ_λ K_{λμ} s_λ`, extended linearly.
pub fn h_to_schur(f: &SymFunction) -> SymFunction {
    assert_eq!(f.basis(), Basis::Homogeneous);
    let mut out = SymFunction::zero(Basis::Schur);
    for (mu, c) in f.terms() {
        let alpha = Composition::from_usizes(mu.parts());
        for lambda in Partition::all(mu.size()) {
            let k = kostka(&lambda, &alpha) as i64;
            out.add_term(lambda, c.checked_mul(k).expect("coefficient overflow"));
        }
    }
    out
}

/// An element of `Λ ⊗ Λ` in the `h ⊗ h` basis.
pub type Tensor = BTreeMap<(Partition, Partition), i64>;

/// `Δ(h_α) = Σ_{β+γ=α} h_β ⊗ h_γ`, extended linearly.
pub fn comultiply(f: &SymFunction) -> Tensor {
    assert_eq!(f.basis(), Basis::Homogeneous);
    let mut out = Tensor::new();
    for (alpha, c) in f.terms() {
        let parts = alpha.parts();
        fn rec(i: usize, parts: &[usize], b: &mut Vec<usize>, g: &mut Vec<usize>, c: i64, out: &mut Tensor) {
            if i == parts.len() {
                let key = (Partition::from_unsorted(b.clone()), Partition::from_unsorted(g.clone()));
                *out.entry(key).or_insert(0) += c;
                return;
            }
            for x in 0..=parts[i] {
                b.push(x);
                g.push(parts[i] - x);
                rec(i + 1, parts, b, g, c, out);
                b.pop();
                g.pop();
            }
        }
        rec(0, parts, &mut Vec::new(), &mut Vec::new(), c, &mut out);
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Counts reverse LR tableaux: semistandard fillings of `λ/μ` with content
/// `(ν_k, …, ν_1)` whose word (rows read left to right, longest-index row
/// first) has, in every prefix, at most as many `a`s as `(a+1)`s.
pub fn count_reverse_lr(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<u64> {
    if !lambda.contains(mu) {
        return Err(invalid(format!("{mu} is not contained in {lambda}")));
    }
    if lambda.size() != mu.size() + nu.size() {
        return Ok(0);
    }
    let k = nu.len();
    let content: Vec<usize> = (1..=k).map(|a| nu.part(k + 1 - a)).collect();
    // cells in reading order: last row first, each row left to right
    let mut cells = Vec::new();
    for r in (1..=lambda.len()).rev() {
        for c in mu.part(r) + 1..=lambda.part(r) {
            cells.push((r, c));
        }
    }
    let mut grid: HashMap<(usize, usize), usize> = HashMap::new();
    let mut used = vec![0usize; k + 1];
    fn rec(
        idx: usize,
        cells: &[(usize, usize)],
        k: usize,
        content: &[usize],
        mu: &Partition,
        grid: &mut HashMap<(usize, usize), usize>,
        used: &mut Vec<usize>,
    ) -> u64 {
        if idx == cells.len() {
            return 1;
        }
        let (r, c) = cells[idx];
        let mut total = 0;
        for a in 1..=k {
            if used[a] == content[a - 1] {
                continue;
            }
            // rows weakly increase to the right
            if c > mu.part(r) + 1 && grid[&(r, c - 1)] > a {
                continue;
            }
            // columns strictly increase upward; the row above was read first
            if let Some(&above) = grid.get(&(r + 1, c)) {
                if above <= a {
                    continue;
                }
            }
            // a new `a` raises f_a, which may overtake f_{a+1}
            if a < k && used[a] + 1 > used[a + 1] {
                continue;
            }
            used[a] += 1;
            grid.insert((r, c), a);
            total += rec(idx + 1, cells, k, content, mu, grid, used);
            grid.remove(&(r, c));
            used[a] -= 1;
        }
        total
    }
    Ok(rec(0, &cells, k, &content, mu, &mut grid, &mut used))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn schur_small() {
        let s21 = schur_poly(&part("2,1"), 3);
        assert_eq!(s21.len(), 7);
        assert_eq!(s21.coeff(&[1, 1, 1]), 2);
        assert!(schur_poly(&part("1,1,1"), 2).is_zero());
    }

    #[test]
    fn h_to_schur_examples() {
        let f = SymFunction::h(&Composition::new(vec![1, 1])).unwrap();
        let g = h_to_schur(&f);
        assert_eq!(g.coeff(&part("2")), 1);
        assert_eq!(g.coeff(&part("1,1")), 1);
        let f = SymFunction::h(&Composition::new(vec![2, 1])).unwrap();
        assert_eq!(h_to_schur(&f).to_string(), "s(3) + s(2,1)");
    }

    #[test]
    fn lr_examples() {
        let l = part("2,1");
        assert_eq!(lr_coefficient(&l, &l, &Partition::empty()), 1);
        assert_eq!(lr_coefficient(&l, &part("1"), &part("1,1")), 1);
        assert_eq!(lr_coefficient(&part("2,2"), &part("2"), &part("1,1")), 0);
        assert_eq!(lr_coefficient(&part("3,2,1"), &part("2,1"), &part("2,1")), 2);
    }

    #[test]
    fn kostka_examples() {
        let l = part("2,1");
        assert_eq!(kostka(&l, &Composition::new(vec![2, 1])), 1);
        assert_eq!(kostka(&l, &Composition::new(vec![1, 1, 1])), 2);
        assert_eq!(kostka(&l, &Composition::new(vec![1, 2])), 1);
        assert_eq!(kostka(&l, &Composition::new(vec![1, 0, 2])), 1);
        assert_eq!(kostka(&l, &Composition::new(vec![3, -1, 1])), 0);
    }

    #[test]
    fn comultiply_examples() {
        let one = SymFunction::one(Basis::Homogeneous);
        let d = comultiply(&one);
        assert_eq!(d.len(), 1);
        let h2 = SymFunction::h(&Composition::new(vec![2])).unwrap();
        assert_eq!(comultiply(&h2).len(), 3);
        let h11 = SymFunction::h(&Composition::new(vec![1, 1])).unwrap();
        let d = comultiply(&h11);
        assert_eq!(d.values().sum::<i64>(), 4);
        assert_eq!(d[&(part("1"), part("1"))], 2);
    }

    #[test]
    fn reverse_lr_examples() {
        let l = part("2,1");
        assert_eq!(count_reverse_lr(&l, &l, &Partition::empty()).unwrap(), 1);
        assert_eq!(count_reverse_lr(&l, &part("1"), &part("1,1")).unwrap(), 1);
        assert!(count_reverse_lr(&part("1"), &l, &Partition::empty()).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let f = SymFunction::schur(part("2,1"));
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"basis":"schur","terms":[{"shape":[2,1],"coeff":1}]}"#);
        let g: SymFunction = serde_json::from_str(&s).unwrap();
        assert_eq!(f, g);
    }
}
