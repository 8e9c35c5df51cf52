//! Schubert polynomials, their structure constants, Pieri formulas, the
//! substitution operators `Φ_p`, `Ψ_P` and the chain construction of the
//! monomials of `𝔖_w`.
//!
//! Polynomials come from the divided-difference recursion down from
//! `𝔖_{ω₀} = x^δ`. Everything else is computed twice where possible: once
//! from polynomials, once from chains in the k-Bruhat orders.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{internal, invalid, Result};
use crate::order::{canonical_u, k_bruhat_covers, k_bruhat_interval};
use crate::partition::Partition;
use crate::perm::{all_permutations, grassmannian, omega0_conjugate, Permutation};
use crate::poly::{complete_homogeneous, elementary, revlex_cmp, Monomial, MultiPolynomial, Y_OFFSET};
use crate::symfunc::{Basis, SymFunction};

/// Lehmer code `c_i = #{j > i : w(j) < w(i)}`, trailing zeros trimmed.
pub fn lehmer_code(w: &Permutation) -> Vec<u32> {
    let n = w.n();
    let mut c: Vec<u32> = (1..=n).map(|i| (i + 1..=n).filter(|&j| w.apply(j) < w.apply(i)).count() as u32).collect();
    while c.last() == Some(&0) {
        c.pop();
    }
    c
}

/// The permutation with Lehmer code `code`.
pub fn from_code(code: &[u32]) -> Permutation {
    let n = code.iter().enumerate().map(|(i, &c)| i + 1 + c as usize).max().unwrap_or(0);
    let mut free: Vec<usize> = (1..=n).collect();
    let mut v = Vec::with_capacity(n);
    for i in 0..n {
        let c = code.get(i).copied().unwrap_or(0) as usize;
        v.push(free.remove(c));
    }
    Permutation::from_oneline(v).expect("a code determines a permutation")
}

type PolyCache = RwLock<HashMap<(Permutation, usize), MultiPolynomial>>;

fn poly_cache() -> &'static PolyCache {
    static C: OnceLock<PolyCache> = OnceLock::new();
    C.get_or_init(Default::default)
}

/// `𝔖_w`, computed inside `S_n` for the smallest `n` containing `w`.
pub fn schubert_poly(w: &Permutation) -> MultiPolynomial {
    schubert_poly_in(w, w.n().max(1))
}

/// `𝔖_w` computed from `x^δ` in `S_n`. The result does not depend on `n`.
pub fn schubert_poly_in(w: &Permutation, n: usize) -> MultiPolynomial {
    assert!(w.in_sn(n), "{w} is not in S_{n}");
    let key = (w.clone(), n);
    if let Some(p) = poly_cache().read().expect("cache poisoned").get(&key) {
        return p.clone();
    }
    let out = match (1..n).find(|&i| w.apply(i) < w.apply(i + 1)) {
        None => MultiPolynomial::x_power(&(0..n).map(|i| (n - 1 - i) as u32).collect::<Vec<_>>()),
        Some(i) => schubert_poly_in(&w.swap_positions(i, i + 1), n).divided_difference(i),
    };
    poly_cache().write().expect("cache poisoned").insert(key, out.clone());
    out
}

/// `𝔖_w(y_1, y_2, …)`.
pub fn schubert_poly_y(w: &Permutation) -> MultiPolynomial {
    schubert_poly(w).rename(|s| Y_OFFSET + s)
}

/// `∂_w f`, applying `∂_i` along a reduced word of `w` from the right.
pub fn divided_difference_w(f: &MultiPolynomial, w: &Permutation) -> MultiPolynomial {
    let mut cur = w.clone();
    let mut g = f.clone();
    while let Some(&i) = cur.descents().iter().next() {
        g = g.divided_difference(i);
        cur = cur.swap_positions(i, i + 1);
        if g.is_zero() {
            break;
        }
    }
    g
}

/// The coefficient of `𝔖_w` in `f`, read off as the constant `∂_w` of the
/// degree-`ℓ(w)` part of `f`.
pub fn schubert_coefficient(f: &MultiPolynomial, w: &Permutation) -> i64 {
    let d = w.length() as u32;
    let part = f.filter_terms(|m| m.iter().sum::<u32>() == d);
    divided_difference_w(&part, w).constant_term()
}

/// A finite integer combination of Schubert polynomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SchubertExpansion {
    coeffs: BTreeMap<Permutation, i64>,
}

impl SchubertExpansion {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(w: Permutation) -> Self {
        let mut e = Self::new();
        e.add(w, 1);
        e
    }

    pub fn add(&mut self, w: Permutation, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.coeffs.entry(w.clone()).or_insert(0);
        *entry = entry.checked_add(c).expect("coefficient overflow");
        if *entry == 0 {
            self.coeffs.remove(&w);
        }
    }

    pub fn coeff(&self, w: &Permutation) -> i64 {
        self.coeffs.get(w).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Permutation, i64)> {
        self.coeffs.iter().map(|(w, &c)| (w, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.values().all(|&c| c > 0)
    }

    /// `Σ c_w 𝔖_w` as a polynomial.
    pub fn to_polynomial(&self) -> MultiPolynomial {
        let mut out = MultiPolynomial::zero();
        for (w, &c) in &self.coeffs {
            out = &out + &schubert_poly(w).scale(c);
        }
        out
    }
}

impl fmt::Display for SchubertExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, &c)) in self.coeffs.iter().enumerate() {
            let name = w.compact().unwrap_or_else(|| w.to_string());
            let (sign, mag) = if c < 0 { ("-", -c) } else { ("+", c) };
            if i == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if mag != 1 {
                write!(f, "{mag}*")?;
            }
            write!(f, "S[{name}]")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct ExpansionTerm {
    perm: Permutation,
    coeff: i64,
}

impl Serialize for SchubertExpansion {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<ExpansionTerm> = self.coeffs.iter().map(|(w, &c)| ExpansionTerm { perm: w.clone(), coeff: c }).collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SchubertExpansion {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let terms = Vec::<ExpansionTerm>::deserialize(d)?;
        let mut e = SchubertExpansion::new();
        for t in terms {
            e.add(t.perm, t.coeff);
        }
        Ok(e)
    }
}

const GUARD: usize = 1_000_000;

/// Expands a polynomial in the x variables in the Schubert basis by
/// peeling off leading terms: the leading monomial of `𝔖_w` is `x^{code(w)}`.
pub fn expand_in_schubert(f: &MultiPolynomial) -> Result<SchubertExpansion> {
    if f.uses_y() {
        return Err(invalid("expand_in_schubert takes a polynomial in x only"));
    }
    let mut rest = f.clone();
    let mut out = SchubertExpansion::new();
    let mut steps = 0;
    while let Some((m, c)) = rest.leading_revlex() {
        steps += 1;
        if steps > GUARD {
            return Err(internal("Schubert expansion did not terminate"));
        }
        let w = from_code(m);
        let before = m.clone();
        rest = &rest - &schubert_poly(&w).scale(c);
        if let Some((m2, _)) = rest.leading_revlex() {
            if revlex_cmp(m2, &before) != std::cmp::Ordering::Less {
                return Err(internal("leading term did not decrease"));
            }
        }
        out.add(w, c);
    }
    Ok(out)
}

/// Expansion of a polynomial in x and y in the basis `𝔖_w(x) 𝔖_z(y)`.
pub type DoubleExpansion = BTreeMap<(Permutation, Permutation), i64>;

pub fn expand_double(f: &MultiPolynomial) -> Result<DoubleExpansion> {
    let mut rest = f.clone();
    let mut out = DoubleExpansion::new();
    let mut steps = 0;
    while let Some((m, c)) = rest.leading_revlex() {
        steps += 1;
        if steps > GUARD {
            return Err(internal("double Schubert expansion did not terminate"));
        }
        let (mx, my) = MultiPolynomial::split_xy(m);
        let (w, z) = (from_code(&mx), from_code(&my));
        let term = &schubert_poly(&w) * &schubert_poly_y(&z);
        rest = &rest - &term.scale(c);
        let e = out.entry((w, z)).or_insert(0);
        *e += c;
    }
    out.retain(|_, c| *c != 0);
    Ok(out)
}

/// `c^w_{uv}`, the coefficient of `𝔖_w` in `𝔖_u 𝔖_v`.
pub fn structure_constant(u: &Permutation, v: &Permutation, w: &Permutation) -> i64 {
    if w.length() != u.length() + v.length() {
        return 0;
    }
    schubert_coefficient(&(&schubert_poly(u) * &schubert_poly(v)), w)
}

/// All chains of length `len` from `u` in the `k`-Bruhat order whose labels
/// strictly increase (or strictly decrease), with labels at most `max_label`.
/// Returns each chain's endpoint and labels.
pub fn monotone_chains(u: &Permutation, k: usize, len: usize, increasing: bool, max_label: Option<usize>) -> Vec<(Permutation, Vec<usize>)> {
    monotone_paths(u, k, len, increasing, max_label).into_iter().map(|(mut path, labels)| (path.pop().expect("paths start at u"), labels)).collect()
}

/// As [`monotone_chains`], keeping every element of each chain. Labels alone
/// do not pin down a chain: two covers of `v` may carry the same label.
pub fn monotone_paths(u: &Permutation, k: usize, len: usize, increasing: bool, max_label: Option<usize>) -> Vec<(Vec<Permutation>, Vec<usize>)> {
    let mut out = Vec::new();
    let mut labels = Vec::with_capacity(len);
    let mut path = vec![u.clone()];
    fn rec(
        k: usize,
        left: usize,
        increasing: bool,
        max_label: Option<usize>,
        path: &mut Vec<Permutation>,
        labels: &mut Vec<usize>,
        out: &mut Vec<(Vec<Permutation>, Vec<usize>)>,
    ) {
        if left == 0 {
            out.push((path.clone(), labels.clone()));
            return;
        }
        let v = path.last().expect("paths are nonempty").clone();
        for (x, b) in k_bruhat_covers(&v, k) {
            if max_label.is_some_and(|m| b > m) {
                continue;
            }
            if let Some(&last) = labels.last() {
                if (increasing && b <= last) || (!increasing && b >= last) {
                    continue;
                }
            }
            labels.push(b);
            path.push(x);
            rec(k, left - 1, increasing, max_label, path, labels, out);
            path.pop();
            labels.pop();
        }
    }
    rec(k, len, increasing, max_label, &mut path, &mut labels, &mut out);
    out
}

fn unique_endpoints(chains: Vec<(Permutation, Vec<usize>)>) -> Result<SchubertExpansion> {
    let mut out = SchubertExpansion::new();
    for (w, _) in chains {
        if out.coeff(&w) != 0 {
            return Err(internal(format!("two monotone chains end at {w}")));
        }
        out.add(w, 1);
    }
    Ok(out)
}

/// `𝔖_u · h_m(x_1, …, x_k)` from increasing chains of length `m` in `≤_k`.
pub fn pieri_h(u: &Permutation, m: usize, k: usize) -> Result<SchubertExpansion> {
    if k == 0 {
        return Err(invalid("Pieri needs k >= 1"));
    }
    unique_endpoints(monotone_chains(u, k, m, true, None))
}

/// `𝔖_u · e_m(x_1, …, x_k)` from decreasing chains of length `m` in `≤_k`.
pub fn pieri_e(u: &Permutation, m: usize, k: usize) -> Result<SchubertExpansion> {
    if k == 0 {
        return Err(invalid("Pieri needs k >= 1"));
    }
    if m > k {
        return Ok(SchubertExpansion::new());
    }
    unique_endpoints(monotone_chains(u, k, m, false, None))
}

/// `𝔖_u · h_m(x_1, …, x_k)` by polynomial multiplication.
pub fn pieri_h_by_polynomial(u: &Permutation, m: usize, k: usize) -> Result<SchubertExpansion> {
    expand_in_schubert(&(&schubert_poly(u) * &complete_homogeneous(m, k)))
}

/// `𝔖_u · e_m(x_1, …, x_k)` by polynomial multiplication.
pub fn pieri_e_by_polynomial(u: &Permutation, m: usize, k: usize) -> Result<SchubertExpansion> {
    expand_in_schubert(&(&schubert_poly(u) * &elementary(m, k)))
}

/// `S_ζ` from the labeled poset `[u, ζu]_k` for the canonical `(u, k)`.
pub fn skew_schubert(zeta: &Permutation) -> Result<SymFunction> {
    if zeta.is_identity() {
        return Ok(SymFunction::one(Basis::Schur));
    }
    let (u, k) = canonical_u(zeta);
    k_bruhat_interval(&u, &zeta.compose(&u), k)?.symfunc()
}

/// `S_ζ = Σ_λ c^{ζu}_{u, v(λ,k)} s_λ` from Schubert structure constants.
pub fn skew_schubert_by_polynomial(zeta: &Permutation) -> Result<SymFunction> {
    let (u, k) = canonical_u(zeta);
    let w = zeta.compose(&u);
    let m = w.length() - u.length();
    let mut out = SymFunction::zero(Basis::Schur);
    for lambda in Partition::all(m) {
        if lambda.len() > k {
            continue;
        }
        out.add_term(lambda.clone(), structure_constant(&u, &grassmannian(&lambda, k)?, &w));
    }
    Ok(out)
}

/// Both routes to `S_ζ`; an internal error if they differ.
pub fn skew_schubert_checked(zeta: &Permutation) -> Result<SymFunction> {
    let a = skew_schubert(zeta)?;
    let b = skew_schubert_by_polynomial(zeta)?;
    if a != b {
        return Err(internal(format!("S_ζ for {zeta}: poset gives {a}, polynomials give {b}")));
    }
    Ok(a)
}

/// `Φ_p`: `x_i ↦ x_i` for `i < p`, `x_p ↦ y`, `x_i ↦ x_{i-1}` for `i > p`.
/// The new variable is `y_1`.
pub fn phi_substitute(f: &MultiPolynomial, p: usize) -> Result<MultiPolynomial> {
    if p == 0 {
        return Err(invalid("Φ_p needs p >= 1"));
    }
    if f.uses_y() {
        return Err(invalid("Φ_p acts on polynomials in x only"));
    }
    Ok(f.rename(|s| {
        let i = s + 1;
        if i < p {
            s
        } else if i == p {
            Y_OFFSET
        } else {
            s - 1
        }
    }))
}

/// `φ_{p,q}(w)`: inserts a new row `p` and column `q` with a 1 at `(p, q)`.
pub fn varphi(w: &Permutation, p: usize, q: usize) -> Result<Permutation> {
    if p == 0 || q == 0 {
        return Err(invalid("φ_{p,q} needs p, q >= 1"));
    }
    let n = w.n().max(p - 1).max(q - 1);
    let bump = |v: usize| if v < q { v } else { v + 1 };
    let v: Vec<usize> = (1..=n + 1)
        .map(|j| {
            if j < p {
                bump(w.apply(j))
            } else if j == p {
                q
            } else {
                bump(w.apply(j - 1))
            }
        })
        .collect();
    Permutation::from_oneline(v)
}

/// Inverse of `φ_{p,q}`: deletes row `p`, which must hold the value `q`.
pub fn varphi_inverse(v: &Permutation, p: usize, q: usize) -> Option<Permutation> {
    if v.apply(p) != q {
        return None;
    }
    let n = v.n().max(p);
    let vals = (1..=n).filter(|&j| j != p).map(|j| {
        let x = v.apply(j);
        if x > q {
            x - 1
        } else {
            x
        }
    });
    Permutation::from_oneline(vals.collect()).ok()
}

/// `ψ_{p,[n]}(w, z)` in `S_{n+m}` for `w ∈ S_n`, `z ∈ S_m`.
pub fn psi(w: &Permutation, z: &Permutation, p: usize, n: usize) -> Result<Permutation> {
    if p == 0 || p > n {
        return Err(invalid(format!("ψ_{{p,[n]}} needs 1 <= p <= n, got p={p}, n={n}")));
    }
    if !w.in_sn(n) {
        return Err(invalid(format!("{w} is not in S_{n}")));
    }
    let m = z.n().max(1);
    let v: Vec<usize> = (1..=n + m)
        .map(|i| {
            if i < p {
                w.apply(i)
            } else if i == p {
                n + z.apply(1)
            } else if i <= n + 1 {
                w.apply(i - 1)
            } else {
                n + z.apply(i - n)
            }
        })
        .collect();
    Permutation::from_oneline(v)
}

/// `Ψ_P` for `P ⊂ {1, …, total}`: the `j`-th element of `P` goes to `x_j`,
/// the `j`-th element of the complement to `y_j`.
pub fn psi_substitute(f: &MultiPolynomial, p: &[usize], total: usize) -> Result<MultiPolynomial> {
    if p.windows(2).any(|w| w[0] >= w[1]) || p.iter().any(|&x| x == 0 || x > total) {
        return Err(invalid(format!("{p:?} is not an increasing subset of 1..={total}")));
    }
    if f.uses_y() || f.width() > total {
        return Err(invalid(format!("Ψ_P acts on polynomials in x_1..x_{total}")));
    }
    let q: Vec<usize> = (1..=total).filter(|i| !p.contains(i)).collect();
    Ok(f.rename(|s| {
        let i = s + 1;
        match p.iter().position(|&x| x == i) {
            Some(j) => j,
            None => Y_OFFSET + q.iter().position(|&x| x == i).expect("complement covers the rest"),
        }
    }))
}

/// One term `y^j 𝔖_w(x)` of `Φ_p 𝔖_u`.
pub type UnivariateTerm = (usize, Permutation);

/// `Φ_p 𝔖_u` for `u ∈ S_n`, from increasing chains
/// `u → φ_{p,n+1}(w)` of length `n+1-p-j` in `≤_p`.
pub fn univariate_expansion(u: &Permutation, p: usize, n: usize) -> Result<Vec<UnivariateTerm>> {
    univariate_by_chains(u, p, n, n + 1)
}

/// The refinement: when `n ∉ {u(1), …, u(p-1)}`, the chains may stop at
/// `φ_{p,n}(w)` after `n-p-j` steps.
pub fn univariate_expansion_refined(u: &Permutation, p: usize, n: usize) -> Result<Vec<UnivariateTerm>> {
    if (1..p).any(|i| u.apply(i) == n) {
        return Err(invalid(format!("{n} is among u(1), …, u({})", p - 1)));
    }
    univariate_by_chains(u, p, n, n)
}

fn univariate_by_chains(u: &Permutation, p: usize, n: usize, q: usize) -> Result<Vec<UnivariateTerm>> {
    if p == 0 || p > n || !u.in_sn(n) {
        return Err(invalid(format!("need u in S_{n} and 1 <= p <= {n}")));
    }
    let mut out = Vec::new();
    for len in 0..=q - p {
        let chains = monotone_chains(u, p, len, true, Some(q));
        let mut seen = std::collections::BTreeSet::new();
        for (v, _) in chains {
            if v.apply(p) != q {
                continue;
            }
            if !seen.insert(v.clone()) {
                return Err(internal(format!("two increasing chains end at {v}")));
            }
            let w = varphi_inverse(&v, p, q).ok_or_else(|| internal("endpoint is not in the image of φ"))?;
            out.push((q - p - len, w));
        }
    }
    out.sort();
    Ok(out)
}

/// `Φ_p 𝔖_u` grouped by the power of `y` and expanded in Schubert polynomials.
pub fn univariate_by_polynomial(u: &Permutation, p: usize) -> Result<BTreeMap<UnivariateTerm, i64>> {
    let g = phi_substitute(&schubert_poly(u), p)?;
    let mut by_power: BTreeMap<usize, MultiPolynomial> = BTreeMap::new();
    for (m, c) in g.terms() {
        let (x, y) = MultiPolynomial::split_xy(m);
        let j = y.first().copied().unwrap_or(0) as usize;
        by_power.entry(j).or_default().add_term(x, c);
    }
    let mut out = BTreeMap::new();
    for (j, f) in by_power {
        for (w, c) in expand_in_schubert(&f)?.iter() {
            out.insert((j, w.clone()), c);
        }
    }
    Ok(out)
}

/// Both sides of the `Ψ_P` identity for `P = {1, …, p-1, p+1, …, n+1}` and
/// `u ∈ S_{n+m}`: the expansion of `Ψ_P 𝔖_u` with terms outside
/// `S_n × S_m` dropped, and `Σ c^{ψ(w,z)}_{u, r[n+1-p,p]} 𝔖_w(x) 𝔖_z(y)`.
pub fn coh_identity(u: &Permutation, p: usize, n: usize, m: usize) -> Result<(DoubleExpansion, DoubleExpansion)> {
    if !u.in_sn(n + m) {
        return Err(invalid(format!("{u} is not in S_{}", n + m)));
    }
    let big_p: Vec<usize> = (1..=n + 1).filter(|&i| i != p).collect();
    let image = psi_substitute(&schubert_poly(u), &big_p, n + m)?;
    let mut lhs = expand_double(&image)?;
    lhs.retain(|(w, z), _| w.in_sn(n) && z.in_sn(m));
    let pieri = pieri_h(u, n + 1 - p, p)?;
    let mut rhs = DoubleExpansion::new();
    for w in all_permutations(n) {
        for z in all_permutations(m) {
            let c = pieri.coeff(&psi(&w, &z, p, n)?);
            if c != 0 {
                rhs.insert((w.clone(), z), c);
            }
        }
    }
    Ok((lhs, rhs))
}

/// `Σ c^{ψ(w,z)}_{u, r[n+1-p,p]} 𝔖_w(x) 𝔖_z(y)` as a polynomial.
pub fn double_expansion_polynomial(e: &DoubleExpansion) -> MultiPolynomial {
    let mut out = MultiPolynomial::zero();
    for ((w, z), &c) in e {
        out = &out + &(&schubert_poly(w) * &schubert_poly_y(z)).scale(c);
    }
    out
}

/// A chain `w = w_0 ⋖ w_1 ⋖ ⋯ ⋖ ω₀` whose `k`-th block is an increasing
/// chain of length `α_k` in `≤_k`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MonomialChain {
    pub alpha: Vec<usize>,
    pub steps: Vec<Permutation>,
    pub labels: Vec<usize>,
}

/// `δ = (n-1, …, 1, 0)` minus `α`.
pub fn delta_minus(alpha: &[usize], n: usize) -> Option<Monomial> {
    (0..n)
        .map(|i| {
            let a = alpha.get(i).copied().unwrap_or(0);
            (n - 1 - i).checked_sub(a).map(|d| d as u32)
        })
        .collect()
}

fn assert_value_condition(chain: &MonomialChain, n: usize) {
    // after block k the first k entries are n, n-1, …, n+1-k
    let mut pos = 0;
    for (k0, &a) in chain.alpha.iter().enumerate() {
        pos += a;
        let v = &chain.steps[pos];
        for j in 1..=k0 + 1 {
            assert_eq!(v.apply(j), n + 1 - j, "chain {chain:?} breaks the value condition at block {}", k0 + 1);
        }
    }
}

/// Every chain counted by the chain construction for `w ∈ S_n`, over all `α`.
pub fn chain_table(w: &Permutation, n: usize) -> Result<Vec<MonomialChain>> {
    if !w.in_sn(n) || n == 0 {
        return Err(invalid(format!("{w} is not in S_{n}")));
    }
    let mut out = Vec::new();
    let mut cur = MonomialChain { alpha: Vec::new(), steps: vec![w.clone()], labels: Vec::new() };
    chains_rec(n, 1, None, &mut cur, &mut out);
    for c in &out {
        assert_value_condition(c, n);
    }
    out.sort();
    Ok(out)
}

fn chains_rec(n: usize, k: usize, fixed: Option<&[usize]>, cur: &mut MonomialChain, out: &mut Vec<MonomialChain>) {
    let here = cur.steps.last().expect("chains start somewhere").clone();
    if k == n {
        if here == Permutation::longest(n) {
            out.push(cur.clone());
        }
        return;
    }
    let lens: Vec<usize> = match fixed {
        Some(a) => vec![a[k - 1]],
        None => (0..=n - k).collect(),
    };
    for len in lens {
        for (path, labels) in monotone_paths(&here, k, len, true, Some(n)) {
            let saved = (cur.steps.len(), cur.labels.len());
            cur.alpha.push(len);
            cur.steps.extend(path.into_iter().skip(1));
            cur.labels.extend(labels);
            chains_rec(n, k + 1, fixed, cur, out);
            cur.alpha.pop();
            cur.steps.truncate(saved.0);
            cur.labels.truncate(saved.1);
        }
    }
}

/// The number of chains for `w ∈ S_n` and `α`; the coefficient of `x^{δ-α}` in `𝔖_w`.
pub fn chain_monomial_coeff(w: &Permutation, alpha: &[usize], n: usize) -> Result<u64> {
    if !w.in_sn(n) || n == 0 {
        return Err(invalid(format!("{w} is not in S_{n}")));
    }
    if alpha.len() != n - 1 || alpha.iter().enumerate().any(|(i, &a)| a > n - 1 - i) {
        return Ok(0);
    }
    let mut out = Vec::new();
    let mut cur = MonomialChain { alpha: Vec::new(), steps: vec![w.clone()], labels: Vec::new() };
    chains_rec(n, 1, Some(alpha), &mut cur, &mut out);
    for c in &out {
        assert_value_condition(c, n);
    }
    Ok(out.len() as u64)
}

/// `Σ_α #chains · x^{δ-α}`.
pub fn chain_polynomial(w: &Permutation, n: usize) -> Result<MultiPolynomial> {
    let mut out = MultiPolynomial::zero();
    for c in chain_table(w, n)? {
        let m = delta_minus(&c.alpha, n).ok_or_else(|| internal("α exceeds δ"))?;
        out.add_term(m, 1);
    }
    Ok(out)
}

/// All `α` with `0 ≤ α_i ≤ n - i`, `i = 1..n-1`.
pub fn admissible_alphas(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for i in 1..n {
        let mut next = Vec::new();
        for a in &out {
            for v in 0..=n - i {
                let mut b = a.clone();
                b.push(v);
                next.push(b);
            }
        }
        out = next;
    }
    out
}

/// `h(α) = h_{α_1}(x_1) h_{α_2}(x_1, x_2) ⋯`.
pub fn h_alpha(alpha: &[usize]) -> MultiPolynomial {
    alpha.iter().enumerate().fold(MultiPolynomial::one(), |acc, (i, &a)| &acc * &complete_homogeneous(a, i + 1))
}

/// `e(α) = e_{α_{n-1}}(x_1) e_{α_{n-2}}(x_1, x_2) ⋯ e_{α_1}(x_1, …, x_{n-1})`.
pub fn e_alpha(alpha: &[usize], n: usize) -> MultiPolynomial {
    alpha.iter().enumerate().fold(MultiPolynomial::one(), |acc, (i, &a)| &acc * &elementary(a, n - 1 - i))
}

/// `d^w_α`, the coefficient of `𝔖_{ω₀}` in `𝔖_w · h(α)`.
pub fn d_coefficient(w: &Permutation, alpha: &[usize], n: usize) -> Result<i64> {
    if !w.in_sn(n) {
        return Err(invalid(format!("{w} is not in S_{n}")));
    }
    let w0 = Permutation::longest(n);
    if w.length() + alpha.iter().sum::<usize>() != w0.length() {
        return Ok(0);
    }
    Ok(schubert_coefficient(&(&schubert_poly(w) * &h_alpha(alpha)), &w0))
}

/// `d^w_α` by iterating the chain Pieri rule `k = 1, …, n-1`.
pub fn d_coefficient_by_pieri(w: &Permutation, alpha: &[usize], n: usize) -> Result<i64> {
    let mut cur = SchubertExpansion::single(w.clone());
    for (i, &a) in alpha.iter().enumerate() {
        let mut next = SchubertExpansion::new();
        for (v, c) in cur.iter() {
            for (x, d) in pieri_h(v, a, i + 1)?.iter() {
                if x.in_sn(n) {
                    next.add(x.clone(), c * d);
                }
            }
        }
        cur = next;
    }
    Ok(cur.coeff(&Permutation::longest(n)))
}

/// The coefficient of `𝔖_{ω₀}` in `𝔖_{ω₀wω₀} · e(α)`.
pub fn km_coefficient(w: &Permutation, alpha: &[usize], n: usize) -> Result<i64> {
    let wbar = omega0_conjugate(w, n)?;
    let w0 = Permutation::longest(n);
    if w.length() + alpha.iter().sum::<usize>() != w0.length() {
        return Ok(0);
    }
    Ok(schubert_coefficient(&(&schubert_poly(&wbar) * &e_alpha(alpha, n)), &w0))
}
