//! Batch property suites. Each suite compares two independent routes to the
//! same quantity over a family of inputs and reports every disagreement.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::order::{canonical_u, k_bruhat_covers, k_bruhat_interval, prec_interval, prec_rank, weak_interval, young_interval};
use crate::par::Execution;
use crate::partition::{Composition, Partition};
use crate::perm::{all_permutations, compress, cyclic_shift, grassmannian, irreducible_factorization, shape_embed, Permutation};
use crate::poset::{poset_product, LabeledPoset};
use crate::schubert::{
    admissible_alphas, chain_monomial_coeff, chain_polynomial, coh_identity, d_coefficient, pieri_e, pieri_e_by_polynomial, pieri_h,
    pieri_h_by_polynomial, schubert_poly, skew_schubert, structure_constant, univariate_by_polynomial, univariate_expansion,
};
use crate::stanley::{signed_h_sum, stanley_coefficient, stanley_function, theta, theta_domain};
use crate::symfunc::{count_reverse_lr, lr_coefficient, Basis, SymFunction};

pub const SUITES: &[&str] = &["pieri", "identities", "posets", "stanley", "monomials"];

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    #[default]
    Small,
    Full,
}

impl FromStr for Scale {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "small" => Ok(Scale::Small),
            "full" => Ok(Scale::Full),
            _ => Err(invalid(format!("unknown scale {s:?}, expected small or full"))),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub scale: Scale,
    pub seed: u64,
    pub execution: Execution,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { scale: Scale::Small, seed: DEFAULT_SEED, execution: Execution::Parallel }
    }
}

/// One failed equality with both of its sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub check: String,
    pub input: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub cases: u64,
    /// Cases per check, in name order.
    pub checks: BTreeMap<String, u64>,
    pub failures: Vec<Failure>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wall_ms: Option<f64>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "ok" } else { "FAILED" };
        write!(f, "{:<12} {:>8} cases  {:>4} failures  {}", self.name, self.cases, self.failures.len(), status)?;
        if let Some(ms) = self.wall_ms {
            write!(f, "  {ms:.1} ms")?;
        }
        for (check, n) in &self.checks {
            write!(f, "\n  {n:>8}  {check}")?;
        }
        for x in &self.failures {
            write!(f, "\n  [{}] {}: {} != {}", x.check, x.input, x.lhs, x.rhs)?;
        }
        Ok(())
    }
}

/// Cases checked plus the failures among them.
#[derive(Default)]
struct Tally {
    cases: u64,
    checks: BTreeMap<String, u64>,
    failures: Vec<Failure>,
}

impl Tally {
    fn absorb(&mut self, other: Tally) {
        self.cases += other.cases;
        for (k, v) in other.checks {
            *self.checks.entry(k).or_default() += v;
        }
        self.failures.extend(other.failures);
    }

    fn eq<T: PartialEq + fmt::Debug>(&mut self, check: &str, input: impl fmt::Display, lhs: Result<T>, rhs: Result<T>) {
        self.cases += 1;
        *self.checks.entry(check.to_string()).or_default() += 1;
        let ok = matches!((&lhs, &rhs), (Ok(a), Ok(b)) if a == b);
        if !ok {
            let show = |r: &Result<T>| match r {
                Ok(v) => format!("{v:?}"),
                Err(e) => format!("error: {e}"),
            };
            self.failures.push(Failure { check: check.into(), input: input.to_string(), lhs: show(&lhs), rhs: show(&rhs) });
        }
    }

    fn holds(&mut self, check: &str, input: impl fmt::Display, ok: Result<bool>) {
        self.eq(check, input, ok, Ok(true));
    }
}

fn over<T: Sync>(exec: Execution, items: &[T], f: impl Fn(&T) -> Tally + Sync + Send) -> Tally {
    let mut out = Tally::default();
    for t in exec.map(items, f) {
        out.absorb(t);
    }
    out
}

/// Runs one suite (or `all` of them, merged into one report).
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<SuiteReport> {
    let start = Instant::now();
    let tally = match name {
        "all" => {
            let mut t = Tally::default();
            for s in SUITES {
                t.absorb(dispatch(s, cfg)?);
            }
            t
        }
        _ => dispatch(name, cfg)?,
    };
    Ok(SuiteReport {
        name: name.to_string(),
        cases: tally.cases,
        checks: tally.checks,
        failures: tally.failures,
        wall_ms: Some(start.elapsed().as_secs_f64() * 1e3),
    })
}

fn dispatch(name: &str, cfg: &SuiteConfig) -> Result<Tally> {
    match name {
        "pieri" => Ok(pieri_suite(cfg)),
        "identities" => Ok(identities_suite(cfg)),
        "posets" => Ok(posets_suite(cfg)),
        "stanley" => Ok(stanley_suite(cfg)),
        "monomials" => Ok(monomials_suite(cfg)),
        _ => Err(invalid(format!("unknown suite {name:?}; choose one of {}, all", SUITES.join(", ")))),
    }
}

fn perms_up_to(n: usize) -> Vec<Permutation> {
    let mut out: Vec<Permutation> = all_permutations(n);
    out.sort_by_key(|w| (w.n(), w.clone()));
    out
}

fn monomials_suite(cfg: &SuiteConfig) -> Tally {
    let n = if cfg.scale == Scale::Full { 5 } else { 4 };
    let alphas = admissible_alphas(n);
    over(cfg.execution, &perms_up_to(n), |w| {
        let mut t = Tally::default();
        t.eq("chain polynomial", w, chain_polynomial(w, n), Ok(schubert_poly(w)));
        for a in &alphas {
            t.eq("d coefficient", format!("{w} {a:?}"), d_coefficient(w, a, n), chain_monomial_coeff(w, a, n).map(|c| c as i64));
        }
        t
    })
}

fn pieri_suite(cfg: &SuiteConfig) -> Tally {
    let n = if cfg.scale == Scale::Full { 4 } else { 3 };
    let mut inputs = Vec::new();
    for u in perms_up_to(n) {
        for k in 1..=3 {
            for m in 1..=3 {
                inputs.push((u.clone(), k, m));
            }
        }
    }
    over(cfg.execution, &inputs, |(u, k, m)| {
        let mut t = Tally::default();
        let input = format!("u={u} k={k} m={m}");
        t.eq("pieri h", &input, pieri_h(u, *m, *k), pieri_h_by_polynomial(u, *m, *k));
        t.eq("pieri e", &input, pieri_e(u, *m, *k), pieri_e_by_polynomial(u, *m, *k));
        t
    })
}

/// A random interval `[u, w]_k` with `w ∈ S_n`, reached by `1..=max_steps`
/// random covers from a random `u`.
pub fn random_k_bruhat_interval(rng: &mut impl Rng, n: usize, max_steps: usize) -> (Permutation, Permutation, usize) {
    let perms = all_permutations(n);
    loop {
        let u = perms.choose(rng).expect("S_n is nonempty").clone();
        let k = rng.gen_range(1..n.max(2));
        let steps = rng.gen_range(1..=max_steps.max(1));
        let mut w = u.clone();
        for _ in 0..steps {
            let covers: Vec<Permutation> = k_bruhat_covers(&w, k).into_iter().map(|c| c.0).filter(|c| c.in_sn(n)).collect();
            match covers.choose(rng) {
                Some(c) => w = c.clone(),
                None => break,
            }
        }
        if w != u {
            return (u, w, k);
        }
    }
}

/// A k-Bruhat interval `[u, w]_k` inside `S_n` together with a shape-equivalent
/// interval `[y, z]_l`: `zy⁻¹` is `wu⁻¹` carried to a random support in
/// `1..=spread`, and `(y, l)` is its canonical base point.
#[derive(Clone, Debug)]
pub struct ShapePair {
    pub u: Permutation,
    pub w: Permutation,
    pub k: usize,
    pub y: Permutation,
    pub z: Permutation,
    pub l: usize,
}

impl fmt::Display for ShapePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]_{} ~ [{}, {}]_{}", self.u, self.w, self.k, self.y, self.z, self.l)
    }
}

pub fn random_shape_pair(rng: &mut impl Rng, n: usize, spread: usize) -> ShapePair {
    let (u, w, k) = random_k_bruhat_interval(rng, n, 3);
    let zeta = w.compose(&u.inverse());
    let c = compress(&zeta);
    let mut pool: Vec<usize> = (1..=spread.max(c.n())).collect();
    pool.shuffle(rng);
    let mut p: Vec<usize> = pool[..c.n()].to_vec();
    p.sort();
    let eta = shape_embed(&c, &p).expect("sorted positive support");
    let (y, l) = canonical_u(&eta);
    let z = eta.compose(&y);
    ShapePair { u, w, k, y, z, l }
}

/// Both sides of the shape-equivalence identity for every `λ ⊢ ℓ(w) − ℓ(u)`:
/// poset coefficients always, Schubert structure constants when `v(λ, k)`
/// and `v(λ, l)` exist.
fn shape_pair_checks(pair: &ShapePair) -> Tally {
    let mut t = Tally::default();
    let rank = pair.w.length() - pair.u.length();
    let left = k_bruhat_interval(&pair.u, &pair.w, pair.k);
    let right = k_bruhat_interval(&pair.y, &pair.z, pair.l);
    for lambda in Partition::all(rank) {
        let input = format!("{pair} λ={lambda}");
        let coeff = |p: &Result<LabeledPoset>| match p {
            Ok(p) => p.skew_coefficient(&lambda),
            Err(e) => Err(e.clone()),
        };
        t.eq("identity 1 (posets)", &input, coeff(&left), coeff(&right));
        if lambda.len() <= pair.k.min(pair.l) {
            let a = grassmannian(&lambda, pair.k).map(|v| structure_constant(&pair.u, &v, &pair.w));
            let b = grassmannian(&lambda, pair.l).map(|v| structure_constant(&pair.y, &v, &pair.z));
            t.eq("identity 1 (structure constants)", &input, a.clone(), b);
            t.eq("poset coefficient = structure constant", &input, coeff(&left), a);
        }
    }
    t
}

/// `ζ` whose non-crossing closure has at least two blocks and `|ζ| ≤ max_rank`.
pub fn disjoint_products(n: usize, max_rank: usize) -> Vec<Permutation> {
    all_permutations(n).into_iter().filter(|z| irreducible_factorization(z).len() >= 2 && prec_rank(z) <= max_rank).collect()
}

fn product_checks(zeta: &Permutation) -> Tally {
    let mut t = Tally::default();
    let factors = irreducible_factorization(zeta);
    let prod = factors.iter().try_fold(SymFunction::one(Basis::Schur), |acc, f| acc.mul(&skew_schubert(f)?));
    t.eq("product theorem", zeta, skew_schubert(zeta), prod);
    t
}

fn identities_suite(cfg: &SuiteConfig) -> Tally {
    let full = cfg.scale == Scale::Full;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let pairs: Vec<ShapePair> = (0..if full { 60 } else { 15 }).map(|_| random_shape_pair(&mut rng, 5, 7)).collect();
    let mut t = over(cfg.execution, &pairs, shape_pair_checks);

    let products = disjoint_products(if full { 6 } else { 5 }, 6);
    t.absorb(over(cfg.execution, &products, product_checks));

    t.absorb(over(cfg.execution, &all_permutations(4), |eta| {
        let mut t = Tally::default();
        let shifted = match cyclic_shift(eta, 4) {
            Ok(s) => s,
            Err(e) => {
                t.holds("cyclic shift", eta, Err(e));
                return t;
            }
        };
        let p = prec_interval(&Permutation::identity(), eta);
        let q = prec_interval(&Permutation::identity(), &shifted);
        let (Ok(p), Ok(q)) = (p, q) else {
            t.holds("cyclic shift intervals", eta, Ok(false));
            return t;
        };
        for alpha in Composition::all_positive(p.rank()) {
            t.eq("cyclic shift #H", format!("{eta} α={alpha}"), Ok(p.h_count(&alpha)), Ok(q.h_count(&alpha)));
        }
        t.eq("cyclic shift S_η", eta, skew_schubert(eta), skew_schubert(&shifted));
        t
    }));

    let mut coh_inputs = Vec::new();
    for u in perms_up_to(3) {
        for p in 1..=3 {
            coh_inputs.push((u.clone(), p));
        }
    }
    t.absorb(over(cfg.execution, &coh_inputs, |(u, p)| {
        let mut t = Tally::default();
        let input = format!("u={u} p={p}");
        match coh_identity(u, *p, 3, 3) {
            Ok((lhs, rhs)) => t.eq("Ψ_P identity", &input, Ok(lhs), Ok(rhs)),
            Err(e) => t.holds("Ψ_P identity", &input, Err(e)),
        }
        t
    }));

    let mut uni_inputs = Vec::new();
    let n = if full { 4 } else { 3 };
    for u in perms_up_to(n) {
        for p in 1..=n {
            uni_inputs.push((u.clone(), p));
        }
    }
    t.absorb(over(cfg.execution, &uni_inputs, |(u, p)| {
        let mut t = Tally::default();
        let chains = univariate_expansion(u, *p, n).map(|v| {
            let mut m = std::collections::BTreeMap::new();
            for term in v {
                *m.entry(term).or_insert(0i64) += 1;
            }
            m
        });
        t.eq("univariate Pieri", format!("u={u} p={p}"), chains, univariate_by_polynomial(u, *p));
        t
    }));
    t
}

fn posets_suite(cfg: &SuiteConfig) -> Tally {
    let full = cfg.scale == Scale::Full;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5eed);
    let intervals: Vec<_> = (0..if full { 200 } else { 40 }).map(|_| random_k_bruhat_interval(&mut rng, 5, 4)).collect();
    let mut t = over(cfg.execution, &intervals, |(u, w, k)| {
        let mut t = Tally::default();
        t.holds("k-Bruhat symmetry", format!("[{u}, {w}]_{k}"), k_bruhat_interval(u, w, *k).map(|p| p.is_symmetric()));
        t
    });

    let bound = if full { Partition::new(vec![3, 3, 3]) } else { Partition::new(vec![2, 2, 2]) }.expect("a partition");
    let mut young = Vec::new();
    for lambda in bound.subpartitions() {
        for mu in lambda.subpartitions() {
            young.push((mu, lambda.clone()));
        }
    }
    t.absorb(over(cfg.execution, &young, |(mu, lambda)| {
        let mut t = Tally::default();
        let input = format!("[{mu}, {lambda}]");
        let p = young_interval(mu, lambda);
        t.holds("Young symmetry", &input, p.as_ref().map(|p| p.is_symmetric()).map_err(Clone::clone));
        let skew = SymFunction::from_terms(
            Basis::Schur,
            Partition::all(lambda.size() - mu.size()).into_iter().map(|nu| {
                let c = lr_coefficient(lambda, mu, &nu) as i64;
                (nu, c)
            }),
        );
        t.eq("Young = skew Schur", &input, p.and_then(|p| p.symfunc()), Ok(skew));
        t
    }));

    t.absorb(over(cfg.execution, &perms_up_to(4), |w| {
        let mut t = Tally::default();
        t.holds("weak symmetry", w, weak_interval(&Permutation::identity(), w).map(|p| p.is_symmetric()));
        t
    }));

    let mut products = Vec::new();
    for _ in 0..if full { 20 } else { 6 } {
        products.push((random_k_bruhat_interval(&mut rng, 4, 3), random_k_bruhat_interval(&mut rng, 4, 3)));
    }
    t.absorb(over(cfg.execution, &products, |((u1, w1, k1), (u2, w2, k2))| {
        let mut t = Tally::default();
        let input = format!("[{u1}, {w1}]_{k1} × [{u2}, {w2}]_{k2}");
        let res = (|| {
            let p = k_bruhat_interval(u1, w1, *k1)?;
            let q = k_bruhat_interval(u2, w2, *k2)?.relabel(|l| l + 100);
            let lhs = poset_product(&p, &q).symfunc()?;
            let rhs = p.symfunc()?.mul(&q.symfunc()?)?;
            Ok((lhs, rhs))
        })();
        match res {
            Ok((a, b)) => t.eq("S_{P×Q} = S_P S_Q", &input, Ok(a), Ok(b)),
            Err(e) => t.holds("S_{P×Q} = S_P S_Q", &input, Err(e)),
        }
        t
    }));

    let max = if full { 6 } else { 5 };
    let mut lr_inputs = Vec::new();
    for size in 0..=max {
        for lambda in Partition::all(size) {
            for mu in lambda.subpartitions() {
                for nu in Partition::all(size - mu.size()) {
                    lr_inputs.push((lambda.clone(), mu.clone(), nu));
                }
            }
        }
    }
    t.absorb(over(cfg.execution, &lr_inputs, |(lambda, mu, nu)| {
        let mut t = Tally::default();
        t.eq("reverse LR", format!("λ={lambda} μ={mu} ν={nu}"), count_reverse_lr(lambda, mu, nu), Ok(lr_coefficient(lambda, mu, nu)));
        t
    }));
    t
}

/// All of `S_4` plus `count` permutations of `S_5` drawn with `seed`.
pub fn stanley_test_set(seed: u64, count: usize) -> Vec<Permutation> {
    let mut ws = perms_up_to(4);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s5: Vec<Permutation> = all_permutations(5).into_iter().filter(|w| !w.in_sn(4)).collect();
    ws.extend(s5.choose_multiple(&mut rng, count).cloned());
    ws
}

fn stanley_suite(cfg: &SuiteConfig) -> Tally {
    let count = if cfg.scale == Scale::Full { 20 } else { 5 };
    over(cfg.execution, &stanley_test_set(cfg.seed, count), |w| {
        let mut t = Tally::default();
        let poset = weak_interval(&Permutation::identity(), w);
        t.eq("F_w = S_[1,w]", w, Ok(stanley_function(w)), poset.as_ref().map_err(Clone::clone).and_then(|p| p.symfunc()));
        for lambda in Partition::all(w.length()) {
            let input = format!("{w} λ={lambda}");
            let a = stanley_coefficient(w, &lambda) as i64;
            t.eq("a^w_λ = c_λ([1,w])", &input, Ok(a), poset.as_ref().map_err(Clone::clone).and_then(|p| p.skew_coefficient(&lambda)));
            t.eq("signed #H sum", &input, Ok(signed_h_sum(w, &lambda)), Ok(a));
            let mut fixed = 0i64;
            for (_, pi, rho) in theta_domain(w, &lambda) {
                let case = format!("{input} π={pi} ρ={rho}");
                let once = theta(&pi, &rho, &lambda);
                match &once {
                    Ok(s) if s.r.is_none() => fixed += 1,
                    _ => {}
                }
                let twice = once.and_then(|s| theta(&s.pi, &s.word, &lambda)).map(|s| (s.pi, s.word));
                t.eq("θ² = id", case, twice, Ok((pi, rho)));
            }
            t.eq("θ fixed points", &input, Ok(fixed), Ok(a));
        }
        t
    })
}
