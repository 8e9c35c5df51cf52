//! Sparse multivariate polynomials with integer coefficients.
//!
//! Variables are numbered from zero. `x_i` (1-based) lives in slot `i-1`
//! and `y_j` in slot `Y_OFFSET + j - 1`, so one exponent vector covers both
//! alphabets. Coefficient arithmetic is checked and panics on overflow.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::{Error, Result};

/// Slot of `y_1`.
pub const Y_OFFSET: usize = 32;

/// An exponent vector with trailing zeros trimmed.
pub type Monomial = Vec<u32>;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MultiPolynomial {
    terms: BTreeMap<Monomial, i64>,
}

fn trim(mut m: Monomial) -> Monomial {
    while m.last() == Some(&0) {
        m.pop();
    }
    m
}

fn checked_add(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("coefficient overflow")
}

fn checked_mul(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("coefficient overflow")
}

fn mono_mul(a: &[u32], b: &[u32]) -> Monomial {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o += s;
    }
    out
}

/// Compares monomials by the exponent of the highest-index variable first.
/// Under this order the leading monomial of `𝔖_w` is `x^{code(w)}`.
pub fn revlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let n = a.len().max(b.len());
    for i in (0..n).rev() {
        let ea = a.get(i).copied().unwrap_or(0);
        let eb = b.get(i).copied().unwrap_or(0);
        match ea.cmp(&eb) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

/// Lexicographic comparison from `x_1` upward.
pub fn lex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let n = a.len().max(b.len());
    for i in 0..n {
        let ea = a.get(i).copied().unwrap_or(0);
        let eb = b.get(i).copied().unwrap_or(0);
        match ea.cmp(&eb) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

impl MultiPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(Vec::new(), c)
    }

    pub fn monomial(exps: Monomial, coeff: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exps, coeff);
        p
    }

    /// The variable in slot `slot`.
    pub fn var(slot: usize) -> Self {
        let mut e = vec![0; slot + 1];
        e[slot] = 1;
        Self::monomial(e, 1)
    }

    /// `x_i`, 1-based.
    pub fn x(i: usize) -> Self {
        assert!((1..=Y_OFFSET).contains(&i), "x index out of range");
        Self::var(i - 1)
    }

    /// `y_j`, 1-based.
    pub fn y(j: usize) -> Self {
        assert!(j >= 1, "y index out of range");
        Self::var(Y_OFFSET + j - 1)
    }

    /// `x^e` for an exponent vector over the x alphabet.
    pub fn x_power(exps: &[u32]) -> Self {
        Self::monomial(exps.to_vec(), 1)
    }

    pub fn add_term(&mut self, exps: Monomial, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let key = trim(exps);
        let entry = self.terms.entry(key.clone()).or_insert(0);
        *entry = checked_add(*entry, coeff);
        if *entry == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, i64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coeff(&self, exps: &[u32]) -> i64 {
        self.terms.get(&trim(exps.to_vec())).copied().unwrap_or(0)
    }

    /// Total degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Constant term.
    pub fn constant_term(&self) -> i64 {
        self.coeff(&[])
    }

    /// Number of slots in use (one past the highest variable present).
    pub fn width(&self) -> usize {
        self.terms.keys().map(|m| m.len()).max().unwrap_or(0)
    }

    pub fn uses_y(&self) -> bool {
        self.width() > Y_OFFSET
    }

    pub fn scale(&self, c: i64) -> Self {
        if c == 0 {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(m, &v)| (m.clone(), checked_mul(v, c))).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Leading monomial under [`revlex_cmp`].
    pub fn leading_revlex(&self) -> Option<(&Monomial, i64)> {
        self.terms.iter().max_by(|a, b| revlex_cmp(a.0, b.0)).map(|(m, &c)| (m, c))
    }

    /// Leading monomial under [`lex_cmp`].
    pub fn leading_lex(&self) -> Option<(&Monomial, i64)> {
        self.terms.iter().max_by(|a, b| lex_cmp(a.0, b.0)).map(|(m, &c)| (m, c))
    }

    /// The divided difference `∂_i f = (f - s_i f)/(x_i - x_{i+1})`, `i ≥ 1`,
    /// evaluated monomial by monomial.
    pub fn divided_difference(&self, i: usize) -> Self {
        assert!(i >= 1);
        let (s, t) = (i - 1, i);
        let mut out = Self::zero();
        for (m, &c) in &self.terms {
            let a = m.get(s).copied().unwrap_or(0);
            let b = m.get(t).copied().unwrap_or(0);
            if a == b {
                continue;
            }
            let (hi, lo, sign) = if a > b { (a, b, 1) } else { (b, a, -1) };
            let mut base = m.clone();
            if base.len() <= t {
                base.resize(t + 1, 0);
            }
            // x_i^hi x_{i+1}^lo - x_i^lo x_{i+1}^hi over (x_i - x_{i+1})
            for e in 0..hi - lo {
                base[s] = lo + hi - lo - 1 - e;
                base[t] = lo + e;
                out.add_term(base.clone(), c * sign);
            }
        }
        out
    }

    /// Renames variables slotwise. `f` receives a slot and returns its image.
    pub fn rename(&self, f: impl Fn(usize) -> usize) -> Self {
        let mut out = Self::zero();
        for (m, &c) in &self.terms {
            let mut e: Monomial = Vec::new();
            for (slot, &d) in m.iter().enumerate() {
                if d == 0 {
                    continue;
                }
                let to = f(slot);
                if e.len() <= to {
                    e.resize(to + 1, 0);
                }
                e[to] += d;
            }
            out.add_term(e, c);
        }
        out
    }

    /// Splits each monomial at `Y_OFFSET` into its x part and its y part.
    pub fn split_xy(m: &[u32]) -> (Monomial, Monomial) {
        let x = trim(m[..m.len().min(Y_OFFSET)].to_vec());
        let y = if m.len() > Y_OFFSET { trim(m[Y_OFFSET..].to_vec()) } else { Vec::new() };
        (x, y)
    }

    /// Joins an x exponent vector and a y exponent vector.
    pub fn join_xy(x: &[u32], y: &[u32]) -> Monomial {
        let mut m = x.to_vec();
        if !y.is_empty() {
            m.resize(Y_OFFSET, 0);
            m.extend_from_slice(y);
        }
        trim(m)
    }

    /// Keeps only the terms accepted by `keep`.
    pub fn filter_terms(&self, keep: impl Fn(&[u32]) -> bool) -> Self {
        Self { terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, &c)| (m.clone(), c)).collect() }
    }
}

impl Add for &MultiPolynomial {
    type Output = MultiPolynomial;
    fn add(self, rhs: &MultiPolynomial) -> MultiPolynomial {
        let mut out = self.clone();
        for (m, &c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl Sub for &MultiPolynomial {
    type Output = MultiPolynomial;
    fn sub(self, rhs: &MultiPolynomial) -> MultiPolynomial {
        let mut out = self.clone();
        for (m, &c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &MultiPolynomial {
    type Output = MultiPolynomial;
    fn mul(self, rhs: &MultiPolynomial) -> MultiPolynomial {
        let mut acc: BTreeMap<Monomial, i64> = BTreeMap::new();
        for (a, &ca) in &self.terms {
            for (b, &cb) in &rhs.terms {
                let e = acc.entry(mono_mul(a, b)).or_insert(0);
                *e = checked_add(*e, checked_mul(ca, cb));
            }
        }
        acc.retain(|_, c| *c != 0);
        MultiPolynomial { terms: acc }
    }
}

impl Neg for &MultiPolynomial {
    type Output = MultiPolynomial;
    fn neg(self) -> MultiPolynomial {
        self.scale(-1)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for MultiPolynomial {
            type Output = MultiPolynomial;
            fn $m(self, rhs: MultiPolynomial) -> MultiPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

fn fmt_monomial(m: &[u32]) -> String {
    let mut parts = Vec::new();
    for (slot, &e) in m.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let name = if slot >= Y_OFFSET { format!("y{}", slot - Y_OFFSET + 1) } else { format!("x{}", slot + 1) };
        parts.push(if e == 1 { name } else { format!("{name}^{e}") });
    }
    parts.join("*")
}

impl fmt::Display for MultiPolynomial {
    /// Terms in decreasing lexicographic order, e.g. `x1^2*x2 + 3*x1*x3 - x2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| lex_cmp(b.0, a.0))
        });
        for (idx, (m, &c)) in terms.iter().enumerate() {
            let mono = fmt_monomial(m);
            let mag = c.unsigned_abs();
            let body = match (mono.is_empty(), mag) {
                (true, _) => mag.to_string(),
                (false, 1) => mono,
                (false, _) => format!("{mag}*{mono}"),
            };
            if idx == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
                write!(f, "{body}")?;
            } else {
                write!(f, " {} {body}", if c < 0 { '-' } else { '+' })?;
            }
        }
        Ok(())
    }
}

impl FromStr for MultiPolynomial {
    type Err = Error;

    /// Parses sums of products such as `x1^2*x2 + 3*x1*x3 - x2` or `2 y1 x3`.
    fn from_str(s: &str) -> Result<Self> {
        let mut out = MultiPolynomial::zero();
        let src: String = s.chars().filter(|c| !c.is_whitespace() || *c == ' ').collect();
        let chars = src.chars();
        let mut sign = 1i64;
        let mut term = String::new();
        let mut seen_any = false;
        let flush = |term: &str, sign: i64, out: &mut MultiPolynomial| -> Result<()> {
            let t = term.trim();
            if t.is_empty() {
                return Err(Error::Parse(format!("empty term in {s:?}")));
            }
            let (coeff, mono) = parse_term(t)?;
            out.add_term(mono, checked_mul(sign, coeff));
            Ok(())
        };
        for c in chars {
            match c {
                '+' | '-' if !term.trim().is_empty() && !term.trim_end().ends_with('^') => {
                    flush(&term, sign, &mut out)?;
                    seen_any = true;
                    term.clear();
                    sign = if c == '-' { -1 } else { 1 };
                }
                '+' | '-' if term.trim().is_empty() => {
                    if c == '-' {
                        sign = -sign;
                    }
                }
                _ => term.push(c),
            }
        }
        if !term.trim().is_empty() {
            flush(&term, sign, &mut out)?;
        } else if !seen_any {
            return Err(Error::Parse("empty polynomial".into()));
        } else {
            return Err(Error::Parse(format!("dangling sign in {s:?}")));
        }
        Ok(out)
    }
}

fn parse_term(t: &str) -> Result<(i64, Monomial)> {
    let mut coeff = 1i64;
    let mut mono: Monomial = Vec::new();
    for factor in t.split(['*', ' ']).filter(|f| !f.is_empty()) {
        let (base, exp) = match factor.split_once('^') {
            Some((b, e)) => {
                let e: u32 = e.trim().parse().map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?;
                (b.trim(), e)
            }
            None => (factor, 1),
        };
        if let Ok(v) = base.parse::<i64>() {
            coeff = checked_mul(coeff, v.checked_pow(exp).ok_or_else(|| Error::Parse("coefficient overflow".into()))?);
            continue;
        }
        let (offset, idx) = if let Some(rest) = base.strip_prefix('x') {
            (0, rest)
        } else if let Some(rest) = base.strip_prefix('y') {
            (Y_OFFSET, rest)
        } else {
            return Err(Error::Parse(format!("unknown factor {factor:?}")));
        };
        let i: usize = idx.parse().map_err(|_| Error::Parse(format!("bad variable index in {factor:?}")))?;
        if i == 0 || (offset == 0 && i > Y_OFFSET) {
            return Err(Error::Parse(format!("variable index out of range in {factor:?}")));
        }
        let slot = offset + i - 1;
        if mono.len() <= slot {
            mono.resize(slot + 1, 0);
        }
        mono[slot] += exp;
    }
    Ok((coeff, mono))
}

/// `h_m(x_1, …, x_k)`.
pub fn complete_homogeneous(m: usize, k: usize) -> MultiPolynomial {
    let mut out = MultiPolynomial::zero();
    fn rec(slot: usize, k: usize, rem: u32, cur: &mut Vec<u32>, out: &mut MultiPolynomial) {
        if slot + 1 == k {
            cur[slot] = rem;
            out.add_term(cur.clone(), 1);
            cur[slot] = 0;
            return;
        }
        for e in 0..=rem {
            cur[slot] = e;
            rec(slot + 1, k, rem - e, cur, out);
        }
        cur[slot] = 0;
    }
    if m == 0 {
        return MultiPolynomial::one();
    }
    if k == 0 {
        return out;
    }
    rec(0, k, m as u32, &mut vec![0; k], &mut out);
    out
}

/// `e_m(x_1, …, x_k)`.
pub fn elementary(m: usize, k: usize) -> MultiPolynomial {
    let mut out = MultiPolynomial::zero();
    fn rec(start: usize, k: usize, left: usize, cur: &mut Vec<u32>, out: &mut MultiPolynomial) {
        if left == 0 {
            out.add_term(cur.clone(), 1);
            return;
        }
        for i in start..k {
            cur[i] = 1;
            rec(i + 1, k, left - 1, cur, out);
            cur[i] = 0;
        }
    }
    if m > k {
        return out;
    }
    rec(0, k, m, &mut vec![0; k], &mut out);
    out
}
