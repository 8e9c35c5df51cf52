//! Reduced words, their tableaux `T(α, ρ)`, Stanley coefficients and the
//! modified jeu de taquin behind the involution `θ`.
//!
//! A reduced word `ρ = ρ₁⋯ρ_m` is the label sequence of a maximal chain of
//! `[1, w]_weak`, so `w = s_{ρ_m} ⋯ s_{ρ_1}`. Tableau rows are listed
//! bottom-up (the first row is at the bottom) and the reading word runs
//! across each row starting with the topmost one.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{internal, invalid, Error, Result};
use crate::partition::{Composition, Partition};
use crate::perm::Permutation;
use crate::poset::lambda_pi;
use crate::symfunc::{Basis, SymFunction};

/// A reduced decomposition together with the permutation it spells.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ReducedWord {
    letters: Vec<usize>,
    target: Permutation,
}

impl ReducedWord {
    /// Checks reducedness letter by letter: each `s_i` must raise the length.
    pub fn new(letters: Vec<usize>) -> Result<Self> {
        let mut cur = Permutation::identity();
        for (pos, &i) in letters.iter().enumerate() {
            if i == 0 {
                return Err(invalid("letters are positive"));
            }
            let inv = cur.inverse();
            if inv.apply(i) > inv.apply(i + 1) {
                return Err(invalid(format!("word {letters:?} is not reduced at position {}", pos + 1)));
            }
            cur = cur.swap_values(i, i + 1);
        }
        Ok(ReducedWord { letters, target: cur })
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn target(&self) -> &Permutation {
        &self.target
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Positions `j` with `ρ_j > ρ_{j+1}`.
    pub fn descent_set(&self) -> BTreeSet<usize> {
        (1..self.letters.len()).filter(|&j| self.letters[j - 1] > self.letters[j]).collect()
    }

    /// The composition whose partial sums are the descents plus `m`.
    pub fn descent_composition(&self) -> Composition {
        let m = self.letters.len();
        if m == 0 {
            return Composition::default();
        }
        let mut parts = Vec::new();
        let mut last = 0;
        for d in self.descent_set().into_iter().chain(std::iter::once(m)) {
            parts.push((d - last) as i64);
            last = d;
        }
        Composition::new(parts)
    }

    /// `ρ ∈ H_α(w)`: the descent set lies inside `I(α)`.
    pub fn fits(&self, alpha: &Composition) -> bool {
        if alpha.has_negative_part() || alpha.sum() != self.letters.len() as i64 {
            return false;
        }
        let sums: BTreeSet<i64> = alpha.partial_sums().into_iter().collect();
        self.descent_set().iter().all(|&d| sums.contains(&(d as i64)))
    }

    /// Dot-separated blocks, e.g. `5.345.236.1235`.
    pub fn format_blocks(&self, alpha: &Composition) -> String {
        format_blocks(&self.letters, alpha)
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join_letters(&self.letters))
    }
}

fn join_letters(letters: &[usize]) -> String {
    if letters.iter().all(|&l| l < 10) {
        letters.iter().map(|l| l.to_string()).collect()
    } else {
        letters.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// Splits `letters` into the blocks of `α` and joins them with dots.
pub fn format_blocks(letters: &[usize], alpha: &Composition) -> String {
    let mut out = Vec::new();
    let mut at = 0usize;
    for &p in alpha.parts() {
        let p = p.max(0) as usize;
        let end = (at + p).min(letters.len());
        out.push(join_letters(&letters[at..end]));
        at = end;
    }
    out.join(".")
}

/// Parses `5.345.236.1235` (single-digit letters) or `5.3,4,5.…` into the
/// letters and the block composition.
pub fn parse_blocks(s: &str) -> Result<(Vec<usize>, Composition)> {
    let mut letters = Vec::new();
    let mut parts = Vec::new();
    if s.trim().is_empty() {
        return Ok((letters, Composition::new(parts)));
    }
    for block in s.trim().split('.') {
        let block = block.trim();
        let items: Vec<usize> = if block.contains(',') {
            block.split(',').map(|x| x.trim().parse::<usize>().map_err(|e| Error::Parse(format!("letter {x:?}: {e}")))).collect::<Result<_>>()?
        } else {
            block.chars().map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::Parse(format!("letter {c:?}")))).collect::<Result<_>>()?
        };
        parts.push(items.len() as i64);
        letters.extend(items);
    }
    Ok((letters, Composition::new(parts)))
}

/// `R(w)` by the descent recursion `R(w) = ⋃ R(s_i w)·i` over `i` with
/// `s_i w < w`, sorted lexicographically.
pub fn reduced_words(w: &Permutation) -> Vec<ReducedWord> {
    let mut memo: BTreeMap<Permutation, Vec<Vec<usize>>> = BTreeMap::new();
    let mut words = words_rec(w, &mut memo);
    words.sort();
    words.into_iter().map(|letters| ReducedWord { letters, target: w.clone() }).collect()
}

fn words_rec(w: &Permutation, memo: &mut BTreeMap<Permutation, Vec<Vec<usize>>>) -> Vec<Vec<usize>> {
    if w.is_identity() {
        return vec![Vec::new()];
    }
    if let Some(v) = memo.get(w) {
        return v.clone();
    }
    let inv = w.inverse();
    let mut out = Vec::new();
    for i in 1..w.n() {
        if inv.apply(i) > inv.apply(i + 1) {
            for mut word in words_rec(&w.swap_values(i, i + 1), memo) {
                word.push(i);
                out.push(word);
            }
        }
    }
    memo.insert(w.clone(), out.clone());
    out
}

/// One tableau row: `offset` empty cells followed by `entries`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TableauRow {
    pub offset: usize,
    pub entries: Vec<usize>,
}

/// A skew tableau stored bottom-up.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WordTableau {
    rows: Vec<TableauRow>,
}

impl WordTableau {
    /// Validates row and column strictness.
    pub fn new(rows: Vec<TableauRow>) -> Result<Self> {
        for (j, row) in rows.iter().enumerate() {
            if row.entries.windows(2).any(|p| p[0] >= p[1]) {
                return Err(invalid(format!("row {} is not increasing", j + 1)));
            }
        }
        let t = WordTableau { rows };
        for j in 0..t.rows.len().saturating_sub(1) {
            let lo = &t.rows[j];
            for (c, &x) in lo.entries.iter().enumerate() {
                if let Some(above) = t.entry(j + 1, lo.offset + c) {
                    if above <= x {
                        return Err(invalid(format!("column {} fails strictness between rows {} and {}", lo.offset + c + 1, j + 1, j + 2)));
                    }
                }
            }
        }
        Ok(t)
    }

    pub fn rows(&self) -> &[TableauRow] {
        &self.rows
    }

    /// Entry in row `j` (0-based, bottom-up) at 0-based column `c`.
    pub fn entry(&self, j: usize, c: usize) -> Option<usize> {
        let row = self.rows.get(j)?;
        if c < row.offset {
            return None;
        }
        row.entries.get(c - row.offset).copied()
    }

    /// Reading word: rows from the top down, each left to right.
    pub fn word(&self) -> Vec<usize> {
        self.rows.iter().rev().flat_map(|r| r.entries.iter().copied()).collect()
    }

    /// Row lengths read from the top down, the composition `α` of the word.
    pub fn composition(&self) -> Composition {
        Composition::new(self.rows.iter().rev().map(|r| r.entries.len() as i64).collect())
    }

    /// `(λ, μ)` with `λ_j = μ_j + len_j` and `μ_j` the offset of row `j`.
    pub fn shape(&self) -> (Partition, Partition) {
        let lam = self.rows.iter().map(|r| r.offset + r.entries.len()).collect();
        let mu = self.rows.iter().map(|r| r.offset).collect();
        (Partition::from_unsorted(lam), Partition::from_unsorted(mu))
    }

    /// Straight shape: no row is indented.
    pub fn is_partition_shape(&self) -> bool {
        self.rows.iter().all(|r| r.offset == 0)
    }

    /// The partition shape, if there is one.
    pub fn partition_shape(&self) -> Option<Partition> {
        self.is_partition_shape().then(|| self.shape().0)
    }
}

impl fmt::Display for WordTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.rows.iter().flat_map(|r| r.entries.iter()).map(|e| e.to_string().len()).max().unwrap_or(1);
        for row in self.rows.iter().rev() {
            let mut line = String::new();
            for _ in 0..row.offset {
                line.push_str(&format!("{:>w$} ", ".", w = width));
            }
            for e in &row.entries {
                line.push_str(&format!("{e:>width$} "));
            }
            writeln!(f, "{}", line.trim_end())?;
        }
        Ok(())
    }
}

/// `T(α, ρ)`: the segments of `ρ` cut by `α`, the last segment at the
/// bottom, each lower row pushed as far left as the columns allow.
pub fn word_tableau(alpha: &Composition, rho: &ReducedWord) -> Result<WordTableau> {
    if !rho.fits(alpha) {
        return Err(invalid(format!("{rho} has descents outside I{alpha}")));
    }
    Ok(tableau_from_segments(&segments(rho.letters(), alpha)))
}

fn segments(letters: &[usize], alpha: &Composition) -> Vec<Vec<usize>> {
    let mut at = 0;
    alpha
        .parts()
        .iter()
        .map(|&p| {
            let s = letters[at..at + p as usize].to_vec();
            at += p as usize;
            s
        })
        .collect()
}

/// Segments are given top row first. Offsets are computed from the top
/// down with the minimal admissible indentation at each step.
fn tableau_from_segments(segs: &[Vec<usize>]) -> WordTableau {
    let k = segs.len();
    let mut rows: Vec<TableauRow> = segs.iter().rev().map(|s| TableauRow { offset: 0, entries: s.clone() }).collect();
    for j in (0..k.saturating_sub(1)).rev() {
        let upper = &rows[j + 1].entries;
        let lower = &rows[j].entries;
        let mut d = upper.len().saturating_sub(lower.len());
        while !(0..lower.len()).all(|t| upper.get(t + d).is_none_or(|&a| lower[t] < a)) {
            d += 1;
        }
        rows[j].offset = rows[j + 1].offset + d;
    }
    WordTableau { rows }
}

/// `T(ρ) = T(α, ρ)` for the descent composition of `ρ`.
pub fn word_tableau_of(rho: &ReducedWord) -> WordTableau {
    tableau_from_segments(&segments(rho.letters(), &rho.descent_composition()))
}

/// `a^w_λ`: reduced words whose tableau has partition shape `λ`.
pub fn stanley_coefficient(w: &Permutation, lambda: &Partition) -> u64 {
    reduced_words(w).iter().filter(|rho| word_tableau_of(rho).partition_shape().as_ref() == Some(lambda)).count() as u64
}

/// `F_w = Σ_λ a^w_λ s_λ`.
pub fn stanley_function(w: &Permutation) -> SymFunction {
    let mut f = SymFunction::zero(Basis::Schur);
    for rho in reduced_words(w) {
        if let Some(shape) = word_tableau_of(&rho).partition_shape() {
            f.add_term(shape, 1);
        }
    }
    f
}

/// `#H_α(w)`.
pub fn h_alpha_count(w: &Permutation, alpha: &Composition) -> usize {
    reduced_words(w).iter().filter(|rho| rho.fits(alpha)).count()
}

/// Two rows cut out of a word tableau: `bottom` sits `y` cells to the right,
/// `top` starts in the first column.
#[derive(Clone, Debug, PartialEq, Eq)]
struct TwoRow {
    y: usize,
    bottom: Vec<usize>,
    top: Vec<usize>,
}

impl TwoRow {
    fn from_tableau(t: &WordTableau) -> Result<Self> {
        match t.rows() {
            [b, u] if u.offset == 0 => Ok(TwoRow { y: b.offset, bottom: b.entries.clone(), top: u.entries.clone() }),
            _ => Err(invalid("expected a two-row tableau whose top row is not indented")),
        }
    }

    fn into_tableau(self) -> WordTableau {
        WordTableau { rows: vec![TableauRow { offset: self.y, entries: self.bottom }, TableauRow { offset: 0, entries: self.top }] }
    }

    /// Cells indexed by 1-based column, with one spare column on each side.
    fn grid(&self) -> (Vec<Option<usize>>, Vec<Option<usize>>, usize) {
        let width = (self.y + self.bottom.len()).max(self.top.len()) + 2;
        let mut bot = vec![None; width + 1];
        let mut top = vec![None; width + 1];
        for (t, &x) in self.bottom.iter().enumerate() {
            bot[self.y + 1 + t] = Some(x);
        }
        for (t, &x) in self.top.iter().enumerate() {
            top[1 + t] = Some(x);
        }
        (bot, top, width)
    }

    fn from_grid(bot: &[Option<usize>], top: &[Option<usize>], y: usize) -> Result<Self> {
        let top_cells: Vec<(usize, usize)> = top.iter().enumerate().filter_map(|(c, x)| x.map(|x| (c, x))).collect();
        let bot_cells: Vec<(usize, usize)> = bot.iter().enumerate().filter_map(|(c, x)| x.map(|x| (c, x))).collect();
        let contiguous = |cells: &[(usize, usize)]| cells.windows(2).all(|p| p[1].0 == p[0].0 + 1);
        if !contiguous(&top_cells)
            || !contiguous(&bot_cells)
            || top_cells.first().is_some_and(|c| c.0 != 1)
            || bot_cells.first().is_some_and(|c| c.0 != y + 1)
        {
            return Err(internal("slide left a gap in a row"));
        }
        Ok(TwoRow { y, bottom: bot_cells.iter().map(|c| c.1).collect(), top: top_cells.iter().map(|c| c.1).collect() })
    }
}

/// One inward slide. The empty box starts at `(y, 1)`; in the first row it
/// trades places with the smaller of its right and upper neighbors, with the
/// block move when they agree, and in the second row it moves right until
/// it leaves the diagram.
pub fn inward_slide(t: &WordTableau) -> Result<WordTableau> {
    let two = TwoRow::from_tableau(t)?;
    if two.y == 0 {
        return Err(invalid("inward slide needs an indented bottom row"));
    }
    let (mut bot, mut top, _) = two.grid();
    let mut c = two.y;
    let mut row = 1;
    loop {
        if row == 1 {
            let right = bot[c + 1];
            let up = top[c];
            match (right, up) {
                (None, None) => return Err(internal("box finished an inward slide without changing rows")),
                (Some(r), Some(u)) if r == u => {
                    let a = r;
                    let mut b = 0;
                    while bot[c + 2 + b] == Some(a + b + 1) && top[c + 1 + b] == Some(a + b + 1) {
                        b += 1;
                    }
                    if top[c + b + 1] != Some(a + b + 1) {
                        return Err(internal(format!("block move at column {c}: expected {} above", a + b + 1)));
                    }
                    for s in 0..=b + 1 {
                        bot[c + s] = Some(a + s);
                    }
                    for s in 0..=b {
                        top[c + s] = Some(a + s + 1);
                    }
                    top[c + b + 1] = None;
                    c += b + 1;
                    row = 2;
                }
                (Some(r), u) if u.is_none_or(|u| r < u) => {
                    bot[c] = Some(r);
                    bot[c + 1] = None;
                    c += 1;
                }
                (_, Some(u)) => {
                    bot[c] = Some(u);
                    top[c] = None;
                    row = 2;
                }
                _ => unreachable!(),
            }
        } else {
            match top[c + 1] {
                Some(r) => {
                    top[c] = Some(r);
                    top[c + 1] = None;
                    c += 1;
                }
                None => break,
            }
        }
    }
    Ok(TwoRow::from_grid(&bot, &top, two.y - 1)?.into_tableau())
}

/// One outward slide, the inverse of [`inward_slide`]. The box starts just
/// right of the top row; in the second row it trades places with the larger
/// of its left and lower neighbors, and in the first row it moves left.
pub fn outward_slide(t: &WordTableau) -> Result<WordTableau> {
    let two = TwoRow::from_tableau(t)?;
    if two.y + two.bottom.len() <= two.top.len() {
        return Err(invalid("outward slide needs the bottom row to stick out past the top row"));
    }
    let (mut bot, mut top, _) = two.grid();
    let mut c = two.top.len() + 1;
    let mut row = 2;
    loop {
        if row == 2 {
            let left = if c > 1 { top[c - 1] } else { None };
            let down = bot[c];
            match (left, down) {
                (None, None) => return Err(internal("box finished an outward slide without changing rows")),
                (Some(l), Some(d)) if l == d => {
                    let e = l;
                    let mut b = 0;
                    while c >= b + 3 && e >= b + 2 && top[c - 2 - b] == Some(e - b - 1) && bot[c - 2 - b] == Some(e - b - 2) {
                        b += 1;
                    }
                    if c < b + 2 || e < b + 1 || bot[c - 1 - b] != Some(e - b - 1) {
                        return Err(internal(format!("reverse block move at column {c}: expected {} below", e as i64 - b as i64 - 1)));
                    }
                    let c0 = c - b - 1;
                    let a = e - b - 1;
                    for s in 0..=b + 1 {
                        top[c0 + s] = Some(a + s);
                    }
                    for s in 0..=b {
                        bot[c0 + 1 + s] = Some(a + s);
                    }
                    bot[c0] = None;
                    c = c0;
                    row = 1;
                }
                (Some(l), d) if d.is_none_or(|d| l > d) => {
                    top[c] = Some(l);
                    top[c - 1] = None;
                    c -= 1;
                }
                (_, Some(d)) => {
                    top[c] = Some(d);
                    bot[c] = None;
                    row = 1;
                }
                _ => unreachable!(),
            }
        } else {
            match if c > 1 { bot[c - 1] } else { None } {
                Some(l) => {
                    bot[c] = Some(l);
                    bot[c - 1] = None;
                    c -= 1;
                }
                None => break,
            }
        }
    }
    Ok(TwoRow::from_grid(&bot, &top, two.y + 1)?.into_tableau())
}

/// How many slides [`two_row_bijection`] performs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// `q − p` slides: `H_{(q,p)}(w) → H_{(p,q)}(w)`.
    Full,
    /// `q − p − 1` slides: skew words of `H_{(q,p)}` to `H_{(p+1,q−1)}`.
    OffByOne,
}

/// Applies the slide bijection to `ρ ∈ H_{(q,p)}(w)`. A negative slide count
/// means the inverse direction, carried out with outward slides.
pub fn two_row_bijection(rho: &ReducedWord, q: usize, p: usize, variant: Variant) -> Result<ReducedWord> {
    let alpha = Composition::from_usizes(&[q, p]);
    let t = word_tableau(&alpha, rho)?;
    let steps = match variant {
        Variant::Full => q as i64 - p as i64,
        Variant::OffByOne => q as i64 - p as i64 - 1,
    };
    let mut cur = t;
    for _ in 0..steps.unsigned_abs() {
        cur = if steps > 0 { inward_slide(&cur)? } else { outward_slide(&cur)? };
    }
    let out = ReducedWord::new(cur.word())?;
    if out.target != rho.target {
        return Err(internal(format!("slides changed the permutation of {rho}")));
    }
    Ok(out)
}

/// The outcome of one application of `θ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaStep {
    pub pi: Permutation,
    pub word: ReducedWord,
    pub composition: Composition,
    /// The selected row pair `(r+1, r)`; `None` at a fixed point.
    pub r: Option<usize>,
}

/// The row index `r` picked by the left-justification rule: the violation
/// `(i, r+1)` with `i` minimal and then `r` maximal, where row `r+1` holds
/// `a` in column `i` and row `r` has no entry there or one `≥ a`.
pub fn select_row_left_justified(rows: &[Vec<usize>]) -> Option<usize> {
    let k = rows.len();
    let width = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    for i in 0..width {
        for r in (1..k).rev() {
            let upper = &rows[r];
            let lower = &rows[r - 1];
            if let Some(&a) = upper.get(i) {
                if lower.get(i).is_none_or(|&b| b >= a) {
                    return Some(r);
                }
            }
        }
    }
    None
}

/// The same choice made through the counts `f_{a,b}`: merge the entries of
/// the segments `a` and `a+1` by value (segment `a` first on ties) and
/// record the first prefix where segment `a` is ahead. Over all `a`, take
/// the smallest such count `i`, then the smallest `a`; `r = k − a`.
pub fn select_row_by_counts(rows: &[Vec<usize>]) -> Option<usize> {
    let k = rows.len();
    let mut best: Option<(usize, usize)> = None;
    for a in 1..k {
        let seg_a = &rows[k - a];
        let seg_b = &rows[k - a - 1];
        let mut merged: Vec<(usize, u8)> = seg_a.iter().map(|&x| (x, 0)).chain(seg_b.iter().map(|&x| (x, 1))).collect();
        merged.sort();
        let (mut fa, mut fb) = (0usize, 0usize);
        for (_, which) in merged {
            if which == 0 {
                fa += 1;
            } else {
                fb += 1;
            }
            if fa > fb {
                if best.is_none_or(|(i, _)| fa < i) {
                    best = Some((fa, a));
                }
                break;
            }
        }
    }
    best.map(|(_, a)| k - a)
}

/// `θ(π, ρ)` for `ρ ∈ H_{λ_π}(w)` with `π ∈ S_k`, `k = ℓ(λ)`.
///
/// Fixed exactly when `T(ρ)` has partition shape `λ`. Otherwise rows `r+1`
/// and `r` of the left-justified `T(λ_π, ρ)` go through the off-by-one slide
/// bijection and `π' = π s_{k−r}`, so that `ρ' ∈ H_{λ_{π'}}(w)`.
pub fn theta(pi: &Permutation, rho: &ReducedWord, lambda: &Partition) -> Result<ThetaStep> {
    let k = lambda.len();
    let alpha = lambda_pi(lambda, pi, k)?;
    if alpha.has_negative_part() || !rho.fits(&alpha) {
        return Err(invalid(format!("{rho} is not in H_{alpha}")));
    }
    if word_tableau_of(rho).partition_shape().as_ref() == Some(lambda) {
        return Ok(ThetaStep { pi: pi.clone(), word: rho.clone(), composition: alpha, r: None });
    }
    let segs = segments(rho.letters(), &alpha);
    let rows: Vec<Vec<usize>> = segs.iter().rev().cloned().collect();
    let r = select_row_left_justified(&rows).ok_or_else(|| internal(format!("no violation found for {rho} in H_{alpha}")))?;
    if select_row_by_counts(&rows) != Some(r) {
        return Err(internal(format!("row selectors disagree on {rho}")));
    }
    let upper = &segs[k - r - 1];
    let lower = &segs[k - r];
    let (q, p) = (upper.len(), lower.len());
    let block = ReducedWord::new(upper.iter().chain(lower.iter()).copied().collect())?;
    let moved = two_row_bijection(&block, q, p, Variant::OffByOne)?;
    let mut new_segs = segs.clone();
    new_segs[k - r - 1] = moved.letters()[..p + 1].to_vec();
    new_segs[k - r] = moved.letters()[p + 1..].to_vec();
    let word = ReducedWord::new(new_segs.concat())?;
    let pi2 = pi.compose(&Permutation::simple(k - r));
    let alpha2 = lambda_pi(lambda, &pi2, k)?;
    if !word.fits(&alpha2) {
        return Err(internal(format!("θ image {word} is not in H_{alpha2}")));
    }
    Ok(ThetaStep { pi: pi2, word, composition: alpha2, r: Some(r) })
}

/// Every `(π, ρ)` with `ρ ∈ H_{λ_π}(w)`, in a fixed order.
pub fn theta_domain(w: &Permutation, lambda: &Partition) -> Vec<(i64, Permutation, ReducedWord)> {
    let words = reduced_words(w);
    let mut out = Vec::new();
    for (sign, pi, alpha) in crate::poset::lambda_pi_terms(lambda) {
        for rho in &words {
            if rho.fits(&alpha) {
                out.push((sign, pi.clone(), rho.clone()));
            }
        }
    }
    out
}

/// `Σ_π ε(π) #H_{λ_π}(w)`, the signed count that `θ` cancels down to `a^w_λ`.
pub fn signed_h_sum(w: &Permutation, lambda: &Partition) -> i64 {
    if lambda.size() != w.length() {
        return 0;
    }
    crate::poset::lambda_pi_terms(lambda).into_iter().map(|(sign, _, alpha)| sign * h_alpha_count(w, &alpha) as i64).sum()
}

/// The block-exchange bijection on the adjacent blocks `j, j+1` (1-based) of `α`:
/// maps `H_α(w)` onto `H_{α'}(w)` with those two parts exchanged.
pub fn swap_blocks(rho: &ReducedWord, alpha: &Composition, j: usize) -> Result<(ReducedWord, Composition)> {
    if j == 0 || j >= alpha.len() || !rho.fits(alpha) {
        return Err(invalid(format!("cannot swap blocks {j},{} of {alpha} for {rho}", j + 1)));
    }
    let segs = segments(rho.letters(), alpha);
    let (q, p) = (segs[j - 1].len(), segs[j].len());
    let mut parts = alpha.parts().to_vec();
    parts.swap(j - 1, j);
    let alpha2 = Composition::new(parts);
    if q == p {
        return Ok((rho.clone(), alpha2));
    }
    let block = ReducedWord::new(segs[j - 1].iter().chain(segs[j].iter()).copied().collect())?;
    let moved = two_row_bijection(&block, q, p, Variant::Full)?;
    let mut new_segs = segs.clone();
    new_segs[j - 1] = moved.letters()[..p].to_vec();
    new_segs[j] = moved.letters()[p..].to_vec();
    let word = ReducedWord::new(new_segs.concat())?;
    if !word.fits(&alpha2) {
        return Err(internal(format!("block swap of {rho} left H_{alpha2}")));
    }
    Ok((word, alpha2))
}
