//! Partitions, Young tableaux, RSK row insertion, evacuation, Kostka numbers,
//! the standardization map `phi`, and the Kostka-weighted gamma vector.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{Arrangements, DescentFlags, Permutation, Word};
use crate::error::{Error, Result};
use crate::parabolic::{composition_mu, Bound, Composition, Filter, KSubset};
use crate::poly::GammaVector;

/// A weakly decreasing sequence of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(parts));
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// The partition with the same multiset of parts as `c`.
    pub fn sorted_from(c: &Composition) -> Partition {
        let mut parts = c.parts().to_vec();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// Column lengths.
    pub fn conjugate(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0);
        Partition {
            parts: (0..width)
                .map(|c| self.parts.iter().filter(|&&r| r > c).count())
                .collect(),
        }
    }

    /// All partitions of `n` in reverse lexicographic order, `(n)` first.
    pub fn all_of(n: usize) -> Vec<Partition> {
        fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                rec(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl std::str::FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(str::trim)
            .filter(|x| !x.is_empty())
            .map(|x| {
                x.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad part {x:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// A filling of a Young diagram, stored as rows (top row first).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<usize>>", into = "Vec<Vec<usize>>")]
pub struct YoungTableau {
    rows: Vec<Vec<usize>>,
}

impl TryFrom<Vec<Vec<usize>>> for YoungTableau {
    type Error = Error;
    fn try_from(rows: Vec<Vec<usize>>) -> Result<Self> {
        YoungTableau::new(rows)
    }
}

impl From<YoungTableau> for Vec<Vec<usize>> {
    fn from(t: YoungTableau) -> Self {
        t.rows
    }
}

impl YoungTableau {
    /// Checks only the diagram shape and positivity of entries.
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        if rows.iter().any(Vec::is_empty)
            || rows.windows(2).any(|w| w[0].len() < w[1].len())
            || rows.iter().flatten().any(|&x| x == 0)
        {
            return Err(Error::InvalidShape);
        }
        Ok(YoungTableau { rows })
    }

    pub fn empty() -> Self {
        YoungTableau { rows: Vec::new() }
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn shape(&self) -> Partition {
        Partition {
            parts: self.rows.iter().map(Vec::len).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_semistandard(&self) -> bool {
        let rows_ok = self.rows.iter().all(|r| r.windows(2).all(|w| w[0] <= w[1]));
        let cols_ok = self
            .rows
            .windows(2)
            .all(|w| w[1].iter().zip(&w[0]).all(|(below, above)| below > above));
        rows_ok && cols_ok
    }

    pub fn is_standard(&self) -> bool {
        let mut entries: Vec<usize> = self.rows.iter().flatten().copied().collect();
        entries.sort_unstable();
        self.is_semistandard() && entries.iter().enumerate().all(|(i, &x)| x == i + 1)
    }

    /// `c_i` = number of boxes holding `i`, for `i = 1 ..= max entry`.
    pub fn content(&self) -> Vec<usize> {
        let max = self.rows.iter().flatten().copied().max().unwrap_or(0);
        let mut c = vec![0; max];
        for &x in self.rows.iter().flatten() {
            c[x - 1] += 1;
        }
        c
    }

    /// Rows read top to bottom, left to right.
    pub fn reading_word(&self) -> Vec<usize> {
        self.rows.iter().flatten().copied().collect()
    }

    fn row_index_of_entries(&self) -> Vec<usize> {
        let mut row_of = vec![0; self.size() + 1];
        for (r, row) in self.rows.iter().enumerate() {
            for &x in row {
                row_of[x] = r;
            }
        }
        row_of
    }

    fn ensure_standard(&self) -> Result<()> {
        if self.is_standard() {
            Ok(())
        } else {
            Err(Error::NotStandard)
        }
    }
}

/// Inserts `x` by row bumping; returns the row where the insertion ended.
fn row_insert(rows: &mut Vec<Vec<usize>>, mut x: usize) -> usize {
    for (r, row) in rows.iter_mut().enumerate() {
        match row.iter().position(|&y| y > x) {
            Some(i) => x = std::mem::replace(&mut row[i], x),
            None => {
                row.push(x);
                return r;
            }
        }
    }
    rows.push(vec![x]);
    rows.len() - 1
}

/// RSK: insertion tableau `P` (semistandard) and recording tableau `Q` (standard).
pub fn rsk(v: &Word) -> (YoungTableau, YoungTableau) {
    let mut p: Vec<Vec<usize>> = Vec::new();
    let mut q: Vec<Vec<usize>> = Vec::new();
    for (step, &x) in v.letters().iter().enumerate() {
        let r = row_insert(&mut p, x);
        if r == q.len() {
            q.push(Vec::new());
        }
        q[r].push(step + 1);
    }
    (YoungTableau { rows: p }, YoungTableau { rows: q })
}

/// Reverse row insertion, removing `Q`'s entries from largest to smallest.
pub fn rsk_inverse(p: &YoungTableau, q: &YoungTableau) -> Result<Word> {
    if !p.is_semistandard() {
        return Err(Error::NotSemistandard);
    }
    q.ensure_standard()?;
    if p.shape() != q.shape() {
        return Err(Error::ShapeMismatch);
    }
    let n = q.size();
    let row_of = q.row_index_of_entries();
    let mut rows = p.rows.clone();
    let mut letters = vec![0; n];
    for label in (1..=n).rev() {
        let r = row_of[label];
        let mut x = rows[r].pop().expect("Q and P share a shape");
        if rows[r].is_empty() {
            rows.pop();
        }
        for row in rows[..r].iter_mut().rev() {
            let i = row
                .iter()
                .rposition(|&y| y < x)
                .expect("column strictness guarantees a smaller entry above");
            x = std::mem::replace(&mut row[i], x);
        }
        letters[label - 1] = x;
    }
    Word::new(letters)
}

/// `i` is a descent when `i` sits in a strictly higher row than `i + 1`.
pub fn tableau_descent_set(q: &YoungTableau) -> Result<Vec<usize>> {
    q.ensure_standard()?;
    let row_of = q.row_index_of_entries();
    Ok((1..q.size())
        .filter(|&i| row_of[i] < row_of[i + 1])
        .collect())
}

/// Schützenberger evacuation by repeated jeu de taquin: delete the entry in
/// the corner, slide the hole out, and label the vacated outer cell
/// `n, n-1, .., 1` in turn.
pub fn evacuation(q: &YoungTableau) -> Result<YoungTableau> {
    q.ensure_standard()?;
    let n = q.size();
    let mut cells: Vec<Vec<Option<usize>>> = q
        .rows
        .iter()
        .map(|r| r.iter().map(|&x| Some(x)).collect())
        .collect();
    let mut out: Vec<Vec<usize>> = q.rows.iter().map(|r| vec![0; r.len()]).collect();
    for label in (1..=n).rev() {
        let (mut r, mut c) = (0usize, 0usize);
        loop {
            let right = cells[r].get(c + 1).copied().flatten();
            let below = cells
                .get(r + 1)
                .and_then(|row| row.get(c))
                .copied()
                .flatten();
            let (nr, nc) = match (right, below) {
                (None, None) => break,
                (Some(_), None) => (r, c + 1),
                (None, Some(_)) => (r + 1, c),
                (Some(a), Some(b)) => {
                    if a < b {
                        (r, c + 1)
                    } else {
                        (r + 1, c)
                    }
                }
            };
            cells[r][c] = cells[nr][nc];
            r = nr;
            c = nc;
        }
        cells[r][c] = None;
        out[r][c] = label;
        // Remove the now-empty outer cell from the live diagram.
        cells[r].truncate(c);
        while cells.last().is_some_and(Vec::is_empty) {
            cells.pop();
        }
    }
    Ok(YoungTableau { rows: out })
}

/// All standard tableaux of `shape`, optionally filtered by their descent set,
/// sorted by reading word.
pub fn enumerate_syt(shape: &Partition, filter: Filter, bound: Bound) -> Result<Vec<YoungTableau>> {
    let n = shape.size();
    bound.check(n)?;
    fn rec(
        shape: &[usize],
        rows: &mut Vec<Vec<usize>>,
        next: usize,
        n: usize,
        out: &mut Vec<YoungTableau>,
    ) {
        if next > n {
            out.push(YoungTableau { rows: rows.clone() });
            return;
        }
        for r in 0..shape.len() {
            let len = rows[r].len();
            let fits = len < shape[r] && (r == 0 || rows[r - 1].len() > len);
            if fits {
                rows[r].push(next);
                rec(shape, rows, next + 1, n, out);
                rows[r].pop();
            }
        }
    }
    let mut out = Vec::new();
    let mut rows = vec![Vec::new(); shape.parts.len()];
    rec(&shape.parts, &mut rows, 1, n, &mut out);
    out.retain(|t| {
        let des = tableau_descent_set(t).expect("generated tableaux are standard");
        filter.accepts_descents(&des, n)
    });
    out.sort_by_key(YoungTableau::reading_word);
    Ok(out)
}

/// All standard tableaux with `n` boxes passing `filter`.
pub fn enumerate_all_syt(n: usize, filter: Filter, bound: Bound) -> Result<Vec<YoungTableau>> {
    bound.check(n)?;
    let mut out = Vec::new();
    for shape in Partition::all_of(n) {
        out.extend(enumerate_syt(&shape, filter, bound)?);
    }
    Ok(out)
}

/// Number of standard tableaux of `shape` by the hook length formula.
pub fn dim_irreducible(shape: &Partition, bound: Bound) -> Result<u64> {
    let n = shape.size();
    bound.check(n)?;
    let cols = shape.conjugate();
    let mut num: u128 = (1..=n as u128).product();
    let mut hooks: u128 = 1;
    for (r, &len) in shape.parts.iter().enumerate() {
        for c in 0..len {
            let hook = (len - c - 1) + (cols.parts[c] - r - 1) + 1;
            hooks = hooks.checked_mul(hook as u128).ok_or(Error::Overflow)?;
        }
    }
    if !num.is_multiple_of(hooks) {
        return Err(Error::Internal("hook product does not divide n!".into()));
    }
    num /= hooks;
    u64::try_from(num).map_err(|_| Error::Overflow)
}

/// Semistandard tableaux of `shape` with the given content, filled cell by
/// cell in row-major order with row/column pruning. The output is therefore
/// sorted by reading word.
pub fn enumerate_ssyt(shape: &Partition, content: &[usize]) -> Result<Vec<YoungTableau>> {
    let total: usize = content.iter().sum();
    if total != shape.size() {
        return Err(Error::SizeMismatch {
            left: shape.size(),
            right: total,
        });
    }
    let cells: Vec<(usize, usize)> = shape
        .parts
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
        .collect();
    let mut rows: Vec<Vec<usize>> = shape.parts.iter().map(|&l| vec![0; l]).collect();
    let mut remaining = content.to_vec();
    let mut out = Vec::new();

    fn rec(
        idx: usize,
        cells: &[(usize, usize)],
        rows: &mut Vec<Vec<usize>>,
        remaining: &mut [usize],
        out: &mut Vec<YoungTableau>,
    ) {
        let Some(&(r, c)) = cells.get(idx) else {
            out.push(YoungTableau { rows: rows.clone() });
            return;
        };
        let lo_row = if c > 0 { rows[r][c - 1] } else { 1 };
        let lo_col = if r > 0 { rows[r - 1][c] + 1 } else { 1 };
        let lo = lo_row.max(lo_col);
        for v in lo..=remaining.len() {
            if remaining[v - 1] == 0 {
                continue;
            }
            remaining[v - 1] -= 1;
            rows[r][c] = v;
            rec(idx + 1, cells, rows, remaining, out);
            remaining[v - 1] += 1;
        }
        rows[r][c] = 0;
    }

    rec(0, &cells, &mut rows, &mut remaining, &mut out);
    Ok(out)
}

/// Kostka number `K_{shape, mu}`.
pub fn kostka(shape: &Partition, mu: &Composition) -> Result<u64> {
    Ok(enumerate_ssyt(shape, mu.parts())?.len() as u64)
}

/// Standardization of a word with content `mu(K)`: the `k`-th occurrence
/// (left to right) of letter `i` becomes `k + mu_1 + .. + mu_{i-1}`.
pub fn phi(v: &Word, k: &KSubset) -> Result<Permutation> {
    let mu = composition_mu(k);
    if v.len() != k.n() {
        return Err(Error::SizeMismatch {
            left: v.len(),
            right: k.n(),
        });
    }
    let m = mu.parts().len();
    if v.letters().iter().any(|&x| x > m) || v.multiplicities() != mu.parts() {
        return Err(Error::ContentMismatch);
    }
    if !v.descent_flags().is_hat() {
        return Err(Error::DescentCondition);
    }
    let mut next: Vec<usize> = std::iter::once(1)
        .chain(mu.parts().iter().scan(1, |acc, &p| {
            *acc += p;
            Some(*acc)
        }))
        .take(m)
        .collect();
    let image = v
        .letters()
        .iter()
        .map(|&x| {
            let value = next[x - 1];
            next[x - 1] += 1;
            value
        })
        .collect();
    Ok(Permutation::from_vec_unchecked(image))
}

/// Words of length `n` over `[m]` with content `mu(K)`, no double descent and
/// no final descent, in lexicographic order.
pub fn enumerate_hat_words(k: &KSubset, bound: Bound) -> Result<Vec<Word>> {
    bound.check(k.n())?;
    let mu = composition_mu(k);
    let base: Vec<usize> = mu
        .parts()
        .iter()
        .enumerate()
        .flat_map(|(i, &c)| std::iter::repeat_n(i + 1, c))
        .collect();
    Ok(Arrangements::new(base)
        .filter(|w| DescentFlags::from_set(&crate::combinatorics::descent_set(w), w.len()).is_hat())
        .map(|w| Word::new(w).expect("letters are positive"))
        .collect())
}

/// Which standard tableaux index the Kostka-weighted gamma sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TableauVariant {
    Hat,
    Tilde,
}

/// `gamma_j = sum over Q in hat-SYT_n (or tilde-SYT_n) with des(Q) = j of
/// K_{shape(Q), mu(K)}`.
pub fn rep_gamma(k: &KSubset, variant: TableauVariant, bound: Bound) -> Result<GammaVector> {
    let n = k.n();
    bound.check(n)?;
    let d = n - 1;
    let mu = composition_mu(k);
    let filter = match variant {
        TableauVariant::Hat => Filter::Hat,
        TableauVariant::Tilde => Filter::Tilde,
    };
    let mut entries = vec![0i64; d / 2 + 1];
    let mut kostka_cache: BTreeMap<Partition, u64> = BTreeMap::new();
    for shape in Partition::all_of(n) {
        let weight = match kostka_cache.get(&shape) {
            Some(&w) => w,
            None => {
                let w = kostka(&shape, &mu)?;
                kostka_cache.insert(shape.clone(), w);
                w
            }
        };
        if weight == 0 {
            continue;
        }
        for q in enumerate_syt(&shape, filter, bound)? {
            let j = tableau_descent_set(&q)?.len();
            let slot = entries.get_mut(j).ok_or_else(|| {
                Error::Internal(format!("tableau with {j} descents exceeds floor(d/2)"))
            })?;
            *slot = slot.checked_add(weight as i64).ok_or(Error::Overflow)?;
        }
    }
    GammaVector::new(entries, d)
}

/// Descent count of a standard tableau.
pub fn tableau_des(q: &YoungTableau) -> Result<usize> {
    Ok(tableau_descent_set(q)?.len())
}
