//! Subsets `K` of `[n-1]`, the standard parabolic subgroup `W_K`, and the
//! permutation families attached to it: the minimal coset representatives
//! `W^K` (with their tilde / hat restrictions) and the set `W(K)`.

use std::fmt;
use std::ops::RangeInclusive;

use serde::{Serialize, Serializer};

use crate::combinatorics::{all_permutations, star, Permutation};
use crate::error::{Error, Result};

/// Largest `n` enumerated by default (10! is about 3.6 million).
pub const DEFAULT_MAX_N: usize = 10;

/// Upper limit on the rank of exhaustive enumerations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bound(pub usize);

impl Default for Bound {
    fn default() -> Self {
        Bound(DEFAULT_MAX_N)
    }
}

impl Bound {
    pub fn check(self, n: usize) -> Result<()> {
        if n > self.0 {
            Err(Error::BoundExceeded { n, bound: self.0 })
        } else {
            Ok(())
        }
    }
}

/// Which slice of a permutation family to keep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Filter {
    All,
    /// No double descent, no initial descent.
    Tilde,
    /// No double descent, no final descent.
    Hat,
}

impl Filter {
    pub fn accepts_descents(self, des: &[usize], n: usize) -> bool {
        let flags = crate::combinatorics::DescentFlags::from_set(des, n);
        match self {
            Filter::All => true,
            Filter::Tilde => flags.is_tilde(),
            Filter::Hat => flags.is_hat(),
        }
    }

    pub fn accepts(self, w: &Permutation) -> bool {
        self.accepts_descents(&w.descent_set(), w.len())
    }
}

impl std::str::FromStr for Filter {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Filter::All),
            "tilde" => Ok(Filter::Tilde),
            "hat" => Ok(Filter::Hat),
            other => Err(Error::Parse(format!("unknown filter {other:?}"))),
        }
    }
}

/// A subset of `[n-1]` together with its ambient rank `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KSubset {
    n: usize,
    members: Vec<usize>,
}

impl KSubset {
    pub fn new(n: usize, mut members: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroRank);
        }
        members.sort_unstable();
        members.dedup();
        if let Some(&bad) = members.iter().find(|&&k| k == 0 || k >= n) {
            return Err(Error::InvalidSubset {
                member: bad,
                max: n - 1,
            });
        }
        Ok(KSubset { n, members })
    }

    pub fn empty(n: usize) -> Result<Self> {
        KSubset::new(n, Vec::new())
    }

    /// `K = [n-1]`.
    pub fn full(n: usize) -> Result<Self> {
        KSubset::new(n, (1..n).collect())
    }

    /// Parses the comma-separated form; the empty string is the empty set.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let members = text
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad subset member {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        KSubset::new(n, members)
    }

    /// Every subset of `[n-1]`, ordered by the bitmask `sum 2^(k-1)`.
    pub fn all(n: usize) -> Result<Vec<KSubset>> {
        if n == 0 {
            return Err(Error::ZeroRank);
        }
        let m = n - 1;
        Ok((0u64..1 << m)
            .map(|mask| KSubset {
                n,
                members: (1..=m).filter(|k| mask >> (k - 1) & 1 == 1).collect(),
            })
            .collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, k: usize) -> bool {
        self.members.binary_search(&k).is_ok()
    }

    /// Maximal runs `[a_i, b_i]` of consecutive members.
    pub fn intervals(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &k in &self.members {
            match out.last_mut() {
                Some((_, b)) if *b + 1 == k => *b = k,
                _ => out.push((k, k)),
            }
        }
        out
    }

    pub(crate) fn check_rank(&self, w: &Permutation) -> Result<()> {
        if w.len() != self.n {
            Err(Error::RankMismatch {
                perm: w.len(),
                subset: self.n,
            })
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for KSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, k) in self.members.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}")?;
        }
        Ok(())
    }
}

impl Serialize for KSubset {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A sequence of positive integers with a fixed sum.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidComposition(parts));
        }
        Ok(Composition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// All compositions of `n`, in lexicographic order of their parts.
    pub fn all_of(n: usize) -> Vec<Composition> {
        fn rec(rest: usize, cur: &mut Vec<usize>, out: &mut Vec<Composition>) {
            if rest == 0 {
                out.push(Composition { parts: cur.clone() });
                return;
            }
            for p in 1..=rest {
                cur.push(p);
                rec(rest - p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, &mut Vec::new(), &mut out);
        out
    }
}

/// `W_K`-orbits on `[n]`, left to right.
pub fn orbits(k: &KSubset) -> Vec<RangeInclusive<usize>> {
    let mut out = Vec::new();
    let mut start = 1;
    for i in 1..=k.n {
        if i == k.n || !k.contains(i) {
            out.push(start..=i);
            start = i + 1;
        }
    }
    out
}

/// `mu(K)`: the orbit sizes in left-to-right order.
pub fn composition_mu(k: &KSubset) -> Composition {
    Composition {
        parts: orbits(k).into_iter().map(|o| o.count()).collect(),
    }
}

/// The subset whose orbits have the given sizes (inverse of `composition_mu`).
pub fn subset_from_composition(mu: &Composition) -> Result<KSubset> {
    let n = mu.size();
    let mut members = Vec::new();
    let mut start = 1;
    for &part in mu.parts() {
        members.extend(start..start + part - 1);
        start += part;
    }
    KSubset::new(n, members)
}

fn in_w_upper_k_unchecked(pos: &[usize], k: &KSubset) -> bool {
    k.members.iter().all(|&i| pos[i] < pos[i + 1])
}

fn in_w_of_k_unchecked(pos: &[usize], k: &KSubset) -> bool {
    k.members
        .iter()
        .all(|&i| pos[i] < pos[i + 1] || pos[i + 1] + 1 == pos[i])
}

/// `w` is the minimal-length representative of its left `W_K`-coset:
/// each run `a_i, .., b_i + 1` appears left to right in `w`.
pub fn is_min_rep(w: &Permutation, k: &KSubset) -> Result<bool> {
    k.check_rank(w)?;
    Ok(in_w_upper_k_unchecked(&w.positions(), k))
}

/// Every `k in K` has `k` before `k+1`, or `k+1` immediately before `k`.
pub fn is_in_w_of_k(w: &Permutation, k: &KSubset) -> Result<bool> {
    k.check_rank(w)?;
    Ok(in_w_of_k_unchecked(&w.positions(), k))
}

/// `W^K`, optionally restricted to its tilde or hat part, sorted lexicographically.
pub fn enumerate_w_upper_k(k: &KSubset, filter: Filter, bound: Bound) -> Result<Vec<Permutation>> {
    bound.check(k.n)?;
    Ok(all_permutations(k.n)
        .filter(|w| in_w_upper_k_unchecked(&w.positions(), k) && filter.accepts(w))
        .collect())
}

/// `W(K)`, sorted lexicographically.
pub fn enumerate_w_of_k(k: &KSubset, bound: Bound) -> Result<Vec<Permutation>> {
    bound.check(k.n)?;
    Ok(all_permutations(k.n)
        .filter(|w| in_w_of_k_unchecked(&w.positions(), k))
        .collect())
}

/// `K* = { n - k : k in K }`.
pub fn k_star(k: &KSubset) -> KSubset {
    let mut members: Vec<usize> = k.members.iter().map(|&i| k.n - i).collect();
    members.sort_unstable();
    KSubset { n: k.n, members }
}

/// Image of a permutation family under `w -> w*`, re-sorted.
pub fn star_all(ws: &[Permutation]) -> Vec<Permutation> {
    let mut out: Vec<_> = ws.iter().map(star).collect();
    out.sort();
    out
}
