//! Foata–Strehl valley hopping.
//!
//! `H_j` moves a free letter `j` across the adjacent valley(s) to the nearest
//! slope of the same height on the other side, keeping every peak and valley
//! in place. The hops for different letters commute, so a hop class is the
//! orbit of a `Z_2^f` action on the `f` free letters.

use serde::Serialize;

use crate::combinatorics::{classify_positions, sentinel_at, Permutation, Position};
use crate::error::{Error, Result};
use crate::poly::IntPolynomial;

/// Applies `H_j` to `w`. Fails if `j` is a peak, a valley, or not a letter of `w`.
pub fn hop_single(w: &Permutation, j: usize) -> Result<Permutation> {
    let s = w.as_slice();
    let n = s.len();
    let i = w
        .position_of(j)
        .ok_or(Error::IndexOutOfRange { index: j, max: n })?
        - 1;
    let (left, right) = (
        sentinel_at(s, i as isize - 1),
        sentinel_at(s, i as isize + 1),
    );
    let mut out = s.to_vec();
    if left > j && j > right {
        // Downslope: smallest k > i with w(k) < j < w(k+1); k = n always qualifies.
        let k = (i + 1..n)
            .find(|&k| s[k] < j && j < sentinel_at(s, k as isize + 1))
            .expect("the right sentinel closes every downslope");
        out.remove(i);
        out.insert(k, j);
    } else if left < j && j < right {
        // Upslope: largest k < i with w(k-1) > j > w(k); k = 1 always qualifies.
        let k = (0..i)
            .rev()
            .find(|&k| sentinel_at(s, k as isize - 1) > j && j > s[k])
            .expect("the left sentinel closes every upslope");
        out.remove(i);
        out.insert(k, j);
    } else {
        return Err(Error::NotFree(j));
    }
    Ok(Permutation::from_vec_unchecked(out))
}

/// `H_J(w)`: every letter of `J` must be free in `w`.
pub fn hop_set(w: &Permutation, letters: &[usize]) -> Result<Permutation> {
    let class = classify_positions(w);
    let free = class.free_letters();
    if let Some(&bad) = letters.iter().find(|j| !free.contains(j)) {
        return Err(Error::NotFree(bad));
    }
    letters
        .iter()
        .try_fold(w.clone(), |u, &j| hop_single(&u, j))
}

/// The member of `Hop(w)` with every free letter on an upslope.
pub fn canonical_rep(w: &Permutation) -> Permutation {
    let down = classify_positions(w).free_down_letters();
    hop_set(w, &down).expect("downslope letters are free")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HopClass {
    canonical: Permutation,
    /// Lexicographically sorted.
    members: Vec<Permutation>,
}

impl HopClass {
    pub fn canonical(&self) -> &Permutation {
        &self.canonical
    }

    pub fn members(&self) -> &[Permutation] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, u: &Permutation) -> bool {
        self.members.binary_search(u).is_ok()
    }
}

/// Members of `Hop(w)` in toggle order: bit `b` of the index hops the `b`-th
/// free letter (left to right) of the canonical representative.
pub fn hop_class_members(canonical: &Permutation) -> Vec<Permutation> {
    let free = classify_positions(canonical).free_letters();
    (0u64..1 << free.len())
        .map(|mask| {
            let chosen: Vec<usize> = free
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, &j)| j)
                .collect();
            hop_set(canonical, &chosen).expect("free letters stay free under hops")
        })
        .collect()
}

pub fn hop_class(w: &Permutation, bound: crate::parabolic::Bound) -> Result<HopClass> {
    bound.check(w.len())?;
    let canonical = canonical_rep(w);
    let mut members = hop_class_members(&canonical);
    members.sort();
    Ok(HopClass { canonical, members })
}

/// `sum_{u in class} t^des(u)`, checked against `t^pk (1+t)^(n-1-2pk)`.
pub fn class_descent_poly(class: &HopClass) -> Result<IntPolynomial> {
    let mut sum = IntPolynomial::zero();
    for u in &class.members {
        sum.add_term(u.des(), 1)?;
    }
    let n = class.canonical.len();
    if n == 0 {
        return Ok(sum);
    }
    let pk = class.canonical.peak_count();
    let closed =
        IntPolynomial::monomial(pk).checked_mul(&IntPolynomial::one_plus_t_pow(n - 1 - 2 * pk)?)?;
    if sum != closed {
        return Err(Error::Internal(format!(
            "hop class of {} has descent polynomial {sum}, expected {closed}",
            class.canonical
        )));
    }
    Ok(sum)
}

/// True when all free letters are on upslopes, i.e. `w` is a canonical representative.
pub fn is_canonical(w: &Permutation) -> bool {
    !classify_positions(w).labels().contains(&Position::FreeDown)
}
