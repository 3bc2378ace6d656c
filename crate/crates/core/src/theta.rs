//! The descent-preserving bijection
//!
//! ```text
//! Theta : { (w, u) : w in tilde-W^K, u in Hop(w) }  ->  W(K),   (w, u) |-> J_K(u)
//! ```
//!
//! `J_k` pushes `k+1` rightwards until it sits immediately left of `k`, unless
//! `k` already precedes `k+1` or `k+1` already sits immediately left of `k`.
//! `J_K` applies `J_k` for `k in K` in increasing order.
//!
//! The inverse `L_K` reads off the peak strings `(p; p-1, .., k)` of `v` (a
//! peak followed by the consecutive letters below it, all drawn from `K`) and
//! lifts each string back, from the largest `k` down: the peak and its upper
//! tail move left to just after the nearest taller letter, while `k` stays
//! where the string ended.

use serde::Serialize;

use crate::combinatorics::{classify_positions, Permutation, Position};
use crate::error::{Error, Result};
use crate::hopping::{canonical_rep, is_canonical};
use crate::parabolic::{is_in_w_of_k, is_min_rep, KSubset};

/// `J_k(u)` for `k` in `[n-1]`.
pub fn j_single(u: &Permutation, k: usize) -> Result<Permutation> {
    let n = u.len();
    if k == 0 || k >= n {
        return Err(Error::IndexOutOfRange {
            index: k,
            max: n.saturating_sub(1),
        });
    }
    Ok(j_step(u, k).unwrap_or_else(|| u.clone()))
}

/// `Some(J_k(u))` when `J_k` moves something, `None` when it fixes `u`.
fn j_step(u: &Permutation, k: usize) -> Option<Permutation> {
    let s = u.as_slice();
    let pk = s.iter().position(|&x| x == k).unwrap();
    let pk1 = s.iter().position(|&x| x == k + 1).unwrap();
    if pk < pk1 || pk1 + 1 == pk {
        return None;
    }
    let mut out = s.to_vec();
    out.remove(pk1);
    // k shifted one slot left; place k+1 right before it.
    out.insert(pk - 1, k + 1);
    Some(Permutation::from_vec_unchecked(out))
}

/// `J_K(u)`.
pub fn j_full(u: &Permutation, k: &KSubset) -> Result<Permutation> {
    k.check_rank(u)?;
    Ok(k.members()
        .iter()
        .fold(u.clone(), |acc, &i| j_step(&acc, i).unwrap_or(acc)))
}

/// A run `[start, start + len - 1]` of indices in `K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Interval {
    pub start: usize,
    pub len: usize,
}

impl Interval {
    pub fn end(&self) -> usize {
        self.start + self.len - 1
    }
}

/// `J_K(u) = J_{K_m} .. J_{K_1}(u)` where every `J_k` inside every `K_j`
/// acts nontrivially, and `K_j` are separated by gaps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EffectiveExpression {
    pub intervals: Vec<Interval>,
}

impl EffectiveExpression {
    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Runs the grouped interval operators on `u` in order.
    pub fn apply(&self, u: &Permutation) -> Permutation {
        self.intervals.iter().fold(u.clone(), |acc, iv| {
            (iv.start..=iv.end()).fold(acc, |a, i| j_step(&a, i).unwrap_or(a))
        })
    }

    /// `u_1 = u, u_{j+1} = J_{K_j}(u_j)`; the last entry is `J_K(u)`.
    pub fn intermediates(&self, u: &Permutation) -> Vec<Permutation> {
        let mut out = vec![u.clone()];
        for iv in &self.intervals {
            let cur = out.last().unwrap();
            let next = (iv.start..=iv.end()).fold(cur.clone(), |a, i| j_step(&a, i).unwrap_or(a));
            out.push(next);
        }
        out
    }
}

/// Records the `k in K` at which `J_k` acted during the increasing sweep and
/// groups them into maximal runs of consecutive integers.
pub fn effective_expression(u: &Permutation, k: &KSubset) -> Result<EffectiveExpression> {
    k.check_rank(u)?;
    let mut acted = Vec::new();
    let mut cur = u.clone();
    for &i in k.members() {
        if let Some(next) = j_step(&cur, i) {
            acted.push(i);
            cur = next;
        }
    }
    let mut intervals: Vec<Interval> = Vec::new();
    for i in acted {
        match intervals.last_mut() {
            Some(iv) if iv.end() + 1 == i => iv.len += 1,
            _ => intervals.push(Interval { start: i, len: 1 }),
        }
    }
    let expr = EffectiveExpression { intervals };
    if expr.apply(u) != cur {
        return Err(Error::Internal(format!(
            "effective expression of {u} does not reproduce J_K(u) = {cur}"
        )));
    }
    Ok(expr)
}

/// Whenever `k_j - 1` immediately follows `k_j` in `J_K(u)`, `k_j - 1` is not in `K`.
/// Holds on the domain of `Theta`; not for arbitrary `u`.
pub fn lowest_letters_respect_k(expr: &EffectiveExpression, v: &Permutation, k: &KSubset) -> bool {
    let pos = v.positions();
    expr.intervals.iter().all(|iv| {
        let low = iv.start;
        !(low >= 2 && pos[low - 1] == pos[low] + 1 && k.contains(low - 1))
    })
}

/// A peak `p` of `v` followed immediately by `p-1, .., p-len`, with `p-len .. p-1` in `K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PeakString {
    pub peak: usize,
    /// Number of letters after the peak (`len >= 1`).
    pub len: usize,
    /// 1-based position of the peak in `v`.
    pub position: usize,
}

impl PeakString {
    /// The bottom letter `k = peak - len`.
    pub fn lowest(&self) -> usize {
        self.peak - self.len
    }

    /// Letters after the peak, from `peak - 1` down to `lowest()`.
    pub fn tail(&self) -> Vec<usize> {
        (self.lowest()..self.peak).rev().collect()
    }
}

fn ensure_in_w_of_k(v: &Permutation, k: &KSubset) -> Result<()> {
    if is_in_w_of_k(v, k)? {
        Ok(())
    } else {
        Err(Error::NotInWofK)
    }
}

/// Peak strings of `v`, extended greedily as far as possible, ordered by
/// increasing bottom letter.
pub fn extract_strings(v: &Permutation, k: &KSubset) -> Result<Vec<PeakString>> {
    ensure_in_w_of_k(v, k)?;
    let s = v.as_slice();
    let class = classify_positions(v);
    let mut out = Vec::new();
    for c in 0..s.len() {
        if class.labels()[c] != Position::Peak {
            continue;
        }
        let p = s[c];
        let mut len = 0;
        while c + len + 1 < s.len()
            && p > len + 1
            && s[c + len + 1] == p - len - 1
            && k.contains(p - len - 1)
        {
            len += 1;
        }
        if len == 0 {
            continue;
        }
        let string = PeakString {
            peak: p,
            len,
            position: c + 1,
        };
        let low = string.lowest();
        let next = s.get(c + len + 1).copied();
        if low >= 2 && next == Some(low - 1) && k.contains(low - 1) {
            return Err(Error::Internal(format!(
                "string ({p}; ..,{low}) is followed by {} which lies in K",
                low - 1
            )));
        }
        out.push(string);
    }
    out.sort_by_key(PeakString::lowest);
    Ok(out)
}

/// One lifting step: returns `v_j` from `v_{j+1}`.
fn lift_string(cur: &[usize], string: &PeakString) -> Vec<usize> {
    let peak = string.peak;
    let c = cur.iter().position(|&x| x == peak).unwrap();
    // a = number of letters up to and including the last one taller than the peak.
    let a = cur[..c]
        .iter()
        .rposition(|&x| x > peak)
        .map_or(0, |i| i + 1);
    let mut out = Vec::with_capacity(cur.len());
    out.extend_from_slice(&cur[..a]);
    out.extend((string.lowest() + 1..=peak).rev());
    out.extend_from_slice(&cur[a..c]);
    out.push(string.lowest());
    out.extend_from_slice(&cur[c + string.len + 1..]);
    out
}

/// `v = v_{m+1}, v_m, .., v_1 = L_K(v)`.
pub fn l_full_steps(v: &Permutation, k: &KSubset) -> Result<Vec<Permutation>> {
    let strings = extract_strings(v, k)?;
    let mut steps = vec![v.clone()];
    for string in strings.iter().rev() {
        let next = lift_string(steps.last().unwrap().as_slice(), string);
        steps.push(Permutation::from_vec_unchecked(next));
    }
    Ok(steps)
}

/// `L_K(v)`.
pub fn l_full(v: &Permutation, k: &KSubset) -> Result<Permutation> {
    Ok(l_full_steps(v, k)?.pop().unwrap())
}

fn in_theta_domain(w: &Permutation, u: &Permutation, k: &KSubset) -> Result<()> {
    k.check_rank(w)?;
    k.check_rank(u)?;
    if !is_min_rep(w, k)? || !w.is_tilde() {
        return Err(Error::ThetaDomain(format!("{w} is not in tilde-W^K")));
    }
    if canonical_rep(u) != *w {
        return Err(Error::ThetaDomain(format!("{u} is not in Hop({w})")));
    }
    Ok(())
}

/// `Theta(w, u) = J_K(u)`; checks `w in tilde-W^K`, `u in Hop(w)`, and
/// `des(J_K(u)) = des(u)`.
pub fn theta(w: &Permutation, u: &Permutation, k: &KSubset) -> Result<Permutation> {
    in_theta_domain(w, u, k)?;
    let v = j_full(u, k)?;
    if v.des() != u.des() {
        return Err(Error::Internal(format!(
            "J_K changed the descent count: {u} -> {v}"
        )));
    }
    Ok(v)
}

/// `v -> (w, L_K(v))` with `w` the canonical representative of `Hop(L_K(v))`.
pub fn theta_inverse(v: &Permutation, k: &KSubset) -> Result<(Permutation, Permutation)> {
    let u = l_full(v, k)?;
    let w = canonical_rep(&u);
    debug_assert!(is_canonical(&w));
    Ok((w, u))
}

/// Every intermediate of both directions of `Theta`, for debugging.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThetaTrace {
    pub k: KSubset,
    pub v: Permutation,
    pub strings: Vec<PeakString>,
    /// `v_{m+1} = v, .., v_1 = L_K(v)`.
    pub lift_steps: Vec<Permutation>,
    pub u: Permutation,
    pub w: Permutation,
    pub effective_expression: EffectiveExpression,
    /// `u_1 = u, .., u_{m+1} = J_K(u)`.
    pub push_steps: Vec<Permutation>,
    pub roundtrip: bool,
    pub des_preserved: bool,
}

pub fn trace(v: &Permutation, k: &KSubset) -> Result<ThetaTrace> {
    let strings = extract_strings(v, k)?;
    let lift_steps = l_full_steps(v, k)?;
    let u = lift_steps.last().unwrap().clone();
    let w = canonical_rep(&u);
    let expr = effective_expression(&u, k)?;
    let push_steps = expr.intermediates(&u);
    let image = push_steps.last().unwrap();
    Ok(ThetaTrace {
        k: k.clone(),
        v: v.clone(),
        strings,
        roundtrip: image == v,
        des_preserved: image.des() == u.des(),
        lift_steps,
        u,
        w,
        effective_expression: expr,
        push_steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopping::hop_class;
    use crate::parabolic::Bound;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn ks(n: usize, m: &[usize]) -> KSubset {
        KSubset::new(n, m.to_vec()).unwrap()
    }

    #[test]
    fn j_single_examples() {
        assert_eq!(j_single(&p("312"), 2).unwrap(), p("132"));
        assert_eq!(j_single(&p("123"), 1).unwrap(), p("123"));
        assert_eq!(j_single(&p("321"), 1).unwrap(), p("321"));
        assert_eq!(j_single(&p("321"), 2).unwrap(), p("321"));
        assert!(j_single(&p("321"), 3).is_err());
        assert!(j_single(&p("321"), 0).is_err());
        // k+1 far to the left of k travels right.
        assert_eq!(j_single(&p("41253"), 3).unwrap(), p("12543"));
    }

    #[test]
    fn j_full_examples() {
        let k = ks(9, &[2, 3, 4, 6, 7, 8]);
        assert_eq!(j_full(&p("967284135"), &k).unwrap(), p("672981435"));
        assert_eq!(
            j_full(&p("967284135"), &ks(9, &[])).unwrap(),
            p("967284135")
        );
        let k = ks(3, &[1, 2]);
        let images: Vec<_> = ["123", "213", "312", "321"]
            .iter()
            .map(|s| j_full(&p(s), &k).unwrap())
            .collect();
        assert_eq!(images, vec![p("123"), p("213"), p("132"), p("321")]);
        assert!(j_full(&p("12"), &k).is_err());
    }

    #[test]
    fn effective_expression_examples() {
        let k = ks(9, &[2, 3, 4, 6, 7, 8]);
        let e = effective_expression(&p("967284135"), &k).unwrap();
        assert_eq!(
            e.intervals,
            vec![Interval { start: 3, len: 1 }, Interval { start: 8, len: 1 }]
        );
        assert!(effective_expression(&p("123456789"), &k)
            .unwrap()
            .is_empty());
        let e = effective_expression(&p("312"), &ks(3, &[1, 2])).unwrap();
        assert_eq!(e.intervals, vec![Interval { start: 2, len: 1 }]);
    }

    #[test]
    fn extract_strings_examples() {
        let k = ks(9, &[3, 4, 6]);
        let s = extract_strings(&p("254376198"), &k).unwrap();
        assert_eq!(
            s,
            vec![
                PeakString {
                    peak: 5,
                    len: 2,
                    position: 2
                },
                PeakString {
                    peak: 7,
                    len: 1,
                    position: 5
                },
            ]
        );
        assert_eq!(s[0].tail(), vec![4, 3]);
        assert!(extract_strings(&Permutation::identity(5), &ks(5, &[1, 2]))
            .unwrap()
            .is_empty());
        let s = extract_strings(&p("132"), &ks(3, &[1, 2])).unwrap();
        assert_eq!(
            s,
            vec![PeakString {
                peak: 3,
                len: 1,
                position: 2
            }]
        );
        assert_eq!(
            extract_strings(&p("312"), &ks(3, &[2])),
            Err(Error::NotInWofK)
        );
    }

    #[test]
    fn l_full_examples() {
        let k = ks(9, &[3, 4, 6]);
        let steps = l_full_steps(&p("254376198"), &k).unwrap();
        assert_eq!(steps, vec![p("254376198"), p("725436198"), p("754236198")]);
        assert_eq!(
            l_full(&p("254376198"), &ks(9, &[])).unwrap(),
            p("254376198")
        );
        assert_eq!(l_full(&p("132"), &ks(3, &[1, 2])).unwrap(), p("312"));
        assert_eq!(j_full(&p("312"), &ks(3, &[1, 2])).unwrap(), p("132"));
        // J undoes L on the worked example, one string at a time.
        assert_eq!(
            j_full(&p("754236198"), &ks(9, &[3, 4])).unwrap(),
            p("725436198")
        );
        assert_eq!(
            j_full(&p("725436198"), &ks(9, &[6])).unwrap(),
            p("254376198")
        );
        assert_eq!(j_full(&p("754236198"), &k).unwrap(), p("254376198"));
    }

    #[test]
    fn theta_examples() {
        let k = ks(3, &[1, 2]);
        assert_eq!(theta(&p("123"), &p("312"), &k).unwrap(), p("132"));
        for kk in KSubset::all(4).unwrap() {
            let id = Permutation::identity(4);
            assert_eq!(theta(&id, &id, &kk).unwrap(), id);
            assert_eq!(theta_inverse(&id, &kk).unwrap(), (id.clone(), id.clone()));
        }
        let k = ks(9, &[2, 3, 4, 6, 7, 8]);
        let u = p("967284135");
        let v = theta(&p("672813459"), &u, &k).unwrap();
        assert_eq!(v, p("672981435"));
        assert_eq!((u.des(), v.des()), (4, 4));
        assert!(theta(&p("213"), &p("213"), &ks(3, &[1])).is_err());
        assert!(theta(&p("123"), &p("132"), &ks(3, &[1])).is_err());
    }

    #[test]
    fn theta_inverse_examples() {
        let k = ks(3, &[1, 2]);
        assert_eq!(theta_inverse(&p("132"), &k).unwrap(), (p("123"), p("312")));
        let k = ks(9, &[3, 4, 6]);
        let (w, u) = theta_inverse(&p("254376198"), &k).unwrap();
        assert_eq!(u, p("754236198"));
        assert_eq!(w, canonical_rep(&u));
        assert!(is_min_rep(&w, &k).unwrap() && w.is_tilde());
        assert_eq!(theta(&w, &u, &k).unwrap(), p("254376198"));
    }

    #[test]
    fn trace_reports_both_directions() {
        let k = ks(9, &[3, 4, 6]);
        let t = trace(&p("254376198"), &k).unwrap();
        assert!(t.roundtrip && t.des_preserved);
        assert_eq!(t.lift_steps.len(), 3);
        assert_eq!(t.push_steps.first(), Some(&p("754236198")));
        assert_eq!(t.push_steps.last(), Some(&p("254376198")));
        assert_eq!(t.push_steps[1], p("725436198"));
    }

    #[test]
    fn small_exhaustive_roundtrip() {
        let b = Bound::default();
        for n in 1..=5 {
            for k in KSubset::all(n).unwrap() {
                for w in crate::parabolic::enumerate_w_upper_k(&k, crate::Filter::Tilde, b).unwrap()
                {
                    for u in hop_class(&w, b).unwrap().members() {
                        let v = theta(&w, u, &k).unwrap();
                        assert_eq!(theta_inverse(&v, &k).unwrap(), (w.clone(), u.clone()));
                    }
                }
            }
        }
    }
}
