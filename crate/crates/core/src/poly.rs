//! Exact integer polynomials, the f -> h transform, gamma expansions, and the
//! h-polynomial of a partitioned permutohedron `P_n(K)`.
//!
//! All arithmetic is checked `i64`; overflow surfaces as [`Error::Overflow`].
//! Polynomials are stored trimmed of trailing zeros. Whenever the ambient
//! dimension matters (palindromicity, gamma basis) it is passed explicitly.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combinatorics::all_permutations;
use crate::error::{Error, Result};
use crate::parabolic::{enumerate_w_of_k, enumerate_w_upper_k, Bound, Filter, KSubset};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "Vec<i64>", into = "Vec<i64>")]
pub struct IntPolynomial {
    coeffs: Vec<i64>,
}

impl From<Vec<i64>> for IntPolynomial {
    fn from(coeffs: Vec<i64>) -> Self {
        IntPolynomial::new(coeffs)
    }
}

impl From<IntPolynomial> for Vec<i64> {
    fn from(p: IntPolynomial) -> Self {
        p.coeffs
    }
}

impl IntPolynomial {
    /// Coefficients constant term first.
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPolynomial { coeffs: vec![1] }
    }

    /// `t^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = 1;
        IntPolynomial { coeffs }
    }

    /// `(1 + t)^d`, via Pascal's rule.
    pub fn one_plus_t_pow(d: usize) -> Result<Self> {
        let mut row = vec![1i64];
        for _ in 0..d {
            let mut next = vec![1i64; row.len() + 1];
            for i in 1..row.len() {
                next[i] = row[i - 1].checked_add(row[i]).ok_or(Error::Overflow)?;
            }
            row = next;
        }
        Ok(IntPolynomial { coeffs: row })
    }

    /// `t^j (1 + t)^(d - 2j)`; requires `2j <= d`.
    pub fn gamma_basis(j: usize, d: usize) -> Result<Self> {
        let core = IntPolynomial::one_plus_t_pow(d - 2 * j)?;
        let mut coeffs = vec![0; j];
        coeffs.extend(core.coeffs);
        Ok(IntPolynomial::new(coeffs))
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> i64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| {
                self.coeff(i)
                    .checked_add(other.coeff(i))
                    .ok_or(Error::Overflow)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IntPolynomial::new(coeffs))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| {
                self.coeff(i)
                    .checked_sub(other.coeff(i))
                    .ok_or(Error::Overflow)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IntPolynomial::new(coeffs))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.is_zero() || other.is_zero() {
            return Ok(IntPolynomial::zero());
        }
        let mut coeffs = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                let term = a.checked_mul(b).ok_or(Error::Overflow)?;
                coeffs[i + j] = coeffs[i + j].checked_add(term).ok_or(Error::Overflow)?;
            }
        }
        Ok(IntPolynomial::new(coeffs))
    }

    pub fn checked_scale(&self, c: i64) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|&a| a.checked_mul(c).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(IntPolynomial::new(coeffs))
    }

    /// Horner evaluation at an integer point.
    pub fn eval(&self, t: i64) -> Result<i64> {
        self.coeffs.iter().rev().try_fold(0i64, |acc, &c| {
            acc.checked_mul(t)
                .and_then(|x| x.checked_add(c))
                .ok_or(Error::Overflow)
        })
    }

    /// Adds `c` to the coefficient of `t^i`.
    pub(crate) fn add_term(&mut self, i: usize, c: i64) -> Result<()> {
        if self.coeffs.len() <= i {
            self.coeffs.resize(i + 1, 0);
        }
        self.coeffs[i] = self.coeffs[i].checked_add(c).ok_or(Error::Overflow)?;
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        Ok(())
    }

    fn check_degree(&self, d: usize) -> Result<()> {
        match self.degree() {
            Some(deg) if deg > d => Err(Error::DegreeExceeded {
                degree: deg,
                bound: d,
            }),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            } else if c < 0 {
                f.write_str("-")?;
            }
            first = false;
            let a = c.unsigned_abs();
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if a != 1 {
                        write!(f, "{a}")?;
                    }
                    f.write_str("t")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Coefficients `gamma_0 .. gamma_{floor(d/2)}` of a palindromic polynomial
/// of degree bound `d` in the basis `t^j (1+t)^(d-2j)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct GammaVector {
    entries: Vec<i64>,
    degree: usize,
}

impl GammaVector {
    /// Pads or rejects so that there are exactly `floor(d/2) + 1` entries.
    pub fn new(mut entries: Vec<i64>, degree: usize) -> Result<Self> {
        let len = degree / 2 + 1;
        if entries.len() > len {
            if entries[len..].iter().any(|&x| x != 0) {
                return Err(Error::DegreeExceeded {
                    degree: 2 * (entries.len() - 1),
                    bound: degree,
                });
            }
            entries.truncate(len);
        }
        entries.resize(len, 0);
        Ok(GammaVector { entries, degree })
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|&g| g >= 0)
    }
}

/// `h(t) = f(t - 1)`.
pub fn f_to_h(f: &IntPolynomial, d: usize) -> Result<IntPolynomial> {
    f.check_degree(d)?;
    let shift = IntPolynomial::new(vec![-1, 1]);
    // Horner in the shifted variable.
    let mut h = IntPolynomial::zero();
    for &c in f.coeffs().iter().rev() {
        h = h
            .checked_mul(&shift)?
            .checked_add(&IntPolynomial::new(vec![c]))?;
    }
    Ok(h)
}

pub fn is_palindromic(h: &IntPolynomial, d: usize) -> bool {
    if h.degree().is_some_and(|deg| deg > d) {
        return false;
    }
    (0..=d).all(|i| h.coeff(i) == h.coeff(d - i))
}

/// Peels off `gamma_j t^j (1+t)^(d-2j)` for `j = 0, 1, ..` and insists the
/// residual ends at zero.
pub fn gamma_expand(h: &IntPolynomial, d: usize) -> Result<GammaVector> {
    h.check_degree(d)?;
    if !is_palindromic(h, d) {
        return Err(Error::NotPalindromic(d));
    }
    let mut residual = h.clone();
    let mut entries = Vec::with_capacity(d / 2 + 1);
    for j in 0..=d / 2 {
        let g = residual.coeff(j);
        entries.push(g);
        if g != 0 {
            let term = IntPolynomial::gamma_basis(j, d)?.checked_scale(g)?;
            residual = residual.checked_sub(&term)?;
        }
    }
    if !residual.is_zero() {
        return Err(Error::Internal(format!(
            "gamma expansion residual {residual} is nonzero"
        )));
    }
    GammaVector::new(entries, d)
}

pub fn gamma_reconstruct(g: &GammaVector) -> Result<IntPolynomial> {
    let mut h = IntPolynomial::zero();
    for (j, &c) in g.entries.iter().enumerate() {
        if c != 0 {
            let term = IntPolynomial::gamma_basis(j, g.degree)?.checked_scale(c)?;
            h = h.checked_add(&term)?;
        }
    }
    Ok(h)
}

/// Descent generating function `sum_w t^des(w)` over a family of permutations.
pub fn descent_polynomial<'a, I>(perms: I) -> Result<IntPolynomial>
where
    I: IntoIterator<Item = &'a crate::combinatorics::Permutation>,
{
    let mut h = IntPolynomial::zero();
    for w in perms {
        h.add_term(w.des(), 1)?;
    }
    Ok(h)
}

/// Eulerian polynomial `A_n(t)` by direct summation over `S_n`.
pub fn eulerian(n: usize, bound: Bound) -> Result<IntPolynomial> {
    bound.check(n)?;
    let mut counts = vec![0i64; n.max(1)];
    for w in all_permutations(n) {
        counts[w.des()] += 1;
    }
    Ok(IntPolynomial::new(counts))
}

/// `h_{P_n(K)}(t) = sum_{w in W(K)} t^des(w)`.
pub fn h_poly_partitioned(k: &KSubset, bound: Bound) -> Result<IntPolynomial> {
    descent_polynomial(&enumerate_w_of_k(k, bound)?)
}

/// Independent routes to the gamma vector of `P_n(K)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GammaMethod {
    /// Gamma-expand the h-polynomial summed over `W(K)`.
    Hpoly,
    /// Count tilde-`W^K` by descents.
    Tilde,
    /// Count hat-`W^K` by descents.
    Hat,
}

impl std::str::FromStr for GammaMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hpoly" => Ok(GammaMethod::Hpoly),
            "tilde" => Ok(GammaMethod::Tilde),
            "hat" => Ok(GammaMethod::Hat),
            other => Err(Error::Parse(format!("unknown gamma method {other:?}"))),
        }
    }
}

pub fn gamma_partitioned(k: &KSubset, method: GammaMethod, bound: Bound) -> Result<GammaVector> {
    let d = k.n() - 1;
    match method {
        GammaMethod::Hpoly => gamma_expand(&h_poly_partitioned(k, bound)?, d),
        GammaMethod::Tilde | GammaMethod::Hat => {
            let filter = if method == GammaMethod::Tilde {
                Filter::Tilde
            } else {
                Filter::Hat
            };
            let mut entries = vec![0i64; d / 2 + 1];
            for w in enumerate_w_upper_k(k, filter, bound)? {
                let slot = entries.get_mut(w.des()).ok_or_else(|| {
                    Error::Internal(format!("{w} has more than floor(d/2) descents"))
                })?;
                *slot += 1;
            }
            GammaVector::new(entries, d)
        }
    }
}

/// Stirling numbers of the second kind `S(n, k)` for `k = 0 ..= n`.
pub fn stirling2_row(n: usize) -> Result<Vec<i64>> {
    let mut row = vec![1i64];
    for m in 1..=n {
        let mut next = vec![0i64; m + 1];
        for k in 1..=m {
            let stay = if k < m {
                row[k].checked_mul(k as i64).ok_or(Error::Overflow)?
            } else {
                0
            };
            next[k] = stay.checked_add(row[k - 1]).ok_or(Error::Overflow)?;
        }
        row = next;
    }
    Ok(row)
}

/// f-polynomial of `P_n`: `f_i = (n-i)! S(n, n-i)`, counting ordered set
/// partitions of `[n]` into `n - i` blocks.
pub fn permutohedron_f_vector(n: usize, bound: Bound) -> Result<IntPolynomial> {
    bound.check(n)?;
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    let s = stirling2_row(n)?;
    let mut coeffs = Vec::with_capacity(n);
    for i in 0..n {
        let blocks = n - i;
        let fact = (1..=blocks as i64)
            .try_fold(1i64, |a, b| a.checked_mul(b))
            .ok_or(Error::Overflow)?;
        coeffs.push(fact.checked_mul(s[blocks]).ok_or(Error::Overflow)?);
    }
    Ok(IntPolynomial::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::new(c.to_vec())
    }

    fn ks(n: usize, m: &[usize]) -> KSubset {
        KSubset::new(n, m.to_vec()).unwrap()
    }

    #[test]
    fn f_to_h_examples() {
        assert_eq!(f_to_h(&poly(&[4, 4, 1]), 2).unwrap(), poly(&[1, 2, 1]));
        assert_eq!(f_to_h(&poly(&[1]), 0).unwrap(), poly(&[1]));
        assert_eq!(f_to_h(&poly(&[2, 1]), 1).unwrap(), poly(&[1, 1]));
        assert!(f_to_h(&poly(&[1, 1, 1]), 1).is_err());
    }

    #[test]
    fn palindromic_examples() {
        assert!(is_palindromic(&poly(&[1, 14, 30, 14, 1]), 4));
        assert!(!is_palindromic(&poly(&[1, 2]), 2));
        for d in 0..=8 {
            assert!(is_palindromic(
                &IntPolynomial::one_plus_t_pow(d).unwrap(),
                d
            ));
        }
        // Trailing zeros matter relative to the degree bound.
        assert!(!is_palindromic(&poly(&[1, 1]), 2));
    }

    #[test]
    fn gamma_expand_examples() {
        let g = gamma_expand(&poly(&[1, 14, 30, 14, 1]), 4).unwrap();
        assert_eq!(g.entries(), &[1, 10, 4]);
        for d in 0..=8 {
            let g = gamma_expand(&IntPolynomial::one_plus_t_pow(d).unwrap(), d).unwrap();
            let mut expected = vec![0; d / 2 + 1];
            expected[0] = 1;
            assert_eq!(g.entries(), expected.as_slice());
        }
        assert_eq!(
            gamma_expand(&poly(&[1, 4, 1]), 2).unwrap().entries(),
            &[1, 2]
        );
        assert_eq!(
            gamma_expand(&poly(&[1, 2]), 2),
            Err(Error::NotPalindromic(2))
        );
        // Negative entries are legal for arbitrary palindromic input.
        assert_eq!(
            gamma_expand(&poly(&[1, 1, 1]), 2).unwrap().entries(),
            &[1, -1]
        );
    }

    #[test]
    fn gamma_reconstruct_examples() {
        let g = GammaVector::new(vec![1, 10, 4], 4).unwrap();
        assert_eq!(gamma_reconstruct(&g).unwrap(), poly(&[1, 14, 30, 14, 1]));
        let g = GammaVector::new(vec![1], 0).unwrap();
        assert_eq!(gamma_reconstruct(&g).unwrap(), poly(&[1]));
        let g = GammaVector::new(vec![1, 2], 2).unwrap();
        assert_eq!(gamma_reconstruct(&g).unwrap(), poly(&[1, 4, 1]));
    }

    #[test]
    fn eulerian_examples() {
        assert_eq!(eulerian(1, Bound::default()).unwrap(), poly(&[1]));
        assert_eq!(eulerian(3, Bound::default()).unwrap(), poly(&[1, 4, 1]));
        assert_eq!(
            eulerian(4, Bound::default()).unwrap(),
            poly(&[1, 11, 11, 1])
        );
    }

    #[test]
    fn h_poly_examples() {
        let b = Bound::default();
        assert_eq!(
            h_poly_partitioned(&ks(5, &[1, 3]), b).unwrap(),
            poly(&[1, 14, 30, 14, 1])
        );
        for n in 1..=6 {
            assert_eq!(
                h_poly_partitioned(&KSubset::empty(n).unwrap(), b).unwrap(),
                eulerian(n, b).unwrap()
            );
        }
        assert_eq!(
            h_poly_partitioned(&ks(4, &[1, 2, 3]), b).unwrap(),
            poly(&[1, 3, 3, 1])
        );
    }

    #[test]
    fn gamma_partitioned_examples() {
        let b = Bound::default();
        for m in [GammaMethod::Hpoly, GammaMethod::Tilde, GammaMethod::Hat] {
            assert_eq!(
                gamma_partitioned(&ks(5, &[1, 3]), m, b).unwrap().entries(),
                &[1, 10, 4]
            );
        }
        assert_eq!(
            gamma_partitioned(&ks(3, &[1, 2]), GammaMethod::Tilde, b)
                .unwrap()
                .entries(),
            &[1, 0]
        );
        // A_4 = (1+t)^3 + 8t(1+t).
        assert_eq!(
            gamma_partitioned(&ks(4, &[]), GammaMethod::Hpoly, b)
                .unwrap()
                .entries(),
            &[1, 8]
        );
    }

    // Oracle: count surjections [n] -> [k] by brute force over all maps.
    fn surjections(n: usize, k: usize) -> i64 {
        let total = k.pow(n as u32);
        (0..total)
            .filter(|&code| {
                let mut hit = vec![false; k];
                let mut c = code;
                for _ in 0..n {
                    hit[c % k] = true;
                    c /= k;
                }
                hit.iter().all(|&h| h)
            })
            .count() as i64
    }

    #[test]
    fn f_vector_examples_and_oracle() {
        let b = Bound::default();
        assert_eq!(permutohedron_f_vector(2, b).unwrap(), poly(&[2, 1]));
        assert_eq!(permutohedron_f_vector(3, b).unwrap(), poly(&[6, 6, 1]));
        assert_eq!(
            permutohedron_f_vector(4, b).unwrap(),
            poly(&[24, 36, 14, 1])
        );
        for n in 1..=7 {
            let f = permutohedron_f_vector(n, b).unwrap();
            for i in 0..n {
                assert_eq!(f.coeff(i), surjections(n, n - i), "n={n} i={i}");
            }
        }
    }

    #[test]
    fn f_to_h_of_permutohedron_is_eulerian() {
        let b = Bound::default();
        for n in 1..=8 {
            let h = f_to_h(&permutohedron_f_vector(n, b).unwrap(), n - 1).unwrap();
            assert_eq!(h, eulerian(n, b).unwrap());
        }
    }

    #[test]
    fn h_at_one_counts_w_of_k() {
        let b = Bound::default();
        for n in 1..=6 {
            for k in KSubset::all(n).unwrap() {
                let h = h_poly_partitioned(&k, b).unwrap();
                assert_eq!(
                    h.eval(1).unwrap() as usize,
                    enumerate_w_of_k(&k, b).unwrap().len()
                );
            }
        }
    }

    #[test]
    fn overflow_is_reported() {
        let big = poly(&[i64::MAX]);
        assert_eq!(big.checked_add(&poly(&[1])), Err(Error::Overflow));
        assert_eq!(big.checked_scale(2), Err(Error::Overflow));
        assert!(IntPolynomial::one_plus_t_pow(70).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(
            poly(&[1, 14, 30, 14, 1]).to_string(),
            "1 + 14t + 30t^2 + 14t^3 + t^4"
        );
        assert_eq!(poly(&[0, -1, 2]).to_string(), "-t + 2t^2");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
    }

    proptest! {
        #[test]
        fn gamma_roundtrip(d in 0usize..=12, raw in proptest::collection::vec(-1_000_000i64..=1_000_000, 7)) {
            let g = GammaVector::new(raw[..d / 2 + 1].to_vec(), d).unwrap();
            let h = gamma_reconstruct(&g).unwrap();
            prop_assert!(is_palindromic(&h, d));
            prop_assert_eq!(gamma_expand(&h, d).unwrap(), g);
        }
    }
}
