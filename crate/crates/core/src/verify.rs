//! Exhaustive verification sweeps over every `K` up to a given rank.
//!
//! Each suite reduces to a set of named boolean flags plus the first
//! counterexample it met. Sweeps run in parallel over `(n, K)` and the
//! records are emitted in a fixed order, so the report (minus the optional
//! timing metadata) is byte-identical across runs and thread counts.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::combinatorics::{all_permutations, classify_positions, star, Word};
use crate::error::{Error, Result};
use crate::hopping::{canonical_rep, class_descent_poly, hop_class, is_canonical};
use crate::parabolic::{
    enumerate_w_of_k, enumerate_w_upper_k, is_in_w_of_k, is_min_rep, Bound, Filter, KSubset,
};
use crate::poly::{
    eulerian, f_to_h, gamma_partitioned, h_poly_partitioned, is_palindromic,
    permutohedron_f_vector, GammaMethod, IntPolynomial,
};
use crate::tableaux::{
    enumerate_hat_words, evacuation, phi, rep_gamma, rsk, rsk_inverse, tableau_descent_set,
    TableauVariant,
};
use crate::theta::{effective_expression, lowest_letters_respect_k, theta, theta_inverse};

pub const SCHEMA: &str = "v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Gamma,
    Bijection,
    Hop,
    Rsk,
    Kostka,
    Phi,
}

impl Check {
    pub const ALL: [Check; 6] = [
        Check::Gamma,
        Check::Bijection,
        Check::Hop,
        Check::Rsk,
        Check::Kostka,
        Check::Phi,
    ];

    /// Suites indexed by `(n, K)`; the others are indexed by `n` alone.
    fn per_subset(self) -> bool {
        matches!(
            self,
            Check::Gamma | Check::Bijection | Check::Kostka | Check::Phi
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            Check::Gamma => "gamma",
            Check::Bijection => "bijection",
            Check::Hop => "hop",
            Check::Rsk => "rsk",
            Check::Kostka => "kostka",
            Check::Phi => "phi",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown check {s:?}")))
    }
}

/// A set of suites, parsed from `all` or a comma-separated list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Checks(BTreeSet<Check>);

impl Checks {
    pub fn all() -> Self {
        Checks(Check::ALL.into_iter().collect())
    }

    pub fn only(checks: &[Check]) -> Self {
        Checks(checks.iter().copied().collect())
    }

    pub fn contains(&self, c: Check) -> bool {
        self.0.contains(&c)
    }

    pub fn iter(&self) -> impl Iterator<Item = Check> + '_ {
        self.0.iter().copied()
    }
}

impl FromStr for Checks {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut set = BTreeSet::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if part == "all" {
                return Ok(Checks::all());
            }
            set.insert(part.parse()?);
        }
        if set.is_empty() {
            return Err(Error::Parse("no checks selected".into()));
        }
        Ok(Checks(set))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub suite: Check,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<KSubset>,
    pub flag: String,
    pub detail: String,
}

/// Flags of one suite run plus the first failure it saw.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub flags: BTreeMap<String, bool>,
    pub failure: Option<(String, String)>,
}

impl SuiteOutcome {
    fn record(&mut self, flag: &str, ok: bool, detail: impl FnOnce() -> String) {
        let entry = self.flags.entry(flag.to_string()).or_insert(true);
        *entry &= ok;
        if !ok && self.failure.is_none() {
            self.failure = Some((flag.to_string(), detail()));
        }
    }

    /// Turns a computation error into a failed flag instead of aborting the sweep.
    fn absorb<T>(&mut self, flag: &str, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.record(flag, false, || e.to_string());
                None
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.flags.values().all(|&b| b)
    }

    fn merge(&mut self, other: SuiteOutcome) {
        for (k, v) in other.flags {
            *self.flags.entry(k).or_insert(true) &= v;
        }
        if self.failure.is_none() {
            self.failure = other.failure;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FamilyCounts {
    pub w_upper_k: usize,
    pub w_of_k: usize,
    pub tilde_w_upper_k: usize,
    pub hat_w_upper_k: usize,
}

/// One pass over `S_n` sizing the four families attached to `K`.
pub fn family_counts(k: &KSubset, bound: Bound) -> Result<FamilyCounts> {
    bound.check(k.n())?;
    let mut c = FamilyCounts {
        w_upper_k: 0,
        w_of_k: 0,
        tilde_w_upper_k: 0,
        hat_w_upper_k: 0,
    };
    for w in all_permutations(k.n()) {
        if is_in_w_of_k(&w, k)? {
            c.w_of_k += 1;
        }
        if is_min_rep(&w, k)? {
            c.w_upper_k += 1;
            let flags = w.descent_flags();
            c.tilde_w_upper_k += flags.is_tilde() as usize;
            c.hat_w_upper_k += flags.is_hat() as usize;
        }
    }
    Ok(c)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GammaByMethod {
    pub hpoly: Vec<i64>,
    pub tilde: Vec<i64>,
    pub hat: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RepGamma {
    pub hat: Vec<i64>,
    pub tilde: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubsetRecord {
    pub n: usize,
    pub k: KSubset,
    pub counts: FamilyCounts,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<IntPolynomial>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<GammaByMethod>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rep_gamma: Option<RepGamma>,
    pub flags: BTreeMap<String, bool>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SizeRecord {
    pub n: usize,
    pub flags: BTreeMap<String, bool>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub subset_records: usize,
    pub size_records: usize,
    pub flags_checked: usize,
    pub flags_failed: usize,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Timings {
    pub total_ms: f64,
    /// Summed record times per rank `n` (parallel work, so not wall-clock).
    pub per_n_ms: BTreeMap<usize, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub schema: &'static str,
    pub max_n: usize,
    pub checks: Vec<Check>,
    pub records: Vec<SubsetRecord>,
    pub size_records: Vec<SizeRecord>,
    pub summary: Summary,
    pub first_counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Timings>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.summary.pass
    }
}

// ---------------------------------------------------------------------------
// Per-(n, K) suites

/// The three gamma routes agree, are nonnegative, and `h` is palindromic with
/// `h(1) = |W(K)|`. For `K = {}` and `K = [n-1]` also compares against the
/// Eulerian polynomial and `(1+t)^(n-1)`.
pub fn gamma_suite(
    k: &KSubset,
    bound: Bound,
) -> (SuiteOutcome, Option<IntPolynomial>, Option<GammaByMethod>) {
    let mut out = SuiteOutcome::default();
    let n = k.n();
    let d = n - 1;
    let Some(h) = out.absorb("h_computed", h_poly_partitioned(k, bound)) else {
        return (out, None, None);
    };
    let methods = [GammaMethod::Hpoly, GammaMethod::Tilde, GammaMethod::Hat];
    let mut gammas = Vec::new();
    for m in methods {
        match out.absorb("gamma_computed", gamma_partitioned(k, m, bound)) {
            Some(g) => gammas.push(g.entries().to_vec()),
            None => return (out, Some(h), None),
        }
    }
    out.record("h_palindromic", is_palindromic(&h, d), || {
        format!("h = {h}")
    });
    let total: i64 = h.coeffs().iter().sum();
    if let Some(size) = out.absorb("h_at_one_is_w_of_k", enumerate_w_of_k(k, bound)) {
        out.record("h_at_one_is_w_of_k", total == size.len() as i64, || {
            format!("h(1) = {total}, |W(K)| = {}", size.len())
        });
    }
    out.record(
        "methods_agree",
        gammas[0] == gammas[1] && gammas[1] == gammas[2],
        || {
            format!(
                "hpoly {:?}, tilde {:?}, hat {:?}",
                gammas[0], gammas[1], gammas[2]
            )
        },
    );
    out.record(
        "nonnegative",
        gammas.iter().flatten().all(|&g| g >= 0),
        || format!("{:?}", gammas[0]),
    );
    if k.is_empty() {
        if let Some(a) = out.absorb("eulerian", eulerian(n, bound)) {
            out.record("eulerian", h == a, || format!("h = {h}, A_n = {a}"));
        }
    }
    if k.len() == d {
        let cube = IntPolynomial::one_plus_t_pow(d).expect("small exponent");
        out.record("cube", h == cube, || format!("h = {h}"));
    }
    let g = GammaByMethod {
        hpoly: gammas[0].clone(),
        tilde: gammas[1].clone(),
        hat: gammas[2].clone(),
    };
    (out, Some(h), Some(g))
}

/// `Theta` over the whole of `{(w, u) : w in tilde-W^K, u in Hop(w)}` and its
/// inverse over the whole of `W(K)`.
pub fn bijection_suite(k: &KSubset, bound: Bound) -> SuiteOutcome {
    let mut out = SuiteOutcome::default();
    let Some(tilde) = out.absorb("enumerate", enumerate_w_upper_k(k, Filter::Tilde, bound)) else {
        return out;
    };
    let Some(target) = out.absorb("enumerate", enumerate_w_of_k(k, bound)) else {
        return out;
    };
    let mut image = Vec::with_capacity(target.len());
    let mut class_total = 0usize;
    for w in &tilde {
        let Some(class) = out.absorb("hop_class", hop_class(w, bound)) else {
            continue;
        };
        class_total += class.len();
        for u in class.members() {
            let Some(v) = out.absorb("theta_defined", theta(w, u, k)) else {
                continue;
            };
            let inside = is_in_w_of_k(&v, k).unwrap_or(false);
            out.record("j_lands_in_w_of_k", inside, || format!("u = {u} -> {v}"));
            out.record("des_preserved", v.des() == u.des(), || {
                format!("u = {u} -> {v}")
            });
            if let Some(expr) = out.absorb("lowest_letters_respect_k", effective_expression(u, k)) {
                out.record(
                    "lowest_letters_respect_k",
                    lowest_letters_respect_k(&expr, &v, k),
                    || format!("u = {u} -> {v}"),
                );
            }
            if let Some(back) = out.absorb("inverse_after_theta", theta_inverse(&v, k)) {
                out.record(
                    "inverse_after_theta",
                    back == (w.clone(), u.clone()),
                    || format!("(w, u) = ({w}, {u}) -> {v} -> ({}, {})", back.0, back.1),
                );
            }
            image.push(v);
        }
    }
    out.record(
        "hop_sizes_sum_to_w_of_k",
        class_total == target.len(),
        || format!("sum |Hop(w)| = {class_total}, |W(K)| = {}", target.len()),
    );
    image.sort();
    out.record("image_is_w_of_k", image == target, || {
        format!(
            "{} images vs {} elements of W(K)",
            image.len(),
            target.len()
        )
    });
    for v in &target {
        let Some((w, u)) = out.absorb("theta_after_inverse", theta_inverse(v, k)) else {
            continue;
        };
        let again = theta(&w, &u, k);
        out.record("theta_after_inverse", again.as_ref() == Ok(v), || {
            format!("v = {v} -> (w, u) = ({w}, {u}) -> {again:?}")
        });
    }
    out
}

/// Kostka-weighted gamma over hat and tilde tableaux equals the gamma vector.
pub fn kostka_suite(
    k: &KSubset,
    bound: Bound,
    reference: Option<&[i64]>,
) -> (SuiteOutcome, Option<RepGamma>) {
    let mut out = SuiteOutcome::default();
    let reference = match reference {
        Some(r) => r.to_vec(),
        None => match out.absorb(
            "gamma_computed",
            gamma_partitioned(k, GammaMethod::Hpoly, bound),
        ) {
            Some(g) => g.entries().to_vec(),
            None => return (out, None),
        },
    };
    let hat = out.absorb("rep_gamma_hat", rep_gamma(k, TableauVariant::Hat, bound));
    let tilde = out.absorb(
        "rep_gamma_tilde",
        rep_gamma(k, TableauVariant::Tilde, bound),
    );
    let (Some(hat), Some(tilde)) = (hat, tilde) else {
        return (out, None);
    };
    out.record(
        "rep_gamma_hat",
        hat.entries() == reference.as_slice(),
        || format!("rep {:?} vs gamma {reference:?}", hat.entries()),
    );
    out.record(
        "rep_gamma_tilde",
        tilde.entries() == reference.as_slice(),
        || format!("rep {:?} vs gamma {reference:?}", tilde.entries()),
    );
    let rep = RepGamma {
        hat: hat.entries().to_vec(),
        tilde: tilde.entries().to_vec(),
    };
    (out, Some(rep))
}

/// `phi` maps the hat words with content `mu(K)` bijectively onto hat-`W^K`
/// and preserves descent sets.
pub fn phi_suite(k: &KSubset, bound: Bound) -> SuiteOutcome {
    let mut out = SuiteOutcome::default();
    let Some(words) = out.absorb("enumerate", enumerate_hat_words(k, bound)) else {
        return out;
    };
    let Some(target) = out.absorb("enumerate", enumerate_w_upper_k(k, Filter::Hat, bound)) else {
        return out;
    };
    let mut image = Vec::with_capacity(words.len());
    for v in &words {
        let Some(w) = out.absorb("phi_defined", phi(v, k)) else {
            continue;
        };
        out.record(
            "descents_preserved",
            w.descent_set() == v.descent_set(),
            || format!("{v} -> {w}"),
        );
        image.push(w);
    }
    image.sort();
    let distinct = image.windows(2).all(|p| p[0] != p[1]);
    out.record("injective", distinct, || "two words share an image".into());
    out.record("image_is_hat_w_upper_k", image == target, || {
        format!(
            "{} images vs {} elements of hat-W^K",
            image.len(),
            target.len()
        )
    });
    out
}

// ---------------------------------------------------------------------------
// Per-n suites

/// Hop classes of `S_n`: closed-form descent polynomial, size `2^#free`, and
/// the classes partition `S_n`.
pub fn hop_suite(n: usize, bound: Bound) -> SuiteOutcome {
    let mut out = SuiteOutcome::default();
    if let Err(e) = bound.check(n) {
        out.record("bound", false, || e.to_string());
        return out;
    }
    let mut covered = 0usize;
    let mut total = 0usize;
    for w in all_permutations(n) {
        total += 1;
        if !is_canonical(&w) {
            continue;
        }
        let Some(class) = out.absorb("hop_class", hop_class(&w, bound)) else {
            continue;
        };
        out.absorb("class_poly_closed_form", class_descent_poly(&class));
        let free = classify_positions(&w).free_letters().len();
        out.record("class_size_power_of_two", class.len() == 1 << free, || {
            format!(
                "class of {w} has {} members, {free} free letters",
                class.len()
            )
        });
        let consistent = class.members().iter().all(|u| canonical_rep(u) == w);
        out.record("classes_disjoint", consistent, || format!("class of {w}"));
        covered += class.len();
    }
    out.record("classes_cover_s_n", covered == total, || {
        format!("classes cover {covered} of {total}")
    });
    out
}

/// Calls `f` on every word of length `n` over `[m]`, in lexicographic order.
pub fn for_each_word(n: usize, m: usize, mut f: impl FnMut(&[usize])) {
    if m == 0 {
        if n == 0 {
            f(&[]);
        }
        return;
    }
    let mut letters = vec![1; n];
    loop {
        f(&letters);
        let Some(i) = letters.iter().rposition(|&x| x < m) else {
            return;
        };
        letters[i] += 1;
        for x in &mut letters[i + 1..] {
            *x = 1;
        }
    }
}

/// RSK on `[2]^n`, `[3]^n` and `S_n`: roundtrip, `Des(Q) = Des(v)`,
/// `content(P)` = multiplicities, and evacuation of `Q(w)` gives `Q(w*)`.
pub fn rsk_suite(n: usize, bound: Bound) -> SuiteOutcome {
    let mut out = SuiteOutcome::default();
    if let Err(e) = bound.check(n) {
        out.record("bound", false, || e.to_string());
        return out;
    }
    for m in [2, 3] {
        for_each_word(n, m, |letters| {
            let v = Word::new(letters.to_vec()).expect("positive letters");
            out.merge(rsk_word_checks(&v));
        });
    }
    for w in all_permutations(n) {
        let (_, q) = rsk(&w.to_word());
        let (_, qs) = rsk(&star(&w).to_word());
        if let Some(e) = out.absorb("evacuation_is_star", evacuation(&q)) {
            out.record("evacuation_is_star", e == qs, || format!("w = {w}"));
        }
    }
    out
}

/// Roundtrip, descent and content checks for a single word.
pub fn rsk_word_checks(v: &Word) -> SuiteOutcome {
    let mut out = SuiteOutcome::default();
    let (p, q) = rsk(v);
    let back = rsk_inverse(&p, &q);
    out.record("roundtrip", back.as_ref() == Ok(v), || {
        format!("v = {v} -> {back:?}")
    });
    let des = tableau_descent_set(&q);
    out.record(
        "descents_match",
        des.as_deref() == Ok(v.descent_set().as_slice()),
        || format!("v = {v}"),
    );
    out.record("content_matches", p.content() == v.multiplicities(), || {
        format!("v = {v}")
    });
    out.record(
        "p_semistandard_q_standard",
        p.is_semistandard() && q.is_standard(),
        || format!("v = {v}"),
    );
    out
}

/// `f_to_h` of the permutohedron's face numbers is the Eulerian polynomial.
fn face_suite(n: usize, bound: Bound) -> SuiteOutcome {
    let mut out = SuiteOutcome::default();
    let f = out.absorb("f_to_h_is_eulerian", permutohedron_f_vector(n, bound));
    let a = out.absorb("f_to_h_is_eulerian", eulerian(n, bound));
    if let (Some(f), Some(a)) = (f, a) {
        if let Some(h) = out.absorb("f_to_h_is_eulerian", f_to_h(&f, n - 1)) {
            out.record("f_to_h_is_eulerian", h == a, || {
                format!("h = {h}, A_n = {a}")
            });
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Driver

/// Namespaces the flags as `suite.flag` and attaches the location to the failure.
fn tag(
    suite: Check,
    outcome: SuiteOutcome,
    n: usize,
    k: Option<&KSubset>,
) -> (BTreeMap<String, bool>, Option<Counterexample>) {
    let flags = outcome
        .flags
        .into_iter()
        .map(|(f, v)| (format!("{suite}.{f}"), v))
        .collect();
    let failure = outcome.failure.map(|(flag, detail)| Counterexample {
        suite,
        n,
        k: k.cloned(),
        flag,
        detail,
    });
    (flags, failure)
}

struct Collected<R> {
    record: R,
    failure: Option<Counterexample>,
    ms: f64,
}

fn subset_record(k: &KSubset, checks: &Checks, bound: Bound) -> Result<Collected<SubsetRecord>> {
    let start = Instant::now();
    let n = k.n();
    let counts = family_counts(k, bound)?;
    let mut flags = BTreeMap::new();
    let mut failure = None;
    let mut h = None;
    let mut gamma = None;
    let mut rep = None;
    let mut absorb = |suite: Check, outcome: SuiteOutcome| {
        let (f, fail) = tag(suite, outcome, n, Some(k));
        flags.extend(f);
        failure = failure.take().or(fail);
    };
    if checks.contains(Check::Gamma) {
        let (o, hh, g) = gamma_suite(k, bound);
        absorb(Check::Gamma, o);
        h = hh;
        gamma = g;
    }
    if checks.contains(Check::Bijection) {
        absorb(Check::Bijection, bijection_suite(k, bound));
    }
    if checks.contains(Check::Kostka) {
        let (o, r) = kostka_suite(k, bound, gamma.as_ref().map(|g| g.hpoly.as_slice()));
        absorb(Check::Kostka, o);
        rep = r;
    }
    if checks.contains(Check::Phi) {
        absorb(Check::Phi, phi_suite(k, bound));
    }
    let pass = flags.values().all(|&b| b);
    Ok(Collected {
        record: SubsetRecord {
            n,
            k: k.clone(),
            counts,
            h,
            gamma,
            rep_gamma: rep,
            flags,
            pass,
        },
        failure,
        ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

fn size_record(n: usize, checks: &Checks, bound: Bound) -> Collected<SizeRecord> {
    let start = Instant::now();
    let mut flags = BTreeMap::new();
    let mut failure = None;
    let mut suites = Vec::new();
    if checks.contains(Check::Gamma) {
        suites.push((Check::Gamma, face_suite(n, bound)));
    }
    if checks.contains(Check::Hop) {
        suites.push((Check::Hop, hop_suite(n, bound)));
    }
    if checks.contains(Check::Rsk) {
        suites.push((Check::Rsk, rsk_suite(n, bound)));
    }
    for (suite, outcome) in suites {
        let (f, fail) = tag(suite, outcome, n, None);
        flags.extend(f);
        failure = failure.take().or(fail);
    }
    let pass = flags.values().all(|&b| b);
    Collected {
        record: SizeRecord { n, flags, pass },
        failure,
        ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

/// Runs `checks` for every `n in 1 ..= max_n` and every `K` of `[n-1]`.
/// Parallelism comes from the ambient rayon pool.
pub fn verify(
    max_n: usize,
    checks: &Checks,
    bound: Bound,
    with_timings: bool,
) -> Result<VerificationReport> {
    bound.check(max_n)?;
    let start = Instant::now();
    let mut subsets = Vec::new();
    for n in 1..=max_n {
        subsets.extend(KSubset::all(n)?);
    }
    let want_subsets = checks.iter().any(Check::per_subset);
    let subset_results: Vec<Collected<SubsetRecord>> = if want_subsets {
        subsets
            .par_iter()
            .map(|k| subset_record(k, checks, bound))
            .collect::<Result<_>>()?
    } else {
        Vec::new()
    };
    let want_sizes = checks.iter().any(|c| !c.per_subset() || c == Check::Gamma);
    let size_results: Vec<Collected<SizeRecord>> = if want_sizes {
        (1..=max_n)
            .into_par_iter()
            .map(|n| size_record(n, checks, bound))
            .collect()
    } else {
        Vec::new()
    };

    let mut per_n_ms: BTreeMap<usize, f64> = BTreeMap::new();
    for c in &subset_results {
        *per_n_ms.entry(c.record.n).or_default() += c.ms;
    }
    for c in &size_results {
        *per_n_ms.entry(c.record.n).or_default() += c.ms;
    }

    // Order: by n, then subset records before the size record for that n.
    let mut first: Option<Counterexample> = None;
    for n in 1..=max_n {
        let from_subsets = subset_results
            .iter()
            .filter(|c| c.record.n == n)
            .find_map(|c| c.failure.clone());
        let from_size = size_results
            .iter()
            .filter(|c| c.record.n == n)
            .find_map(|c| c.failure.clone());
        if let Some(f) = from_subsets.or(from_size) {
            first = Some(f);
            break;
        }
    }

    let records: Vec<SubsetRecord> = subset_results.into_iter().map(|c| c.record).collect();
    let size_records: Vec<SizeRecord> = size_results.into_iter().map(|c| c.record).collect();
    let all_flags = records
        .iter()
        .map(|r| &r.flags)
        .chain(size_records.iter().map(|r| &r.flags));
    let (mut checked, mut failed) = (0, 0);
    for flags in all_flags {
        checked += flags.len();
        failed += flags.values().filter(|&&b| !b).count();
    }
    let summary = Summary {
        subset_records: records.len(),
        size_records: size_records.len(),
        flags_checked: checked,
        flags_failed: failed,
        pass: failed == 0,
    };
    let metadata = with_timings.then(|| Timings {
        total_ms: start.elapsed().as_secs_f64() * 1e3,
        per_n_ms,
    });
    Ok(VerificationReport {
        schema: SCHEMA,
        max_n,
        checks: checks.iter().collect(),
        records,
        size_records,
        summary,
        first_counterexample: first,
        metadata,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ks(n: usize, m: &[usize]) -> KSubset {
        KSubset::new(n, m.to_vec()).unwrap()
    }

    #[test]
    fn checks_parse() {
        assert_eq!("all".parse::<Checks>().unwrap(), Checks::all());
        assert_eq!(
            "gamma, rsk".parse::<Checks>().unwrap(),
            Checks::only(&[Check::Gamma, Check::Rsk])
        );
        assert!("gamma,nope".parse::<Checks>().is_err());
        assert!("".parse::<Checks>().is_err());
    }

    #[test]
    fn word_odometer() {
        let mut seen = Vec::new();
        for_each_word(2, 2, |w| seen.push(w.to_vec()));
        assert_eq!(seen, vec![vec![1, 1], vec![1, 2], vec![2, 1], vec![2, 2]]);
        let mut count = 0;
        for_each_word(5, 3, |_| count += 1);
        assert_eq!(count, 243);
        let mut empty = 0;
        for_each_word(0, 3, |_| empty += 1);
        assert_eq!(empty, 1);
    }

    #[test]
    fn family_counts_example() {
        let c = family_counts(&ks(5, &[1, 3]), Bound::default()).unwrap();
        assert_eq!(c.w_upper_k, 30);
        assert_eq!(c.w_of_k, 60);
        assert_eq!(c.tilde_w_upper_k, 15);
        assert_eq!(c.hat_w_upper_k, 15);
    }

    #[test]
    fn gamma_record_example() {
        let r = verify(5, &Checks::only(&[Check::Gamma]), Bound::default(), false).unwrap();
        assert!(r.passed());
        let rec = r
            .records
            .iter()
            .find(|r| r.n == 5 && r.k == ks(5, &[1, 3]))
            .unwrap();
        let g = rec.gamma.as_ref().unwrap();
        assert_eq!(
            (g.hpoly.as_slice(), g.tilde.as_slice(), g.hat.as_slice()),
            (&[1, 10, 4][..], &[1, 10, 4][..], &[1, 10, 4][..])
        );
        assert_eq!(rec.h.as_ref().unwrap().coeffs(), &[1, 14, 30, 14, 1]);
    }

    #[test]
    fn full_verify_small() {
        let r = verify(5, &Checks::all(), Bound::default(), false).unwrap();
        assert!(r.passed(), "{:?}", r.first_counterexample);
        assert_eq!(r.records.len(), 1 + 2 + 4 + 8 + 16);
        assert_eq!(r.size_records.len(), 5);
        assert!(r.first_counterexample.is_none());
        assert!(r.metadata.is_none());
    }

    #[test]
    fn report_is_deterministic() {
        let checks = Checks::all();
        let a =
            serde_json::to_string(&verify(4, &checks, Bound::default(), false).unwrap()).unwrap();
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        let b = pool.install(|| {
            serde_json::to_string(&verify(4, &checks, Bound::default(), false).unwrap()).unwrap()
        });
        assert_eq!(a, b);
    }

    #[test]
    fn failures_are_captured() {
        let mut o = SuiteOutcome::default();
        o.record("x", true, || unreachable!());
        o.record("y", false, || "first".into());
        o.record("y", false, || "second".into());
        assert!(!o.passed());
        assert_eq!(o.failure, Some(("y".into(), "first".into())));
    }

    #[test]
    fn bound_is_enforced() {
        assert_eq!(
            verify(11, &Checks::all(), Bound::default(), false).unwrap_err(),
            Error::BoundExceeded { n: 11, bound: 10 }
        );
    }
}
