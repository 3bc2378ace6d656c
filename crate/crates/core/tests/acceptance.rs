//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Every bound and time limit is pinned below.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use permgamma::combinatorics::all_permutations;
use permgamma::poly::{
    eulerian, f_to_h, gamma_partitioned, h_poly_partitioned, permutohedron_f_vector,
};
use permgamma::tableaux::{
    enumerate_all_syt, evacuation, phi, rep_gamma, rsk, tableau_descent_set, TableauVariant,
    YoungTableau,
};
use permgamma::verify::{
    bijection_suite, for_each_word, hop_suite, phi_suite, rsk_word_checks, SuiteOutcome,
};
use permgamma::{Bound, Filter, GammaMethod, IntPolynomial, KSubset, Permutation, Word};

const EXAMPLE_LIMIT: Duration = Duration::from_secs(1);
const GAMMA_SWEEP_MAX_N: usize = 8;
const GAMMA_SWEEP_LIMIT: Duration = Duration::from_secs(180);
const EULERIAN_MAX_N: usize = 8;
const BIJECTION_MAX_N: usize = 7;
const BIJECTION_LIMIT: Duration = Duration::from_secs(300);
const HOP_MAX_N: usize = 8;
const RANDOM_WORDS: usize = 10_000;
const RANDOM_WORD_SEED: u64 = 0x5eed_0007;
const REP_GAMMA_MAX_N: usize = 6;
const HAT_TILDE_MAX_N: usize = 7;
const PHI_MAX_N: usize = 6;

type Verdict = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn suite_ok(o: &SuiteOutcome, ctx: impl std::fmt::Display) -> Result<(), String> {
    match &o.failure {
        None if o.passed() => Ok(()),
        Some((flag, detail)) => Err(format!("{ctx}: {flag}: {detail}")),
        None => Err(format!("{ctx}: a flag failed without detail")),
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed <= limit, || {
        format!("took {elapsed:.2?}, limit {limit:?}")
    })
}

fn subsets(max_n: usize) -> impl Iterator<Item = KSubset> {
    (1..=max_n).flat_map(|n| KSubset::all(n).unwrap())
}

fn gammas(k: &KSubset) -> Result<[Vec<i64>; 3], String> {
    let b = Bound::default();
    let get = |m| {
        gamma_partitioned(k, m, b)
            .map(|g| g.entries().to_vec())
            .map_err(|e| format!("K={{{k}}}: {e}"))
    };
    Ok([
        get(GammaMethod::Hpoly)?,
        get(GammaMethod::Tilde)?,
        get(GammaMethod::Hat)?,
    ])
}

fn worked_example() -> Verdict {
    let start = Instant::now();
    let k = KSubset::new(5, vec![1, 3]).unwrap();
    let h = h_poly_partitioned(&k, Bound::default()).map_err(|e| e.to_string())?;
    ensure(h.coeffs() == [1, 14, 30, 14, 1], || format!("h = {h}"))?;
    for g in gammas(&k)? {
        ensure(g == [1, 10, 4], || format!("gamma = {g:?}"))?;
    }
    let elapsed = start.elapsed();
    within(elapsed, EXAMPLE_LIMIT)?;
    Ok(format!(
        "h = [1,14,30,14,1], gamma = (1,10,4) three ways in {elapsed:.2?}"
    ))
}

fn gamma_sweep() -> Verdict {
    let start = Instant::now();
    let mut count = 0;
    for k in subsets(GAMMA_SWEEP_MAX_N) {
        let [a, b, c] = gammas(&k)?;
        ensure(a == b && b == c, || {
            format!("n={} K={{{k}}}: {a:?} {b:?} {c:?}", k.n())
        })?;
        ensure(a.iter().all(|&x| x >= 0), || {
            format!("n={} K={{{k}}}: {a:?}", k.n())
        })?;
        count += 1;
    }
    let elapsed = start.elapsed();
    within(elapsed, GAMMA_SWEEP_LIMIT)?;
    Ok(format!("{count} subsets, n <= {GAMMA_SWEEP_MAX_N}, three methods agree and are nonnegative in {elapsed:.2?}"))
}

fn eulerian_specialization() -> Verdict {
    let b = Bound::default();
    for n in 1..=EULERIAN_MAX_N {
        let k = KSubset::empty(n).unwrap();
        let h = h_poly_partitioned(&k, b).map_err(|e| e.to_string())?;
        let a = eulerian(n, b).map_err(|e| e.to_string())?;
        ensure(h == a, || format!("n={n}: h = {h}, A_n = {a}"))?;
        let mut by_des = vec![0i64; (n - 1) / 2 + 1];
        for w in all_permutations(n).filter(Permutation::is_tilde) {
            by_des[w.des()] += 1;
        }
        let g = gamma_partitioned(&k, GammaMethod::Hpoly, b).map_err(|e| e.to_string())?;
        ensure(g.entries() == by_des.as_slice(), || {
            format!("n={n}: {:?} vs {by_des:?}", g.entries())
        })?;
    }
    Ok(format!(
        "K = {{}} gives A_n and tilde-S_n descent counts, n <= {EULERIAN_MAX_N}"
    ))
}

fn face_and_cube() -> Verdict {
    let b = Bound::default();
    for n in 1..=EULERIAN_MAX_N {
        let f = permutohedron_f_vector(n, b).map_err(|e| e.to_string())?;
        let h = f_to_h(&f, n - 1).map_err(|e| e.to_string())?;
        let a = eulerian(n, b).map_err(|e| e.to_string())?;
        ensure(h == a, || format!("n={n}: f_to_h = {h}, A_n = {a}"))?;
        let cube = h_poly_partitioned(&KSubset::full(n).unwrap(), b).map_err(|e| e.to_string())?;
        let expected = IntPolynomial::one_plus_t_pow(n - 1).unwrap();
        ensure(cube == expected, || format!("n={n}: h = {cube}"))?;
    }
    Ok(format!(
        "f_to_h(f(P_n)) = A_n and K = [n-1] gives (1+t)^(n-1), n <= {EULERIAN_MAX_N}"
    ))
}

fn bijection() -> Verdict {
    let start = Instant::now();
    let mut count = 0;
    for k in subsets(BIJECTION_MAX_N) {
        let o = bijection_suite(&k, Bound::default());
        suite_ok(&o, format_args!("n={} K={{{k}}}", k.n()))?;
        for flag in [
            "j_lands_in_w_of_k",
            "des_preserved",
            "inverse_after_theta",
            "theta_after_inverse",
            "hop_sizes_sum_to_w_of_k",
            "image_is_w_of_k",
        ] {
            ensure(o.flags.contains_key(flag), || {
                format!("n={} K={{{k}}}: {flag} never checked", k.n())
            })?;
        }
        count += 1;
    }
    let elapsed = start.elapsed();
    within(elapsed, BIJECTION_LIMIT)?;
    Ok(format!(
        "{count} subsets, n <= {BIJECTION_MAX_N}, zero counterexamples in {elapsed:.2?}"
    ))
}

fn hop_classes() -> Verdict {
    for n in 1..=HOP_MAX_N {
        let o = hop_suite(n, Bound::default());
        suite_ok(&o, format_args!("n={n}"))?;
        ensure(o.flags.contains_key("classes_cover_s_n"), || {
            "no class checked".into()
        })?;
    }
    Ok(format!(
        "every class matches t^pk (1+t)^(n-1-2pk) and classes partition S_n, n <= {HOP_MAX_N}"
    ))
}

fn rsk_suite() -> Verdict {
    let mut failure = None;
    let mut check = |letters: &[usize]| {
        if failure.is_some() {
            return;
        }
        let v = Word::new(letters.to_vec()).unwrap();
        let o = rsk_word_checks(&v);
        if let Err(e) = suite_ok(&o, format_args!("v={v}")) {
            failure = Some(e);
        }
    };
    for_each_word(4, 3, &mut check);
    for_each_word(6, 2, &mut check);
    for_each_word(5, 3, &mut check);
    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_WORD_SEED);
    for _ in 0..RANDOM_WORDS {
        let len = rng.gen_range(1..=12);
        let m = rng.gen_range(1..=6);
        let letters: Vec<usize> = (0..len).map(|_| rng.gen_range(1..=m)).collect();
        check(&letters);
    }
    if let Some(e) = failure {
        return Err(e);
    }
    let (p, q) = rsk(&"23132".parse().unwrap());
    let rows = |t: &YoungTableau| t.rows().to_vec();
    ensure(rows(&p) == [vec![1, 2, 3], vec![2, 3]], || {
        format!("P = {p:?}")
    })?;
    ensure(rows(&q) == [vec![1, 2, 4], vec![3, 5]], || {
        format!("Q = {q:?}")
    })?;
    Ok(format!(
        "roundtrip on [3]^4, [2]^6 and {RANDOM_WORDS} seeded random words; Des/content on [3]^5; 23132 exact"
    ))
}

fn rep_gamma_check() -> Verdict {
    let b = Bound::default();
    for k in subsets(REP_GAMMA_MAX_N) {
        let hat = rep_gamma(&k, TableauVariant::Hat, b).map_err(|e| e.to_string())?;
        let [g, _, _] = gammas(&k)?;
        ensure(hat.entries() == g.as_slice(), || {
            format!("n={} K={{{k}}}: rep {:?} vs {g:?}", k.n(), hat.entries())
        })?;
    }
    for k in subsets(HAT_TILDE_MAX_N) {
        let hat = rep_gamma(&k, TableauVariant::Hat, b).map_err(|e| e.to_string())?;
        let tilde = rep_gamma(&k, TableauVariant::Tilde, b).map_err(|e| e.to_string())?;
        ensure(hat == tilde, || {
            format!("n={} K={{{k}}}: {hat:?} vs {tilde:?}", k.n())
        })?;
    }
    // Evacuation carries hat tableaux onto tilde tableaux, keeping shape and des.
    for n in 1..=HAT_TILDE_MAX_N {
        let hat = enumerate_all_syt(n, Filter::Hat, b).map_err(|e| e.to_string())?;
        let mut tilde = enumerate_all_syt(n, Filter::Tilde, b).map_err(|e| e.to_string())?;
        let mut image = Vec::new();
        for q in &hat {
            let e = evacuation(q).map_err(|e| e.to_string())?;
            let des = |t: &YoungTableau| tableau_descent_set(t).unwrap().len();
            ensure(e.shape() == q.shape() && des(&e) == des(q), || {
                format!("evac {q:?} = {e:?}")
            })?;
            image.push(e);
        }
        image.sort();
        tilde.sort();
        ensure(image == tilde, || {
            format!("n={n}: evacuation does not biject hat onto tilde")
        })?;
    }
    Ok(format!(
        "Kostka-weighted gamma = gamma for n <= {REP_GAMMA_MAX_N}; hat and tilde variants agree via evacuation, n <= {HAT_TILDE_MAX_N}"
    ))
}

fn phi_check() -> Verdict {
    let k = KSubset::new(7, vec![1, 2, 4, 6]).unwrap();
    let w = phi(&"3231211".parse().unwrap(), &k).map_err(|e| e.to_string())?;
    ensure(w == "6471523".parse().unwrap(), || {
        format!("phi(3231211) = {w}")
    })?;
    for k in subsets(PHI_MAX_N) {
        suite_ok(
            &phi_suite(&k, Bound::default()),
            format_args!("n={} K={{{k}}}", k.n()),
        )?;
    }
    Ok(format!(
        "descent-preserving bijection onto hat-W^K for n <= {PHI_MAX_N}; phi(3231211) = 6471523"
    ))
}

type Criterion = (&'static str, fn() -> Verdict);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("1 worked example", worked_example),
        ("2 gamma methods agree", gamma_sweep),
        ("3 Eulerian specialization", eulerian_specialization),
        ("4 face numbers and cube", face_and_cube),
        ("5 bijection suite", bijection),
        ("6 hop-class identity", hop_classes),
        ("7 RSK suite", rsk_suite),
        ("8 Kostka-weighted gamma", rep_gamma_check),
        ("9 standardization bijection", phi_check),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(msg) => println!("PASS  criterion {name}: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL  criterion {name}: {msg}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
