//! `permgamma`: h-polynomials, gamma vectors and their combinatorial models
//! for partitioned permutohedra, from the command line.
//!
//! Exit status: 0 on success, 1 when a verification sweep finds a
//! counterexample, 2 on usage, parse or bound errors.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use permgamma::hopping::hop_class;
use permgamma::parabolic::{enumerate_w_of_k, enumerate_w_upper_k, DEFAULT_MAX_N};
use permgamma::poly::{gamma_expand, gamma_partitioned, h_poly_partitioned};
use permgamma::tableaux::{enumerate_syt, rsk, tableau_descent_set, Partition, YoungTableau};
use permgamma::theta::trace;
use permgamma::verify::{verify, Checks, VerificationReport};
use permgamma::{Bound, Filter, GammaMethod, KSubset, Permutation, Word};

#[derive(Parser)]
#[command(
    name = "permgamma",
    version,
    about = "Exact h-polynomials, gamma vectors and their combinatorial models"
)]
struct Cli {
    /// Worker threads for parallel sweeps (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Largest rank accepted by exhaustive enumerations.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_N)]
    bound: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    /// Minimal coset representatives W^K.
    Wk,
    /// The set W(K).
    Wofk,
    /// The valley-hopping class of --seed.
    Hopclass,
    /// Standard Young tableaux of --shape.
    Syt,
}

#[derive(Subcommand)]
enum Command {
    /// h-polynomial and gamma vector of P_n(K).
    Gamma {
        #[arg(long)]
        n: usize,
        /// Comma-separated subset of [n-1]; empty means the empty set.
        #[arg(long = "K", default_value = "", allow_hyphen_values = true)]
        k: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Also report each of the three gamma computations.
        #[arg(long)]
        all_methods: bool,
    },
    /// Exhaustive verification sweep over every K for n = 1 ..= max-n.
    Verify {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        /// `all` or a comma list of gamma, bijection, hop, rsk, kostka, phi.
        #[arg(long, default_value = "all")]
        checks: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Attach elapsed times under "metadata".
        #[arg(long)]
        timings: bool,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List permutations or tableaux in a fixed order.
    Enumerate {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long = "K", default_value = "")]
        k: String,
        #[arg(long, default_value = "all")]
        filter: String,
        /// Seed permutation for `hopclass`.
        #[arg(long)]
        seed: Option<String>,
        /// Partition for `syt`, e.g. `3,2`.
        #[arg(long)]
        shape: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// RSK insertion and recording tableaux of a word.
    Rsk {
        #[arg(long)]
        word: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Every intermediate step of the bijection between hop classes and W(K), from v in W(K).
    Trace {
        #[arg(long)]
        word: String,
        #[arg(long = "K", default_value = "")]
        k: String,
    },
}

enum Failure {
    Usage(String),
    Verification,
}

impl From<permgamma::Error> for Failure {
    fn from(e: permgamma::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let bound = Bound(cli.bound);
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Gamma {
            n,
            k,
            format,
            all_methods,
        } => cmd_gamma(&mut out, n, &k, format, all_methods, bound),
        Command::Verify {
            max_n,
            checks,
            format,
            timings,
            out: path,
        } => {
            let checks: Checks = checks.parse()?;
            let report = verify(max_n, &checks, bound, timings)?;
            let mut buf = Vec::new();
            render_report(&mut buf, &report, format)?;
            match path {
                Some(p) => fs::write(p, &buf)?,
                None => out.write_all(&buf)?,
            }
            if let Some(c) = &report.first_counterexample {
                eprintln!("counterexample: {}", serde_json::to_string(c)?);
            }
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Verification)
            }
        }
        Command::Enumerate {
            kind,
            n,
            k,
            filter,
            seed,
            shape,
            format,
        } => cmd_enumerate(&mut out, kind, n, &k, &filter, seed, shape, format, bound),
        Command::Rsk { word, format } => cmd_rsk(&mut out, &word, format),
        Command::Trace { word, k } => {
            let v: Permutation = word.parse()?;
            let k = KSubset::parse(v.len(), &k)?;
            if !permgamma::parabolic::is_in_w_of_k(&v, &k)? {
                return Err(Failure::Usage(format!(
                    "{v} is not in W(K) for K = {{{k}}}"
                )));
            }
            serde_json::to_writer_pretty(&mut out, &trace(&v, &k)?)?;
            writeln!(out)?;
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct GammaOutput {
    h: Vec<i64>,
    gamma: Vec<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    methods: Option<MethodGammas>,
}

#[derive(Serialize)]
struct MethodGammas {
    hpoly: Vec<i64>,
    tilde: Vec<i64>,
    hat: Vec<i64>,
}

fn cmd_gamma(
    out: &mut impl Write,
    n: usize,
    k: &str,
    format: Format,
    all: bool,
    bound: Bound,
) -> Result<(), Failure> {
    bound.check(n)?;
    let k = KSubset::parse(n, k)?;
    let h = h_poly_partitioned(&k, bound)?;
    let gamma = gamma_expand(&h, n - 1)?;
    let mut h_coeffs = h.coeffs().to_vec();
    h_coeffs.resize(n, 0);
    let methods = if all {
        let get = |m| gamma_partitioned(&k, m, bound).map(|g| g.entries().to_vec());
        Some(MethodGammas {
            hpoly: get(GammaMethod::Hpoly)?,
            tilde: get(GammaMethod::Tilde)?,
            hat: get(GammaMethod::Hat)?,
        })
    } else {
        None
    };
    let result = GammaOutput {
        h: h_coeffs,
        gamma: gamma.entries().to_vec(),
        methods,
    };
    match format {
        Format::Json => {
            serde_json::to_writer(&mut *out, &result)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["n", "K", "method", "j", "gamma"])?;
            let mut rows = vec![("hpoly", &result.gamma)];
            if let Some(m) = &result.methods {
                rows = vec![("hpoly", &m.hpoly), ("tilde", &m.tilde), ("hat", &m.hat)];
            }
            for (method, g) in rows {
                for (j, x) in g.iter().enumerate() {
                    w.write_record([
                        n.to_string(),
                        k.to_string(),
                        method.into(),
                        j.to_string(),
                        x.to_string(),
                    ])?;
                }
            }
            w.flush()?;
        }
        Format::Plain => {
            writeln!(out, "n = {n}, K = {{{k}}}")?;
            writeln!(out, "h = {h}")?;
            writeln!(out, "gamma = {:?}", result.gamma)?;
            if let Some(m) = &result.methods {
                writeln!(out, "gamma[hpoly] = {:?}", m.hpoly)?;
                writeln!(out, "gamma[tilde] = {:?}", m.tilde)?;
                writeln!(out, "gamma[hat] = {:?}", m.hat)?;
            }
        }
    }
    Ok(())
}

fn render_report(
    out: &mut Vec<u8>,
    report: &VerificationReport,
    format: Format,
) -> Result<(), Failure> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, report)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["n", "K", "method", "j", "gamma"])?;
            for r in &report.records {
                let Some(g) = &r.gamma else { continue };
                for (method, entries) in [("hpoly", &g.hpoly), ("tilde", &g.tilde), ("hat", &g.hat)]
                {
                    for (j, x) in entries.iter().enumerate() {
                        w.write_record([
                            r.n.to_string(),
                            r.k.to_string(),
                            method.into(),
                            j.to_string(),
                            x.to_string(),
                        ])?;
                    }
                }
            }
            w.flush()?;
        }
        Format::Plain => {
            for r in &report.records {
                let status = if r.pass { "pass" } else { "FAIL" };
                let gamma = r
                    .gamma
                    .as_ref()
                    .map(|g| format!(" gamma={:?}", g.hpoly))
                    .unwrap_or_default();
                writeln!(
                    out,
                    "{status} n={} K={{{}}} |W(K)|={}{gamma}",
                    r.n, r.k, r.counts.w_of_k
                )?;
            }
            for r in &report.size_records {
                let status = if r.pass { "pass" } else { "FAIL" };
                writeln!(out, "{status} n={} ({} flags)", r.n, r.flags.len())?;
            }
            let s = &report.summary;
            writeln!(
                out,
                "{} records, {} flags checked, {} failed: {}",
                s.subset_records + s.size_records,
                s.flags_checked,
                s.flags_failed,
                if s.pass { "PASS" } else { "FAIL" }
            )?;
        }
    }
    Ok(())
}

fn tableau_plain(t: &YoungTableau) -> String {
    t.rows()
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join(" / ")
}

#[allow(clippy::too_many_arguments)]
fn cmd_enumerate(
    out: &mut impl Write,
    kind: Kind,
    n: Option<usize>,
    k: &str,
    filter: &str,
    seed: Option<String>,
    shape: Option<String>,
    format: Format,
    bound: Bound,
) -> Result<(), Failure> {
    let filter: Filter = filter.parse()?;
    let need_n = || n.ok_or_else(|| Failure::Usage("--n is required for this kind".into()));
    match kind {
        Kind::Wk | Kind::Wofk | Kind::Hopclass => {
            let perms = match kind {
                Kind::Wk => enumerate_w_upper_k(&KSubset::parse(need_n()?, k)?, filter, bound)?,
                Kind::Wofk => {
                    let all = enumerate_w_of_k(&KSubset::parse(need_n()?, k)?, bound)?;
                    all.into_iter().filter(|w| filter.accepts(w)).collect()
                }
                _ => {
                    let seed = seed
                        .ok_or_else(|| Failure::Usage("--seed is required for hopclass".into()))?;
                    let w: Permutation = seed.parse()?;
                    hop_class(&w, bound)?.members().to_vec()
                }
            };
            write_perms(out, &perms, format)
        }
        Kind::Syt => {
            let shape: Partition = shape
                .ok_or_else(|| Failure::Usage("--shape is required for syt".into()))?
                .parse()?;
            let tableaux = enumerate_syt(&shape, filter, bound)?;
            match format {
                Format::Json => {
                    serde_json::to_writer(&mut *out, &tableaux)?;
                    writeln!(out)?;
                }
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(out);
                    w.write_record(["index", "rows", "descents"])?;
                    for (i, t) in tableaux.iter().enumerate() {
                        let des = tableau_descent_set(t)?;
                        let des: Vec<String> = des.iter().map(|d| d.to_string()).collect();
                        w.write_record([i.to_string(), tableau_plain(t), des.join(" ")])?;
                    }
                    w.flush()?;
                }
                Format::Plain => {
                    for t in &tableaux {
                        writeln!(out, "{}", tableau_plain(t))?;
                    }
                }
            }
            Ok(())
        }
    }
}

fn write_perms(out: &mut impl Write, perms: &[Permutation], format: Format) -> Result<(), Failure> {
    match format {
        Format::Json => {
            serde_json::to_writer(&mut *out, perms)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["permutation", "des"])?;
            for p in perms {
                w.write_record([p.to_string(), p.des().to_string()])?;
            }
            w.flush()?;
        }
        Format::Plain => {
            for p in perms {
                writeln!(out, "{p}")?;
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct RskOutput {
    word: Word,
    #[serde(rename = "P")]
    p: YoungTableau,
    #[serde(rename = "Q")]
    q: YoungTableau,
    shape: Partition,
    descents: Vec<usize>,
}

fn cmd_rsk(out: &mut impl Write, word: &str, format: Format) -> Result<(), Failure> {
    let word: Word = word.parse()?;
    let (p, q) = rsk(&word);
    let result = RskOutput {
        shape: p.shape(),
        descents: tableau_descent_set(&q)?,
        word,
        p,
        q,
    };
    match format {
        Format::Json => {
            serde_json::to_writer(&mut *out, &result)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["word", "P", "Q", "shape", "descents"])?;
            let join = |xs: &[usize]| {
                xs.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            w.write_record([
                result.word.to_string(),
                tableau_plain(&result.p),
                tableau_plain(&result.q),
                join(result.shape.parts()),
                join(&result.descents),
            ])?;
            w.flush()?;
        }
        Format::Plain => {
            writeln!(out, "P = {}", tableau_plain(&result.p))?;
            writeln!(out, "Q = {}", tableau_plain(&result.q))?;
            writeln!(out, "shape = {:?}", result.shape.parts())?;
            writeln!(out, "Des(Q) = {:?}", result.descents)?;
        }
    }
    Ok(())
}
