use anyhow::{anyhow, bail, Result};
use clap::{Parser, Subcommand, ValueEnum};
use cohsys::certify::{
    certify_empty_ext_high, certify_empty_ext_low, certify_empty_special, certify_large_alpha,
    Certificate,
};
use cohsys::formulas::{beta, c21, ext1_dim};
use cohsys::knowledge::conjecture::{conjecture_scan, Verdict};
use cohsys::lab::{sample_system, violation_search, violation_search_exact};
use cohsys::rat::Rat;
use cohsys::types::{SystemType, TypeTriple};
use cohsys::Classifier;
use cohsys_cli::cache::Cache;
use cohsys_cli::record::{render_table, ResultRecord, CSV_HEADER};
use cohsys_cli::sweep::{enumerate, parse_krange, parse_range, DegreeSpec, SweepSpec};
use rayon::prelude::*;
use serde::Serialize;
use std::io::Write;
use std::path::PathBuf;

/// Where the stability parameter admits stable coherent systems on the
/// projective line: exact classification, certificates, and random sampling.
#[derive(Parser)]
#[command(name = "cohsys", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Mode {
    Classify,
    Certify,
    Conjectures,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Which {
    /// Counting certificate for nonemptiness at every large weight.
    LargeAlpha,
    /// Extension-count and pathology certificates for emptiness at every weight.
    Empty,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify one type: status, certified window, citations.
    ///
    /// Exit code 0 for EXACT or EMPTY_ALL, 10 for PARTIAL, 11 for UNKNOWN.
    Classify {
        n: i64,
        d: i64,
        k: i64,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        /// JSON-lines result cache, reused and updated.
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Classify, certify or scan a whole lattice of types.
    Sweep {
        /// Rank range, e.g. `2..=6` or `4`.
        #[arg(long)]
        n: String,
        /// Degree range, e.g. `-2..=12`. Mutually exclusive with --a/--t.
        #[arg(long)]
        d: Option<String>,
        /// Degree quotient range for d = a*n - t.
        #[arg(long)]
        a: Option<String>,
        /// Degree remainder range; defaults to all t in [0, n-1].
        #[arg(long)]
        t: Option<String>,
        /// Section-count range; endpoints may be relative: `n+1..=an-1`.
        #[arg(long)]
        k: String,
        #[arg(long, value_enum, default_value = "classify")]
        mode: Mode,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// JSON-lines result cache (classify mode only); hits skip recomputation.
        #[arg(long)]
        cache: Option<PathBuf>,
        /// Worker threads; 0 picks the machine default.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Write records here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one certificate check. Exit code 0 on success, 1 on failure.
    Certify {
        n: i64,
        d: i64,
        k: i64,
        #[arg(value_enum)]
        which: Which,
    },
    /// Sample a random system of the type and hunt destabilizing subsystems.
    Sample {
        n: i64,
        d: i64,
        k: i64,
        /// Stability weight as an exact rational, e.g. `9/10`.
        alpha: String,
        budget: u64,
        seed: u64,
        /// Rational-only linear algebra (skips the modular fast path).
        #[arg(long)]
        exact: bool,
    },
    /// Pairing and extension-space dimensions between two types.
    Extdim {
        n2: i64,
        d2: i64,
        k2: i64,
        n1: i64,
        d1: i64,
        k1: i64,
        /// Dimension of the morphism space to subtract.
        #[arg(long, default_value_t = 0)]
        hom: i64,
    },
    /// Expected dimension of the moduli space of the type.
    Beta { n: i64, d: i64, k: i64 },
    /// Scan a lattice for existence-prediction regressions; prints the
    /// flagged rows. Exit code 1 if any point contradicts the prediction.
    Conjectures {
        #[arg(long)]
        n: String,
        #[arg(long)]
        a: String,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli.cmd) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            2
        }
    };
    std::process::exit(code);
}

fn run(cmd: Cmd) -> Result<i32> {
    match cmd {
        Cmd::Classify { n, d, k, format, cache } => cmd_classify(n, d, k, format, cache),
        Cmd::Sweep { n, d, a, t, k, mode, format, cache, jobs, out } => {
            cmd_sweep(n, d, a, t, k, mode, format, cache, jobs, out)
        }
        Cmd::Certify { n, d, k, which } => cmd_certify(n, d, k, which),
        Cmd::Sample { n, d, k, alpha, budget, seed, exact } => {
            cmd_sample(n, d, k, &alpha, budget, seed, exact)
        }
        Cmd::Extdim { n2, d2, k2, n1, d1, k1, hom } => {
            let e = ext1_dim(&TypeTriple::new(n2, d2, k2), &TypeTriple::new(n1, d1, k1), hom)?;
            let c = c21(&TypeTriple::new(n2, d2, k2), &TypeTriple::new(n1, d1, k1));
            println!("{}", serde_json::json!({ "c21": c, "hom": hom, "ext1": e }));
            Ok(0)
        }
        Cmd::Beta { n, d, k } => {
            println!("{}", beta(n, d, k));
            Ok(0)
        }
        Cmd::Conjectures { n, a, format } => cmd_conjectures(&n, &a, format),
    }
}

fn status_code(status: &str) -> i32 {
    match status {
        "EXACT" | "EMPTY_ALL" => 0,
        "PARTIAL" => 10,
        _ => 11,
    }
}

fn write_records(records: &[ResultRecord], format: Format, out: &mut dyn Write) -> Result<()> {
    match format {
        Format::Json => {
            for rec in records {
                writeln!(out, "{}", rec.to_json())?;
            }
        }
        Format::Csv => {
            writeln!(out, "{CSV_HEADER}")?;
            for rec in records {
                writeln!(out, "{}", rec.to_csv_row())?;
            }
        }
        Format::Table => writeln!(out, "{}", render_table(records))?,
    }
    Ok(())
}

fn cmd_classify(n: i64, d: i64, k: i64, format: Format, cache: Option<PathBuf>) -> Result<i32> {
    let sys = SystemType::new(n, d, k)?;
    let rec = match cache {
        Some(path) => {
            let mut cache = Cache::load(&path);
            match cache.get(n, d, k) {
                Some(hit) => hit.clone(),
                None => {
                    let rec = ResultRecord::classify(&Classifier::new(), &sys, false);
                    cache.insert(rec.clone());
                    cache.save(&path)?;
                    rec
                }
            }
        }
        None => ResultRecord::classify(&Classifier::new(), &sys, false),
    };
    write_records(std::slice::from_ref(&rec), format, &mut std::io::stdout().lock())?;
    Ok(status_code(&rec.status))
}

#[derive(Serialize)]
struct CertifyRow {
    n: i64,
    d: i64,
    k: i64,
    large_alpha: Option<bool>,
    empty_high: Option<bool>,
    empty_low: Option<bool>,
    empty_special: bool,
}

const CERTIFY_HEADER: &str = "n,d,k,large_alpha,empty_high,empty_low,empty_special";

impl CertifyRow {
    fn compute(sys: &SystemType) -> CertifyRow {
        let ok = |c: std::result::Result<Certificate, _>| c.ok().map(|c| c.success);
        CertifyRow {
            n: sys.n,
            d: sys.d,
            k: sys.k,
            large_alpha: ok(certify_large_alpha(sys)),
            empty_high: ok(certify_empty_ext_high(sys)),
            empty_low: ok(certify_empty_ext_low(sys)),
            empty_special: certify_empty_special(sys).success,
        }
    }

    fn to_csv_row(&self) -> String {
        let cell = |v: Option<bool>| v.map(|b| b.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{}",
            self.n,
            self.d,
            self.k,
            cell(self.large_alpha),
            cell(self.empty_high),
            cell(self.empty_low),
            self.empty_special
        )
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_sweep(
    n: String,
    d: Option<String>,
    a: Option<String>,
    t: Option<String>,
    k: String,
    mode: Mode,
    format: Format,
    cache: Option<PathBuf>,
    jobs: usize,
    out: Option<PathBuf>,
) -> Result<i32> {
    let deg = match (&d, &a) {
        (Some(d), None) => {
            if t.is_some() {
                bail!("--t only combines with --a");
            }
            DegreeSpec::Direct(parse_range(d)?)
        }
        (None, Some(a)) => DegreeSpec::Shape {
            a: parse_range(a)?,
            t: t.as_deref().map(parse_range).transpose()?,
        },
        _ => bail!("pass exactly one of --d and --a"),
    };
    let spec = SweepSpec { n: parse_range(&n)?, deg, k: parse_krange(&k)? };
    let points = enumerate(&spec);
    if points.is_empty() {
        bail!("sweep selects no valid types");
    }
    if cache.is_some() && mode != Mode::Classify {
        bail!("--cache applies to classify sweeps only");
    }

    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?;
    let mut sink: Box<dyn Write> = match &out {
        Some(path) => Box::new(std::io::BufWriter::new(std::fs::File::create(path)?)),
        None => Box::new(std::io::BufWriter::new(std::io::stdout())),
    };

    match mode {
        Mode::Classify | Mode::Conjectures => {
            let with_scan = mode == Mode::Conjectures;
            let mut store = cache.as_ref().map(|p| Cache::load(p));
            let mut records: Vec<Option<ResultRecord>> = points
                .iter()
                .map(|s| store.as_ref().and_then(|c| c.get(s.n, s.d, s.k)).cloned())
                .collect();
            let hits = records.iter().filter(|r| r.is_some()).count();
            let missing: Vec<usize> =
                (0..points.len()).filter(|&i| records[i].is_none()).collect();
            let cl = Classifier::new();
            let fresh: Vec<(usize, ResultRecord)> = pool.install(|| {
                missing
                    .par_iter()
                    .map(|&i| (i, ResultRecord::classify(&cl, &points[i], with_scan)))
                    .collect()
            });
            for (i, rec) in fresh {
                records[i] = Some(rec);
            }
            let records: Vec<ResultRecord> = records.into_iter().map(Option::unwrap).collect();
            if let (Some(store), Some(path)) = (store.as_mut(), cache.as_ref()) {
                for rec in &records {
                    store.insert(rec.clone());
                }
                store.save(path)?;
            }
            write_records(&records, format, &mut sink)?;
            sink.flush()?;
            let count = |s: &str| records.iter().filter(|r| r.status == s).count();
            eprintln!(
                "{} types: {} EXACT, {} EMPTY_ALL, {} PARTIAL, {} UNKNOWN ({} cached)",
                records.len(),
                count("EXACT"),
                count("EMPTY_ALL"),
                count("PARTIAL"),
                count("UNKNOWN"),
                hits
            );
        }
        Mode::Certify => {
            let rows: Vec<CertifyRow> =
                pool.install(|| points.par_iter().map(CertifyRow::compute).collect());
            match format {
                Format::Json => {
                    for row in &rows {
                        writeln!(sink, "{}", serde_json::to_string(row)?)?;
                    }
                }
                _ => {
                    writeln!(sink, "{CERTIFY_HEADER}")?;
                    for row in &rows {
                        writeln!(sink, "{}", row.to_csv_row())?;
                    }
                }
            }
            sink.flush()?;
            let hit = |f: fn(&CertifyRow) -> Option<bool>| {
                rows.iter().filter(|r| f(r) == Some(true)).count()
            };
            eprintln!(
                "{} types: {} large-alpha, {} ext-high, {} ext-low, {} special",
                rows.len(),
                hit(|r| r.large_alpha),
                hit(|r| r.empty_high),
                hit(|r| r.empty_low),
                rows.iter().filter(|r| r.empty_special).count()
            );
        }
    }
    Ok(0)
}

fn cmd_certify(n: i64, d: i64, k: i64, which: Which) -> Result<i32> {
    let sys = SystemType::new(n, d, k)?;
    match which {
        Which::LargeAlpha => {
            let cert = certify_large_alpha(&sys)?;
            println!("{}", serde_json::to_string_pretty(&cert)?);
            Ok(if cert.success { 0 } else { 1 })
        }
        Which::Empty => {
            let attempts: Vec<Certificate> = [
                certify_empty_ext_high(&sys).ok(),
                certify_empty_ext_low(&sys).ok(),
                Some(certify_empty_special(&sys)),
            ]
            .into_iter()
            .flatten()
            .collect();
            if let Some(cert) = attempts.iter().find(|c| c.success) {
                println!("{}", serde_json::to_string_pretty(cert)?);
                Ok(0)
            } else if attempts.is_empty() {
                bail!("no emptiness certificate applies to ({n}, {d}, {k})");
            } else {
                println!("{}", serde_json::to_string_pretty(&attempts)?);
                Ok(1)
            }
        }
    }
}

fn cmd_sample(
    n: i64,
    d: i64,
    k: i64,
    alpha: &str,
    budget: u64,
    seed: u64,
    exact: bool,
) -> Result<i32> {
    let alpha: Rat = alpha.parse()?;
    if !alpha.is_positive() {
        bail!("weight must be positive");
    }
    let sys = sample_system(n, d, k, seed).map_err(|e| anyhow!("sampling failed: {e}"))?;
    let report = if exact {
        violation_search_exact(&sys, &alpha, budget, seed)
    } else {
        violation_search(&sys, &alpha, budget, seed)
    };
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(0)
}

fn cmd_conjectures(n: &str, a: &str, format: Format) -> Result<i32> {
    let nr = parse_range(n)?;
    let ar = parse_range(a)?;
    let cl = Classifier::new();
    let mut confirmed = 0u64;
    let mut open = 0u64;
    let mut contradicted = 0u64;
    let mut flagged = Vec::new();
    for n in nr.lo.max(2)..=nr.hi {
        for a in ar.lo..=ar.hi {
            for t in 1..n {
                let d = a * n - t;
                for k in n..=((a + 1) * n) {
                    let Ok(sys) = SystemType::new(n, d, k) else { continue };
                    let Ok(rep) = conjecture_scan(&cl, &sys) else { continue };
                    match rep.verdict {
                        Verdict::Confirmed => confirmed += 1,
                        Verdict::Open => open += 1,
                        Verdict::Contradicted => contradicted += 1,
                    }
                    if !rep.flags.is_empty() || rep.verdict == Verdict::Contradicted {
                        flagged.push(ResultRecord::classify(&cl, &sys, true));
                    }
                }
            }
        }
    }
    write_records(&flagged, format, &mut std::io::stdout().lock())?;
    eprintln!(
        "scanned {} points: {confirmed} confirmed, {open} open, {contradicted} contradicted; {} flagged",
        confirmed + open + contradicted,
        flagged.len()
    );
    Ok(if contradicted > 0 { 1 } else { 0 })
}
