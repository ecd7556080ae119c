use std::collections::BTreeSet;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use slgalois::error::{Error, Result};
use slgalois::experiments::{
    census_genericity, equidist_report, fit_exponent, gallagher_census, GallagherMode,
};
use slgalois::galois::{classical_criterion, exact_oracle_small_degree, jordan_certificate};
use slgalois::lattice::{
    checkpoint_line, count_suffix, first_rows, parse_checkpoint, BallSpec,
};
use slgalois::poly::parse_poly;
use slgalois::report::{atomic_write, census_csv, CensusReport, FitSummary, Meta};
use slgalois::sieve::{
    admissible_primes, class_density_exact, compute_m, compute_v, exponent_bounds, rational_f64,
    rational_str, sifted_count, sieve_upper_bound, sl_group_order, ExponentInputs, SieveParams,
    SieveReport,
};

#[derive(Parser)]
#[command(name = "slgalois", version, about = "Height-ball enumeration in SL_d(Z), splitting-field certification, and explicit sieve bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonCaps {
    /// Abort if the ball holds more than this many elements.
    #[arg(long, default_value_t = 100_000_000_000)]
    cap: u64,
    /// Worker threads for parallel counting (default: single-threaded).
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Count elements of the ball H(gamma) <= T in SL_d(Z).
    Count {
        #[arg(long)]
        d: usize,
        /// T^2 as an exact rational, e.g. 9/4.
        #[arg(long)]
        t2: String,
        #[command(flatten)]
        caps: CommonCaps,
        /// Split the first-row shards into this many groups.
        #[arg(long)]
        shards: Option<u64>,
        /// Which shard group to run (0-based, with --shards).
        #[arg(long)]
        shard_index: Option<u64>,
        /// Checkpoint file: one line per completed first-row shard.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Merge the given checkpoint files and print the combined count.
        #[arg(long, num_args = 1.., value_name = "FILE")]
        merge: Option<Vec<PathBuf>>,
    },
    /// Genericity census: verdict counts per radius, CSV rows plus fits.
    Census {
        #[arg(long)]
        d: usize,
        /// Comma-separated list of radii T as rationals, e.g. 5,10,25/2.
        #[arg(long, value_name = "T,T,...")]
        t_list: String,
        /// Prime scan bound for the coverage certificate.
        #[arg(long = "L", default_value_t = 1000)]
        l: u64,
        /// Skip the oracle-vs-certificate cross-check (d <= 3 only).
        #[arg(long)]
        no_crosscheck: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// CSV output path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// JSON report path (meta + rows + fits).
        #[arg(long)]
        json: Option<PathBuf>,
        #[command(flatten)]
        caps: CommonCaps,
    },
    /// Certify the Galois group of the splitting field of a monic polynomial.
    Certify {
        /// Monic integer polynomial in x, e.g. "x^3-x-1".
        #[arg(long)]
        poly: String,
        /// Prime scan bound.
        #[arg(long = "L", default_value_t = 200)]
        l: u64,
        /// Certification route: jordan, classical, or oracle (deg <= 3).
        #[arg(long, default_value = "jordan")]
        method: String,
    },
    /// Evaluate the large-sieve upper bound for one cycle-type class.
    SieveBound {
        #[arg(long)]
        d: usize,
        /// T^2 as an exact rational.
        #[arg(long)]
        t2: String,
        /// Target cycle type, e.g. "2,1".
        #[arg(long)]
        class: String,
        /// Sieve prime bound L.
        #[arg(long = "L", default_value_t = 7)]
        l: u64,
        /// Primes to exclude, comma-separated.
        #[arg(long, default_value = "")]
        exclude: String,
        /// Max primes per square-free ideal.
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Holder exponent a, rational in (0,1].
        #[arg(long, default_value = "1")]
        a: String,
        /// Integrability surrogate 2*n_e.
        #[arg(long, default_value_t = 2)]
        two_ne: u32,
        /// Spectral constant C in the bound.
        #[arg(long, default_value_t = 1.0)]
        fitted_c: f64,
        /// Exponent rho as a rational; default rho_sup/2.
        #[arg(long)]
        rho: Option<String>,
        /// Cap on |SL_d(F_p)| for exact density enumeration.
        #[arg(long, default_value_t = 10_000_000)]
        group_cap: u64,
        /// JSON output path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        caps: CommonCaps,
    },
    /// Deviation of ball fibers mod p from the uniform prediction.
    Equidist {
        #[arg(long)]
        d: usize,
        /// Radius T as a rational.
        #[arg(long)]
        t: String,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 10_000_000)]
        group_cap: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        caps: CommonCaps,
    },
    /// Census over monic polynomials with coefficients in a box.
    Gallagher {
        #[arg(long)]
        d: usize,
        /// Coefficient bound: |a_i| <= T.
        #[arg(long)]
        t: u64,
        /// Sample this many polynomials instead of the full box.
        #[arg(long)]
        sample: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "L", default_value_t = 1000)]
        l: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        caps: CommonCaps,
    },
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Invalid(format!("bad rational {s:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Invalid(format!("bad rational {s:?}")))?;
    if den == BigInt::from(0) {
        return Err(Error::Invalid(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(num, den))
}

fn parse_rational_list(s: &str) -> Result<Vec<BigRational>> {
    s.split(',').map(parse_rational).collect()
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => atomic_write(path, text.as_bytes()),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn init_workers(workers: usize) -> Result<()> {
    if workers > 1 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global()
            .map_err(|e| Error::Invalid(format!("thread pool: {e}")))?;
    }
    Ok(())
}

fn run_count(
    d: usize,
    t2: &str,
    caps: &CommonCaps,
    shards: Option<u64>,
    shard_index: Option<u64>,
    checkpoint: Option<PathBuf>,
    merge: Option<Vec<PathBuf>>,
) -> Result<()> {
    if let Some(files) = merge {
        let mut total = 0u64;
        let mut seen: std::collections::BTreeMap<Vec<i64>, u64> = Default::default();
        for f in &files {
            let text = std::fs::read_to_string(f)?;
            for (row, c) in parse_checkpoint(&text, d)? {
                if let Some(prev) = seen.insert(row.clone(), c) {
                    if prev != c {
                        return Err(Error::Invariant(format!(
                            "conflicting counts for first row {row:?}"
                        )));
                    }
                    continue;
                }
                total += c;
            }
        }
        println!("{total}");
        return Ok(());
    }
    init_workers(caps.workers)?;
    let spec = BallSpec::new(d, parse_rational(t2)?)?;
    let (shards, shard_index) = match (shards, shard_index) {
        (Some(n), Some(i)) => {
            if n == 0 || i >= n {
                return Err(Error::Invalid("need 0 <= shard-index < shards".into()));
            }
            (n, i)
        }
        (None, None) => (1, 0),
        _ => {
            return Err(Error::Invalid(
                "--shards and --shard-index must be given together".into(),
            ));
        }
    };
    let si = spec.ints()?;
    let rows = first_rows(&spec)?;
    let done: std::collections::BTreeMap<Vec<i64>, u64> = match &checkpoint {
        Some(path) if path.exists() => parse_checkpoint(&std::fs::read_to_string(path)?, d)?,
        _ => Default::default(),
    };
    let mut ckpt = match &checkpoint {
        Some(path) => Some(
            std::fs::OpenOptions::new()
                .create(true)
                .append(true)
                .open(path)?,
        ),
        None => None,
    };
    let mut total = 0u64;
    for (idx, row) in rows.iter().enumerate() {
        if (idx as u64) % shards != shard_index {
            continue;
        }
        let c = match done.get(row) {
            Some(&c) => c,
            None => {
                let c = count_suffix(&si, row);
                if let Some(f) = ckpt.as_mut() {
                    use std::io::Write;
                    f.write_all(checkpoint_line(row, c).as_bytes())?;
                }
                c
            }
        };
        total = total
            .checked_add(c)
            .ok_or_else(|| Error::ResourceCap("count overflow".into()))?;
        if total > caps.cap {
            return Err(Error::ResourceCap(format!(
                "ball enumeration exceeded the cap of {} elements",
                caps.cap
            )));
        }
    }
    println!("{total}");
    Ok(())
}

#[derive(Serialize)]
struct CensusConfig<'a> {
    d: usize,
    t_list: &'a str,
    l: u64,
    crosscheck: bool,
}

fn run_census(
    d: usize,
    t_list: &str,
    l: u64,
    crosscheck: bool,
    seed: u64,
    out: Option<PathBuf>,
    json: Option<PathBuf>,
    caps: &CommonCaps,
) -> Result<()> {
    let ts = parse_rational_list(t_list)?;
    let rows = census_genericity(d, &ts, l, caps.cap, crosscheck)?;
    let csv = census_csv(&rows);
    emit(&out, &csv)?;
    if let Some(path) = json {
        let mut fits = Vec::new();
        let getters: [(&str, fn(&slgalois::experiments::CensusRow) -> u64); 2] = [
            ("n_t", |r| r.n_t),
            ("non_regular", |r| r.non_regular),
        ];
        for (name, get) in getters {
            let pts: Vec<(f64, f64)> = rows
                .iter()
                .filter(|r| get(r) > 0)
                .map(|r| {
                    let t = parse_rational(&r.t).expect("own output");
                    (rational_f64(&t), get(r) as f64)
                })
                .collect();
            if pts.len() >= 2 {
                let (slope, residual) = fit_exponent(&pts)?;
                fits.push(FitSummary {
                    series: name.to_string(),
                    slope,
                    residual,
                });
            }
        }
        let config = CensusConfig {
            d,
            t_list,
            l,
            crosscheck,
        };
        let report = CensusReport {
            meta: Meta::new(seed, &config)?,
            rows,
            fits,
        };
        atomic_write(&path, slgalois::report::to_json_pretty(&report)?.as_bytes())?;
    }
    Ok(())
}

fn run_certify(poly: &str, l: u64, method: &str) -> Result<()> {
    let f = parse_poly(poly)?;
    let verdict = match method {
        "jordan" => jordan_certificate(&f, l)?,
        "classical" => classical_criterion(&f, l)?,
        "oracle" => exact_oracle_small_degree(&f)?,
        other => {
            return Err(Error::Invalid(format!(
                "unknown method {other:?}: expected jordan, classical, or oracle"
            )));
        }
    };
    println!("{}", slgalois::report::to_json_pretty(&verdict)?);
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn run_sieve_bound(
    d: usize,
    t2: &str,
    class: &str,
    l: u64,
    exclude: &str,
    k: usize,
    a: &str,
    two_ne: u32,
    fitted_c: f64,
    rho: Option<String>,
    group_cap: u64,
    out: Option<PathBuf>,
    caps: &CommonCaps,
) -> Result<()> {
    let spec = BallSpec::new(d, parse_rational(t2)?)?;
    let class: slgalois::cycles::CycleType = class.parse()?;
    if class.total() as usize != d {
        return Err(Error::Invalid(format!(
            "class {class} is not a partition of d = {d}"
        )));
    }
    let excluded: BTreeSet<u64> = exclude
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse::<u64>()
                .map_err(|_| Error::Invalid(format!("bad prime {s:?} in --exclude")))
        })
        .collect::<Result<_>>()?;
    let params = SieveParams::new(l, excluded, k);
    let primes = admissible_primes(&params);
    if primes.is_empty() {
        return Err(Error::Invalid("no admissible primes <= L".into()));
    }
    let mut densities = Vec::new();
    let mut orders = Vec::new();
    for &p in &primes {
        let cd = class_density_exact(d as u32, p, group_cap)?;
        let r = cd
            .per_class
            .get(&class)
            .cloned()
            .unwrap_or_else(|| BigRational::from(BigInt::from(0)));
        densities.push(r);
        orders.push((p, sl_group_order(d as u32, p)));
    }
    let v = compute_v(&densities, k)?;
    let m = compute_m(&orders, k)?;
    let counts = sifted_count(&spec, &class, &params, caps.cap)?;
    let a = parse_rational(a)?;
    let dim_g = (d * d - 1) as u32;
    let bounds = exponent_bounds(&ExponentInputs::new(a, 1, dim_g, two_ne)?);
    let rho = match rho {
        Some(s) => {
            let r = parse_rational(&s)?;
            if r >= bounds.rho_sup || r <= BigRational::from(BigInt::from(0)) {
                return Err(Error::Invalid(format!(
                    "rho must lie in (0, {})",
                    rational_str(&bounds.rho_sup)
                )));
            }
            r
        }
        None => bounds.rho_sup / BigRational::from(BigInt::from(2)),
    };
    let bound = sieve_upper_bound(
        counts.n_t as f64,
        fitted_c,
        rational_f64(&rho),
        rational_f64(&m.upper),
        rational_f64(&v),
    )?;
    let report = SieveReport {
        v: rational_str(&v),
        m: rational_str(&m.upper),
        n_t: counts.n_t,
        rho: rational_str(&rho),
        fitted_c,
        bound,
        empirical_sifted: counts.sifted,
        prime_bound: l,
        class: class.to_string(),
    };
    let mut text = slgalois::report::to_json_pretty(&report)?;
    text.push('\n');
    emit(&out, &text)
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Count {
            d,
            t2,
            caps,
            shards,
            shard_index,
            checkpoint,
            merge,
        } => run_count(d, &t2, &caps, shards, shard_index, checkpoint, merge),
        Command::Census {
            d,
            t_list,
            l,
            no_crosscheck,
            seed,
            out,
            json,
            caps,
        } => run_census(d, &t_list, l, !no_crosscheck, seed, out, json, &caps),
        Command::Certify { poly, l, method } => run_certify(&poly, l, &method),
        Command::SieveBound {
            d,
            t2,
            class,
            l,
            exclude,
            k,
            a,
            two_ne,
            fitted_c,
            rho,
            group_cap,
            out,
            caps,
        } => run_sieve_bound(
            d, &t2, &class, l, &exclude, k, &a, two_ne, fitted_c, rho, group_cap, out, &caps,
        ),
        Command::Equidist {
            d,
            t,
            p,
            group_cap,
            out,
            caps,
        } => {
            let rep = equidist_report(d, &parse_rational(&t)?, p, group_cap, caps.cap)?;
            let mut text = slgalois::report::to_json_pretty(&rep)?;
            text.push('\n');
            emit(&out, &text)
        }
        Command::Gallagher {
            d,
            t,
            sample,
            seed,
            l,
            out,
            caps,
        } => {
            let mode = match sample {
                Some(n) => GallagherMode::Sample(n),
                None => GallagherMode::Exhaustive,
            };
            let rep = gallagher_census(d, t, mode, l, seed, caps.cap)?;
            let mut text = slgalois::report::to_json_pretty(&rep)?;
            text.push('\n');
            emit(&out, &text)
        }
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
