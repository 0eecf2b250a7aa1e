//! Batch entry points for the exact Kronecker/staircase toolkit.
//!
//! Exit codes: 0 success, 2 usage or I/O error, 3 zero coefficient from
//! `kron`, 4 invalid certificate, 5 verification failure.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use saxlkit_core::certificates::{self, Certificate, Manifest};
use saxlkit_core::characters::{
    character_value, set_character_cache_cap, vanishing_count, write_column_csv, CycleType,
};
use saxlkit_core::{
    audit_axioms, dominance_stats, kronecker, reduce_durfee_k, staircase, staircase_like,
    tensor_square_support, verify_family_with, verify_generalized_saxl, CsvSink, Family,
    Partition, RulePolicy, VerifyOptions,
};

const EXIT_OK: u8 = 0;
const EXIT_USAGE: u8 = 2;
const EXIT_ZERO: u8 = 3;
const EXIT_INVALID_CERT: u8 = 4;
const EXIT_VERIFY_FAILED: u8 = 5;

#[derive(Parser)]
#[command(
    name = "saxlkit",
    version,
    about = "Exact symmetric-group characters, Kronecker positivity, and staircase certificates",
    long_about = None,
    after_help = "Partitions use the bracket grammar with exponent shorthand, e.g. \"[3^3,2^2,1]\".\n\
                  The character memo cap defaults to 2^22 entries; override with --cache-entries\n\
                  or the SAXLKIT_CACHE_ENTRIES environment variable (the flag wins)."
)]
struct Cli {
    /// Worker threads for parallel sections (default: logical cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Character memo entry cap; evicts everything on overflow.
    #[arg(long, global = true)]
    cache_entries: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct PolicyArgs {
    /// Maximum size of brute-force certificate leaves.
    #[arg(long, default_value_t = 36)]
    brute_cap: u64,
    /// Sizes up to which axiom instances are re-executed while checking.
    #[arg(long, default_value_t = 11)]
    audit_cap: u64,
    /// Leaf manifest to consult (defaults to the embedded one).
    #[arg(long)]
    manifest: Option<PathBuf>,
    /// Re-derive oversized leaves from the oracle instead of the manifest.
    #[arg(long)]
    extended: bool,
}

impl PolicyArgs {
    fn build(&self) -> Result<RulePolicy, String> {
        let mut policy = RulePolicy {
            brute_force_size_cap: self.brute_cap,
            audit_cap: self.audit_cap,
            extended: self.extended,
            ..RulePolicy::default()
        };
        if let Some(path) = &self.manifest {
            let manifest = Manifest::load(path).map_err(|e| e.to_string())?;
            policy.manifest = Arc::new(manifest);
        }
        Ok(policy)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Exact Kronecker coefficient of three partitions; exits 3 when zero.
    Kron {
        lambda: String,
        mu: String,
        nu: String,
    },
    /// Character value chi^lambda(class), or a full column as CSV.
    Char {
        /// Row partition.
        #[arg(required_unless_present = "column")]
        lambda: Option<String>,
        /// Class (cycle type).
        #[arg(required_unless_present = "column")]
        class: Option<String>,
        /// Emit the full column of this class as CSV instead.
        #[arg(long, value_name = "CLASS", conflicts_with_all = ["lambda", "class"])]
        column: Option<String>,
        /// Also print how many rows of the column vanish.
        #[arg(long)]
        vanishing: bool,
    },
    /// Constituents of the tensor square of a partition.
    Support {
        lambda: String,
        /// Refuse sizes beyond this guard.
        #[arg(long, default_value_t = 30)]
        max_n: u64,
    },
    /// Verify a whole family, emitting a CSV report.
    SaxlVerify {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        /// Write per-target certificates below this directory.
        #[arg(long)]
        certs_dir: Option<PathBuf>,
        /// Write the CSV report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Zero the timing columns for byte-stable output.
        #[arg(long)]
        stable_output: bool,
        #[command(flatten)]
        policy: PolicyArgs,
    },
    /// Derive and print a certificate for one staircase target.
    Certify {
        m: u32,
        mu: String,
        /// Write the certificate here instead of standard output.
        #[arg(short, long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        policy: PolicyArgs,
    },
    /// Check a certificate file; exits 4 with a node path when invalid.
    CheckCert {
        path: PathBuf,
        #[command(flatten)]
        policy: PolicyArgs,
    },
    /// Dominance-comparability statistics for the staircase series.
    Stats {
        #[arg(long, default_value_t = 7)]
        rho_max: u32,
    },
    /// List the staircase-like partitions of a size, or verify a range.
    StaircaseLike {
        n: u64,
        /// Verify full tensor-square support for all sizes 3..=n.
        #[arg(long)]
        verify: bool,
    },
    /// Re-verify every allowlisted axiom instance up to the audit cap.
    Audit {
        #[command(flatten)]
        policy: PolicyArgs,
    },
}

fn parse_partition(text: &str) -> Result<Partition, String> {
    text.parse::<Partition>().map_err(|e| e.to_string())
}

fn run(cli: Cli) -> Result<u8, String> {
    if let Some(cap) = cli.cache_entries {
        set_character_cache_cap(cap);
    }
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| e.to_string())?;
    }
    match cli.command {
        Command::Kron { lambda, mu, nu } => {
            let (l, m, n) = (
                parse_partition(&lambda)?,
                parse_partition(&mu)?,
                parse_partition(&nu)?,
            );
            let g = kronecker(&l, &m, &n).map_err(|e| e.to_string())?;
            println!("{g}");
            Ok(if g.is_positive() { EXIT_OK } else { EXIT_ZERO })
        }
        Command::Char { lambda, class, column, vanishing } => {
            let class = match (&column, &class) {
                (Some(c), _) => CycleType::new(parse_partition(c)?),
                (None, Some(c)) => CycleType::new(parse_partition(c)?),
                (None, None) => return Err("char needs a class".into()),
            };
            if column.is_some() {
                write_column_csv(&class, std::io::stdout().lock()).map_err(|e| e.to_string())?;
            } else {
                let lambda = lambda.ok_or("char needs a row partition unless --column is set")?;
                let lambda = parse_partition(&lambda)?;
                let value = character_value(&lambda, &class).map_err(|e| e.to_string())?;
                println!("{value}");
            }
            if vanishing {
                let stats = vanishing_count(&class);
                println!(
                    "# vanishing {} of {} rows on class {}",
                    stats.zero_count, stats.total, stats.class
                );
            }
            Ok(EXIT_OK)
        }
        Command::Support { lambda, max_n } => {
            let lambda = parse_partition(&lambda)?;
            let support =
                tensor_square_support(&lambda, Some(max_n)).map_err(|e| e.to_string())?;
            let mut out = std::io::stdout().lock();
            for nu in &support {
                writeln!(out, "{nu}").map_err(|e| e.to_string())?;
            }
            writeln!(out, "# {} constituents", support.len()).map_err(|e| e.to_string())?;
            Ok(EXIT_OK)
        }
        Command::SaxlVerify {
            family,
            from,
            to,
            certs_dir,
            out,
            stable_output,
            policy,
        } => {
            let policy = policy.build()?;
            let opts = VerifyOptions { certs_dir };
            let report = if let Some(path) = out {
                let file = std::fs::File::create(&path).map_err(|e| e.to_string())?;
                let writer = std::io::BufWriter::new(file);
                let mut sink = CsvSink::new(writer, stable_output).map_err(|e| e.to_string())?;
                let report = verify_family_with(family, from, to, &policy, &opts, |rec| {
                    sink.record(rec).expect("report row");
                });
                sink.finish(&report).map_err(|e| e.to_string())?;
                report
            } else {
                let stdout = std::io::stdout().lock();
                let mut sink = CsvSink::new(stdout, stable_output).map_err(|e| e.to_string())?;
                let report = verify_family_with(family, from, to, &policy, &opts, |rec| {
                    sink.record(rec).expect("report row");
                });
                let _ = sink.finish(&report).map_err(|e| e.to_string())?;
                report
            };
            eprintln!("{}", report.summary_line(stable_output));
            Ok(if report.succeeded() { EXIT_OK } else { EXIT_VERIFY_FAILED })
        }
        Command::Certify { m, mu, out, policy } => {
            let policy = policy.build()?;
            let mu = parse_partition(&mu)?;
            let k = mu.durfee();
            let cert = reduce_durfee_k(m, &mu, k, &policy).map_err(|e| e.to_string())?;
            let text = cert.to_json();
            match out {
                Some(path) => std::fs::write(path, text).map_err(|e| e.to_string())?,
                None => println!("{text}"),
            }
            Ok(EXIT_OK)
        }
        Command::CheckCert { path, policy } => {
            let policy = policy.build()?;
            let text = std::fs::read_to_string(&path)
                .map_err(|e| format!("{}: {e}", path.display()))?;
            let cert = Certificate::from_json(&text).map_err(|e| e.to_string())?;
            match certificates::check_certificate(&cert, &policy) {
                Ok(()) => {
                    println!(
                        "valid: ({}, {}) via {:?}",
                        cert.alpha, cert.beta, cert.rule
                    );
                    Ok(EXIT_OK)
                }
                Err(failure) => {
                    eprintln!("invalid certificate: {failure}");
                    Ok(EXIT_INVALID_CERT)
                }
            }
        }
        Command::Stats { rho_max } => {
            let mut out = std::io::stdout().lock();
            writeln!(
                out,
                "m,n,partitions,below,comparable,comparable_ratio,conjugate_upward,graphical"
            )
            .map_err(|e| e.to_string())?;
            for m in 3..=rho_max {
                let stats = dominance_stats(&staircase(m));
                writeln!(
                    out,
                    "{m},{},{},{},{},{:.6},{},{}",
                    stats.n,
                    stats.partitions,
                    stats.below,
                    stats.comparable,
                    stats.comparable_ratio,
                    stats.conjugate_upward,
                    stats.graphical
                )
                .map_err(|e| e.to_string())?;
            }
            Ok(EXIT_OK)
        }
        Command::StaircaseLike { n, verify } => {
            if verify {
                let report = verify_generalized_saxl(n);
                for rec in &report.entries {
                    eprintln!("failed {}: {}", rec.target, rec.status.as_str());
                }
                println!("{}", report.summary_line(false));
                return Ok(if report.succeeded() { EXIT_OK } else { EXIT_VERIFY_FAILED });
            }
            for lam in staircase_like(n) {
                println!("{lam}");
            }
            Ok(EXIT_OK)
        }
        Command::Audit { policy } => {
            let policy = policy.build()?;
            let report = audit_axioms(&policy);
            let (ok, _, failed) = report.counts();
            for rec in report.failures() {
                eprintln!("failed {}", rec.target);
            }
            println!("# audit instances={} ok={} failed={}", report.totals.targets(), ok, failed);
            Ok(if report.succeeded() { EXIT_OK } else { EXIT_VERIFY_FAILED })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
