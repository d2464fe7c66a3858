//! Command-line front end.
//!
//! Binary objects travel as files, human-readable output goes to stdout,
//! diagnostics to stderr. Exit codes: 0 success, 1 failed verification or
//! mismatch in check modes, 2 usage and framing errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::rngs::OsRng;
use rand::RngCore;

use rdmpf::codec;
use rdmpf::dsa::{self, MerkleLamport, VerifyOutcome};
use rdmpf::kat;
use rdmpf::kem;
use rdmpf::params::{Params, Profile};
use rdmpf_tools::{bench, bruteforce, estimator, timing};

#[derive(Parser)]
#[command(
    name = "rdmpf",
    version,
    about = "Matrix-power KEM and signature toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ProfileArg {
    /// Parameter profile: toy-997, l5-n7 or micro.
    #[arg(long, default_value = "toy-997")]
    profile: String,
}

impl ProfileArg {
    fn params(&self) -> Result<Params, CliError> {
        Ok(Params::named(Profile::from_name(&self.profile)?))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate a KEM key pair and write `<out>.pk` and `<out>.sk`.
    Keygen {
        #[command(flatten)]
        profile: ProfileArg,
        /// 32-byte hex seed; drawn from the OS when omitted.
        #[arg(long)]
        seed: Option<String>,
        /// Output path prefix.
        #[arg(long)]
        out: PathBuf,
    },
    /// Encapsulate against a public key; writes `<out>.ct` and `<out>.ss`.
    Encaps {
        /// Public key file.
        #[arg(long)]
        pk: PathBuf,
        /// 32-byte hex seed for the encapsulation coins; OS randomness
        /// when omitted.
        #[arg(long)]
        seed: Option<String>,
        /// Output path prefix.
        #[arg(long)]
        out: PathBuf,
    },
    /// Decapsulate a ciphertext and print the shared key.
    Decaps {
        /// Secret key file.
        #[arg(long)]
        sk: PathBuf,
        /// Ciphertext file.
        #[arg(long)]
        ct: PathBuf,
        /// Optional file for the raw shared key bytes.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sign a message file deterministically.
    Sign {
        /// 32-byte hex key seed.
        #[arg(long)]
        seed: String,
        /// Message file.
        #[arg(long = "in")]
        input: PathBuf,
        /// Signature output file.
        #[arg(long)]
        out: PathBuf,
        /// Signature tree height.
        #[arg(long, default_value_t = 10)]
        height: u32,
    },
    /// Verify a signature file against a message file.
    Verify {
        /// 32-byte hex key seed the signer used.
        #[arg(long)]
        seed: String,
        /// Message file.
        #[arg(long = "in")]
        input: PathBuf,
        /// Signature file.
        #[arg(long)]
        sig: PathBuf,
        /// Signature tree height.
        #[arg(long, default_value_t = 10)]
        height: u32,
    },
    /// Known-answer-test files.
    Kat {
        #[command(subcommand)]
        action: KatCommand,
    },
    /// Time every operation and print per-protocol tables.
    Bench {
        #[command(flatten)]
        profile: ProfileArg,
        /// Number of runs.
        #[arg(long, default_value_t = 10)]
        runs: usize,
        /// Optional CSV output path.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Signature tree height.
        #[arg(long, default_value_t = 10)]
        height: u32,
    },
    /// Print the brute-force security table.
    SecurityTable,
    /// Recover a planted micro-profile key by exhaustive search.
    Bruteforce {
        /// 32-byte hex seed for the planted key.
        #[arg(
            long,
            default_value = "4242424242424242424242424242424242424242424242424242424242424242"
        )]
        seed: String,
    },
    /// Compare honest and tampered decapsulation timings.
    Timing {
        #[command(flatten)]
        profile: ProfileArg,
        /// Trials per path (at least 100).
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
}

#[derive(Subcommand)]
enum KatCommand {
    /// Generate a KAT file from a master seed.
    Gen {
        #[command(flatten)]
        profile: ProfileArg,
        /// 32-byte hex master seed.
        #[arg(long)]
        seed: String,
        /// Record count.
        #[arg(long, default_value_t = 3)]
        count: usize,
        /// Output file.
        #[arg(long)]
        out: PathBuf,
        /// Signature tree height.
        #[arg(long, default_value_t = 10)]
        height: u32,
    },
    /// Re-derive every record of a KAT file and compare.
    Check {
        /// KAT file.
        #[arg(long = "in")]
        input: PathBuf,
    },
}

enum CliError {
    Usage(String),
    Io(PathBuf, std::io::Error),
}

impl From<rdmpf::Error> for CliError {
    fn from(e: rdmpf::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn read_file(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

fn parse_seed(hex_seed: &str) -> Result<[u8; 32], CliError> {
    let bytes =
        hex::decode(hex_seed).map_err(|_| CliError::Usage("seed must be hex".to_string()))?;
    bytes
        .as_slice()
        .try_into()
        .map_err(|_| CliError::Usage("seed must be exactly 32 bytes (64 hex digits)".to_string()))
}

fn seed_or_random(seed: &Option<String>) -> Result<[u8; 32], CliError> {
    match seed {
        Some(s) => parse_seed(s),
        None => {
            let mut out = [0u8; 32];
            OsRng.fill_bytes(&mut out);
            Ok(out)
        }
    }
}

fn with_extension(prefix: &Path, ext: &str) -> PathBuf {
    let mut name = prefix.as_os_str().to_os_string();
    name.push(".");
    name.push(ext);
    PathBuf::from(name)
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Keygen { profile, seed, out } => {
            let params = profile.params()?;
            let seed = seed_or_random(&seed)?;
            let (pk, sk) = kem::keygen(&seed, &params);
            let pk_path = with_extension(&out, "pk");
            let sk_path = with_extension(&out, "sk");
            write_file(&pk_path, &codec::encode_pk(&pk))?;
            write_file(&sk_path, &codec::encode_sk(&sk))?;
            println!("wrote {} and {}", pk_path.display(), sk_path.display());
            Ok(0)
        }
        Command::Encaps { pk, seed, out } => {
            let pk = codec::decode_pk(&read_file(&pk)?)?;
            let seed = seed_or_random(&seed)?;
            // Named profiles have κ ≤ 256, so the leading κ/8 seed bytes
            // serve as the encapsulation coins.
            let coins = seed[..pk.params().kappa_bytes()].to_vec();
            let (ct, key) = kem::encaps(&pk, &coins);
            let ct_path = with_extension(&out, "ct");
            let ss_path = with_extension(&out, "ss");
            write_file(&ct_path, &codec::encode_ct(&ct))?;
            write_file(&ss_path, key.as_bytes())?;
            println!("wrote {} and {}", ct_path.display(), ss_path.display());
            println!("shared-key = {}", hex::encode_upper(key.as_bytes()));
            Ok(0)
        }
        Command::Decaps { sk, ct, out } => {
            let sk = codec::decode_sk(&read_file(&sk)?)?;
            let ct = codec::decode_ct(&read_file(&ct)?, sk.pk().params())?;
            let key = kem::decaps(&sk, &ct);
            if let Some(path) = out {
                write_file(&path, key.as_bytes())?;
            }
            println!("shared-key = {}", hex::encode_upper(key.as_bytes()));
            Ok(0)
        }
        Command::Sign {
            seed,
            input,
            out,
            height,
        } => {
            let seed = parse_seed(&seed)?;
            let msg = read_file(&input)?;
            let scheme = MerkleLamport::with_height(height);
            let (_, sk) = dsa::keygen_ds(&scheme, &seed);
            let sig = dsa::sign_ds(&sk, &msg);
            write_file(&out, &codec::encode_sig(&sig))?;
            println!("wrote {}", out.display());
            Ok(0)
        }
        Command::Verify {
            seed,
            input,
            sig,
            height,
        } => {
            let seed = parse_seed(&seed)?;
            let msg = read_file(&input)?;
            let sig = codec::decode_sig(&read_file(&sig)?)?;
            let scheme = MerkleLamport::with_height(height);
            let (pk, _) = dsa::keygen_ds(&scheme, &seed);
            match dsa::verify_ds(&pk, &msg, &sig) {
                VerifyOutcome::Accept => {
                    println!("ACCEPTED");
                    Ok(0)
                }
                VerifyOutcome::RejectStar(token) => {
                    println!("REJECTED* placeholder = {}", hex::encode_upper(token.0));
                    Ok(1)
                }
            }
        }
        Command::Kat { action } => match action {
            KatCommand::Gen {
                profile,
                seed,
                count,
                out,
                height,
            } => {
                let params = profile.params()?;
                let seed = parse_seed(&seed)?;
                let text = kat::generate(&params, height, &seed, count);
                write_file(&out, text.as_bytes())?;
                println!("wrote {} ({count} records)", out.display());
                Ok(0)
            }
            KatCommand::Check { input } => {
                let text = String::from_utf8(read_file(&input)?)
                    .map_err(|_| CliError::Usage("KAT file is not UTF-8".to_string()))?;
                let report = kat::check(&text)?;
                println!(
                    "profile={} height={} records={}",
                    report.profile.name(),
                    report.height,
                    report.records
                );
                if report.ok() {
                    println!("KAT check: PASS");
                    Ok(0)
                } else {
                    for failure in &report.failures {
                        eprintln!("KAT check: {failure}");
                    }
                    println!("KAT check: FAIL");
                    Ok(1)
                }
            }
        },
        Command::Bench {
            profile,
            runs,
            out,
            height,
        } => {
            if runs < 1 {
                return Err(CliError::Usage("--runs must be at least 1".to_string()));
            }
            let params = profile.params()?;
            let records = bench::run_bench(&params, runs, height);
            print!("{}", bench::format_tables(&records));
            if let Some(path) = out {
                write_file(&path, bench::to_csv(&records).as_bytes())?;
                println!("wrote {}", path.display());
            }
            Ok(0)
        }
        Command::SecurityTable => {
            println!(
                "{:>4} {:>10} {:>12} {:>11} {:>9} {:>6}",
                "n", "unknowns", "bits/entry", "classical", "quantum", "level"
            );
            for row in estimator::security_table() {
                println!(
                    "{:>4} {:>10} {:>12} {:>11} {:>9} {:>6}",
                    row.n,
                    row.unknowns,
                    row.bits_per_entry,
                    row.bits_classical,
                    row.bits_quantum,
                    row.nist_level
                );
            }
            Ok(0)
        }
        Command::Bruteforce { seed } => {
            let params = Params::micro();
            let seed = parse_seed(&seed)?;
            let (pk, _) = kem::keygen(&seed, &params);
            let started = std::time::Instant::now();
            let recovered =
                bruteforce::brute_force_recover(&pk).map_err(|e| CliError::Usage(e.to_string()))?;
            let elapsed = started.elapsed().as_secs_f64();
            println!(
                "recovered equivalent key after {} candidate pairs in {elapsed:.4}s",
                recovered.pairs_tried
            );
            for (r, (cu, cv)) in recovered.coefficients.iter().enumerate() {
                println!("round {}: u-coeffs {cu:?}, v-coeffs {cv:?}", r + 1);
            }
            let mut ok = true;
            for i in 0..10u16 {
                let mut coins = vec![0u8; params.kappa_bytes()];
                coins[..2].copy_from_slice(&i.to_be_bytes());
                let (ct, key) = kem::encaps(&pk, &coins);
                ok &= recovered.decaps(&pk, &ct) == key;
            }
            if ok {
                println!("recovered key decapsulates 10/10 honest ciphertexts");
                Ok(0)
            } else {
                println!("recovered key failed cross-validation");
                Ok(1)
            }
        }
        Command::Timing { profile, trials } => {
            if trials < 100 {
                return Err(CliError::Usage("--trials must be at least 100".to_string()));
            }
            let params = profile.params()?;
            let report = timing::timing_probe(&params, trials);
            println!("trials per path      = {}", report.trials);
            println!("median accept (s)    = {:.7}", report.median_accept);
            println!("median reject (s)    = {:.7}", report.median_reject);
            println!("iqr accept (s)       = {:.7}", report.iqr_accept);
            println!("iqr reject (s)       = {:.7}", report.iqr_reject);
            println!("reject/accept ratio  = {:.4}", report.ratio);
            println!(
                "operation counters   = {}",
                if report.counters_match {
                    "match"
                } else {
                    "DIFFER"
                }
            );
            if report.flagged {
                eprintln!("warning: medians differ by more than 20%");
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Io(path, e)) => {
            eprintln!("error: {}: {e}", path.display());
            ExitCode::from(2)
        }
    }
}
