//! Wall-clock benchmark harness.
//!
//! Runs the whole protocol surface `runs` times against a monotonic
//! clock and reports per-run rows plus Mean and Standard error lines,
//! one table per protocol — the layout of the reference experiments.
//! Absolute numbers are machine-dependent and informative only.

use std::fmt::Write as _;
use std::time::Instant;

use rdmpf::codec;
use rdmpf::dsa::{self, MerkleLamport};
use rdmpf::kem;
use rdmpf::params::Params;

/// Operations the harness times.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BenchOp {
    /// Shared initialization: parameter resolution, run-seed derivation
    /// and the signature-tree build.
    Setup,
    /// KEM key generation.
    KeyGen,
    /// KEM encapsulation.
    Encaps,
    /// KEM decapsulation, honest ciphertext.
    Decaps,
    /// KEM decapsulation, tampered ciphertext (rejection path).
    ImplicitReject,
    /// Deterministic signing.
    Sign,
    /// Signature verification, honest signature.
    Verify,
}

impl BenchOp {
    /// Column label.
    pub fn name(self) -> &'static str {
        match self {
            BenchOp::Setup => "Setup",
            BenchOp::KeyGen => "KeyGen",
            BenchOp::Encaps => "Encaps",
            BenchOp::Decaps => "Decaps",
            BenchOp::ImplicitReject => "ImplicitReject",
            BenchOp::Sign => "Sign",
            BenchOp::Verify => "Verify",
        }
    }

    /// All operations, in table order.
    pub fn all() -> [BenchOp; 7] {
        [
            BenchOp::Setup,
            BenchOp::KeyGen,
            BenchOp::Encaps,
            BenchOp::Decaps,
            BenchOp::ImplicitReject,
            BenchOp::Sign,
            BenchOp::Verify,
        ]
    }
}

const KEM_OPS: [BenchOp; 5] = [
    BenchOp::Setup,
    BenchOp::KeyGen,
    BenchOp::Encaps,
    BenchOp::Decaps,
    BenchOp::ImplicitReject,
];
const DSA_OPS: [BenchOp; 2] = [BenchOp::Sign, BenchOp::Verify];

/// One timed measurement.
#[derive(Debug, Clone)]
pub struct BenchRecord {
    /// 1-based run index.
    pub run: usize,
    /// Operation timed.
    pub op: BenchOp,
    /// Wall time in seconds.
    pub seconds: f64,
    /// Profile name.
    pub profile: String,
}

fn time<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let t0 = Instant::now();
    let out = f();
    (out, t0.elapsed().as_secs_f64())
}

/// Runs the harness. Returns exactly `runs × 7` records, sequentially
/// measured (no parallelism, to keep the clock honest).
pub fn run_bench(params: &Params, runs: usize, tree_height: u32) -> Vec<BenchRecord> {
    assert!(runs >= 1);
    let profile = params.profile().map_or("custom", |p| p.name()).to_string();
    let mut records = Vec::with_capacity(runs * BenchOp::all().len());
    let mut record = |run: usize, op: BenchOp, seconds: f64| {
        records.push(BenchRecord {
            run,
            op,
            seconds,
            profile: profile.clone(),
        })
    };

    let kb = params.kappa_bytes();
    for run in 1..=runs {
        let (setup, t_setup) = time(|| {
            let mut kem_seed = [run as u8; 32];
            kem_seed[0] = 0x01;
            let coins = vec![run as u8; kb];
            let mut dsa_seed = [run as u8; 32];
            dsa_seed[0] = 0x02;
            let scheme = MerkleLamport::with_height(tree_height);
            let dsa_keys = dsa::keygen_ds(&scheme, &dsa_seed);
            (kem_seed, coins, dsa_keys)
        });
        record(run, BenchOp::Setup, t_setup);
        let (kem_seed, coins, (dsa_pk, dsa_sk)) = setup;

        let ((pk, sk), t) = time(|| kem::keygen(&kem_seed, params));
        record(run, BenchOp::KeyGen, t);

        let ((ct, key), t) = time(|| kem::encaps(&pk, &coins));
        record(run, BenchOp::Encaps, t);

        let (key_back, t) = time(|| kem::decaps(&sk, &ct));
        record(run, BenchOp::Decaps, t);
        assert_eq!(key, key_back, "benchmark run {run} lost key agreement");

        let mut tampered_bytes = codec::encode_ct(&ct);
        tampered_bytes[0] ^= 0x01;
        let tampered = codec::decode_ct(&tampered_bytes, params).expect("same framing");
        let (reject_key, t) = time(|| kem::decaps(&sk, &tampered));
        record(run, BenchOp::ImplicitReject, t);
        assert_ne!(key, reject_key);

        let msg = [run as u8; 32];
        let (sig, t) = time(|| dsa::sign_ds(&dsa_sk, &msg));
        record(run, BenchOp::Sign, t);

        let (outcome, t) = time(|| dsa::verify_ds(&dsa_pk, &msg, &sig));
        record(run, BenchOp::Verify, t);
        assert!(outcome.is_accept());
    }
    records
}

/// Arithmetic mean and standard error (sample stdev / √n).
pub fn mean_and_std_error(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt() / n.sqrt())
}

fn column(records: &[BenchRecord], op: BenchOp) -> Vec<f64> {
    records
        .iter()
        .filter(|r| r.op == op)
        .map(|r| r.seconds)
        .collect()
}

/// CSV with header `run,op,seconds,profile`, one row per measurement,
/// then `mean` and `stderr` rows per operation.
pub fn to_csv(records: &[BenchRecord]) -> String {
    let mut out = String::from("run,op,seconds,profile\n");
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{:.7},{}",
            r.run,
            r.op.name(),
            r.seconds,
            r.profile
        );
    }
    let profile = records.first().map_or("", |r| r.profile.as_str());
    for op in BenchOp::all() {
        let col = column(records, op);
        if col.is_empty() {
            continue;
        }
        let (mean, se) = mean_and_std_error(&col);
        let _ = writeln!(out, "mean,{},{mean:.7},{profile}", op.name());
        let _ = writeln!(out, "stderr,{},{se:.7},{profile}", op.name());
    }
    out
}

fn format_table(title: &str, ops: &[BenchOp], records: &[BenchRecord]) -> String {
    let runs = records.iter().map(|r| r.run).max().unwrap_or(0);
    let mut out = String::new();
    let _ = writeln!(out, "{title}");
    let _ = write!(out, "{:>10}", "run");
    for op in ops {
        let _ = write!(out, "{:>16}", op.name());
    }
    let _ = writeln!(out);
    for run in 1..=runs {
        let _ = write!(out, "{run:>10}");
        for op in ops {
            let v = records
                .iter()
                .find(|r| r.run == run && r.op == *op)
                .map_or(f64::NAN, |r| r.seconds);
            let _ = write!(out, "{v:>16.7}");
        }
        let _ = writeln!(out);
    }
    for (label, pick) in [("Mean", 0usize), ("Std error", 1)] {
        let _ = write!(out, "{label:>10}");
        for op in ops {
            let (mean, se) = mean_and_std_error(&column(records, *op));
            let v = if pick == 0 { mean } else { se };
            let _ = write!(out, "{v:>16.7}");
        }
        let _ = writeln!(out);
    }
    out
}

/// Human-readable per-protocol tables (runs as rows, operations as
/// columns, Mean / Std error footer).
pub fn format_tables(records: &[BenchRecord]) -> String {
    let profile = records.first().map_or("", |r| r.profile.as_str());
    let kem = format_table(&format!("KEM bench ({profile})"), &KEM_OPS, records);
    let dsa = format_table(&format!("DSA bench ({profile})"), &DSA_OPS, records);
    format!("{kem}\n{dsa}")
}
