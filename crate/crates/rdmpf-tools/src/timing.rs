//! Accept-path vs reject-path timing comparison.
//!
//! Implicit rejection is only as good as the indistinguishability of the
//! two decapsulation outcomes. The structural guarantee — both branches
//! always execute — is asserted through the library's operation counters;
//! this probe adds a wall-clock comparison: median and interquartile
//! range of honest vs tampered decapsulations, with a soft flag when the
//! medians drift more than 20% apart. Desk hardware cannot prove constant
//! time, so the flag warns rather than fails.

use std::time::Instant;

use rdmpf::codec;
use rdmpf::kem;
use rdmpf::params::Params;
use rdmpf::probe;

/// Relative median gap that raises the flag.
pub const FLAG_THRESHOLD: f64 = 0.20;

/// Summary of one probe run.
#[derive(Debug, Clone)]
pub struct TimingReport {
    /// Trials per path.
    pub trials: usize,
    /// Median honest-path seconds.
    pub median_accept: f64,
    /// Median reject-path seconds.
    pub median_reject: f64,
    /// Interquartile range, honest path.
    pub iqr_accept: f64,
    /// Interquartile range, reject path.
    pub iqr_reject: f64,
    /// median_reject / median_accept.
    pub ratio: f64,
    /// True when the medians differ by more than [`FLAG_THRESHOLD`].
    pub flagged: bool,
    /// True when both paths performed identical operation counts.
    pub counters_match: bool,
}

fn median(sorted: &[f64]) -> f64 {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
    }
}

fn iqr(sorted: &[f64]) -> f64 {
    let n = sorted.len();
    sorted[(3 * n) / 4] - sorted[n / 4]
}

/// Times two closures back to back, interleaved, and compares their
/// distributions. `counters_match` compares the library operation
/// counters across one call of each.
pub fn probe_pair<A, B>(mut accept: A, mut reject: B, trials: usize) -> TimingReport
where
    A: FnMut(),
    B: FnMut(),
{
    assert!(trials >= 100, "need at least 100 trials per path");

    let before = probe::snapshot();
    accept();
    let accept_counts = probe::snapshot().since(&before);
    let before = probe::snapshot();
    reject();
    let reject_counts = probe::snapshot().since(&before);
    let counters_match = accept_counts == reject_counts;

    let mut accept_times = Vec::with_capacity(trials);
    let mut reject_times = Vec::with_capacity(trials);
    for _ in 0..trials {
        let t0 = Instant::now();
        accept();
        accept_times.push(t0.elapsed().as_secs_f64());
        let t0 = Instant::now();
        reject();
        reject_times.push(t0.elapsed().as_secs_f64());
    }
    accept_times.sort_by(f64::total_cmp);
    reject_times.sort_by(f64::total_cmp);

    let median_accept = median(&accept_times);
    let median_reject = median(&reject_times);
    let ratio = median_reject / median_accept;
    TimingReport {
        trials,
        median_accept,
        median_reject,
        iqr_accept: iqr(&accept_times),
        iqr_reject: iqr(&reject_times),
        ratio,
        flagged: (ratio - 1.0).abs() > FLAG_THRESHOLD,
        counters_match,
    }
}

/// Probes honest vs tampered decapsulation under `params`.
pub fn timing_probe(params: &Params, trials: usize) -> TimingReport {
    let (pk, sk) = kem::keygen(&[0x51u8; 32], params);
    let coins = vec![0x52u8; params.kappa_bytes()];
    let (ct, _) = kem::encaps(&pk, &coins);
    let mut tampered_bytes = codec::encode_ct(&ct);
    let last = tampered_bytes.len() - 1;
    tampered_bytes[last] ^= 0x01; // tag byte: forces the reject branch
    let tampered = codec::decode_ct(&tampered_bytes, params).expect("same framing");

    probe_pair(
        || {
            let _ = kem::decaps(&sk, &ct);
        },
        || {
            let _ = kem::decaps(&sk, &tampered);
        },
        trials,
    )
}
