//! Known-answer-test files.
//!
//! Line-oriented ASCII in the style of the NIST PQC submission KATs:
//! a header line, then one block per record with uppercase-hex fields
//! `count, seed, pk, sk, ct, ss, msg, sig`, blocks separated by blank
//! lines, LF terminated.
//!
//! ```text
//! # RDMPF-KAT profile=toy-997 height=10
//!
//! count = 0
//! seed = 9F86D08...
//! pk = ...
//! ...
//! ```
//!
//! Derivation is pinned so independent implementations can reproduce the
//! bytes exactly:
//!
//! * master stream = SHAKE256(0x91 ∥ master-seed); each record draws its
//!   32-byte `seed` from it in order.
//! * record stream = SHAKE256(0x90 ∥ seed); it supplies, in order, the
//!   κ/8 encapsulation coins, the 32-byte signing message `msg`, and a
//!   32-byte signature-key seed.
//! * `pk`/`sk` come from KEM keygen on `seed`; `ct`/`ss` from
//!   encapsulating with the coins; `sig` from the deterministic signature
//!   over `msg` under the signature key.
//!
//! Checking a file needs no master seed: every record regenerates from
//! its own `seed` field. The checker also exercises the decode paths,
//! re-decapsulates `ct` against `ss` and verifies `sig`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::codec;
use crate::dsa::{self, MerkleLamport};
use crate::error::{Error, Result};
use crate::hashing::XofStream;
use crate::kem;
use crate::params::{Params, Profile};

const MASTER_STREAM_TAG: u8 = 0x91;
const RECORD_STREAM_TAG: u8 = 0x90;
const KAT_MSG_LEN: usize = 32;

struct RecordValues {
    seed: [u8; 32],
    pk: Vec<u8>,
    sk: Vec<u8>,
    ct: Vec<u8>,
    ss: Vec<u8>,
    msg: Vec<u8>,
    sig: Vec<u8>,
}

fn derive_record(params: &Params, scheme: &MerkleLamport, seed: [u8; 32]) -> RecordValues {
    let mut stream = XofStream::from_raw_seed(&[&[RECORD_STREAM_TAG], &seed[..]].concat());
    let mut coins = vec![0u8; params.kappa_bytes()];
    stream.fill(&mut coins);
    let mut msg = vec![0u8; KAT_MSG_LEN];
    stream.fill(&mut msg);
    let mut dsa_seed = [0u8; 32];
    stream.fill(&mut dsa_seed);

    let (pk, sk) = kem::keygen(&seed, params);
    let (ct, ss) = kem::encaps(&pk, &coins);
    let (_, dsa_sk) = dsa::keygen_ds(scheme, &dsa_seed);
    let sig = dsa::sign_ds(&dsa_sk, &msg);

    RecordValues {
        seed,
        pk: codec::encode_pk(&pk),
        sk: codec::encode_sk(&sk),
        ct: codec::encode_ct(&ct),
        ss: ss.as_bytes().to_vec(),
        msg,
        sig: codec::encode_sig(&sig),
    }
}

/// Generates a KAT file for `count` records from a pinned master seed.
pub fn generate(params: &Params, height: u32, master_seed: &[u8; 32], count: usize) -> String {
    let profile = params.profile().expect("KAT files require a named profile");
    let scheme = MerkleLamport::with_height(height);
    let mut master = XofStream::from_raw_seed(&[&[MASTER_STREAM_TAG], &master_seed[..]].concat());

    let mut out = String::new();
    let _ = writeln!(
        out,
        "# RDMPF-KAT profile={} height={}",
        profile.name(),
        height
    );
    for index in 0..count {
        let mut seed = [0u8; 32];
        master.fill(&mut seed);
        let rec = derive_record(params, &scheme, seed);
        let _ = writeln!(out);
        let _ = writeln!(out, "count = {index}");
        let _ = writeln!(out, "seed = {}", hex::encode_upper(rec.seed));
        let _ = writeln!(out, "pk = {}", hex::encode_upper(&rec.pk));
        let _ = writeln!(out, "sk = {}", hex::encode_upper(&rec.sk));
        let _ = writeln!(out, "ct = {}", hex::encode_upper(&rec.ct));
        let _ = writeln!(out, "ss = {}", hex::encode_upper(&rec.ss));
        let _ = writeln!(out, "msg = {}", hex::encode_upper(&rec.msg));
        let _ = writeln!(out, "sig = {}", hex::encode_upper(&rec.sig));
    }
    out
}

/// Outcome of checking a KAT file.
#[derive(Debug)]
pub struct KatCheckReport {
    /// Profile named in the file header.
    pub profile: Profile,
    /// Tree height named in the file header.
    pub height: u32,
    /// Number of records checked.
    pub records: usize,
    /// Human-readable descriptions of every failed comparison.
    pub failures: Vec<String>,
}

impl KatCheckReport {
    /// True when every record regenerated and validated cleanly.
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

fn parse_header(line: &str) -> Result<(Profile, u32)> {
    let rest = line
        .strip_prefix("# RDMPF-KAT ")
        .ok_or_else(|| Error::KatFormat("missing '# RDMPF-KAT' header".into()))?;
    let mut profile = None;
    let mut height = None;
    for field in rest.split_whitespace() {
        if let Some(name) = field.strip_prefix("profile=") {
            profile = Some(Profile::from_name(name)?);
        } else if let Some(h) = field.strip_prefix("height=") {
            height = h.parse().ok();
        }
    }
    match (profile, height) {
        (Some(p), Some(h)) => Ok((p, h)),
        _ => Err(Error::KatFormat(
            "header must carry profile= and height=".into(),
        )),
    }
}

fn parse_records(text: &str) -> Result<Vec<BTreeMap<String, String>>> {
    let mut records = Vec::new();
    let mut current: Option<BTreeMap<String, String>> = None;
    for (lineno, line) in text.lines().enumerate().skip(1) {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (name, value) = line.split_once(" = ").ok_or_else(|| {
            Error::KatFormat(format!("line {}: expected 'name = value'", lineno + 1))
        })?;
        if name == "count" {
            if let Some(rec) = current.take() {
                records.push(rec);
            }
            current = Some(BTreeMap::new());
        }
        if let Some(rec) = current.as_mut() {
            rec.insert(name.to_string(), value.to_string());
        } else {
            return Err(Error::KatFormat(format!(
                "line {}: field before first count",
                lineno + 1
            )));
        }
    }
    if let Some(rec) = current.take() {
        records.push(rec);
    }
    Ok(records)
}

fn field<'a>(rec: &'a BTreeMap<String, String>, name: &str, index: usize) -> Result<&'a str> {
    rec.get(name)
        .map(String::as_str)
        .ok_or_else(|| Error::KatFormat(format!("record {index}: missing field '{name}'")))
}

fn hex_field(rec: &BTreeMap<String, String>, name: &str, index: usize) -> Result<Vec<u8>> {
    hex::decode(field(rec, name, index)?)
        .map_err(|_| Error::KatFormat(format!("record {index}: field '{name}' is not hex")))
}

/// Re-derives every record of a KAT file from its `seed` field and
/// compares all stored values, then cross-checks decapsulation and
/// signature verification through the decode paths.
pub fn check(text: &str) -> Result<KatCheckReport> {
    let first = text
        .lines()
        .next()
        .ok_or_else(|| Error::KatFormat("empty file".into()))?;
    let (profile, height) = parse_header(first)?;
    let params = Params::named(profile);
    let scheme = MerkleLamport::with_height(height);

    let records = parse_records(text)?;
    let mut failures = Vec::new();
    for (index, rec) in records.iter().enumerate() {
        let seed_bytes = hex_field(rec, "seed", index)?;
        let seed: [u8; 32] = seed_bytes
            .as_slice()
            .try_into()
            .map_err(|_| Error::KatFormat(format!("record {index}: seed must be 32 bytes")))?;
        let expected = derive_record(&params, &scheme, seed);

        for (name, stored, regenerated) in [
            ("pk", hex_field(rec, "pk", index)?, &expected.pk),
            ("sk", hex_field(rec, "sk", index)?, &expected.sk),
            ("ct", hex_field(rec, "ct", index)?, &expected.ct),
            ("ss", hex_field(rec, "ss", index)?, &expected.ss),
            ("msg", hex_field(rec, "msg", index)?, &expected.msg),
            ("sig", hex_field(rec, "sig", index)?, &expected.sig),
        ] {
            if &stored != regenerated {
                failures.push(format!("record {index}: {name} mismatch"));
            }
        }

        // Functional cross-checks through the decode paths.
        let sk = codec::decode_sk(&hex_field(rec, "sk", index)?)?;
        let ct = codec::decode_ct(&hex_field(rec, "ct", index)?, &params)?;
        if kem::decaps(&sk, &ct).as_bytes() != expected.ss.as_slice() {
            failures.push(format!("record {index}: decapsulation disagrees with ss"));
        }
        let pk = codec::decode_pk(&hex_field(rec, "pk", index)?)?;
        if pk.encoded() != hex_field(rec, "pk", index)?.as_slice() {
            failures.push(format!("record {index}: pk re-encoding disagrees"));
        }
    }
    Ok(KatCheckReport {
        profile,
        height,
        records: records.len(),
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generation_is_deterministic() {
        let params = Params::micro();
        let a = generate(&params, 4, &[1u8; 32], 2);
        let b = generate(&params, 4, &[1u8; 32], 2);
        assert_eq!(a, b);
        let c = generate(&params, 4, &[2u8; 32], 2);
        assert_ne!(a, c);
    }

    #[test]
    fn generated_files_check_clean() {
        let params = Params::micro();
        let text = generate(&params, 4, &[3u8; 32], 3);
        let report = check(&text).unwrap();
        assert!(report.ok(), "{:?}", report.failures);
        assert_eq!(report.records, 3);
        assert_eq!(report.profile, Profile::Micro);
    }

    #[test]
    fn corrupted_field_is_reported() {
        let params = Params::micro();
        let text = generate(&params, 4, &[4u8; 32], 1);
        let bad = text.replacen("ss = ", "ss = 00", 1);
        let report = check(&bad).unwrap();
        assert!(!report.ok());
        assert!(report.failures.iter().any(|f| f.contains("ss mismatch")));
    }

    #[test]
    fn malformed_files_error() {
        assert!(check("").is_err());
        assert!(check("# wrong header\n").is_err());
        let params = Params::micro();
        let text = generate(&params, 4, &[5u8; 32], 1);
        let broken = text.replace("seed = ", "seed  ");
        assert!(check(&broken).is_err());
    }
}
