//! Report rendering: newline-delimited JSON records (the default,
//! byte-deterministic) or a human summary. Witness payloads are truncated
//! to 4096 characters with the SHA-256 of the full rendering stated
//! alongside, so a truncated witness stays verifiable.

use std::io::Write;

use serde::Serialize;
use sha2::{Digest, Sha256};

use qsum_core::report::{Status, VerificationReport};

use crate::cli::Format;

const WITNESS_LIMIT: usize = 4096;

#[derive(Serialize)]
struct ReportLine<'a> {
    case: &'a str,
    params: &'a str,
    status: &'a str,
    witness: Option<String>,
    witness_sha256: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<u64>,
    seed: u64,
}

pub struct Emitter<W: Write> {
    out: W,
    format: Format,
    timings: bool,
    seed: u64,
    pub pass: u64,
    pub fail: u64,
    pub indeterminate: u64,
}

impl<W: Write> Emitter<W> {
    pub fn new(out: W, format: Format, timings: bool, seed: u64) -> Self {
        Emitter {
            out,
            format,
            timings,
            seed,
            pass: 0,
            fail: 0,
            indeterminate: 0,
        }
    }

    pub fn emit(&mut self, rep: &VerificationReport) -> std::io::Result<()> {
        match rep.status {
            Status::Pass => self.pass += 1,
            Status::Fail => self.fail += 1,
            Status::Indeterminate => self.indeterminate += 1,
        }
        match self.format {
            Format::Ndjson => {
                let (witness, witness_sha256) = match &rep.witness {
                    None => (None, None),
                    Some(w) => {
                        let sha = hex_sha256(w.as_bytes());
                        let shown = if w.chars().count() > WITNESS_LIMIT {
                            w.chars().take(WITNESS_LIMIT).collect()
                        } else {
                            w.clone()
                        };
                        (Some(shown), Some(sha))
                    }
                };
                let line = ReportLine {
                    case: &rep.case_name,
                    params: &rep.params,
                    status: rep.status.as_str(),
                    witness,
                    witness_sha256,
                    elapsed_ms: self.timings.then_some(rep.elapsed_ms),
                    seed: self.seed,
                };
                serde_json::to_writer(&mut self.out, &line)?;
                writeln!(self.out)
            }
            Format::Summary => {
                write!(
                    self.out,
                    "{:<13} {:<9} {}",
                    rep.case_name, rep.status, rep.params
                )?;
                if let Some(w) = &rep.witness {
                    let shown: String = w.chars().take(160).collect();
                    write!(self.out, "  [{shown}]")?;
                }
                writeln!(self.out, "  ({} ms)", rep.elapsed_ms)
            }
        }
    }

    /// Totals line; in NDJSON mode it goes to stderr so the record stream
    /// stays a pure function of the invocation.
    pub fn finish(&mut self, wall_ms: u64) -> std::io::Result<()> {
        let total = self.pass + self.fail + self.indeterminate;
        let line = format!(
            "summary: pass={} fail={} indeterminate={} total={} elapsed_ms={}",
            self.pass, self.fail, self.indeterminate, total, wall_ms
        );
        match self.format {
            Format::Ndjson => {
                eprintln!("{line}");
                Ok(())
            }
            Format::Summary => writeln!(self.out, "{line}"),
        }
    }

    /// Exit code: 0 all pass, 1 any fail, 3 no fail but some
    /// indeterminate.
    pub fn exit_code(&self) -> i32 {
        if self.fail > 0 {
            1
        } else if self.indeterminate > 0 {
            3
        } else {
            0
        }
    }
}

fn hex_sha256(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    let mut s = String::with_capacity(64);
    for b in digest {
        s.push_str(&format!("{b:02x}"));
    }
    s
}
