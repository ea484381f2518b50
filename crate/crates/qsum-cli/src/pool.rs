//! One coordinator, N stateless workers over immutable case descriptors.
//! Workers pull indices from a shared counter and send results over a
//! channel; the emitter holds results until all predecessors are written,
//! so the report stream is in canonical case order regardless of worker
//! count or scheduling.

use std::collections::BTreeMap;
use std::io::Write;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;

use qsum_core::report::VerificationReport;

use crate::cases::Case;
use crate::emit::Emitter;

pub fn run_cases<W: Write>(
    cases: &[Case],
    jobs: usize,
    seed: u64,
    emitter: &mut Emitter<W>,
) -> std::io::Result<()> {
    let jobs = jobs.max(1).min(cases.len().max(1));
    let next = AtomicUsize::new(0);
    let (tx, rx) = mpsc::channel::<(usize, VerificationReport)>();

    std::thread::scope(|scope| -> std::io::Result<()> {
        for _ in 0..jobs {
            let tx = tx.clone();
            let next = &next;
            scope.spawn(move || loop {
                let idx = next.fetch_add(1, Ordering::Relaxed);
                if idx >= cases.len() {
                    break;
                }
                let report = cases[idx].run(seed);
                if tx.send((idx, report)).is_err() {
                    break;
                }
            });
        }
        drop(tx);

        let mut pending: BTreeMap<usize, VerificationReport> = BTreeMap::new();
        let mut next_write = 0usize;
        for (idx, report) in rx {
            pending.insert(idx, report);
            while let Some(report) = pending.remove(&next_write) {
                emitter.emit(&report)?;
                next_write += 1;
            }
        }
        debug_assert!(pending.is_empty());
        Ok(())
    })
}
