//! Thread-local operation counters.
//!
//! Implicit rejection promises that accepting and rejecting paths perform
//! the same work. The timing harness checks that on the clock; these
//! counters check it structurally, by counting the expensive primitives a
//! call performs. Counting is always on — the increments are a handful of
//! thread-local adds and cost nothing next to the operations they count.

use core::cell::Cell;

thread_local! {
    static RDMPF_CALLS: Cell<u64> = const { Cell::new(0) };
    static XOF_CALLS: Cell<u64> = const { Cell::new(0) };
    static INNER_SIGN_CALLS: Cell<u64> = const { Cell::new(0) };
    static INNER_VERIFY_CALLS: Cell<u64> = const { Cell::new(0) };
}

/// Snapshot of the per-thread counters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Counters {
    /// Core matrix-power-function evaluations.
    pub rdmpf: u64,
    /// Domain-separated XOF invocations (one per finalized input).
    pub xof: u64,
    /// Inner signature scheme signing calls.
    pub inner_sign: u64,
    /// Inner signature scheme verification calls.
    pub inner_verify: u64,
}

impl Counters {
    /// Counter increments since an earlier snapshot.
    pub fn since(&self, earlier: &Counters) -> Counters {
        Counters {
            rdmpf: self.rdmpf - earlier.rdmpf,
            xof: self.xof - earlier.xof,
            inner_sign: self.inner_sign - earlier.inner_sign,
            inner_verify: self.inner_verify - earlier.inner_verify,
        }
    }
}

/// Reads the current thread's counters.
pub fn snapshot() -> Counters {
    Counters {
        rdmpf: RDMPF_CALLS.with(Cell::get),
        xof: XOF_CALLS.with(Cell::get),
        inner_sign: INNER_SIGN_CALLS.with(Cell::get),
        inner_verify: INNER_VERIFY_CALLS.with(Cell::get),
    }
}

pub(crate) fn count_rdmpf() {
    RDMPF_CALLS.with(|c| c.set(c.get() + 1));
}

pub(crate) fn count_xof() {
    XOF_CALLS.with(|c| c.set(c.get() + 1));
}

pub(crate) fn count_inner_sign() {
    INNER_SIGN_CALLS.with(|c| c.set(c.get() + 1));
}

pub(crate) fn count_inner_verify() {
    INNER_VERIFY_CALLS.with(|c| c.set(c.get() + 1));
}
