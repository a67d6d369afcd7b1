//! Thread-local operation counters.
//!
//! Every modular multiplication and inversion in the prime field is counted,
//! including the ones performed inside extension-field arithmetic. Counts are
//! attributed to the phase that is active when they happen.

use std::cell::{Cell, RefCell};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phase {
    Other = 0,
    Puiseux = 1,
    LinearAlgebra = 2,
    Factorization = 3,
}

const NPHASES: usize = 4;

thread_local! {
    static MULS: Cell<[u64; NPHASES]> = const { Cell::new([0; NPHASES]) };
    static INVS: Cell<[u64; NPHASES]> = const { Cell::new([0; NPHASES]) };
    static PHASE: Cell<Phase> = const { Cell::new(Phase::Other) };
    static SYSTEMS: Cell<u64> = const { Cell::new(0) };
    static ITERATIONS: Cell<u64> = const { Cell::new(0) };
    static TIMES: RefCell<PhaseClock> = RefCell::new(PhaseClock::new());
}

struct PhaseClock {
    last: Instant,
    spent: [Duration; NPHASES],
}

impl PhaseClock {
    fn new() -> Self {
        PhaseClock {
            last: Instant::now(),
            spent: [Duration::ZERO; NPHASES],
        }
    }
    fn flush(&mut self, phase: Phase) {
        let now = Instant::now();
        self.spent[phase as usize] += now - self.last;
        self.last = now;
    }
}

#[inline]
pub fn add_muls(n: u64) {
    MULS.with(|c| {
        let mut v = c.get();
        v[PHASE.with(|p| p.get()) as usize] += n;
        c.set(v);
    });
}

#[inline]
pub fn add_invs(n: u64) {
    INVS.with(|c| {
        let mut v = c.get();
        v[PHASE.with(|p| p.get()) as usize] += n;
        c.set(v);
    });
}

/// One linear system handed to a solver (van Hoeij style algorithms).
pub fn count_system() {
    SYSTEMS.with(|c| c.set(c.get() + 1));
}

/// One round of an iterative closure algorithm (Trager).
pub fn count_iteration() {
    ITERATIONS.with(|c| c.set(c.get() + 1));
}

pub fn systems() -> u64 {
    SYSTEMS.with(|c| c.get())
}

/// Switches the active phase until the guard is dropped.
pub struct PhaseGuard {
    prev: Phase,
}

pub fn enter(phase: Phase) -> PhaseGuard {
    let prev = PHASE.with(|p| p.get());
    TIMES.with(|t| t.borrow_mut().flush(prev));
    PHASE.with(|p| p.set(phase));
    PhaseGuard { prev }
}

impl Drop for PhaseGuard {
    fn drop(&mut self) {
        let cur = PHASE.with(|p| p.get());
        TIMES.with(|t| t.borrow_mut().flush(cur));
        PHASE.with(|p| p.set(self.prev));
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct PhaseCounts {
    pub field_mults: u64,
    pub field_invs: u64,
    pub wall_ms: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct OpCountReport {
    pub field_mults: u64,
    pub field_invs: u64,
    pub wall_ms: f64,
    pub linear_systems: u64,
    pub iterations: u64,
    pub puiseux: PhaseCounts,
    pub linear_algebra: PhaseCounts,
    pub factorization: PhaseCounts,
    pub other: PhaseCounts,
}

impl OpCountReport {
    /// Total operation count used for scaling fits.
    pub fn total_ops(&self) -> u64 {
        self.field_mults + self.field_invs
    }

    pub fn merge(&mut self, other: &OpCountReport) {
        self.field_mults += other.field_mults;
        self.field_invs += other.field_invs;
        self.wall_ms += other.wall_ms;
        self.linear_systems += other.linear_systems;
        self.iterations += other.iterations;
        for (a, b) in [
            (&mut self.puiseux, &other.puiseux),
            (&mut self.linear_algebra, &other.linear_algebra),
            (&mut self.factorization, &other.factorization),
            (&mut self.other, &other.other),
        ] {
            a.field_mults += b.field_mults;
            a.field_invs += b.field_invs;
            a.wall_ms += b.wall_ms;
        }
    }
}

/// Resets all counters of the current thread.
pub fn reset() {
    MULS.with(|c| c.set([0; NPHASES]));
    INVS.with(|c| c.set([0; NPHASES]));
    SYSTEMS.with(|c| c.set(0));
    ITERATIONS.with(|c| c.set(0));
    PHASE.with(|p| p.set(Phase::Other));
    TIMES.with(|t| *t.borrow_mut() = PhaseClock::new());
}

/// Snapshot of the counters accumulated since the last [`reset`].
pub fn report() -> OpCountReport {
    let cur = PHASE.with(|p| p.get());
    TIMES.with(|t| t.borrow_mut().flush(cur));
    let muls = MULS.with(|c| c.get());
    let invs = INVS.with(|c| c.get());
    let spent = TIMES.with(|t| t.borrow().spent);
    let phase = |i: usize| PhaseCounts {
        field_mults: muls[i],
        field_invs: invs[i],
        wall_ms: spent[i].as_secs_f64() * 1e3,
    };
    OpCountReport {
        field_mults: muls.iter().sum(),
        field_invs: invs.iter().sum(),
        wall_ms: spent.iter().map(|d| d.as_secs_f64() * 1e3).sum(),
        linear_systems: SYSTEMS.with(|c| c.get()),
        iterations: ITERATIONS.with(|c| c.get()),
        other: phase(Phase::Other as usize),
        puiseux: phase(Phase::Puiseux as usize),
        linear_algebra: phase(Phase::LinearAlgebra as usize),
        factorization: phase(Phase::Factorization as usize),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phases_attribute_counts() {
        reset();
        add_muls(3);
        {
            let _g = enter(Phase::Puiseux);
            add_muls(5);
            add_invs(1);
        }
        add_muls(1);
        let r = report();
        assert_eq!(r.field_mults, 9);
        assert_eq!(r.puiseux.field_mults, 5);
        assert_eq!(r.puiseux.field_invs, 1);
        assert_eq!(r.other.field_mults, 4);
    }
}
