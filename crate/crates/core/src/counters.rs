use std::ops::AddAssign;

use serde::Serialize;

/// Operation tallies. Complexity claims are checked against these rather
/// than wall-clock time.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counters {
    /// Arcs examined as relaxation candidates.
    pub relaxations: u64,
    /// Relaxations that lowered a label.
    pub improvements: u64,
    pub extract_mins: u64,
    /// Arcs touched by bookkeeping sweeps (subgraph extraction, reweighting).
    pub arc_scans: u64,
    /// Expand calls skipped because the admissible subgraph was cyclic and
    /// zero-cycle handling was disabled.
    pub skipped_expands: u64,
}

impl AddAssign for Counters {
    fn add_assign(&mut self, rhs: Counters) {
        self.relaxations += rhs.relaxations;
        self.improvements += rhs.improvements;
        self.extract_mins += rhs.extract_mins;
        self.arc_scans += rhs.arc_scans;
        self.skipped_expands += rhs.skipped_expands;
    }
}
