//! Cycle-pair certificates for interior links and border-link analysis.

pub mod border;
pub mod certificate;
pub mod cycles;

use crate::error::{Error, Result};

pub use border::{
    check_prop4a, classify_all, classify_link, find_disjoint_monitor_paths, find_monitor_face,
    is_strengthened, BorderClassification, BorderVerdict, FaceBorderCount, MonitorPaths,
};
pub use certificate::{
    find_cycle_pair, verify_certificate, CyclePairCertificate, MonitorAssignment, Verdicts,
};
pub use cycles::{
    cycles_through, detached_size, eliminate_chords, enumerate_cycles, enumerate_faces,
    faces_through, first_chord, grow_induced_cycle, is_chordless, is_face, monitor_free_components,
    refine_to_face, Cycle,
};

pub const DEFAULT_CEILING: usize = 200_000;

/// Bound on the number of objects any single search may materialize.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub ceiling: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            ceiling: DEFAULT_CEILING,
        }
    }
}

impl SearchLimits {
    pub fn new(ceiling: usize) -> Self {
        SearchLimits { ceiling }
    }

    pub fn check(&self, count: usize, what: &str) -> Result<()> {
        if count > self.ceiling {
            return Err(Error::SearchSpaceTooLarge {
                ceiling: self.ceiling,
                what: what.to_string(),
            });
        }
        Ok(())
    }
}

/// Order in which candidate cycle pairs are tried.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SearchOrder {
    #[default]
    Canonical,
    Reversed,
}
