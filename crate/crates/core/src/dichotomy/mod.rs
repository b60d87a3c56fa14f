//! Orbit-closure criteria for the horocycle flow and the recurrence versus
//! non-minimality pipeline.
//!
//! For a unit tangent vector `u` and a sequence `(γ_n)` of distinct group
//! elements, `t` belongs to `T_u` (witnessed by `α`) when
//!
//! 1. `γ_n ũ(∞) → α ũ(∞)`, and
//! 2. `B_{ũ(∞)}(γ_n⁻¹ i, α⁻¹ i) → t`.
//!
//! With `α = id` and `t = 0` this is the recurrence criterion. Limits are
//! replaced by settle rules on finite sequences, see [`Settle`].

mod criteria;
mod pipeline;
mod sequence;

pub use criteria::{
    boundary_residual, settle_boundary, settle_cauchy, settle_to_target, test_recurrence,
    test_tu_membership, ConvergenceVerdict, Limit, RecurrenceVerdict,
};
pub use pipeline::{diagnose_sequence, run_dichotomy, DiagnosticsReport, DichotomyVerdict};
pub use sequence::{
    check_coefficient_asymptotics, displacement_at_log_b, displacement_formula,
    find_bounded_escaping_sequence, CoefficientReport, DisplacementCheck, LowerLeftCheck,
    SequenceCandidate, GROWTH_FACTOR,
};

use crate::{Error, Result};

/// A finite sequence settles when its last `window_count` residuals are all
/// below `eps`. Values beyond `1/eps` in magnitude are treated as divergent.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Settle {
    pub eps: f64,
    pub window_count: usize,
}

impl Default for Settle {
    fn default() -> Self {
        Settle {
            eps: 1e-6,
            window_count: 5,
        }
    }
}

/// Closed band `lo ≤ Im z ≤ hi` with `0 < lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct HeightBand {
    pub lo: f64,
    pub hi: f64,
}

impl HeightBand {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo > 0.0 && lo < hi && hi.is_finite()) {
            return Err(Error::InvalidParameter("height band needs 0 < lo < hi"));
        }
        Ok(HeightBand { lo, hi })
    }

    pub fn contains(&self, h: f64) -> bool {
        self.lo <= h && h <= self.hi
    }
}

impl Default for HeightBand {
    fn default() -> Self {
        HeightBand { lo: 0.5, hi: 2.0 }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct DichotomyConfig {
    pub band: HeightBand,
    pub settle: Settle,
    pub min_seq_len: usize,
    /// Witnesses `α` for `T_u` are the ball elements up to this word length.
    pub alpha_max_word_length: usize,
    /// Enumeration depth; `None` uses the spec's `max_word_length`.
    pub depth: Option<usize>,
}

impl Default for DichotomyConfig {
    fn default() -> Self {
        DichotomyConfig {
            band: HeightBand::default(),
            settle: Settle::default(),
            min_seq_len: 8,
            alpha_max_word_length: 2,
            depth: None,
        }
    }
}
