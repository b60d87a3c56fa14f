//! Finitely generated Fuchsian groups explored through finite word balls.

mod classify;
mod enumerate;
mod presets;

use alloc::vec::Vec;
use core::fmt;

use crate::hyperbolic::Mobius;
use crate::tol::{BALL_CAP, DEDUP_TOL};
use crate::{Error, Result};

pub use classify::{
    check_elliptic_free, classify_isometry, fixed_point_residual, fixed_points, IsometryClass,
};
pub(crate) use enumerate::dedup_key;
pub use enumerate::{enumerate_ball, enumerate_to_depth};
pub use presets::{circle_pairing, Circle, Family};

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn inverted(self) -> Self {
        Letter {
            inverse: !self.inverse,
            ..self
        }
    }

    /// `+(k+1)` for generator `k`, `−(k+1)` for its inverse.
    pub fn signed_index(self) -> i64 {
        let k = self.generator as i64 + 1;
        if self.inverse {
            -k
        } else {
            k
        }
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for Letter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        s.serialize_i64(self.signed_index())
    }
}

/// Generators plus the parameters of the finite ball used to approximate the
/// group they generate.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupSpec {
    generators: Vec<Mobius>,
    max_word_length: usize,
    dedup_tol: f64,
    ball_cap: usize,
}

impl GroupSpec {
    pub fn new(generators: Vec<Mobius>, max_word_length: usize, dedup_tol: f64) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidGroupSpec("generator list is empty"));
        }
        if max_word_length == 0 {
            return Err(Error::InvalidGroupSpec("max_word_length must be positive"));
        }
        if !(dedup_tol.is_finite() && dedup_tol > 0.0) {
            return Err(Error::InvalidGroupSpec("dedup_tol must be positive"));
        }
        if generators.iter().any(|g| g.is_identity(dedup_tol)) {
            return Err(Error::InvalidGroupSpec("identity generator"));
        }
        Ok(GroupSpec {
            generators,
            max_word_length,
            dedup_tol,
            ball_cap: BALL_CAP,
        })
    }

    /// Spec with the default deduplication tolerance.
    pub fn with_generators(generators: Vec<Mobius>, max_word_length: usize) -> Result<Self> {
        Self::new(generators, max_word_length, DEDUP_TOL)
    }

    pub fn with_ball_cap(mut self, cap: usize) -> Self {
        self.ball_cap = cap;
        self
    }

    pub fn with_max_word_length(mut self, depth: usize) -> Result<Self> {
        if depth == 0 {
            return Err(Error::InvalidGroupSpec("max_word_length must be positive"));
        }
        self.max_word_length = depth;
        Ok(self)
    }

    pub fn generators(&self) -> &[Mobius] {
        &self.generators
    }

    pub fn max_word_length(&self) -> usize {
        self.max_word_length
    }

    pub fn dedup_tol(&self) -> f64 {
        self.dedup_tol
    }

    pub fn ball_cap(&self) -> usize {
        self.ball_cap
    }

    pub fn letter_matrix(&self, letter: Letter) -> Mobius {
        let g = self.generators[letter.generator];
        if letter.inverse {
            g.inverse()
        } else {
            g
        }
    }

    /// Ordered product of the letters of `word`.
    pub fn evaluate(&self, word: &[Letter]) -> Mobius {
        word.iter().fold(Mobius::IDENTITY, |acc, l| {
            acc.compose(&self.letter_matrix(*l))
        })
    }

    /// The spec of `k Γ k⁻¹`, same word lengths and tolerances.
    pub fn conjugated_by(&self, k: &Mobius) -> GroupSpec {
        GroupSpec {
            generators: self.generators.iter().map(|g| g.conjugate_by(k)).collect(),
            ..self.clone()
        }
    }
}

/// A group element with the shortest word found for it.
///
/// Elements built with [`GroupElement::synthetic`] carry an empty word.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct GroupElement {
    matrix: Mobius,
    word: Vec<Letter>,
}

impl GroupElement {
    pub fn from_word(spec: &GroupSpec, word: Vec<Letter>) -> Self {
        GroupElement {
            matrix: spec.evaluate(&word),
            word,
        }
    }

    pub(crate) fn from_parts(matrix: Mobius, word: Vec<Letter>) -> Self {
        GroupElement { matrix, word }
    }

    /// An element known only by its matrix, e.g. a hand-built test sequence.
    pub fn synthetic(matrix: Mobius) -> Self {
        GroupElement {
            matrix,
            word: Vec::new(),
        }
    }

    pub fn matrix(&self) -> &Mobius {
        &self.matrix
    }

    pub fn word(&self) -> &[Letter] {
        &self.word
    }

    pub fn word_length(&self) -> usize {
        self.word.len()
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement {
            matrix: self.matrix.inverse(),
            word: self.word.iter().rev().map(|l| l.inverted()).collect(),
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "{:?}", self.matrix.coefficients());
        }
        for (k, l) in self.word.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", l.signed_index())?;
        }
        Ok(())
    }
}
