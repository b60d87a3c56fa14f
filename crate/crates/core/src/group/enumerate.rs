use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::{GroupElement, GroupSpec, Letter};
use crate::hyperbolic::Mobius;
use crate::{Error, Result};

/// Rounds the sign-canonical coefficients to a grid of `tol` scaled by the
/// power of two just above the largest entry, so that keys of large
/// matrices stay within `i64` and track their floating-point resolution.
pub(crate) fn dedup_key(m: &Mobius, tol: f64) -> [i64; 4] {
    let coeffs = m.coefficients();
    let max = coeffs.iter().fold(1.0f64, |acc, x| acc.max(libm::fabs(*x)));
    let grid = tol * libm::exp2(libm::ceil(libm::log2(max)));
    coeffs.map(|x| libm::round(x / grid) as i64)
}

/// All distinct non-identity elements of word length at most
/// `spec.max_word_length()`. See [`enumerate_to_depth`].
pub fn enumerate_ball(spec: &GroupSpec) -> Result<Vec<GroupElement>> {
    enumerate_to_depth(spec, spec.max_word_length())
}

/// Breadth-first enumeration of the ball of radius `depth` in the Cayley
/// graph.
///
/// Elements are distinct up to `±I` on the `dedup_tol` grid; the identity is
/// excluded. Output order is word length, then lexicographic word with
/// letters ordered `g₀, g₀⁻¹, g₁, g₁⁻¹, …`, and each element carries the
/// first word in that order that reaches it.
pub fn enumerate_to_depth(spec: &GroupSpec, depth: usize) -> Result<Vec<GroupElement>> {
    let letters: Vec<(Letter, Mobius)> = (0..spec.generators().len())
        .flat_map(|g| [Letter::new(g, false), Letter::new(g, true)])
        .map(|l| (l, spec.letter_matrix(l)))
        .collect();
    let tol = spec.dedup_tol();
    let cap = spec.ball_cap();

    let mut seen = BTreeSet::new();
    seen.insert(dedup_key(&Mobius::IDENTITY, tol));
    let mut out: Vec<GroupElement> = Vec::new();
    // the empty word seeds the first level
    let mut frontier: Vec<(Mobius, Vec<Letter>)> = alloc::vec![(Mobius::IDENTITY, Vec::new())];

    for _ in 0..depth {
        let mut next = Vec::new();
        for (m, word) in &frontier {
            let last = word.last().copied();
            for (l, lm) in &letters {
                if last == Some(l.inverted()) {
                    continue;
                }
                let prod = m.compose(lm);
                if seen.insert(dedup_key(&prod, tol)) {
                    if out.len() + next.len() >= cap {
                        return Err(Error::BallTooLarge { cap });
                    }
                    let mut w = word.clone();
                    w.push(*l);
                    next.push((prod, w));
                }
            }
        }
        if next.is_empty() {
            break;
        }
        out.extend(
            next.iter()
                .map(|(m, w)| GroupElement::from_parts(*m, w.clone())),
        );
        frontier = next;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Family;
    use alloc::vec;

    fn schottky() -> GroupSpec {
        GroupSpec::with_generators(Family::default_schottky().generators().unwrap(), 4).unwrap()
    }

    /// Reduced words in a free group of rank `r`: `2r(2r − 1)^(k−1)` of each
    /// length `k ≥ 1`.
    fn free_ball_size(rank: usize, depth: usize) -> usize {
        (1..=depth)
            .map(|k| 2 * rank * (2 * rank - 1).pow(k as u32 - 1))
            .sum()
    }

    #[test]
    fn cyclic_parabolic_ball() {
        let spec = GroupSpec::with_generators(vec![Mobius::translation(1.0)], 3).unwrap();
        let ball = enumerate_ball(&spec).unwrap();
        let shifts: Vec<f64> = ball.iter().map(|g| g.matrix().b()).collect();
        assert_eq!(shifts, vec![1.0, -1.0, 2.0, -2.0, 3.0, -3.0]);
    }

    #[test]
    fn schottky_ball_matches_free_group_count() {
        let spec = schottky();
        for depth in 0..=4 {
            let ball = enumerate_to_depth(&spec, depth).unwrap();
            assert_eq!(ball.len(), free_ball_size(2, depth), "depth {depth}");
        }
        assert_eq!(enumerate_to_depth(&spec, 2).unwrap().len(), 16);
    }

    #[test]
    fn depth_zero_is_empty() {
        assert!(enumerate_to_depth(&schottky(), 0).unwrap().is_empty());
    }

    #[test]
    fn order_is_length_then_lex() {
        let ball = enumerate_ball(&schottky()).unwrap();
        for pair in ball.windows(2) {
            let (u, v) = (pair[0].word(), pair[1].word());
            assert!(u.len() < v.len() || (u.len() == v.len() && u < v));
        }
    }

    #[test]
    fn relations_collapse() {
        // rotation by π/4 has order 4 in PSL(2, ℝ)
        let r = Mobius::rotation(core::f64::consts::FRAC_PI_4);
        let spec = GroupSpec::with_generators(vec![r], 6).unwrap();
        assert_eq!(enumerate_ball(&spec).unwrap().len(), 3);
    }

    #[test]
    fn cap_is_enforced() {
        let spec = schottky().with_ball_cap(10);
        assert_eq!(enumerate_ball(&spec), Err(Error::BallTooLarge { cap: 10 }));
    }
}
