//! Seeded random-move harnesses.
//!
//! Every rewrite drawn here is individually sound (it preserves the framed
//! link, or for stabilization the presented framed manifold), so any
//! downstream invariant that drifts under a random sequence is a bug in an
//! engine or in a move. The harness is deterministic per seed.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::diagram::{Basepoint, MoveSpec, SlicedDiagram};

/// One random applicable regular-isotopy or height-function move. Returns
/// the rewritten diagram and the component index map, or `None` when no
/// candidate applied within the attempt budget.
pub fn random_isotopy_move(
    d: &SlicedDiagram,
    rng: &mut ChaCha8Rng,
) -> Option<(SlicedDiagram, Vec<usize>)> {
    let geom = d.validate().ok()?;
    let s_count = d.slices().len();
    if s_count == 0 {
        return None;
    }
    let levels = geom.widths.len();
    for _ in 0..80 {
        let mv = match rng.random_range(0..8u32) {
            0 => MoveSpec::CommuteSlices { slice: rng.random_range(0..s_count) },
            1 => {
                let level = rng.random_range(1..levels.saturating_sub(1).max(2));
                if geom.widths.get(level).copied().unwrap_or(0) < 2 {
                    continue;
                }
                MoveSpec::R2Insert {
                    level,
                    pos: rng.random_range(0..geom.widths[level] - 1),
                    first_positive: rng.random_range(0..2) == 0,
                }
            }
            2 => MoveSpec::R2Cancel { slice: rng.random_range(0..s_count) },
            3 => MoveSpec::R3 { slice: rng.random_range(0..s_count) },
            4 => {
                let level = rng.random_range(1..levels.saturating_sub(1).max(2));
                if geom.widths.get(level).copied().unwrap_or(0) == 0 {
                    continue;
                }
                MoveSpec::ZigzagInsert {
                    level,
                    pos: rng.random_range(0..geom.widths[level]),
                    cup_right: rng.random_range(0..2) == 0,
                }
            }
            5 => MoveSpec::ZigzagCancel { slice: rng.random_range(0..s_count) },
            6 => MoveSpec::SlideCap { slice: rng.random_range(0..s_count) },
            _ => MoveSpec::SlideCup { slice: rng.random_range(0..s_count) },
        };
        if let Ok(res) = d.apply_move(&mv) {
            return Some(res);
        }
    }
    None
}

/// A random basepoint change on a random component: any wire slot of the
/// component, either direction.
pub fn random_basepoint_move(
    d: &SlicedDiagram,
    rng: &mut ChaCha8Rng,
) -> Option<(SlicedDiagram, Vec<usize>)> {
    let geom = d.validate().ok()?;
    if geom.comp_count == 0 {
        return None;
    }
    let comp = rng.random_range(0..geom.comp_count);
    let mut slots = Vec::new();
    for (l, &w) in geom.widths.iter().enumerate() {
        for p in 0..w {
            if geom.comp_of(l, p) == comp {
                slots.push((l, p));
            }
        }
    }
    let (level, pos) = slots[rng.random_range(0..slots.len())];
    let bp = Basepoint { level, pos, upward: rng.random_range(0..2) == 0 };
    d.apply_move(&MoveSpec::SetBasepoint { comp, basepoint: Some(bp) }).ok()
}

/// A random perturbation for state-sum invariance testing: mostly isotopy
/// and height moves, occasionally a basepoint change.
pub fn random_perturbation(
    d: &SlicedDiagram,
    rng: &mut ChaCha8Rng,
) -> Option<(SlicedDiagram, Vec<usize>)> {
    if rng.random_range(0..4u32) == 0 {
        random_basepoint_move(d, rng)
    } else {
        random_isotopy_move(d, rng)
    }
}
