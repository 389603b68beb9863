//! Framed-link projections as sliced Morse diagrams.
//!
//! A diagram is a bottom-to-top sequence of elementary slices (cup, cap,
//! positive/negative crossing, identity), each acting at a wire position.
//! The height function is the slice index, so rotation numbers are prefix
//! sums over the critical points a traversal passes.
//!
//! Conventions fixed here and relied on by every engine downstream:
//!
//! * A positive crossing `x+` is the geometric crossing in which the strand
//!   running lower-left → upper-right passes over. Its contribution to
//!   writhe/linking is `+1` when the two passes are parallel (both directed
//!   up or both down) and `−1` otherwise; `x-` is the mirror.
//! * Critical-point rotation signs: a critical point (cup or cap) counts
//!   `+1` when the traversal turns counterclockwise through it and `−1`
//!   clockwise. In sliced terms: entering a cap along its left leg is `−1`
//!   and along its right leg `+1`; entering a cup along its left leg is
//!   `+1` and along its right leg `−1`. This makes the round
//!   counterclockwise circle have winding number `+1`, and the winding
//!   number of any component is half the signed count of its critical
//!   points.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::surgery::SurgeryMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    Cup(usize),
    Cap(usize),
    CrossPos(usize),
    CrossNeg(usize),
    Id,
}

impl Generator {
    fn width_delta(&self) -> isize {
        match self {
            Generator::Cup(_) => 2,
            Generator::Cap(_) => -2,
            _ => 0,
        }
    }
}

/// A marked point on a component: the interior of the wire slot at
/// `(level, pos)`, together with the direction of travel that starts the
/// traversal (`upward = true` is the direction of increasing height).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Basepoint {
    pub level: usize,
    pub pos: usize,
    pub upward: bool,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("slice {0}: position {1} out of range for width {2}")]
    PositionOutOfRange(usize, usize, usize),
    #[error("diagram ends with {0} open wires")]
    NonzeroFinalWidth(usize),
    #[error("component count mismatch: diagram has {0}, metadata has {1}")]
    ComponentCountMismatch(usize, usize),
    #[error("basepoint for component {0} does not lie on that component")]
    BasepointOffComponent(usize),
    #[error("basepoint for component {0} names a nonexistent wire slot")]
    BasepointOutOfRange(usize),
    #[error("unknown component {0}")]
    UnknownComponent(usize),
    #[error("inter-component crossing count between {0} and {1} is odd")]
    OddCrossingCount(usize, usize),
    #[error("component {0} has framing {1}, which is odd; an even link is required")]
    OddFraming(usize, i64),
    #[error("malformed link file: {0}")]
    Parse(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MoveError {
    #[error("move does not match the diagram at the requested location")]
    PatternMismatch,
    #[error("move location out of range")]
    OutOfRange,
    #[error("move produced an invalid diagram: {0}")]
    Invalid(DiagramError),
}

/// Crossing site: slice index, left wire position, geometric type.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrossingSite {
    pub slice: usize,
    pub pos: usize,
    pub positive: bool,
}

/// Derived combinatorics of a valid diagram: wire widths per level, the
/// component and canonical traversal direction of every wire slot, and the
/// crossing list. Levels run `0..=S` for `S` slices; the slot `(l, p)` is
/// the wire between slice `l-1` and slice `l`.
#[derive(Debug, Clone)]
pub struct Geometry {
    pub widths: Vec<usize>,
    pub comp_count: usize,
    comp_of: Vec<Vec<usize>>,
    canon_up: Vec<Vec<bool>>,
    pub comp_first_slot: Vec<(usize, usize)>,
    /// Signed critical count along the canonical traversal of each component.
    pub canon_rotation: Vec<i64>,
    pub crossings: Vec<CrossingSite>,
    crossing_at_slice: Vec<Option<usize>>,
}

impl Geometry {
    pub fn comp_of(&self, level: usize, pos: usize) -> usize {
        self.comp_of[level][pos]
    }

    pub fn canon_up(&self, level: usize, pos: usize) -> bool {
        self.canon_up[level][pos]
    }

    pub fn crossing_index_at(&self, slice: usize) -> Option<usize> {
        self.crossing_at_slice[slice]
    }
}

/// A decoration point passed during a traversal: which crossing, which of
/// its two lower wires, and the accumulated integer rotation number at the
/// moment of passage.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecorationEvent {
    pub crossing: usize,
    pub right_side: bool,
    pub rotation: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlicedDiagram {
    slices: Vec<Generator>,
    orientations: Vec<bool>,
    basepoints: Vec<Option<Basepoint>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct WalkState {
    level: usize,
    pos: usize,
    up: bool,
}

impl SlicedDiagram {
    pub fn new(
        slices: Vec<Generator>,
        orientations: Vec<bool>,
        basepoints: Vec<Option<Basepoint>>,
    ) -> Result<Self, Vec<DiagramError>> {
        let d = SlicedDiagram { slices, orientations, basepoints };
        d.validate()?;
        Ok(d)
    }

    /// Builds from bare slices with default metadata: every component is
    /// oriented so that its winding number is `+1` whenever the bare winding
    /// is `±1`, and basepoints are left at their defaults.
    pub fn from_slices(slices: Vec<Generator>) -> Result<Self, Vec<DiagramError>> {
        let mut d = SlicedDiagram { slices, orientations: Vec::new(), basepoints: Vec::new() };
        d.check_widths().map_err(|e| vec![e])?;
        let geom = d.geometry();
        d.orientations = geom.canon_rotation.iter().map(|&r| r >= 0).collect();
        d.basepoints = vec![None; geom.comp_count];
        d.validate()?;
        Ok(d)
    }

    pub fn slices(&self) -> &[Generator] {
        &self.slices
    }

    pub fn orientations(&self) -> &[bool] {
        &self.orientations
    }

    pub fn basepoint(&self, comp: usize) -> Option<Basepoint> {
        self.basepoints.get(comp).copied().flatten()
    }

    pub fn component_count(&self) -> usize {
        self.orientations.len()
    }

    fn check_widths(&self) -> Result<(), DiagramError> {
        let mut w: usize = 0;
        for (s, g) in self.slices.iter().enumerate() {
            let ok = match *g {
                Generator::Cup(p) => p <= w,
                Generator::Cap(p) | Generator::CrossPos(p) | Generator::CrossNeg(p) => {
                    w >= 2 && p + 2 <= w
                }
                Generator::Id => true,
            };
            if !ok {
                let p = pos_of(*g);
                return Err(DiagramError::PositionOutOfRange(s, p, w));
            }
            w = (w as isize + g.width_delta()) as usize;
        }
        if w != 0 {
            return Err(DiagramError::NonzeroFinalWidth(w));
        }
        Ok(())
    }

    /// Structural validation; returns every violation found.
    pub fn validate(&self) -> Result<Geometry, Vec<DiagramError>> {
        let mut errors = Vec::new();
        if let Err(e) = self.check_widths() {
            return Err(vec![e]);
        }
        let geom = self.geometry();
        if geom.comp_count != self.orientations.len() || geom.comp_count != self.basepoints.len() {
            errors.push(DiagramError::ComponentCountMismatch(
                geom.comp_count,
                self.orientations.len(),
            ));
        }
        for (c, bp) in self.basepoints.iter().enumerate() {
            if let Some(bp) = bp {
                if bp.level >= geom.widths.len() || bp.pos >= geom.widths[bp.level] {
                    errors.push(DiagramError::BasepointOutOfRange(c));
                } else if geom.comp_of(bp.level, bp.pos) != c {
                    errors.push(DiagramError::BasepointOffComponent(c));
                }
            }
        }
        if errors.is_empty() {
            Ok(geom)
        } else {
            Err(errors)
        }
    }

    fn level_widths(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.slices.len() + 1);
        let mut w: isize = 0;
        out.push(0);
        for g in &self.slices {
            w += g.width_delta();
            out.push(w.max(0) as usize);
        }
        out
    }

    /// One traversal step. `emit` receives the rotation sign of any critical
    /// point passed during the transition.
    fn step(&self, st: WalkState, emit: &mut impl FnMut(i64)) -> WalkState {
        let WalkState { level, pos, up } = st;
        if up {
            match self.slices[level] {
                Generator::Cup(c) => WalkState {
                    level: level + 1,
                    pos: if pos >= c { pos + 2 } else { pos },
                    up: true,
                },
                Generator::Cap(c) => {
                    if pos == c {
                        emit(-1);
                        WalkState { level, pos: c + 1, up: false }
                    } else if pos == c + 1 {
                        emit(1);
                        WalkState { level, pos: c, up: false }
                    } else {
                        WalkState {
                            level: level + 1,
                            pos: if pos > c + 1 { pos - 2 } else { pos },
                            up: true,
                        }
                    }
                }
                Generator::CrossPos(c) | Generator::CrossNeg(c) => {
                    let new_pos = if pos == c {
                        c + 1
                    } else if pos == c + 1 {
                        c
                    } else {
                        pos
                    };
                    WalkState { level: level + 1, pos: new_pos, up: true }
                }
                Generator::Id => WalkState { level: level + 1, pos, up: true },
            }
        } else {
            match self.slices[level - 1] {
                Generator::Cup(c) => {
                    if pos == c {
                        emit(1);
                        WalkState { level, pos: c + 1, up: true }
                    } else if pos == c + 1 {
                        emit(-1);
                        WalkState { level, pos: c, up: true }
                    } else {
                        WalkState {
                            level: level - 1,
                            pos: if pos > c + 1 { pos - 2 } else { pos },
                            up: false,
                        }
                    }
                }
                Generator::Cap(c) => WalkState {
                    level: level - 1,
                    pos: if pos >= c { pos + 2 } else { pos },
                    up: false,
                },
                Generator::CrossPos(c) | Generator::CrossNeg(c) => {
                    let new_pos = if pos == c {
                        c + 1
                    } else if pos == c + 1 {
                        c
                    } else {
                        pos
                    };
                    WalkState { level: level - 1, pos: new_pos, up: false }
                }
                Generator::Id => WalkState { level: level - 1, pos, up: false },
            }
        }
    }

    /// Derived combinatorics; assumes widths already check out.
    fn geometry(&self) -> Geometry {
        let widths = self.level_widths();
        let levels = widths.len();
        let mut comp_of: Vec<Vec<usize>> = widths.iter().map(|&w| vec![usize::MAX; w]).collect();
        let mut canon_up: Vec<Vec<bool>> = widths.iter().map(|&w| vec![true; w]).collect();
        let mut comp_first_slot = Vec::new();
        let mut canon_rotation = Vec::new();
        for l in 0..levels {
            for p in 0..widths[l] {
                if comp_of[l][p] != usize::MAX {
                    continue;
                }
                let comp = comp_first_slot.len();
                comp_first_slot.push((l, p));
                let start = WalkState { level: l, pos: p, up: true };
                let mut rot = 0i64;
                let mut cur = start;
                loop {
                    comp_of[cur.level][cur.pos] = comp;
                    canon_up[cur.level][cur.pos] = cur.up;
                    cur = self.step(cur, &mut |s| rot += s);
                    if cur == start {
                        break;
                    }
                }
                canon_rotation.push(rot);
            }
        }
        let mut crossings = Vec::new();
        let mut crossing_at_slice = vec![None; self.slices.len()];
        for (s, g) in self.slices.iter().enumerate() {
            let site = match *g {
                Generator::CrossPos(p) => Some(CrossingSite { slice: s, pos: p, positive: true }),
                Generator::CrossNeg(p) => Some(CrossingSite { slice: s, pos: p, positive: false }),
                _ => None,
            };
            if let Some(site) = site {
                crossing_at_slice[s] = Some(crossings.len());
                crossings.push(site);
            }
        }
        Geometry {
            widths,
            comp_count: comp_first_slot.len(),
            comp_of,
            canon_up,
            comp_first_slot,
            canon_rotation,
            crossings,
            crossing_at_slice,
        }
    }

    /// True when the orientation of the component traverses the slot upward.
    pub fn oriented_up(&self, geom: &Geometry, level: usize, pos: usize) -> bool {
        geom.canon_up(level, pos) == self.orientations[geom.comp_of(level, pos)]
    }

    /// Winding numbers per component under the fixed rotation convention.
    pub fn winding_numbers(&self, geom: &Geometry) -> Vec<i64> {
        geom.canon_rotation
            .iter()
            .zip(self.orientations.iter())
            .map(|(&r, &o)| if o { r / 2 } else { -r / 2 })
            .collect()
    }

    fn crossing_sign(&self, geom: &Geometry, site: &CrossingSite) -> i64 {
        let a = self.oriented_up(geom, site.slice, site.pos);
        let b = self.oriented_up(geom, site.slice, site.pos + 1);
        let base = if site.positive { 1 } else { -1 };
        base * (if a { 1 } else { -1 }) * (if b { 1 } else { -1 })
    }

    /// Writhe (signed self-crossing count, the blackboard framing) per
    /// component.
    pub fn writhes(&self, geom: &Geometry) -> Vec<i64> {
        let mut out = vec![0i64; geom.comp_count];
        for site in &geom.crossings {
            let ca = geom.comp_of(site.slice, site.pos);
            let cb = geom.comp_of(site.slice, site.pos + 1);
            if ca == cb {
                out[ca] += self.crossing_sign(geom, site);
            }
        }
        out
    }

    /// The linking matrix: writhes on the diagonal, half the signed
    /// inter-component crossing count off it.
    pub fn linking_matrix(&self, geom: &Geometry) -> Result<SurgeryMatrix, DiagramError> {
        let n = geom.comp_count;
        let mut acc = vec![vec![0i64; n]; n];
        for site in &geom.crossings {
            let ca = geom.comp_of(site.slice, site.pos);
            let cb = geom.comp_of(site.slice, site.pos + 1);
            let s = self.crossing_sign(geom, site);
            if ca == cb {
                acc[ca][ca] += 2 * s; // a self-crossing is worth a full unit
            } else {
                acc[ca][cb] += s;
                acc[cb][ca] += s;
            }
        }
        for i in 0..n {
            for j in 0..n {
                if acc[i][j] % 2 != 0 {
                    return Err(DiagramError::OddCrossingCount(i, j));
                }
                acc[i][j] /= 2;
            }
        }
        SurgeryMatrix::new(acc).map_err(|e| DiagramError::Parse(e.to_string()))
    }

    pub fn is_even_link(&self, geom: &Geometry) -> bool {
        self.writhes(geom).iter().all(|w| w % 2 == 0)
    }

    /// Effective basepoint of a component: the stored one, or the default —
    /// the lowest wire slot of the component, directed upward.
    pub fn effective_basepoint(&self, geom: &Geometry, comp: usize) -> Basepoint {
        self.basepoints[comp].unwrap_or({
            let (level, pos) = geom.comp_first_slot[comp];
            Basepoint { level, pos, upward: true }
        })
    }

    /// Walks a component from its basepoint in the basepoint direction,
    /// returning the decoration points passed (in visitation order, each
    /// with its integer rotation number) and the total rotation of the full
    /// circuit.
    pub fn walk_events(&self, geom: &Geometry, comp: usize) -> (Vec<DecorationEvent>, i64) {
        let bp = self.effective_basepoint(geom, comp);
        let start = WalkState { level: bp.level, pos: bp.pos, up: bp.upward };
        let mut events = Vec::new();
        let mut rot = 0i64;
        let mut cur = start;
        let mut first = true;
        let push_deco = |st: WalkState, rot: i64, events: &mut Vec<DecorationEvent>| {
            if st.level < self.slices.len() {
                if let Some(ci) = geom.crossing_index_at(st.level) {
                    let site = &geom.crossings[ci];
                    if st.pos == site.pos || st.pos == site.pos + 1 {
                        events.push(DecorationEvent {
                            crossing: ci,
                            right_side: st.pos == site.pos + 1,
                            rotation: rot,
                        });
                    }
                }
            }
        };
        loop {
            // the decoration point sits at the top of the slot: ahead of an
            // upward start, behind a downward one (handled at circuit close)
            if cur.up || !first {
                push_deco(cur, rot, &mut events);
            }
            cur = self.step(cur, &mut |s| rot += s);
            first = false;
            if cur == start {
                if !start.up {
                    push_deco(start, rot, &mut events);
                }
                break;
            }
        }
        (events, rot)
    }

    /// Flip the orientation flag of one component.
    pub fn reverse_orientation(&self, comp: usize) -> Result<SlicedDiagram, DiagramError> {
        if comp >= self.orientations.len() {
            return Err(DiagramError::UnknownComponent(comp));
        }
        let mut d = self.clone();
        d.orientations[comp] = !d.orientations[comp];
        Ok(d)
    }

    pub fn with_basepoint(
        &self,
        comp: usize,
        bp: Option<Basepoint>,
    ) -> Result<SlicedDiagram, Vec<DiagramError>> {
        if comp >= self.basepoints.len() {
            return Err(vec![DiagramError::UnknownComponent(comp)]);
        }
        let mut d = self.clone();
        d.basepoints[comp] = bp;
        d.validate()?;
        Ok(d)
    }

    /// Rebuilds metadata after a slice rewrite. `slot_map` sends an old slot
    /// to its new location when it survives. Returns the rewritten diagram
    /// and the old→new component index map. New components (not hit by any
    /// old slot) get a winding-+1 default orientation and no basepoint.
    fn remap(
        &self,
        old_geom: &Geometry,
        new_slices: Vec<Generator>,
        slot_map: impl Fn(usize, usize) -> Option<(usize, usize)>,
    ) -> Result<(SlicedDiagram, Vec<usize>), MoveError> {
        let mut skeleton =
            SlicedDiagram { slices: new_slices, orientations: Vec::new(), basepoints: Vec::new() };
        skeleton.check_widths().map_err(MoveError::Invalid)?;
        let new_geom = skeleton.geometry();
        let mut orientations: Vec<Option<bool>> = vec![None; new_geom.comp_count];
        let mut basepoints: Vec<Option<Basepoint>> = vec![None; new_geom.comp_count];
        let mut comp_map = vec![usize::MAX; old_geom.comp_count];
        for l in 0..old_geom.widths.len() {
            for p in 0..old_geom.widths[l] {
                let oc = old_geom.comp_of(l, p);
                if comp_map[oc] != usize::MAX {
                    continue;
                }
                if let Some((nl, np)) = slot_map(l, p) {
                    if nl >= new_geom.widths.len() || np >= new_geom.widths[nl] {
                        continue;
                    }
                    let nc = new_geom.comp_of(nl, np);
                    comp_map[oc] = nc;
                    // preserve the physical direction through the anchor slot
                    let old_dir_up = old_geom.canon_up(l, p) == self.orientations[oc];
                    orientations[nc] = Some(new_geom.canon_up(nl, np) == old_dir_up);
                }
            }
        }
        if comp_map.iter().any(|&c| c == usize::MAX) {
            return Err(MoveError::PatternMismatch);
        }
        // transport basepoints that survive the rewrite
        for (oc, bp) in self.basepoints.iter().enumerate() {
            if let Some(bp) = bp {
                if let Some((nl, np)) = slot_map(bp.level, bp.pos) {
                    if nl < new_geom.widths.len()
                        && np < new_geom.widths[nl]
                        && new_geom.comp_of(nl, np) == comp_map[oc]
                    {
                        basepoints[comp_map[oc]] =
                            Some(Basepoint { level: nl, pos: np, upward: bp.upward });
                    }
                }
            }
        }
        skeleton.orientations = orientations
            .iter()
            .enumerate()
            .map(|(c, o)| o.unwrap_or(new_geom.canon_rotation[c] >= 0))
            .collect();
        skeleton.basepoints = basepoints;
        skeleton
            .validate()
            .map_err(|mut es| MoveError::Invalid(es.remove(0)))?;
        Ok((skeleton, comp_map))
    }

    /// Distant union: `other` stacked above `self`, separated by the empty
    /// level where all of `self` has closed up.
    pub fn distant_union(&self, other: &SlicedDiagram) -> SlicedDiagram {
        let shift = self.slices.len();
        let mut slices = self.slices.clone();
        slices.extend(other.slices.iter().copied());
        let mut orientations = self.orientations.clone();
        orientations.extend(other.orientations.iter().copied());
        let mut basepoints = self.basepoints.clone();
        basepoints.extend(other.basepoints.iter().map(|bp| {
            bp.map(|b| Basepoint { level: b.level + shift, pos: b.pos, upward: b.upward })
        }));
        SlicedDiagram { slices, orientations, basepoints }
    }
}

// --- shipped constructions ---

impl SlicedDiagram {
    /// Round circle of winding number `+1` (counterclockwise), framing 0.
    pub fn unknot() -> SlicedDiagram {
        SlicedDiagram::from_slices(vec![Generator::Cup(0), Generator::Cap(0)]).unwrap()
    }

    /// Unknot with even framing `f`, drawn with winding number `+1`:
    /// `|f|/2` curl pairs of matching crossing sign on a round circle.
    pub fn unknot_framed(f: i64) -> SlicedDiagram {
        assert!(f % 2 == 0, "framing must be even");
        let positive = f > 0;
        let mut slices = vec![Generator::Cup(0)];
        for _ in 0..(f.unsigned_abs() / 2) {
            // a left curl (winding +1) then a right curl (winding −1),
            // both with the same crossing sign: framing ±2, winding 0
            let cross = |p: usize| {
                if positive {
                    Generator::CrossPos(p)
                } else {
                    Generator::CrossNeg(p)
                }
            };
            slices.extend([Generator::Cup(1), cross(2), Generator::Cap(1)]);
            slices.extend([Generator::Cup(2), cross(1), Generator::Cap(2)]);
        }
        slices.push(Generator::Cap(0));
        SlicedDiagram::from_slices(slices).unwrap()
    }

    /// Two circles joined by a clasp of `crossings` crossings of one
    /// geometric sign; framings 0, windings `+1`.
    pub fn chain_clasp(crossings: usize, positive: bool) -> SlicedDiagram {
        let cross = if positive { Generator::CrossPos(1) } else { Generator::CrossNeg(1) };
        let mut slices = vec![Generator::Cup(0), Generator::Cup(2)];
        slices.extend(std::iter::repeat(cross).take(crossings));
        slices.push(Generator::Cap(0));
        slices.push(Generator::Cap(0));
        SlicedDiagram::from_slices(slices).unwrap()
    }

    /// The Hopf link with both framings 0, both windings `+1`, and the
    /// requested linking number sign.
    pub fn hopf_link(positive_clasp: bool) -> SlicedDiagram {
        // with both circles counterclockwise, the geometric crossing type is
        // opposite to the resulting linking sign
        SlicedDiagram::chain_clasp(2, !positive_clasp)
    }
}

// --- moves ---

/// The closed move set. Regular-isotopy and height-function moves preserve
/// the framed link (and every engine value); `HopfStabilize` changes the
/// link but not the presented framed three-manifold; `DoubleTwist` changes
/// the winding number by `±2` without changing the framing; `SetBasepoint`
/// and `ReverseOrientation` touch only metadata.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MoveSpec {
    /// Swap the generators at slices `slice` and `slice+1` when their
    /// supports are disjoint.
    CommuteSlices { slice: usize },
    /// Insert a cancelling crossing pair on wires `pos, pos+1` at `level`.
    R2Insert { level: usize, pos: usize, first_positive: bool },
    /// Remove the cancelling crossing pair at slices `slice, slice+1`.
    R2Cancel { slice: usize },
    /// Braid relation on three equal-sign crossings at `slice..slice+3`.
    R3 { slice: usize },
    /// Insert a zig-zag (cup then cap) on the wire at `(level, pos)`.
    ZigzagInsert { level: usize, pos: usize, cup_right: bool },
    /// Cancel the zig-zag at slices `slice, slice+1`.
    ZigzagCancel { slice: usize },
    /// Slide a strand past a cap: `[x^σ(p+1); cap(p)] ↔ [x^{−σ}(p); cap(p+1)]`.
    SlideCap { slice: usize },
    /// Slide a strand past a cup: `[cup(p+1); x^σ(p)] ↔ [cup(p); x^{−σ}(p+1)]`.
    SlideCup { slice: usize },
    /// Insert a curl pair changing winding by `±2`, framing unchanged.
    DoubleTwist { level: usize, pos: usize, raise: bool },
    /// Distant union with the 0-framed Hopf link (the stabilization move on
    /// surgery presentations).
    HopfStabilize,
    SetBasepoint { comp: usize, basepoint: Option<Basepoint> },
    ReverseOrientation { comp: usize },
}

impl SlicedDiagram {
    /// Applies a move, returning the rewritten diagram and the old→new
    /// component index map.
    pub fn apply_move(&self, mv: &MoveSpec) -> Result<(SlicedDiagram, Vec<usize>), MoveError> {
        self.check_widths().map_err(MoveError::Invalid)?;
        let geom = self.geometry();
        let identity_map = |n: usize| (0..n).collect::<Vec<_>>();
        match *mv {
            MoveSpec::SetBasepoint { comp, basepoint } => {
                let d = self
                    .with_basepoint(comp, basepoint)
                    .map_err(|mut e| MoveError::Invalid(e.remove(0)))?;
                Ok((d, identity_map(geom.comp_count)))
            }
            MoveSpec::ReverseOrientation { comp } => {
                let d = self.reverse_orientation(comp).map_err(MoveError::Invalid)?;
                Ok((d, identity_map(geom.comp_count)))
            }
            MoveSpec::HopfStabilize => {
                let d = self.distant_union(&SlicedDiagram::hopf_link(true));
                Ok((d, identity_map(geom.comp_count)))
            }
            MoveSpec::CommuteSlices { slice } => self.commute_slices(&geom, slice),
            MoveSpec::R2Insert { level, pos, first_positive } => {
                if level == 0 || level >= geom.widths.len() || pos + 1 >= geom.widths[level] {
                    return Err(MoveError::OutOfRange);
                }
                let pair = if first_positive {
                    [Generator::CrossPos(pos), Generator::CrossNeg(pos)]
                } else {
                    [Generator::CrossNeg(pos), Generator::CrossPos(pos)]
                };
                self.insert_slices(&geom, level, &pair)
            }
            MoveSpec::R2Cancel { slice } => {
                if slice + 1 >= self.slices.len() {
                    return Err(MoveError::OutOfRange);
                }
                let ok = matches!(
                    (self.slices[slice], self.slices[slice + 1]),
                    (Generator::CrossPos(a), Generator::CrossNeg(b)) if a == b
                ) || matches!(
                    (self.slices[slice], self.slices[slice + 1]),
                    (Generator::CrossNeg(a), Generator::CrossPos(b)) if a == b
                );
                if !ok {
                    return Err(MoveError::PatternMismatch);
                }
                self.remove_slices(&geom, slice, 2)
            }
            MoveSpec::R3 { slice } => self.braid_relation(&geom, slice),
            MoveSpec::ZigzagInsert { level, pos, cup_right } => {
                if level == 0 || level >= geom.widths.len() || pos >= geom.widths[level] {
                    return Err(MoveError::OutOfRange);
                }
                let pair = if cup_right {
                    [Generator::Cup(pos + 1), Generator::Cap(pos)]
                } else {
                    [Generator::Cup(pos), Generator::Cap(pos + 1)]
                };
                self.insert_slices(&geom, level, &pair)
            }
            MoveSpec::ZigzagCancel { slice } => {
                if slice + 1 >= self.slices.len() {
                    return Err(MoveError::OutOfRange);
                }
                let ok = matches!(
                    (self.slices[slice], self.slices[slice + 1]),
                    (Generator::Cup(u), Generator::Cap(a)) if u == a + 1 || a == u + 1
                );
                if !ok {
                    return Err(MoveError::PatternMismatch);
                }
                self.remove_slices(&geom, slice, 2)
            }
            MoveSpec::SlideCap { slice } => self.slide_cap(&geom, slice),
            MoveSpec::SlideCup { slice } => self.slide_cup(&geom, slice),
            MoveSpec::DoubleTwist { level, pos, raise } => {
                if level == 0 || level >= geom.widths.len() || pos >= geom.widths[level] {
                    return Err(MoveError::OutOfRange);
                }
                // left curls raise the winding of an upward wire, right
                // curls lower it; the crossing signs cancel across the pair
                let body: Vec<Generator> = if raise {
                    vec![
                        Generator::Cup(pos),
                        Generator::CrossPos(pos + 1),
                        Generator::Cap(pos),
                        Generator::Cup(pos),
                        Generator::CrossNeg(pos + 1),
                        Generator::Cap(pos),
                    ]
                } else {
                    vec![
                        Generator::Cup(pos + 1),
                        Generator::CrossPos(pos),
                        Generator::Cap(pos + 1),
                        Generator::Cup(pos + 1),
                        Generator::CrossNeg(pos),
                        Generator::Cap(pos + 1),
                    ]
                };
                self.insert_slices(&geom, level, &body)
            }
        }
    }

    fn insert_slices(
        &self,
        geom: &Geometry,
        level: usize,
        body: &[Generator],
    ) -> Result<(SlicedDiagram, Vec<usize>), MoveError> {
        let mut slices = self.slices.clone();
        let k = body.len();
        for (i, g) in body.iter().enumerate() {
            slices.insert(level + i, *g);
        }
        self.remap(geom, slices, |l, p| if l <= level { Some((l, p)) } else { Some((l + k, p)) })
    }

    fn remove_slices(
        &self,
        geom: &Geometry,
        slice: usize,
        k: usize,
    ) -> Result<(SlicedDiagram, Vec<usize>), MoveError> {
        let mut slices = self.slices.clone();
        slices.drain(slice..slice + k);
        self.remap(geom, slices, |l, p| {
            if l <= slice {
                Some((l, p))
            } else if l > slice + k - 1 {
                Some((l - k, p))
            } else {
                None
            }
        })
    }

    fn braid_relation(
        &self,
        geom: &Geometry,
        slice: usize,
    ) -> Result<(SlicedDiagram, Vec<usize>), MoveError> {
        if slice + 2 >= self.slices.len() {
            return Err(MoveError::OutOfRange);
        }
        let window = [self.slices[slice], self.slices[slice + 1], self.slices[slice + 2]];
        let rewritten = match window {
            [Generator::CrossPos(a), Generator::CrossPos(b), Generator::CrossPos(c)]
                if a == c && (b == a + 1 || a == b + 1) =>
            {
                [Generator::CrossPos(b), Generator::CrossPos(a), Generator::CrossPos(b)]
            }
            [Generator::CrossNeg(a), Generator::CrossNeg(b), Generator::CrossNeg(c)]
                if a == c && (b == a + 1 || a == b + 1) =>
            {
                [Generator::CrossNeg(b), Generator::CrossNeg(a), Generator::CrossNeg(b)]
            }
            _ => return Err(MoveError::PatternMismatch),
        };
        let mut slices = self.slices.clone();
        slices[slice..slice + 3].copy_from_slice(&rewritten);
        // interior levels are rewired; anchor components outside the window
        self.remap(geom, slices, move |l, p| {
            if l <= slice || l >= slice + 3 {
                Some((l, p))
            } else {
                None
            }
        })
    }

    fn slide_cap(
        &self,
        geom: &Geometry,
        slice: usize,
    ) -> Result<(SlicedDiagram, Vec<usize>), MoveError> {
        if slice + 1 >= self.slices.len() {
            return Err(MoveError::OutOfRange);
        }
        let rewritten = match (self.slices[slice], self.slices[slice + 1]) {
            (Generator::CrossPos(x), Generator::Cap(a)) if x == a + 1 => {
                [Generator::CrossNeg(a), Generator::Cap(a + 1)]
            }
            (Generator::CrossNeg(x), Generator::Cap(a)) if x == a + 1 => {
                [Generator::CrossPos(a), Generator::Cap(a + 1)]
            }
            (Generator::CrossPos(x), Generator::Cap(a)) if x + 1 == a => {
                [Generator::CrossNeg(a), Generator::Cap(x)]
            }
            (Generator::CrossNeg(x), Generator::Cap(a)) if x + 1 == a => {
                [Generator::CrossPos(a), Generator::Cap(x)]
            }
            _ => return Err(MoveError::PatternMismatch),
        };
        let mut slices = self.slices.clone();
        slices[slice..slice + 2].copy_from_slice(&rewritten);
        self.remap(geom, slices, move |l, p| {
            if l <= slice || l >= slice + 2 {
                Some((l, p))
            } else {
                None
            }
        })
    }

    fn slide_cup(
        &self,
        geom: &Geometry,
        slice: usize,
    ) -> Result<(SlicedDiagram, Vec<usize>), MoveError> {
        if slice + 1 >= self.slices.len() {
            return Err(MoveError::OutOfRange);
        }
        let rewritten = match (self.slices[slice], self.slices[slice + 1]) {
            (Generator::Cup(u), Generator::CrossPos(x)) if u == x + 1 => {
                [Generator::Cup(x), Generator::CrossNeg(x + 1)]
            }
            (Generator::Cup(u), Generator::CrossNeg(x)) if u == x + 1 => {
                [Generator::Cup(x), Generator::CrossPos(x + 1)]
            }
            (Generator::Cup(u), Generator::CrossPos(x)) if x == u + 1 => {
                [Generator::Cup(x), Generator::CrossNeg(u)]
            }
            (Generator::Cup(u), Generator::CrossNeg(x)) if x == u + 1 => {
                [Generator::Cup(x), Generator::CrossPos(u)]
            }
            _ => return Err(MoveError::PatternMismatch),
        };
        let mut slices = self.slices.clone();
        slices[slice..slice + 2].copy_from_slice(&rewritten);
        self.remap(geom, slices, move |l, p| {
            if l <= slice || l >= slice + 2 {
                Some((l, p))
            } else {
                None
            }
        })
    }

    fn commute_slices(
        &self,
        geom: &Geometry,
        s: usize,
    ) -> Result<(SlicedDiagram, Vec<usize>), MoveError> {
        if s + 1 >= self.slices.len() {
            return Err(MoveError::OutOfRange);
        }
        let swapped =
            commute_pair(self.slices[s], self.slices[s + 1]).ok_or(MoveError::PatternMismatch)?;
        let mut slices = self.slices.clone();
        slices[s] = swapped.0;
        slices[s + 1] = swapped.1;
        // the middle level is rewired; everything else keeps its place
        self.remap(geom, slices, move |l, p| if l == s + 1 { None } else { Some((l, p)) })
    }
}

/// Swap two vertically adjacent generators with disjoint support,
/// recomputing positions. `g1` is below, `g2` above (positions of `g2` are
/// in the middle-level frame). Returns the new (below, above) pair.
fn commute_pair(g1: Generator, g2: Generator) -> Option<(Generator, Generator)> {
    use Generator::*;
    let respan = |g: Generator, p: usize| match g {
        Cup(_) => Cup(p),
        Cap(_) => Cap(p),
        CrossPos(_) => CrossPos(p),
        CrossNeg(_) => CrossNeg(p),
        Id => Id,
    };
    match (g1, g2) {
        (Id, _) | (_, Id) => None, // nothing to gain from commuting with id
        (Cup(p), Cup(q)) => {
            if q <= p {
                Some((Cup(q), Cup(p + 2)))
            } else if q >= p + 2 {
                Some((Cup(q - 2), Cup(p)))
            } else {
                None
            }
        }
        (Cup(p), g2 @ (Cap(_) | CrossPos(_) | CrossNeg(_))) => {
            let q = pos_of(g2);
            if q + 1 < p {
                let up = match g2 {
                    Cap(_) => Cup(p - 2),
                    _ => Cup(p),
                };
                Some((g2, up))
            } else if q > p + 1 {
                Some((respan(g2, q - 2), Cup(p)))
            } else {
                None
            }
        }
        (Cap(p), Cup(q)) => {
            if q < p {
                Some((Cup(q), Cap(p + 2)))
            } else {
                Some((Cup(q + 2), Cap(p)))
            }
        }
        (Cap(p), g2 @ (Cap(_) | CrossPos(_) | CrossNeg(_))) => {
            let q = pos_of(g2);
            if q + 1 < p {
                let up = match g2 {
                    Cap(_) => Cap(p - 2),
                    _ => Cap(p),
                };
                Some((g2, up))
            } else if q >= p {
                Some((respan(g2, q + 2), Cap(p)))
            } else {
                None
            }
        }
        (cr @ (CrossPos(_) | CrossNeg(_)), Cup(q)) => {
            let p = pos_of(cr);
            if q <= p {
                Some((Cup(q), respan(cr, p + 2)))
            } else if q >= p + 2 {
                Some((Cup(q), cr))
            } else {
                None
            }
        }
        (cr @ (CrossPos(_) | CrossNeg(_)), g2 @ (Cap(_) | CrossPos(_) | CrossNeg(_))) => {
            let p = pos_of(cr);
            let q = pos_of(g2);
            if q + 1 < p {
                let up = match g2 {
                    Cap(_) => respan(cr, p - 2),
                    _ => cr,
                };
                Some((g2, up))
            } else if q > p + 1 {
                Some((g2, cr))
            } else {
                None
            }
        }
    }
}

fn pos_of(g: Generator) -> usize {
    match g {
        Generator::Cup(p)
        | Generator::Cap(p)
        | Generator::CrossPos(p)
        | Generator::CrossNeg(p) => p,
        Generator::Id => 0,
    }
}

// --- winding normalization ---

impl SlicedDiagram {
    /// Rewrites the diagram so every component has winding number exactly
    /// `+1`, inserting curl pairs that leave all framings and linking
    /// numbers unchanged. Rejects components with odd framing (their
    /// winding parity makes `+1` unreachable).
    pub fn normalize_winding(&self) -> Result<SlicedDiagram, DiagramError> {
        let mut cur = self.clone();
        loop {
            cur.check_widths()?;
            let geom = cur.geometry();
            let windings = cur.winding_numbers(&geom);
            let writhes = cur.writhes(&geom);
            let Some(comp) = windings.iter().position(|&w| w != 1) else {
                return Ok(cur);
            };
            if writhes[comp] % 2 != 0 {
                return Err(DiagramError::OddFraming(comp, writhes[comp]));
            }
            let (level, pos) = geom.comp_first_slot[comp];
            let need_up = windings[comp] < 1;
            // a raise pair adds +2 for an upward wire, −2 for a downward one
            let wire_up = cur.oriented_up(&geom, level, pos);
            let raise = need_up == wire_up;
            let (next, _) =
                cur.apply_move(&MoveSpec::DoubleTwist { level, pos, raise }).map_err(|e| {
                    match e {
                        MoveError::Invalid(d) => d,
                        _ => DiagramError::Parse(format!("winding rewrite failed: {e}")),
                    }
                })?;
            cur = next;
        }
    }
}

// --- link file format ---

impl SlicedDiagram {
    /// Parse the link file format: `link <name> components=<k>` header, one
    /// slice per line (`cup 0`, `cap 2`, `x+ 1`, `x- 0`, `id`), then
    /// `orient <comp> +|-` and optional
    /// `basepoint <comp> <slice> <wire> up|down` footer lines.
    pub fn parse(text: &str) -> Result<(String, SlicedDiagram), DiagramError> {
        let mut name = String::from("link");
        let mut declared: Option<usize> = None;
        let mut slices = Vec::new();
        let mut orients: BTreeMap<usize, bool> = BTreeMap::new();
        let mut bps: BTreeMap<usize, Basepoint> = BTreeMap::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks[0] {
                "link" => {
                    if toks.len() >= 2 {
                        name = toks[1].to_string();
                    }
                    for t in &toks[1..] {
                        if let Some(k) = t.strip_prefix("components=") {
                            declared = k.parse().ok();
                        }
                    }
                }
                "cup" | "cap" | "x+" | "x-" => {
                    let p: usize = toks
                        .get(1)
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| DiagramError::Parse(format!("bad slice line {line:?}")))?;
                    slices.push(match toks[0] {
                        "cup" => Generator::Cup(p),
                        "cap" => Generator::Cap(p),
                        "x+" => Generator::CrossPos(p),
                        _ => Generator::CrossNeg(p),
                    });
                }
                "id" => slices.push(Generator::Id),
                "orient" => {
                    let c: usize = toks
                        .get(1)
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| DiagramError::Parse(format!("bad orient line {line:?}")))?;
                    let sign = *toks
                        .get(2)
                        .ok_or_else(|| DiagramError::Parse(format!("bad orient line {line:?}")))?;
                    orients.insert(c, sign == "+");
                }
                "basepoint" => {
                    if toks.len() < 5 {
                        return Err(DiagramError::Parse(format!("bad basepoint line {line:?}")));
                    }
                    let num = |i: usize| -> Result<usize, DiagramError> {
                        toks[i]
                            .parse()
                            .map_err(|_| DiagramError::Parse(format!("bad basepoint line {line:?}")))
                    };
                    bps.insert(
                        num(1)?,
                        Basepoint { level: num(2)?, pos: num(3)?, upward: toks[4] == "up" },
                    );
                }
                other => {
                    return Err(DiagramError::Parse(format!("unknown directive {other:?}")));
                }
            }
        }
        let mut d = SlicedDiagram::from_slices(slices)
            .map_err(|es| DiagramError::Parse(es[0].to_string()))?;
        if let Some(k) = declared {
            if k != d.component_count() {
                return Err(DiagramError::ComponentCountMismatch(d.component_count(), k));
            }
        }
        for (c, o) in orients {
            if c >= d.orientations.len() {
                return Err(DiagramError::UnknownComponent(c));
            }
            d.orientations[c] = o;
        }
        for (c, bp) in bps {
            if c >= d.basepoints.len() {
                return Err(DiagramError::UnknownComponent(c));
            }
            d.basepoints[c] = Some(bp);
        }
        d.validate().map_err(|es| DiagramError::Parse(es[0].to_string()))?;
        Ok((name, d))
    }

    pub fn render(&self, name: &str) -> String {
        let mut out = format!("link {name} components={}\n", self.component_count());
        for g in &self.slices {
            out.push_str(&match g {
                Generator::Cup(p) => format!("cup {p}\n"),
                Generator::Cap(p) => format!("cap {p}\n"),
                Generator::CrossPos(p) => format!("x+ {p}\n"),
                Generator::CrossNeg(p) => format!("x- {p}\n"),
                Generator::Id => "id\n".to_string(),
            });
        }
        for (c, o) in self.orientations.iter().enumerate() {
            out.push_str(&format!("orient {c} {}\n", if *o { "+" } else { "-" }));
        }
        for (c, bp) in self.basepoints.iter().enumerate() {
            if let Some(bp) = bp {
                out.push_str(&format!(
                    "basepoint {c} {} {} {}\n",
                    bp.level,
                    bp.pos,
                    if bp.upward { "up" } else { "down" }
                ));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn geom(d: &SlicedDiagram) -> Geometry {
        d.validate().expect("valid diagram")
    }

    #[test]
    fn zero_framed_unknot_is_valid() {
        let d = SlicedDiagram::unknot();
        let g = geom(&d);
        assert_eq!(g.comp_count, 1);
        assert_eq!(d.winding_numbers(&g), vec![1]);
        assert_eq!(d.writhes(&g), vec![0]);
        assert_eq!(d.linking_matrix(&g).unwrap(), SurgeryMatrix::new(vec![vec![0]]).unwrap());
        assert!(d.is_even_link(&g));
    }

    #[test]
    fn open_diagram_rejected() {
        let err = SlicedDiagram::from_slices(vec![Generator::Cup(0)]).unwrap_err();
        assert!(matches!(err[0], DiagramError::NonzeroFinalWidth(2)));
    }

    #[test]
    fn curled_unknot_is_valid_and_odd() {
        // a single positive curl: framing +1
        let d = SlicedDiagram::from_slices(vec![
            Generator::Cup(0),
            Generator::Cup(1),
            Generator::CrossPos(2),
            Generator::Cap(1),
            Generator::Cap(0),
        ])
        .unwrap();
        let g = geom(&d);
        assert_eq!(g.comp_count, 1);
        assert_eq!(d.writhes(&g), vec![1]);
        assert!(!d.is_even_link(&g));
        let w = d.winding_numbers(&g)[0];
        assert!(w % 2 == 0, "winding {w} must have parity opposite to framing 1");
    }

    #[test]
    fn framed_unknot_builders() {
        for f in [-4i64, -2, 0, 2, 4, 6] {
            let d = SlicedDiagram::unknot_framed(f);
            let g = geom(&d);
            assert_eq!(g.comp_count, 1, "framing {f}");
            assert_eq!(d.winding_numbers(&g), vec![1], "framing {f}");
            assert_eq!(d.writhes(&g), vec![f], "framing {f}");
        }
    }

    #[test]
    fn reversed_round_circle_has_winding_minus_one() {
        let d = SlicedDiagram::unknot().reverse_orientation(0).unwrap();
        let g = geom(&d);
        assert_eq!(d.winding_numbers(&g), vec![-1]);
        let back = d.reverse_orientation(0).unwrap();
        assert_eq!(back, SlicedDiagram::unknot());
    }

    #[test]
    fn hopf_link_linking_matrix() {
        let d = SlicedDiagram::hopf_link(true);
        let g = geom(&d);
        assert_eq!(g.comp_count, 2);
        assert_eq!(d.winding_numbers(&g), vec![1, 1]);
        assert_eq!(
            d.linking_matrix(&g).unwrap(),
            SurgeryMatrix::new(vec![vec![0, 1], vec![1, 0]]).unwrap()
        );
        assert!(d.is_even_link(&g));
        let m = SlicedDiagram::hopf_link(false);
        let gm = geom(&m);
        assert_eq!(
            m.linking_matrix(&gm).unwrap(),
            SurgeryMatrix::new(vec![vec![0, -1], vec![-1, 0]]).unwrap()
        );
    }

    #[test]
    fn hopf_reversal_flips_linking_sign() {
        let d = SlicedDiagram::hopf_link(true).reverse_orientation(0).unwrap();
        let g = geom(&d);
        assert_eq!(
            d.linking_matrix(&g).unwrap(),
            SurgeryMatrix::new(vec![vec![0, -1], vec![-1, 0]]).unwrap()
        );
    }

    #[test]
    fn distant_union_blocks() {
        let d = SlicedDiagram::unknot_framed(2).distant_union(&SlicedDiagram::unknot_framed(-2));
        let g = geom(&d);
        assert_eq!(
            d.linking_matrix(&g).unwrap(),
            SurgeryMatrix::new(vec![vec![2, 0], vec![0, -2]]).unwrap()
        );
    }

    #[test]
    fn torus_2_4_link() {
        let d = SlicedDiagram::chain_clasp(4, false);
        let g = geom(&d);
        assert_eq!(g.comp_count, 2);
        assert_eq!(d.winding_numbers(&g), vec![1, 1]);
        assert_eq!(
            d.linking_matrix(&g).unwrap(),
            SurgeryMatrix::new(vec![vec![0, 2], vec![2, 0]]).unwrap()
        );
    }

    #[test]
    fn parity_of_winding_and_writhe_is_opposite() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let pool = [
            SlicedDiagram::unknot(),
            SlicedDiagram::unknot_framed(2),
            SlicedDiagram::hopf_link(true),
            SlicedDiagram::chain_clasp(4, true),
        ];
        for base in pool {
            let mut d = base;
            for _ in 0..40 {
                let g = geom(&d);
                let windings = d.winding_numbers(&g);
                let writhes = d.writhes(&g);
                for (w, f) in windings.iter().zip(writhes.iter()) {
                    assert_ne!(
                        w.rem_euclid(2),
                        f.rem_euclid(2),
                        "winding {w} and writhe {f} must differ in parity"
                    );
                }
                d = crate::fuzz::random_isotopy_move(&d, &mut rng).map(|(nd, _)| nd).unwrap_or(d);
            }
        }
    }

    #[test]
    fn commute_move_swaps_distant_generators() {
        // birth of circle B next to circle A, then death of A: the two
        // middle slices have disjoint support
        let d = SlicedDiagram::from_slices(vec![
            Generator::Cup(0),
            Generator::Cup(2),
            Generator::Cap(0),
            Generator::Cap(0),
        ])
        .unwrap();
        let (moved, map) = d.apply_move(&MoveSpec::CommuteSlices { slice: 1 }).unwrap();
        assert_eq!(
            moved.slices(),
            &[Generator::Cup(0), Generator::Cap(0), Generator::Cup(0), Generator::Cap(0)]
        );
        let g = geom(&moved);
        assert_eq!(g.comp_count, 2);
        assert_eq!(map.len(), 2);
        let lm = moved.linking_matrix(&g).unwrap();
        assert_eq!(lm, SurgeryMatrix::new(vec![vec![0, 0], vec![0, 0]]).unwrap());
        // the same-circle birth/death pair must not commute
        let circle_pair = SlicedDiagram::from_slices(vec![
            Generator::Cup(0),
            Generator::Cup(2),
            Generator::Cap(2),
            Generator::Cap(0),
        ])
        .unwrap();
        assert!(matches!(
            circle_pair.apply_move(&MoveSpec::CommuteSlices { slice: 1 }),
            Err(MoveError::PatternMismatch)
        ));
    }

    #[test]
    fn moves_preserve_linking_data() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for base in [
            SlicedDiagram::hopf_link(true),
            SlicedDiagram::unknot_framed(2),
            SlicedDiagram::chain_clasp(4, false),
            SlicedDiagram::unknot_framed(-2).distant_union(&SlicedDiagram::hopf_link(true)),
        ] {
            let g0 = geom(&base);
            let lm0 = base.linking_matrix(&g0).unwrap();
            let w0 = base.winding_numbers(&g0);
            let mut d = base;
            let mut comp_track: Vec<usize> = (0..g0.comp_count).collect();
            for step in 0..120 {
                if let Some((next, map)) = crate::fuzz::random_isotopy_move(&d, &mut rng) {
                    comp_track = comp_track.iter().map(|&c| map[c]).collect();
                    d = next;
                }
                let g = geom(&d);
                let lm = d.linking_matrix(&g).unwrap();
                let w = d.winding_numbers(&g);
                for (oi, &ni) in comp_track.iter().enumerate() {
                    assert_eq!(w0[oi], w[ni], "winding drift at step {step}");
                    for (oj, &nj) in comp_track.iter().enumerate() {
                        assert_eq!(lm0.get(oi, oj), lm.get(ni, nj), "linking drift at step {step}");
                    }
                }
            }
        }
    }

    #[test]
    fn double_twist_changes_winding_only() {
        let d = SlicedDiagram::unknot();
        let (up, _) =
            d.apply_move(&MoveSpec::DoubleTwist { level: 1, pos: 0, raise: true }).unwrap();
        let g = geom(&up);
        let w = up.winding_numbers(&g)[0];
        assert!(w == 3 || w == -1, "winding moved by ±2, got {w}");
        assert_eq!(up.writhes(&g), vec![0]);
    }

    #[test]
    fn normalize_winding_examples() {
        // reversed circle: winding −1 → +1, framing untouched
        let d = SlicedDiagram::unknot().reverse_orientation(0).unwrap();
        let n = d.normalize_winding().unwrap();
        let g = geom(&n);
        assert_eq!(n.winding_numbers(&g), vec![1]);
        assert_eq!(n.writhes(&g), vec![0]);

        // already normalized: unchanged
        let h = SlicedDiagram::hopf_link(true);
        assert_eq!(h.normalize_winding().unwrap(), h);

        // 2-framed unknot drawn with winding 3
        let mut base = SlicedDiagram::unknot_framed(2);
        let g0 = geom(&base);
        let (l, p) = g0.comp_first_slot[0];
        let raise = base.oriented_up(&g0, l, p);
        base = base.apply_move(&MoveSpec::DoubleTwist { level: l, pos: p, raise }).unwrap().0;
        let g1 = geom(&base);
        assert_eq!(base.winding_numbers(&g1), vec![3]);
        let n = base.normalize_winding().unwrap();
        let gn = geom(&n);
        assert_eq!(n.winding_numbers(&gn), vec![1]);
        assert_eq!(n.writhes(&gn), vec![2]);

        // odd framing is rejected
        let odd = SlicedDiagram::from_slices(vec![
            Generator::Cup(0),
            Generator::Cup(1),
            Generator::CrossPos(2),
            Generator::Cap(1),
            Generator::Cap(0),
        ])
        .unwrap();
        assert!(matches!(odd.normalize_winding(), Err(DiagramError::OddFraming(0, 1))));
    }

    #[test]
    fn normalize_winding_preserves_linking_matrix() {
        let d = SlicedDiagram::hopf_link(true).reverse_orientation(1).unwrap();
        let g0 = geom(&d);
        let n = d.normalize_winding().unwrap();
        let gn = geom(&n);
        assert_eq!(n.winding_numbers(&gn), vec![1, 1]);
        assert_eq!(d.linking_matrix(&g0).unwrap(), n.linking_matrix(&gn).unwrap());
    }

    #[test]
    fn hopf_stabilize_adds_zero_framed_pair() {
        let d = SlicedDiagram::unknot_framed(2);
        let (s, map) = d.apply_move(&MoveSpec::HopfStabilize).unwrap();
        let g = geom(&s);
        assert_eq!(g.comp_count, 3);
        assert_eq!(map, vec![0]);
        let lm = s.linking_matrix(&g).unwrap();
        assert_eq!(
            lm,
            SurgeryMatrix::new(vec![vec![2, 0, 0], vec![0, 0, 1], vec![0, 1, 0]]).unwrap()
        );
    }

    #[test]
    fn walk_reports_full_rotation_of_two() {
        let d = SlicedDiagram::hopf_link(true);
        let g = geom(&d);
        for c in 0..2 {
            let (events, rot) = d.walk_events(&g, c);
            assert_eq!(events.len(), 2, "each Hopf component passes two decorations");
            let bp = d.effective_basepoint(&g, c);
            let expected = if bp.upward == d.oriented_up(&g, bp.level, bp.pos) { 2 } else { -2 };
            assert_eq!(rot, expected);
        }
    }

    #[test]
    fn link_file_round_trip() {
        let d = SlicedDiagram::hopf_link(true)
            .with_basepoint(0, Some(Basepoint { level: 2, pos: 0, upward: false }))
            .unwrap();
        let text = d.render("hopf");
        let (name, parsed) = SlicedDiagram::parse(&text).unwrap();
        assert_eq!(name, "hopf");
        assert_eq!(parsed, d);
        assert!(SlicedDiagram::parse("link l components=2\ncup 0\ncap 0\n").is_err());
        assert!(SlicedDiagram::parse("cup 5").is_err());
    }
}
