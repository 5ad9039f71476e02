//! How the pieces of one tetrahedron sit along its edges, and the tube
//! decorations they admit.
//!
//! The pieces of a tetrahedron are disjoint disks whose boundaries form a
//! single normal curve system. Rebuilding that system explicitly tells which
//! piece copy owns each crossing point on each edge, which is the stacking
//! order tubes are attached to.

use std::collections::{BTreeMap, HashMap};

use crate::curves::{CrossingPoint, CurveSystem, NormalCurve};
use crate::matching::Violation;
use crate::pieces::{PieceCatalog, PieceKind, TubeDecoration};

/// Total boundary length allowed in one tetrahedron before reconstruction
/// refuses to build the curve system.
pub const MAX_TET_CROSSINGS: u64 = 1 << 22;

/// A particular copy of a piece type: copies of one kind are numbered in the
/// order of their first crossing point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PieceCopy {
    pub kind: PieceKind,
    pub copy: u32,
}

/// The explicit arrangement of pieces inside one tetrahedron.
#[derive(Clone, Debug)]
pub struct TetStack {
    tet: usize,
    curve: NormalCurve,
    system: CurveSystem,
    pieces: Vec<PieceCopy>,
    lengths: Vec<u32>,
}

impl TetStack {
    /// Builds the arrangement for the coordinates `block` of tetrahedron
    /// `tet`, in catalog layout order.
    pub fn build(catalog: &PieceCatalog, tet: usize, block: &[u64]) -> Result<Self, Violation> {
        let kinds = catalog.kinds();
        let mut total_length = 0u64;
        let mut sum = NormalCurve::EMPTY;
        for (&kind, &count) in kinds.iter().zip(block) {
            if count == 0 {
                continue;
            }
            let boundary = catalog.boundary_curve(kind);
            total_length =
                total_length.saturating_add(count.saturating_mul(boundary.length() as u64));
            if total_length > MAX_TET_CROSSINGS {
                return Err(Violation::TooLarge { tet });
            }
            sum = sum.sum(&boundary.scaled(count as u32));
        }
        let system = CurveSystem::new(sum);
        let mut found: BTreeMap<PieceKind, Vec<(CrossingPoint, usize)>> = BTreeMap::new();
        for (i, l) in system.loops().iter().enumerate() {
            let kind = catalog
                .kind_of(&l.curve)
                .ok_or(Violation::PieceMismatch { tet })?;
            let first = *l.points.iter().min().expect("loops are nonempty");
            found.entry(kind).or_default().push((first, i));
        }
        for (&kind, &count) in kinds.iter().zip(block) {
            let have = found.get(&kind).map_or(0, Vec::len) as u64;
            if have != count {
                return Err(Violation::PieceMismatch { tet });
            }
        }
        let mut pieces = vec![
            PieceCopy {
                kind: PieceKind::Triangle(0),
                copy: 0
            };
            system.loops().len()
        ];
        let mut lengths = vec![0; system.loops().len()];
        for (kind, mut members) in found {
            members.sort();
            for (copy, (_, i)) in members.into_iter().enumerate() {
                pieces[i] = PieceCopy {
                    kind,
                    copy: copy as u32,
                };
                lengths[i] = system.loops()[i].curve.length();
            }
        }
        Ok(TetStack {
            tet,
            curve: sum,
            system,
            pieces,
            lengths,
        })
    }

    pub fn tet(&self) -> usize {
        self.tet
    }

    /// Arc counts of all piece boundaries together.
    pub fn curve(&self) -> &NormalCurve {
        &self.curve
    }

    pub fn system(&self) -> &CurveSystem {
        &self.system
    }

    /// Piece copy of each loop of [`Self::system`].
    pub fn pieces(&self) -> &[PieceCopy] {
        &self.pieces
    }

    pub fn weight(&self, edge: usize) -> u32 {
        self.system.weights()[edge]
    }

    /// Loop index owning crossing `pos` on `edge`.
    pub fn loop_at(&self, edge: usize, pos: u32) -> Option<usize> {
        self.system.loop_at(edge, pos)
    }

    pub fn boundary_length(&self, piece: usize) -> u32 {
        self.lengths[piece]
    }
}

/// Identifies a tube up to isotopy: the pair of piece copies it joins, plus
/// the edge for a tube from a piece to itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TubeKey {
    pub tet: usize,
    pub first: PieceCopy,
    pub second: PieceCopy,
    pub self_edge: Option<usize>,
}

/// The pieces at both ends of a validated tube.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TubeEnds {
    pub tube: TubeDecoration,
    /// Loop indices in the tetrahedron's curve system, lower slot first.
    pub first: usize,
    pub second: usize,
}

impl TubeEnds {
    pub fn is_self(&self) -> bool {
        self.first == self.second
    }

    pub fn key(&self, stack: &TetStack) -> TubeKey {
        let a = stack.pieces()[self.first];
        let b = stack.pieces()[self.second];
        TubeKey {
            tet: self.tube.tet,
            first: a.min(b),
            second: a.max(b),
            self_edge: self.is_self().then_some(self.tube.edge),
        }
    }
}

/// Checks every structural rule on a set of tubes and resolves their ends.
///
/// `stacks` must hold the arrangement of every tetrahedron a tube refers to.
pub fn analyze_tubes(
    stacks: &HashMap<usize, TetStack>,
    tubes: &[TubeDecoration],
    allow_nested: bool,
) -> Result<Vec<TubeEnds>, Violation> {
    let mut ends = Vec::with_capacity(tubes.len());
    for (i, tube) in tubes.iter().enumerate() {
        if tubes[..i].contains(tube) {
            return Err(Violation::DuplicateTube { tube: *tube });
        }
        let stack = stacks
            .get(&tube.tet)
            .ok_or(Violation::TubeSlotOutOfRange { tube: *tube })?;
        let (lo, hi) = tube.slots;
        if tube.edge >= 6 || lo >= hi || hi >= stack.weight(tube.edge) {
            return Err(Violation::TubeSlotOutOfRange { tube: *tube });
        }
        if !tube.is_adjacent() {
            let inner = tubes
                .iter()
                .any(|t| t.tet == tube.tet && t.edge == tube.edge && t.slots == (lo + 1, lo + 2));
            if hi != lo + 3 || !inner {
                return Err(Violation::TubeNotAdjacent { tube: *tube });
            }
            if !allow_nested {
                return Err(Violation::NestedTubes { tube: *tube });
            }
        }
        let first = stack.loop_at(tube.edge, lo).expect("slot in range");
        let second = stack.loop_at(tube.edge, hi).expect("slot in range");
        if first == second {
            let length = stack.boundary_length(first);
            if length != 8 {
                return Err(Violation::SelfTubeNotOctagon {
                    tube: *tube,
                    length,
                });
            }
        } else {
            for piece in [first, second] {
                let length = stack.boundary_length(piece);
                if length > 8 {
                    return Err(Violation::AnnulusBoundaryTooLong {
                        tube: *tube,
                        length,
                    });
                }
            }
        }
        ends.push(TubeEnds {
            tube: *tube,
            first,
            second,
        });
    }

    let mut pairs = HashMap::new();
    let mut degree: HashMap<(usize, usize), usize> = HashMap::new();
    for e in &ends {
        let side = e.is_self().then_some(e.tube.edge);
        let pair = (
            e.tube.tet,
            e.first.min(e.second),
            e.first.max(e.second),
            side,
        );
        if let Some(other) = pairs.insert(pair, e.tube) {
            return Err(Violation::ParallelTubes {
                first: other,
                second: e.tube,
            });
        }
        *degree.entry((e.tube.tet, e.first)).or_default() += 1;
        if !e.is_self() {
            *degree.entry((e.tube.tet, e.second)).or_default() += 1;
        }
    }
    for e in &ends {
        let touches_pants = [e.first, e.second]
            .iter()
            .any(|&p| degree[&(e.tube.tet, p)] >= 2);
        if touches_pants {
            let stack = &stacks[&e.tube.tet];
            for p in [e.first, e.second] {
                let length = stack.boundary_length(p);
                if length != 3 && length != 4 {
                    return Err(Violation::PantsBoundary {
                        tube: e.tube,
                        length,
                    });
                }
            }
        } else if e.tube.inside_out {
            return Err(Violation::InsideOutWithoutPants { tube: e.tube });
        }
    }
    Ok(ends)
}

/// One representative of every single tube that can be attached inside the
/// tetrahedron, ordered by (edge, slot). Tubes joining the same two piece
/// copies are isotopic, so only the first is kept; a tube from a piece to
/// itself is kept once per edge.
pub fn tube_candidates(stack: &TetStack) -> Vec<(TubeDecoration, TubeKey)> {
    let mut out: Vec<(TubeDecoration, TubeKey)> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let one = |t: TubeDecoration| {
        let mut m = HashMap::new();
        m.insert(stack.tet(), stack.clone());
        analyze_tubes(&m, &[t], false).ok().map(|e| e[0])
    };
    for edge in 0..6 {
        for lo in 0..stack.weight(edge).saturating_sub(1) {
            let tube = TubeDecoration::new(stack.tet(), edge, lo, lo + 1);
            let Some(ends) = one(tube) else { continue };
            let key = ends.key(stack);
            if seen.insert(key) {
                out.push((tube, key));
            }
        }
    }
    out
}

/// Nested pairs along one edge: an outer tube around an adjacent inner one.
pub fn nested_candidates(stack: &TetStack) -> Vec<[TubeDecoration; 2]> {
    let mut out = Vec::new();
    for edge in 0..6 {
        let w = stack.weight(edge);
        for lo in 0..w.saturating_sub(3) {
            let inner = TubeDecoration::new(stack.tet(), edge, lo + 1, lo + 2);
            let outer = TubeDecoration::new(stack.tet(), edge, lo, lo + 3);
            out.push([inner, outer]);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn block(entries: &[(PieceKind, u64)]) -> Vec<u64> {
        let cat = PieceCatalog::standard();
        let mut v = vec![0; cat.per_tet()];
        for &(k, c) in entries {
            v[cat.local_index(k)] = c;
        }
        v
    }

    fn stacks(entries: &[(PieceKind, u64)]) -> HashMap<usize, TetStack> {
        let s = TetStack::build(PieceCatalog::standard(), 0, &block(entries)).unwrap();
        HashMap::from([(0, s)])
    }

    #[test]
    fn copies_follow_edge_order() {
        let m = stacks(&[(PieceKind::Triangle(0), 3), (PieceKind::Quad(1), 1)]);
        let s = &m[&0];
        assert_eq!(s.weight(0), 4);
        // along edge 0-1 from vertex 0: three triangle copies, then the quad
        for pos in 0..3 {
            let p = s.pieces()[s.loop_at(0, pos).unwrap()];
            assert_eq!(
                p,
                PieceCopy {
                    kind: PieceKind::Triangle(0),
                    copy: pos
                }
            );
        }
        assert_eq!(
            s.pieces()[s.loop_at(0, 3).unwrap()].kind,
            PieceKind::Quad(1)
        );
    }

    #[test]
    fn incompatible_pieces_do_not_stack() {
        let r = TetStack::build(
            PieceCatalog::standard(),
            0,
            &block(&[(PieceKind::Quad(0), 1), (PieceKind::Quad(1), 1)]),
        );
        assert!(matches!(r, Err(Violation::PieceMismatch { tet: 0 })));
    }

    #[test]
    fn octagon_self_tube() {
        let m = stacks(&[(PieceKind::Octagon(0), 1)]);
        let s = &m[&0];
        let e = (0..6).find(|&e| s.weight(e) == 2).unwrap();
        let t = TubeDecoration::new(0, e, 0, 1);
        let ends = analyze_tubes(&m, &[t], false).unwrap();
        assert!(ends[0].is_self());
        let both = TubeDecoration::new(0, 5 - e, 0, 1);
        // two self tubes make the octagon a pants leg, which needs length 3 or 4
        assert!(matches!(
            analyze_tubes(&m, &[t, both], false),
            Err(Violation::PantsBoundary { length: 8, .. })
        ));
    }

    #[test]
    fn self_tube_needs_octagon() {
        let m = stacks(&[(PieceKind::Triangle(0), 2)]);
        let t = TubeDecoration::new(0, 0, 0, 1);
        assert!(!analyze_tubes(&m, &[t], false).unwrap()[0].is_self());
        assert!(matches!(
            analyze_tubes(&m, &[TubeDecoration::new(0, 0, 0, 2)], false),
            Err(Violation::TubeSlotOutOfRange { .. })
        ));
    }

    #[test]
    fn no_tube_touches_a_dodecagon() {
        let d = PieceKind::Dodecagon(0);
        let m = stacks(&[(d, 1), (PieceKind::Triangle(0), 1)]);
        let s = &m[&0];
        for (t, _) in tube_candidates(s) {
            let ends = analyze_tubes(&m, &[t], false).unwrap();
            assert!(
                s.boundary_length(ends[0].first) <= 8 && s.boundary_length(ends[0].second) <= 8
            );
        }
        let e = (0..3).find(|&e| s.weight(e) >= 2).unwrap();
        assert!(matches!(
            analyze_tubes(&m, &[TubeDecoration::new(0, e, 0, 1)], false),
            Err(Violation::AnnulusBoundaryTooLong { length: 12, .. })
        ));
    }

    #[test]
    fn nesting_needs_the_flag() {
        let m = stacks(&[(PieceKind::Triangle(0), 4)]);
        let inner = TubeDecoration::new(0, 0, 1, 2);
        let outer = TubeDecoration::new(0, 0, 0, 3);
        assert!(matches!(
            analyze_tubes(&m, &[inner, outer], false),
            Err(Violation::NestedTubes { .. })
        ));
        assert!(analyze_tubes(&m, &[inner, outer], true).is_ok());
        assert!(matches!(
            analyze_tubes(&m, &[outer], true),
            Err(Violation::TubeNotAdjacent { .. })
        ));
    }

    #[test]
    fn candidates_are_deduplicated_by_piece_pair() {
        let m = stacks(&[(PieceKind::Triangle(0), 2), (PieceKind::Triangle(1), 1)]);
        let c = tube_candidates(&m[&0]);
        // copies 0-1 of the vertex-0 triangle, and copy 1 with the vertex-1 triangle
        assert_eq!(c.len(), 2);
        assert!(c
            .iter()
            .all(|(t, _)| t.edge == 0 || t.edge == 1 || t.edge == 2));
    }
}
