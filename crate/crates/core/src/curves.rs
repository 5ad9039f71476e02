//! Normal curves on the boundary of a single tetrahedron.
//!
//! A normal curve system is recorded by its arc counts: on face `f`, the
//! number of arcs cutting off corner `v` (`v != f`). Arcs in a corner are
//! nested, so the counts determine the embedded system up to normal isotopy
//! and [`CurveSystem`] can rebuild it explicitly: crossing points on each
//! edge are numbered from the edge's lower vertex, and the `j`-th arc around
//! corner `v` joins the `j`-th points from `v` on the two edges at `v`.
//!
//! [`CurveOracle`] enumerates connected curve types by exhaustive search and
//! decides disjoint realizability; the piece taxonomy is built from it.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::tetra::{edge_index, face_vertices, faces_of_edge, EDGE_VERTICES};

pub const DEFAULT_CURVE_BOUND: u32 = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("curve length bound exceeded: requested {requested}, bound is {bound}")]
    BoundExceeded { requested: u32, bound: u32 },
    #[error("arc counts do not match across edge {edge} ({left} vs {right} crossings)")]
    Unmatched { edge: usize, left: u32, right: u32 },
    #[error("face {face} has a nonzero count for its own opposite corner")]
    BadCorner { face: usize },
}

/// Arc counts of a (possibly disconnected) normal curve system.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct NormalCurve {
    arcs: [[u32; 4]; 4],
}

impl NormalCurve {
    pub const EMPTY: NormalCurve = NormalCurve { arcs: [[0; 4]; 4] };

    /// Builds a curve from `arcs[face][corner]`, checking that crossings
    /// agree on both sides of every edge.
    pub fn from_arcs(arcs: [[u32; 4]; 4]) -> Result<Self, CurveError> {
        for (face, row) in arcs.iter().enumerate() {
            if row[face] != 0 {
                return Err(CurveError::BadCorner { face });
            }
        }
        let curve = NormalCurve { arcs };
        for edge in 0..6 {
            let [f, g] = faces_of_edge(edge);
            let (left, right) = (curve.crossings_from(edge, f), curve.crossings_from(edge, g));
            if left != right {
                return Err(CurveError::Unmatched { edge, left, right });
            }
        }
        Ok(curve)
    }

    /// The unique curve system with the given edge weights, if the weights
    /// satisfy the triangle inequalities and parity on every face.
    pub fn from_edge_weights(weights: [u32; 6]) -> Option<Self> {
        let mut arcs = [[0u32; 4]; 4];
        for face in 0..4 {
            let vs = face_vertices(face);
            for (i, &v) in vs.iter().enumerate() {
                let x = vs[(i + 1) % 3];
                let y = vs[(i + 2) % 3];
                let twice = weights[edge_index(v, x)] as i64 + weights[edge_index(v, y)] as i64
                    - weights[edge_index(x, y)] as i64;
                if twice < 0 || twice % 2 != 0 {
                    return None;
                }
                arcs[face][v] = (twice / 2) as u32;
            }
        }
        Some(NormalCurve { arcs })
    }

    pub fn arc(&self, face: usize, corner: usize) -> u32 {
        self.arcs[face][corner]
    }

    pub fn arcs(&self) -> &[[u32; 4]; 4] {
        &self.arcs
    }

    fn crossings_from(&self, edge: usize, face: usize) -> u32 {
        let [a, b] = EDGE_VERTICES[edge];
        self.arcs[face][a] + self.arcs[face][b]
    }

    /// Number of crossings of the curve with each tetrahedron edge.
    pub fn edge_weights(&self) -> [u32; 6] {
        std::array::from_fn(|edge| self.crossings_from(edge, faces_of_edge(edge)[0]))
    }

    /// Number of crossings with the 1-skeleton. Every crossing point is the
    /// endpoint of exactly two arcs, so this is also the number of arcs.
    pub fn length(&self) -> u32 {
        self.edge_weights().iter().sum()
    }

    pub fn scaled(&self, k: u32) -> NormalCurve {
        NormalCurve {
            arcs: self.arcs.map(|row| row.map(|x| x * k)),
        }
    }

    pub fn sum(&self, other: &NormalCurve) -> NormalCurve {
        let mut arcs = self.arcs;
        for (f, row) in arcs.iter_mut().enumerate() {
            for (v, x) in row.iter_mut().enumerate() {
                *x += other.arcs[f][v];
            }
        }
        NormalCurve { arcs }
    }

    pub fn is_empty(&self) -> bool {
        *self == NormalCurve::EMPTY
    }

    pub fn is_connected(&self) -> bool {
        !self.is_empty() && CurveSystem::new(*self).loops().len() == 1
    }

    /// Connected components, sorted.
    pub fn components(&self) -> Vec<NormalCurve> {
        let mut out: Vec<NormalCurve> = CurveSystem::new(*self)
            .loops()
            .iter()
            .map(|l| l.curve)
            .collect();
        out.sort();
        out
    }
}

impl fmt::Debug for NormalCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "NormalCurve(len {}, weights {:?})",
            self.length(),
            self.edge_weights()
        )
    }
}

/// A crossing of the curve system with a tetrahedron edge: `pos` counts from
/// the edge's lower vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CrossingPoint {
    pub edge: usize,
    pub pos: u32,
}

/// The `index`-th arc (from the corner outward) cutting off `corner` on `face`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArcRef {
    pub face: usize,
    pub corner: usize,
    pub index: u32,
}

/// One component of a curve system, as a closed walk.
///
/// `arcs[i]` runs from `points[i]` to `points[(i + 1) % len]`.
#[derive(Clone, Debug)]
pub struct CurveLoop {
    pub points: Vec<CrossingPoint>,
    pub arcs: Vec<ArcRef>,
    pub curve: NormalCurve,
}

/// The explicit embedded curve system with given arc counts.
#[derive(Clone, Debug)]
pub struct CurveSystem {
    weights: [u32; 6],
    loops: Vec<CurveLoop>,
    /// `loop_at[edge][pos]` is the loop through that crossing point.
    loop_at: [Vec<usize>; 6],
}

/// Position (from the lower vertex) of the `j`-th point from `from` on edge `from`-`to`.
fn position(weights: &[u32; 6], from: usize, to: usize, j: u32) -> CrossingPoint {
    let edge = edge_index(from, to);
    let pos = if from < to { j } else { weights[edge] - 1 - j };
    CrossingPoint { edge, pos }
}

impl ArcRef {
    /// The two crossing points joined by this arc, the one on the edge
    /// towards the lower remaining vertex first.
    pub fn endpoints(&self, weights: &[u32; 6]) -> [CrossingPoint; 2] {
        let others: Vec<usize> = face_vertices(self.face)
            .into_iter()
            .filter(|&x| x != self.corner)
            .collect();
        [
            position(weights, self.corner, others[0], self.index),
            position(weights, self.corner, others[1], self.index),
        ]
    }
}

impl CurveSystem {
    pub fn new(curve: NormalCurve) -> Self {
        let weights = curve.edge_weights();
        // For each point, its arc on each of the two faces containing its edge.
        let mut incident: [Vec<[Option<ArcRef>; 2]>; 6] =
            std::array::from_fn(|e| vec![[None, None]; weights[e] as usize]);
        for face in 0..4 {
            for corner in face_vertices(face) {
                for index in 0..curve.arc(face, corner) {
                    let arc = ArcRef {
                        face,
                        corner,
                        index,
                    };
                    for p in arc.endpoints(&weights) {
                        let side = faces_of_edge(p.edge)
                            .iter()
                            .position(|&f| f == face)
                            .unwrap();
                        let slot = &mut incident[p.edge][p.pos as usize][side];
                        debug_assert!(slot.is_none());
                        *slot = Some(arc);
                    }
                }
            }
        }

        let mut loop_at: [Vec<usize>; 6] =
            std::array::from_fn(|e| vec![usize::MAX; weights[e] as usize]);
        let mut loops = Vec::new();
        for edge in 0..6 {
            for pos in 0..weights[edge] {
                if loop_at[edge][pos as usize] != usize::MAX {
                    continue;
                }
                let id = loops.len();
                let start = CrossingPoint { edge, pos };
                let mut points = Vec::new();
                let mut arcs = Vec::new();
                let mut counts = [[0u32; 4]; 4];
                let mut here = start;
                // Leave the start along the arc on the lower-numbered face.
                let mut arc = incident[edge][pos as usize][0].expect("matched curve system");
                loop {
                    loop_at[here.edge][here.pos as usize] = id;
                    points.push(here);
                    arcs.push(arc);
                    counts[arc.face][arc.corner] += 1;
                    let [p, q] = arc.endpoints(&weights);
                    let next = if p == here { q } else { p };
                    if next == start {
                        break;
                    }
                    let [a0, a1] = incident[next.edge][next.pos as usize];
                    arc = if a0 == Some(arc) { a1 } else { a0 }.expect("matched curve system");
                    here = next;
                }
                loops.push(CurveLoop {
                    points,
                    arcs,
                    curve: NormalCurve { arcs: counts },
                });
            }
        }
        CurveSystem {
            weights,
            loops,
            loop_at,
        }
    }

    pub fn weights(&self) -> &[u32; 6] {
        &self.weights
    }

    pub fn loops(&self) -> &[CurveLoop] {
        &self.loops
    }

    /// Loop through the crossing point `pos` on `edge`.
    pub fn loop_at(&self, edge: usize, pos: u32) -> Option<usize> {
        self.loop_at[edge].get(pos as usize).copied()
    }
}

/// Exhaustive enumeration of normal curve types on one tetrahedron.
#[derive(Clone, Copy, Debug)]
pub struct CurveOracle {
    bound: u32,
}

impl Default for CurveOracle {
    fn default() -> Self {
        CurveOracle {
            bound: DEFAULT_CURVE_BOUND,
        }
    }
}

impl CurveOracle {
    pub fn new(bound: u32) -> Self {
        CurveOracle { bound }
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    /// Every connected normal curve type of length at most `max_length`,
    /// sorted by length and then by arc counts.
    ///
    /// Searches all edge-weight vectors with total weight at most
    /// `max_length`; each one that admits arc counts is assembled into an
    /// explicit curve system and kept if it is a single loop.
    pub fn enumerate(&self, max_length: u32) -> Result<Vec<NormalCurve>, CurveError> {
        if max_length > self.bound {
            return Err(CurveError::BoundExceeded {
                requested: max_length,
                bound: self.bound,
            });
        }
        let mut out = Vec::new();
        let mut weights = [0u32; 6];
        fn rec(i: usize, budget: u32, weights: &mut [u32; 6], out: &mut Vec<NormalCurve>) {
            if i == 6 {
                if let Some(curve) = NormalCurve::from_edge_weights(*weights) {
                    let checked =
                        NormalCurve::from_arcs(curve.arcs).expect("weights induce matched arcs");
                    if checked.is_connected() {
                        out.push(checked);
                    }
                }
                return;
            }
            for w in 0..=budget {
                weights[i] = w;
                rec(i + 1, budget - w, weights, out);
            }
            weights[i] = 0;
        }
        rec(0, max_length, &mut weights, &mut out);
        out.sort_by_key(|c| (c.length(), *c));
        Ok(out)
    }

    /// Connected curve types of length exactly `length`.
    pub fn curves_of_length(&self, length: u32) -> Result<Vec<NormalCurve>, CurveError> {
        Ok(self
            .enumerate(length)?
            .into_iter()
            .filter(|c| c.length() == length)
            .collect())
    }

    /// Count of connected curve types per length, up to `max_length`.
    pub fn length_histogram(&self, max_length: u32) -> Result<BTreeMap<u32, usize>, CurveError> {
        let mut hist = BTreeMap::new();
        for c in self.enumerate(max_length)? {
            *hist.entry(c.length()).or_insert(0) += 1;
        }
        Ok(hist)
    }
}

/// Enumerates connected curve types with the default length bound.
pub fn enumerate_curves(max_length: u32) -> Result<Vec<NormalCurve>, CurveError> {
    CurveOracle::default().enumerate(max_length)
}

/// Whether the given curve types, with multiplicities, can be embedded
/// simultaneously and pairwise disjointly on the tetrahedron boundary.
///
/// Disjoint copies would form a normal curve system whose arc counts are the
/// weighted sum. That system is unique up to normal isotopy, so the collection
/// is realizable exactly when the components of the summed system are the
/// requested curves with the requested multiplicities.
pub fn simultaneously_realizable(curves: &[(NormalCurve, u32)]) -> bool {
    let mut total = NormalCurve::EMPTY;
    let mut wanted = Vec::new();
    for &(c, k) in curves {
        if k == 0 {
            continue;
        }
        if !c.is_connected() {
            return false;
        }
        total = total.sum(&c.scaled(k));
        wanted.extend(std::iter::repeat(c).take(k as usize));
    }
    wanted.sort();
    total.components() == wanted
}

/// Two connected curve types admit disjoint representatives.
pub fn disjointly_realizable(a: &NormalCurve, b: &NormalCurve) -> bool {
    if a == b {
        return simultaneously_realizable(&[(*a, 2)]);
    }
    simultaneously_realizable(&[(*a, 1), (*b, 1)])
}

/// A collection of disjoint curves never mixes lengths `4n` and `4m` with
/// `n != m`. Returns `true` iff the collection is realizable disjointly and
/// obeys that rule.
pub fn check_single_long_length(curves: &[(NormalCurve, u32)]) -> bool {
    let mut long: Option<u32> = None;
    for &(c, k) in curves {
        let len = c.length();
        if k == 0 || len % 4 != 0 {
            continue;
        }
        match long {
            None => long = Some(len),
            Some(l) if l != len => return false,
            _ => {}
        }
    }
    simultaneously_realizable(curves)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn of_length(len: u32) -> Vec<NormalCurve> {
        CurveOracle::default().curves_of_length(len).unwrap()
    }

    #[test]
    fn triangles_and_quads() {
        assert_eq!(enumerate_curves(3).unwrap().len(), 4);
        let upto4 = enumerate_curves(4).unwrap();
        assert_eq!(upto4.len(), 7);
        assert_eq!(upto4.iter().filter(|c| c.length() == 4).count(), 3);
        for len in 5..=7 {
            assert!(of_length(len).is_empty(), "length {len}");
        }
    }

    #[test]
    fn triangle_is_vertex_link() {
        for t in of_length(3) {
            let w = t.edge_weights();
            // weight 1 on the three edges at one vertex
            let v = (0..4)
                .find(|&v| (0..6).all(|e| (w[e] == 1) == EDGE_VERTICES[e].contains(&v)))
                .expect("vertex link");
            for f in (0..4).filter(|&f| f != v) {
                assert_eq!(t.arc(f, v), 1);
            }
        }
    }

    #[test]
    fn bound_is_enforced() {
        assert_eq!(
            enumerate_curves(25),
            Err(CurveError::BoundExceeded {
                requested: 25,
                bound: 24
            })
        );
        assert!(CurveOracle::new(30).enumerate(25).is_ok());
    }

    #[test]
    fn unmatched_arcs_rejected() {
        let mut arcs = [[0; 4]; 4];
        arcs[0][1] = 1;
        assert!(matches!(
            NormalCurve::from_arcs(arcs),
            Err(CurveError::Unmatched { .. })
        ));
        let mut arcs = [[0; 4]; 4];
        arcs[2][2] = 1;
        assert_eq!(
            NormalCurve::from_arcs(arcs),
            Err(CurveError::BadCorner { face: 2 })
        );
    }

    #[test]
    fn loops_visit_every_point_once() {
        for c in enumerate_curves(12).unwrap() {
            let sys = CurveSystem::new(c.scaled(2));
            assert_eq!(sys.loops().len(), 2);
            let total: usize = sys.loops().iter().map(|l| l.points.len()).sum();
            assert_eq!(total as u32, 2 * c.length());
            for l in sys.loops() {
                assert_eq!(l.curve, c);
                // consecutive arcs lie on different faces
                for i in 0..l.arcs.len() {
                    assert_ne!(l.arcs[i].face, l.arcs[(i + 1) % l.arcs.len()].face);
                }
            }
        }
    }

    #[test]
    fn disjointness_examples() {
        let tris = of_length(3);
        let quads = of_length(4);
        assert!(!disjointly_realizable(&quads[0], &quads[1]));
        assert!(!disjointly_realizable(&quads[1], &quads[2]));
        for t in &tris {
            assert!(disjointly_realizable(t, t));
            for q in &quads {
                assert!(disjointly_realizable(q, t));
                assert!(disjointly_realizable(t, q));
            }
        }
    }

    #[test]
    fn single_long_length_examples() {
        let oct = of_length(8)[0];
        let quad = of_length(4)[0];
        assert!(!check_single_long_length(&[(oct, 1), (quad, 1)]));
        let tris: Vec<_> = of_length(3).into_iter().map(|t| (t, 1)).collect();
        assert!(check_single_long_length(&tris));
        assert!(check_single_long_length(&[(oct, 2)]));
        let other = of_length(8)[1];
        assert!(!check_single_long_length(&[(oct, 1), (other, 1)]));
    }
}
