//! Elementary pieces inside a tetrahedron and the coordinate layout.
//!
//! Disk pieces are classified by their boundary curve: triangles (length 3),
//! quadrilaterals (4), octagons (8) and 12-gons. Octagon and 12-gon families
//! are read off the curve oracle rather than fixed here. Tubes are not disk
//! pieces and carry no coordinates; see [`TubeDecoration`].

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::curves::{disjointly_realizable, CurveOracle, NormalCurve};
use crate::tetra::{edge_pair, EDGE_VERTICES};

/// Boundary lengths of the disk pieces that may occur.
pub const ALLOWED_PIECE_LENGTHS: [u32; 4] = [3, 4, 8, 12];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PieceKind {
    /// Vertex-linking triangle at the given vertex.
    Triangle(u8),
    /// Quadrilateral missing the given opposite-edge pair.
    Quad(u8),
    /// Octagon crossing both edges of the given opposite-edge pair twice.
    Octagon(u8),
    /// 12-gon family, indexed in oracle order.
    Dodecagon(u8),
}

impl PieceKind {
    pub fn is_exceptional(&self) -> bool {
        matches!(self, PieceKind::Octagon(_) | PieceKind::Dodecagon(_))
    }

    pub fn short_label(&self) -> String {
        match self {
            PieceKind::Triangle(i) => format!("T{i}"),
            PieceKind::Quad(i) => format!("Q{i}"),
            PieceKind::Octagon(i) => format!("O{i}"),
            PieceKind::Dodecagon(i) => format!("D{i}"),
        }
    }
}

impl fmt::Display for PieceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.short_label())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PieceError {
    #[error(
        "a disk piece with boundary length {length} is not allowed (lengths are 3, 4, 8 or 12)"
    )]
    LengthNotAllowed { length: u32 },
    #[error("piece boundary must be a connected normal curve")]
    Disconnected,
    #[error("piece boundary {0:?} is already registered")]
    Duplicate(NormalCurve),
    #[error("boundary curve of length {length} does not fit the expected family shape")]
    UnexpectedShape { length: u32 },
    #[error("curve oracle failed: {0}")]
    Oracle(#[from] crate::curves::CurveError),
}

/// The registered piece types with their boundary curves and pairwise
/// compatibility inside one tetrahedron.
#[derive(Clone, Debug)]
pub struct PieceCatalog {
    triangles: [Option<NormalCurve>; 4],
    quads: [Option<NormalCurve>; 3],
    octagons: [Option<NormalCurve>; 3],
    dodecagons: Vec<NormalCurve>,
    lookup: HashMap<NormalCurve, PieceKind>,
    compat: OnceLock<Vec<bool>>,
}

impl PieceCatalog {
    pub fn empty() -> Self {
        PieceCatalog {
            triangles: [None; 4],
            quads: [None; 3],
            octagons: [None; 3],
            dodecagons: Vec::new(),
            lookup: HashMap::new(),
            compat: OnceLock::new(),
        }
    }

    /// Registers every connected oracle curve of length at most 12.
    pub fn from_oracle(oracle: &CurveOracle) -> Result<Self, PieceError> {
        let mut catalog = PieceCatalog::empty();
        for curve in oracle.enumerate(12)? {
            catalog.register(curve)?;
        }
        let complete = catalog.triangles.iter().all(Option::is_some)
            && catalog.quads.iter().all(Option::is_some)
            && catalog.octagons.iter().all(Option::is_some);
        if !complete {
            return Err(PieceError::UnexpectedShape { length: 0 });
        }
        Ok(catalog)
    }

    /// The catalog built once from the default oracle.
    pub fn standard() -> &'static PieceCatalog {
        static CATALOG: OnceLock<PieceCatalog> = OnceLock::new();
        CATALOG.get_or_init(|| {
            PieceCatalog::from_oracle(&CurveOracle::default())
                .expect("oracle yields the piece taxonomy")
        })
    }

    /// Adds a piece type with the given boundary. Lengths other than
    /// 3, 4, 8 and 12 are refused.
    pub fn register(&mut self, boundary: NormalCurve) -> Result<PieceKind, PieceError> {
        let length = boundary.length();
        if !ALLOWED_PIECE_LENGTHS.contains(&length) {
            return Err(PieceError::LengthNotAllowed { length });
        }
        if !boundary.is_connected() {
            return Err(PieceError::Disconnected);
        }
        if self.lookup.contains_key(&boundary) {
            return Err(PieceError::Duplicate(boundary));
        }
        let w = boundary.edge_weights();
        let shape = PieceError::UnexpectedShape { length };
        let kind = match length {
            3 => {
                let v = (0..4)
                    .find(|&v| (0..6).all(|e| (w[e] == 1) == EDGE_VERTICES[e].contains(&v)))
                    .ok_or(shape)?;
                self.triangles[v] = Some(boundary);
                PieceKind::Triangle(v as u8)
            }
            4 => {
                let e = (0..6).find(|&e| w[e] == 0).ok_or(shape)?;
                let pair = edge_pair(e);
                self.quads[pair] = Some(boundary);
                PieceKind::Quad(pair as u8)
            }
            8 => {
                let e = (0..6).find(|&e| w[e] == 2).ok_or(shape.clone())?;
                let pair = edge_pair(e);
                if w[5 - e] != 2 || (0..6).filter(|&x| edge_pair(x) != pair).any(|x| w[x] != 1) {
                    return Err(shape);
                }
                self.octagons[pair] = Some(boundary);
                PieceKind::Octagon(pair as u8)
            }
            _ => {
                self.dodecagons.push(boundary);
                PieceKind::Dodecagon((self.dodecagons.len() - 1) as u8)
            }
        };
        self.lookup.insert(boundary, kind);
        self.compat = OnceLock::new();
        Ok(kind)
    }

    pub fn dodecagon_count(&self) -> usize {
        self.dodecagons.len()
    }

    pub fn octagon_count(&self) -> usize {
        self.octagons.iter().filter(|o| o.is_some()).count()
    }

    /// Coordinates per tetrahedron: triangles, quads, octagons, 12-gons.
    pub fn per_tet(&self) -> usize {
        10 + self.dodecagons.len()
    }

    /// Piece kinds in layout order.
    pub fn kinds(&self) -> Vec<PieceKind> {
        let mut out: Vec<PieceKind> = (0..4).map(PieceKind::Triangle).collect();
        out.extend((0..3).map(PieceKind::Quad));
        out.extend((0..3).map(PieceKind::Octagon));
        out.extend((0..self.dodecagons.len() as u8).map(PieceKind::Dodecagon));
        out
    }

    /// Offset of `kind` within one tetrahedron's block of coordinates.
    pub fn local_index(&self, kind: PieceKind) -> usize {
        match kind {
            PieceKind::Triangle(i) => i as usize,
            PieceKind::Quad(i) => 4 + i as usize,
            PieceKind::Octagon(i) => 7 + i as usize,
            PieceKind::Dodecagon(i) => 10 + i as usize,
        }
    }

    pub fn kind_at(&self, local: usize) -> PieceKind {
        match local {
            0..=3 => PieceKind::Triangle(local as u8),
            4..=6 => PieceKind::Quad((local - 4) as u8),
            7..=9 => PieceKind::Octagon((local - 7) as u8),
            _ => PieceKind::Dodecagon((local - 10) as u8),
        }
    }

    pub fn boundary_curve(&self, kind: PieceKind) -> NormalCurve {
        let found = match kind {
            PieceKind::Triangle(i) => self.triangles.get(i as usize).copied().flatten(),
            PieceKind::Quad(i) => self.quads.get(i as usize).copied().flatten(),
            PieceKind::Octagon(i) => self.octagons.get(i as usize).copied().flatten(),
            PieceKind::Dodecagon(i) => self.dodecagons.get(i as usize).copied(),
        };
        found.unwrap_or_else(|| panic!("piece {kind} is not registered"))
    }

    pub fn kind_of(&self, boundary: &NormalCurve) -> Option<PieceKind> {
        self.lookup.get(boundary).copied()
    }

    /// Whether pieces of the two kinds can sit disjointly in one tetrahedron.
    pub fn compatible(&self, a: PieceKind, b: PieceKind) -> bool {
        let n = self.per_tet();
        let table = self.compat.get_or_init(|| {
            let kinds = self.kinds();
            let mut t = vec![false; n * n];
            for (i, &x) in kinds.iter().enumerate() {
                for (j, &y) in kinds.iter().enumerate().skip(i) {
                    let ok =
                        disjointly_realizable(&self.boundary_curve(x), &self.boundary_curve(y));
                    t[i * n + j] = ok;
                    t[j * n + i] = ok;
                }
            }
            t
        });
        table[self.local_index(a) * n + self.local_index(b)]
    }
}

pub fn boundary_curve(kind: PieceKind) -> NormalCurve {
    PieceCatalog::standard().boundary_curve(kind)
}

pub fn compatible(a: PieceKind, b: PieceKind) -> bool {
    PieceCatalog::standard().compatible(a, b)
}

/// Properties of the piece taxonomy that are decided by the oracle and
/// published alongside the layout.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LayoutMeta {
    pub octagon_families: usize,
    pub dodecagon_families: usize,
    /// Some 12-gon can share a tetrahedron with some quadrilateral.
    pub dodecagon_quad_compatible: bool,
    /// Some octagon can share a tetrahedron with some quadrilateral.
    pub octagon_quad_compatible: bool,
}

/// Dense coordinate indexing: tetrahedron-major, then kinds in the order
/// triangles, quads, octagons, 12-gons.
#[derive(Clone, Debug)]
pub struct CoordinateLayout {
    tet_count: usize,
    catalog: &'static PieceCatalog,
    meta: LayoutMeta,
}

impl CoordinateLayout {
    pub fn new(tet_count: usize, catalog: &'static PieceCatalog) -> Self {
        let quads: Vec<PieceKind> = (0..3).map(PieceKind::Quad).collect();
        let any_with_quad = |kinds: Vec<PieceKind>| {
            kinds
                .into_iter()
                .any(|k| quads.iter().any(|&q| catalog.compatible(k, q)))
        };
        let meta = LayoutMeta {
            octagon_families: catalog.octagon_count(),
            dodecagon_families: catalog.dodecagon_count(),
            dodecagon_quad_compatible: any_with_quad(
                (0..catalog.dodecagon_count() as u8)
                    .map(PieceKind::Dodecagon)
                    .collect(),
            ),
            octagon_quad_compatible: any_with_quad((0..3).map(PieceKind::Octagon).collect()),
        };
        CoordinateLayout {
            tet_count,
            catalog,
            meta,
        }
    }

    pub fn tet_count(&self) -> usize {
        self.tet_count
    }

    pub fn per_tet(&self) -> usize {
        self.catalog.per_tet()
    }

    pub fn dimension(&self) -> usize {
        self.tet_count * self.per_tet()
    }

    pub fn catalog(&self) -> &'static PieceCatalog {
        self.catalog
    }

    pub fn meta(&self) -> &LayoutMeta {
        &self.meta
    }

    pub fn index(&self, tet: usize, kind: PieceKind) -> usize {
        tet * self.per_tet() + self.catalog.local_index(kind)
    }

    pub fn coordinate(&self, index: usize) -> (usize, PieceKind) {
        (
            index / self.per_tet(),
            self.catalog.kind_at(index % self.per_tet()),
        )
    }

    /// Labels such as `t0:T2`, `t3:Q1`, `t1:O0`, `t2:D5`.
    pub fn labels(&self) -> Vec<String> {
        (0..self.dimension())
            .map(|i| {
                let (tet, kind) = self.coordinate(i);
                format!("t{tet}:{kind}")
            })
            .collect()
    }

    /// Slice of `v` belonging to `tet`.
    pub fn tet_block<'v, T>(&self, v: &'v [T], tet: usize) -> &'v [T] {
        &v[tet * self.per_tet()..(tet + 1) * self.per_tet()]
    }
}

/// Layout for `tri` over the standard piece catalog.
pub fn coordinate_layout(tri: &crate::Triangulation) -> CoordinateLayout {
    CoordinateLayout::new(tri.tet_count(), PieceCatalog::standard())
}

/// An unknotted tube running parallel to a tetrahedron edge between two
/// crossing points of the surface with that edge.
///
/// Slots are crossing positions along the edge counted from its lower vertex.
/// When both slots belong to the same piece the tube joins that piece to
/// itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TubeDecoration {
    pub tet: usize,
    pub edge: usize,
    pub slots: (u32, u32),
    /// Provenance flag for a pair-of-pants leg attached inside-out. Does not
    /// change the combinatorics.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub inside_out: bool,
}

impl TubeDecoration {
    pub fn new(tet: usize, edge: usize, lower: u32, upper: u32) -> Self {
        TubeDecoration {
            tet,
            edge,
            slots: (lower.min(upper), lower.max(upper)),
            inside_out: false,
        }
    }

    pub fn is_adjacent(&self) -> bool {
        self.slots.1 == self.slots.0 + 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cat() -> &'static PieceCatalog {
        PieceCatalog::standard()
    }

    #[test]
    fn boundary_lengths() {
        let c = cat();
        assert_eq!(c.boundary_curve(PieceKind::Triangle(0)).length(), 3);
        for p in 0..3 {
            assert_eq!(c.boundary_curve(PieceKind::Quad(p)).length(), 4);
            assert_eq!(c.boundary_curve(PieceKind::Octagon(p)).length(), 8);
        }
        assert_eq!(c.dodecagon_count(), 6);
        for d in 0..c.dodecagon_count() as u8 {
            assert_eq!(c.boundary_curve(PieceKind::Dodecagon(d)).length(), 12);
        }
    }

    #[test]
    fn quad_misses_its_pair() {
        for p in 0..3u8 {
            let w = cat().boundary_curve(PieceKind::Quad(p)).edge_weights();
            for e in 0..6 {
                assert_eq!(w[e] == 0, edge_pair(e) == p as usize);
            }
        }
    }

    #[test]
    fn compatibility_examples() {
        let c = cat();
        assert!(!c.compatible(PieceKind::Quad(0), PieceKind::Quad(1)));
        assert!(c.compatible(PieceKind::Triangle(0), PieceKind::Triangle(3)));
        assert!(c.compatible(PieceKind::Quad(2), PieceKind::Quad(2)));
        for p in 0..3 {
            for q in 0..3 {
                if p != q {
                    assert!(!c.compatible(PieceKind::Octagon(p), PieceKind::Octagon(q)));
                }
                assert!(!c.compatible(PieceKind::Octagon(p), PieceKind::Quad(q)));
            }
        }
        for a in c.kinds() {
            for b in c.kinds() {
                assert_eq!(c.compatible(a, b), c.compatible(b, a));
            }
        }
    }

    #[test]
    fn rejects_long_pieces() {
        let oracle = CurveOracle::default();
        let mut c = PieceCatalog::from_oracle(&oracle).unwrap();
        for len in [16, 20] {
            let curve = oracle.curves_of_length(len).unwrap()[0];
            assert_eq!(
                c.register(curve),
                Err(PieceError::LengthNotAllowed { length: len })
            );
        }
        let tri = c.boundary_curve(PieceKind::Triangle(1));
        assert!(matches!(c.register(tri), Err(PieceError::Duplicate(_))));
        assert_eq!(
            c.register(tri.scaled(2)),
            Err(PieceError::LengthNotAllowed { length: 6 })
        );
        let two = tri.sum(&c.boundary_curve(PieceKind::Triangle(2)));
        let mut fresh = PieceCatalog::empty();
        // two disjoint triangles: allowed length but not a single loop
        assert_eq!(two.length(), 6);
        assert!(fresh.register(two).is_err());
    }

    #[test]
    fn layout_indexing() {
        let c = cat();
        let d = c.dodecagon_count();
        let one = CoordinateLayout::new(1, c);
        assert_eq!(one.dimension(), 10 + d);
        let two = CoordinateLayout::new(2, c);
        assert_eq!(two.dimension(), 2 * (10 + d));
        for t in 0..2 {
            for v in 0..4u8 {
                assert_eq!(
                    two.index(t, PieceKind::Triangle(v)),
                    (10 + d) * t + v as usize
                );
            }
        }
        for i in 0..two.dimension() {
            let (t, k) = two.coordinate(i);
            assert_eq!(two.index(t, k), i);
        }
        assert_eq!(two.labels()[0], "t0:T0");
        assert_eq!(two.labels()[10 + d], "t1:T0");
        assert!(!one.meta().dodecagon_quad_compatible);
        assert!(!one.meta().octagon_quad_compatible);
    }
}
