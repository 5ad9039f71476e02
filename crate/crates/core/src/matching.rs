//! Arc-matching equations and admissibility of coordinate vectors.
//!
//! Every glued face pair contributes three equations, one per arc type. Arc
//! types on a face are named by the corner they cut off, and the gluing
//! permutation carries corners of one side to corners of the other.

use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::pieces::{CoordinateLayout, PieceKind, TubeDecoration};
use crate::stacking::{analyze_tubes, TetStack};
use crate::surface::{SurfaceClass, TwoNormalKind};
use crate::tetra::face_vertices;
use crate::triangulation::Triangulation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatchingError {
    #[error(
        "tetrahedron {tet} face {face} is unglued; matching equations need a closed triangulation"
    )]
    NotClosed { tet: usize, face: usize },
    #[error("layout is for {layout} tetrahedra but the triangulation has {tri}")]
    LayoutMismatch { layout: usize, tri: usize },
}

/// The integer system `A x = 0` over the coordinate layout.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatchingSystem {
    matrix: Vec<Vec<i64>>,
    row_labels: Vec<String>,
    column_labels: Vec<String>,
}

impl MatchingSystem {
    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn row_labels(&self) -> &[String] {
        &self.row_labels
    }

    pub fn column_labels(&self) -> &[String] {
        &self.column_labels
    }

    pub fn row_count(&self) -> usize {
        self.matrix.len()
    }

    pub fn column_count(&self) -> usize {
        self.column_labels.len()
    }

    /// `A v` with exact 128-bit accumulation.
    pub fn residual(&self, v: &[u64]) -> Vec<i128> {
        self.matrix
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .map(|(&a, &x)| a as i128 * x as i128)
                    .sum()
            })
            .collect()
    }

    pub fn is_solution(&self, v: &[u64]) -> bool {
        v.len() == self.column_count() && self.residual(v).iter().all(|&r| r == 0)
    }
}

/// One equation per (glued face pair, corner of the face): arcs of that type
/// counted from the first side minus arcs of the matching type on the second.
pub fn build_matching_system(
    tri: &Triangulation,
    layout: &CoordinateLayout,
) -> Result<MatchingSystem, MatchingError> {
    if layout.tet_count() != tri.tet_count() {
        return Err(MatchingError::LayoutMismatch {
            layout: layout.tet_count(),
            tri: tri.tet_count(),
        });
    }
    for tet in 0..tri.tet_count() {
        if let Some(face) = (0..4).find(|&f| tri.gluing(tet, f).is_none()) {
            return Err(MatchingError::NotClosed { tet, face });
        }
    }
    let catalog = layout.catalog();
    let kinds = catalog.kinds();
    let mut matrix = Vec::new();
    let mut row_labels = Vec::new();
    for (tet, face, g) in tri.face_pairs() {
        let other_face = g.perm.apply(face);
        for corner in face_vertices(face) {
            let other_corner = g.perm.apply(corner);
            let mut row = vec![0i64; layout.dimension()];
            for &kind in &kinds {
                let curve = catalog.boundary_curve(kind);
                row[layout.index(tet, kind)] += curve.arc(face, corner) as i64;
                row[layout.index(g.tet, kind)] -= curve.arc(other_face, other_corner) as i64;
            }
            matrix.push(row);
            row_labels.push(format!("t{tet}:F{face}/t{}:F{other_face}:v{corner}", g.tet));
        }
    }
    Ok(MatchingSystem {
        matrix,
        row_labels,
        column_labels: layout.labels(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum AdmissibilityMode {
    Normal,
    AlmostNormal,
    TwoNormal,
}

impl AdmissibilityMode {
    pub const ALL: [AdmissibilityMode; 3] = [
        AdmissibilityMode::Normal,
        AdmissibilityMode::AlmostNormal,
        AdmissibilityMode::TwoNormal,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            AdmissibilityMode::Normal => "normal",
            AdmissibilityMode::AlmostNormal => "almost",
            AdmissibilityMode::TwoNormal => "2normal",
        }
    }

    /// Whether surfaces of class `class` belong to this mode.
    pub fn admits(&self, class: SurfaceClass) -> bool {
        match self {
            AdmissibilityMode::Normal => class == SurfaceClass::Normal,
            AdmissibilityMode::AlmostNormal => matches!(
                class,
                SurfaceClass::AlmostNormalOct | SurfaceClass::AlmostNormalTube
            ),
            AdmissibilityMode::TwoNormal => matches!(class, SurfaceClass::TwoNormal(_)),
        }
    }
}

impl fmt::Display for AdmissibilityMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AdmissibilityMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "normal" => Ok(AdmissibilityMode::Normal),
            "almost" => Ok(AdmissibilityMode::AlmostNormal),
            "2normal" => Ok(AdmissibilityMode::TwoNormal),
            _ => Err(format!(
                "unknown mode `{s}` (expected normal, almost or 2normal)"
            )),
        }
    }
}

/// The non-normal ingredients of a surface.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ExceptionalPattern {
    /// `(tet, family, multiplicity)` for each nonzero octagon coordinate.
    pub octagons: Vec<(usize, u8, u64)>,
    /// `(tet, family, multiplicity)` for each nonzero 12-gon coordinate.
    pub dodecagons: Vec<(usize, u8, u64)>,
    pub tubes: Vec<TubeDecoration>,
}

impl ExceptionalPattern {
    pub fn from_vector(layout: &CoordinateLayout, v: &[u64], tubes: &[TubeDecoration]) -> Self {
        let mut pattern = ExceptionalPattern {
            tubes: tubes.to_vec(),
            ..Default::default()
        };
        for (i, &x) in v.iter().enumerate() {
            if x == 0 {
                continue;
            }
            match layout.coordinate(i) {
                (tet, PieceKind::Octagon(p)) => pattern.octagons.push((tet, p, x)),
                (tet, PieceKind::Dodecagon(d)) => pattern.dodecagons.push((tet, d, x)),
                _ => {}
            }
        }
        pattern
    }

    /// Number of exceptional ingredients, counting multiplicity.
    pub fn exceptional_count(&self) -> u64 {
        self.octagons.iter().map(|o| o.2).sum::<u64>()
            + self.dodecagons.iter().map(|d| d.2).sum::<u64>()
            + self.tubes.len() as u64
    }

    /// The taxonomy label of the pattern, or the reason none applies.
    pub fn class(&self) -> Result<SurfaceClass, Violation> {
        for &(tet, family, count) in &self.octagons {
            if count > 1 {
                return Err(Violation::ExceptionalMultiplicity {
                    tet,
                    kind: PieceKind::Octagon(family),
                    count,
                });
            }
        }
        for &(tet, family, count) in &self.dodecagons {
            if count > 1 {
                return Err(Violation::ExceptionalMultiplicity {
                    tet,
                    kind: PieceKind::Dodecagon(family),
                    count,
                });
            }
        }
        let counts = (self.octagons.len(), self.tubes.len(), self.dodecagons.len());
        Ok(match counts {
            (0, 0, 0) => SurfaceClass::Normal,
            (1, 0, 0) => SurfaceClass::AlmostNormalOct,
            (0, 1, 0) => SurfaceClass::AlmostNormalTube,
            (2, 0, 0) => {
                let (a, b) = (self.octagons[0].0, self.octagons[1].0);
                if a == b {
                    return Err(Violation::OctagonsShareTetrahedron { tet: a });
                }
                SurfaceClass::TwoNormal(TwoNormalKind::TwoOctagons)
            }
            (0, 2, 0) => SurfaceClass::TwoNormal(TwoNormalKind::TwoTubes),
            (1, 1, 0) => SurfaceClass::TwoNormal(TwoNormalKind::OctagonAndTube),
            (0, 0, 1) => SurfaceClass::TwoNormal(TwoNormalKind::Dodecagon),
            (octagons, tubes, dodecagons) => {
                return Err(Violation::UnlistedPattern {
                    octagons,
                    tubes,
                    dodecagons,
                })
            }
        })
    }
}

/// Why a vector and its tubes are not an admissible surface. Each variant
/// has a stable machine-readable [`Violation::code`].
#[derive(Debug, Error, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "code", rename_all = "snake_case")]
pub enum Violation {
    #[error("vector has {found} coordinates, layout has {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("vector does not satisfy the matching equations")]
    Unmatched,
    #[error("tetrahedron {tet} has more than one quadrilateral family")]
    MultipleQuads { tet: usize },
    #[error("tetrahedron {tet}: pieces {first} and {second} cannot be disjoint")]
    IncompatiblePieces {
        tet: usize,
        first: PieceKind,
        second: PieceKind,
    },
    #[error("tetrahedron {tet}: pieces do not assemble into the requested disks")]
    PieceMismatch { tet: usize },
    #[error("tetrahedron {tet}: coordinates too large to rebuild")]
    TooLarge { tet: usize },
    #[error("tetrahedron {tet}: {kind} appears {count} times, at most once is allowed")]
    ExceptionalMultiplicity {
        tet: usize,
        kind: PieceKind,
        count: u64,
    },
    #[error("two octagons in tetrahedron {tet}; they must lie in different tetrahedra")]
    OctagonsShareTetrahedron { tet: usize },
    #[error("{octagons} octagons, {tubes} tubes and {dodecagons} 12-gons is not a listed pattern")]
    UnlistedPattern {
        octagons: usize,
        tubes: usize,
        dodecagons: usize,
    },
    #[error("{found} is not a {mode} surface")]
    WrongMode {
        mode: AdmissibilityMode,
        found: SurfaceClass,
    },
    #[error("tube {tube:?} refers to a crossing that does not exist")]
    TubeSlotOutOfRange { tube: TubeDecoration },
    #[error("tube {tube:?} joins crossings that are not adjacent along the edge")]
    TubeNotAdjacent { tube: TubeDecoration },
    #[error("tube {tube:?} is nested around another tube")]
    NestedTubes { tube: TubeDecoration },
    #[error("tube {tube:?} is listed twice")]
    DuplicateTube { tube: TubeDecoration },
    #[error("tubes {first:?} and {second:?} join the same pieces")]
    ParallelTubes {
        first: TubeDecoration,
        second: TubeDecoration,
    },
    #[error(
        "tube {tube:?} joins a piece to itself, which needs an octagon (boundary length {length})"
    )]
    SelfTubeNotOctagon { tube: TubeDecoration, length: u32 },
    #[error("tube {tube:?} would make an annulus with a boundary of length {length} > 8")]
    AnnulusBoundaryTooLong { tube: TubeDecoration, length: u32 },
    #[error("tube {tube:?} is part of a pair of pants with a boundary of length {length}; only 3 or 4 is allowed")]
    PantsBoundary { tube: TubeDecoration, length: u32 },
    #[error("tube {tube:?} is marked inside-out but is not a pair-of-pants leg")]
    InsideOutWithoutPants { tube: TubeDecoration },
}

impl Violation {
    pub fn code(&self) -> &'static str {
        match self {
            Violation::DimensionMismatch { .. } => "dimension_mismatch",
            Violation::Unmatched => "unmatched",
            Violation::MultipleQuads { .. } => "multiple_quads",
            Violation::IncompatiblePieces { .. } => "incompatible_pieces",
            Violation::PieceMismatch { .. } => "piece_mismatch",
            Violation::TooLarge { .. } => "too_large",
            Violation::ExceptionalMultiplicity { .. } => "exceptional_multiplicity",
            Violation::OctagonsShareTetrahedron { .. } => "octagons_share_tetrahedron",
            Violation::UnlistedPattern { .. } => "unlisted_pattern",
            Violation::WrongMode { .. } => "wrong_mode",
            Violation::TubeSlotOutOfRange { .. } => "tube_slot_out_of_range",
            Violation::TubeNotAdjacent { .. } => "tube_not_adjacent",
            Violation::NestedTubes { .. } => "nested_tubes",
            Violation::DuplicateTube { .. } => "duplicate_tube",
            Violation::ParallelTubes { .. } => "parallel_tubes",
            Violation::SelfTubeNotOctagon { .. } => "self_tube_not_octagon",
            Violation::AnnulusBoundaryTooLong { .. } => "annulus_boundary_too_long",
            Violation::PantsBoundary { .. } => "pants_boundary",
            Violation::InsideOutWithoutPants { .. } => "inside_out_without_pants",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AdmissibilityOptions {
    /// Accept an outer tube wrapped around an adjacent inner one.
    pub allow_nested_tubes: bool,
}

/// Per-tetrahedron embeddability: one quad family at most, and pairwise
/// compatible pieces.
pub(crate) fn check_tetrahedra(layout: &CoordinateLayout, v: &[u64]) -> Result<(), Violation> {
    let catalog = layout.catalog();
    let kinds = catalog.kinds();
    for tet in 0..layout.tet_count() {
        let block = layout.tet_block(v, tet);
        let quads = (0..3)
            .filter(|&q| block[catalog.local_index(PieceKind::Quad(q))] > 0)
            .count();
        if quads > 1 {
            return Err(Violation::MultipleQuads { tet });
        }
        let present: Vec<(PieceKind, u64)> = kinds
            .iter()
            .zip(block)
            .filter(|(_, &x)| x > 0)
            .map(|(&k, &x)| (k, x))
            .collect();
        for (i, &(a, count)) in present.iter().enumerate() {
            if count > 1 && !catalog.compatible(a, a) {
                return Err(Violation::IncompatiblePieces {
                    tet,
                    first: a,
                    second: a,
                });
            }
            for &(b, _) in &present[i + 1..] {
                if !catalog.compatible(a, b) {
                    return Err(Violation::IncompatiblePieces {
                        tet,
                        first: a,
                        second: b,
                    });
                }
            }
        }
    }
    Ok(())
}

/// Arrangements of every tetrahedron that carries a tube.
pub(crate) fn tube_stacks(
    layout: &CoordinateLayout,
    v: &[u64],
    tubes: &[TubeDecoration],
) -> Result<HashMap<usize, TetStack>, Violation> {
    let mut stacks = HashMap::new();
    for t in tubes {
        if t.tet >= layout.tet_count() {
            return Err(Violation::TubeSlotOutOfRange { tube: *t });
        }
        if let Entry::Vacant(slot) = stacks.entry(t.tet) {
            slot.insert(TetStack::build(
                layout.catalog(),
                t.tet,
                layout.tet_block(v, t.tet),
            )?);
        }
    }
    Ok(stacks)
}

/// Decides whether `v` with `tubes` is a surface of the given mode and
/// returns its class.
///
/// Checks, in order: dimension; at most one quad family and pairwise
/// compatible pieces in each tetrahedron; the exceptional pattern (octagon
/// and 12-gon coordinates at most 1, exactly one listed pattern, allowed by
/// `mode`); and the structural tube rules. The matching equations are not
/// checked here.
pub fn is_admissible(
    layout: &CoordinateLayout,
    v: &[u64],
    tubes: &[TubeDecoration],
    mode: AdmissibilityMode,
    options: &AdmissibilityOptions,
) -> Result<SurfaceClass, Violation> {
    if v.len() != layout.dimension() {
        return Err(Violation::DimensionMismatch {
            expected: layout.dimension(),
            found: v.len(),
        });
    }
    check_tetrahedra(layout, v)?;
    let class = ExceptionalPattern::from_vector(layout, v, tubes).class()?;
    if !mode.admits(class) {
        return Err(Violation::WrongMode { mode, found: class });
    }
    if !tubes.is_empty() {
        let stacks = tube_stacks(layout, v, tubes)?;
        analyze_tubes(&stacks, tubes, options.allow_nested_tubes)?;
    }
    Ok(class)
}
