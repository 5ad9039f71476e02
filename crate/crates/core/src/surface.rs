//! Rebuilding a surface from its coordinates as a 2-dimensional cell complex.
//!
//! Vertices are the crossing points of the surface with the 1-skeleton, edges
//! are normal arcs (each shared by the pieces on the two sides of a face),
//! and faces are the pieces themselves. A tube cuts a small hole next to a
//! crossing point in each of its two pieces, joined to the piece boundary by
//! a slit, and glues in an annulus made of two rectangles.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::curves::{ArcRef, CrossingPoint};
use crate::matching::{
    build_matching_system, check_tetrahedra, tube_stacks, ExceptionalPattern, MatchingError,
    Violation,
};
use crate::pieces::{coordinate_layout, CoordinateLayout, PieceKind, TubeDecoration};
use crate::skeleton::{compute_skeleton, Skeleton};
use crate::stacking::{analyze_tubes, TetStack, TubeEnds};
use crate::tetra::{apex, edge_index, face_vertices, orientation_sign, EDGE_VERTICES};
use crate::triangulation::Triangulation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TwoNormalKind {
    TwoOctagons,
    TwoTubes,
    OctagonAndTube,
    Dodecagon,
}

/// Taxonomy label of a surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SurfaceClass {
    Normal,
    AlmostNormalOct,
    AlmostNormalTube,
    TwoNormal(TwoNormalKind),
}

impl SurfaceClass {
    pub const ALL: [SurfaceClass; 7] = [
        SurfaceClass::Normal,
        SurfaceClass::AlmostNormalOct,
        SurfaceClass::AlmostNormalTube,
        SurfaceClass::TwoNormal(TwoNormalKind::TwoOctagons),
        SurfaceClass::TwoNormal(TwoNormalKind::TwoTubes),
        SurfaceClass::TwoNormal(TwoNormalKind::OctagonAndTube),
        SurfaceClass::TwoNormal(TwoNormalKind::Dodecagon),
    ];

    pub fn label(&self) -> &'static str {
        match self {
            SurfaceClass::Normal => "Normal",
            SurfaceClass::AlmostNormalOct => "AlmostNormalOct",
            SurfaceClass::AlmostNormalTube => "AlmostNormalTube",
            SurfaceClass::TwoNormal(TwoNormalKind::TwoOctagons) => "TwoOctagons",
            SurfaceClass::TwoNormal(TwoNormalKind::TwoTubes) => "TwoTubes",
            SurfaceClass::TwoNormal(TwoNormalKind::OctagonAndTube) => "OctagonAndTube",
            SurfaceClass::TwoNormal(TwoNormalKind::Dodecagon) => "Dodecagon",
        }
    }
}

impl fmt::Display for SurfaceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for SurfaceClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SurfaceClass::ALL
            .into_iter()
            .find(|c| c.label() == s)
            .ok_or_else(|| format!("unknown surface class `{s}`"))
    }
}

impl Serialize for SurfaceClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error(transparent)]
    Matching(#[from] MatchingError),
    #[error("triangulation has an edge identified with itself in reverse")]
    ReversedEdge,
    #[error("not an admissible surface: {0}")]
    Inadmissible(#[from] Violation),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

/// Where a face of the complex comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FaceOrigin {
    Piece {
        tet: usize,
        kind: PieceKind,
        copy: u32,
    },
    /// One of the two rectangles of a tube's annulus.
    Tube { tube: TubeDecoration, band: u8 },
}

/// A 2-cell, given by its boundary walk: `(edge, forward)` pairs, where
/// `forward` means the edge is traversed from its first to its second vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceFace {
    pub walk: Vec<(usize, bool)>,
    pub origin: FaceOrigin,
}

#[derive(Clone, Debug)]
pub struct SurfaceComplex {
    vertex_count: usize,
    edges: Vec<[usize; 2]>,
    faces: Vec<SurfaceFace>,
    tubes: Vec<TubeDecoration>,
    class: SurfaceClass,
    /// Euler characteristic accumulated piece by piece from the vector.
    piece_chi: BigRational,
    /// Crossings per edge class, counted on the complex.
    edge_weights: Vec<u64>,
    /// Crossings per edge class, read off the vector.
    vector_edge_weights: Vec<u64>,
}

impl SurfaceComplex {
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn faces(&self) -> &[SurfaceFace] {
        &self.faces
    }

    pub fn tubes(&self) -> &[TubeDecoration] {
        &self.tubes
    }

    pub fn class(&self) -> SurfaceClass {
        self.class
    }

    /// `V - E + F` of the complex.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    /// Sum over pieces of `1 - (boundary arcs)/2 + sum over edges of
    /// (crossings)/(edge degree)`, minus 2 per tube. Never looks at the
    /// complex.
    pub fn piece_euler_characteristic(&self) -> &BigRational {
        &self.piece_chi
    }

    pub fn edge_weights(&self) -> &[u64] {
        &self.edge_weights
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.parent[a.max(b)] = a.min(b);
        }
    }
}

/// Class of `v` with `tubes`: per-tetrahedron embeddability, the exceptional
/// pattern and the structural tube rules, without reference to a mode.
pub fn classify(
    layout: &CoordinateLayout,
    v: &[u64],
    tubes: &[TubeDecoration],
) -> Result<SurfaceClass, Violation> {
    if v.len() != layout.dimension() {
        return Err(Violation::DimensionMismatch {
            expected: layout.dimension(),
            found: v.len(),
        });
    }
    check_tetrahedra(layout, v)?;
    let class = ExceptionalPattern::from_vector(layout, v, tubes).class()?;
    if !tubes.is_empty() {
        let stacks = tube_stacks(layout, v, tubes)?;
        analyze_tubes(&stacks, tubes, true)?;
    }
    Ok(class)
}

fn internal(msg: impl Into<String>) -> SurfaceError {
    SurfaceError::Internal(msg.into())
}

/// Builds the cell complex of `v` with `tubes` on a closed triangulation.
///
/// The input must satisfy the matching equations and [`classify`] must
/// accept it; nested tubes are accepted here.
pub fn reconstruct(
    tri: &Triangulation,
    v: &[u64],
    tubes: &[TubeDecoration],
) -> Result<SurfaceComplex, SurfaceError> {
    let layout = coordinate_layout(tri);
    let system = build_matching_system(tri, &layout)?;
    let skeleton = compute_skeleton(tri);
    if skeleton.has_reversed_edge() {
        return Err(SurfaceError::ReversedEdge);
    }
    let class = classify(&layout, v, tubes)?;
    if !system.is_solution(v) {
        return Err(Violation::Unmatched.into());
    }
    let n = tri.tet_count();
    let stacks: Vec<TetStack> = (0..n)
        .map(|t| TetStack::build(layout.catalog(), t, layout.tet_block(v, t)))
        .collect::<Result<_, _>>()?;

    // Local crossing points, numbered per (tet, edge).
    let mut offset = vec![[0usize; 6]; n];
    let mut total = 0;
    for t in 0..n {
        for e in 0..6 {
            offset[t][e] = total;
            total += stacks[t].weight(e) as usize;
        }
    }
    let local = |t: usize, p: CrossingPoint| offset[t][p.edge] + p.pos as usize;
    // The j-th point from `from` on the edge `from`-`to` of `t`.
    let nth_from = |t: usize, from: usize, to: usize, j: u32| {
        let e = edge_index(from, to);
        let w = stacks[t].weight(e);
        let pos = if from < to { j } else { w - 1 - j };
        offset[t][e] + pos as usize
    };

    let mut uf = UnionFind::new(total);
    for (t, f, g) in tri.face_pairs() {
        let vs = face_vertices(f);
        for i in 0..3 {
            for k in i + 1..3 {
                let (a, b) = (vs[i], vs[k]);
                let (pa, pb) = (g.perm.apply(a), g.perm.apply(b));
                let w = stacks[t].weight(edge_index(a, b));
                if w != stacks[g.tet].weight(edge_index(pa, pb)) {
                    return Err(Violation::Unmatched.into());
                }
                for j in 0..w {
                    uf.union(nth_from(t, a, b, j), nth_from(g.tet, pa, pb, j));
                }
            }
        }
    }
    let mut vertex_of = vec![usize::MAX; total];
    let mut vertex_count = 0;
    let mut root_id: HashMap<usize, usize> = HashMap::new();
    for (p, slot) in vertex_of.iter_mut().enumerate() {
        let r = uf.find(p);
        *slot = *root_id.entry(r).or_insert_with(|| {
            vertex_count += 1;
            vertex_count - 1
        });
    }

    // Normal arcs, identified in pairs across glued faces.
    let mut edges: Vec<[usize; 2]> = Vec::new();
    let mut arc_edge: HashMap<(usize, ArcRef), (usize, bool)> = HashMap::new();
    for (t, f, g) in tri.face_pairs() {
        let pf = g.perm.apply(f);
        for corner in face_vertices(f) {
            let pc = g.perm.apply(corner);
            let count = stacks[t].curve().arc(f, corner);
            if count != stacks[g.tet].curve().arc(pf, pc) {
                return Err(Violation::Unmatched.into());
            }
            let others: Vec<usize> = face_vertices(f)
                .into_iter()
                .filter(|&x| x != corner)
                .collect();
            let flipped = g.perm.apply(others[0]) > g.perm.apply(others[1]);
            for index in 0..count {
                let a = ArcRef {
                    face: f,
                    corner,
                    index,
                };
                let b = ArcRef {
                    face: pf,
                    corner: pc,
                    index,
                };
                let [q0, q1] = a.endpoints(stacks[t].system().weights());
                let [r0, r1] = b.endpoints(stacks[g.tet].system().weights());
                let ends = [vertex_of[local(t, q0)], vertex_of[local(t, q1)]];
                let mut other = [vertex_of[local(g.tet, r0)], vertex_of[local(g.tet, r1)]];
                if flipped {
                    other.swap(0, 1);
                }
                if ends != other {
                    return Err(internal("glued arcs have different endpoints"));
                }
                arc_edge.insert((t, a), (edges.len(), false));
                arc_edge.insert((g.tet, b), (edges.len(), flipped));
                edges.push(ends);
            }
        }
    }

    // One face per piece.
    let mut faces: Vec<SurfaceFace> = Vec::new();
    let mut face_of: HashMap<(usize, usize), usize> = HashMap::new();
    for (t, stack) in stacks.iter().enumerate() {
        let weights = stack.system().weights();
        for (li, l) in stack.system().loops().iter().enumerate() {
            let mut walk = Vec::with_capacity(l.arcs.len());
            for (i, arc) in l.arcs.iter().enumerate() {
                let &(edge, flipped) = arc_edge
                    .get(&(t, *arc))
                    .ok_or_else(|| internal("arc without a partner"))?;
                let [q0, _] = arc.endpoints(weights);
                walk.push((edge, (l.points[i] == q0) != flipped));
            }
            let piece = stack.pieces()[li];
            face_of.insert((t, li), faces.len());
            faces.push(SurfaceFace {
                walk,
                origin: FaceOrigin::Piece {
                    tet: t,
                    kind: piece.kind,
                    copy: piece.copy,
                },
            });
        }
    }

    // Tubes.
    let tube_ends: Vec<TubeEnds> = if tubes.is_empty() {
        Vec::new()
    } else {
        let map: HashMap<usize, TetStack> = tubes
            .iter()
            .map(|t| (t.tet, stacks[t.tet].clone()))
            .collect();
        analyze_tubes(&map, tubes, true)?
    };
    struct Slit {
        position: usize,
        items: [(usize, bool); 4],
    }
    let mut slits: HashMap<usize, Vec<Slit>> = HashMap::new();
    let add_vertex = |count: &mut usize| {
        *count += 1;
        *count - 1
    };
    for ends in &tube_ends {
        let tube = ends.tube;
        let stack = &stacks[tube.tet];
        let [a, b] = EDGE_VERTICES[tube.edge];
        let mut holes = Vec::new();
        for (li, slot) in [(ends.first, tube.slots.0), (ends.second, tube.slots.1)] {
            let l = &stack.system().loops()[li];
            let point = CrossingPoint {
                edge: tube.edge,
                pos: slot,
            };
            let i = l
                .points
                .iter()
                .position(|&p| p == point)
                .ok_or_else(|| internal("tube slot not on its piece"))?;
            let out_arc = l.arcs[i];
            let in_arc = l.arcs[(i + l.arcs.len() - 1) % l.arcs.len()];
            let sign = orientation_sign([
                a,
                b,
                apex(out_arc.face, tube.edge),
                apex(in_arc.face, tube.edge),
            ]);
            let x = vertex_of[local(tube.tet, point)];
            let u1 = add_vertex(&mut vertex_count);
            let u2 = add_vertex(&mut vertex_count);
            let bridge = edges.len();
            edges.push([x, u1]);
            let alpha = edges.len();
            edges.push([u1, u2]);
            let gamma = edges.len();
            edges.push([u2, u1]);
            let face = face_of[&(tube.tet, li)];
            slits.entry(face).or_default().push(Slit {
                position: i,
                items: [
                    (bridge, true),
                    (alpha, true),
                    (gamma, true),
                    (bridge, false),
                ],
            });
            holes.push((sign, u1, u2, alpha, gamma));
        }
        let (s1, u1, u2, alpha1, gamma1) = holes[0];
        let (s2, w1, w2, alpha2, gamma2) = holes[1];
        if ends.is_self() && s1 == s2 {
            return Err(internal(
                "self tube joins the two sides of one crossing direction",
            ));
        }
        let g1 = edges.len();
        edges.push([u1, w1]);
        let g2 = edges.len();
        edges.push([u2, w2]);
        let (band_a, band_b) = if s1 == s2 {
            (
                vec![(alpha1, true), (g2, true), (alpha2, false), (g1, false)],
                vec![(gamma1, true), (g1, true), (gamma2, false), (g2, false)],
            )
        } else {
            (
                vec![(alpha1, true), (g2, true), (gamma2, true), (g1, false)],
                vec![(gamma1, true), (g1, true), (alpha2, true), (g2, false)],
            )
        };
        for (band, walk) in [band_a, band_b].into_iter().enumerate() {
            faces.push(SurfaceFace {
                walk,
                origin: FaceOrigin::Tube {
                    tube,
                    band: band as u8,
                },
            });
        }
    }
    for (face, mut list) in slits {
        list.sort_by_key(|s| std::cmp::Reverse(s.position));
        let walk = &mut faces[face].walk;
        for s in list {
            walk.splice(s.position..s.position, s.items);
        }
    }

    // Edge weights two ways.
    let mut vertex_class = vec![usize::MAX; vertex_count];
    for t in 0..n {
        for e in 0..6 {
            let class = skeleton.edge_class_of(t, e);
            for pos in 0..stacks[t].weight(e) {
                let vtx = vertex_of[offset[t][e] + pos as usize];
                if vertex_class[vtx] != usize::MAX && vertex_class[vtx] != class {
                    return Err(internal("crossing point on two edge classes"));
                }
                vertex_class[vtx] = class;
            }
        }
    }
    let mut edge_weights = vec![0u64; skeleton.edge_count()];
    for &c in vertex_class.iter().filter(|&&c| c != usize::MAX) {
        edge_weights[c] += 1;
    }
    let vector_edge_weights: Vec<u64> = skeleton
        .edges
        .iter()
        .map(|class| {
            let emb = class.embeddings[0];
            stacks[emb.tet].weight(emb.edge) as u64
        })
        .collect();

    let piece_chi = piece_euler_characteristic(&layout, &skeleton, v, tubes.len());

    Ok(SurfaceComplex {
        vertex_count,
        edges,
        faces,
        tubes: tubes.to_vec(),
        class,
        piece_chi,
        edge_weights,
        vector_edge_weights,
    })
}

/// Euler characteristic from the coordinates alone: each piece is a disk
/// (`+1`), shares each boundary arc with one other piece (`-1/2` each), and
/// shares each crossing point with the pieces around that edge class
/// (`+1/degree` each); each tube removes 2.
fn piece_euler_characteristic(
    layout: &CoordinateLayout,
    skeleton: &Skeleton,
    v: &[u64],
    tubes: usize,
) -> BigRational {
    let catalog = layout.catalog();
    let mut chi = BigRational::from_integer(BigInt::from(-2 * tubes as i64));
    for (i, &x) in v.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let (tet, kind) = layout.coordinate(i);
        let curve = catalog.boundary_curve(kind);
        let mut per = BigRational::from_integer(BigInt::from(2 - curve.length() as i64))
            / BigRational::from_integer(BigInt::from(2));
        for (e, &w) in curve.edge_weights().iter().enumerate() {
            if w > 0 {
                let deg = skeleton.edges[skeleton.edge_class_of(tet, e)].degree();
                per += BigRational::new(BigInt::from(w), BigInt::from(deg));
            }
        }
        chi += per * BigRational::from_integer(BigInt::from(x));
    }
    chi
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub chi: i64,
    pub orientable: bool,
    pub sphere: bool,
    pub class: SurfaceClass,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceReport {
    pub euler_characteristic: i64,
    pub class: SurfaceClass,
    pub components: Vec<ComponentReport>,
    /// Crossings with each edge class of the triangulation.
    pub edge_weights: Vec<u64>,
}

impl SurfaceReport {
    pub fn component_count(&self) -> usize {
        self.components.len()
    }
}

/// Euler characteristic, components and orientability of a complex.
///
/// Fails if the complex is not a closed surface, if the two Euler
/// characteristic computations disagree, or if the edge weights counted on
/// the complex differ from those of the vector.
pub fn report(complex: &SurfaceComplex) -> Result<SurfaceReport, SurfaceError> {
    let chi = complex.euler_characteristic();
    if complex.piece_chi != BigRational::from_integer(BigInt::from(chi)) {
        return Err(internal(format!(
            "Euler characteristic {chi} from cells but {} from pieces",
            complex.piece_chi
        )));
    }
    if complex.edge_weights != complex.vector_edge_weights {
        return Err(internal(
            "edge weights of the complex differ from the vector",
        ));
    }

    let mut uses: Vec<Vec<(usize, bool)>> = vec![Vec::new(); complex.edges.len()];
    for (f, face) in complex.faces.iter().enumerate() {
        for &(e, forward) in &face.walk {
            uses[e].push((f, forward));
        }
    }
    if let Some(e) = uses.iter().position(|u| u.len() != 2) {
        return Err(internal(format!(
            "edge {e} lies on {} faces",
            uses[e].len()
        )));
    }

    let mut uf = UnionFind::new(complex.faces.len());
    for u in &uses {
        uf.union(u[0].0, u[1].0);
    }
    let mut component_of_root: HashMap<usize, usize> = HashMap::new();
    let mut component = vec![0; complex.faces.len()];
    for f in 0..complex.faces.len() {
        let r = uf.find(f);
        let next = component_of_root.len();
        component[f] = *component_of_root.entry(r).or_insert(next);
    }
    let count = component_of_root.len();

    // Orientation propagation: a shared edge must be traversed in opposite
    // directions by the two faces after flipping.
    let mut sign = vec![0i8; complex.faces.len()];
    let mut orientable = vec![true; count];
    let mut adjacency: Vec<Vec<(usize, bool)>> = vec![Vec::new(); complex.faces.len()];
    for u in &uses {
        let [(f, df), (g, dg)] = [u[0], u[1]];
        // same traversal direction means the faces need opposite signs
        let flip = df == dg;
        adjacency[f].push((g, flip));
        adjacency[g].push((f, flip));
    }
    for start in 0..complex.faces.len() {
        if sign[start] != 0 {
            continue;
        }
        sign[start] = 1;
        let mut stack = vec![start];
        while let Some(f) = stack.pop() {
            for &(g, flip) in &adjacency[f] {
                let want = if flip { -sign[f] } else { sign[f] };
                if sign[g] == 0 {
                    sign[g] = want;
                    stack.push(g);
                } else if sign[g] != want {
                    orientable[component[f]] = false;
                }
            }
        }
    }

    let mut faces_in = vec![0i64; count];
    let mut edges_in = vec![0i64; count];
    let mut vertex_component = vec![usize::MAX; complex.vertex_count];
    for &c in &component {
        faces_in[c] += 1;
    }
    for (e, u) in uses.iter().enumerate() {
        let c = component[u[0].0];
        edges_in[c] += 1;
        for &x in &complex.edges[e] {
            vertex_component[x] = c;
        }
    }
    let mut vertices_in = vec![0i64; count];
    for &c in &vertex_component {
        if c == usize::MAX {
            return Err(internal("isolated vertex"));
        }
        vertices_in[c] += 1;
    }

    // Exceptional ingredients per component, for the per-component label.
    let mut patterns = vec![ExceptionalPattern::default(); count];
    for (f, face) in complex.faces.iter().enumerate() {
        let c = component[f];
        match face.origin {
            FaceOrigin::Piece {
                tet,
                kind: PieceKind::Octagon(p),
                ..
            } => patterns[c].octagons.push((tet, p, 1)),
            FaceOrigin::Piece {
                tet,
                kind: PieceKind::Dodecagon(d),
                ..
            } => patterns[c].dodecagons.push((tet, d, 1)),
            FaceOrigin::Tube { tube, band: 0 } => patterns[c].tubes.push(tube),
            _ => {}
        }
    }

    let mut components = Vec::with_capacity(count);
    for c in 0..count {
        let chi_c = vertices_in[c] - edges_in[c] + faces_in[c];
        let class = patterns[c]
            .class()
            .map_err(|v| internal(format!("component {c}: {v}")))?;
        components.push(ComponentReport {
            chi: chi_c,
            orientable: orientable[c],
            sphere: orientable[c] && chi_c == 2,
            class,
        });
    }
    let total: i64 = components.iter().map(|c| c.chi).sum();
    if total != chi {
        return Err(internal("component Euler characteristics do not add up"));
    }
    Ok(SurfaceReport {
        euler_characteristic: chi,
        class: complex.class,
        components,
        edge_weights: complex.edge_weights.clone(),
    })
}

/// Euler characteristic from the vector alone, as an integer if it is one.
pub fn euler_characteristic_from_vector(
    tri: &Triangulation,
    v: &[u64],
    tubes: usize,
) -> Option<i64> {
    let layout = coordinate_layout(tri);
    let skeleton = compute_skeleton(tri);
    let chi = piece_euler_characteristic(&layout, &skeleton, v, tubes);
    if chi.is_integer() {
        chi.to_integer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn double2() -> (Triangulation, CoordinateLayout) {
        let tri = Triangulation::builtin("double2").unwrap();
        let layout = coordinate_layout(&tri);
        (tri, layout)
    }

    fn vector(layout: &CoordinateLayout, entries: &[(usize, PieceKind, u64)]) -> Vec<u64> {
        let mut v = vec![0; layout.dimension()];
        for &(t, k, x) in entries {
            v[layout.index(t, k)] = x;
        }
        v
    }

    fn link(layout: &CoordinateLayout, vertex: u8, copies: u64) -> Vec<(usize, PieceKind, u64)> {
        // in double2 the identity gluings keep corner labels
        let _ = layout;
        vec![
            (0, PieceKind::Triangle(vertex), copies),
            (1, PieceKind::Triangle(vertex), copies),
        ]
    }

    #[test]
    fn vertex_link_is_a_sphere() {
        let (tri, layout) = double2();
        for vtx in 0..4 {
            let v = vector(&layout, &link(&layout, vtx, 1));
            let c = reconstruct(&tri, &v, &[]).unwrap();
            assert_eq!(
                (c.vertex_count(), c.edges().len(), c.faces().len()),
                (3, 3, 2)
            );
            let r = report(&c).unwrap();
            assert_eq!(r.euler_characteristic, 2);
            assert_eq!(r.component_count(), 1);
            assert!(r.components[0].sphere);
            assert_eq!(r.class, SurfaceClass::Normal);
        }
    }

    #[test]
    fn empty_surface() {
        let (tri, layout) = double2();
        let c = reconstruct(&tri, &vec![0; layout.dimension()], &[]).unwrap();
        let r = report(&c).unwrap();
        assert_eq!(r.euler_characteristic, 0);
        assert_eq!(r.component_count(), 0);
    }

    #[test]
    fn two_links_are_two_spheres() {
        let (tri, layout) = double2();
        let mut e = link(&layout, 0, 1);
        e.extend(link(&layout, 3, 1));
        let r = report(&reconstruct(&tri, &vector(&layout, &e), &[]).unwrap()).unwrap();
        assert_eq!(r.component_count(), 2);
        assert_eq!(r.euler_characteristic, 4);
    }

    #[test]
    fn tube_between_links_is_a_sphere() {
        let (tri, layout) = double2();
        let mut e = link(&layout, 0, 1);
        e.extend(link(&layout, 1, 1));
        let v = vector(&layout, &e);
        // edge 0-1 of tetrahedron 0 carries the vertex-0 triangle, then the vertex-1 one
        let tube = TubeDecoration::new(0, 0, 0, 1);
        let r = report(&reconstruct(&tri, &v, &[tube]).unwrap()).unwrap();
        assert_eq!(r.euler_characteristic, 2);
        assert_eq!(r.component_count(), 1);
        assert!(r.components[0].orientable);
        assert_eq!(r.class, SurfaceClass::AlmostNormalTube);
    }

    #[test]
    fn tube_between_parallel_copies() {
        let (tri, layout) = double2();
        let v = vector(&layout, &link(&layout, 2, 2));
        let tube = TubeDecoration::new(1, edge_index(0, 2), 1, 0);
        let r = report(&reconstruct(&tri, &v, &[tube]).unwrap()).unwrap();
        assert_eq!(r.components.len(), 1);
        assert!(r.components[0].sphere);
    }

    #[test]
    fn octagon_self_tube_gives_torus() {
        // a closed one-tetrahedron triangulation carrying an octagon sphere
        let tri = Triangulation::parse("tet 0: 0:2310 0:0321 0:3201 0:0321").unwrap();
        let layout = coordinate_layout(&tri);
        let found = crate::enumerate_vertex_surfaces(
            &tri,
            crate::AdmissibilityMode::AlmostNormal,
            &Default::default(),
        )
        .unwrap();
        let sphere = found
            .iter()
            .find(|s| s.class == SurfaceClass::AlmostNormalOct)
            .unwrap()
            .coordinates();
        assert_eq!(
            report(&reconstruct(&tri, &sphere, &[]).unwrap())
                .unwrap()
                .euler_characteristic,
            2
        );
        let stack = TetStack::build(layout.catalog(), 0, &sphere).unwrap();
        let selfs: Vec<TubeDecoration> = crate::stacking::tube_candidates(&stack)
            .into_iter()
            .filter(|(_, key)| key.self_edge.is_some())
            .map(|(t, _)| t)
            .collect();
        assert!(!selfs.is_empty());
        for tube in selfs {
            let r = report(&reconstruct(&tri, &sphere, &[tube]).unwrap()).unwrap();
            assert_eq!(r.euler_characteristic, 0);
            assert!(r.components[0].orientable);
            assert_eq!(
                r.class,
                SurfaceClass::TwoNormal(TwoNormalKind::OctagonAndTube)
            );
        }
    }

    #[test]
    fn class_labels_round_trip() {
        for c in SurfaceClass::ALL {
            assert_eq!(c.label().parse::<SurfaceClass>().unwrap(), c);
        }
    }

    #[test]
    fn unmatched_vector_is_rejected() {
        let (tri, layout) = double2();
        let v = vector(&layout, &[(0, PieceKind::Quad(0), 1)]);
        assert!(matches!(
            reconstruct(&tri, &v, &[]),
            Err(SurfaceError::Inadmissible(Violation::Unmatched))
        ));
    }
}
