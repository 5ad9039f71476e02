//! Vertex and edge identification classes of a triangulation.

use serde::Serialize;

use crate::tetra::{edge_index, EDGE_VERTICES};
use crate::triangulation::Triangulation;

/// One appearance of an edge class inside a tetrahedron.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeEmbedding {
    pub tet: usize,
    pub edge: usize,
    /// `+1` when the tetrahedron edge, read from its lower to its upper vertex
    /// label, runs in the direction of the class; `-1` otherwise.
    pub orientation: i8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeClass {
    /// Embeddings in link order: consecutive entries share a face.
    pub embeddings: Vec<EdgeEmbedding>,
    /// The link walk ended at an unglued face.
    pub boundary: bool,
    /// The edge is identified with itself in reverse.
    pub reversed: bool,
}

impl EdgeClass {
    pub fn degree(&self) -> usize {
        self.embeddings.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexClass {
    /// `(tet, corner)` pairs, sorted.
    pub corners: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Skeleton {
    pub edges: Vec<EdgeClass>,
    pub vertices: Vec<VertexClass>,
    pub face_count: usize,
    pub tet_count: usize,
    edge_of: Vec<[usize; 6]>,
    vertex_of: Vec<[usize; 4]>,
}

impl Skeleton {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// `V - E + F - T`.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.face_count as i64
            - self.tet_count as i64
    }

    pub fn edge_class_of(&self, tet: usize, edge: usize) -> usize {
        self.edge_of[tet][edge]
    }

    pub fn vertex_class_of(&self, tet: usize, corner: usize) -> usize {
        self.vertex_of[tet][corner]
    }

    pub fn has_reversed_edge(&self) -> bool {
        self.edges.iter().any(|e| e.reversed)
    }
}

/// An edge embedding while walking the link: the edge runs `v[0] -> v[1]`;
/// the walk enters through the face opposite `v[2]` and leaves through the
/// face opposite `v[3]`.
#[derive(Clone, Copy)]
struct Walker {
    tet: usize,
    v: [usize; 4],
}

impl Walker {
    fn embedding(&self) -> EdgeEmbedding {
        EdgeEmbedding {
            tet: self.tet,
            edge: edge_index(self.v[0], self.v[1]),
            orientation: if self.v[0] < self.v[1] { 1 } else { -1 },
        }
    }

    fn step_through(&self, tri: &Triangulation, face: usize) -> Option<Walker> {
        let g = tri.gluing(self.tet, face)?;
        let p = g.perm;
        Some(Walker {
            tet: g.tet,
            v: [
                p.apply(self.v[0]),
                p.apply(self.v[1]),
                p.apply(self.v[3]),
                p.apply(self.v[2]),
            ],
        })
    }

    fn forward(&self, tri: &Triangulation) -> Option<Walker> {
        self.step_through(tri, self.v[3])
    }

    fn backward(&self, tri: &Triangulation) -> Option<Walker> {
        self.step_through(tri, self.v[2])
    }
}

pub fn compute_skeleton(tri: &Triangulation) -> Skeleton {
    let n = tri.tet_count();
    const UNSET: usize = usize::MAX;

    let mut edge_of = vec![[UNSET; 6]; n];
    let mut edges = Vec::new();
    for tet in 0..n {
        for edge in 0..6 {
            if edge_of[tet][edge] != UNSET {
                continue;
            }
            let class = edges.len();
            let [a, b] = EDGE_VERTICES[edge];
            let [c, d] = EDGE_VERTICES[5 - edge];
            let start = Walker {
                tet,
                v: [a, b, c, d],
            };
            let mut forward = vec![start.embedding()];
            edge_of[tet][edge] = class;
            let mut reversed = false;
            let mut boundary = false;
            let mut cur = start;
            loop {
                match cur.forward(tri) {
                    None => {
                        boundary = true;
                        break;
                    }
                    Some(next) => {
                        let emb = next.embedding();
                        if edge_of[emb.tet][emb.edge] == class {
                            // Back at an embedding of this class: either the
                            // start (closed link) or a reversed self-identification.
                            if emb.tet != tet || emb.edge != edge || next.v[0] != a {
                                reversed = true;
                            }
                            break;
                        }
                        edge_of[emb.tet][emb.edge] = class;
                        forward.push(emb);
                        cur = next;
                    }
                }
            }
            let mut backward = Vec::new();
            if boundary {
                let mut cur = start;
                while let Some(prev) = cur.backward(tri) {
                    let emb = prev.embedding();
                    if edge_of[emb.tet][emb.edge] == class {
                        reversed = true;
                        break;
                    }
                    edge_of[emb.tet][emb.edge] = class;
                    backward.push(emb);
                    cur = prev;
                }
            }
            backward.reverse();
            backward.extend(forward);
            // Class direction is that of the first listed embedding.
            if backward[0].orientation < 0 {
                for emb in &mut backward {
                    emb.orientation = -emb.orientation;
                }
            }
            edges.push(EdgeClass {
                embeddings: backward,
                boundary,
                reversed,
            });
        }
    }

    let mut parent: Vec<usize> = (0..4 * n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut face_count = 0;
    for tet in 0..n {
        for face in 0..4 {
            match tri.gluing(tet, face) {
                None => face_count += 1,
                Some(g) => {
                    if (tet, face) < (g.tet, g.perm.apply(face)) {
                        face_count += 1;
                    }
                    for v in (0..4).filter(|&v| v != face) {
                        let x = find(&mut parent, 4 * tet + v);
                        let y = find(&mut parent, 4 * g.tet + g.perm.apply(v));
                        if x != y {
                            parent[x.max(y)] = x.min(y);
                        }
                    }
                }
            }
        }
    }
    let mut vertex_of = vec![[UNSET; 4]; n];
    let mut vertices: Vec<VertexClass> = Vec::new();
    let mut class_of_root = vec![UNSET; 4 * n];
    for tet in 0..n {
        for corner in 0..4 {
            let root = find(&mut parent, 4 * tet + corner);
            if class_of_root[root] == UNSET {
                class_of_root[root] = vertices.len();
                vertices.push(VertexClass {
                    corners: Vec::new(),
                });
            }
            let class = class_of_root[root];
            vertex_of[tet][corner] = class;
            vertices[class].corners.push((tet, corner));
        }
    }

    Skeleton {
        edges,
        vertices,
        face_count,
        tet_count: n,
        edge_of,
        vertex_of,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(s: &Skeleton) -> (usize, usize, usize, usize) {
        (s.vertex_count(), s.edge_count(), s.face_count, s.tet_count)
    }

    #[test]
    fn double2_counts() {
        let s = compute_skeleton(&Triangulation::builtin("double2").unwrap());
        assert_eq!(counts(&s), (4, 6, 4, 2));
        assert_eq!(s.euler_characteristic(), 0);
        for e in &s.edges {
            assert_eq!(e.degree(), 2);
            assert!(!e.boundary && !e.reversed);
        }
    }

    #[test]
    fn single_tetrahedron_counts() {
        let s = compute_skeleton(&Triangulation::builtin("single").unwrap());
        assert_eq!(counts(&s), (4, 6, 4, 1));
        assert!(s.edges.iter().all(|e| e.boundary && e.degree() == 1));
    }

    #[test]
    fn one_tet_closed_manifold() {
        let tri = Triangulation::parse("tet 0: 0:2310 0:0321 0:3201 0:0321").unwrap();
        let s = compute_skeleton(&tri);
        assert_eq!(s.face_count, 2);
        assert_eq!(s.euler_characteristic(), 0);
        assert_eq!(s.edges.iter().map(EdgeClass::degree).sum::<usize>(), 6);
        assert!(!s.has_reversed_edge());
        for (class, e) in s.edges.iter().enumerate() {
            for emb in &e.embeddings {
                assert_eq!(s.edge_class_of(emb.tet, emb.edge), class);
            }
        }
    }

    #[test]
    fn link_order_shares_faces() {
        let tri = Triangulation::parse("tet 0: 0:2310 0:0321 0:3201 0:0321").unwrap();
        let s = compute_skeleton(&tri);
        for e in &s.edges {
            let k = e.embeddings.len();
            for i in 0..k {
                let here = e.embeddings[i];
                let next = e.embeddings[(i + 1) % k];
                // some face of `here` containing its edge is glued to a face of `next`
                let shares = crate::tetra::faces_of_edge(here.edge).iter().any(|&f| {
                    let g = tri.gluing(here.tet, f).unwrap();
                    let [a, b] = EDGE_VERTICES[here.edge];
                    g.tet == next.tet && edge_index(g.perm.apply(a), g.perm.apply(b)) == next.edge
                });
                assert!(shares);
            }
        }
    }
}
