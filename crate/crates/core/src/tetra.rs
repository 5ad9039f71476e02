//! Fixed combinatorics of a single tetrahedron.
//!
//! Vertices are labelled `0..4`. Face `f` is the face opposite vertex `f`.
//! Edges are numbered lexicographically by their endpoint pair, which makes
//! edge `e` and edge `5 - e` opposite; the three opposite pairs are indexed
//! by `min(e, 5 - e)`.

/// Endpoints of the six edges, lower vertex first.
pub const EDGE_VERTICES: [[usize; 2]; 6] = [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]];

/// Index of the edge joining `a` and `b`.
///
/// Panics if `a == b` or either label is out of range.
pub fn edge_index(a: usize, b: usize) -> usize {
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    match (lo, hi) {
        (0, 1) => 0,
        (0, 2) => 1,
        (0, 3) => 2,
        (1, 2) => 3,
        (1, 3) => 4,
        (2, 3) => 5,
        _ => panic!("no tetrahedron edge joins {a} and {b}"),
    }
}

pub fn opposite_edge(edge: usize) -> usize {
    5 - edge
}

/// Index `0..3` of the opposite-edge pair containing `edge`.
pub fn edge_pair(edge: usize) -> usize {
    edge.min(5 - edge)
}

/// The three vertices of face `face`, ascending.
pub fn face_vertices(face: usize) -> [usize; 3] {
    let mut out = [0; 3];
    let mut k = 0;
    for v in 0..4 {
        if v != face {
            out[k] = v;
            k += 1;
        }
    }
    out
}

/// The two faces containing `edge`, ascending.
pub fn faces_of_edge(edge: usize) -> [usize; 2] {
    let [a, b] = EDGE_VERTICES[edge];
    let mut out = [0; 2];
    let mut k = 0;
    for f in 0..4 {
        if f != a && f != b {
            out[k] = f;
            k += 1;
        }
    }
    out
}

/// The vertex of `face` not on `edge`. The edge must lie in the face.
pub fn apex(face: usize, edge: usize) -> usize {
    let [a, b] = EDGE_VERTICES[edge];
    debug_assert!(face != a && face != b);
    6 - a - b - face
}

/// Sign of the permutation `[a, b, c, d]` of `0..4`.
pub fn orientation_sign(p: [usize; 4]) -> i8 {
    let mut sign = 1;
    for i in 0..4 {
        for j in (i + 1)..4 {
            if p[i] > p[j] {
                sign = -sign;
            }
        }
    }
    sign
}
