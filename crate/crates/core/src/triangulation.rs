//! Gluing tables for triangulated 3-manifolds.
//!
//! The text format is line oriented, one line per tetrahedron:
//!
//! ```text
//! # the two-tetrahedron double of a 3-simplex
//! tet 0: 1:0123 1:0123 1:0123 1:0123
//! tet 1: 0:0123 0:0123 0:0123 0:0123
//! ```
//!
//! Entry `k` describes face `k` (the face opposite vertex `k`). It is either
//! `-` for an unglued face or `<tet>:<perm>`, where the permutation sends the
//! vertex labels of this tetrahedron to those of the target.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::perm::Permutation4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gluing {
    pub tet: usize,
    pub perm: Permutation4,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TriangulationError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: tetrahedron {tet} references tetrahedron {target}, but only {count} are defined")]
    DanglingTetrahedron {
        line: usize,
        tet: usize,
        target: usize,
        count: usize,
    },
    #[error("line {line}: non-involutive gluing at tetrahedron {tet} face {face}")]
    NonInvolutive {
        line: usize,
        tet: usize,
        face: usize,
    },
    #[error("line {line}: tetrahedron {tet} face {face} is glued to itself")]
    SelfGluedFace {
        line: usize,
        tet: usize,
        face: usize,
    },
    #[error("triangulation has no tetrahedra")]
    Empty,
}

/// A face-pairing of `tet_count` tetrahedra.
///
/// Always validated: every gluing is matched by its inverse on the partner
/// face, and no face is paired with itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    gluings: Vec<[Option<Gluing>; 4]>,
}

impl Triangulation {
    pub fn new(gluings: Vec<[Option<Gluing>; 4]>) -> Result<Self, TriangulationError> {
        // Lines are numbered as in the canonical serialization.
        validate(&gluings, |tet| tet + 1)?;
        Ok(Triangulation { gluings })
    }

    pub fn parse(text: &str) -> Result<Self, TriangulationError> {
        let mut rows: Vec<(usize, usize, [Option<Gluing>; 4])> = Vec::new();
        let mut lines_of: HashMap<usize, usize> = HashMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let malformed = |message: String| TriangulationError::Malformed { line, message };
            let rest = content
                .strip_prefix("tet")
                .ok_or_else(|| malformed(format!("expected `tet <i>: ...`, found `{content}`")))?;
            let (index, entries) = rest
                .split_once(':')
                .ok_or_else(|| malformed("missing `:` after tetrahedron index".into()))?;
            let tet: usize = index
                .trim()
                .parse()
                .map_err(|_| malformed(format!("bad tetrahedron index `{}`", index.trim())))?;
            if lines_of.insert(tet, line).is_some() {
                return Err(malformed(format!("tetrahedron {tet} defined twice")));
            }
            let tokens: Vec<&str> = entries.split_whitespace().collect();
            if tokens.len() != 4 {
                return Err(malformed(format!(
                    "expected 4 face entries, found {}",
                    tokens.len()
                )));
            }
            let mut faces = [None; 4];
            for (face, token) in tokens.iter().enumerate() {
                if *token == "-" {
                    continue;
                }
                let (target, perm) = token
                    .split_once(':')
                    .ok_or_else(|| malformed(format!("bad face entry `{token}`")))?;
                let target: usize = target
                    .parse()
                    .map_err(|_| malformed(format!("bad target tetrahedron in `{token}`")))?;
                let perm: Permutation4 = perm.parse().map_err(|e| malformed(format!("{e}")))?;
                faces[face] = Some(Gluing { tet: target, perm });
            }
            rows.push((tet, line, faces));
        }
        if rows.is_empty() {
            return Err(TriangulationError::Empty);
        }
        let count = rows.len();
        let mut gluings = vec![[None; 4]; count];
        for (tet, line, faces) in rows {
            if tet >= count {
                return Err(TriangulationError::Malformed {
                    line,
                    message: format!("tetrahedron indices must be 0..{count}, found {tet}"),
                });
            }
            for g in faces.iter().flatten() {
                if g.tet >= count {
                    return Err(TriangulationError::DanglingTetrahedron {
                        line,
                        tet,
                        target: g.tet,
                        count,
                    });
                }
            }
            gluings[tet] = faces;
        }
        validate(&gluings, |tet| lines_of[&tet])?;
        Ok(Triangulation { gluings })
    }

    /// Built-in triangulations: `single` (one unglued tetrahedron) and
    /// `double2` (two tetrahedra glued face-to-face by the identity).
    pub fn builtin(name: &str) -> Option<Triangulation> {
        let id = Permutation4::IDENTITY;
        match name {
            "single" => Some(Triangulation {
                gluings: vec![[None; 4]],
            }),
            "double2" => Some(Triangulation {
                gluings: vec![
                    [Some(Gluing { tet: 1, perm: id }); 4],
                    [Some(Gluing { tet: 0, perm: id }); 4],
                ],
            }),
            _ => None,
        }
    }

    pub const BUILTIN_NAMES: [&'static str; 2] = ["single", "double2"];

    pub fn tet_count(&self) -> usize {
        self.gluings.len()
    }

    pub fn gluing(&self, tet: usize, face: usize) -> Option<Gluing> {
        self.gluings[tet][face]
    }

    pub fn is_closed(&self) -> bool {
        self.gluings
            .iter()
            .all(|faces| faces.iter().all(Option::is_some))
    }

    /// Glued face pairs, each listed once from its lexicographically smaller side.
    pub fn face_pairs(&self) -> impl Iterator<Item = (usize, usize, Gluing)> + '_ {
        self.gluings.iter().enumerate().flat_map(|(tet, faces)| {
            faces.iter().enumerate().filter_map(move |(face, g)| {
                let g = (*g)?;
                ((tet, face) < (g.tet, g.perm.apply(face))).then_some((tet, face, g))
            })
        })
    }
}

fn validate(
    gluings: &[[Option<Gluing>; 4]],
    line_of: impl Fn(usize) -> usize,
) -> Result<(), TriangulationError> {
    if gluings.is_empty() {
        return Err(TriangulationError::Empty);
    }
    for (tet, faces) in gluings.iter().enumerate() {
        for (face, g) in faces.iter().enumerate() {
            let Some(g) = g else { continue };
            let line = line_of(tet);
            if g.tet >= gluings.len() {
                return Err(TriangulationError::DanglingTetrahedron {
                    line,
                    tet,
                    target: g.tet,
                    count: gluings.len(),
                });
            }
            let partner_face = g.perm.apply(face);
            if g.tet == tet && partner_face == face {
                return Err(TriangulationError::SelfGluedFace { line, tet, face });
            }
            let back = gluings[g.tet][partner_face];
            if back
                != Some(Gluing {
                    tet,
                    perm: g.perm.inverse(),
                })
            {
                return Err(TriangulationError::NonInvolutive { line, tet, face });
            }
        }
    }
    Ok(())
}

impl fmt::Display for Triangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (tet, faces) in self.gluings.iter().enumerate() {
            write!(f, "tet {tet}:")?;
            for g in faces {
                match g {
                    Some(g) => write!(f, " {}:{}", g.tet, g.perm)?,
                    None => write!(f, " -")?,
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_double() {
        let text =
            "# double\ntet 0: 1:0123 1:0123 1:0123 1:0123\ntet 1: 0:0123 0:0123 0:0123 0:0123\n";
        let tri = Triangulation::parse(text).unwrap();
        assert_eq!(tri.tet_count(), 2);
        assert!(tri.is_closed());
        assert_eq!(tri, Triangulation::builtin("double2").unwrap());
        assert_eq!(tri.face_pairs().count(), 4);
    }

    #[test]
    fn single_unglued_tetrahedron_is_not_closed() {
        let tri = Triangulation::parse("tet 0: - - - -").unwrap();
        assert!(!tri.is_closed());
        assert_eq!(tri.tet_count(), 1);
    }

    #[test]
    fn rejects_non_involutive() {
        let text = "tet 0: 1:1023 1:0123 1:0123 1:0123\ntet 1: 0:0123 0:0123 0:0123 0:0123\n";
        match Triangulation::parse(text) {
            Err(TriangulationError::NonInvolutive { line, .. }) => assert_eq!(line, 1),
            other => panic!("unexpected {other:?}"),
        }
        let err = Triangulation::parse(text).unwrap_err();
        assert!(err.to_string().contains("non-involutive gluing"));
    }

    #[test]
    fn rejects_self_glued_face() {
        let err = Triangulation::parse("tet 0: 0:0123 - - -").unwrap_err();
        assert!(matches!(
            err,
            TriangulationError::SelfGluedFace {
                tet: 0,
                face: 0,
                ..
            }
        ));
    }

    #[test]
    fn rejects_dangling_and_malformed() {
        let err = Triangulation::parse("tet 0: 3:0123 - - -").unwrap_err();
        assert!(matches!(
            err,
            TriangulationError::DanglingTetrahedron { target: 3, .. }
        ));
        let err = Triangulation::parse("\n\ntet 0: 1:0123 -").unwrap_err();
        assert!(matches!(err, TriangulationError::Malformed { line: 3, .. }));
        assert!(Triangulation::parse("tetra 0: - - - -").is_err());
        assert!(Triangulation::parse("tet 0: - - - 0:0124").is_err());
        assert!(Triangulation::parse("tet 0: - - - -\ntet 0: - - - -").is_err());
        assert_eq!(
            Triangulation::parse("# nothing").unwrap_err(),
            TriangulationError::Empty
        );
    }

    #[test]
    fn display_round_trips() {
        let text = "tet 0: 0:2310 0:0321 0:3201 0:0321\n";
        let tri = Triangulation::parse(text).unwrap();
        assert_eq!(tri.to_string(), text);
        assert_eq!(Triangulation::parse(&tri.to_string()).unwrap(), tri);
    }
}
