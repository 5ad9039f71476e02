//! Vertex surfaces of each admissibility mode.
//!
//! The admissible region is a union of cones, one per choice of quad family
//! (and exceptional piece) in every tetrahedron. Each cone is enumerated on
//! its own with [`extreme_rays`]; the results are filtered by
//! [`is_admissible`], decorated with tubes where the mode asks for them, then
//! merged in a fixed order.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cone::{extreme_rays, ConeError, Ray};
use crate::matching::{
    build_matching_system, is_admissible, AdmissibilityMode, AdmissibilityOptions,
    ExceptionalPattern, MatchingError, MatchingSystem,
};
use crate::pieces::{coordinate_layout, CoordinateLayout, PieceKind, TubeDecoration};
use crate::stacking::{analyze_tubes, nested_candidates, tube_candidates, TetStack, TubeKey};
use crate::surface::{SurfaceClass, TwoNormalKind};
use crate::triangulation::Triangulation;

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "TWONORMAL_THREADS";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerationError {
    #[error(transparent)]
    Matching(#[from] MatchingError),
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error("a vertex surface has a coordinate that does not fit in 64 bits")]
    Overflow,
    #[error("could not start worker threads: {0}")]
    Threads(String),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EnumerationOptions {
    pub allow_nested_tubes: bool,
    /// Worker thread cap; falls back to `TWONORMAL_THREADS`, then to rayon's default.
    pub threads: Option<usize>,
}

impl EnumerationOptions {
    fn admissibility(&self) -> AdmissibilityOptions {
        AdmissibilityOptions {
            allow_nested_tubes: self.allow_nested_tubes,
        }
    }
}

/// Which non-triangle column a tetrahedron may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum TetSelection {
    Quad(u8),
    /// An octagon or 12-gon, with a quad family if one is compatible with it.
    Exceptional {
        piece: PieceKind,
        quad: Option<u8>,
    },
}

/// One cone of the admissible region: a selection for every tetrahedron.
/// Triangle columns are always allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TypeRestriction {
    pub tets: Vec<TetSelection>,
}

impl TypeRestriction {
    pub fn allowed_columns(&self, layout: &CoordinateLayout) -> Vec<usize> {
        let mut cols = Vec::new();
        for (tet, sel) in self.tets.iter().enumerate() {
            for v in 0..4 {
                cols.push(layout.index(tet, PieceKind::Triangle(v)));
            }
            match *sel {
                TetSelection::Quad(q) => cols.push(layout.index(tet, PieceKind::Quad(q))),
                TetSelection::Exceptional { piece, quad } => {
                    cols.push(layout.index(tet, piece));
                    if let Some(q) = quad {
                        cols.push(layout.index(tet, PieceKind::Quad(q)));
                    }
                }
            }
        }
        cols.sort_unstable();
        cols
    }

    pub fn exceptional_count(&self) -> usize {
        self.tets
            .iter()
            .filter(|s| matches!(s, TetSelection::Exceptional { .. }))
            .count()
    }
}

fn exceptional_selections(layout: &CoordinateLayout, piece: PieceKind) -> Vec<TetSelection> {
    let mut out = vec![TetSelection::Exceptional { piece, quad: None }];
    for q in 0..3 {
        if layout.catalog().compatible(piece, PieceKind::Quad(q)) {
            out.push(TetSelection::Exceptional {
                piece,
                quad: Some(q),
            });
        }
    }
    out
}

/// All restrictions with exceptional selections in exactly the tetrahedra
/// `special`, choosing pieces from `pieces`; other tetrahedra pick a quad.
fn restrictions_with(
    layout: &CoordinateLayout,
    special: &[usize],
    pieces: &[PieceKind],
) -> Vec<TypeRestriction> {
    let mut options: Vec<Vec<TetSelection>> = Vec::new();
    for tet in 0..layout.tet_count() {
        if special.contains(&tet) {
            options.push(
                pieces
                    .iter()
                    .flat_map(|&p| exceptional_selections(layout, p))
                    .collect(),
            );
        } else {
            options.push((0..3).map(TetSelection::Quad).collect());
        }
    }
    let mut out = vec![TypeRestriction { tets: Vec::new() }];
    for choices in options {
        out = out
            .into_iter()
            .flat_map(|r| {
                choices.iter().map(move |&c| {
                    let mut tets = r.tets.clone();
                    tets.push(c);
                    TypeRestriction { tets }
                })
            })
            .collect();
    }
    out
}

fn octagons() -> Vec<PieceKind> {
    (0..3).map(PieceKind::Octagon).collect()
}

/// Cones whose extreme rays carry the disk pieces of a mode: quads only for
/// normal surfaces, one octagon tetrahedron for almost normal ones, and two
/// octagon tetrahedra or one 12-gon tetrahedron for 2-normal ones. Tube
/// surfaces reuse the normal and octagon cones.
pub fn type_restrictions(
    layout: &CoordinateLayout,
    mode: AdmissibilityMode,
) -> Vec<TypeRestriction> {
    let t = layout.tet_count();
    match mode {
        AdmissibilityMode::Normal => restrictions_with(layout, &[], &[]),
        AdmissibilityMode::AlmostNormal => (0..t)
            .flat_map(|i| restrictions_with(layout, &[i], &octagons()))
            .collect(),
        AdmissibilityMode::TwoNormal => {
            let mut out = Vec::new();
            for i in 0..t {
                for j in i + 1..t {
                    out.extend(restrictions_with(layout, &[i, j], &octagons()));
                }
            }
            let dodecagons: Vec<PieceKind> = (0..layout.catalog().dodecagon_count() as u8)
                .map(PieceKind::Dodecagon)
                .collect();
            for i in 0..t {
                out.extend(restrictions_with(layout, &[i], &dodecagons));
            }
            out
        }
    }
}

/// An enumerated surface: an extreme ray of one cone plus tube decorations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSurface {
    pub ray: Ray,
    pub pattern: ExceptionalPattern,
    pub class: SurfaceClass,
}

impl VertexSurface {
    pub fn tubes(&self) -> &[TubeDecoration] {
        &self.pattern.tubes
    }

    pub fn coordinates(&self) -> Vec<u64> {
        self.ray.to_u64().expect("checked at enumeration")
    }
}

struct Context<'a> {
    layout: CoordinateLayout,
    system: MatchingSystem,
    options: &'a EnumerationOptions,
}

impl Context<'_> {
    /// Extreme rays of every restriction, in restriction order, kept when
    /// admissible with class `want`.
    fn rays(
        &self,
        restrictions: &[TypeRestriction],
        mode: AdmissibilityMode,
        want: SurfaceClass,
    ) -> Result<Vec<(Ray, Vec<u64>)>, EnumerationError> {
        let per: Vec<Result<Vec<Ray>, ConeError>> = restrictions
            .par_iter()
            .map(|r| {
                let cols = r.allowed_columns(&self.layout);
                extreme_rays(self.system.matrix(), self.layout.dimension(), Some(&cols))
            })
            .collect();
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for rays in per {
            for ray in rays? {
                if !seen.insert(ray.clone()) {
                    continue;
                }
                let v = ray.to_u64().ok_or(EnumerationError::Overflow)?;
                let admissible =
                    is_admissible(&self.layout, &v, &[], mode, &self.options.admissibility());
                if admissible == Ok(want) {
                    out.push((ray, v));
                }
            }
        }
        Ok(out)
    }

    fn stacks(&self, v: &[u64]) -> HashMap<usize, TetStack> {
        (0..self.layout.tet_count())
            .map(|t| {
                let s = TetStack::build(self.layout.catalog(), t, self.layout.tet_block(v, t))
                    .expect("admissible vectors stack");
                (t, s)
            })
            .collect()
    }

    fn surface(
        &self,
        ray: &Ray,
        v: &[u64],
        tubes: Vec<TubeDecoration>,
        class: SurfaceClass,
    ) -> VertexSurface {
        let mut pattern = ExceptionalPattern::from_vector(&self.layout, v, &tubes);
        pattern.tubes.sort();
        VertexSurface {
            ray: ray.clone(),
            pattern,
            class,
        }
    }

    /// One tube on each ray, wherever a valid tube can go.
    fn single_tubes(
        &self,
        rays: &[(Ray, Vec<u64>)],
        mode: AdmissibilityMode,
        want: SurfaceClass,
    ) -> Vec<VertexSurface> {
        let per: Vec<Vec<VertexSurface>> = rays
            .par_iter()
            .map(|(ray, v)| {
                let stacks = self.stacks(v);
                let mut out = Vec::new();
                for t in 0..self.layout.tet_count() {
                    for (tube, _) in tube_candidates(&stacks[&t]) {
                        let ok = is_admissible(
                            &self.layout,
                            v,
                            &[tube],
                            mode,
                            &self.options.admissibility(),
                        );
                        if ok == Ok(want) {
                            out.push(self.surface(ray, v, vec![tube], want));
                        }
                    }
                }
                out
            })
            .collect();
        per.into_iter().flatten().collect()
    }

    /// Two tubes on each normal ray.
    fn tube_pairs(&self, rays: &[(Ray, Vec<u64>)]) -> Vec<VertexSurface> {
        let want = SurfaceClass::TwoNormal(TwoNormalKind::TwoTubes);
        let allow_nested = self.options.allow_nested_tubes;
        let per: Vec<Vec<VertexSurface>> = rays
            .par_iter()
            .map(|(ray, v)| {
                let stacks = self.stacks(v);
                let mut singles: Vec<(TubeDecoration, TubeKey)> = Vec::new();
                let mut pairs: Vec<[TubeDecoration; 2]> = Vec::new();
                for t in 0..self.layout.tet_count() {
                    singles.extend(tube_candidates(&stacks[&t]));
                    if allow_nested {
                        pairs.extend(nested_candidates(&stacks[&t]));
                    }
                }
                for i in 0..singles.len() {
                    for j in i + 1..singles.len() {
                        pairs.push([singles[i].0, singles[j].0]);
                    }
                }
                let mut seen = HashSet::new();
                let mut out = Vec::new();
                for pair in pairs {
                    let Ok(ends) = analyze_tubes(&stacks, &pair, allow_nested) else {
                        continue;
                    };
                    let nested = pair.iter().any(|t| !t.is_adjacent());
                    let mut keys = [
                        ends[0].key(&stacks[&pair[0].tet]),
                        ends[1].key(&stacks[&pair[1].tet]),
                    ];
                    keys.sort();
                    if !seen.insert((keys, nested)) {
                        continue;
                    }
                    let ok = is_admissible(
                        &self.layout,
                        v,
                        &pair,
                        AdmissibilityMode::TwoNormal,
                        &self.options.admissibility(),
                    );
                    if ok == Ok(want) {
                        out.push(self.surface(ray, v, pair.to_vec(), want));
                    }
                }
                out
            })
            .collect();
        per.into_iter().flatten().collect()
    }
}

fn with_threads<T: Send>(
    threads: Option<usize>,
    f: impl FnOnce() -> T + Send,
) -> Result<T, EnumerationError> {
    let cap = threads.or_else(|| {
        std::env::var(THREADS_ENV)
            .ok()
            .and_then(|s| s.trim().parse().ok())
    });
    match cap {
        Some(n) if n > 0 => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| EnumerationError::Threads(e.to_string()))?;
            Ok(pool.install(f))
        }
        _ => Ok(f()),
    }
}

/// Every vertex surface of `mode` on a closed triangulation, sorted by
/// coordinate vector and then by tubes.
pub fn enumerate_vertex_surfaces(
    tri: &Triangulation,
    mode: AdmissibilityMode,
    options: &EnumerationOptions,
) -> Result<Vec<VertexSurface>, EnumerationError> {
    let layout = coordinate_layout(tri);
    let system = build_matching_system(tri, &layout)?;
    let ctx = Context {
        layout,
        system,
        options,
    };
    let mut out = with_threads(
        options.threads,
        || -> Result<Vec<VertexSurface>, EnumerationError> {
            let normal = || {
                ctx.rays(
                    &type_restrictions(&ctx.layout, AdmissibilityMode::Normal),
                    AdmissibilityMode::Normal,
                    SurfaceClass::Normal,
                )
            };
            let octagon = || {
                ctx.rays(
                    &type_restrictions(&ctx.layout, AdmissibilityMode::AlmostNormal),
                    AdmissibilityMode::AlmostNormal,
                    SurfaceClass::AlmostNormalOct,
                )
            };
            let as_surfaces =
                |rays: Vec<(Ray, Vec<u64>)>, class: SurfaceClass| -> Vec<VertexSurface> {
                    rays.iter()
                        .map(|(r, v)| ctx.surface(r, v, Vec::new(), class))
                        .collect()
                };
            let mut out = Vec::new();
            match mode {
                AdmissibilityMode::Normal => {
                    out.extend(as_surfaces(normal()?, SurfaceClass::Normal))
                }
                AdmissibilityMode::AlmostNormal => {
                    out.extend(as_surfaces(octagon()?, SurfaceClass::AlmostNormalOct));
                    out.extend(ctx.single_tubes(&normal()?, mode, SurfaceClass::AlmostNormalTube));
                }
                AdmissibilityMode::TwoNormal => {
                    let restrictions = type_restrictions(&ctx.layout, mode);
                    for kind in [TwoNormalKind::TwoOctagons, TwoNormalKind::Dodecagon] {
                        let class = SurfaceClass::TwoNormal(kind);
                        out.extend(as_surfaces(ctx.rays(&restrictions, mode, class)?, class));
                    }
                    out.extend(ctx.tube_pairs(&normal()?));
                    out.extend(ctx.single_tubes(
                        &octagon()?,
                        mode,
                        SurfaceClass::TwoNormal(TwoNormalKind::OctagonAndTube),
                    ));
                }
            }
            Ok(out)
        },
    )??;
    out.sort_by(|a, b| (&a.ray, &a.pattern.tubes).cmp(&(&b.ray, &b.pattern.tubes)));
    out.dedup_by(|a, b| a.ray == b.ray && a.pattern.tubes == b.pattern.tubes);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn restriction_counts() {
        let tri = Triangulation::builtin("double2").unwrap();
        let layout = coordinate_layout(&tri);
        let d = layout.catalog().dodecagon_count();
        assert_eq!(
            type_restrictions(&layout, AdmissibilityMode::Normal).len(),
            9
        );
        // octagons admit no quad alongside, so one selection per family
        assert_eq!(
            type_restrictions(&layout, AdmissibilityMode::AlmostNormal).len(),
            2 * 3 * 3
        );
        assert_eq!(
            type_restrictions(&layout, AdmissibilityMode::TwoNormal).len(),
            9 + 2 * d * 3
        );
    }

    #[test]
    fn allowed_columns_cover_triangles() {
        let layout = CoordinateLayout::new(2, crate::pieces::PieceCatalog::standard());
        let r = TypeRestriction {
            tets: vec![
                TetSelection::Quad(1),
                TetSelection::Exceptional {
                    piece: PieceKind::Octagon(2),
                    quad: None,
                },
            ],
        };
        let cols = r.allowed_columns(&layout);
        assert_eq!(cols.len(), 10);
        assert!(cols.contains(&layout.index(0, PieceKind::Quad(1))));
        assert!(cols.contains(&layout.index(1, PieceKind::Octagon(2))));
        assert!(!cols.contains(&layout.index(1, PieceKind::Quad(2))));
    }

    #[test]
    fn double2_normal_surfaces() {
        let tri = Triangulation::builtin("double2").unwrap();
        let found = enumerate_vertex_surfaces(
            &tri,
            AdmissibilityMode::Normal,
            &EnumerationOptions::default(),
        )
        .unwrap();
        // four vertex links and one quad sphere per quad family
        assert_eq!(found.len(), 7);
        assert!(found.iter().all(|s| s.class == SurfaceClass::Normal));
        let mut sorted = found.clone();
        sorted.sort_by(|a, b| a.ray.cmp(&b.ray));
        assert_eq!(sorted, found);
    }

    #[test]
    fn thread_cap_gives_same_answer() {
        let tri = Triangulation::builtin("double2").unwrap();
        let one = EnumerationOptions {
            threads: Some(1),
            ..Default::default()
        };
        let a = enumerate_vertex_surfaces(&tri, AdmissibilityMode::TwoNormal, &one).unwrap();
        let b = enumerate_vertex_surfaces(
            &tri,
            AdmissibilityMode::TwoNormal,
            &EnumerationOptions::default(),
        )
        .unwrap();
        assert_eq!(a, b);
    }
}
