//! Built-in consistency checks run by `twonormal selftest`.

use std::collections::BTreeSet;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::cone::{brute_force_rays, extreme_rays};
use crate::curves::{disjointly_realizable, CurveOracle, NormalCurve};
use crate::enumeration::{enumerate_vertex_surfaces, type_restrictions, EnumerationOptions};
use crate::matching::{build_matching_system, AdmissibilityMode};
use crate::pieces::{coordinate_layout, PieceCatalog, PieceError};
use crate::surface::{reconstruct, report};
use crate::triangulation::Triangulation;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SelftestOptions {
    pub max_curve_length: u32,
    /// Number of random systems for the extreme ray comparison.
    pub random_systems: usize,
    pub seed: u64,
    /// Plants a curve of length 6 among the observed ones, so the length
    /// check must fail.
    pub inject_fault: bool,
}

impl Default for SelftestOptions {
    fn default() -> Self {
        SelftestOptions {
            max_curve_length: 24,
            random_systems: 40,
            seed: 0x2e0f,
            inject_fault: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelftestReport {
    pub checks: Vec<Check>,
    pub observed_lengths: Vec<u32>,
    pub dodecagon_families: usize,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }
}

fn check(name: &'static str, result: Result<String, String>) -> Check {
    match result {
        Ok(detail) => Check {
            name,
            passed: true,
            detail,
        },
        Err(detail) => Check {
            name,
            passed: false,
            detail,
        },
    }
}

fn allowed_length(len: u32) -> bool {
    len == 3 || (len > 0 && len % 4 == 0)
}

fn curve_lengths(curves: &[NormalCurve], inject: bool) -> (Vec<u32>, Result<String, String>) {
    let mut lengths: BTreeSet<u32> = curves.iter().map(NormalCurve::length).collect();
    if inject {
        lengths.insert(6);
    }
    let lengths: Vec<u32> = lengths.into_iter().collect();
    let bad: Vec<u32> = lengths
        .iter()
        .copied()
        .filter(|&l| !allowed_length(l))
        .collect();
    let result = if bad.is_empty() {
        Ok(format!("lengths observed {lengths:?} ⊆ {{3}} ∪ 4ℤ⁺"))
    } else {
        Err(format!("lengths {bad:?} are neither 3 nor a multiple of 4"))
    };
    (lengths, result)
}

fn mixed_long_curves(curves: &[NormalCurve]) -> Result<String, String> {
    let long: Vec<&NormalCurve> = curves.iter().filter(|c| c.length() % 4 == 0).collect();
    let mut pairs = 0;
    for (i, a) in long.iter().enumerate() {
        for b in &long[i + 1..] {
            if a.length() == b.length() {
                continue;
            }
            pairs += 1;
            if disjointly_realizable(a, b) {
                return Err(format!(
                    "curves of lengths {} and {} are disjoint",
                    a.length(),
                    b.length()
                ));
            }
        }
    }
    Ok(format!(
        "{pairs} pairs of different long lengths, none disjoint"
    ))
}

fn piece_lengths(oracle: &CurveOracle) -> Result<String, String> {
    let catalog = PieceCatalog::standard();
    let lengths: BTreeSet<u32> = catalog
        .kinds()
        .into_iter()
        .map(|k| catalog.boundary_curve(k).length())
        .collect();
    if lengths.iter().any(|l| ![3, 4, 8, 12].contains(l)) {
        return Err(format!("piece lengths {lengths:?}"));
    }
    let mut scratch = catalog.clone();
    for len in [16, 20] {
        if len > oracle.bound() {
            continue;
        }
        let curves = oracle.curves_of_length(len).map_err(|e| e.to_string())?;
        let Some(&c) = curves.first() else { continue };
        match scratch.register(c) {
            Err(PieceError::LengthNotAllowed { .. }) => {}
            other => return Err(format!("registering a {len}-gon gave {other:?}")),
        }
    }
    Ok(format!(
        "piece lengths {lengths:?}, {} per tetrahedron",
        catalog.per_tet()
    ))
}

/// A random `rows × cols` matrix with entries in `[-2, 2]`.
fn random_matrix(rng: &mut StdRng, rows: usize, cols: usize) -> Vec<Vec<i64>> {
    (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(-2..=2)).collect())
        .collect()
}

fn random_cones(options: &SelftestOptions) -> Result<String, String> {
    let mut rng = StdRng::seed_from_u64(options.seed);
    let mut total = 0;
    for k in 0..options.random_systems {
        let cols = rng.gen_range(2..=10);
        let rows = rng.gen_range(1..cols);
        let a = random_matrix(&mut rng, rows, cols);
        let dd = extreme_rays(&a, cols, None).map_err(|e| e.to_string())?;
        let bf = brute_force_rays(&a, cols, None).map_err(|e| e.to_string())?;
        if dd != bf {
            return Err(format!(
                "system {k} ({rows}×{cols}): {} vs {} rays",
                dd.len(),
                bf.len()
            ));
        }
        total += dd.len();
    }
    Ok(format!(
        "{} systems, {total} rays, all equal",
        options.random_systems
    ))
}

fn double2_cones() -> Result<String, String> {
    let tri = Triangulation::builtin("double2").expect("built-in");
    let layout = coordinate_layout(&tri);
    let system = build_matching_system(&tri, &layout).map_err(|e| e.to_string())?;
    let mut cones = 0;
    for mode in AdmissibilityMode::ALL {
        for r in type_restrictions(&layout, mode) {
            let cols = r.allowed_columns(&layout);
            let dd = extreme_rays(system.matrix(), layout.dimension(), Some(&cols));
            let bf = brute_force_rays(system.matrix(), layout.dimension(), Some(&cols));
            if dd != bf {
                return Err(format!("{mode} cone {:?} differs", r.tets));
            }
            cones += 1;
        }
    }
    Ok(format!("{cones} restricted cones on double2 agree"))
}

fn euler_characteristics() -> Result<String, String> {
    let tri = Triangulation::builtin("double2").expect("built-in");
    let mut count = 0;
    for mode in AdmissibilityMode::ALL {
        let found = enumerate_vertex_surfaces(&tri, mode, &EnumerationOptions::default())
            .map_err(|e| e.to_string())?;
        for s in &found {
            let v = s.coordinates();
            let complex = reconstruct(&tri, &v, s.tubes()).map_err(|e| format!("{v:?}: {e}"))?;
            report(&complex).map_err(|e| format!("{v:?}: {e}"))?;
            count += 1;
        }
    }
    Ok(format!(
        "{count} surfaces on double2, both Euler characteristics agree"
    ))
}

/// Runs every check; later checks still run after a failure.
pub fn run_selftest(options: &SelftestOptions) -> SelftestReport {
    let oracle = CurveOracle::new(options.max_curve_length);
    let mut checks = Vec::new();
    let curves = match oracle.enumerate(options.max_curve_length) {
        Ok(c) => c,
        Err(e) => {
            checks.push(check("curve_lengths", Err(e.to_string())));
            Vec::new()
        }
    };
    let (observed_lengths, lengths) = curve_lengths(&curves, options.inject_fault);
    checks.push(check("curve_lengths", lengths));
    checks.push(check("mixed_long_curves", mixed_long_curves(&curves)));
    checks.push(check("piece_lengths", piece_lengths(&oracle)));
    checks.push(check("extreme_rays_random", random_cones(options)));
    checks.push(check("extreme_rays_double2", double2_cones()));
    checks.push(check("euler_characteristic", euler_characteristics()));
    SelftestReport {
        checks,
        observed_lengths,
        dodecagon_families: PieceCatalog::standard().dodecagon_count(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes() {
        let options = SelftestOptions {
            max_curve_length: 12,
            random_systems: 5,
            ..Default::default()
        };
        let r = run_selftest(&options);
        assert!(r.passed(), "{:?}", r.first_failure());
        assert_eq!(r.observed_lengths, vec![3, 4, 8, 12]);
    }

    #[test]
    fn injected_fault_fails() {
        let options = SelftestOptions {
            max_curve_length: 8,
            random_systems: 1,
            inject_fault: true,
            ..Default::default()
        };
        let r = run_selftest(&options);
        assert_eq!(r.first_failure().unwrap().name, "curve_lengths");
    }
}
