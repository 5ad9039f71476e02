//! Complexity of surfaces and of thick-level lists, and symbolic compression.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrderError {
    #[error("Euler characteristic {0} is above 2")]
    InvalidChi(i64),
    #[error("no component with Euler characteristic {0}")]
    MissingComponent(i64),
    #[error("a sphere has no compression")]
    Sphere,
    #[error("a projective plane has no compression")]
    ProjectivePlane,
    #[error("split ({0}, {1}) does not add up to {2} + 2")]
    InconsistentSplit(i64, i64, i64),
    #[error("split ({0}, {1}) cuts off a sphere, so the compressing curve was inessential")]
    TrivialSplit(i64, i64),
    #[error("cannot parse `{0}`")]
    Parse(String),
}

/// Multiset of per-component Euler characteristics, kept sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct SurfaceComplexity {
    chis: Vec<i64>,
}

impl SurfaceComplexity {
    pub fn new(mut chis: Vec<i64>) -> Result<Self, OrderError> {
        if let Some(&bad) = chis.iter().find(|&&x| x > 2) {
            return Err(OrderError::InvalidChi(bad));
        }
        chis.sort_unstable();
        Ok(SurfaceComplexity { chis })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn chis(&self) -> &[i64] {
        &self.chis
    }

    pub fn complexity(&self) -> u64 {
        complexity(self)
    }
}

impl fmt::Display for SurfaceComplexity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.chis.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

/// Comma separated Euler characteristics; the empty string is the empty surface.
impl FromStr for SurfaceComplexity {
    type Err = OrderError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s
            .trim()
            .trim_start_matches('{')
            .trim_end_matches('}')
            .trim();
        if s.is_empty() {
            return Ok(Self::empty());
        }
        let chis = s
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<i64>()
                    .map_err(|_| OrderError::Parse(x.trim().to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(chis)
    }
}

/// The thick levels of a generalized Heegaard splitting, in order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SymbolicGhs {
    pub thick_levels: Vec<SurfaceComplexity>,
}

impl SymbolicGhs {
    pub fn new(thick_levels: Vec<SurfaceComplexity>) -> Self {
        SymbolicGhs { thick_levels }
    }

    /// Complexities of the thick levels in non-increasing order.
    pub fn sorted_complexities(&self) -> Vec<u64> {
        let mut c: Vec<u64> = self.thick_levels.iter().map(complexity).collect();
        c.sort_unstable_by(|a, b| b.cmp(a));
        c
    }
}

/// Levels separated by `/`, components within a level by `,`.
impl FromStr for SymbolicGhs {
    type Err = OrderError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim().is_empty() {
            return Ok(Self::default());
        }
        let levels = s
            .split('/')
            .map(str::parse)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SymbolicGhs::new(levels))
    }
}

/// `Σ (2 - χ)²` over components.
pub fn complexity(f: &SurfaceComplexity) -> u64 {
    f.chis.iter().map(|&x| ((2 - x) * (2 - x)) as u64).sum()
}

/// Compares the non-increasingly sorted thick-level complexities
/// lexicographically; a proper prefix is smaller.
pub fn compare_ghs(a: &SymbolicGhs, b: &SymbolicGhs) -> Ordering {
    a.sorted_complexities().cmp(&b.sorted_complexities())
}

/// Compresses one component with Euler characteristic `chi`.
///
/// Without `split` the compression is non-separating and `chi` becomes
/// `chi + 2`. With `split = Some((a, b))` the component is replaced by two
/// with `a + b = chi + 2`; neither may be a sphere, since an essential curve
/// never bounds a disk on the surface.
pub fn compress(
    f: &SurfaceComplexity,
    chi: i64,
    split: Option<(i64, i64)>,
) -> Result<SurfaceComplexity, OrderError> {
    let at = f
        .chis
        .iter()
        .position(|&x| x == chi)
        .ok_or(OrderError::MissingComponent(chi))?;
    match chi {
        2 => return Err(OrderError::Sphere),
        1 => return Err(OrderError::ProjectivePlane),
        _ => {}
    }
    let mut chis = f.chis.clone();
    chis.remove(at);
    match split {
        None => chis.push(chi + 2),
        Some((a, b)) => {
            if a + b != chi + 2 {
                return Err(OrderError::InconsistentSplit(a, b, chi));
            }
            if a > 2 || b > 2 {
                return Err(OrderError::InvalidChi(a.max(b)));
            }
            if a == 2 || b == 2 {
                return Err(OrderError::TrivialSplit(a, b));
            }
            chis.push(a);
            chis.push(b);
        }
    }
    SurfaceComplexity::new(chis)
}
