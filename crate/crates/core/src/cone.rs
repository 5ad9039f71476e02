//! Extreme rays of `{x : A x = 0, x >= 0}` in exact integer arithmetic.
//!
//! [`extreme_rays`] is a double description method: it starts from the
//! generators of the nonnegative orthant and intersects with one hyperplane
//! per row, combining adjacent positive/negative pairs. Adjacency is decided
//! combinatorially from zero sets. [`brute_force_rays`] solves every support
//! subset directly and is kept as an independent check.

use std::fmt;

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::linalg::{dot, kernel_basis, make_primitive};

/// Largest number of free columns [`brute_force_rays`] accepts.
pub const BRUTE_FORCE_MAX_DIMENSION: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConeError {
    #[error("row {row} has {len} entries, expected {expected}")]
    RaggedMatrix {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("column {column} is outside dimension {dimension}")]
    ColumnOutOfRange { column: usize, dimension: usize },
    #[error("brute force is limited to {max} columns, got {dimension}")]
    DimensionExceeded { dimension: usize, max: usize },
}

/// A primitive nonnegative integer vector spanning an extreme ray.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ray {
    vector: Vec<BigInt>,
}

impl Ray {
    /// Wraps a nonnegative vector, dividing out the gcd of its entries.
    pub fn new(mut vector: Vec<BigInt>) -> Self {
        debug_assert!(vector.iter().all(|x| !x.is_negative()));
        make_primitive(&mut vector);
        Ray { vector }
    }

    pub fn from_u64(vector: &[u64]) -> Self {
        Ray::new(vector.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn vector(&self) -> &[BigInt] {
        &self.vector
    }

    pub fn dimension(&self) -> usize {
        self.vector.len()
    }

    /// Indices of the nonzero coordinates.
    pub fn support(&self) -> Vec<usize> {
        (0..self.vector.len())
            .filter(|&i| !self.vector[i].is_zero())
            .collect()
    }

    /// The coordinates as machine integers, if they all fit.
    pub fn to_u64(&self) -> Option<Vec<u64>> {
        self.vector.iter().map(ToPrimitive::to_u64).collect()
    }

    pub fn is_primitive(&self) -> bool {
        let mut v = self.vector.clone();
        make_primitive(&mut v);
        v == self.vector
    }

    /// `A v == 0` exactly.
    pub fn satisfies(&self, rows: &[Vec<i64>]) -> bool {
        rows.iter().all(|row| {
            row.iter()
                .zip(&self.vector)
                .map(|(&a, x)| BigInt::from(a) * x)
                .sum::<BigInt>()
                .is_zero()
        })
    }
}

impl fmt::Debug for Ray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Ray(")?;
        for (i, x) in self.vector.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

fn check_shape(
    rows: &[Vec<i64>],
    dimension: usize,
    allowed: Option<&[usize]>,
) -> Result<Vec<usize>, ConeError> {
    for (row, r) in rows.iter().enumerate() {
        if r.len() != dimension {
            return Err(ConeError::RaggedMatrix {
                row,
                len: r.len(),
                expected: dimension,
            });
        }
    }
    let mut cols: Vec<usize> = match allowed {
        Some(a) => a.to_vec(),
        None => (0..dimension).collect(),
    };
    cols.sort_unstable();
    cols.dedup();
    if let Some(&column) = cols.iter().find(|&&c| c >= dimension) {
        return Err(ConeError::ColumnOutOfRange { column, dimension });
    }
    Ok(cols)
}

/// Rows restricted to `cols`, dropping rows that vanish there.
fn project(rows: &[Vec<i64>], cols: &[usize]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| cols.iter().map(|&c| BigInt::from(r[c])).collect::<Vec<_>>())
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect()
}

fn embed(local: Vec<BigInt>, cols: &[usize], dimension: usize) -> Ray {
    let mut full = vec![BigInt::zero(); dimension];
    for (x, &c) in local.into_iter().zip(cols) {
        full[c] = x;
    }
    Ray::new(full)
}

struct Generator {
    v: Vec<BigInt>,
    zeros: FixedBitSet,
}

impl Generator {
    fn new(v: Vec<BigInt>) -> Self {
        let mut zeros = FixedBitSet::with_capacity(v.len());
        for (i, x) in v.iter().enumerate() {
            zeros.set(i, x.is_zero());
        }
        Generator { v, zeros }
    }
}

/// Extreme rays of the cone `{x >= 0 : rows · x = 0}` with `x_j = 0` for
/// every column outside `allowed` (all columns when `None`).
///
/// Output is sorted lexicographically by vector.
pub fn extreme_rays(
    rows: &[Vec<i64>],
    dimension: usize,
    allowed: Option<&[usize]>,
) -> Result<Vec<Ray>, ConeError> {
    let cols = check_shape(rows, dimension, allowed)?;
    let n = cols.len();
    let eqs = project(rows, &cols);

    let mut gens: Vec<Generator> = (0..n)
        .map(|i| {
            let mut v = vec![BigInt::zero(); n];
            v[i] = BigInt::from(1);
            Generator::new(v)
        })
        .collect();

    for eq in &eqs {
        let values: Vec<BigInt> = gens.iter().map(|g| dot(eq, &g.v)).collect();
        let pos: Vec<usize> = (0..gens.len())
            .filter(|&i| values[i].is_positive())
            .collect();
        let neg: Vec<usize> = (0..gens.len())
            .filter(|&i| values[i].is_negative())
            .collect();
        if pos.is_empty() && neg.is_empty() {
            continue;
        }
        let mut next: Vec<Generator> = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            if values[i].is_zero() {
                next.push(Generator {
                    v: g.v.clone(),
                    zeros: g.zeros.clone(),
                });
            }
        }
        for &p in &pos {
            for &q in &neg {
                let mut common = gens[p].zeros.clone();
                common.intersect_with(&gens[q].zeros);
                let blocked = gens
                    .iter()
                    .enumerate()
                    .any(|(k, g)| k != p && k != q && common.is_subset(&g.zeros));
                if blocked {
                    continue;
                }
                let a = &values[p];
                let b = -&values[q];
                let mut v: Vec<BigInt> = gens[q]
                    .v
                    .iter()
                    .zip(&gens[p].v)
                    .map(|(x, y)| a * x + &b * y)
                    .collect();
                make_primitive(&mut v);
                next.push(Generator::new(v));
            }
        }
        gens = next;
    }

    let mut out: Vec<Ray> = gens
        .into_iter()
        .map(|g| embed(g.v, &cols, dimension))
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Extreme rays found by solving the kernel on every support subset.
///
/// A nonnegative vector spans an extreme ray exactly when the columns of its
/// support have a one-dimensional kernel. Only subsets of size at most
/// `rank + 1` can have that property, so larger ones are skipped.
pub fn brute_force_rays(
    rows: &[Vec<i64>],
    dimension: usize,
    allowed: Option<&[usize]>,
) -> Result<Vec<Ray>, ConeError> {
    let cols = check_shape(rows, dimension, allowed)?;
    let n = cols.len();
    if n > BRUTE_FORCE_MAX_DIMENSION {
        return Err(ConeError::DimensionExceeded {
            dimension: n,
            max: BRUTE_FORCE_MAX_DIMENSION,
        });
    }
    let eqs = project(rows, &cols);
    let rank = n - kernel_basis(&eqs, n).len();

    let mut out = Vec::new();
    for mask in 1u32..(1u32 << n) {
        let size = mask.count_ones() as usize;
        if size > rank + 1 {
            continue;
        }
        let subset: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let sub: Vec<Vec<BigInt>> = eqs
            .iter()
            .map(|r| subset.iter().map(|&i| r[i].clone()).collect())
            .collect();
        let kernel = kernel_basis(&sub, size);
        if kernel.len() != 1 {
            continue;
        }
        let k = &kernel[0];
        let sign_ok = k.iter().all(Signed::is_positive) || k.iter().all(Signed::is_negative);
        if !sign_ok {
            continue;
        }
        let mut local = vec![BigInt::zero(); n];
        for (x, &i) in k.iter().zip(&subset) {
            local[i] = x.abs();
        }
        out.push(embed(local, &cols, dimension));
    }
    out.sort();
    Ok(out)
}
