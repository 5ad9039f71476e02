//! Exact integer linear algebra for small dense systems.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Divides `v` by the gcd of its entries. The zero vector is left alone.
pub(crate) fn make_primitive(v: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in v.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                return;
            }
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for x in v.iter_mut() {
        *x /= &g;
    }
}

/// Integer reduced row echelon form: every pivot column is zero outside its
/// pivot row, and each row is primitive. Returns the pivot columns in order.
pub(crate) fn reduce(rows: &mut Vec<Vec<BigInt>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(found) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, found);
        let (head, tail) = rows.split_at_mut(r);
        let (pivot_row, tail) = tail.split_first_mut().unwrap();
        for other in head.iter_mut().chain(tail.iter_mut()) {
            if other[c].is_zero() {
                continue;
            }
            let g = pivot_row[c].gcd(&other[c]);
            let scale_other = &pivot_row[c] / &g;
            let scale_pivot = &other[c] / &g;
            for (x, p) in other.iter_mut().zip(pivot_row.iter()) {
                *x = &*x * &scale_other - p * &scale_pivot;
            }
            make_primitive(other);
        }
        make_primitive(pivot_row);
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// A basis of the integer kernel of `rows` (each of length `cols`), one
/// primitive vector per free column.
pub(crate) fn kernel_basis(rows: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    let mut m = rows.to_vec();
    let pivots = reduce(&mut m, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            // x_f = L, x_p = -L * m[i][f] / m[i][p] for each pivot row i
            let mut l = BigInt::one();
            for (i, &p) in pivots.iter().enumerate() {
                if !m[i][f].is_zero() {
                    l = l.lcm(&m[i][p].abs());
                }
            }
            let mut v = vec![BigInt::zero(); cols];
            v[f] = l.clone();
            for (i, &p) in pivots.iter().enumerate() {
                if !m[i][f].is_zero() {
                    v[p] = -(&l * &m[i][f]) / &m[i][p];
                }
            }
            make_primitive(&mut v);
            v
        })
        .collect()
}

pub(crate) fn dot(row: &[BigInt], v: &[BigInt]) -> BigInt {
    row.iter().zip(v).map(|(a, b)| a * b).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn kernel_vectors_are_in_kernel() {
        let m = big(&[&[1, -1, 0, 2], &[0, 2, -2, 1], &[1, 1, -2, 3]]);
        let k = kernel_basis(&m, 4);
        assert_eq!(k.len(), 2);
        for v in &k {
            for row in &m {
                assert!(dot(row, v).is_zero());
            }
        }
    }

    #[test]
    fn full_rank_has_trivial_kernel() {
        let m = big(&[&[1, 0], &[0, 1]]);
        assert!(kernel_basis(&m, 2).is_empty());
        assert_eq!(kernel_basis(&[], 3).len(), 3);
    }

    #[test]
    fn primitive_division() {
        let mut v: Vec<BigInt> = [4, -6, 0, 10].iter().map(|&x| BigInt::from(x)).collect();
        make_primitive(&mut v);
        assert_eq!(
            v,
            [2, -3, 0, 5]
                .iter()
                .map(|&x| BigInt::from(x))
                .collect::<Vec<_>>()
        );
    }
}
