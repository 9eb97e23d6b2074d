//! Exact rank over the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Rank of the matrix whose rows are `rows`, by Gaussian elimination over Q.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect()
        })
        .collect();
    let cols = m.iter().map(|r| r.len()).max().unwrap_or(0);
    for r in m.iter_mut() {
        r.resize(cols, BigRational::zero());
    }
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = BigRational::one() / m[rank][c].clone();
        for j in c..cols {
            m[rank][j] = &m[rank][j] * &inv;
        }
        for i in 0..m.len() {
            if i != rank && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let d = &f * &m[rank][j];
                    m[i][j] -= d;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Whether `v` lies outside the rational span of `rows`.
pub fn independent_of(v: &[i64], rows: &[Vec<i64>]) -> bool {
    let mut all = rows.to_vec();
    let base = rank(&all);
    all.push(v.to_vec());
    rank(&all) == base + 1
}

pub fn transpose(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = m.first().map_or(0, |r| r.len());
    (0..n).map(|j| m.iter().map(|r| r[j]).collect()).collect()
}

pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

pub fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| (i == j) as i64).collect())
        .collect()
}

pub fn gcd_all(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| num_integer::gcd(g, x))
}
