//! Matrix ranks two ways: fast over the prime field with p = 2^61 - 1 for
//! screening, exact over the rationals for confirmation.  The modular rank
//! never exceeds the exact rank, so screening can only overestimate a
//! codimension, never invent one.

// Elimination inner loops touch two rows at once; iterator form can't.
#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

pub const P: u64 = (1 << 61) - 1;

pub fn mod_p(x: i64) -> u64 {
    (x as i128).rem_euclid(P as i128) as u64
}

pub fn mul_p(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

pub fn sub_p(a: u64, b: u64) -> u64 {
    (a + P - b) % P
}

pub fn pow_p(mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_p(acc, base);
        }
        base = mul_p(base, base);
        exp >>= 1;
    }
    acc
}

pub fn inv_p(a: u64) -> u64 {
    assert!(!a.is_multiple_of(P), "no inverse of 0");
    pow_p(a % P, P - 2)
}

/// Row-reduction rank over F_p.  Consumes the matrix.
pub fn rank_p(mut rows: Vec<Vec<u64>>) -> usize {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(pivot) = (rank..nrows).find(|&r| !rows[r][col].is_multiple_of(P)) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = inv_p(rows[rank][col]);
        for r in rank + 1..nrows {
            if rows[r][col].is_multiple_of(P) {
                continue;
            }
            let factor = mul_p(rows[r][col], inv);
            for c in col..ncols {
                let sub = mul_p(factor, rows[rank][c]);
                rows[r][c] = sub_p(rows[r][c] % P, sub);
            }
        }
        rank += 1;
    }
    rank
}

/// Exact rank of an integer matrix, by rational elimination.
pub fn rank_exact(rows: &[Vec<i64>]) -> usize {
    let m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from(BigInt::from(x))).collect())
        .collect();
    rank_exact_q(m)
}

pub fn rank_exact_q(mut rows: Vec<Vec<BigRational>>) -> usize {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(pivot) = (rank..nrows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].recip();
        for r in rank + 1..nrows {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = &rows[r][col] * &inv;
            for c in col..ncols {
                let sub = &factor * &rows[rank][c];
                rows[r][c] -= sub;
            }
        }
        rank += 1;
    }
    rank
}

/// Exact determinant of a square rational matrix.
pub fn det_q(mut rows: Vec<Vec<BigRational>>) -> BigRational {
    let n = rows.len();
    debug_assert!(rows.iter().all(|r| r.len() == n));
    let mut det = BigRational::from(BigInt::from(1));
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !rows[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if pivot != col {
            rows.swap(col, pivot);
            det = -det;
        }
        det *= &rows[col][col];
        let inv = rows[col][col].recip();
        for r in col + 1..n {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = &rows[r][col] * &inv;
            for c in col..n {
                let sub = &factor * &rows[col][c];
                rows[r][c] -= sub;
            }
        }
    }
    det
}
