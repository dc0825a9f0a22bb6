//! The idempotent block-matrix lemma behind positivity of `[P]`, over `Q`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};

pub type RationalMatrix = Vec<Vec<BigRational>>;

fn mul(a: &RationalMatrix, b: &RationalMatrix) -> RationalMatrix {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let mut out = vec![vec![BigRational::zero(); m]; n];
    for i in 0..n {
        for (k, bk) in b.iter().enumerate() {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..m {
                out[i][j] += &a[i][k] * &bk[j];
            }
        }
    }
    out
}

/// For `A = [[X, Y], [0, Z]]` with `X` of size `p`, `A² = A`, `X` and `Z`
/// strictly positive and `Y` nonnegative, returns whether `Y = 0`.
pub fn lemma_fp(a: &RationalMatrix, p: usize) -> Result<bool> {
    let m = a.len();
    if p == 0 || p >= m || a.iter().any(|r| r.len() != m) {
        return Err(Error::Invalid("need a square matrix and 0 < p < m".into()));
    }
    if mul(a, a) != *a {
        return Err(Error::NotIdempotent("A² ≠ A".into()));
    }
    for (i, row) in a.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            let ok = match (i < p, j < p) {
                (true, true) | (false, false) => x.is_positive(),
                (true, false) => !x.is_negative(),
                (false, true) => x.is_zero(),
            };
            if !ok {
                return Err(Error::Invalid(format!("entry ({i}, {j}) violates the sign pattern")));
            }
        }
    }
    Ok(a[..p].iter().all(|r| r[p..].iter().all(|x| x.is_zero())))
}

fn rank_one_projection(u: &[i64], v: &[i64]) -> RationalMatrix {
    let s: i64 = u.iter().zip(v).map(|(x, y)| x * y).sum();
    let s = BigRational::from_integer(BigInt::from(s));
    u.iter()
        .map(|x| v.iter().map(|y| BigRational::from_integer(BigInt::from(x * y)) / &s).collect())
        .collect()
}

/// A random idempotent `[[X, Y], [0, Z]]` with `X`, `Z` positive rank-one
/// projections and `Y = X W (1 − Z) + (1 − X) W Z` for random integer `W`.
/// When `zero_y` is set, `W = 0`.
pub fn random_idempotent_block<R: Rng>(rng: &mut R, p: usize, q: usize, zero_y: bool) -> RationalMatrix {
    let mut pos = |k: usize| (0..k).map(|_| rng.gen_range(1..6)).collect::<Vec<i64>>();
    let x = rank_one_projection(&pos(p), &pos(p));
    let z = rank_one_projection(&pos(q), &pos(q));
    let w: RationalMatrix = (0..p)
        .map(|_| {
            (0..q)
                .map(|_| {
                    let c = if zero_y { 0 } else { rng.gen_range(-4..5) };
                    BigRational::from_integer(BigInt::from(c))
                })
                .collect()
        })
        .collect();
    let id = |k: usize| -> RationalMatrix {
        (0..k)
            .map(|i| (0..k).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
            .collect()
    };
    let sub = |a: &RationalMatrix, b: &RationalMatrix| -> RationalMatrix {
        a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect()).collect()
    };
    let y1 = mul(&mul(&x, &w), &sub(&id(q), &z));
    let y2 = mul(&mul(&sub(&id(p), &x), &w), &z);
    let y: RationalMatrix = y1.iter().zip(&y2).map(|(r, s)| r.iter().zip(s).map(|(a, b)| a + b).collect()).collect();
    let mut out = vec![vec![BigRational::zero(); p + q]; p + q];
    for i in 0..p {
        for j in 0..p {
            out[i][j] = x[i][j].clone();
        }
        for j in 0..q {
            out[i][p + j] = y[i][j].clone();
        }
    }
    for i in 0..q {
        for j in 0..q {
            out[p + i][p + j] = z[i][j].clone();
        }
    }
    out
}
