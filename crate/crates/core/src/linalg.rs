//! Exact rank computations and nilpotent Jordan types.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Rank by Gaussian elimination. Exact for rational scalars; for floats,
/// pivots below the scalar's tolerance count as zero.
pub fn rank<T: Scalar>(m: &[Vec<T>]) -> usize {
    let mut a: Vec<Vec<T>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let pivot = if T::EXACT {
            (r..rows).find(|&i| !a[i][c].is_zero())
        } else {
            (r..rows)
                .filter(|&i| !a[i][c].is_negligible())
                .max_by(|&i, &j| {
                    let (x, y) = (abs(&a[i][c]), abs(&a[j][c]));
                    x.partial_cmp(&y).unwrap_or(std::cmp::Ordering::Equal)
                })
        };
        let Some(p) = pivot else {
            continue;
        };
        a.swap(r, p);
        let pv = a[r][c].clone();
        for i in r + 1..rows {
            if a[i][c].is_zero() {
                continue;
            }
            let factor = a[i][c].clone() / pv.clone();
            let pivot_row = a[r].clone();
            for (x, p) in a[i][c..cols].iter_mut().zip(&pivot_row[c..cols]) {
                *x = x.clone() - p.clone() * factor.clone();
            }
        }
        r += 1;
    }
    r
}

fn abs<T: Scalar>(x: &T) -> T {
    if *x < T::zero() {
        -x.clone()
    } else {
        x.clone()
    }
}

pub fn mat_mul<T: Scalar>(a: &[Vec<T>], b: &[Vec<T>]) -> Vec<Vec<T>> {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .fold(T::zero(), |acc, (x, brow)| acc + x.clone() * brow[j].clone())
                })
                .collect()
        })
        .collect()
}

/// Jordan block sizes (descending) of a nilpotent square matrix, from the
/// ranks of its powers.
pub fn nilpotent_jordan_type<T: Scalar>(m: &[Vec<T>]) -> Result<Vec<usize>> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::input("Jordan type needs a square matrix"));
    }
    let mut ranks = vec![n];
    let mut power = m.to_vec();
    loop {
        let r = rank(&power);
        ranks.push(r);
        if r == 0 {
            break;
        }
        if ranks.len() > n + 1 {
            return Err(Error::input("matrix is not nilpotent"));
        }
        power = mat_mul(&power, m);
    }
    // blocks of size >= k: ranks[k-1] - ranks[k]
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut sizes = Vec::new();
    for k in (1..=at_least.len()).rev() {
        let exactly = at_least[k - 1] - at_least.get(k).copied().unwrap_or(0);
        sizes.extend(std::iter::repeat_n(k, exactly));
    }
    Ok(sizes)
}
