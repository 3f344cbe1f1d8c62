use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Integer coefficients (constant term first) of the polynomial through the
/// points, of degree below the number of points. Fails unless every
/// coefficient is an integer.
pub fn interpolate(points: &[(i64, i64)]) -> Result<Vec<i64>> {
    let n = points.len();
    if n == 0 {
        return Ok(vec![0]);
    }
    let xs: Vec<BigRational> = points.iter().map(|&(x, _)| BigRational::from_integer(BigInt::from(x))).collect();
    // Newton divided differences
    let mut coef: Vec<BigRational> = points.iter().map(|&(_, y)| BigRational::from_integer(BigInt::from(y))).collect();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = &coef[i] - &coef[i - 1];
            let den = &xs[i] - &xs[i - j];
            if den.is_zero() {
                return Err(Error::internal("interpolation nodes must be distinct"));
            }
            coef[i] = num / den;
        }
    }
    // expand Σ c_j ∏_{k<j} (x − x_k) into monomials
    let mut poly = vec![BigRational::zero(); n];
    let mut basis = vec![BigRational::one()];
    for (j, c) in coef.iter().enumerate() {
        for (k, b) in basis.iter().enumerate() {
            poly[k] += c * b;
        }
        if j + 1 < n {
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] += b;
                next[k] -= &xs[j] * b;
            }
            basis = next;
        }
    }
    let mut out = Vec::with_capacity(n);
    for c in poly {
        if !c.is_integer() {
            return Err(Error::internal(format!("non-integral interpolated coefficient {c}")));
        }
        out.push(
            c.to_integer()
                .to_i64()
                .ok_or_else(|| Error::resource("interpolated coefficient overflows i64"))?,
        );
    }
    trim(&mut out);
    Ok(out)
}

pub fn trim(c: &mut Vec<i64>) {
    while c.len() > 1 && c.last() == Some(&0) {
        c.pop();
    }
    if c.is_empty() {
        c.push(0);
    }
}

pub fn evaluate(coeffs: &[i64], x: i64) -> i128 {
    coeffs
        .iter()
        .rev()
        .fold(0i128, |acc, &c| acc * i128::from(x) + i128::from(c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_integer_polynomials() {
        let p = [3i64, -2, 0, 1];
        let pts: Vec<(i64, i64)> = [2, 3, 4, 5].iter().map(|&x| (x, evaluate(&p, x) as i64)).collect();
        assert_eq!(interpolate(&pts).unwrap(), p);
        assert_eq!(interpolate(&[(2, 7), (3, 7)]).unwrap(), vec![7]);
        assert_eq!(interpolate(&[(2, 0), (3, 0), (4, 0)]).unwrap(), vec![0]);
    }

    #[test]
    fn rejects_fractional_fits() {
        assert!(interpolate(&[(2, 0), (4, 1)]).is_err());
    }
}
