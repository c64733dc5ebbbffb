//! Small exact linear algebra over the rationals, used for Gram
//! determinants and for expressing Weil classes in a Picard basis.

use num::{BigInt, BigRational, One, Signed, Zero};

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}

/// Determinant of a square rational matrix by Gaussian elimination.
pub fn det_rational(m: &[Vec<BigRational>]) -> BigRational {
    let n = m.len();
    if n == 0 {
        return BigRational::one();
    }
    assert!(m.iter().all(|r| r.len() == n), "non-square matrix");
    let mut a = m.to_vec();
    let mut det = BigRational::one();
    for k in 0..n {
        let pivot = (k..n).find(|&i| !a[i][k].is_zero());
        let Some(p) = pivot else {
            return BigRational::zero();
        };
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        det *= a[k][k].clone();
        let inv = a[k][k].clone();
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &inv;
            for j in k..n {
                let v = &a[i][j] - &f * &a[k][j];
                a[i][j] = v;
            }
        }
    }
    det
}

/// Solve `A x = b` for a square invertible rational matrix. Returns `None`
/// if the matrix is singular.
pub fn solve_rational(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = a.len();
    assert!(a.iter().all(|r| r.len() == n) && b.len() == n);
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for k in 0..n {
        let pivot = (k..n).find(|&i| !m[i][k].is_zero())?;
        m.swap(pivot, k);
        let inv = m[k][k].clone();
        for j in k..=n {
            let v = &m[k][j] / &inv;
            m[k][j] = v;
        }
        for i in 0..n {
            if i == k || m[i][k].is_zero() {
                continue;
            }
            let f = m[i][k].clone();
            for j in k..=n {
                let v = &m[i][j] - &f * &m[k][j];
                m[i][j] = v;
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

/// Content (gcd of coordinates) of an integer vector; zero for the zero
/// vector.
pub fn content(v: &[BigInt]) -> BigInt {
    use num::Integer;
    v.iter()
        .fold(BigInt::zero(), |acc, x| acc.gcd(&x.abs()))
}

/// The rational vector as integers, if every coordinate is integral.
pub fn to_integer_vector(v: &[BigRational]) -> Option<Vec<BigInt>> {
    v.iter()
        .map(|x| x.is_integer().then(|| x.to_integer()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_2x2() {
        let m = vec![vec![rat(0, 1), rat(1, 1)], vec![rat(1, 1), rat(0, 1)]];
        assert_eq!(det_rational(&m), rat(-1, 1));
    }

    #[test]
    fn det_singular() {
        let m = vec![vec![rat(1, 2), rat(1, 2)], vec![rat(1, 1), rat(1, 1)]];
        assert_eq!(det_rational(&m), BigRational::zero());
    }

    #[test]
    fn solve_simple() {
        let a = vec![vec![rat(2, 1), rat(1, 1)], vec![rat(1, 1), rat(3, 1)]];
        let b = vec![rat(5, 1), rat(10, 1)];
        let x = solve_rational(&a, &b).unwrap();
        assert_eq!(x, vec![rat(1, 1), rat(3, 1)]);
    }

    #[test]
    fn content_examples() {
        let v: Vec<BigInt> = [6, -9, 12].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(content(&v), BigInt::from(3));
        let z: Vec<BigInt> = vec![BigInt::zero(), BigInt::zero()];
        assert_eq!(content(&z), BigInt::zero());
    }
}
