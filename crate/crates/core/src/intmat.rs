//! Small dense integer matrices (row-major `Vec<Vec<i64>>`), checked arithmetic.

use crate::error::{Error, Result};

pub type Matrix = Vec<Vec<i64>>;

pub(crate) fn narrow(x: i128) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Overflow)
}

pub(crate) fn cmul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

pub(crate) fn cadd(a: i128, b: i128) -> Result<i128> {
    a.checked_add(b).ok_or(Error::Overflow)
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i64
}

pub fn gcd_all(v: &[i64]) -> i64 {
    v.iter().fold(0, |g, &x| gcd(g, x))
}

/// `(g, s, t)` with `s*a + t*b = g = gcd(a, b) >= 0`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn is_square(m: &[Vec<i64>], n: usize) -> bool {
    m.len() == n && m.iter().all(|r| r.len() == n)
}

pub fn det(m: &[Vec<i64>]) -> Result<i64> {
    let e = |i: usize, j: usize| m[i][j] as i128;
    let d = match m.len() {
        0 => 1,
        1 => e(0, 0),
        2 => cadd(cmul(e(0, 0), e(1, 1))?, -cmul(e(0, 1), e(1, 0))?)?,
        3 => {
            let mut acc = 0i128;
            for j in 0..3 {
                let minor = cadd(
                    cmul(e(1, (j + 1) % 3), e(2, (j + 2) % 3))?,
                    -cmul(e(1, (j + 2) % 3), e(2, (j + 1) % 3))?,
                )?;
                acc = cadd(acc, cmul(e(0, j), minor)?)?;
            }
            acc
        }
        n => return Err(Error::DimensionMismatch(n, 3)),
    };
    narrow(d)
}

/// Adjugate, so that `adj(m) * m = det(m) * I`.
pub fn adj(m: &[Vec<i64>]) -> Result<Matrix> {
    let n = m.len();
    match n {
        1 => Ok(vec![vec![1]]),
        2 => Ok(vec![vec![m[1][1], m[0][1].checked_neg().ok_or(Error::Overflow)?], vec![
            m[1][0].checked_neg().ok_or(Error::Overflow)?,
            m[0][0],
        ]]),
        3 => {
            let mut out = vec![vec![0i64; 3]; 3];
            for i in 0..3 {
                for j in 0..3 {
                    // cofactor of (j, i)
                    let rows: Vec<usize> = (0..3).filter(|&r| r != j).collect();
                    let cols: Vec<usize> = (0..3).filter(|&c| c != i).collect();
                    let a = m[rows[0]][cols[0]] as i128;
                    let b = m[rows[0]][cols[1]] as i128;
                    let c = m[rows[1]][cols[0]] as i128;
                    let d = m[rows[1]][cols[1]] as i128;
                    let minor = cadd(cmul(a, d)?, -cmul(b, c)?)?;
                    out[i][j] = narrow(if (i + j) % 2 == 0 { minor } else { -minor })?;
                }
            }
            Ok(out)
        }
        n => Err(Error::DimensionMismatch(n, 3)),
    }
}

pub fn mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Result<Matrix> {
    let (n, k, m) = (a.len(), b.len(), b.first().map_or(0, |r| r.len()));
    let mut out = vec![vec![0i64; m]; n];
    for i in 0..n {
        if a[i].len() != k {
            return Err(Error::DimensionMismatch(a[i].len(), k));
        }
        for j in 0..m {
            let mut acc = 0i128;
            for t in 0..k {
                acc = cadd(acc, cmul(a[i][t] as i128, b[t][j] as i128)?)?;
            }
            out[i][j] = narrow(acc)?;
        }
    }
    Ok(out)
}

pub fn mul_vec(a: &[Vec<i64>], v: &[i64]) -> Result<Vec<i64>> {
    a.iter()
        .map(|row| {
            if row.len() != v.len() {
                return Err(Error::DimensionMismatch(row.len(), v.len()));
            }
            let mut acc = 0i128;
            for (&x, &y) in row.iter().zip(v) {
                acc = cadd(acc, cmul(x as i128, y as i128)?)?;
            }
            narrow(acc)
        })
        .collect()
}

/// Exact `m^{-1} v`, or `None` when the solution is not integral.
pub fn solve(m: &[Vec<i64>], v: &[i64]) -> Result<Option<Vec<i64>>> {
    let d = det(m)?;
    if d == 0 {
        return Err(Error::SingularBasis);
    }
    let w = mul_vec(&adj(m)?, v)?;
    if w.iter().any(|x| x % d != 0) {
        return Ok(None);
    }
    Ok(Some(w.iter().map(|x| x / d).collect()))
}

/// Exact `a^{-1} b`, or `None` when it is not integral.
pub fn left_divide(a: &[Vec<i64>], b: &[Vec<i64>]) -> Result<Option<Matrix>> {
    let n = a.len();
    let mut out = vec![vec![0i64; n]; n];
    for j in 0..n {
        let col: Vec<i64> = b.iter().map(|r| r[j]).collect();
        match solve(a, &col)? {
            Some(x) => {
                for i in 0..n {
                    out[i][j] = x[i];
                }
            }
            None => return Ok(None),
        }
    }
    Ok(Some(out))
}

pub fn column(m: &[Vec<i64>], j: usize) -> Vec<i64> {
    m.iter().map(|r| r[j]).collect()
}

/// Unimodular `A` with `A * v = (1, 0, ..)` for a primitive `v` of length 2 or 3.
pub fn to_first_axis(v: &[i64]) -> Result<Matrix> {
    if gcd_all(v) != 1 {
        return Err(Error::InvalidParams(format!("{v:?} is not primitive")));
    }
    match v.len() {
        2 => {
            let (a, b) = (v[0] as i128, v[1] as i128);
            let (_, s, t) = ext_gcd(a, b);
            Ok(vec![vec![narrow(s)?, narrow(t)?], vec![narrow(-b)?, narrow(a)?]])
        }
        3 => {
            // clear the last coordinate inside the (y, z) plane, then finish in (x, y)
            let (b, c) = (v[1], v[2]);
            let first = if b == 0 && c == 0 {
                identity(3)
            } else {
                let inner = to_first_axis(&[b / gcd(b, c), c / gcd(b, c)])?;
                vec![
                    vec![1, 0, 0],
                    vec![0, inner[0][0], inner[0][1]],
                    vec![0, inner[1][0], inner[1][1]],
                ]
            };
            let w = mul_vec(&first, v)?;
            let inner = to_first_axis(&[w[0], w[1]])?;
            let second = vec![
                vec![inner[0][0], inner[0][1], 0],
                vec![inner[1][0], inner[1][1], 0],
                vec![0, 0, 1],
            ];
            mul(&second, &first)
        }
        n => Err(Error::DimensionMismatch(n, 3)),
    }
}
