//! Finite-index sublattices of Z^d (d = 1, 2, 3) in column-style Hermite form.
//!
//! The basis is lower triangular, its columns generate the sublattice, the
//! diagonal is positive and every entry left of the diagonal in row `i` lies
//! in `[0, B_ii)`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::intmat::{self, cadd, cmul, narrow, Matrix};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Lattice {
    basis: Matrix,
}

/// Column echelon form on the first `pivot_rows` rows of `m` using unimodular
/// column operations (applied to every row). Returns `SingularBasis` if some
/// pivot row has no nonzero entry left.
fn column_echelon(m: &mut [Vec<i128>], pivot_rows: usize, reduce: bool) -> Result<()> {
    let ncols = m.first().map_or(0, |r| r.len());
    for r in 0..pivot_rows {
        if r >= ncols {
            return Err(Error::SingularBasis);
        }
        for j in r + 1..ncols {
            let (a, b) = (m[r][r], m[r][j]);
            if b == 0 {
                continue;
            }
            let (g, s, t) = intmat::ext_gcd(a, b);
            let (u, v) = (-b / g, a / g);
            for row in m.iter_mut() {
                let (x, y) = (row[r], row[j]);
                row[r] = cadd(cmul(s, x)?, cmul(t, y)?)?;
                row[j] = cadd(cmul(u, x)?, cmul(v, y)?)?;
            }
        }
        if m[r][r] == 0 {
            return Err(Error::SingularBasis);
        }
        if m[r][r] < 0 {
            for row in m.iter_mut() {
                row[r] = -row[r];
            }
        }
    }
    if reduce {
        for r in 0..pivot_rows {
            let p = m[r][r];
            for j in 0..r {
                let q = m[r][j].div_euclid(p);
                if q != 0 {
                    for row in m.iter_mut() {
                        row[j] = cadd(row[j], -cmul(q, row[r])?)?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn divisors(n: i64) -> Vec<i64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

impl Lattice {
    pub fn identity(dim: usize) -> Self {
        Lattice { basis: intmat::identity(dim) }
    }

    /// The degree-`n` cover of the solid torus.
    pub fn cyclic(n: i64) -> Result<Self> {
        if n < 1 {
            return Err(Error::SingularBasis);
        }
        Ok(Lattice { basis: vec![vec![n]] })
    }

    pub fn diag(d: &[i64]) -> Result<Self> {
        let m: Matrix = (0..d.len())
            .map(|i| (0..d.len()).map(|j| if i == j { d[i] } else { 0 }).collect())
            .collect();
        Self::hnf(&m)
    }

    /// Canonical form of the lattice generated by the columns of a square matrix.
    pub fn hnf(m: &[Vec<i64>]) -> Result<Self> {
        let d = m.len();
        if !(1..=3).contains(&d) || !intmat::is_square(m, d) {
            return Err(Error::DimensionMismatch(d, m.first().map_or(0, |r| r.len())));
        }
        let cols: Vec<Vec<i64>> = (0..d).map(|j| intmat::column(m, j)).collect();
        Self::from_generators(d, &cols)
    }

    /// Canonical form of the lattice generated by any number of vectors.
    pub fn from_generators(dim: usize, gens: &[Vec<i64>]) -> Result<Self> {
        if gens.iter().any(|g| g.len() != dim) {
            return Err(Error::DimensionMismatch(dim, gens.iter().map(|g| g.len()).max().unwrap_or(0)));
        }
        let mut m: Vec<Vec<i128>> =
            (0..dim).map(|i| gens.iter().map(|g| g[i] as i128).collect()).collect();
        column_echelon(&mut m, dim, true)?;
        let basis = (0..dim)
            .map(|i| (0..dim).map(|j| narrow(m[i][j])).collect::<Result<Vec<_>>>())
            .collect::<Result<Matrix>>()?;
        Ok(Lattice { basis })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn index(&self) -> i64 {
        (0..self.dim()).map(|i| self.basis[i][i]).product()
    }

    fn check_dim(&self, other: &Lattice) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(self.dim(), other.dim()));
        }
        Ok(())
    }

    /// Representative of `v + L` in the box `0 <= v_i < B_ii`.
    pub fn reduce(&self, v: &[i64]) -> Result<Vec<i64>> {
        let mut w = v.to_vec();
        for i in 0..self.dim() {
            let q = w[i].div_euclid(self.basis[i][i]);
            if q != 0 {
                for (k, x) in w.iter_mut().enumerate().skip(i) {
                    *x = narrow(cadd(*x as i128, -cmul(q as i128, self.basis[k][i] as i128)?)?)?;
                }
            }
        }
        Ok(w)
    }

    pub fn contains_vector(&self, v: &[i64]) -> Result<bool> {
        Ok(self.reduce(v)?.iter().all(|&x| x == 0))
    }

    /// Whether `other` is a sublattice of `self`.
    pub fn contains(&self, other: &Lattice) -> Result<bool> {
        self.check_dim(other)?;
        for j in 0..self.dim() {
            if !self.contains_vector(&intmat::column(&other.basis, j))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn join(&self, other: &Lattice) -> Result<Lattice> {
        self.check_dim(other)?;
        let d = self.dim();
        let gens: Vec<Vec<i64>> = (0..d)
            .map(|j| intmat::column(&self.basis, j))
            .chain((0..d).map(|j| intmat::column(&other.basis, j)))
            .collect();
        Lattice::from_generators(d, &gens)
    }

    /// Intersection, via the kernel of `[B0 | -B1]`.
    pub fn meet(&self, other: &Lattice) -> Result<Lattice> {
        self.check_dim(other)?;
        let d = self.dim();
        let mut m = vec![vec![0i128; 2 * d]; 3 * d];
        for i in 0..d {
            for j in 0..d {
                m[i][j] = self.basis[i][j] as i128;
                m[i][d + j] = -(other.basis[i][j] as i128);
            }
        }
        for k in 0..2 * d {
            m[d + k][k] = 1;
        }
        column_echelon(&mut m, d, false)?;
        let mut gens = Vec::with_capacity(d);
        for j in d..2 * d {
            let coeffs: Vec<i64> = (0..d).map(|k| narrow(m[d + k][j])).collect::<Result<_>>()?;
            gens.push(intmat::mul_vec(&self.basis, &coeffs)?);
        }
        Lattice::from_generators(d, &gens)
    }

    /// All canonical sublattices of index exactly `n`.
    pub fn enumerate(dim: usize, n: i64) -> Result<Vec<Lattice>> {
        if !(1..=3).contains(&dim) {
            return Err(Error::DimensionMismatch(dim, 3));
        }
        if n < 1 {
            return Err(Error::InvalidParams(format!("index {n} must be positive")));
        }
        let mut diags: Vec<Vec<i64>> = vec![vec![]];
        for k in 0..dim {
            let mut next = Vec::new();
            for d in &diags {
                let used: i64 = d.iter().product();
                let rest = n / used;
                if k + 1 == dim {
                    let mut e = d.clone();
                    e.push(rest);
                    next.push(e);
                } else {
                    for x in divisors(rest) {
                        let mut e = d.clone();
                        e.push(x);
                        next.push(e);
                    }
                }
            }
            diags = next;
        }
        let mut out = Vec::new();
        for d in diags {
            // free entries: (i, j) with j < i, ranging over [0, d_i)
            let slots: Vec<(usize, usize)> =
                (0..dim).flat_map(|i| (0..i).map(move |j| (i, j))).collect();
            let mut counter = vec![0i64; slots.len()];
            loop {
                let mut basis = vec![vec![0i64; dim]; dim];
                for i in 0..dim {
                    basis[i][i] = d[i];
                }
                for (s, &(i, j)) in slots.iter().enumerate() {
                    basis[i][j] = counter[s];
                }
                out.push(Lattice { basis });
                let mut s = 0;
                loop {
                    if s == slots.len() {
                        break;
                    }
                    counter[s] += 1;
                    if counter[s] < d[slots[s].0] {
                        break;
                    }
                    counter[s] = 0;
                    s += 1;
                }
                if s == slots.len() {
                    break;
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// Coset representatives of Z^d / L, each in the canonical box.
    pub fn cosets(&self) -> Vec<Vec<i64>> {
        let d = self.dim();
        let mut out: Vec<Vec<i64>> = vec![vec![]];
        for i in 0..d {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..self.basis[i][i]).map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
        }
        out
    }

    /// Coordinates of `sub` in this lattice's basis, `B^{-1} B_sub`.
    pub fn relative_basis(&self, sub: &Lattice) -> Result<Option<Matrix>> {
        self.check_dim(sub)?;
        intmat::left_divide(&self.basis, &sub.basis)
    }

    /// Index of the projection to the first coordinate and the sublattice
    /// lying in the hyperplane `x_1 = 0`, in the remaining coordinates.
    pub fn split_first(&self) -> (i64, Option<Lattice>) {
        let d = self.dim();
        let k = self.basis[0][0];
        if d == 1 {
            return (k, None);
        }
        let rest: Matrix = (1..d).map(|i| (1..d).map(|j| self.basis[i][j]).collect()).collect();
        (k, Some(Lattice { basis: rest }))
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Parses a row-major bracket matrix, or a bare positive integer for dim 1.
pub fn parse_matrix(s: &str) -> Result<Matrix> {
    let s = s.trim().replace('\u{2212}', "-");
    if let Ok(n) = s.parse::<i64>() {
        return Ok(vec![vec![n]]);
    }
    serde_json::from_str::<Matrix>(&s).map_err(|e| Error::Parse(format!("matrix `{s}`: {e}")))
}

impl FromStr for Lattice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Lattice::hnf(&parse_matrix(s)?)
    }
}
