use std::collections::HashMap;

use super::{dart, TorusDiagram, Vec2, UNPAIRED};
use crate::error::{Error, Result};
use crate::intmat::{self, Matrix};
use crate::lattice::Lattice;

fn act(a: &[Vec<i64>], v: Vec2) -> Result<Vec2> {
    let w = intmat::mul_vec(a, &v)?;
    Ok([w[0], w[1]])
}

impl TorusDiagram {
    /// Image under the torus automorphism `A`, which must lie in SL(2,Z).
    pub fn dehn_twist(&self, a: &[Vec<i64>]) -> Result<Self> {
        if !intmat::is_square(a, 2) {
            return Err(Error::AmbientMismatch("torus diagrams twist by 2x2 matrices".into()));
        }
        if intmat::det(a)? != 1 {
            return Err(Error::NotAdmissible(format!("twist matrix has det {}, need 1", intmat::det(a)?)));
        }
        self.ensure_valid()?;
        self.twist_unchecked(a)
    }

    pub(crate) fn twist_unchecked(&self, a: &[Vec<i64>]) -> Result<Self> {
        let mut out = self.clone();
        for d in out.disp.iter_mut() {
            *d = act(a, *d)?;
        }
        let loops = self.loops.iter().map(|&l| act(a, l)).collect::<Result<Vec<_>>>()?;
        out.set_loops(loops);
        Ok(out)
    }

    /// Preimage under the covering map of the sublattice `cover`, written in
    /// the cover's basis. Crossing `c` over coset `r` becomes crossing
    /// `c * index + r`, cosets in `Lattice::cosets` order.
    pub fn lift(&self, cover: &Lattice) -> Result<Self> {
        if cover.dim() != 2 {
            return Err(Error::AmbientMismatch(format!(
                "torus diagrams lift along rank-2 lattices, got rank {}",
                cover.dim()
            )));
        }
        self.ensure_valid()?;
        self.lift_unchecked(cover)
    }

    pub(crate) fn lift_unchecked(&self, cover: &Lattice) -> Result<Self> {
        let b: &Matrix = cover.basis();
        let cosets: Vec<Vec2> = cover.cosets().into_iter().map(|r| [r[0], r[1]]).collect();
        let n = cosets.len();
        let slot_of: HashMap<Vec2, usize> = cosets.iter().enumerate().map(|(i, r)| (*r, i)).collect();
        let mut out = TorusDiagram {
            partner: vec![UNPAIRED; self.partner.len() * n],
            disp: vec![[0, 0]; self.partner.len() * n],
            over_even: self.over_even.iter().flat_map(|&o| std::iter::repeat_n(o, n)).collect(),
            loops: vec![],
        };
        for h in 0..self.partner.len() {
            let p = self.partner[h];
            if p < h {
                continue;
            }
            let (c, s, c2, s2) = (h / 4, h % 4, p / 4, p % 4);
            for (ri, r) in cosets.iter().enumerate() {
                let t = [r[0] + self.disp[h][0], r[1] + self.disp[h][1]];
                let red = cover.reduce(&t)?;
                let r2 = [red[0], red[1]];
                let k = intmat::solve(b, &[t[0] - r2[0], t[1] - r2[1]])?
                    .ok_or_else(|| Error::InvalidDiagram("coset reduction left the lattice".into()))?;
                out.connect(dart(c * n + ri, s), dart(c2 * n + slot_of[&r2], s2), [k[0], k[1]]);
            }
        }
        let mut loops = Vec::new();
        for &l in &self.loops {
            if l == [0, 0] {
                loops.extend(std::iter::repeat_n([0, 0], n));
                continue;
            }
            let order = (1..=n as i64)
                .find(|&m| cover.contains_vector(&[m * l[0], m * l[1]]).unwrap_or(false))
                .expect("some multiple of a loop lies in a finite-index lattice");
            let k = intmat::solve(b, &[order * l[0], order * l[1]])?.expect("order multiple lies in the lattice");
            loops.extend(std::iter::repeat_n([k[0], k[1]], n / order as usize));
        }
        out.set_loops(loops);
        Ok(out)
    }
}
