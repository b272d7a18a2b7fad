//! Full-rank integer lattices kept in reduced Hermite normal form.
//!
//! Every subgroup of `Z/d_1 x ... x Z/d_k` is the image of a full-rank
//! lattice `L` with `d_i e_i in L`; the reduced HNF of `L` is unique and
//! serves as the canonical form of the subgroup.

use crate::arith::ext_gcd;
use crate::error::{Error, Result};

fn overflow() -> Error {
    Error::Overflow("lattice reduction")
}

fn axpy(dst: &mut [i128], q: i128, src: &[i128], from: usize) -> Result<()> {
    for j in from..dst.len() {
        let prod = q.checked_mul(src[j]).ok_or_else(overflow)?;
        dst[j] = dst[j].checked_sub(prod).ok_or_else(overflow)?;
    }
    Ok(())
}

/// Square upper-triangular basis with positive diagonal; entries right of
/// the diagonal lie in `[0, pivot of their column)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Hnf {
    rows: Vec<Vec<i128>>,
}

impl Hnf {
    pub fn from_diagonal(diag: &[i128]) -> Self {
        let k = diag.len();
        let rows = (0..k)
            .map(|i| {
                let mut r = vec![0; k];
                r[i] = diag[i];
                r
            })
            .collect();
        Hnf { rows }
    }

    /// `rows` must already be upper triangular with positive diagonal.
    pub fn from_upper(rows: Vec<Vec<i128>>) -> Result<Self> {
        debug_assert!(rows.iter().enumerate().all(|(i, r)| r[i] > 0 && r[..i].iter().all(|&x| x == 0)));
        let mut h = Hnf { rows };
        h.reduce_all()?;
        Ok(h)
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i128>] {
        &self.rows
    }

    /// Reduces `v[from..]` into the fundamental box of the rows `from..`.
    fn reduce_tail(&self, v: &mut [i128], from: usize) -> Result<()> {
        for j in from..self.dim() {
            let q = v[j].div_euclid(self.rows[j][j]);
            if q != 0 {
                axpy(v, q, &self.rows[j], j)?;
            }
        }
        Ok(())
    }

    fn reduce_all(&mut self) -> Result<()> {
        for i in (0..self.dim()).rev() {
            let mut row = std::mem::take(&mut self.rows[i]);
            self.reduce_tail(&mut row, i + 1)?;
            self.rows[i] = row;
        }
        Ok(())
    }

    /// Adds `v` to the lattice.
    pub fn insert(&mut self, v: &[i128]) -> Result<()> {
        let k = self.dim();
        debug_assert_eq!(v.len(), k);
        let mut v = v.to_vec();
        for i in 0..k {
            let pivot = self.rows[i][i];
            let q = v[i].div_euclid(pivot);
            if q != 0 {
                axpy(&mut v, q, &self.rows[i], i)?;
            }
            if v[i] == 0 {
                continue;
            }
            let (g, s, t) = ext_gcd(pivot, v[i]);
            let a = pivot / g;
            let b = v[i] / g;
            let row = std::mem::take(&mut self.rows[i]);
            let mut new_row = vec![0i128; k];
            let mut new_v = vec![0i128; k];
            for j in i..k {
                let x = s.checked_mul(row[j]).ok_or_else(overflow)?;
                let y = t.checked_mul(v[j]).ok_or_else(overflow)?;
                new_row[j] = x.checked_add(y).ok_or_else(overflow)?;
                let x = a.checked_mul(v[j]).ok_or_else(overflow)?;
                let y = b.checked_mul(row[j]).ok_or_else(overflow)?;
                new_v[j] = x.checked_sub(y).ok_or_else(overflow)?;
            }
            debug_assert_eq!(new_v[i], 0);
            self.reduce_tail(&mut new_row, i + 1)?;
            self.reduce_tail(&mut new_v, i + 1)?;
            self.rows[i] = new_row;
            v = new_v;
        }
        self.reduce_all()
    }

    pub fn contains(&self, v: &[i128]) -> bool {
        let mut v = v.to_vec();
        for i in 0..self.dim() {
            let pivot = self.rows[i][i];
            if v[i].rem_euclid(pivot) != 0 {
                return false;
            }
            let q = v[i] / pivot;
            if q != 0 && axpy(&mut v, q, &self.rows[i], i).is_err() {
                return false;
            }
        }
        true
    }

    /// Index of the lattice in `Z^k`.
    #[cfg(test)]
    pub fn covolume(&self) -> u128 {
        (0..self.dim()).map(|i| self.rows[i][i] as u128).product()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_combines_pivots() {
        let mut h = Hnf::from_diagonal(&[12]);
        h.insert(&[8]).unwrap();
        assert_eq!(h.rows(), &[vec![4]]);
        assert!(h.contains(&[-4]));
        assert!(!h.contains(&[6]));
    }

    #[test]
    fn canonical_regardless_of_order() {
        let mut a = Hnf::from_diagonal(&[2, 4]);
        a.insert(&[1, 2]).unwrap();
        a.insert(&[0, 2]).unwrap();
        let mut b = Hnf::from_diagonal(&[2, 4]);
        b.insert(&[1, 0]).unwrap();
        b.insert(&[1, 2]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.covolume(), 2);
    }
}
