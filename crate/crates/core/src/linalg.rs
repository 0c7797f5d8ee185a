//! Exact linear algebra over arbitrary-precision rationals.

use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

/// Reduced row echelon form of a row set.
#[derive(Debug, Clone, PartialEq)]
pub struct Rref {
    /// Nonzero rows only, each with a leading 1 at the matching pivot.
    pub rows: Vec<Vec<Rational>>,
    /// Strictly increasing pivot columns.
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Row-space membership by reducing `v` against the basis.
    pub fn contains(&self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.ncols, "vector length must match column count");
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, r) in v.iter_mut().zip(row).skip(p) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
        }
        v.iter().all(Zero::is_zero)
    }

    /// Whether the unit vector of `col` lies in the row space. In reduced
    /// form this holds iff `col` is a pivot whose row has no other nonzero.
    pub fn contains_unit(&self, col: usize) -> bool {
        self.pivot_row_of(col)
            .map(|i| {
                self.rows[i]
                    .iter()
                    .enumerate()
                    .all(|(j, x)| j == col || x.is_zero())
            })
            .unwrap_or(false)
    }

    pub fn pivot_row_of(&self, col: usize) -> Option<usize> {
        self.pivots.binary_search(&col).ok()
    }
}

/// Gauss-Jordan elimination; rows may be ragged-free only.
pub fn rref(rows: &[Vec<Rational>], ncols: usize) -> Rref {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    assert!(
        m.iter().all(|r| r.len() == ncols),
        "rows must have ncols entries"
    );
    let mut pivots = Vec::new();
    let mut lead = 0;
    for col in 0..ncols {
        if lead == m.len() {
            break;
        }
        let Some(pr) = (lead..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(lead, pr);
        let inv = m[lead][col].recip();
        if !inv.is_one() {
            for x in m[lead].iter_mut().skip(col) {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
        }
        let pivot_row = m[lead].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == lead || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(col);
        lead += 1;
    }
    m.truncate(lead);
    Rref {
        rows: m,
        pivots,
        ncols,
    }
}

pub fn rank(rows: &[Vec<Rational>], ncols: usize) -> usize {
    rref(rows, ncols).rank()
}

/// Outcome of solving `A x = b` for the coordinates that are pinned down.
#[derive(Debug, Clone, PartialEq)]
pub enum Solution {
    /// Values of every uniquely determined coordinate.
    Determined(Vec<(usize, Rational)>),
    Inconsistent,
}

/// Solves `A x = b` exactly and reports each coordinate that every solution
/// agrees on.
pub fn solve_determined(rows: &[Vec<Rational>], ncols: usize, rhs: &[Rational]) -> Solution {
    assert_eq!(rows.len(), rhs.len(), "one right-hand side per row");
    let augmented: Vec<Vec<Rational>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut r = r.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let red = rref(&augmented, ncols + 1);
    if red.pivots.last() == Some(&ncols) {
        return Solution::Inconsistent;
    }
    let mut out = Vec::new();
    for (row, &p) in red.rows.iter().zip(&red.pivots) {
        if row[..ncols]
            .iter()
            .enumerate()
            .all(|(j, x)| j == p || x.is_zero())
        {
            out.push((p, row[ncols].clone()));
        }
    }
    Solution::Determined(out)
}
