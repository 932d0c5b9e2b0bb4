//! Exact sparse linear algebra over the rationals: echelon reduction with a
//! pivot dictionary, rank, nullspace, and small dense inversion. Columns are
//! always processed in their given order, so pivot choices are deterministic.

use num_traits::{One, Zero};

use crate::scalar::{self, Scalar};

/// Sparse row: strictly increasing column indices with nonzero entries.
pub type SparseRow = Vec<(usize, Scalar)>;

fn axpy(dst: &SparseRow, src: &SparseRow, factor: &Scalar) -> SparseRow {
    // dst - factor * src, merged
    let mut out = Vec::with_capacity(dst.len() + src.len());
    let mut i = 0;
    let mut j = 0;
    while i < dst.len() || j < src.len() {
        if j >= src.len() || (i < dst.len() && dst[i].0 < src[j].0) {
            out.push(dst[i].clone());
            i += 1;
        } else if i >= dst.len() || src[j].0 < dst[i].0 {
            let v = -(&src[j].1 * factor);
            if !v.is_zero() {
                out.push((src[j].0, v));
            }
            j += 1;
        } else {
            let v = &dst[i].1 - &(&src[j].1 * factor);
            if !v.is_zero() {
                out.push((dst[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Row echelon structure built incrementally: `pivots[c]` is the index of the
/// normalized row whose leading column is `c`.
pub struct Echelon {
    ncols: usize,
    rows: Vec<SparseRow>,
    pivot_of_col: Vec<Option<usize>>,
    pivot_cols: Vec<usize>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: Vec::new(), pivot_of_col: vec![None; ncols], pivot_cols: Vec::new() }
    }

    /// Reduce a row against the current pivots; if a nonzero remainder is
    /// left, normalize it and record it as a new pivot row. Returns whether
    /// the rank grew.
    pub fn insert(&mut self, mut row: SparseRow) -> bool {
        loop {
            let Some(&(lead, _)) = row.first() else { return false };
            match self.pivot_of_col[lead] {
                Some(r) => {
                    let factor = row[0].1.clone();
                    row = axpy(&row, &self.rows[r], &factor);
                }
                None => {
                    let inv = row[0].1.clone();
                    if !inv.is_one() {
                        for (_, v) in row.iter_mut() {
                            *v = &*v / &inv;
                        }
                    }
                    self.pivot_of_col[lead] = Some(self.rows.len());
                    self.pivot_cols.push(lead);
                    self.rows.push(row);
                    return true;
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Fully reduce pivot rows against each other (Gauss-Jordan), then read
    /// off one nullspace basis vector per free column. Basis vectors come out
    /// in increasing free-column order.
    pub fn nullspace(&mut self) -> Vec<Vec<(usize, Scalar)>> {
        // back-substitution: eliminate later pivots from earlier rows
        let order: Vec<usize> = {
            let mut cols = self.pivot_cols.clone();
            cols.sort_unstable();
            cols
        };
        for (k, &c) in order.iter().enumerate().rev() {
            let src = self.pivot_of_col[c].unwrap();
            let src_row = self.rows[src].clone();
            for &c2 in &order[..k] {
                let dst = self.pivot_of_col[c2].unwrap();
                let coeff = self.rows[dst]
                    .iter()
                    .find(|(col, _)| *col == c)
                    .map(|(_, v)| v.clone());
                if let Some(coeff) = coeff {
                    self.rows[dst] = axpy(&self.rows[dst], &src_row, &coeff);
                }
            }
        }
        let mut basis = Vec::new();
        for free in 0..self.ncols {
            if self.pivot_of_col[free].is_some() {
                continue;
            }
            let mut v: Vec<(usize, Scalar)> = vec![(free, scalar::one())];
            for &pc in &order {
                let r = self.pivot_of_col[pc].unwrap();
                if let Some((_, coeff)) = self.rows[r].iter().find(|(col, _)| *col == free) {
                    v.push((pc, -coeff.clone()));
                }
            }
            v.sort_by_key(|(c, _)| *c);
            basis.push(v);
        }
        basis
    }
}

/// Rank of a sparse matrix given as rows.
pub fn rank(ncols: usize, rows: impl IntoIterator<Item = SparseRow>) -> usize {
    let mut ech = Echelon::new(ncols);
    for row in rows {
        ech.insert(row);
    }
    ech.rank()
}

/// Dense inverse over the rationals; None when singular.
pub fn invert_dense(mat: &[Vec<Scalar>]) -> Option<Vec<Vec<Scalar>>> {
    let d = mat.len();
    let mut a: Vec<Vec<Scalar>> = mat.to_vec();
    let mut inv: Vec<Vec<Scalar>> = (0..d)
        .map(|i| (0..d).map(|j| if i == j { scalar::one() } else { scalar::zero() }).collect())
        .collect();
    for col in 0..d {
        let pivot = (col..d).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..d {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..d {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..d {
                let av = &a[col][j] * &f;
                a[r][j] = &a[r][j] - &av;
                let iv = &inv[col][j] * &f;
                inv[r][j] = &inv[r][j] - &iv;
            }
        }
    }
    Some(inv)
}

/// Dense determinant over the rationals.
pub fn det_dense(mat: &[Vec<Scalar>]) -> Scalar {
    let d = mat.len();
    let mut a: Vec<Vec<Scalar>> = mat.to_vec();
    let mut det = scalar::one();
    for col in 0..d {
        let Some(pivot) = (col..d).find(|&r| !a[r][col].is_zero()) else {
            return scalar::zero();
        };
        if pivot != col {
            a.swap(col, pivot);
            det = -det;
        }
        det *= &a[col][col];
        let p = a[col][col].clone();
        for r in col + 1..d {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &p;
            for j in col..d {
                let v = &a[col][j] * &f;
                a[r][j] = &a[r][j] - &v;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn row(entries: &[(usize, i64)]) -> SparseRow {
        entries.iter().map(|&(c, v)| (c, int(v))).collect()
    }

    #[test]
    fn rank_and_nullspace() {
        let mut ech = Echelon::new(3);
        ech.insert(row(&[(0, 1), (1, 2), (2, 3)]));
        ech.insert(row(&[(0, 2), (1, 4), (2, 6)]));
        ech.insert(row(&[(1, 1), (2, 1)]));
        assert_eq!(ech.rank(), 2);
        let ns = ech.nullspace();
        assert_eq!(ns.len(), 1);
        // check the vector is in the kernel of the original rows
        let v = &ns[0];
        let dot = |r: &SparseRow| -> Scalar {
            let mut s = scalar::zero();
            for (c, a) in r {
                if let Some((_, b)) = v.iter().find(|(vc, _)| vc == c) {
                    s += a * b;
                }
            }
            s
        };
        for r in [row(&[(0, 1), (1, 2), (2, 3)]), row(&[(1, 1), (2, 1)])] {
            assert!(dot(&r).is_zero());
        }
    }

    #[test]
    fn dense_inverse() {
        let m = vec![vec![int(2), int(1)], vec![int(1), int(1)]];
        let inv = invert_dense(&m).unwrap();
        assert_eq!(inv[0][0], int(1));
        assert_eq!(inv[0][1], int(-1));
        assert_eq!(inv[1][0], int(-1));
        assert_eq!(inv[1][1], int(2));
        let singular = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert!(invert_dense(&singular).is_none());
    }

    #[test]
    fn dense_determinant() {
        let m = vec![vec![int(2), int(1)], vec![int(1), int(1)]];
        assert_eq!(det_dense(&m), int(1));
        let m = vec![vec![rat(1, 2), int(0)], vec![int(7), int(4)]];
        assert_eq!(det_dense(&m), int(2));
        let m = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert!(det_dense(&m).is_zero());
    }
}
