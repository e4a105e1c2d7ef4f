//! Dense matrices over a [`Field`] and Gauss-Jordan elimination.

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<FieldElement>,
}

/// Result of [`linsolve`]: a particular solution (absent when the system is
/// inconsistent) and a basis of the kernel of the coefficient matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: Option<Vec<FieldElement>>,
    pub nullspace: Vec<Vec<FieldElement>>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, entries: vec![FieldElement::default(); rows * cols] }
    }

    pub fn identity(n: usize, k: &Field) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, k.one());
        }
        m
    }

    /// Builds from row vectors; all rows must have `cols` entries.
    pub fn from_rows(rows: Vec<Vec<FieldElement>>, cols: usize) -> Matrix {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let n = rows.len();
        Matrix { rows: n, cols, entries: rows.into_iter().flatten().collect() }
    }

    pub fn from_ints(k: &Field, rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&n| k.from_int(n)).collect()).collect(),
            cols,
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<FieldElement>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix, k: &Field) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for c in 0..rhs.cols {
                let v = (0..self.cols)
                    .fold(k.zero(), |acc, i| k.add(acc, k.mul(self.get(r, i), rhs.get(i, c))));
                out.set(r, c, v);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[FieldElement], k: &Field) -> Vec<FieldElement> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(v).fold(k.zero(), |acc, (&a, &b)| k.add(acc, k.mul(a, b))))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.value() == 0)
    }

    /// Columns reordered so that new column i is old column `perm[i]`.
    pub fn permute_columns(&self, perm: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.rows, perm.len());
        for r in 0..self.rows {
            for (i, &c) in perm.iter().enumerate() {
                out.set(r, i, self.get(r, c));
            }
        }
        out
    }

    /// Reduced row echelon form and the pivot columns. The pivot for each
    /// column is the first remaining row with a nonzero entry there.
    pub fn rref(&self, k: &Field) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| m.get(r, col).value() != 0) else {
                continue;
            };
            m.swap_rows(row, pr);
            let inv = k.inv(m.get(row, col)).expect("pivot is nonzero");
            for c in col..m.cols {
                m.set(row, c, k.mul(m.get(row, c), inv));
            }
            for r in 0..m.rows {
                let factor = m.get(r, col);
                if r == row || factor.value() == 0 {
                    continue;
                }
                for c in col..m.cols {
                    let v = k.sub(m.get(r, c), k.mul(factor, m.get(row, c)));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self, k: &Field) -> usize {
        self.rref(k).1.len()
    }

    pub fn inverse(&self, k: &Field) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::SingularSystem("non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n + r, k.one());
        }
        let (red, pivots) = aug.rref(k);
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::SingularSystem("matrix is not invertible".into()));
        }
        let mut inv = Matrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, red.get(r, n + c));
            }
        }
        Ok(inv)
    }

    /// Tab-separated entries, one row per line, each line newline-terminated.
    pub fn to_tsv(&self, k: &Field) -> String {
        let mut s = String::new();
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(|&e| k.render(e)).collect();
            s.push_str(&line.join("\t"));
            s.push('\n');
        }
        s
    }
}

/// Solves `a·x = rhs` by Gauss-Jordan elimination.
///
/// The particular solution sets every free variable to zero. Kernel vectors
/// are in canonical form: one per free variable, with that variable 1 and the
/// other free variables 0.
pub fn linsolve(k: &Field, a: &Matrix, rhs: &[FieldElement]) -> Solution {
    assert_eq!(a.rows(), rhs.len(), "rhs length must match rows");
    let n = a.cols();
    let mut aug = Matrix::zeros(a.rows(), n + 1);
    for r in 0..a.rows() {
        for c in 0..n {
            aug.set(r, c, a.get(r, c));
        }
        aug.set(r, n, rhs[r]);
    }
    let (red, pivots) = aug.rref(k);
    let consistent = pivots.last() != Some(&n);
    let pivots: Vec<usize> = pivots.into_iter().filter(|&c| c < n).collect();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();

    let particular = consistent.then(|| {
        let mut x = vec![k.zero(); n];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = red.get(row, n);
        }
        x
    });
    let nullspace = free
        .iter()
        .map(|&fc| {
            let mut v = vec![k.zero(); n];
            v[fc] = k.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = k.neg(red.get(row, fc));
            }
            v
        })
        .collect();
    Solution { particular, nullspace }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    #[test]
    fn identity_system() {
        let k = gf(7);
        let rhs: Vec<_> = [3, 5, 6].iter().map(|&n| k.from_int(n)).collect();
        let sol = linsolve(&k, &Matrix::identity(3, &k), &rhs);
        assert_eq!(sol.particular, Some(rhs));
        assert!(sol.nullspace.is_empty());
    }

    #[test]
    fn underdetermined_canonical_kernel() {
        let k = gf(5);
        let a = Matrix::from_ints(&k, &[&[1, 1]]);
        let sol = linsolve(&k, &a, &[k.zero()]);
        assert_eq!(sol.particular, Some(vec![k.zero(), k.zero()]));
        assert_eq!(sol.nullspace, vec![vec![k.from_int(4), k.from_int(1)]]);
    }

    #[test]
    fn inconsistent_system() {
        let k = gf(5);
        let a = Matrix::from_ints(&k, &[&[1, 1], &[2, 2]]);
        let sol = linsolve(&k, &a, &[k.one(), k.one()]);
        assert_eq!(sol.particular, None);
        assert_eq!(sol.nullspace.len(), 1);
    }

    #[test]
    fn singular_inverse() {
        let k = gf(5);
        let a = Matrix::from_ints(&k, &[&[1, 2], &[2, 4]]);
        assert!(matches!(a.inverse(&k), Err(Error::SingularSystem(_))));
    }

    #[test]
    fn tsv_rendering() {
        let k = gf(31);
        let m = Matrix::from_ints(&k, &[&[16, 14, 1, 0], &[7, 23, 0, 1]]);
        assert_eq!(m.to_tsv(&k), "16\t14\t1\t0\n7\t23\t0\t1\n");
    }

    proptest! {
        #[test]
        fn solutions_satisfy_system(
            p in prop::sample::select(vec![2u64, 3, 5, 13]),
            rows in 1usize..5,
            cols in 1usize..6,
            seed in proptest::collection::vec(0i64..13, 36),
        ) {
            let k = gf(p);
            let a = Matrix::from_rows(
                (0..rows).map(|r| (0..cols).map(|c| k.from_int(seed[r * cols + c])).collect()).collect(),
                cols,
            );
            let rhs: Vec<_> = (0..rows).map(|r| k.from_int(seed[30 + r])).collect();
            let sol = linsolve(&k, &a, &rhs);
            if let Some(x) = &sol.particular {
                prop_assert_eq!(a.mul_vec(x, &k), rhs.clone());
            }
            for v in &sol.nullspace {
                prop_assert!(a.mul_vec(v, &k).iter().all(|e| e.value() == 0));
            }
            prop_assert_eq!(sol.nullspace.len(), cols - a.rank(&k));
            if rows == cols {
                if let Ok(inv) = a.inverse(&k) {
                    prop_assert_eq!(inv.mul(&a, &k), Matrix::identity(rows, &k));
                }
            }
        }
    }
}
