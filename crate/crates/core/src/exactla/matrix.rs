use super::scalar::{Field, Scalar};

/// Dense matrix over a single exact field. Entries are stored row-major:
/// row r, column c sits at index c + r * cols.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub field: Field,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize, field: Field) -> Matrix {
        Matrix {
            rows,
            cols,
            field,
            data: vec![Scalar::zero(field); rows * cols],
        }
    }

    pub fn identity(n: usize, field: Field) -> Matrix {
        let mut m = Matrix::zero(n, n, field);
        for i in 0..n {
            m.set(i, i, Scalar::one(field));
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, field: Field, f: impl Fn(usize, usize) -> Scalar) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let s = f(r, c);
                debug_assert!(s.field() == field);
                data.push(s);
            }
        }
        Matrix { rows, cols, field, data }
    }

    /// Builds from rows of i64 entries; convenient in tests.
    pub fn from_i64(rows: &[&[i64]], field: Field) -> Matrix {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        Matrix::from_fn(r, c, field, |i, j| Scalar::from_i64(rows[i][j], field))
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> &Scalar {
        &self.data[c + r * self.cols]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[c + r * self.cols] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|s| s.is_zero())
    }

    pub fn col(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn set_col(&mut self, c: usize, v: &[Scalar]) {
        assert_eq!(v.len(), self.rows);
        for r in 0..self.rows {
            self.set(r, c, v[r].clone());
        }
    }

    pub fn from_cols(rows: usize, cols: &[Vec<Scalar>], field: Field) -> Matrix {
        let mut m = Matrix::zero(rows, cols.len(), field);
        for (c, v) in cols.iter().enumerate() {
            m.set_col(c, v);
        }
        m
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, self.field, |r, c| self.at(c, r).clone())
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, self.field, |r, c| {
            self.at(r, c).add(other.at(r, c))
        })
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, self.field, |r, c| {
            self.at(r, c).sub(other.at(r, c))
        })
    }

    pub fn neg(&self) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, self.field, |r, c| self.at(r, c).neg())
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, self.field, |r, c| self.at(r, c).mul(s))
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Matrix::zero(self.rows, other.cols, self.field);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.at(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.at(r, c).add(&a.mul(b));
                    out.set(r, c, cur);
                }
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for r in 0..self.rows {
            for c in 0..self.cols {
                let e = self.at(r, c);
                if (r == c && !e.is_one()) || (r != c && !e.is_zero()) {
                    return false;
                }
            }
        }
        true
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![Scalar::zero(self.field); self.rows];
        for r in 0..self.rows {
            let mut acc = Scalar::zero(self.field);
            for c in 0..self.cols {
                let a = self.at(r, c);
                if a.is_zero() || v[c].is_zero() {
                    continue;
                }
                acc = acc.add(&a.mul(&v[c]));
            }
            out[r] = acc;
        }
        out
    }

    /// [self | other] side by side.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        Matrix::from_fn(self.rows, self.cols + other.cols, self.field, |r, c| {
            if c < self.cols {
                self.at(r, c).clone()
            } else {
                other.at(r, c - self.cols).clone()
            }
        })
    }

    /// self stacked on top of other.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        Matrix::from_fn(self.rows + other.rows, self.cols, self.field, |r, c| {
            if r < self.rows {
                self.at(r, c).clone()
            } else {
                other.at(r - self.rows, c).clone()
            }
        })
    }

    pub fn submatrix_cols(&self, cols: &[usize]) -> Matrix {
        Matrix::from_fn(self.rows, cols.len(), self.field, |r, c| {
            self.at(r, cols[c]).clone()
        })
    }

    /// Reduced row-echelon form with pivot column indices. Pivot choice is the
    /// first nonzero entry in the current column (deterministic).
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    pub(crate) fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row >= self.rows {
                break;
            }
            // first nonzero at or below `row`
            let mut pr = None;
            for r in row..self.rows {
                if !self.at(r, col).is_zero() {
                    pr = Some(r);
                    break;
                }
            }
            let pr = match pr {
                Some(r) => r,
                None => continue,
            };
            if pr != row {
                for c in 0..self.cols {
                    self.data.swap(c + pr * self.cols, c + row * self.cols);
                }
            }
            let inv = self.at(row, col).inv().expect("nonzero pivot");
            if !inv.is_one() {
                for c in col..self.cols {
                    let v = self.at(row, c).mul(&inv);
                    self.set(row, c, v);
                }
            }
            for r in 0..self.rows {
                if r == row || self.at(r, col).is_zero() {
                    continue;
                }
                let factor = self.at(r, col).clone();
                for c in col..self.cols {
                    let v = self.at(r, c).sub(&factor.mul(self.at(row, c)));
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space as columns of the returned matrix
    /// (cols = nullity = cols(self) - rank).
    pub fn kernel_basis(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zero(self.cols, free.len(), self.field);
        for (k, &fc) in free.iter().enumerate() {
            out.set(fc, k, Scalar::one(self.field));
            for (prow, &pc) in pivots.iter().enumerate() {
                out.set(pc, k, r.at(prow, fc).neg());
            }
        }
        out
    }

    /// Any X with self * X = b, or None.
    pub fn solve(&self, b: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, b.rows, "solve: row mismatch");
        let aug = self.hstack(b);
        let (r, pivots) = aug.rref();
        // inconsistent if a pivot lands in the b block
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Matrix::zero(self.cols, b.cols, self.field);
        for (prow, &pc) in pivots.iter().enumerate() {
            for c in 0..b.cols {
                x.set(pc, c, r.at(prow, self.cols + c).clone());
            }
        }
        Some(x)
    }

    pub fn invert(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols, "invert: matrix not square");
        let aug = self.hstack(&Matrix::identity(self.rows, self.field));
        let (r, pivots) = aug.rref();
        if pivots.len() != self.rows || pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        Some(Matrix::from_fn(self.rows, self.cols, self.field, |i, j| {
            r.at(i, self.cols + j).clone()
        }))
    }

    /// Basis for the column space: the columns of self at the pivot positions
    /// of rref (so basis vectors are actual columns of the input).
    pub fn column_space_pivots(&self) -> Vec<usize> {
        self.rref().1
    }

    pub fn entries(&self) -> impl Iterator<Item = &Scalar> {
        self.data.iter()
    }
}
