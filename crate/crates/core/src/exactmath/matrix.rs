use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Ambient, ExactError, Poly, Rational};

/// Dense matrix over ℚ, stored row-major. All arithmetic is exact.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Rational>>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![vec![Rational::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RationalMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = Rational::one();
        }
        m
    }

    pub fn from_rows(data: Vec<Vec<Rational>>) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, Vec::len);
        assert!(data.iter().all(|r| r.len() == cols), "ragged rows");
        RationalMatrix { rows, cols, data }
    }

    pub fn from_fn<F>(rows: usize, cols: usize, mut f: F) -> Self
    where
        F: FnMut(usize, usize) -> Rational,
    {
        RationalMatrix {
            rows,
            cols,
            data: (0..rows).map(|i| (0..cols).map(|j| f(i, j)).collect()).collect(),
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<Rational>]) -> Self {
        let ncols = cols.len();
        let nrows = cols.first().map_or(0, Vec::len);
        assert!(cols.iter().all(|c| c.len() == nrows), "ragged columns");
        RationalMatrix::from_fn(nrows, ncols, |i, j| cols[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.data[i][j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i]
    }

    /// Entries in row-major order.
    pub fn flatten(&self) -> Vec<Rational> {
        self.data.iter().flatten().cloned().collect()
    }

    pub fn transpose(&self) -> RationalMatrix {
        RationalMatrix::from_fn(self.cols, self.rows, |i, j| self.data[j][i].clone())
    }

    pub fn trace(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "trace of a non-square matrix");
        (0..self.rows).map(|i| self.data[i][i].clone()).sum()
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.data[i][j] == self.data[j][i]))
    }

    pub fn mul(&self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        RationalMatrix::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).map(|k| &self.data[i][k] * &rhs.data[k][j]).sum()
        })
    }

    pub fn add(&self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        RationalMatrix::from_fn(self.rows, self.cols, |i, j| &self.data[i][j] + &rhs.data[i][j])
    }

    pub fn sub(&self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        RationalMatrix::from_fn(self.rows, self.cols, |i, j| &self.data[i][j] - &rhs.data[i][j])
    }

    pub fn scale(&self, c: &Rational) -> RationalMatrix {
        RationalMatrix::from_fn(self.rows, self.cols, |i, j| &self.data[i][j] * c)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|k| &self.data[i][k] * &v[k]).sum())
            .collect()
    }

    /// Stacks `self` on top of `below` (column counts must agree).
    pub fn vstack(&self, below: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, below.cols, "column count mismatch in vstack");
        let mut data = self.data.clone();
        data.extend(below.data.iter().cloned());
        RationalMatrix::from_rows(data)
    }

    /// Exact rank via fraction-free (Bareiss) elimination. Each row is first
    /// scaled by its common denominator, which changes nothing about rank and
    /// keeps all intermediate arithmetic in ℤ.
    pub fn rank(&self) -> usize {
        let mut a: Vec<Vec<BigInt>> = self
            .data
            .iter()
            .map(|row| {
                let mut lcm = BigInt::one();
                for x in row {
                    lcm = num_integer::lcm(lcm, x.denom().clone());
                }
                row.iter()
                    .map(|x| x.numer() * (&lcm / x.denom()))
                    .collect()
            })
            .collect();

        let rows = self.rows;
        let cols = self.cols;
        let mut pivot_row = 0usize;
        let mut prev = BigInt::one();
        for col in 0..cols {
            if pivot_row == rows {
                break;
            }
            let Some(src) = (pivot_row..rows).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(pivot_row, src);
            for r in pivot_row + 1..rows {
                for c in col + 1..cols {
                    let num = &a[pivot_row][col] * &a[r][c] - &a[r][col] * &a[pivot_row][c];
                    a[r][c] = num / &prev;
                }
                a[r][col] = BigInt::zero();
            }
            prev = a[pivot_row][col].clone();
            pivot_row += 1;
        }
        pivot_row
    }

    /// Exact inverse; `None` when singular.
    pub fn inverse(&self) -> Option<RationalMatrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut a = self.data.clone();
        let mut inv = RationalMatrix::identity(n).data;
        for col in 0..n {
            let src = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, src);
            inv.swap(col, src);
            let pivot = a[col][col].clone();
            let pinv = pivot.recip().expect("pivot is nonzero");
            for c in 0..n {
                a[col][c] *= &pinv;
                inv[col][c] *= &pinv;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].clone();
                for c in 0..n {
                    let t = &factor * &a[col][c];
                    a[r][c] -= &t;
                    let t = &factor * &inv[col][c];
                    inv[r][c] -= &t;
                }
            }
        }
        Some(RationalMatrix::from_rows(inv))
    }

    /// Basis of the right null space, one vector per free column of the
    /// reduced row echelon form, in ascending free-column order.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let mut a = self.data.clone();
        let rows = self.rows;
        let cols = self.cols;
        let mut pivots: Vec<usize> = Vec::new();
        let mut pivot_row = 0usize;
        for col in 0..cols {
            if pivot_row == rows {
                break;
            }
            let Some(src) = (pivot_row..rows).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(pivot_row, src);
            let pinv = a[pivot_row][col].recip().expect("pivot is nonzero");
            for c in col..cols {
                a[pivot_row][c] *= &pinv;
            }
            for r in 0..rows {
                if r == pivot_row || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].clone();
                for c in col..cols {
                    let t = &factor * &a[pivot_row][c];
                    a[r][c] -= &t;
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }

        let mut basis = Vec::new();
        for free in 0..cols {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = vec![Rational::zero(); cols];
            v[free] = Rational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -&a[r][free];
            }
            basis.push(v);
        }
        basis
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for row in &self.data {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Dense matrix of polynomials sharing one ambient.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    ambient: Ambient,
    rows: usize,
    cols: usize,
    data: Vec<Vec<Poly>>,
}

impl PolyMatrix {
    pub fn from_fn<F>(ambient: &Ambient, rows: usize, cols: usize, mut f: F) -> Self
    where
        F: FnMut(usize, usize) -> Poly,
    {
        let data: Vec<Vec<Poly>> = (0..rows)
            .map(|i| (0..cols).map(|j| f(i, j)).collect())
            .collect();
        for row in &data {
            for p in row {
                assert!(p.ambient() == ambient, "entry ambient mismatch");
            }
        }
        PolyMatrix { ambient: ambient.clone(), rows, cols, data }
    }

    /// Constant matrix of scalars viewed as polynomials.
    pub fn from_rational(ambient: &Ambient, m: &RationalMatrix) -> Self {
        PolyMatrix::from_fn(ambient, m.rows(), m.cols(), |i, j| {
            Poly::constant(ambient, m.get(i, j).clone())
        })
    }

    /// Matrix whose (i, j) entry is the ambient variable at
    /// `offset + i*cols + j` (a row-major block of coordinates).
    pub fn of_variables(ambient: &Ambient, offset: usize, rows: usize, cols: usize) -> Self {
        assert!(offset + rows * cols <= ambient.len(), "variable block out of range");
        PolyMatrix::from_fn(ambient, rows, cols, |i, j| {
            Poly::variable(ambient, offset + i * cols + j)
        })
    }

    pub fn identity(ambient: &Ambient, n: usize) -> Self {
        PolyMatrix::from_fn(ambient, n, n, |i, j| {
            if i == j {
                Poly::one(ambient)
            } else {
                Poly::zero(ambient)
            }
        })
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.data[i][j]
    }

    pub fn transpose(&self) -> PolyMatrix {
        PolyMatrix::from_fn(&self.ambient, self.cols, self.rows, |i, j| self.data[j][i].clone())
    }

    pub fn trace(&self) -> Poly {
        assert_eq!(self.rows, self.cols, "trace of a non-square matrix");
        let mut t = Poly::zero(&self.ambient);
        for i in 0..self.rows {
            t = &t + &self.data[i][i];
        }
        t
    }

    pub fn mul(&self, rhs: &PolyMatrix) -> PolyMatrix {
        assert!(self.ambient == rhs.ambient, "ambient mismatch in matrix product");
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        PolyMatrix::from_fn(&self.ambient, self.rows, rhs.cols, |i, j| {
            let mut acc = Poly::zero(&self.ambient);
            for k in 0..self.cols {
                acc = &acc + &(&self.data[i][k] * &rhs.data[k][j]);
            }
            acc
        })
    }

    pub fn add(&self, rhs: &PolyMatrix) -> PolyMatrix {
        assert!(self.ambient == rhs.ambient);
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        PolyMatrix::from_fn(&self.ambient, self.rows, self.cols, |i, j| {
            &self.data[i][j] + &rhs.data[i][j]
        })
    }

    pub fn sub(&self, rhs: &PolyMatrix) -> PolyMatrix {
        assert!(self.ambient == rhs.ambient);
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        PolyMatrix::from_fn(&self.ambient, self.rows, self.cols, |i, j| {
            &self.data[i][j] - &rhs.data[i][j]
        })
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = &Poly> {
        self.data.iter().flatten()
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<RationalMatrix, ExactError> {
        let mut out = RationalMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.data[i][j].evaluate(point)?);
            }
        }
        Ok(out)
    }

    /// Laplace expansion along the first row. Intended for the small minors
    /// that show up in rank conditions, not for large symbolic determinants.
    pub fn determinant(&self) -> Poly {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        self.det_of(&(0..self.rows).collect::<Vec<_>>(), &(0..self.cols).collect::<Vec<_>>())
    }

    fn det_of(&self, rows: &[usize], cols: &[usize]) -> Poly {
        debug_assert_eq!(rows.len(), cols.len());
        match rows.len() {
            0 => Poly::one(&self.ambient),
            1 => self.data[rows[0]][cols[0]].clone(),
            2 => {
                let a = &self.data[rows[0]][cols[0]] * &self.data[rows[1]][cols[1]];
                let b = &self.data[rows[0]][cols[1]] * &self.data[rows[1]][cols[0]];
                &a - &b
            }
            _ => {
                let mut det = Poly::zero(&self.ambient);
                let sub_rows = &rows[1..];
                for (k, &c) in cols.iter().enumerate() {
                    let entry = &self.data[rows[0]][c];
                    if entry.is_zero() {
                        continue;
                    }
                    let rest: Vec<usize> =
                        cols.iter().copied().filter(|&x| x != c).collect();
                    let cofactor = self.det_of(sub_rows, &rest);
                    let signed = if k % 2 == 0 { cofactor } else { -cofactor };
                    det = &det + &(entry * &signed);
                }
                det
            }
        }
    }

    /// All `size`-minors, row index sets and column index sets each in
    /// lexicographic order (row sets outermost). Identically zero minors are
    /// dropped.
    pub fn minors(&self, size: usize) -> Result<Vec<Poly>, ExactError> {
        if size == 0 || size > self.rows || size > self.cols {
            return Err(ExactError::InvalidMinorSize {
                size,
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut out = Vec::new();
        for rset in combinations(self.rows, size) {
            for cset in combinations(self.cols, size) {
                let d = self.det_of(&rset, &cset);
                if !d.is_zero() {
                    out.push(d);
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for row in &self.data {
            let cells: Vec<String> = row.iter().map(|p| p.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// All k-element subsets of {0, .., n-1} in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // advance to the lexicographic successor
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}
