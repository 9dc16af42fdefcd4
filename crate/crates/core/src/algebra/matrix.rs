use std::fmt;

use super::error::AlgebraError;
use super::field::Coefficient;
use super::geom::GeomPoly;
use super::ratfn::RatFn;
use super::rational::ParamRational;

/// Commutative ring interface used by the matrix routines.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn ring_is_zero(&self) -> bool;
    fn ring_add(&self, rhs: &Self) -> Self;
    fn ring_neg(&self) -> Self;
    fn ring_mul(&self, rhs: &Self) -> Self;

    fn ring_sub(&self, rhs: &Self) -> Self {
        self.ring_add(&rhs.ring_neg())
    }
}

pub trait Field: Ring {
    fn field_inv(&self) -> Option<Self>;
}

impl Ring for GeomPoly {
    fn zero_like(&self) -> Self {
        GeomPoly::zero(self.table())
    }
    fn one_like(&self) -> Self {
        GeomPoly::one(self.table())
    }
    fn ring_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn ring_add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn ring_neg(&self) -> Self {
        self.neg_ref()
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
}

impl Ring for ParamRational {
    fn zero_like(&self) -> Self {
        ParamRational::zero(self.table())
    }
    fn one_like(&self) -> Self {
        ParamRational::one(self.table())
    }
    fn ring_is_zero(&self) -> bool {
        Coefficient::is_zero(self)
    }
    fn ring_add(&self, rhs: &Self) -> Self {
        self.plus(rhs)
    }
    fn ring_neg(&self) -> Self {
        self.negated()
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self.times(rhs)
    }
}

impl Field for ParamRational {
    fn field_inv(&self) -> Option<Self> {
        self.inverse()
    }
}

impl Ring for RatFn {
    fn zero_like(&self) -> Self {
        RatFn::from_poly(GeomPoly::zero(self.numerator().table()))
    }
    fn one_like(&self) -> Self {
        RatFn::from_poly(GeomPoly::one(self.numerator().table()))
    }
    fn ring_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn ring_add(&self, rhs: &Self) -> Self {
        self.checked_add(rhs).expect("rational function addition")
    }
    fn ring_neg(&self) -> Self {
        self.neg()
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self.checked_mul(rhs).expect("rational function multiplication")
    }
}

impl Field for RatFn {
    fn field_inv(&self) -> Option<Self> {
        self.checked_inv().ok()
    }
}

/// Row indices, column indices and value of a minor.
pub type IndexedMinor<T> = (Vec<usize>, Vec<usize>, T);

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

/// Reduced row echelon form with the pivot column of each nonzero row.
#[derive(Clone, Debug)]
pub struct Echelon<T> {
    pub matrix: Matrix<T>,
    pub pivots: Vec<usize>,
}

impl<T: Ring> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, AlgebraError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(AlgebraError::InvalidTable("ragged matrix".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn filled(rows: usize, cols: usize, value: &T) -> Self {
        Matrix { rows, cols, data: vec![value.clone(); rows * cols] }
    }

    pub fn identity(n: usize, proto: &T) -> Self {
        let mut m = Self::filled(n, n, &proto.zero_like());
        for i in 0..n {
            m.set(i, i, proto.one_like());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn map<U, F: Fn(&T) -> U>(&self, f: F) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<U, E, F: Fn(&T) -> Result<U, E>>(&self, f: F) -> Result<Matrix<U>, E> {
        Ok(Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect::<Result<_, _>>()? })
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Ring::ring_is_zero)
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        if self.cols != rhs.rows || self.data.is_empty() {
            return Err(AlgebraError::InvalidTable("matrix shapes do not match".into()));
        }
        let zero = self.data[0].zero_like();
        let mut out = Self::filled(self.rows, rhs.cols, &zero);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = zero.clone();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = rhs.get(k, j);
                    if !a.ring_is_zero() && !b.ring_is_zero() {
                        acc = acc.ring_add(&a.ring_mul(b));
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>, AlgebraError> {
        if self.cols != v.len() || self.data.is_empty() {
            return Err(AlgebraError::InvalidTable("matrix shapes do not match".into()));
        }
        let zero = self.data[0].zero_like();
        Ok((0..self.rows)
            .map(|i| {
                (0..self.cols).fold(zero.clone(), |acc, k| {
                    let a = self.get(i, k);
                    if a.ring_is_zero() || v[k].ring_is_zero() {
                        acc
                    } else {
                        acc.ring_add(&a.ring_mul(&v[k]))
                    }
                })
            })
            .collect())
    }

    /// Submatrix on the given rows and columns.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { rows: rows.len(), cols: cols.len(), data }
    }

    /// Determinant by cofactor expansion (division free). Expands along the
    /// row with the most zeros.
    pub fn det_laplace(&self) -> Result<T, AlgebraError> {
        if self.rows != self.cols || self.rows == 0 {
            return Err(AlgebraError::InvalidTable("determinant of a non-square matrix".into()));
        }
        let idx: Vec<usize> = (0..self.cols).collect();
        let rows: Vec<usize> = (0..self.rows).collect();
        Ok(self.laplace(&rows, &idx))
    }

    fn laplace(&self, rows: &[usize], cols: &[usize]) -> T {
        let n = rows.len();
        if n == 1 {
            return self.get(rows[0], cols[0]).clone();
        }
        if n == 2 {
            let a = self.get(rows[0], cols[0]).ring_mul(self.get(rows[1], cols[1]));
            let b = self.get(rows[0], cols[1]).ring_mul(self.get(rows[1], cols[0]));
            return a.ring_sub(&b);
        }
        let zeros = |r: usize| cols.iter().filter(|&&c| self.get(r, c).ring_is_zero()).count();
        let pick = (0..n).max_by_key(|&k| (zeros(rows[k]), std::cmp::Reverse(k))).unwrap();
        let r = rows[pick];
        let sub_rows: Vec<usize> = rows.iter().copied().filter(|&x| x != r).collect();
        let mut acc = self.get(r, cols[0]).zero_like();
        for (k, &c) in cols.iter().enumerate() {
            let a = self.get(r, c);
            if a.ring_is_zero() {
                continue;
            }
            let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let minor = self.laplace(&sub_rows, &sub_cols);
            if minor.ring_is_zero() {
                continue;
            }
            let term = a.ring_mul(&minor);
            acc = if (pick + k) % 2 == 0 { acc.ring_add(&term) } else { acc.ring_sub(&term) };
        }
        acc
    }

    /// All `k x k` minors, with their row and column index sets in
    /// lexicographic order.
    pub fn minors(&self, k: usize) -> Result<Vec<IndexedMinor<T>>, AlgebraError> {
        if k == 0 || k > self.rows.min(self.cols) {
            return Err(AlgebraError::InvalidTable(format!("no {k}x{k} minors")));
        }
        let mut out = Vec::new();
        for rows in combinations(self.rows, k) {
            for cols in combinations(self.cols, k) {
                let d = self.laplace(&rows, &cols);
                out.push((rows.clone(), cols, d));
            }
        }
        Ok(out)
    }
}

impl<T: Field> Matrix<T> {
    /// Gauss-Jordan elimination, pivoting on the first nonzero entry of each
    /// column.
    pub fn rref(&self) -> Echelon<T> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).ring_is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).field_inv().expect("nonzero pivot is invertible");
            for j in c..m.cols {
                let v = m.get(r, j).ring_mul(&inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.ring_is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let rv = m.get(r, j);
                    if rv.ring_is_zero() {
                        continue;
                    }
                    let v = m.get(i, j).ring_sub(&f.ring_mul(rv));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// A basis of the right kernel: one vector per free column, with a one
    /// in that column.
    pub fn kernel(&self) -> Vec<Vec<T>> {
        let Some(proto) = self.data.first() else {
            return Vec::new();
        };
        let zero = proto.zero_like();
        let one = proto.one_like();
        let e = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !e.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![zero.clone(); self.cols];
                v[f] = one.clone();
                for (row, &pc) in e.pivots.iter().enumerate() {
                    v[pc] = e.matrix.get(row, f).ring_neg();
                }
                v
            })
            .collect()
    }

    /// Determinant by elimination.
    pub fn det(&self) -> Result<T, AlgebraError> {
        if self.rows != self.cols || self.rows == 0 {
            return Err(AlgebraError::InvalidTable("determinant of a non-square matrix".into()));
        }
        let mut m = self.clone();
        let n = self.rows;
        let mut det = m.data[0].one_like();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).ring_is_zero()) else {
                return Ok(det.zero_like());
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = det.ring_neg();
            }
            let pivot = m.get(c, c).clone();
            det = det.ring_mul(&pivot);
            let inv = pivot.field_inv().expect("nonzero pivot is invertible");
            for i in c + 1..n {
                let f = m.get(i, c).ring_mul(&inv);
                if f.ring_is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = m.get(i, j).ring_sub(&f.ring_mul(m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.data[i * self.cols + j].to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::vars::VarTable;

    #[test]
    fn laplace_and_elimination_agree() {
        let t = VarTable::new(2, &["a", "b", "c"], &[]).unwrap();
        let p = |i| ParamRational::param(&t, i);
        let one = ParamRational::one(&t);
        let m = Matrix::from_rows(vec![
            vec![p(0), p(1), one.clone()],
            vec![p(1), p(2), p(0)],
            vec![one.clone(), p(0), p(2)],
        ])
        .unwrap();
        assert_eq!(m.det_laplace().unwrap(), m.det().unwrap());
        assert_eq!(m.rank(), 3);
        assert!(m.kernel().is_empty());
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let t = VarTable::new(2, &["a"], &["u"]).unwrap();
        let u = RatFn::from_poly(GeomPoly::var(&t, 0));
        let one = RatFn::from_poly(GeomPoly::one(&t));
        let m = Matrix::from_rows(vec![
            vec![u.clone(), one.clone(), u.clone()],
            vec![u.ring_mul(&u), u.clone(), u.ring_mul(&u)],
        ])
        .unwrap();
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).unwrap().iter().all(Ring::ring_is_zero));
        }
    }

    #[test]
    fn combination_count() {
        assert_eq!(combinations(7, 4).len(), 35);
        assert_eq!(combinations(6, 4).len(), 15);
    }
}
