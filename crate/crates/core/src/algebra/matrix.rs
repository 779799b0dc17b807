//! Dense matrices over the coefficient field.

use super::coef::Coef;
use super::poly::PolyT;
use crate::error::{Error, Result};
use num_rational::BigRational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Coef>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Coef::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Coef::one());
        }
        m
    }

    pub fn diagonal(d: &[Coef]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, c) in d.iter().enumerate() {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Coef>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::domain("ragged matrix rows"));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Coef {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Coef) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<Coef> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<Coef> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[Coef] {
        &self.data
    }

    pub fn from_cols(rows: usize, cols: &[Vec<Coef>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn map(&self, f: impl Fn(&Coef) -> Result<Coef>) -> Result<Matrix> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_>>()?,
        })
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        self.add(&o.scale(&Coef::from(-1)))
    }

    pub fn scale(&self, c: &Coef) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.mul(c)).collect() }
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "matrix shape mismatch");
        let mut m = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let v = m.get(i, j).add(&a.mul(b));
                        m.set(i, j, v);
                    }
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[Coef]) -> Vec<Coef> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(Coef::zero(), |acc, j| {
                    let a = self.get(i, j);
                    if a.is_zero() || v[j].is_zero() {
                        acc
                    } else {
                        acc.add(&a.mul(&v[j]))
                    }
                })
            })
            .collect()
    }

    pub fn pow(&self, k: usize) -> Matrix {
        (0..k).fold(Matrix::identity(self.rows), |acc, _| acc.mul(self))
    }

    pub fn transpose(&self) -> Matrix {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, o: &Matrix) -> Matrix {
        let mut m = Self::zeros(self.rows + o.rows, self.cols + o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..o.rows {
            for j in 0..o.cols {
                m.set(self.rows + i, self.cols + j, o.get(i, j).clone());
            }
        }
        m
    }

    /// Kronecker product.
    pub fn kron(&self, o: &Matrix) -> Matrix {
        let mut m = Self::zeros(self.rows * o.rows, self.cols * o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        m.set(i * o.rows + k, j * o.cols + l, a.mul(o.get(k, l)));
                    }
                }
            }
        }
        m
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> Result<(Matrix, Vec<usize>)> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    let a = m.get(r, j).clone();
                    let b = m.get(p, j).clone();
                    m.set(r, j, b);
                    m.set(p, j, a);
                }
            }
            let inv = m.get(r, c).inv()?;
            for j in c..m.cols {
                let v = m.get(r, j).mul(&inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let rj = m.get(r, j);
                    if rj.is_zero() {
                        continue;
                    }
                    let v = m.get(i, j).sub(&f.mul(rj));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Ok((m, pivots))
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.rref()?.1.len())
    }

    /// Basis of the right kernel, as column vectors.
    pub fn nullspace(&self) -> Result<Vec<Vec<Coef>>> {
        let (m, pivots) = self.rref()?;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        Ok(free
            .iter()
            .map(|&f| {
                let mut v = vec![Coef::zero(); self.cols];
                v[f] = Coef::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = m.get(i, f).neg();
                }
                v
            })
            .collect())
    }

    /// Basis of the column space (a subset of the columns).
    pub fn column_basis(&self) -> Result<Vec<Vec<Coef>>> {
        let (_, pivots) = self.rref()?;
        Ok(pivots.iter().map(|&c| self.col(c)).collect())
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::domain("inverse of a non-square matrix"));
        }
        let n = self.rows;
        let aug = Matrix::from_cols(n, &(0..n).map(|j| self.col(j)).chain((0..n).map(|j| Matrix::identity(n).col(j))).collect::<Vec<_>>());
        let (m, pivots) = aug.rref()?;
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::domain("matrix is singular"));
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, m.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }

    /// Characteristic polynomial det(t I - M) by the division-free Berkowitz
    /// algorithm; coefficients listed constant term first.
    pub fn charpoly(&self) -> Vec<Coef> {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return vec![Coef::one()];
        }
        // Berkowitz: build the Toeplitz vectors for leading principal submatrices.
        let mut poly: Vec<Coef> = vec![Coef::one(), self.get(0, 0).neg()]; // highest degree first
        for r in 1..n {
            // Submatrix A = M[0..r, 0..r], row R = M[r, 0..r], column C = M[0..r, r], a = M[r, r].
            let a = self.get(r, r).clone();
            let mut vecs: Vec<Coef> = vec![Coef::one(), a.neg()];
            // powers: R A^k C
            let mut v: Vec<Coef> = (0..r).map(|i| self.get(i, r).clone()).collect();
            for _ in 0..r {
                let rv = (0..r).fold(Coef::zero(), |acc, j| acc.add(&self.get(r, j).mul(&v[j])));
                vecs.push(rv.neg());
                let nv: Vec<Coef> = (0..r)
                    .map(|i| (0..r).fold(Coef::zero(), |acc, j| acc.add(&self.get(i, j).mul(&v[j]))))
                    .collect();
                v = nv;
            }
            // Toeplitz matrix (r+2) x (r+1) lower triangular with first column vecs[0..r+2].
            let mut newp = vec![Coef::zero(); r + 2];
            for (i, np) in newp.iter_mut().enumerate() {
                let mut acc = Coef::zero();
                for (j, pj) in poly.iter().enumerate() {
                    if i >= j {
                        let t = &vecs[i - j];
                        if !t.is_zero() && !pj.is_zero() {
                            acc = acc.add(&t.mul(pj));
                        }
                    }
                }
                *np = acc;
            }
            poly = newp;
        }
        poly.reverse();
        poly
    }

    /// det(1 - M T) as a polynomial in T.
    pub fn det_char(&self) -> Result<PolyT> {
        if !self.is_square() {
            return Err(Error::domain("det_char of a non-square matrix"));
        }
        if self.data.iter().any(|c| c.has_opaque()) {
            return Err(Error::unsupported("evaluation of opaque units in det_char"));
        }
        // det(1 - M T) = T^n chi(1/T): reverse the characteristic polynomial.
        let mut cp = self.charpoly();
        cp.reverse();
        Ok(PolyT::new(cp))
    }

    pub fn det(&self) -> Coef {
        let cp = self.charpoly();
        if self.rows % 2 == 0 {
            cp[0].clone()
        } else {
            cp[0].neg()
        }
    }

    pub fn eval_x(&self, a: &BigRational) -> Result<Matrix> {
        self.map(|c| c.eval_x(a))
    }

    pub fn subst_x(&self, a: &Coef) -> Result<Matrix> {
        self.map(|c| c.subst_x(a))
    }

    pub fn render(&self) -> String {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| format!("[{}]", self.row(i).iter().map(|c| c.render()).collect::<Vec<_>>().join(", ")))
            .collect();
        format!("[{}]", rows.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Coef::from(x)).collect()).collect()).unwrap()
    }

    /// Laplace expansion, used as an independent determinant.
    fn laplace(a: &Matrix) -> Coef {
        let n = a.rows();
        if n == 0 {
            return Coef::one();
        }
        let mut acc = Coef::zero();
        for j in 0..n {
            let minor = Matrix::from_rows(
                (1..n).map(|i| (0..n).filter(|&c| c != j).map(|c| a.get(i, c).clone()).collect()).collect(),
            )
            .unwrap_or(Matrix::zeros(0, 0));
            let t = a.get(0, j).mul(&laplace(&minor));
            acc = if j % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
        }
        acc
    }

    #[test]
    fn det_char_examples() {
        let a = Coef::from(rat(2, 3));
        let b = Coef::from(5);
        let d1 = Matrix::diagonal(&[a.clone()]).det_char().unwrap();
        assert_eq!(d1, PolyT::one_minus(&a));
        let d2 = Matrix::diagonal(&[a.clone(), b.clone()]).det_char().unwrap();
        assert_eq!(d2, PolyT::one_minus(&a).mul(&PolyT::one_minus(&b)));
        assert!(m(&[&[0, 1], &[0, 0]]).det_char().unwrap().is_one());
        assert!(Matrix::diagonal(&[Coef::opaque("e")]).det_char().is_err());
    }

    #[test]
    fn berkowitz_matches_laplace() {
        let a = m(&[&[1, 2, 0, -1], &[3, -1, 4, 2], &[0, 5, 2, 1], &[2, 0, -3, 1]]);
        assert_eq!(a.det(), laplace(&a));
        // det(1 - A T) at T = 1 is det(I - A).
        let p = a.det_char().unwrap();
        assert_eq!(p.eval(&Coef::one()), laplace(&Matrix::identity(4).sub(&a)));
    }

    #[test]
    fn rank_and_inverse() {
        let a = m(&[&[1, 2], &[2, 4]]);
        assert_eq!(a.rank().unwrap(), 1);
        assert_eq!(a.nullspace().unwrap().len(), 1);
        let b = m(&[&[2, 1], &[1, 1]]);
        assert_eq!(b.mul(&b.inverse().unwrap()), Matrix::identity(2));
        let x = Matrix::from_rows(vec![vec![Coef::zero(), Coef::x()], vec![Coef::zero(), Coef::zero()]]).unwrap();
        assert_eq!(x.rank().unwrap(), 1);
        assert_eq!(x.eval_x(&rat(0, 1)).unwrap().rank().unwrap(), 0);
    }
}
