use std::fmt;

use super::field::{Field, Value};
use super::poly::Poly;
use crate::error::{Error, Result};

/// Dense row-major matrix with all entries over one field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Value>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        Matrix::scalar(field, n, &field.one())
    }

    pub fn scalar(field: &Field, n: usize, c: &Value) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    pub fn from_vec(field: &Field, rows: usize, cols: usize, data: Vec<Value>) -> Matrix {
        assert_eq!(data.len(), rows * cols, "matrix data length mismatch");
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<Value>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Matrix::from_vec(field, r, c, data)
    }

    pub fn from_i64(field: &Field, rows: &[Vec<i64>]) -> Matrix {
        Matrix::from_rows(
            field,
            rows.iter()
                .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
                .collect(),
        )
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: &Field, n: usize, cols: &[Vec<Value>]) -> Matrix {
        let mut m = Matrix::zeros(field, n, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..n {
                m.data[i * cols.len() + j] = c[i].clone();
            }
        }
        m
    }

    /// Companion matrix of a monic polynomial (acts on column vectors).
    pub fn companion(f: &Poly) -> Matrix {
        let fld = f.field();
        let n = f.degree().expect("companion of zero polynomial");
        let mut m = Matrix::zeros(fld, n, n);
        for i in 1..n {
            m.set(i, i - 1, fld.one());
        }
        for i in 0..n {
            m.set(i, n - 1, fld.neg(&f.coeff(i)));
        }
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
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
    pub fn data(&self) -> &[Value] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &Value {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Value) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<Value> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<Value> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        self.field.is_one(x)
                    } else {
                        self.field.is_zero(x)
                    }
                })
            })
    }

    /// True if the matrix equals c·Id.
    pub fn is_scalar(&self, c: &Value) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x == c
                    } else {
                        self.field.is_zero(x)
                    }
                })
            })
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..i.min(self.cols)).all(|j| self.field.is_zero(self.get(i, j))))
    }

    pub fn map(&self, target: &Field, f: impl Fn(&Value) -> Value) -> Matrix {
        Matrix {
            field: target.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        assert!(self.rows == o.rows && self.cols == o.cols, "shape mismatch");
        let f = &self.field;
        Matrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| f.add(a, b)).collect(),
        }
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        assert!(self.rows == o.rows && self.cols == o.cols, "shape mismatch");
        let f = &self.field;
        Matrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| f.sub(a, b)).collect(),
        }
    }

    pub fn neg(&self) -> Matrix {
        self.map(&self.field.clone(), |x| self.field.neg(x))
    }

    pub fn scale(&self, c: &Value) -> Matrix {
        self.map(&self.field.clone(), |x| self.field.mul(c, x))
    }

    pub fn add_scalar_diag(&mut self, c: &Value) {
        if self.field.is_zero(c) {
            return;
        }
        for i in 0..self.rows.min(self.cols) {
            let idx = i * self.cols + i;
            let f = self.field.clone();
            f.add_assign(&mut self.data[idx], c);
        }
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "shape mismatch in product");
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o.data[k * o.cols + j];
                    if f.is_zero(b) {
                        continue;
                    }
                    let t = f.mul(a, b);
                    f.add_assign(&mut out.data[i * o.cols + j], &t);
                }
            }
        }
        out
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &[Value]) -> Vec<Value> {
        assert_eq!(self.cols, v.len());
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for j in 0..self.cols {
                    let a = &self.data[i * self.cols + j];
                    if f.is_zero(a) || f.is_zero(&v[j]) {
                        continue;
                    }
                    f.add_assign(&mut acc, &f.mul(a, &v[j]));
                }
                acc
            })
            .collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[Value]) -> Vec<Value> {
        assert_eq!(self.rows, v.len());
        let f = &self.field;
        let mut out = vec![f.zero(); self.cols];
        for i in 0..self.rows {
            if f.is_zero(&v[i]) {
                continue;
            }
            for j in 0..self.cols {
                let a = &self.data[i * self.cols + j];
                if f.is_zero(a) {
                    continue;
                }
                f.add_assign(&mut out[j], &f.mul(&v[i], a));
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        let mut base = self.clone();
        let mut acc = Matrix::identity(&self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j].clone();
            }
        }
        out
    }

    pub fn trace(&self) -> Value {
        let f = &self.field;
        let mut acc = f.zero();
        for i in 0..self.rows.min(self.cols) {
            f.add_assign(&mut acc, self.get(i, i));
        }
        acc
    }

    /// Block-diagonal sum.
    pub fn block_diag(blocks: &[Matrix]) -> Matrix {
        let f = blocks[0].field.clone();
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(&f, r, c);
        let (mut oi, mut oj) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(oi + i, oj + j, b.get(i, j).clone());
                }
            }
            oi += b.rows;
            oj += b.cols;
        }
        out
    }

    /// Kronecker product with index (i, k) ↦ i·rows(o) + k.
    pub fn kron(&self, o: &Matrix) -> Matrix {
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows * o.rows, self.cols * o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if f.is_zero(a) {
                    continue;
                }
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        let b = o.get(k, l);
                        if f.is_zero(b) {
                            continue;
                        }
                        out.set(i * o.rows + k, j * o.cols + l, f.mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(&self.field, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn commutes_with(&self, o: &Matrix) -> bool {
        self.mul(o) == o.mul(self)
    }

    // ---- elimination ----

    /// Reduced row echelon form with lexicographic (leftmost, topmost) pivots.
    pub fn rref(&self) -> Result<Rref> {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c))?;
            for j in c..m.cols {
                let idx = r * m.cols + j;
                m.data[idx] = f.mul(&m.data[idx], &inv);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for j in c..m.cols {
                    let t = &m.data[r * m.cols + j];
                    if f.is_zero(t) {
                        continue;
                    }
                    let t = f.mul(&factor, t);
                    f.sub_assign(&mut m.data[i * m.cols + j], &t);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Ok(Rref { matrix: m, pivots })
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.rref()?.pivots.len())
    }

    /// Basis of the right kernel {v : M v = 0}.
    pub fn kernel(&self) -> Result<Vec<Vec<Value>>> {
        mat_kernel(self)
    }

    /// Solves M x = b; `None` if inconsistent.
    pub fn solve(&self, b: &[Value]) -> Result<Option<Vec<Value>>> {
        assert_eq!(b.len(), self.rows);
        let f = &self.field;
        let mut aug = Matrix::zeros(f, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let r = aug.rref()?;
        if r.pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![f.zero(); self.cols];
        for (row, &c) in r.pivots.iter().enumerate() {
            x[c] = r.matrix.get(row, self.cols).clone();
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::NotInvertible("matrix is not square".into()));
        }
        let n = self.rows;
        let f = &self.field;
        let mut aug = Matrix::zeros(f, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, f.one());
        }
        let r = aug.rref()?;
        if r.pivots.len() < n || r.pivots[n - 1] != n - 1 {
            return Err(Error::NotInvertible("singular matrix".into()));
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Ok(r.matrix.submatrix(&rows, &cols))
    }

    pub fn det(&self) -> Result<Value> {
        assert!(self.is_square());
        let f = &self.field;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = f.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !f.is_zero(m.get(i, c))) else {
                return Ok(f.zero());
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = f.neg(&det);
            }
            let piv = m.get(c, c).clone();
            det = f.mul(&det, &piv);
            let inv = f.inv(&piv)?;
            for i in c + 1..n {
                let factor = f.mul(m.get(i, c), &inv);
                if f.is_zero(&factor) {
                    continue;
                }
                for j in c..n {
                    let t = f.mul(&factor, m.get(c, j));
                    f.sub_assign(&mut m.data[i * n + j], &t);
                }
            }
        }
        Ok(det)
    }

    pub fn char_poly(&self) -> Result<Poly> {
        mat_char_poly(self)
    }

    pub fn min_poly(&self) -> Result<Poly> {
        mat_min_poly(self)
    }

    pub fn is_semisimple(&self) -> Result<bool> {
        mat_is_semisimple(self)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| self.field.fmt_value(self.get(i, j)))
                .collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Basis of {v : M v = 0}; one vector per free column of the echelon form.
pub fn mat_kernel(m: &Matrix) -> Result<Vec<Vec<Value>>> {
    let f = &m.field;
    let r = m.rref()?;
    let mut out = Vec::new();
    let mut is_pivot = vec![false; m.cols];
    for &p in &r.pivots {
        is_pivot[p] = true;
    }
    for free in 0..m.cols {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![f.zero(); m.cols];
        v[free] = f.one();
        for (row, &p) in r.pivots.iter().enumerate() {
            v[p] = f.neg(r.matrix.get(row, free));
        }
        out.push(v);
    }
    Ok(out)
}

/// Characteristic polynomial det(xI − M) via reduction to Hessenberg form.
pub fn mat_char_poly(m: &Matrix) -> Result<Poly> {
    if !m.is_square() {
        return Err(Error::Invalid("characteristic polynomial of a non-square matrix".into()));
    }
    let f = &m.field;
    let n = m.rows;
    let mut h = m.clone();
    for c in 0..n.saturating_sub(2) {
        let Some(r) = (c + 1..n).find(|&i| !f.is_zero(h.get(i, c))) else {
            continue;
        };
        if r != c + 1 {
            for j in 0..n {
                h.data.swap(r * n + j, (c + 1) * n + j);
            }
            for i in 0..n {
                h.data.swap(i * n + r, i * n + c + 1);
            }
        }
        let inv = f.inv(h.get(c + 1, c))?;
        for i in c + 2..n {
            let u = f.mul(h.get(i, c), &inv);
            if f.is_zero(&u) {
                continue;
            }
            for j in 0..n {
                let t = h.get(c + 1, j).clone();
                if f.is_zero(&t) {
                    continue;
                }
                let t = f.mul(&u, &t);
                f.sub_assign(&mut h.data[i * n + j], &t);
            }
            for k in 0..n {
                let t = h.get(k, i).clone();
                if f.is_zero(&t) {
                    continue;
                }
                let t = f.mul(&u, &t);
                f.add_assign(&mut h.data[k * n + c + 1], &t);
            }
        }
    }
    let x = Poly::x(f);
    let mut p: Vec<Poly> = vec![Poly::one(f)];
    for k in 0..n {
        let mut next = x.sub(&Poly::constant(f, h.get(k, k).clone())).mul(&p[k]);
        if k > 0 {
            let mut prod = h.get(k, k - 1).clone();
            for i in (0..k).rev() {
                if f.is_zero(&prod) {
                    break;
                }
                let c = f.mul(h.get(i, k), &prod);
                if !f.is_zero(&c) {
                    next = next.sub(&p[i].scale(&c));
                }
                if i > 0 {
                    prod = f.mul(&prod, h.get(i, i - 1));
                }
            }
        }
        p.push(next);
    }
    Ok(p.pop().unwrap())
}

/// Minimal polynomial as the lcm of the local minimal polynomials of basis vectors.
pub fn mat_min_poly(m: &Matrix) -> Result<Poly> {
    if !m.is_square() {
        return Err(Error::Invalid("minimal polynomial of a non-square matrix".into()));
    }
    let f = &m.field;
    let n = m.rows;
    let mut mu = Poly::one(f);
    for i in 0..n {
        let mut e = vec![f.zero(); n];
        e[i] = f.one();
        if poly_apply_vec(&mu, m, &e).iter().all(|x| f.is_zero(x)) {
            continue;
        }
        let local = local_min_poly(m, &e)?;
        mu = mu.lcm(&local)?;
        if mu.degree() == Some(n) {
            break;
        }
    }
    Ok(mu)
}

/// Monic polynomial of least degree with p(M)v = 0.
pub fn local_min_poly(m: &Matrix, v: &[Value]) -> Result<Poly> {
    let f = &m.field;
    let n = m.rows;
    // echelon rows of the Krylov vectors together with the combination tracking them
    let mut basis: Vec<(usize, Vec<Value>, Vec<Value>)> = Vec::new();
    let mut cur = v.to_vec();
    for k in 0..=n {
        let mut w = cur.clone();
        let mut comb = vec![f.zero(); k + 1];
        comb[k] = f.one();
        for (piv, row, rc) in &basis {
            let c = w[*piv].clone();
            if f.is_zero(&c) {
                continue;
            }
            for j in 0..n {
                if f.is_zero(&row[j]) {
                    continue;
                }
                let t = f.mul(&c, &row[j]);
                f.sub_assign(&mut w[j], &t);
            }
            for (j, x) in rc.iter().enumerate() {
                let t = f.mul(&c, x);
                f.sub_assign(&mut comb[j], &t);
            }
        }
        match (0..n).find(|&j| !f.is_zero(&w[j])) {
            None => return Poly::new(f, comb).monic(),
            Some(piv) => {
                let inv = f.inv(&w[piv])?;
                let w: Vec<Value> = w.iter().map(|x| f.mul(x, &inv)).collect();
                let comb: Vec<Value> = comb.iter().map(|x| f.mul(x, &inv)).collect();
                basis.push((piv, w, comb));
            }
        }
        cur = m.mul_vec(&cur);
    }
    Err(Error::Invalid("Krylov sequence did not terminate".into()))
}

fn poly_apply_vec(p: &Poly, m: &Matrix, v: &[Value]) -> Vec<Value> {
    let f = &m.field;
    let mut acc = vec![f.zero(); v.len()];
    for c in p.coeffs().iter().rev() {
        acc = m.mul_vec(&acc);
        for (a, x) in acc.iter_mut().zip(v) {
            if !f.is_zero(c) && !f.is_zero(x) {
                f.add_assign(a, &f.mul(c, x));
            }
        }
    }
    acc
}

/// True iff the minimal polynomial is coprime to its derivative.
pub fn mat_is_semisimple(m: &Matrix) -> Result<bool> {
    let mu = mat_min_poly(m)?;
    mu.is_squarefree()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> Field {
        Field::rationals()
    }

    // independent oracle: Laplace expansion along the first row on i64 entries
    fn cofactor_det(m: &[Vec<i64>]) -> i64 {
        let n = m.len();
        if n == 0 {
            return 1;
        }
        let mut acc = 0;
        for j in 0..n {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, &x)| x).collect())
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            acc += sign * m[0][j] * cofactor_det(&minor);
        }
        acc
    }

    fn small_matrix(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        proptest::collection::vec(proptest::collection::vec(-4i64..5, n), n)
    }

    #[test]
    fn frozen_char_poly_of_three_by_three() {
        // block triangular: (x − 1)((x − 2)^2 − 1) = x^3 − 5x^2 + 7x − 3
        let m = Matrix::from_i64(&q(), &[vec![2, 1, 0], vec![1, 2, 1], vec![0, 0, 1]]);
        assert_eq!(m.char_poly().unwrap(), Poly::from_i64s(&q(), &[-3, 7, -5, 1]));
        assert_eq!(m.det().unwrap(), q().from_i64(3));
    }

    #[test]
    fn jordan_block_is_not_semisimple() {
        let j = Matrix::from_i64(&q(), &[vec![3, 1], vec![0, 3]]);
        assert!(!j.is_semisimple().unwrap());
        assert_eq!(j.min_poly().unwrap(), Poly::from_i64s(&q(), &[9, -6, 1]));
        let d = Matrix::from_i64(&q(), &[vec![3, 0], vec![0, 3]]);
        assert!(d.is_semisimple().unwrap());
        assert_eq!(d.min_poly().unwrap(), Poly::from_i64s(&q(), &[-3, 1]));
    }

    #[test]
    fn frobenius_like_matrix_mod_p() {
        // over F_2 the matrix [[1,1],[0,1]] squares to the identity but is not semisimple
        let f2 = Field::prime(2).unwrap();
        let m = Matrix::from_i64(&f2, &[vec![1, 1], vec![0, 1]]);
        assert!(m.pow(2).is_identity());
        assert!(!m.is_semisimple().unwrap());
    }

    #[test]
    fn companion_has_its_polynomial() {
        let f = Poly::from_i64s(&q(), &[5, -1, 0, 2, 1]);
        let c = Matrix::companion(&f);
        assert_eq!(c.char_poly().unwrap(), f);
        assert_eq!(c.min_poly().unwrap(), f);
    }

    proptest! {
        #[test]
        fn det_matches_cofactor_expansion(m in small_matrix(4)) {
            let mq = Matrix::from_i64(&q(), &m);
            prop_assert_eq!(mq.det().unwrap(), q().from_i64(cofactor_det(&m)));
        }

        #[test]
        fn char_poly_matches_pointwise_determinant(m in small_matrix(4), x0 in -3i64..4) {
            let mq = Matrix::from_i64(&q(), &m);
            let shifted: Vec<Vec<i64>> = (0..4)
                .map(|i| (0..4).map(|j| if i == j { x0 - m[i][j] } else { -m[i][j] }).collect())
                .collect();
            let cp = mq.char_poly().unwrap();
            prop_assert_eq!(cp.eval(&q().from_i64(x0)), q().from_i64(cofactor_det(&shifted)));
        }

        #[test]
        fn hamilton_cayley_and_min_poly_divides(m in small_matrix(4)) {
            let mq = Matrix::from_i64(&q(), &m);
            let cp = mq.char_poly().unwrap();
            let mp = mq.min_poly().unwrap();
            prop_assert!(cp.eval_matrix(&mq).is_zero());
            prop_assert!(mp.eval_matrix(&mq).is_zero());
            prop_assert!(mp.divides(&cp).unwrap());
            // minimality: I, M, …, M^{deg−1} are independent
            let d = mp.degree().unwrap();
            let cols: Vec<Vec<Value>> = (0..d).map(|k| mq.pow(k as u64).data().to_vec()).collect();
            prop_assert_eq!(Matrix::from_columns(&q(), 16, &cols).rank().unwrap(), d);
        }

        #[test]
        fn kernel_and_rank(m in proptest::collection::vec(proptest::collection::vec(-2i64..3, 5), 3)) {
            let mq = Matrix::from_i64(&q(), &m);
            let ker = mq.kernel().unwrap();
            prop_assert_eq!(ker.len() + mq.rank().unwrap(), 5);
            for v in &ker {
                prop_assert!(mq.mul_vec(v).iter().all(|x| q().is_zero(x)));
            }
        }

        #[test]
        fn inverse_round_trip_mod_7(m in proptest::collection::vec(proptest::collection::vec(0i64..7, 3), 3)) {
            let f7 = Field::prime(7).unwrap();
            let mq = Matrix::from_i64(&f7, &m);
            if !f7.is_zero(&mq.det().unwrap()) {
                prop_assert!(mq.mul(&mq.inverse().unwrap()).is_identity());
            }
        }

        #[test]
        fn kron_is_multiplicative(a in small_matrix(2), b in small_matrix(2), c in small_matrix(2), d in small_matrix(2)) {
            let (a, b, c, d) = (
                Matrix::from_i64(&q(), &a),
                Matrix::from_i64(&q(), &b),
                Matrix::from_i64(&q(), &c),
                Matrix::from_i64(&q(), &d),
            );
            prop_assert_eq!(a.kron(&b).mul(&c.kron(&d)), a.mul(&c).kron(&b.mul(&d)));
        }
    }
}
