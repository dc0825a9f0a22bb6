use crate::error::{Error, Result};
use crate::fields::SplitContext;
use crate::kernel::{Matrix, Value};

/// `change⁻¹ · A · change` is upper triangular for every input `A`;
/// `diagonals[j][i]` is the `j`-th diagonal entry of the `i`-th matrix.
#[derive(Clone, Debug)]
pub struct Triangularization {
    pub change: Matrix,
    pub diagonals: Vec<Vec<Value>>,
}

/// Simultaneously triangularizes a commuting family over the context field.
pub fn simultaneous_triangularize(mats: &[Matrix], ctx: &SplitContext) -> Result<Triangularization> {
    let e = ctx.field();
    let n = match mats.first() {
        Some(m) => m.rows(),
        None => return Err(Error::Invalid("empty family".into())),
    };
    for (i, a) in mats.iter().enumerate() {
        if a.field() != e || !a.is_square() || a.rows() != n {
            return Err(Error::FieldMismatch);
        }
        for b in &mats[i + 1..] {
            if !a.commutes_with(b) {
                return Err(Error::Invalid("family does not commute".into()));
            }
        }
    }
    let mut change = Matrix::identity(e, n);
    let mut cur: Vec<Matrix> = mats.to_vec();
    let mut diagonals = Vec::with_capacity(n);
    for step in 0..n {
        let m = n - step;
        let v = common_eigenvector(&cur, ctx)?;
        let s = complete_basis(e, &v, m)?;
        let inv = s.inverse()?;
        let conj: Vec<Matrix> = cur.iter().map(|a| inv.mul(a).mul(&s)).collect();
        diagonals.push(conj.iter().map(|a| a.get(0, 0).clone()).collect());
        // embed the step change into the full space
        let mut full = Matrix::identity(e, n);
        for i in 0..m {
            for j in 0..m {
                full.set(step + i, step + j, s.get(i, j).clone());
            }
        }
        change = change.mul(&full);
        let rest: Vec<usize> = (1..m).collect();
        cur = conj.iter().map(|a| a.submatrix(&rest, &rest)).collect();
    }
    Ok(Triangularization { change, diagonals })
}

fn common_eigenvector(mats: &[Matrix], ctx: &SplitContext) -> Result<Vec<Value>> {
    let e = ctx.field();
    let m = mats[0].rows();
    // columns spanning the current joint eigenspace
    let mut w = Matrix::identity(e, m);
    for a in mats {
        let k = w.cols();
        let aw = a.mul(&w);
        let cols: Vec<Vec<Value>> = (0..k)
            .map(|j| w.solve(&aw.column(j)).map(|s| s.expect("eigenspace is invariant")))
            .collect::<Result<_>>()?;
        let r = Matrix::from_columns(e, k, &cols);
        let roots = ctx.split(&r.char_poly()?)?;
        let rho = &roots[0].0;
        let mut shifted = r.clone();
        shifted.add_scalar_diag(&e.neg(rho));
        let ker = shifted.kernel()?;
        let new_cols: Vec<Vec<Value>> = ker.iter().map(|c| w.mul_vec(c)).collect();
        w = Matrix::from_columns(e, m, &new_cols);
    }
    Ok(w.column(0))
}

fn complete_basis(e: &crate::kernel::Field, v: &[Value], m: usize) -> Result<Matrix> {
    let mut cols = vec![v.to_vec()];
    for j in 0..m {
        if cols.len() == m {
            break;
        }
        let mut ej = vec![e.zero(); m];
        ej[j] = e.one();
        let mut trial = cols.clone();
        trial.push(ej);
        if Matrix::from_columns(e, m, &trial).rank()? == trial.len() {
            cols = trial;
        }
    }
    Ok(Matrix::from_columns(e, m, &cols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{Field, Poly};

    #[test]
    fn single_diagonalizable_matrix() {
        let q = Field::rationals();
        let a = Matrix::from_i64(&q, &[vec![2, 1], vec![1, 2]]);
        let t = simultaneous_triangularize(&[a.clone()], &SplitContext::new(&q)).unwrap();
        let conj = t.change.inverse().unwrap().mul(&a).mul(&t.change);
        assert!(conj.is_upper_triangular());
        let mut eig: Vec<Value> = t.diagonals.iter().map(|d| d[0].clone()).collect();
        eig.sort();
        assert_eq!(eig, vec![q.from_i64(1), q.from_i64(3)]);
    }

    #[test]
    fn regular_representation_of_sqrt2_needs_sqrt2() {
        // Oracle by hand: the companion matrix of x² - 2 has eigenvalues ±√2,
        // so it cannot be triangularized over Q but can over Q(√2).
        let q = Field::rationals();
        let l = Field::extension_unchecked(&q, "a", Poly::from_i64s(&q, &[-2, 0, 1]).into_coeffs()).unwrap();
        let comp = Matrix::from_i64(&q, &[vec![0, 1], vec![2, 0]]);
        assert!(matches!(
            simultaneous_triangularize(&[comp], &SplitContext::new(&q)),
            Err(Error::EigenvalueOutsideField(_))
        ));
        let comp = Matrix::from_i64(&l, &[vec![0, 1], vec![2, 0]]);
        let t = simultaneous_triangularize(&[comp], &SplitContext::new(&l)).unwrap();
        let a = l.generator().unwrap();
        let mut eig: Vec<Value> = t.diagonals.iter().map(|d| d[0].clone()).collect();
        eig.sort();
        let mut expect = vec![a.clone(), l.neg(&a)];
        expect.sort();
        assert_eq!(eig, expect);
    }
}
