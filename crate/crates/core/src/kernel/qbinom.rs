use super::field::{Field, Value};

/// Gaussian binomial coefficient at `q`, by the recurrence
/// [n, i] = [n-1, i-1] + q^i [n-1, i].
pub fn qbinom(field: &Field, n: usize, i: usize, q: &Value) -> Value {
    if i > n {
        return field.zero();
    }
    let mut row = vec![field.one()];
    for m in 1..=n {
        let mut next = vec![field.one(); m + 1];
        let mut qi = field.one();
        for k in 1..m {
            qi = field.mul(&qi, q);
            next[k] = field.add(&row[k - 1], &field.mul(&qi, &row[k]));
        }
        row = next;
    }
    row[i].clone()
}

/// Ordinary binomial coefficient reduced modulo a prime.
pub fn binomial_mod(n: u64, k: u64, p: u64) -> u64 {
    let f = Field::prime(p).expect("prime modulus");
    match qbinom(&f, n as usize, k as usize, &f.one()) {
        Value::P(x) => x,
        _ => unreachable!(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Poly;

    #[test]
    fn edges_are_one() {
        let q = Field::rationals();
        let x = q.from_i64(7);
        for n in 0..6 {
            assert!(q.is_one(&qbinom(&q, n, 0, &x)));
            assert!(q.is_one(&qbinom(&q, n, n, &x)));
        }
    }

    #[test]
    fn two_choose_one_is_one_plus_q() {
        // expand (1 + x)(1 + qx) over Q(q) and read the x coefficient
        let qf = Field::function_field(&Field::rationals(), "q").unwrap();
        let qv = qf.generator().unwrap();
        let a = Poly::new(&qf, vec![qf.one(), qf.one()]);
        let b = Poly::new(&qf, vec![qf.one(), qv.clone()]);
        let prod = a.mul(&b);
        assert_eq!(qbinom(&qf, 2, 1, &qv), prod.coeff(1));
    }

    #[test]
    fn ordinary_binomials_at_one() {
        let q = Field::rationals();
        assert_eq!(qbinom(&q, 6, 2, &q.one()), q.from_i64(15));
        assert_eq!(qbinom(&q, 10, 5, &q.one()), q.from_i64(252));
    }

    #[test]
    fn middle_binomials_vanish_mod_p() {
        for p in [2u64, 3, 5, 7] {
            for j in 1..p {
                assert_eq!(binomial_mod(p - 1 + j, j, p), 0, "p={p} j={j}");
            }
            assert_ne!(binomial_mod(p - 1, p - 1, p), 0);
        }
    }

    #[test]
    fn q_binomial_at_root_of_unity_vanishes() {
        // at a primitive m-th root, [m, i] = 0 for 0 < i < m
        let q = Field::rationals();
        let i_field = Field::extension_unchecked(&q, "i", vec![q.one(), q.zero(), q.one()]).unwrap();
        let i = i_field.generator().unwrap();
        let qv = i_field.neg(&i_field.one());
        assert!(i_field.is_zero(&qbinom(&i_field, 2, 1, &qv)));
        for k in 1..4 {
            assert!(i_field.is_zero(&qbinom(&i_field, 4, k, &i)));
        }
    }
}
