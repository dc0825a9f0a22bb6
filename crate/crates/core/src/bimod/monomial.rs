//! Rank-one pieces that move the base, such as `t ↦ t²` on `k(t)`. These are
//! outside the base-linear setting; the only question asked of them is how
//! large a field is needed to contain all composites of their characters.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};

/// Degree `N` of the smallest `k(t^{1/N})` containing `t^e` for every exponent
/// `e` in the multiplicative closure of the characters `t ↦ t^{e_i}`.
/// Overrunning `cap` is reported as `DegreeBound`.
pub fn monomial_splitting_degree(exponents: &[BigRational], cap: usize) -> Result<usize> {
    let mut seen: BTreeSet<BigRational> = exponents.iter().cloned().collect();
    let mut frontier: Vec<BigRational> = seen.iter().cloned().collect();
    let mut lcm = num_bigint::BigInt::from(1);
    for e in &seen {
        lcm = lcm.lcm(e.denom());
    }
    while !frontier.is_empty() {
        if lcm.to_usize().map_or(true, |n| n > cap) {
            return Err(Error::DegreeBound(format!(
                "composites of the characters need t^(1/{lcm}); no finite splitting within {cap}"
            )));
        }
        let mut next = Vec::new();
        for x in &frontier {
            for e in exponents {
                let y = x * e;
                if seen.len() > 4 * cap {
                    return Err(Error::DegreeBound(format!("more than {} distinct composites", 4 * cap)));
                }
                if seen.insert(y.clone()) {
                    lcm = lcm.lcm(y.denom());
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    lcm.to_usize().ok_or_else(|| Error::DegreeBound(format!("t^(1/{lcm})")))
}
