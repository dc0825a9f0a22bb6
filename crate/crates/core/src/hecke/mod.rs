//! Hecke algebras `H(G, H)` of `H`-biinvariant rational functions on a finite
//! group, classes of split bimodules in them, Galois idempotents, and the
//! Frobenius–Perron bookkeeping of the Grothendieck ring.
//!
//! Convolution is the counting one, `(u∗v)(g) = Σ_s u(s) v(s⁻¹g)`, with unit
//! `1_H/|H|`; a bimodule with `n_σ` copies of `Eσ` after base change has class
//! `σ ↦ n_σ/|H|`.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::bimod::{characters, split_analysis, Bimodule, SplitAnalysis};
use crate::error::{Error, Result};
use crate::fields::{AutomorphismGroup, Morphism, SplitContext};
use crate::group::FiniteGroup;
use crate::kernel::{Field, Matrix};

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `H\G/H`, each part sorted, ordered by smallest element.
pub fn double_cosets(g: &FiniteGroup, h: &BTreeSet<usize>) -> Result<Vec<Vec<usize>>> {
    if h.iter().any(|&x| x >= g.order()) || !g.is_subgroup(h) {
        return Err(Error::NotASubgroup(format!("{h:?}")));
    }
    let mut seen = vec![false; g.order()];
    let mut out = Vec::new();
    for x in 0..g.order() {
        if seen[x] {
            continue;
        }
        let mut part = BTreeSet::new();
        for &a in h {
            for &b in h {
                part.insert(g.mul(g.mul(a, x), b));
            }
        }
        for &y in &part {
            seen[y] = true;
        }
        out.push(part.into_iter().collect());
    }
    Ok(out)
}

#[derive(Debug, PartialEq, Eq)]
pub struct HeckeAlgebra {
    group: FiniteGroup,
    subgroup: BTreeSet<usize>,
    cosets: Vec<Vec<usize>>,
    coset_of: Vec<usize>,
}

impl HeckeAlgebra {
    pub fn new(group: &FiniteGroup, subgroup: &BTreeSet<usize>) -> Result<Arc<HeckeAlgebra>> {
        let cosets = double_cosets(group, subgroup)?;
        let mut coset_of = vec![0; group.order()];
        for (k, c) in cosets.iter().enumerate() {
            for &x in c {
                coset_of[x] = k;
            }
        }
        Ok(Arc::new(HeckeAlgebra {
            group: group.clone(),
            subgroup: subgroup.clone(),
            cosets,
            coset_of,
        }))
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn subgroup(&self) -> &BTreeSet<usize> {
        &self.subgroup
    }

    pub fn cosets(&self) -> &[Vec<usize>] {
        &self.cosets
    }

    pub fn coset_of(&self, g: usize) -> usize {
        self.coset_of[g]
    }

    pub fn dim(&self) -> usize {
        self.cosets.len()
    }
}

/// A biinvariant function, one value per double coset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeElement {
    algebra: Arc<HeckeAlgebra>,
    values: Vec<BigRational>,
}

impl HeckeElement {
    pub fn zero(a: &Arc<HeckeAlgebra>) -> HeckeElement {
        HeckeElement {
            algebra: a.clone(),
            values: vec![BigRational::zero(); a.dim()],
        }
    }

    /// `1_H / |H|`.
    pub fn unit(a: &Arc<HeckeAlgebra>) -> HeckeElement {
        let mut u = HeckeElement::zero(a);
        u.values[a.coset_of(a.group.identity())] = BigRational::new(BigInt::one(), BigInt::from(a.subgroup.len()));
        u
    }

    /// Indicator of the `k`-th double coset.
    pub fn indicator(a: &Arc<HeckeAlgebra>, k: usize) -> HeckeElement {
        let mut u = HeckeElement::zero(a);
        u.values[k] = BigRational::one();
        u
    }

    pub fn from_coset_values(a: &Arc<HeckeAlgebra>, values: Vec<BigRational>) -> Result<HeckeElement> {
        if values.len() != a.dim() {
            return Err(Error::Invalid(format!("expected {} coset values", a.dim())));
        }
        Ok(HeckeElement {
            algebra: a.clone(),
            values,
        })
    }

    /// Checks that `f` is constant on double cosets.
    pub fn from_function(a: &Arc<HeckeAlgebra>, f: &[BigRational]) -> Result<HeckeElement> {
        if f.len() != a.group.order() {
            return Err(Error::Invalid("one value per group element".into()));
        }
        let mut values = Vec::with_capacity(a.dim());
        for c in &a.cosets {
            let v = &f[c[0]];
            if c.iter().any(|&x| &f[x] != v) {
                return Err(Error::Invalid("function is not H-biinvariant".into()));
            }
            values.push(v.clone());
        }
        Ok(HeckeElement {
            algebra: a.clone(),
            values,
        })
    }

    pub fn algebra(&self) -> &Arc<HeckeAlgebra> {
        &self.algebra
    }

    pub fn coset_values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn at(&self, g: usize) -> &BigRational {
        &self.values[self.algebra.coset_of(g)]
    }

    pub fn to_function(&self) -> Vec<BigRational> {
        (0..self.algebra.group.order()).map(|g| self.at(g).clone()).collect()
    }

    pub fn support(&self) -> BTreeSet<usize> {
        (0..self.algebra.group.order()).filter(|&g| !self.at(g).is_zero()).collect()
    }

    fn same_algebra(&self, o: &HeckeElement) -> Result<()> {
        if Arc::ptr_eq(&self.algebra, &o.algebra) || self.algebra == o.algebra {
            Ok(())
        } else {
            Err(Error::Invalid("elements of different Hecke algebras".into()))
        }
    }

    pub fn add(&self, o: &HeckeElement) -> Result<HeckeElement> {
        self.same_algebra(o)?;
        Ok(HeckeElement {
            algebra: self.algebra.clone(),
            values: self.values.iter().zip(&o.values).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, o: &HeckeElement) -> Result<HeckeElement> {
        self.add(&o.scale(&rat(-1)))
    }

    pub fn scale(&self, c: &BigRational) -> HeckeElement {
        HeckeElement {
            algebra: self.algebra.clone(),
            values: self.values.iter().map(|a| a * c).collect(),
        }
    }

    /// `(u∗v)(g) = Σ_s u(s) v(s⁻¹g)`, evaluated at one representative per coset.
    pub fn convolve(&self, o: &HeckeElement) -> Result<HeckeElement> {
        self.same_algebra(o)?;
        let a = &self.algebra;
        let g = &a.group;
        let u = self.to_function();
        let v = o.to_function();
        let values = a
            .cosets
            .iter()
            .map(|c| {
                let x = c[0];
                let mut acc = BigRational::zero();
                for (s, us) in u.iter().enumerate() {
                    if us.is_zero() {
                        continue;
                    }
                    let w = &v[g.mul(g.inv(s), x)];
                    if !w.is_zero() {
                        acc += us * w;
                    }
                }
                acc
            })
            .collect();
        Ok(HeckeElement {
            algebra: a.clone(),
            values,
        })
    }
}

/// `[P]` in `H(G, H)` for the group and `H = Gal(E/L)` found by the split analysis.
pub fn class_of_bimodule(sa: &SplitAnalysis) -> Result<HeckeElement> {
    let a = HeckeAlgebra::new(sa.group.group(), &sa.gal_over_l)?;
    let h = BigInt::from(sa.gal_over_l.len());
    let mut f = vec![BigRational::zero(); sa.group.order()];
    for &(i, n) in &sa.multiplicities {
        f[i] = BigRational::new(BigInt::from(n), h.clone());
    }
    HeckeElement::from_function(&a, &f)
}

/// `[P]` inside a supplied group of automorphisms of `E` fixing the base,
/// with `H` the stabilizer of `L`.
pub fn class_in(ambient: &AutomorphismGroup, p: &Bimodule, ctx: &SplitContext) -> Result<HeckeElement> {
    let e = ambient.field();
    let l = p.field();
    let into_e = Morphism::layer_inclusion(l, e);
    let h: BTreeSet<usize> = ambient
        .stabilizer(&crate::fields::Subfield::new(into_e.clone()))
        .into_iter()
        .collect();
    let a = HeckeAlgebra::new(ambient.group(), &h)?;
    let ch = characters(p, ctx)?;
    let f = ambient
        .elements()
        .iter()
        .map(|s| {
            let n = ch.multiplicity(&s.compose(&into_e)?);
            Ok(BigRational::new(BigInt::from(n), BigInt::from(h.len())))
        })
        .collect::<Result<Vec<_>>>()?;
    if f.iter().map(|x| x * BigRational::from_integer(BigInt::from(h.len()))).sum::<BigRational>()
        != rat((p.rank() * h.len()) as i64)
    {
        return Err(Error::Invalid("the ambient group does not carry every character of P".into()));
    }
    HeckeElement::from_function(&a, &f)
}

#[derive(Clone, Debug)]
pub struct GaloisIdempotent {
    pub e: HeckeElement,
    pub d: usize,
    pub group_order: usize,
    pub h_order: usize,
    /// `|H| d / |G|`.
    pub r: usize,
    pub support_is_subgroup: bool,
}

/// `e = [P]/d`, checked to satisfy `e∗e = e` and `e = 1/|G|` on its support.
pub fn galois_idempotent(p: &Bimodule, ctx: &SplitContext) -> Result<GaloisIdempotent> {
    let sa = split_analysis(p, ctx)?;
    let class = class_of_bimodule(&sa)?;
    let d = p.rank();
    let e = class.scale(&BigRational::new(BigInt::one(), BigInt::from(d)));
    if e.convolve(&e)? != e {
        return Err(Error::NotIdempotent("[P]/d is not idempotent".into()));
    }
    let support = e.support();
    let grp = e.algebra().group();
    let support_is_subgroup = grp.is_subgroup(&support);
    let g = support.len();
    let expect = BigRational::new(BigInt::one(), BigInt::from(g));
    if support.iter().any(|&x| e.at(x) != &expect) {
        return Err(Error::NotIdempotent(format!("e is not constant 1/{g} on its support")));
    }
    let h = sa.gal_over_l.len();
    if (h * d) % g != 0 {
        return Err(Error::NotIdempotent(format!("r = {h}·{d}/{g} is not an integer")));
    }
    Ok(GaloisIdempotent {
        e,
        d,
        group_order: g,
        h_order: h,
        r: h * d / g,
        support_is_subgroup,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpDimensions {
    /// `d n_i² / Σ_j n_j²`.
    pub squares: Vec<BigRational>,
    pub integral: bool,
}

pub fn fp_dimensions(n: &[u64], d: u64) -> Result<FpDimensions> {
    if n.is_empty() || d == 0 || n.contains(&0) {
        return Err(Error::Invalid("d and every n_i must be positive".into()));
    }
    let total: u64 = n.iter().map(|x| x * x).sum();
    let squares: Vec<BigRational> = n
        .iter()
        .map(|x| BigRational::new(BigInt::from(d * x * x), BigInt::from(total)))
        .collect();
    let integral = squares.iter().all(|s| s.is_integer());
    Ok(FpDimensions { squares, integral })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpEigenvector {
    /// `Λ = d(X)`.
    pub lambda: i64,
    /// Primitive positive integers with `(Σ r_i X_i) X = Λ Σ r_i X_i`.
    pub r: Vec<i64>,
    /// `d(P)` for `P = Σ r_i X_i`.
    pub dim: i64,
}

/// Exact Frobenius–Perron vector of right multiplication by `X = Σ X_i` in a
/// based ring with fusion rules `X_i X_j = Σ_k n[i][j][k] X_k` and left
/// dimensions `dims`. Checks `P ⊗ P = P^{d(P)}` for the resulting `P`.
pub fn fp_eigenvector(n: &[Vec<Vec<i64>>], dims: &[i64]) -> Result<FpEigenvector> {
    let k = dims.len();
    if n.len() != k || n.iter().any(|r| r.len() != k || r.iter().any(|c| c.len() != k)) {
        return Err(Error::Invalid("fusion rules do not match the number of simples".into()));
    }
    let q = Field::rationals();
    // M[i][l] = Σ_j n[i][j][l]
    let m: Vec<Vec<i64>> = (0..k)
        .map(|i| (0..k).map(|l| (0..k).map(|j| n[i][j][l]).sum()).collect())
        .collect();
    let lambda: i64 = dims.iter().sum();
    // r M = Λ r  ⇔  (Mᵀ − Λ) rᵀ = 0
    let rows: Vec<Vec<i64>> = (0..k)
        .map(|l| (0..k).map(|i| m[i][l] - if i == l { lambda } else { 0 }).collect())
        .collect();
    let ker = Matrix::from_i64(&q, &rows).kernel()?;
    if ker.len() != 1 {
        return Err(Error::Invalid(format!("eigenspace of Λ = {lambda} has dimension {}", ker.len())));
    }
    let v: Vec<BigRational> = ker[0]
        .iter()
        .map(|x| crate::kernel::field::value_as_rational(&q, x).unwrap())
        .collect();
    let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let sign = if ints.iter().any(|x| x.is_negative()) { -1 } else { 1 };
    let r: Vec<i64> = ints.iter().map(|x| (x / &g).to_i64().unwrap() * sign).collect();
    if r.iter().any(|&x| x <= 0) {
        return Err(Error::Invalid("Frobenius–Perron vector is not positive".into()));
    }
    let dim: i64 = r.iter().zip(dims).map(|(a, b)| a * b).sum();
    for l in 0..k {
        let lhs: i64 = (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).map(|(i, j)| r[i] * r[j] * n[i][j][l]).sum();
        if lhs != dim * r[l] {
            return Err(Error::Invalid("P ⊗ P is not d(P)·P".into()));
        }
    }
    Ok(FpEigenvector { lambda, r, dim })
}

#[cfg(test)]
mod tests;
