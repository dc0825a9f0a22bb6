//! Finite groups given by multiplication tables.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};

/// A finite group on `0..n` with `table[a][b] = a·b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// Validates associativity, identity and inverses.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<FiniteGroup> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::Invalid("malformed group table".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::Invalid("group table has no identity".into()))?;
        let mut inverses = vec![0; n];
        for a in 0..n {
            inverses[a] = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| Error::Invalid(format!("element {a} has no inverse")))?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::Invalid("group table is not associative".into()));
                    }
                }
            }
        }
        Ok(FiniteGroup { table, identity, inverses })
    }

    /// The cyclic group of order n.
    pub fn cyclic(n: usize) -> FiniteGroup {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::from_table(table).unwrap()
    }

    /// The symmetric group on `k` letters, permutations in lexicographic order.
    pub fn symmetric(k: usize) -> FiniteGroup {
        let perms = permutations(k);
        let index: HashMap<Vec<usize>, usize> =
            perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        // (a·b)(x) = a(b(x))
        let table = perms
            .iter()
            .map(|a| perms.iter().map(|b| index[&b.iter().map(|&x| a[x]).collect::<Vec<_>>()]).collect())
            .collect();
        FiniteGroup::from_table(table).unwrap()
    }

    /// Direct product with pairs indexed by `a·|other| + b`.
    pub fn product(&self, other: &FiniteGroup) -> FiniteGroup {
        let m = other.order();
        let n = self.order() * m;
        let table = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| self.mul(x / m, y / m) * m + other.mul(x % m, y % m))
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(table).unwrap()
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Subgroup generated by a set of elements.
    pub fn generated(&self, gens: &[usize]) -> BTreeSet<usize> {
        let mut set: BTreeSet<usize> = BTreeSet::new();
        set.insert(self.identity);
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set
    }

    pub fn is_subgroup(&self, s: &BTreeSet<usize>) -> bool {
        s.contains(&self.identity)
            && s.iter().all(|&a| s.contains(&self.inv(a)) && s.iter().all(|&b| s.contains(&self.mul(a, b))))
    }

    pub fn is_normal(&self, s: &BTreeSet<usize>) -> bool {
        self.is_subgroup(s)
            && (0..self.order()).all(|g| {
                s.iter().all(|&h| s.contains(&self.mul(self.mul(g, h), self.inv(g))))
            })
    }

    /// Normal subgroups of the given order that are elementary abelian 2-groups.
    pub fn normal_klein_like(&self, order: usize) -> Vec<BTreeSet<usize>> {
        let n = self.order();
        let invols: Vec<usize> = (0..n).filter(|&a| self.element_order(a) <= 2).collect();
        let mut found: Vec<BTreeSet<usize>> = Vec::new();
        for (i, &a) in invols.iter().enumerate() {
            for &b in &invols[i..] {
                let s = self.generated(&[a, b]);
                if s.len() == order
                    && s.iter().all(|&x| self.element_order(x) <= 2)
                    && self.is_normal(&s)
                    && !found.contains(&s)
                {
                    found.push(s);
                }
            }
        }
        found
    }

    /// True if the group is a semidirect product of a normal elementary abelian
    /// subgroup of order `k` by a subgroup of order `n / k` meeting it trivially.
    pub fn splits_over_elementary_abelian(&self, k: usize) -> bool {
        let n = self.order();
        if n % k != 0 {
            return false;
        }
        let q = n / k;
        for v in self.normal_klein_like(k) {
            for c in 0..n {
                let s = self.generated(&[c]);
                if s.len() == q && s.intersection(&v).count() == 1 {
                    return true;
                }
            }
        }
        false
    }
}

pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_groups() {
        assert_eq!(FiniteGroup::cyclic(1).order(), 1);
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        let v4 = FiniteGroup::cyclic(2).product(&FiniteGroup::cyclic(2));
        assert!(v4.is_abelian());
        assert_eq!(v4.normal_klein_like(4).len(), 1);
    }

    #[test]
    fn dihedral_of_order_eight_splits_over_klein() {
        // D4 as permutations of the square's vertices inside S4
        let s4 = FiniteGroup::symmetric(4);
        let perms = permutations(4);
        let idx = |p: [usize; 4]| perms.iter().position(|q| q[..] == p[..]).unwrap();
        let d4 = s4.generated(&[idx([1, 2, 3, 0]), idx([3, 2, 1, 0])]);
        assert_eq!(d4.len(), 8);
        let elems: Vec<usize> = d4.iter().copied().collect();
        let pos = |x: usize| elems.iter().position(|&y| y == x).unwrap();
        let table = elems.iter().map(|&a| elems.iter().map(|&b| pos(s4.mul(a, b))).collect()).collect();
        let g = FiniteGroup::from_table(table).unwrap();
        assert!(!g.is_abelian());
        assert!(g.splits_over_elementary_abelian(4));
        assert!(!FiniteGroup::cyclic(8).splits_over_elementary_abelian(4));
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]]).is_err());
    }
}
