//! Deletion and restriction recursion: Tate twists, Poincare polynomial and
//! a monomial basis of the cohomology module.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::arrangement::Arrangement;

/// Multiset of Tate twists `n` in the decomposition of the motive.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TwistMultiset {
    pub counts: BTreeMap<usize, usize>,
}

impl TwistMultiset {
    pub fn unit() -> Self {
        TwistMultiset {
            counts: BTreeMap::from([(0, 1)]),
        }
    }

    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn multiplicity(&self, n: usize) -> usize {
        self.counts.get(&n).copied().unwrap_or(0)
    }

    fn union_shifted(&self, other: &TwistMultiset) -> TwistMultiset {
        let mut counts = self.counts.clone();
        for (&n, &m) in &other.counts {
            *counts.entry(n + 1).or_insert(0) += m;
        }
        TwistMultiset { counts }
    }

    /// Coefficients of `sum multiplicity(n) t^n`, without trailing zeros.
    pub fn polynomial(&self) -> Vec<usize> {
        let top = self.counts.keys().next_back().copied().unwrap_or(0);
        (0..=top).map(|n| self.multiplicity(n)).collect()
    }
}

impl fmt::Display for TwistMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.counts.iter().map(|(n, m)| format!("{n}:{m}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

fn twists_rec(arr: &Arrangement, cache: &mut HashMap<String, TwistMultiset>) -> TwistMultiset {
    if arr.is_empty() {
        return TwistMultiset::unit();
    }
    let key = arr.key();
    if let Some(hit) = cache.get(&key) {
        return hit.clone();
    }
    let (deleted, _) = arr.delete(0).expect("nonempty");
    let restricted = arr.restrict(0).expect("nonempty").arrangement;
    let out = twists_rec(&deleted, cache).union_shifted(&twists_rec(&restricted, cache));
    cache.insert(key, out.clone());
    out
}

/// Twist multiset, recursing on the first hyperplane.
pub fn tate_twists(arr: &Arrangement) -> TwistMultiset {
    twists_rec(arr, &mut HashMap::new())
}

pub fn poincare_polynomial(arr: &Arrangement) -> Vec<usize> {
    tate_twists(arr).polynomial()
}

fn basis_rec(arr: &Arrangement, cache: &mut HashMap<String, Vec<Vec<usize>>>) -> Vec<Vec<usize>> {
    if arr.is_empty() {
        return vec![vec![]];
    }
    let key = arr.key();
    if let Some(hit) = cache.get(&key) {
        return hit.clone();
    }
    let last = arr.len() - 1;
    let (deleted, _) = arr.delete(last).expect("nonempty");
    let res = arr.restrict(last).expect("nonempty");
    let lifts = res.lifts();
    // deletion keeps indices 0..last unchanged
    let mut out = basis_rec(&deleted, cache);
    for s in basis_rec(&res.arrangement, cache) {
        let mut m: Vec<usize> = s.iter().map(|&i| lifts[i]).collect();
        m.sort_unstable();
        m.push(last);
        out.push(m);
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    cache.insert(key, out.clone());
    out
}

/// Monomial basis from the split exact sequences, pivoting on the last
/// hyperplane and lifting each restricted hyperplane to its smallest preimage.
/// Sorted by degree, then lexicographically.
pub fn module_basis(arr: &Arrangement) -> Vec<Vec<usize>> {
    basis_rec(arr, &mut HashMap::new())
}

pub fn rank(arr: &Arrangement) -> usize {
    module_basis(arr).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::samples::*;
    use crate::exterior::{graded_rank, nbc_basis};
    use crate::scalar::Field;

    fn gm() -> Arrangement {
        Arrangement::from_integer_rows(Field::Rationals, 1, &[&[0, 1]]).unwrap()
    }

    #[test]
    fn twist_examples() {
        assert_eq!(tate_twists(&gm()).counts, BTreeMap::from([(0, 1), (1, 1)]));
        assert_eq!(tate_twists(&b()).counts, BTreeMap::from([(0, 1), (1, 2), (2, 1)]));
        assert_eq!(tate_twists(&t()).counts, BTreeMap::from([(0, 1), (1, 3), (2, 2)]));
        assert_eq!(poincare_polynomial(&gm()), vec![1, 1]);
        assert_eq!(poincare_polynomial(&l2()), vec![1, 2]);
        assert_eq!(poincare_polynomial(&t()), vec![1, 3, 2]);
    }

    #[test]
    fn basis_examples() {
        assert_eq!(module_basis(&b()), vec![vec![], vec![0], vec![1], vec![0, 1]]);
        assert_eq!(
            module_basis(&t()),
            vec![vec![], vec![0], vec![1], vec![2], vec![0, 1], vec![0, 2]]
        );
        assert_eq!(module_basis(&l2()), vec![vec![], vec![0], vec![1]]);
        assert_eq!(rank(&b()), 4);
        assert_eq!(rank(&t()), 6);
    }

    #[test]
    fn agrees_with_exterior_side() {
        for a in [t(), l2(), b(), p(), gm()] {
            assert_eq!(module_basis(&a), nbc_basis(&a));
            assert_eq!(poincare_polynomial(&a), graded_rank(&a).trimmed());
        }
    }
}
