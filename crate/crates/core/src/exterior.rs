//! The exterior algebra on the hyperplane classes and its quotient by the
//! ideal of empty-intersection monomials and boundaries of dependent sets.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::arrangement::{AffineDependency, Arrangement};
use crate::combinatorics::{binomial, combinations, is_subset, sort_with_sign};
use crate::linalg::{rank, rref, smith_form};
use crate::scalar::{Field, Scalar};

/// Integer combination of exterior monomials `e_S`, `S` strictly increasing.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ExteriorElement {
    terms: BTreeMap<Vec<usize>, i64>,
}

impl ExteriorElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(indices: &[usize]) -> Self {
        Self::term(indices, 1)
    }

    /// `coeff * e_{i_1} ^ ... ^ e_{i_k}` for an arbitrary index sequence.
    pub fn term(indices: &[usize], coeff: i64) -> Self {
        let mut out = Self::zero();
        let distinct: BTreeSet<_> = indices.iter().collect();
        if distinct.len() == indices.len() {
            let (sign, sorted) = sort_with_sign(indices);
            out.add_term(sorted, sign * coeff);
        }
        out
    }

    fn add_term(&mut self, s: Vec<usize>, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry(s.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&s);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, i64)> {
        self.terms.iter().map(|(s, &c)| (s, c))
    }

    pub fn coefficient(&self, s: &[usize]) -> i64 {
        self.terms.get(s).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (s, &c) in &other.terms {
            out.add_term(s.clone(), c);
        }
        out
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut out = Self::zero();
        for (s, &c) in &self.terms {
            out.add_term(s.clone(), c * k);
        }
        out
    }

    pub fn wedge(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (s, &a) in &self.terms {
            for (t, &b) in &other.terms {
                let seq: Vec<usize> = s.iter().chain(t).copied().collect();
                for (u, c) in Self::term(&seq, a * b).terms {
                    out.add_term(u, c);
                }
            }
        }
        out
    }

    /// `sum_k (-1)^k e_{S minus s_k}` with `k` counted from 1.
    pub fn boundary_of(indices: &[usize]) -> Self {
        let mut out = Self::zero();
        for k in 0..indices.len() {
            let mut rest = indices.to_vec();
            rest.remove(k);
            let sign = if (k + 1) % 2 == 0 { 1 } else { -1 };
            out.add_term(rest, sign);
        }
        out
    }

    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(Vec::len);
        let d = degrees.next()?;
        degrees.all(|e| e == d).then_some(d)
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(s, c)| {
                let name = if s.is_empty() {
                    "1".to_string()
                } else {
                    format!("e{}", s.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join("_"))
                };
                format!("{c}*{name}")
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Ranks and elementary divisors of the quotient, per degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedRanks {
    pub ranks: Vec<usize>,
    /// Nonzero Smith invariants of the degree-d relation matrix.
    pub elementary_divisors: Vec<Vec<BigInt>>,
}

impl GradedRanks {
    pub fn total(&self) -> usize {
        self.ranks.iter().sum()
    }

    /// True when every elementary divisor is 1, i.e. each graded piece is free.
    pub fn is_free(&self) -> bool {
        self.elementary_divisors.iter().flatten().all(|d| d.is_one())
    }

    /// Ranks with trailing zero degrees removed.
    pub fn trimmed(&self) -> Vec<usize> {
        let mut v = self.ranks.clone();
        while v.len() > 1 && v.last() == Some(&0) {
            v.pop();
        }
        v
    }
}

fn generator_of(c: &AffineDependency) -> ExteriorElement {
    if c.constant == 1 {
        ExteriorElement::monomial(&c.indices)
    } else {
        ExteriorElement::boundary_of(&c.indices)
    }
}

/// Generators of the ideal: `e_C` for minimal empty intersections and the
/// boundary of each minimal codimension-deficient set.
pub fn os_generators(arr: &Arrangement) -> Vec<ExteriorElement> {
    arr.circuits().iter().map(generator_of).collect()
}

/// Integer rows spanning the degree-`d` part of the ideal, over the
/// lexicographic monomial basis.
fn ideal_rows(r: usize, generators: &[ExteriorElement], d: usize) -> (Vec<Vec<usize>>, Vec<Vec<i64>>) {
    let columns = combinations(r, d);
    let index: BTreeMap<&Vec<usize>, usize> = columns.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut rows = Vec::new();
    for g in generators {
        let Some(dg) = g.homogeneous_degree() else { continue };
        if dg > d {
            continue;
        }
        for m in combinations(r, d - dg) {
            let prod = g.wedge(&ExteriorElement::monomial(&m));
            if prod.is_zero() {
                continue;
            }
            let mut row = vec![0i64; columns.len()];
            for (s, c) in prod.terms() {
                row[index[s]] = c;
            }
            rows.push(row);
        }
    }
    (columns, rows)
}

/// Graded ranks of the quotient via Smith normal form over the integers.
pub fn graded_rank(arr: &Arrangement) -> GradedRanks {
    let r = arr.len();
    let gens = os_generators(arr);
    let mut ranks = Vec::with_capacity(r + 1);
    let mut divisors = Vec::with_capacity(r + 1);
    for d in 0..=r {
        let (columns, rows) = ideal_rows(r, &gens, d);
        let big: Vec<Vec<BigInt>> = rows.into_iter().map(|row| row.into_iter().map(BigInt::from).collect()).collect();
        let form = smith_form(big, columns.len());
        ranks.push(binomial(r, d) - form.rank);
        divisors.push(form.invariants);
    }
    GradedRanks {
        ranks,
        elementary_divisors: divisors,
    }
}

/// Graded ranks computed by row reduction over the rationals.
pub fn graded_rank_rational(arr: &Arrangement) -> Vec<usize> {
    let r = arr.len();
    let gens = os_generators(arr);
    let q = Field::Rationals;
    (0..=r)
        .map(|d| {
            let (columns, rows) = ideal_rows(r, &gens, d);
            let rows: Vec<Vec<Scalar>> = rows.iter().map(|row| row.iter().map(|&v| q.from_i64(v)).collect()).collect();
            binomial(r, d) - rank(&rows, columns.len())
        })
        .collect()
}

/// Whether `s` contains no broken circuit and no empty-intersection circuit.
pub fn is_nbc(s: &[usize], circuits: &[AffineDependency]) -> bool {
    circuits.iter().all(|c| {
        if c.constant == 1 {
            !is_subset(&c.indices, s)
        } else {
            !is_subset(&c.indices[1..], s)
        }
    })
}

/// The no-broken-circuit monomials in the input order, by degree then lexicographically.
pub fn nbc_basis(arr: &Arrangement) -> Vec<Vec<usize>> {
    let circuits = arr.circuits();
    let r = arr.len();
    let max = arr.dimension().min(r);
    (0..=max)
        .flat_map(|d| combinations(r, d))
        .filter(|s| is_nbc(s, &circuits))
        .collect()
}

/// Reduction of exterior elements modulo the ideal into nbc coordinates,
/// computed by linear algebra independently of the ring rewriting.
#[derive(Clone, Debug)]
pub struct QuotientReducer {
    /// For each non-nbc monomial, its class as an integer combination of nbc monomials.
    substitution: BTreeMap<Vec<usize>, ExteriorElement>,
    nbc: BTreeSet<Vec<usize>>,
}

/// Failure of the nbc monomials to form a basis of the quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuotientError {
    NotSpanning { degree: usize },
    NonIntegral { monomial: Vec<usize> },
}

impl QuotientReducer {
    pub fn new(arr: &Arrangement) -> Result<Self, QuotientError> {
        let r = arr.len();
        let gens = os_generators(arr);
        let nbc: BTreeSet<Vec<usize>> = nbc_basis(arr).into_iter().collect();
        let q = Field::Rationals;
        let mut substitution = BTreeMap::new();
        for d in 0..=r {
            let (columns, rows) = ideal_rows(r, &gens, d);
            // non-nbc columns first so they become the pivots
            let mut order: Vec<usize> = (0..columns.len()).filter(|&i| !nbc.contains(&columns[i])).collect();
            let broken = order.len();
            order.extend((0..columns.len()).filter(|&i| nbc.contains(&columns[i])));
            let mut m: Vec<Vec<Scalar>> = rows
                .iter()
                .map(|row| order.iter().map(|&i| q.from_i64(row[i])).collect())
                .collect();
            let pivots = rref(&mut m, columns.len());
            if pivots != (0..broken).collect::<Vec<_>>() {
                return Err(QuotientError::NotSpanning { degree: d });
            }
            for (row, &p) in m.iter().zip(&pivots) {
                let mono = columns[order[p]].clone();
                let mut image = ExteriorElement::zero();
                for k in broken..columns.len() {
                    let c = row[k].as_rational().unwrap();
                    if c.is_zero() {
                        continue;
                    }
                    if !c.is_integer() {
                        return Err(QuotientError::NonIntegral { monomial: mono });
                    }
                    let v = (-c).to_integer().to_i64().expect("small coefficient");
                    image.add_term(columns[order[k]].clone(), v);
                }
                substitution.insert(mono, image);
            }
        }
        Ok(QuotientReducer { substitution, nbc })
    }

    pub fn reduce(&self, x: &ExteriorElement) -> ExteriorElement {
        let mut out = ExteriorElement::zero();
        for (s, c) in x.terms() {
            if self.nbc.contains(s) {
                out.add_term(s.clone(), c);
            } else if let Some(image) = self.substitution.get(s) {
                out = out.add(&image.scale(c));
            }
        }
        out
    }

    pub fn is_basis_monomial(&self, s: &[usize]) -> bool {
        self.nbc.contains(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::samples::*;

    fn e(s: &[usize]) -> ExteriorElement {
        ExteriorElement::monomial(s)
    }

    #[test]
    fn wedge_examples() {
        assert_eq!(e(&[0]).wedge(&e(&[1])), e(&[0, 1]));
        assert_eq!(e(&[1]).wedge(&e(&[0])), e(&[0, 1]).scale(-1));
        assert!(e(&[0]).wedge(&e(&[0])).is_zero());
    }

    #[test]
    fn generator_examples() {
        // boundary of {1,2,3}: -e23 + e13 - e12
        let expected = e(&[1, 2]).scale(-1).add(&e(&[0, 2])).add(&e(&[0, 1]).scale(-1));
        assert_eq!(os_generators(&t()), vec![expected]);
        assert_eq!(os_generators(&l2()), vec![e(&[0, 1])]);
        assert!(os_generators(&b()).is_empty());
    }

    #[test]
    fn rank_examples() {
        let g = graded_rank(&t());
        assert_eq!(g.ranks, vec![1, 3, 2, 0]);
        assert!(g.is_free());
        assert_eq!(graded_rank(&l2()).ranks, vec![1, 2, 0]);
        assert_eq!(graded_rank(&b()).ranks, vec![1, 2, 1]);
        for a in [t(), l2(), b(), p()] {
            assert_eq!(graded_rank(&a).ranks, graded_rank_rational(&a));
        }
    }

    #[test]
    fn nbc_examples() {
        assert_eq!(nbc_basis(&t()), vec![vec![], vec![0], vec![1], vec![2], vec![0, 1], vec![0, 2]]);
        assert_eq!(nbc_basis(&b()), vec![vec![], vec![0], vec![1], vec![0, 1]]);
        assert_eq!(nbc_basis(&l2()), vec![vec![], vec![0], vec![1]]);
    }

    #[test]
    fn quotient_reduction() {
        let red = QuotientReducer::new(&t()).unwrap();
        // e23 = e13 - e12 modulo the boundary relation
        assert_eq!(red.reduce(&e(&[1, 2])), e(&[0, 2]).add(&e(&[0, 1]).scale(-1)));
        let red = QuotientReducer::new(&l2()).unwrap();
        assert!(red.reduce(&e(&[0, 1])).is_zero());
    }

    #[test]
    fn ideal_is_closed_under_products() {
        for a in [t(), l2(), p()] {
            let red = QuotientReducer::new(&a).unwrap();
            for g in os_generators(&a) {
                for d in 0..=a.len() {
                    for m in combinations(a.len(), d) {
                        assert!(red.reduce(&g.wedge(&e(&m))).is_zero());
                    }
                }
            }
        }
    }
}
