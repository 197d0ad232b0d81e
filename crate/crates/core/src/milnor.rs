//! Formal Milnor symbols over the base field.
//!
//! Every symbol is expanded multiplicatively into atoms: `[-1]`, primes and
//! formal symbols on the rational and formal backends, a single residue on a
//! prime field. On top of graded commutativity the normal form uses
//! `[a][a] = -[-1][a]` and `2[-1] = 0`; prime fields additionally truncate
//! degrees >= 2, which holds because `K^M_n` of a finite field vanishes for
//! `n >= 2` (a standard fact, not derived here).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::numtheory::{factor, pow_mod};
use crate::scalar::{Field, Scalar};
use crate::units::FieldUnit;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    MinusOne,
    Prime(u64),
    Symbol(String),
    Residue(u64),
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::MinusOne => write!(f, "-1"),
            Atom::Prime(p) => write!(f, "{p}"),
            Atom::Symbol(s) => write!(f, "{s}"),
            Atom::Residue(r) => write!(f, "{r}"),
        }
    }
}

/// A product of atoms `[a_1]...[a_d]` in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MilnorTerm(pub Vec<Atom>);

impl MilnorTerm {
    pub fn degree(&self) -> usize {
        self.0.len()
    }

    fn has_minus_one(&self) -> bool {
        self.0.first() == Some(&Atom::MinusOne)
    }
}

impl Ord for MilnorTerm {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.0.len(), &self.0).cmp(&(other.0.len(), &other.0))
    }
}

impl PartialOrd for MilnorTerm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sorts atoms with the anticommutation sign and removes repeated atoms via
/// `[a][a] = -[-1][a]`.
fn canonical_atoms(mut atoms: Vec<Atom>) -> (i64, Vec<Atom>) {
    let mut sign = 1;
    loop {
        for i in 1..atoms.len() {
            let mut j = i;
            while j > 0 && atoms[j - 1] > atoms[j] {
                atoms.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        let dup = (1..atoms.len()).find(|&i| atoms[i] == atoms[i - 1] && atoms[i] != Atom::MinusOne);
        match dup {
            Some(i) => {
                atoms[i - 1] = Atom::MinusOne;
                sign = -sign;
            }
            None => return (sign, atoms),
        }
    }
}

/// Outcome of a zero test on a backend that may not decide it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ZeroTest {
    Zero,
    Nonzero,
    Unknown,
}

impl ZeroTest {
    pub fn as_str(&self) -> &'static str {
        match self {
            ZeroTest::Zero => "zero",
            ZeroTest::Nonzero => "nonzero",
            ZeroTest::Unknown => "unknown",
        }
    }
}

/// Integer combination of Milnor terms, i.e. an element of `K^M_*(K)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoefficientElement {
    field: Field,
    terms: BTreeMap<MilnorTerm, i64>,
}

impl CoefficientElement {
    pub fn zero(field: &Field) -> Self {
        CoefficientElement {
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn integer(field: &Field, n: i64) -> Self {
        let mut c = CoefficientElement::zero(field);
        c.add_term(MilnorTerm(vec![]), n);
        c
    }

    pub fn one(field: &Field) -> Self {
        CoefficientElement::integer(field, 1)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MilnorTerm, i64)> {
        self.terms.iter().map(|(t, &n)| (t, n))
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(MilnorTerm::degree).max()
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().map(MilnorTerm::degree).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.min_degree() == self.max_degree()
    }

    /// Degree-0 integer part.
    pub fn integer_part(&self) -> i64 {
        self.terms.get(&MilnorTerm(vec![])).copied().unwrap_or(0)
    }

    pub fn part(&self, degree: usize) -> CoefficientElement {
        CoefficientElement {
            field: self.field.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(t, _)| t.degree() == degree)
                .map(|(t, &n)| (t.clone(), n))
                .collect(),
        }
    }

    fn add_term(&mut self, term: MilnorTerm, n: i64) {
        if matches!(self.field, Field::Prime(_)) && term.degree() >= 2 {
            return;
        }
        if let (Field::Prime(p), 1) = (&self.field, term.degree()) {
            let Atom::Residue(r) = term.0[0] else { unreachable!() };
            self.fold_residue(*p, r, n);
            return;
        }
        let (sign, atoms) = canonical_atoms(term.0);
        let term = MilnorTerm(atoms);
        let torsion = term.has_minus_one();
        // [-1][2] is a Steinberg element since -1 + 2 = 1, and it generates an ideal
        if torsion && term.0.contains(&Atom::Prime(2)) {
            return;
        }
        let entry = self.terms.entry(term.clone()).or_insert(0);
        *entry += sign * n;
        if torsion {
            *entry = entry.rem_euclid(2);
        }
        if *entry == 0 {
            self.terms.remove(&term);
        }
    }

    fn fold_residue(&mut self, p: u64, r: u64, n: i64) {
        let order = p - 1;
        let e = n.rem_euclid(order as i64) as u64;
        let current = self
            .terms
            .keys()
            .find(|t| t.degree() == 1)
            .cloned();
        let mut acc = pow_mod(r, e, p);
        if let Some(t) = current {
            let Atom::Residue(old) = t.0[0] else { unreachable!() };
            acc = crate::numtheory::mul_mod(acc, old, p);
            self.terms.remove(&t);
        }
        if acc != 1 {
            self.terms.insert(MilnorTerm(vec![Atom::Residue(acc)]), 1);
        }
    }

    /// The degree-1 symbol `[lambda]`; `[1] = 0`.
    pub fn symbol(field: &Field, lambda: &FieldUnit) -> Result<Self> {
        let mut c = CoefficientElement::zero(field);
        match field {
            Field::Prime(p) => {
                if !lambda.symbols.is_empty() {
                    return Err(Error::precondition("formal symbols need the formal backend"));
                }
                let Scalar::Residue { value, modulus } = lambda.value else {
                    return Err(Error::precondition("scalar is not a residue"));
                };
                assert_eq!(modulus, *p);
                c.add_term(MilnorTerm(vec![Atom::Residue(value)]), 1);
            }
            Field::Rationals | Field::Formal => {
                if *field == Field::Rationals && !lambda.symbols.is_empty() {
                    return Err(Error::precondition("formal symbols need the formal backend"));
                }
                let q = lambda
                    .value
                    .as_rational()
                    .ok_or_else(|| Error::precondition("scalar is not rational"))?;
                if q.is_negative() {
                    c.add_term(MilnorTerm(vec![Atom::MinusOne]), 1);
                }
                let too_large = || Error::ScalarTooLarge(lambda.value.to_string());
                let num = q.numer().abs().to_u64().ok_or_else(too_large)?;
                let den = q.denom().to_u64().ok_or_else(too_large)?;
                for (prime, e) in factor(num) {
                    c.add_term(MilnorTerm(vec![Atom::Prime(prime)]), e as i64);
                }
                for (prime, e) in factor(den) {
                    c.add_term(MilnorTerm(vec![Atom::Prime(prime)]), -(e as i64));
                }
                for (s, e) in &lambda.symbols {
                    c.add_term(MilnorTerm(vec![Atom::Symbol(s.clone())]), *e);
                }
            }
        }
        Ok(c)
    }

    /// Reassembles the degree-1 part as a single field unit.
    pub fn degree_one_unit(&self) -> FieldUnit {
        let mut u = FieldUnit::one(&self.field);
        for (t, &n) in self.terms.iter().filter(|(t, _)| t.degree() == 1) {
            let factor = match &t.0[0] {
                Atom::MinusOne => FieldUnit::minus_one(&self.field),
                Atom::Prime(p) => FieldUnit::from_scalar(Scalar::Rational(BigRational::from_integer(BigInt::from(*p)))).unwrap(),
                Atom::Symbol(s) => FieldUnit::formal(Field::Rationals.one(), [(s.clone(), 1)]).unwrap(),
                Atom::Residue(r) => FieldUnit::from_scalar(Scalar::Residue {
                    value: *r,
                    modulus: self.field.characteristic(),
                })
                .unwrap(),
            };
            u = u.mul(&factor.pow(n));
        }
        u
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.field, other.field, "coefficients over different backends");
        let mut out = self.clone();
        for (t, &n) in &other.terms {
            out.add_term(t.clone(), n);
        }
        out
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut out = CoefficientElement::zero(&self.field);
        for (t, &n) in &self.terms {
            out.add_term(t.clone(), n * k);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn steinberg_pair(&self, other: &Self) -> bool {
        if matches!(self.field, Field::Prime(_)) {
            return false;
        }
        let pure = |c: &Self| c.min_degree() == Some(1) && c.max_degree() == Some(1);
        if !pure(self) || !pure(other) {
            return false;
        }
        let (a, b) = (self.degree_one_unit(), other.degree_one_unit());
        if !a.is_concrete() || !b.is_concrete() {
            return false;
        }
        (&a.value + &b.value).is_one()
    }

    /// Graded-commutative product in normal form. Only the term-level rules
    /// apply here, so the result does not depend on how a product is bracketed.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.field, other.field, "coefficients over different backends");
        let mut out = CoefficientElement::zero(&self.field);
        for (s, &m) in &self.terms {
            for (t, &n) in &other.terms {
                let atoms: Vec<Atom> = s.0.iter().chain(&t.0).cloned().collect();
                out.add_term(MilnorTerm(atoms), m * n);
            }
        }
        out
    }

    /// Product that additionally sends `[lambda][1 - lambda]` to 0 when both
    /// factors are single concrete symbols. Not used inside ring reduction:
    /// mixing it with the term rules is not confluent.
    pub fn coeff_mul(&self, other: &Self) -> Self {
        if self.steinberg_pair(other) {
            return CoefficientElement::zero(&self.field);
        }
        self.mul(other)
    }

    /// Multiplies by `(-1)^(degree)` termwise, i.e. the sign picked up when an
    /// odd element moves past this one.
    pub fn parity_twist(&self) -> Self {
        let mut out = CoefficientElement::zero(&self.field);
        for (t, &n) in &self.terms {
            let sign = if t.degree() % 2 == 0 { 1 } else { -1 };
            out.add_term(t.clone(), sign * n);
        }
        out
    }

    /// Re-runs normalisation; a no-op on values built through this API.
    pub fn renormalized(&self) -> Self {
        let mut out = CoefficientElement::zero(&self.field);
        for (t, &n) in &self.terms {
            out.add_term(t.clone(), n);
        }
        out
    }

    pub fn is_zero(&self) -> ZeroTest {
        if self.terms.is_empty() {
            return ZeroTest::Zero;
        }
        match self.field {
            Field::Prime(_) => ZeroTest::Nonzero,
            Field::Rationals => {
                if self.min_degree().unwrap() <= 1 {
                    ZeroTest::Nonzero
                } else {
                    ZeroTest::Unknown
                }
            }
            Field::Formal => {
                if self.integer_part() != 0 {
                    ZeroTest::Nonzero
                } else {
                    ZeroTest::Unknown
                }
            }
        }
    }
}

impl fmt::Display for CoefficientElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(t, &n)| {
                if t.degree() == 0 {
                    return n.to_string();
                }
                let body: String = t.0.iter().map(|a| format!("[{a}]")).collect();
                if n == 1 {
                    body
                } else {
                    format!("{body}·{n}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(field: &Field, n: i64, d: i64) -> FieldUnit {
        let geometry = if *field == Field::Formal { Field::Rationals } else { field.clone() };
        FieldUnit::from_scalar(geometry.from_ratio(n, d)).unwrap()
    }

    fn sym(field: &Field, n: i64) -> CoefficientElement {
        CoefficientElement::symbol(field, &unit(field, n, 1)).unwrap()
    }

    fn formal(name: &str) -> CoefficientElement {
        let u = FieldUnit::formal(Field::Rationals.one(), [(name.to_string(), 1)]).unwrap();
        CoefficientElement::symbol(&Field::Formal, &u).unwrap()
    }

    #[test]
    fn symbol_examples() {
        let q = Field::Rationals;
        assert!(sym(&q, 1).is_empty());
        let f5 = Field::Prime(5);
        assert!(sym(&f5, 2).add(&sym(&f5, 3)).is_empty());
        let s = CoefficientElement::symbol(&q, &unit(&q, -4, 9)).unwrap();
        assert_eq!(s.to_string(), "[-1] + [2]·2 + [3]·-2");
        assert_eq!(s.degree_one_unit(), unit(&q, -4, 9));
    }

    #[test]
    fn product_examples() {
        let f2 = Field::Prime(2);
        assert!(sym(&f2, 1).is_empty());
        assert!(CoefficientElement::symbol(&f2, &FieldUnit::minus_one(&f2)).unwrap().is_empty());
        let fm = Field::Formal;
        let three_two = CoefficientElement::symbol(&fm, &unit(&fm, 3, 1))
            .unwrap()
            .mul(&CoefficientElement::symbol(&fm, &unit(&fm, 2, 1)).unwrap());
        assert_eq!(three_two.to_string(), "[2][3]·-1");
        let a = formal("a");
        let minus_one = CoefficientElement::symbol(&fm, &FieldUnit::minus_one(&fm)).unwrap();
        assert_eq!(a.mul(&a), minus_one.mul(&a).neg());
        assert_eq!(a.mul(&a).to_string(), "[-1][a]");
    }

    #[test]
    fn zero_tests() {
        let q = Field::Rationals;
        assert_eq!(CoefficientElement::zero(&q).is_zero(), ZeroTest::Zero);
        let f7 = Field::Prime(7);
        assert_eq!(sym(&f7, 3).mul(&sym(&f7, 5)).is_zero(), ZeroTest::Zero);
        assert_eq!(sym(&f7, 3).is_zero(), ZeroTest::Nonzero);
        assert_eq!(sym(&q, 2).mul(&sym(&q, 3)).is_zero(), ZeroTest::Unknown);
        assert_eq!(sym(&q, -1).is_zero(), ZeroTest::Nonzero);
        assert_eq!(formal("a").is_zero(), ZeroTest::Unknown);
        assert_eq!(CoefficientElement::integer(&Field::Formal, 3).is_zero(), ZeroTest::Nonzero);
    }

    #[test]
    fn steinberg_detection_on_concrete_pairs() {
        let q = Field::Rationals;
        assert!(sym(&q, 2).mul(&sym(&q, -1)).is_empty());
        let third = CoefficientElement::symbol(&q, &unit(&q, 1, 3)).unwrap();
        let two_thirds = CoefficientElement::symbol(&q, &unit(&q, 2, 3)).unwrap();
        assert!(third.coeff_mul(&two_thirds).is_empty());
        assert!(!third.mul(&two_thirds).is_empty());
        assert!(sym(&q, 3).coeff_mul(&sym(&q, -2)).is_empty());
        assert!(!sym(&q, 3).coeff_mul(&sym(&q, 5)).is_empty());
        // [-1][-1] survives and is 2-torsion
        let m = sym(&q, -1).mul(&sym(&q, -1));
        assert_eq!(m.to_string(), "[-1][-1]");
        assert!(m.add(&m).is_empty());
    }

    #[test]
    fn torsion_of_minus_one() {
        for field in [Field::Prime(2), Field::Prime(5), Field::Rationals, Field::Formal] {
            let m = CoefficientElement::symbol(&field, &FieldUnit::minus_one(&field)).unwrap();
            assert!(m.add(&m).is_empty(), "{field}");
        }
    }
}
