//! Units of the complement: `lambda * prod phi_i^{e_i}`.

use std::collections::BTreeMap;
use std::fmt;

use crate::arrangement::{Arrangement, LinearForm, Restriction, Trace};
use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

/// A nonzero field element, optionally times a Laurent monomial in formal
/// symbols (formal backend only).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldUnit {
    pub value: Scalar,
    pub symbols: BTreeMap<String, i64>,
}

impl FieldUnit {
    pub fn from_scalar(value: Scalar) -> Result<FieldUnit> {
        if value.is_zero() {
            return Err(Error::ZeroUnit);
        }
        Ok(FieldUnit {
            value,
            symbols: BTreeMap::new(),
        })
    }

    pub fn formal(value: Scalar, symbols: impl IntoIterator<Item = (String, i64)>) -> Result<FieldUnit> {
        let mut u = FieldUnit::from_scalar(value)?;
        for (s, e) in symbols {
            *u.symbols.entry(s).or_insert(0) += e;
        }
        u.symbols.retain(|_, e| *e != 0);
        Ok(u)
    }

    pub fn one(field: &Field) -> FieldUnit {
        FieldUnit::from_scalar(field_one(field)).unwrap()
    }

    pub fn minus_one(field: &Field) -> FieldUnit {
        FieldUnit::from_scalar(-&field_one(field)).unwrap()
    }

    pub fn is_one(&self) -> bool {
        self.value.is_one() && self.symbols.is_empty()
    }

    pub fn is_concrete(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn mul(&self, other: &FieldUnit) -> FieldUnit {
        let mut symbols = self.symbols.clone();
        for (s, e) in &other.symbols {
            *symbols.entry(s.clone()).or_insert(0) += e;
        }
        symbols.retain(|_, e| *e != 0);
        FieldUnit {
            value: &self.value * &other.value,
            symbols,
        }
    }

    pub fn inv(&self) -> FieldUnit {
        FieldUnit {
            value: self.value.inv(),
            symbols: self.symbols.iter().map(|(s, e)| (s.clone(), -e)).collect(),
        }
    }

    pub fn pow(&self, n: i64) -> FieldUnit {
        FieldUnit {
            value: self.value.pow(n),
            symbols: self
                .symbols
                .iter()
                .filter(|_| n != 0)
                .map(|(s, e)| (s.clone(), e * n))
                .collect(),
        }
    }

    pub fn neg(&self) -> FieldUnit {
        FieldUnit {
            value: -&self.value,
            symbols: self.symbols.clone(),
        }
    }
}

pub(crate) fn field_one(field: &Field) -> Scalar {
    match field {
        Field::Formal => Field::Rationals.one(),
        f => f.one(),
    }
}

impl fmt::Display for FieldUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.value.is_one() || self.symbols.is_empty() {
            parts.push(self.value.to_string());
        }
        for (s, e) in &self.symbols {
            if *e == 1 {
                parts.push(s.clone());
            } else {
                parts.push(format!("{s}^{e}"));
            }
        }
        write!(f, "{}", parts.join("*"))
    }
}

/// `scalar * prod_i phi_i^{exponents[i]}` for the defining polynomials of an arrangement.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnitElement {
    pub scalar: FieldUnit,
    pub exponents: Vec<i64>,
}

impl UnitElement {
    pub fn new(scalar: FieldUnit, exponents: Vec<i64>) -> UnitElement {
        UnitElement { scalar, exponents }
    }

    pub fn one(field: &Field, r: usize) -> UnitElement {
        UnitElement::new(FieldUnit::one(field), vec![0; r])
    }

    pub fn constant(scalar: FieldUnit, r: usize) -> UnitElement {
        UnitElement::new(scalar, vec![0; r])
    }

    /// The defining polynomial of hyperplane `i`.
    pub fn generator(field: &Field, r: usize, i: usize) -> UnitElement {
        let mut e = vec![0; r];
        e[i] = 1;
        UnitElement::new(FieldUnit::one(field), e)
    }

    pub fn is_one(&self) -> bool {
        self.scalar.is_one() && self.exponents.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &UnitElement) -> UnitElement {
        UnitElement {
            scalar: self.scalar.mul(&other.scalar),
            exponents: self.exponents.iter().zip(&other.exponents).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn inv(&self) -> UnitElement {
        UnitElement {
            scalar: self.scalar.inv(),
            exponents: self.exponents.iter().map(|e| -e).collect(),
        }
    }

    pub fn scaled(&self, s: &FieldUnit) -> UnitElement {
        UnitElement {
            scalar: self.scalar.mul(s),
            exponents: self.exponents.clone(),
        }
    }

    /// Parses `2*h1^2*h3^-1`, `-h2`, `a*h1` (formal symbol `a`), `-1/2`.
    /// Hyperplane indices in the text are 1-based.
    pub fn parse(text: &str, arr: &Arrangement) -> Result<UnitElement> {
        let field = arr.field();
        let mut scalar = FieldUnit::one(field);
        let mut exponents = vec![0i64; arr.len()];
        let mut body = text.trim();
        if body.is_empty() {
            return Err(Error::parse(text, "empty unit"));
        }
        if let Some(rest) = body.strip_prefix('-') {
            if rest.starts_with(|c: char| c.is_ascii_alphabetic() || c == '(') {
                scalar = scalar.neg();
                body = rest;
            }
        }
        for token in body.split('*') {
            let token = token.trim();
            let (base, exp) = match token.split_once('^') {
                Some((b, e)) => {
                    let e: i64 = e
                        .trim()
                        .trim_start_matches('(')
                        .trim_end_matches(')')
                        .parse()
                        .map_err(|_| Error::parse(text, format!("bad exponent in `{token}`")))?;
                    (b.trim(), e)
                }
                None => (token, 1),
            };
            if base.is_empty() {
                return Err(Error::parse(text, "empty factor"));
            }
            let is_index = base.len() > 1
                && base.starts_with('h')
                && base[1..].chars().all(|c| c.is_ascii_digit());
            if is_index {
                let i: usize = base[1..].parse().unwrap();
                if i == 0 || i > arr.len() {
                    return Err(Error::parse(text, format!("no hyperplane `{base}`")));
                }
                exponents[i - 1] += exp;
            } else if base.starts_with(|c: char| c.is_ascii_digit() || c == '-' || c == '.' || c == '+') {
                let geometry = if *field == Field::Formal { Field::Rationals } else { field.clone() };
                let v = geometry.parse_scalar(base)?;
                let u = FieldUnit::from_scalar(v).map_err(|_| Error::parse(text, "zero scalar"))?;
                scalar = scalar.mul(&u.pow(exp));
            } else if base.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                if *field != Field::Formal {
                    return Err(Error::parse(
                        text,
                        format!("formal symbol `{base}` requires the formal backend"),
                    ));
                }
                scalar = scalar.mul(&FieldUnit::formal(field_one(field), [(base.to_string(), exp)])?);
            } else {
                return Err(Error::parse(text, format!("unrecognised factor `{base}`")));
            }
        }
        Ok(UnitElement { scalar, exponents })
    }

    pub fn render(&self) -> String {
        let mut parts = Vec::new();
        if !self.scalar.is_one() || self.exponents.iter().all(|&e| e == 0) {
            parts.push(self.scalar.to_string());
        }
        for (i, &e) in self.exponents.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("h{}", i + 1)),
                _ => parts.push(format!("h{}^{e}", i + 1)),
            }
        }
        parts.join("*")
    }

    /// Restriction to the pivot hyperplane of `res`. The unit must not involve the pivot.
    pub fn restrict(&self, res: &Restriction) -> Result<UnitElement> {
        if self.exponents[res.pivot] != 0 {
            return Err(Error::precondition("unit has a zero or pole along the restriction hyperplane"));
        }
        let mut scalar = self.scalar.clone();
        let mut exponents = vec![0i64; res.arrangement.len()];
        for (e, t) in self.exponents.iter().zip(&res.traces) {
            if *e == 0 {
                continue;
            }
            match t {
                Trace::Pivot => unreachable!(),
                Trace::Constant(c) => scalar = scalar.mul(&FieldUnit::from_scalar(c.clone())?.pow(*e)),
                Trace::Hyperplane { index, ratio } => {
                    scalar = scalar.mul(&FieldUnit::from_scalar(ratio.clone())?.pow(*e));
                    exponents[*index] += e;
                }
            }
        }
        Ok(UnitElement { scalar, exponents })
    }

    /// Re-indexes a unit of a sub-arrangement into the ambient arrangement.
    pub fn embed(&self, index_map: &[usize], r: usize) -> UnitElement {
        let mut exponents = vec![0; r];
        for (i, &e) in self.exponents.iter().enumerate() {
            exponents[index_map[i]] += e;
        }
        UnitElement {
            scalar: self.scalar.clone(),
            exponents,
        }
    }
}

/// Multivariate polynomial in the ambient coordinates with coefficients that
/// are Laurent polynomials in the formal symbols.
/// Coordinate exponents and symbol exponents of one monomial.
type PolyKey = (Vec<u32>, Vec<(String, i64)>);

#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Poly {
    terms: BTreeMap<PolyKey, Scalar>,
}

impl Poly {
    fn insert(&mut self, key: PolyKey, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v = &*v + &c;
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    fn from_unit_scalar(u: &FieldUnit, n: usize) -> Poly {
        let mut p = Poly::default();
        p.insert((vec![0; n], u.symbols.iter().map(|(s, e)| (s.clone(), *e)).collect()), u.value.clone());
        p
    }

    fn from_form(f: &LinearForm) -> Poly {
        let n = f.dimension();
        let mut p = Poly::default();
        p.insert((vec![0; n], vec![]), f.constant.clone());
        for (i, c) in f.coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.insert((e, vec![]), c.clone());
        }
        p
    }

    fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::default();
        for ((xa, sa), ca) in &self.terms {
            for ((xb, sb), cb) in &other.terms {
                let x: Vec<u32> = xa.iter().zip(xb).map(|(a, b)| a + b).collect();
                let mut s: BTreeMap<String, i64> = sa.iter().cloned().collect();
                for (k, e) in sb {
                    *s.entry(k.clone()).or_insert(0) += e;
                }
                s.retain(|_, e| *e != 0);
                out.insert((x, s.into_iter().collect()), ca * cb);
            }
        }
        out
    }

    fn add(&mut self, other: &Poly) {
        for (k, v) in &other.terms {
            self.insert(k.clone(), v.clone());
        }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Whether `sum units == target` holds as an identity of rational functions.
pub fn sum_equals(arr: &Arrangement, units: &[UnitElement], target: &Scalar) -> bool {
    let n = arr.dimension();
    let r = arr.len();
    let shift: Vec<i64> = (0..r)
        .map(|i| units.iter().map(|u| -u.exponents[i]).max().unwrap_or(0).max(0))
        .collect();
    let forms: Vec<Poly> = arr.hyperplanes().iter().map(|h| Poly::from_form(&h.defining)).collect();
    let monomial = |exps: &dyn Fn(usize) -> i64, start: Poly| -> Poly {
        let mut acc = start;
        for (i, f) in forms.iter().enumerate() {
            for _ in 0..exps(i) {
                acc = acc.mul(f);
            }
        }
        acc
    };
    let mut lhs = Poly::default();
    for u in units {
        let term = monomial(&|i| u.exponents[i] + shift[i], Poly::from_unit_scalar(&u.scalar, n));
        lhs.add(&term);
    }
    let mut rhs = Poly::default();
    rhs.insert((vec![0; n], vec![]), target.clone());
    let rhs = monomial(&|i| shift[i], rhs);
    let mut neg = Poly::default();
    for (k, v) in rhs.terms {
        neg.insert(k, -&v);
    }
    lhs.add(&neg);
    lhs.is_zero()
}

/// Evaluates a concrete unit at a point where it is regular and nonzero.
pub fn evaluate(arr: &Arrangement, u: &UnitElement, point: &[Scalar]) -> Option<Scalar> {
    if !u.scalar.is_concrete() {
        return None;
    }
    let mut acc = u.scalar.value.clone();
    for (h, &e) in arr.hyperplanes().iter().zip(&u.exponents) {
        if e == 0 {
            continue;
        }
        let v = h.defining.eval(point);
        if v.is_zero() {
            return None;
        }
        acc = &acc * &v.pow(e);
    }
    Some(acc)
}
