//! Affine hyperplane arrangements: flats, deletion, restriction, circuits and
//! the normal-crossing test.
//!
//! Hyperplane indices in this API are 0-based. The CLI and JSON reports shift
//! them to 1-based for display.

use std::collections::BTreeMap;
use std::fmt;

use crate::combinatorics::{combinations, subsets_up_to};
use crate::error::{Error, Result};
use crate::linalg::{kernel, rank, solve};
use crate::scalar::{Field, Scalar};
use crate::units::{FieldUnit, UnitElement};

/// An affine linear form `constant + sum coeffs[i] * x_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearForm {
    pub constant: Scalar,
    pub coeffs: Vec<Scalar>,
}

impl LinearForm {
    pub fn new(constant: Scalar, coeffs: Vec<Scalar>) -> Self {
        LinearForm { constant, coeffs }
    }

    pub fn dimension(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn scale(&self, s: &Scalar) -> LinearForm {
        LinearForm {
            constant: &self.constant * s,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn add(&self, other: &LinearForm) -> LinearForm {
        LinearForm {
            constant: &self.constant + &other.constant,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        self.coeffs
            .iter()
            .zip(point)
            .fold(self.constant.clone(), |acc, (a, x)| &acc + &(a * x))
    }

    /// `(constant, coeffs...)`, the homogenised coordinate vector.
    pub fn homogenized(&self) -> Vec<Scalar> {
        std::iter::once(self.constant.clone()).chain(self.coeffs.iter().cloned()).collect()
    }

    fn leading(&self) -> Option<(usize, &Scalar)> {
        self.coeffs.iter().enumerate().find(|(_, c)| !c.is_zero())
    }

    /// If `self = ratio * other` for forms with nonzero linear part, returns `ratio`.
    pub fn ratio_to(&self, other: &LinearForm) -> Option<Scalar> {
        let (i, c) = other.leading()?;
        let ratio = self.coeffs[i].div(c);
        (other.scale(&ratio) == *self).then_some(ratio)
    }

    fn render(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        for (c, name) in self.coeffs.iter().zip(names) {
            if c.is_zero() {
                continue;
            }
            let text = if c.is_one() {
                name.clone()
            } else if (-c).is_one() {
                format!("-{name}")
            } else {
                format!("{c}*{name}")
            };
            parts.push(text);
        }
        if !self.constant.is_zero() || parts.is_empty() {
            parts.push(self.constant.to_string());
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

pub(crate) fn variable_names(n: usize) -> Vec<String> {
    const SMALL: [&str; 4] = ["x", "y", "z", "w"];
    if n <= SMALL.len() {
        SMALL[..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

/// A hyperplane with its chosen defining polynomial.
///
/// `form` is normalised so its first nonzero coefficient is 1; `defining`
/// is the user's polynomial, equal to `scale * form`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hyperplane {
    pub form: LinearForm,
    pub defining: LinearForm,
    pub scale: Scalar,
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = variable_names(self.defining.dimension());
        write!(f, "{}", self.defining.render(&names))
    }
}

/// Normalises `constant + sum coeffs[i] x_i`, returning the hyperplane and
/// the scale factor `s` with `input = s * normalized`.
pub fn normalize_form(constant: Scalar, coeffs: Vec<Scalar>) -> Result<(Hyperplane, Scalar)> {
    let defining = LinearForm::new(constant, coeffs);
    let (_, lead) = defining.leading().ok_or(Error::ZeroForm)?;
    let scale = lead.clone();
    let form = defining.scale(&scale.inv());
    Ok((
        Hyperplane {
            form,
            defining,
            scale: scale.clone(),
        },
        scale,
    ))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrangement {
    field: Field,
    dimension: usize,
    hyperplanes: Vec<Hyperplane>,
}

/// Intersection of a subset of hyperplanes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flat {
    pub indices: Vec<usize>,
    /// `None` when the intersection is empty.
    pub codim: Option<usize>,
    pub witness_point: Option<Vec<Scalar>>,
}

impl Flat {
    pub fn is_empty(&self) -> bool {
        self.codim.is_none()
    }
}

/// `sum_k scalars[k] * phi_{indices[k]} = constant` with `constant` 0 or 1,
/// in terms of the defining polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineDependency {
    pub indices: Vec<usize>,
    pub scalars: Vec<Scalar>,
    pub constant: u8,
}

/// How a hyperplane meets the hyperplane being restricted to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Trace {
    /// The hyperplane restricted to.
    Pivot,
    /// Parallel: the defining polynomial restricts to this nonzero constant.
    Constant(Scalar),
    /// Restricts to `ratio * defining(index)` of the restricted arrangement.
    Hyperplane { index: usize, ratio: Scalar },
}

/// Output of [`Arrangement::restrict`].
#[derive(Clone, Debug)]
pub struct Restriction {
    pub arrangement: Arrangement,
    pub pivot: usize,
    /// Which ambient coordinate was eliminated.
    pub pivot_variable: usize,
    pub traces: Vec<Trace>,
}

impl Restriction {
    /// New index of each old hyperplane, `None` for the pivot and parallels.
    pub fn trace_map(&self) -> Vec<Option<usize>> {
        self.traces
            .iter()
            .map(|t| match t {
                Trace::Hyperplane { index, .. } => Some(*index),
                _ => None,
            })
            .collect()
    }

    /// Smallest original index restricting to each new hyperplane.
    pub fn lifts(&self) -> Vec<usize> {
        let mut lifts = vec![usize::MAX; self.arrangement.len()];
        for (i, t) in self.traces.iter().enumerate() {
            if let Trace::Hyperplane { index, .. } = t {
                lifts[*index] = lifts[*index].min(i);
            }
        }
        lifts
    }

    /// Restricts a form on the ambient space to the coordinates of the pivot hyperplane.
    pub fn restrict_form(&self, form: &LinearForm, parent: &Arrangement) -> LinearForm {
        restrict_form(form, &parent.hyperplanes[self.pivot].form, self.pivot_variable)
    }
}

fn restrict_form(form: &LinearForm, pivot: &LinearForm, v: usize) -> LinearForm {
    // pivot is normalised with pivot.coeffs[v] = 1, so x_v = -(pivot - x_v).
    let d = &form.coeffs[v];
    let constant = &form.constant - &(d * &pivot.constant);
    let coeffs = (0..form.dimension())
        .filter(|&w| w != v)
        .map(|w| &form.coeffs[w] - &(d * &pivot.coeffs[w]))
        .collect();
    LinearForm::new(constant, coeffs)
}

impl Arrangement {
    /// Builds an arrangement from defining polynomials, in order.
    pub fn new(field: Field, dimension: usize, forms: Vec<LinearForm>) -> Result<Arrangement> {
        let geometry = match &field {
            Field::Formal => Field::Rationals,
            f => f.clone(),
        };
        let mut hyperplanes: Vec<Hyperplane> = Vec::with_capacity(forms.len());
        for (i, f) in forms.into_iter().enumerate() {
            if f.coeffs.len() != dimension {
                return Err(Error::precondition(format!(
                    "hyperplane {} has {} coefficients, expected {dimension}",
                    i + 1,
                    f.coeffs.len()
                )));
            }
            if std::iter::once(&f.constant).chain(&f.coeffs).any(|s| s.field() != geometry) {
                return Err(Error::precondition(format!(
                    "hyperplane {} has scalars outside field {field}",
                    i + 1
                )));
            }
            let (h, _) = normalize_form(f.constant, f.coeffs)?;
            if let Some(k) = hyperplanes.iter().position(|g| g.form == h.form) {
                return Err(Error::precondition(format!(
                    "hyperplanes {} and {} coincide",
                    k + 1,
                    i + 1
                )));
            }
            hyperplanes.push(h);
        }
        Ok(Arrangement {
            field,
            dimension,
            hyperplanes,
        })
    }

    /// Convenience constructor from integer rows `[constant, a_1, ..., a_N]`.
    pub fn from_integer_rows(field: Field, dimension: usize, rows: &[&[i64]]) -> Result<Arrangement> {
        let forms = rows
            .iter()
            .map(|r| {
                LinearForm::new(
                    field.from_i64(r[0]),
                    r[1..].iter().map(|&a| field.from_i64(a)).collect(),
                )
            })
            .collect();
        Arrangement::new(field, dimension, forms)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn zero(&self) -> Scalar {
        match &self.field {
            Field::Formal => Field::Rationals.zero(),
            f => f.zero(),
        }
    }

    pub(crate) fn check_index(&self, j: usize) -> Result<()> {
        if j < self.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: j, len: self.len() })
        }
    }

    /// Canonical key: field plus normalised forms, in order.
    pub fn key(&self) -> String {
        let forms: Vec<String> = self
            .hyperplanes
            .iter()
            .map(|h| {
                let c: Vec<String> = h.form.homogenized().iter().map(|s| s.to_string()).collect();
                c.join(",")
            })
            .collect();
        format!("{}|{}|{}", self.field, self.dimension, forms.join(";"))
    }

    /// Reorders hyperplanes: the new `k`-th hyperplane is the old `order[k]`.
    pub fn permuted(&self, order: &[usize]) -> Result<Arrangement> {
        let mut seen = vec![false; self.len()];
        if order.len() != self.len() {
            return Err(Error::precondition("order must be a permutation of all hyperplanes"));
        }
        for &i in order {
            self.check_index(i)?;
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::precondition("order repeats an index"));
            }
        }
        Ok(Arrangement {
            field: self.field.clone(),
            dimension: self.dimension,
            hyperplanes: order.iter().map(|&i| self.hyperplanes[i].clone()).collect(),
        })
    }

    /// Same hyperplanes with defining polynomials multiplied by `scales`.
    pub fn rescaled(&self, scales: &[Scalar]) -> Arrangement {
        let mut out = self.clone();
        for (h, s) in out.hyperplanes.iter_mut().zip(scales) {
            assert!(!s.is_zero());
            h.defining = h.defining.scale(s);
            h.scale = &h.scale * s;
        }
        out
    }

    pub fn flat_of(&self, subset: &[usize]) -> Flat {
        let rows: Vec<Vec<Scalar>> = subset.iter().map(|&i| self.hyperplanes[i].form.coeffs.clone()).collect();
        let rhs: Vec<Scalar> = subset.iter().map(|&i| -&self.hyperplanes[i].form.constant).collect();
        let mut indices = subset.to_vec();
        indices.sort_unstable();
        if subset.is_empty() {
            return Flat {
                indices,
                codim: Some(0),
                witness_point: Some(vec![self.zero(); self.dimension]),
            };
        }
        match solve(&rows, &rhs, self.dimension) {
            Some(point) => Flat {
                indices,
                codim: Some(rank(&rows, self.dimension)),
                witness_point: Some(point),
            },
            None => Flat {
                indices,
                codim: None,
                witness_point: None,
            },
        }
    }

    /// Removes hyperplane `j`. The index map sends old indices to new ones.
    pub fn delete(&self, j: usize) -> Result<(Arrangement, Vec<Option<usize>>)> {
        self.check_index(j)?;
        let mut hyperplanes = self.hyperplanes.clone();
        hyperplanes.remove(j);
        let map = (0..self.len())
            .map(|i| match i.cmp(&j) {
                std::cmp::Ordering::Less => Some(i),
                std::cmp::Ordering::Equal => None,
                std::cmp::Ordering::Greater => Some(i - 1),
            })
            .collect();
        Ok((
            Arrangement {
                field: self.field.clone(),
                dimension: self.dimension,
                hyperplanes,
            },
            map,
        ))
    }

    /// Intersects the other hyperplanes with hyperplane `j`, parametrised by
    /// solving for the first variable with a nonzero coefficient.
    pub fn restrict(&self, j: usize) -> Result<Restriction> {
        self.check_index(j)?;
        let pivot = &self.hyperplanes[j].form;
        let (v, _) = pivot.leading().expect("nonzero hyperplane");
        let mut new_forms: Vec<LinearForm> = Vec::new();
        let mut normalized: Vec<LinearForm> = Vec::new();
        let mut traces = Vec::with_capacity(self.len());
        for (i, h) in self.hyperplanes.iter().enumerate() {
            if i == j {
                traces.push(Trace::Pivot);
                continue;
            }
            let t = restrict_form(&h.defining, pivot, v);
            if t.is_constant() {
                assert!(!t.constant.is_zero(), "distinct hyperplanes cannot coincide");
                traces.push(Trace::Constant(t.constant));
                continue;
            }
            let (nt, _) = normalize_form(t.constant.clone(), t.coeffs.clone())?;
            match normalized.iter().position(|f| *f == nt.form) {
                Some(k) => {
                    let ratio = t.ratio_to(&new_forms[k]).expect("proportional traces");
                    traces.push(Trace::Hyperplane { index: k, ratio });
                }
                None => {
                    traces.push(Trace::Hyperplane {
                        index: new_forms.len(),
                        ratio: t.constant.one_like(),
                    });
                    normalized.push(nt.form);
                    new_forms.push(t);
                }
            }
        }
        let arrangement = Arrangement::new(self.field.clone(), self.dimension - 1, new_forms)?;
        Ok(Restriction {
            arrangement,
            pivot: j,
            pivot_variable: v,
            traces,
        })
    }

    /// An affine dependency among the defining polynomials of `subset`,
    /// supported on a subset of it. Constant 1 iff the flat is empty.
    pub fn affine_dependency(&self, subset: &[usize]) -> Option<AffineDependency> {
        let mut subset = subset.to_vec();
        subset.sort_unstable();
        let n1 = self.dimension + 1;
        // columns are the homogenised defining forms
        let cols: Vec<Vec<Scalar>> = subset.iter().map(|&i| self.hyperplanes[i].defining.homogenized()).collect();
        let rows: Vec<Vec<Scalar>> = (0..n1).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
        let zero = self.zero();
        let one = zero.one_like();
        let mut target = vec![zero.clone(); n1];
        target[0] = one.clone();
        let (lambda, constant) = if let Some(x) = solve(&rows, &target, subset.len()) {
            (x, 1u8)
        } else {
            let ker = kernel(&rows, subset.len(), &zero);
            let x = ker.into_iter().next()?;
            let lead = x.iter().find(|s| !s.is_zero()).expect("nonzero kernel vector").inv();
            (x.iter().map(|s| s * &lead).collect(), 0u8)
        };
        let (indices, scalars) = subset
            .iter()
            .zip(lambda)
            .filter(|(_, s)| !s.is_zero())
            .map(|(&i, s)| (i, s))
            .unzip();
        Some(AffineDependency { indices, scalars, constant })
    }

    /// All minimal dependent subsets with their (unique up to scale) dependency.
    pub fn circuits(&self) -> Vec<AffineDependency> {
        let mut found: Vec<AffineDependency> = Vec::new();
        let max = (self.dimension + 2).min(self.len());
        for k in 1..=max {
            for s in combinations(self.len(), k) {
                if found.iter().any(|c| crate::combinatorics::is_subset(&c.indices, &s)) {
                    continue;
                }
                if let Some(dep) = self.affine_dependency(&s) {
                    debug_assert_eq!(dep.indices, s);
                    found.push(dep);
                }
            }
        }
        found
    }

    /// Whether the projective closures together with the hyperplane at
    /// infinity are in general position.
    pub fn is_normal_crossing(&self) -> bool {
        let zero = self.zero();
        let mut vectors: Vec<Vec<Scalar>> = vec![{
            let mut e = vec![zero.clone(); self.dimension + 1];
            e[0] = zero.one_like();
            e
        }];
        vectors.extend(self.hyperplanes.iter().map(|h| h.form.homogenized()));
        subsets_up_to(vectors.len(), self.dimension + 1).iter().all(|s| {
            let rows: Vec<Vec<Scalar>> = s.iter().map(|&i| vectors[i].clone()).collect();
            rank(&rows, self.dimension + 1) == s.len()
        })
    }

    /// Generators of the kernel of units(delete(j)) -> units(Y_j minus the rest),
    /// as units of the deleted arrangement.
    pub fn unit_kernel_generators(&self, j: usize) -> Result<Vec<UnitElement>> {
        let res = self.restrict(j)?;
        let (_, del_map) = self.delete(j)?;
        let r_del = self.len() - 1;
        let mut classes: BTreeMap<usize, Vec<(usize, Scalar)>> = BTreeMap::new();
        let mut out = Vec::new();
        for (i, t) in res.traces.iter().enumerate() {
            match t {
                Trace::Pivot => {}
                Trace::Constant(c) => {
                    let mut e = vec![0i64; r_del];
                    e[del_map[i].unwrap()] = 1;
                    out.push(UnitElement::new(FieldUnit::from_scalar(c.inv())?, e));
                }
                Trace::Hyperplane { index, ratio } => {
                    classes.entry(*index).or_default().push((i, ratio.clone()));
                }
            }
        }
        for members in classes.values() {
            let (rep, rep_ratio) = &members[0];
            for (other, ratio) in &members[1..] {
                let mut e = vec![0i64; r_del];
                e[del_map[*rep].unwrap()] = 1;
                e[del_map[*other].unwrap()] = -1;
                let lambda = ratio.div(rep_ratio);
                out.push(UnitElement::new(FieldUnit::from_scalar(lambda)?, e));
            }
        }
        Ok(out)
    }
}

impl fmt::Display for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let hs: Vec<String> = self.hyperplanes.iter().map(|h| h.to_string()).collect();
        write!(f, "{{{}}} in A^{} over {}", hs.join(", "), self.dimension, self.field)
    }
}


#[cfg(test)]
mod tests {
    use super::samples::*;
    use super::*;

    fn q(n: i64) -> Scalar {
        Field::Rationals.from_i64(n)
    }

    #[test]
    fn normalization_examples() {
        let (h, s) = normalize_form(q(0), vec![q(2), q(0)]).unwrap();
        assert_eq!(h.form, LinearForm::new(q(0), vec![q(1), q(0)]));
        assert_eq!(s, q(2));
        let (h, s) = normalize_form(q(-1), vec![q(1), q(0)]).unwrap();
        assert_eq!(h.form.constant, q(-1));
        assert_eq!(s, q(1));
        let (h, s) = normalize_form(q(3), vec![q(0), q(-3)]).unwrap();
        assert_eq!(h.form, LinearForm::new(q(-1), vec![q(0), q(1)]));
        assert_eq!(s, q(-3));
        assert_eq!(normalize_form(q(1), vec![q(0)]).unwrap_err(), Error::ZeroForm);
    }

    #[test]
    fn construction_rejects_bad_input() {
        let dup = Arrangement::from_integer_rows(Field::Rationals, 1, &[&[0, 1], &[0, 2]]);
        assert!(matches!(dup, Err(Error::PreconditionViolated(_))));
        let zero = Arrangement::from_integer_rows(Field::Rationals, 1, &[&[1, 0]]);
        assert_eq!(zero.unwrap_err(), Error::ZeroForm);
        assert!(Arrangement::new(Field::Rationals, 0, vec![]).is_ok());
    }

    #[test]
    fn flats() {
        let f = t().flat_of(&[0, 1, 2]);
        assert_eq!(f.codim, Some(2));
        assert!(l2().flat_of(&[0, 1]).is_empty());
        assert_eq!(b().flat_of(&[0]).codim, Some(1));
        assert_eq!(b().flat_of(&[]).codim, Some(0));
    }

    #[test]
    fn deletion() {
        let (d, map) = t().delete(0).unwrap();
        assert_eq!(d.to_string(), "{y, x - y} in A^2 over q");
        assert_eq!(map, vec![None, Some(0), Some(1)]);
        assert_eq!(b().delete(1).unwrap().0.to_string(), "{x} in A^2 over q");
        let line = Arrangement::from_integer_rows(Field::Rationals, 1, &[&[0, 1]]).unwrap();
        assert!(line.delete(0).unwrap().0.is_empty());
        assert!(matches!(t().delete(3), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn restriction() {
        let r = t().restrict(2).unwrap();
        assert_eq!(r.arrangement.len(), 1);
        assert_eq!(r.arrangement.dimension(), 1);
        assert_eq!(r.trace_map(), vec![Some(0), Some(0), None]);
        let r = l2().restrict(0).unwrap();
        assert!(r.arrangement.is_empty());
        assert_eq!(r.trace_map(), vec![None, None]);
        assert_eq!(r.traces[1], Trace::Constant(q(-1)));
        let r = b().restrict(0).unwrap();
        assert_eq!(r.trace_map(), vec![None, Some(0)]);
        // on x = 0 the form x - y restricts to -t, i.e. -1 times the trace of y
        let r = t().restrict(0).unwrap();
        assert_eq!(r.traces[2], Trace::Hyperplane { index: 0, ratio: q(-1) });
    }

    #[test]
    fn dependencies() {
        let d = t().affine_dependency(&[0, 1, 2]).unwrap();
        assert_eq!((d.scalars, d.constant), (vec![q(1), q(-1), q(-1)], 0));
        let d = l2().affine_dependency(&[0, 1]).unwrap();
        assert_eq!((d.scalars, d.constant), (vec![q(1), q(-1)], 1));
        assert!(b().affine_dependency(&[0, 1]).is_none());
    }

    #[test]
    fn circuit_lists() {
        let c = t().circuits();
        assert_eq!(c.len(), 1);
        assert_eq!((c[0].indices.clone(), c[0].constant), (vec![0, 1, 2], 0));
        let c = l2().circuits();
        assert_eq!((c[0].indices.clone(), c[0].constant), (vec![0, 1], 1));
        assert!(b().circuits().is_empty());
    }

    #[test]
    fn normal_crossing_examples() {
        assert!(b().is_normal_crossing());
        assert!(!t().is_normal_crossing());
        assert!(!l2().is_normal_crossing());
        assert!(p().is_normal_crossing());
        assert!(Arrangement::new(Field::Rationals, 0, vec![]).unwrap().is_normal_crossing());
    }

    #[test]
    fn kernel_generator_examples() {
        let g = t().unit_kernel_generators(0).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g[0].scalar.value, q(-1));
        assert_eq!(g[0].exponents, vec![1, -1]);
        let g = l2().unit_kernel_generators(0).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!((g[0].scalar.value.clone(), g[0].exponents.clone()), (q(-1), vec![1]));
        assert!(b().unit_kernel_generators(0).unwrap().is_empty());
    }
}
