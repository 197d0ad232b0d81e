//! The cohomology ring of the complement, presented by unit classes over the
//! Milnor coefficient ring, with elements kept in normal form on the
//! no-broken-circuit monomials.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Mutex;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::arrangement::{AffineDependency, Arrangement, Trace};
use crate::combinatorics::{is_subset, sort_with_sign};
use crate::error::{Error, Result};
use crate::exterior::ExteriorElement;
use crate::milnor::{CoefficientElement, ZeroTest};
use crate::motive::module_basis;
use crate::scalar::{Field, Scalar};
use crate::units::{sum_equals, FieldUnit, UnitElement};

type Terms = BTreeMap<Vec<usize>, CoefficientElement>;

fn add_into(terms: &mut Terms, s: Vec<usize>, c: CoefficientElement) {
    if c.is_empty() {
        return;
    }
    match terms.get_mut(&s) {
        Some(old) => {
            *old = old.add(&c);
            if old.is_empty() {
                terms.remove(&s);
            }
        }
        None => {
            terms.insert(s, c);
        }
    }
}

fn sign(parity: usize) -> i64 {
    if parity % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Outcome of comparing two elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Equality {
    Equal,
    NotEqual,
    Unknown,
}

impl Equality {
    pub fn as_str(&self) -> &'static str {
        match self {
            Equality::Equal => "equal",
            Equality::NotEqual => "not_equal",
            Equality::Unknown => "unknown",
        }
    }
}

/// An element `sum c_S phi_S` in normal form, coefficients written on the left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyElement {
    terms: Terms,
    fingerprint: u64,
}

impl CohomologyElement {
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &CoefficientElement)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, s: &[usize]) -> Option<&CoefficientElement> {
        self.terms.get(s)
    }

    /// Syntactically zero (no terms survive normalisation).
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    /// Keys as 1-based subsets like `{1,3}`, values as rendered coefficients.
    pub fn to_map(&self) -> BTreeMap<String, String> {
        self.terms.iter().map(|(s, c)| (subset_label(s), c.to_string())).collect()
    }
}

pub fn subset_label(s: &[usize]) -> String {
    let parts: Vec<String> = s.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

impl fmt::Display for CohomologyElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(s, c)| format!("({c})·{}", subset_label(s)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A circuit together with the expansion replacing its leading monomial.
#[derive(Clone, Debug)]
struct Rule {
    /// The monomial that gets rewritten: `C` minus its first index, or all of `C`
    /// for an empty intersection.
    head: Vec<usize>,
    /// `phi_head = sum coef * phi_D`, each `D` increasing and drawn from the circuit.
    body: Vec<(CoefficientElement, Vec<usize>)>,
}

/// The ring attached to one arrangement. Normal forms of monomials are memoised.
#[derive(Debug)]
pub struct CohomologyRing {
    arrangement: Arrangement,
    field: Field,
    rules: Vec<Rule>,
    basis: Vec<Vec<usize>>,
    basis_set: BTreeSet<Vec<usize>>,
    minus_one: CoefficientElement,
    fingerprint: u64,
    cache: Mutex<HashMap<Vec<usize>, Terms>>,
}

/// Pieces of `x = [phi_j] * alpha(x1) + alpha(x2)`, all in the ambient ring.
#[derive(Clone, Debug)]
pub struct GysinSplit {
    pub x1: CohomologyElement,
    pub x2: CohomologyElement,
    pub residue: CohomologyElement,
}

impl CohomologyRing {
    pub fn new(arrangement: &Arrangement) -> Result<CohomologyRing> {
        let field = arrangement.field().clone();
        let minus_one = CoefficientElement::symbol(&field, &FieldUnit::minus_one(&field))?;
        let mut rules = Vec::new();
        for c in arrangement.circuits() {
            rules.push(Self::rule_for(&field, &minus_one, &c)?);
        }
        let basis = module_basis(arrangement);
        let basis_set = basis.iter().cloned().collect();
        let mut h = DefaultHasher::new();
        arrangement.key().hash(&mut h);
        for hp in arrangement.hyperplanes() {
            hp.to_string().hash(&mut h);
        }
        field.to_string().hash(&mut h);
        Ok(CohomologyRing {
            arrangement: arrangement.clone(),
            field,
            rules,
            basis,
            basis_set,
            minus_one,
            fingerprint: h.finish(),
            cache: Mutex::new(HashMap::new()),
        })
    }

    /// Expands `prod_k ([lambda_k] + phi_{c_k})` over the positions in `keep`,
    /// moving every symbol to the front. Returns (coefficient, chosen phi indices).
    fn expand_product(
        field: &Field,
        symbols: &[CoefficientElement],
        indices: &[usize],
        keep: &[usize],
    ) -> Vec<(CoefficientElement, Vec<usize>, bool)> {
        let mut out = Vec::new();
        for mask in 0u32..(1 << keep.len()) {
            let mut coef = CoefficientElement::one(field);
            let mut chosen = Vec::new();
            let mut parity = 0;
            for (pos, &k) in keep.iter().enumerate() {
                if mask & (1 << pos) != 0 {
                    chosen.push(indices[k]);
                } else {
                    parity += chosen.len();
                    coef = coef.mul(&symbols[k]);
                }
            }
            let all = chosen.len() == keep.len();
            out.push((coef.scale(sign(parity)), chosen, all));
        }
        out
    }

    fn rule_for(field: &Field, minus_one: &CoefficientElement, c: &AffineDependency) -> Result<Rule> {
        let t = c.indices.len();
        let symbols = c
            .scalars
            .iter()
            .map(|s| CoefficientElement::symbol(field, &FieldUnit::from_scalar(s.clone())?))
            .collect::<Result<Vec<_>>>()?;
        let mut body = Vec::new();
        if c.constant == 1 {
            // prod_k [lambda_k phi_{c_k}] = 0, solved for phi_C
            let keep: Vec<usize> = (0..t).collect();
            for (coef, chosen, all) in Self::expand_product(field, &symbols, &c.indices, &keep) {
                if !all && !coef.is_empty() {
                    body.push((coef.neg(), chosen));
                }
            }
            return Ok(Rule {
                head: c.indices.clone(),
                body,
            });
        }
        // R~(f_1..f_t) = 0 with f_k = lambda_k phi_{c_k}; its only term equal to
        // phi_{C minus c_1} is -phi_{C minus c_1} (dropping f_1), so the rest equals it.
        for d_mask in 1u32..(1 << t) {
            let dropped: Vec<usize> = (0..t).filter(|k| d_mask & (1 << k) != 0).collect();
            let keep: Vec<usize> = (0..t).filter(|k| d_mask & (1 << k) == 0).collect();
            let weight = if dropped.len() == 1 { sign(dropped[0] + 1) } else { 1 };
            let mut prefix = CoefficientElement::integer(field, weight);
            for _ in 1..dropped.len() {
                prefix = prefix.mul(minus_one);
            }
            if prefix.is_empty() {
                continue;
            }
            for (coef, chosen, all) in Self::expand_product(field, &symbols, &c.indices, &keep) {
                if all && dropped == [0] {
                    continue;
                }
                let coef = prefix.mul(&coef);
                if !coef.is_empty() {
                    body.push((coef, chosen));
                }
            }
        }
        Ok(Rule {
            head: c.indices[1..].to_vec(),
            body,
        })
    }

    pub fn arrangement(&self) -> &Arrangement {
        &self.arrangement
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// The module basis, sorted by degree then lexicographically.
    pub fn basis(&self) -> &[Vec<usize>] {
        &self.basis
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn minus_one(&self) -> &CoefficientElement {
        &self.minus_one
    }

    fn element(&self, terms: Terms) -> CohomologyElement {
        CohomologyElement {
            terms,
            fingerprint: self.fingerprint,
        }
    }

    fn check(&self, x: &CohomologyElement) -> Result<()> {
        if x.fingerprint != self.fingerprint {
            return Err(Error::MixedArrangement);
        }
        Ok(())
    }

    pub fn zero(&self) -> CohomologyElement {
        self.element(Terms::new())
    }

    pub fn one(&self) -> CohomologyElement {
        self.constant(CoefficientElement::one(&self.field))
    }

    pub fn constant(&self, c: CoefficientElement) -> CohomologyElement {
        let mut terms = Terms::new();
        add_into(&mut terms, vec![], c);
        self.element(terms)
    }

    pub fn symbol(&self, lambda: &FieldUnit) -> Result<CohomologyElement> {
        Ok(self.constant(CoefficientElement::symbol(&self.field, lambda)?))
    }

    /// The class `[phi_i]` of the defining polynomial.
    pub fn generator(&self, i: usize) -> Result<CohomologyElement> {
        self.arrangement.check_index(i)?;
        Ok(self.monomial(CoefficientElement::one(&self.field), &[i]))
    }

    /// `[lambda prod phi_i^{e_i}] = [lambda] + sum e_i [phi_i]`.
    pub fn unit_class(&self, u: &UnitElement) -> Result<CohomologyElement> {
        if u.exponents.len() != self.arrangement.len() {
            return Err(Error::precondition(format!(
                "unit has {} exponents, arrangement has {} hyperplanes",
                u.exponents.len(),
                self.arrangement.len()
            )));
        }
        let mut terms = Terms::new();
        add_into(&mut terms, vec![], CoefficientElement::symbol(&self.field, &u.scalar)?);
        for (i, &e) in u.exponents.iter().enumerate() {
            add_into(&mut terms, vec![i], CoefficientElement::integer(&self.field, e));
        }
        Ok(self.reduce_terms(terms))
    }

    /// Normal form of `coef * phi_{w_1} ... phi_{w_k}` for any index word.
    pub fn monomial(&self, coef: CoefficientElement, word: &[usize]) -> CohomologyElement {
        let (c, s) = self.collect_word(coef, &[], word);
        let mut terms = Terms::new();
        add_into(&mut terms, s, c);
        self.reduce_terms(terms)
    }

    /// Multiplies `coef * phi_set` on the right by the generators of `word`,
    /// sorting them in and collapsing squares. `set` must be increasing.
    fn collect_word(&self, mut coef: CoefficientElement, set: &[usize], word: &[usize]) -> (CoefficientElement, Vec<usize>) {
        let mut set = set.to_vec();
        for &i in word {
            if coef.is_empty() {
                break;
            }
            let pos = set.partition_point(|&s| s < i);
            if set.get(pos) == Some(&i) {
                // move phi_i next to its twin, square it, move [-1] to the front
                let greater = set.len() - pos - 1;
                coef = coef.mul(&self.minus_one).scale(sign(greater + 1 + pos));
            } else {
                coef = coef.scale(sign(set.len() - pos));
                set.insert(pos, i);
            }
        }
        (coef, set)
    }

    fn applicable_rules(&self, s: &[usize]) -> Vec<&Rule> {
        self.rules.iter().filter(|r| is_subset(&r.head, s)).collect()
    }

    /// One rewriting step of `phi_s` via `rule`.
    fn rewrite(&self, rule: &Rule, s: &[usize]) -> Terms {
        let rest: Vec<usize> = s.iter().copied().filter(|i| !rule.head.contains(i)).collect();
        let order: Vec<usize> = rule.head.iter().chain(&rest).copied().collect();
        let (eps, _) = sort_with_sign(&order);
        let mut out = Terms::new();
        for (coef, d) in &rule.body {
            let (c, set) = self.collect_word(coef.scale(eps), d, &rest);
            add_into(&mut out, set, c);
        }
        out
    }

    fn normal_form(&self, s: &[usize]) -> Terms {
        if self.basis_set.contains(s) {
            let mut t = Terms::new();
            t.insert(s.to_vec(), CoefficientElement::one(&self.field));
            return t;
        }
        if let Some(hit) = self.cache.lock().unwrap().get(s) {
            return hit.clone();
        }
        let rules = self.applicable_rules(s);
        let rule = rules.first().expect("a monomial outside the basis contains a broken circuit");
        let mut out = Terms::new();
        for (t, c) in self.rewrite(rule, s) {
            for (u, d) in self.normal_form(&t) {
                add_into(&mut out, u, c.mul(&d));
            }
        }
        self.cache.lock().unwrap().insert(s.to_vec(), out.clone());
        out
    }

    fn normal_form_random<R: Rng>(&self, s: &[usize], rng: &mut R, memo: &mut HashMap<Vec<usize>, Terms>) -> Terms {
        if self.basis_set.contains(s) {
            let mut t = Terms::new();
            t.insert(s.to_vec(), CoefficientElement::one(&self.field));
            return t;
        }
        if let Some(hit) = memo.get(s) {
            return hit.clone();
        }
        let rules = self.applicable_rules(s);
        let rule = *rules.choose(rng).expect("a monomial outside the basis contains a broken circuit");
        let mut out = Terms::new();
        for (t, c) in self.rewrite(rule, s) {
            for (u, d) in self.normal_form_random(&t, rng, memo) {
                add_into(&mut out, u, c.mul(&d));
            }
        }
        memo.insert(s.to_vec(), out.clone());
        out
    }

    fn reduce_terms(&self, terms: Terms) -> CohomologyElement {
        let mut out = Terms::new();
        for (s, c) in terms {
            for (u, d) in self.normal_form(&s) {
                add_into(&mut out, u, c.mul(&d));
            }
        }
        self.element(out)
    }

    /// Rebuilds `x` from scratch, choosing among applicable circuits at random
    /// at every step instead of taking the first one.
    pub fn reduce_randomly<R: Rng>(&self, x: &CohomologyElement, word: &[Vec<usize>], rng: &mut R) -> Result<CohomologyElement> {
        self.check(x)?;
        let mut memo = HashMap::new();
        let mut out = Terms::new();
        for w in word {
            let (c, s) = self.collect_word(CoefficientElement::one(&self.field), &[], w);
            for (u, d) in self.normal_form_random(&s, rng, &mut memo) {
                add_into(&mut out, u, c.mul(&d));
            }
        }
        Ok(self.element(out))
    }

    /// Normal form of a sum of unreduced words `sum c_k phi_{w_k}`, with a random rewriting order.
    pub fn reduce_words_randomly<R: Rng>(&self, words: &[(CoefficientElement, Vec<usize>)], rng: &mut R) -> CohomologyElement {
        let mut memo = HashMap::new();
        let mut out = Terms::new();
        let mut order: Vec<usize> = (0..words.len()).collect();
        order.shuffle(rng);
        for k in order {
            let (c, s) = self.collect_word(words[k].0.clone(), &[], &words[k].1);
            for (u, d) in self.normal_form_random(&s, rng, &mut memo) {
                add_into(&mut out, u, c.mul(&d));
            }
        }
        self.element(out)
    }

    /// Normal form of a sum of unreduced words, deterministic strategy.
    pub fn reduce_words(&self, words: &[(CoefficientElement, Vec<usize>)]) -> CohomologyElement {
        let mut terms = Terms::new();
        for (c, w) in words {
            let (c, s) = self.collect_word(c.clone(), &[], w);
            add_into(&mut terms, s, c);
        }
        self.reduce_terms(terms)
    }

    pub fn add(&self, x: &CohomologyElement, y: &CohomologyElement) -> Result<CohomologyElement> {
        self.check(x)?;
        self.check(y)?;
        let mut terms = x.terms.clone();
        for (s, c) in &y.terms {
            add_into(&mut terms, s.clone(), c.clone());
        }
        Ok(self.element(terms))
    }

    pub fn neg(&self, x: &CohomologyElement) -> CohomologyElement {
        self.element(x.terms.iter().map(|(s, c)| (s.clone(), c.neg())).collect())
    }

    pub fn sub(&self, x: &CohomologyElement, y: &CohomologyElement) -> Result<CohomologyElement> {
        self.add(x, &self.neg(y))
    }

    /// `c * x` with the coefficient on the left.
    pub fn scale(&self, c: &CoefficientElement, x: &CohomologyElement) -> Result<CohomologyElement> {
        self.check(x)?;
        let mut terms = Terms::new();
        for (s, d) in &x.terms {
            add_into(&mut terms, s.clone(), c.mul(d));
        }
        Ok(self.element(terms))
    }

    pub fn multiply(&self, x: &CohomologyElement, y: &CohomologyElement) -> Result<CohomologyElement> {
        self.check(x)?;
        self.check(y)?;
        let mut terms = Terms::new();
        for (s, c) in &x.terms {
            for (t, d) in &y.terms {
                // c phi_S d phi_T = c d' phi_S phi_T, d' = d twisted |S| times
                let d = if s.len() % 2 == 1 { d.parity_twist() } else { d.clone() };
                let (coef, set) = self.collect_word(c.mul(&d), s, t);
                add_into(&mut terms, set, coef);
            }
        }
        Ok(self.reduce_terms(terms))
    }

    /// Left-associated product of unit classes; the empty product is 1.
    pub fn reduce_word(&self, units: &[UnitElement]) -> Result<CohomologyElement> {
        let mut acc = self.one();
        for u in units {
            acc = self.multiply(&acc, &self.unit_class(u)?)?;
        }
        Ok(acc)
    }

    /// `R~(f_1..f_t)` built from unit classes, with no condition on the sum.
    pub fn r_tilde(&self, units: &[UnitElement]) -> Result<CohomologyElement> {
        let t = units.len();
        if t >= 31 {
            return Err(Error::precondition("too many units"));
        }
        let classes = units.iter().map(|u| self.unit_class(u)).collect::<Result<Vec<_>>>()?;
        let mut acc = self.zero();
        for d_mask in 1u32..(1 << t) {
            let dropped: Vec<usize> = (0..t).filter(|k| d_mask & (1 << k) != 0).collect();
            let weight = if dropped.len() == 1 { sign(dropped[0] + 1) } else { 1 };
            let mut prefix = CoefficientElement::integer(&self.field, weight);
            for _ in 1..dropped.len() {
                prefix = prefix.mul(&self.minus_one);
            }
            let mut term = self.constant(prefix);
            for (k, class) in classes.iter().enumerate() {
                if d_mask & (1 << k) == 0 {
                    term = self.multiply(&term, class)?;
                }
            }
            acc = self.add(&acc, &term)?;
        }
        Ok(acc)
    }

    /// `[f_1]...[f_t]` for units summing to 1.
    pub fn rel_sum_one(&self, units: &[UnitElement]) -> Result<CohomologyElement> {
        if units.is_empty() || !sum_equals(&self.arrangement, units, &self.field_scalar_one()) {
            return Err(Error::precondition("units do not sum to 1"));
        }
        self.reduce_word(units)
    }

    /// `[f]^2 + [-1][f]`.
    pub fn rel_square(&self, u: &UnitElement) -> Result<CohomologyElement> {
        let f = self.unit_class(u)?;
        let sq = self.multiply(&f, &f)?;
        let tail = self.multiply(&self.constant(self.minus_one.clone()), &f)?;
        self.add(&sq, &tail)
    }

    /// `R~(f_1..f_t)` for units summing to 0.
    pub fn rel_r(&self, units: &[UnitElement]) -> Result<CohomologyElement> {
        if units.is_empty() || !sum_equals(&self.arrangement, units, &self.arrangement.zero()) {
            return Err(Error::precondition("units do not sum to 0"));
        }
        self.r_tilde(units)
    }

    fn field_scalar_one(&self) -> Scalar {
        self.arrangement.zero().one_like()
    }

    pub fn is_zero(&self, x: &CohomologyElement) -> Result<Equality> {
        self.equals(x, &self.zero())
    }

    /// Coefficientwise comparison; `Unknown` when some coefficient difference
    /// cannot be decided.
    pub fn equals(&self, x: &CohomologyElement, y: &CohomologyElement) -> Result<Equality> {
        let diff = self.sub(x, y)?;
        let mut unknown = false;
        for c in diff.terms.values() {
            match c.is_zero() {
                ZeroTest::Zero => {}
                ZeroTest::Nonzero => return Ok(Equality::NotEqual),
                ZeroTest::Unknown => unknown = true,
            }
        }
        Ok(if unknown { Equality::Unknown } else { Equality::Equal })
    }

    /// Decomposes `x = [phi_j] * alpha(x1) + alpha(x2)` with `x1`, `x2`
    /// supported away from `j`, and returns the residue `iota(x1)` in the
    /// ring of the restriction to hyperplane `j`.
    pub fn gysin_split(&self, x: &CohomologyElement, j: usize) -> Result<(CohomologyRing, GysinSplit)> {
        self.check(x)?;
        self.arrangement.check_index(j)?;
        let r = self.arrangement.len();
        let order: Vec<usize> = (0..r).filter(|&i| i != j).chain([j]).collect();
        let mut position = vec![0; r];
        for (new, &old) in order.iter().enumerate() {
            position[old] = new;
        }
        let permuted = CohomologyRing::new(&self.arrangement.permuted(&order)?)?;
        let mut terms = Terms::new();
        for (s, c) in &x.terms {
            let renamed: Vec<usize> = s.iter().map(|&i| position[i]).collect();
            let (eps, sorted) = sort_with_sign(&renamed);
            add_into(&mut terms, sorted, c.scale(eps));
        }
        let in_permuted = permuted.reduce_terms(terms);
        let last = r - 1;
        let mut x1 = Terms::new();
        let mut x2 = Terms::new();
        for (s, c) in in_permuted.terms {
            let back = |t: &[usize]| t.iter().map(|&i| order[i]).collect::<Vec<_>>();
            if s.last() == Some(&last) {
                // c phi_{S'} phi_j = phi_j ((-1)^{|S'|} c~ phi_{S'}), c~ the parity twist of c
                let rest = &s[..s.len() - 1];
                let c = c.parity_twist().scale(sign(rest.len()));
                let (eps, sorted) = sort_with_sign(&back(rest));
                add_into(&mut x1, sorted, c.scale(eps));
            } else {
                let (eps, sorted) = sort_with_sign(&back(&s));
                add_into(&mut x2, sorted, c.scale(eps));
            }
        }
        let restriction = self.arrangement.restrict(j)?;
        let res_ring = CohomologyRing::new(&restriction.arrangement)?;
        let mut images: Vec<Option<CohomologyElement>> = Vec::with_capacity(r);
        for t in &restriction.traces {
            images.push(match t {
                Trace::Pivot => None,
                Trace::Constant(c) => Some(res_ring.symbol(&FieldUnit::from_scalar(c.clone())?)?),
                Trace::Hyperplane { index, ratio } => {
                    let sym = res_ring.symbol(&FieldUnit::from_scalar(ratio.clone())?)?;
                    Some(res_ring.add(&sym, &res_ring.generator(*index)?)?)
                }
            });
        }
        let mut residue = res_ring.zero();
        for (s, c) in &x1 {
            let mut term = res_ring.constant(c.clone());
            for &i in s {
                term = res_ring.multiply(&term, images[i].as_ref().expect("x1 avoids the pivot"))?;
            }
            residue = res_ring.add(&residue, &term)?;
        }
        let split = GysinSplit {
            x1: self.reduce_terms(x1),
            x2: self.reduce_terms(x2),
            residue,
        };
        Ok((res_ring, split))
    }

    pub fn gysin_residue(&self, x: &CohomologyElement, j: usize) -> Result<(CohomologyRing, CohomologyElement)> {
        let (ring, split) = self.gysin_split(x, j)?;
        Ok((ring, split.residue))
    }

    /// Degree-zero coefficient part, read as an element of the exterior quotient.
    pub fn a0_projection(&self, x: &CohomologyElement) -> Result<ExteriorElement> {
        self.check(x)?;
        let mut out = ExteriorElement::zero();
        for (s, c) in &x.terms {
            let n = c.integer_part();
            if n != 0 {
                out = out.add(&ExteriorElement::term(s, n));
            }
        }
        Ok(out)
    }

    /// For `N + 1` units on a normal crossing arrangement: the field unit in
    /// the degree-one coefficient of each top-degree basis monomial.
    pub fn tame_symbol(&self, units: &[UnitElement]) -> Result<Vec<(FieldUnit, Vec<usize>)>> {
        if !self.arrangement.is_normal_crossing() {
            return Err(Error::NotNormalCrossing);
        }
        let n = self.arrangement.dimension();
        if units.len() != n + 1 {
            return Err(Error::precondition(format!("expected {} units, got {}", n + 1, units.len())));
        }
        let x = self.reduce_word(units)?;
        let mut out = Vec::new();
        for (s, c) in &x.terms {
            if s.len() != n {
                continue;
            }
            let alpha = c.part(1).degree_one_unit();
            if !alpha.is_one() {
                out.push((alpha, s.clone()));
            }
        }
        Ok(out)
    }
}

/// The arrangement `{x - p_1, ..., x - p_r}` in the affine line.
pub fn line_arrangement(field: &Field, points: &[Scalar]) -> Result<Arrangement> {
    let rows = points
        .iter()
        .map(|p| crate::arrangement::LinearForm::new(-p, vec![p.one_like()]))
        .collect();
    Arrangement::new(field.clone(), 1, rows)
}

/// Classical tame symbol on the punctured line: at each point `p_i`,
/// `(-1)^{v(f)v(g)} (f^{v(g)} / g^{v(f)})(p_i)`, where `f`, `g` are monomials in `x - p_k`.
pub fn tame_symbol_line(points: &[Scalar], f: &UnitElement, g: &UnitElement) -> Result<Vec<(FieldUnit, Scalar)>> {
    let r = points.len();
    if f.exponents.len() != r || g.exponents.len() != r {
        return Err(Error::precondition("exponent vectors must match the points"));
    }
    let distinct: BTreeSet<String> = points.iter().map(|p| p.to_string()).collect();
    if distinct.len() != r {
        return Err(Error::precondition("points must be distinct"));
    }
    let mut out = Vec::new();
    for (k, p) in points.iter().enumerate() {
        let (vf, vg) = (f.exponents[k], g.exponents[k]);
        let mut value = f.scalar.pow(vg).mul(&g.scalar.pow(-vf));
        for (i, q) in points.iter().enumerate() {
            let e = f.exponents[i] * vg - g.exponents[i] * vf;
            if i == k {
                assert_eq!(e, 0, "the tame ratio is regular at the point");
                continue;
            }
            if e != 0 {
                value = value.mul(&FieldUnit::from_scalar((p - q).pow(e))?);
            }
        }
        if (vf * vg) % 2 != 0 {
            value = value.neg();
        }
        if !value.is_one() {
            out.push((value, p.clone()));
        }
    }
    Ok(out)
}
