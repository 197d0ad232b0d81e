//! Seeded randomized relation suite: builds unit tuples satisfying exact sum
//! conditions on an arrangement and checks that the relation elements reduce to 0.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arrangement::AffineDependency;
use crate::error::Result;
use crate::ring::{CohomologyElement, CohomologyRing, Equality};
use crate::scalar::{Field, Scalar};
use crate::units::{FieldUnit, UnitElement};

/// Instance families drawn by the suite.
pub const KINDS: &[&str] = &[
    "square",
    "cancel",
    "circuit_sum_one",
    "circuit_zero_sum",
    "circuit_minus_one",
    "quotient_sum_one",
    "steinberg_constants",
    "constant_zero_sum",
    "minus_one_tail",
];

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct KindCounts {
    pub passed: usize,
    pub failed: usize,
    pub undecided: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FailureRecord {
    pub kind: String,
    pub units: Vec<String>,
    pub outcome: String,
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub trials: usize,
    pub field: String,
    pub passed: usize,
    /// Instances whose residual is provably nonzero or undecided.
    pub failures: usize,
    pub by_kind: BTreeMap<String, KindCounts>,
    /// The first few failing instances.
    pub examples: Vec<FailureRecord>,
}

const MAX_EXAMPLES: usize = 10;

/// Random nonzero concrete scalar.
pub fn random_scalar<R: Rng>(field: &Field, rng: &mut R) -> Scalar {
    match field {
        Field::Prime(p) => field.from_i64(rng.gen_range(1..*p) as i64),
        Field::Rationals | Field::Formal => {
            let mut n = 0;
            while n == 0 {
                n = rng.gen_range(-9..=9);
            }
            Field::Rationals.from_ratio(n, rng.gen_range(1..=5))
        }
    }
}

/// Random unit `lambda * prod phi_i^{e_i}`; on the formal backend the scalar
/// may carry a formal symbol.
pub fn random_unit<R: Rng>(ring: &CohomologyRing, rng: &mut R) -> UnitElement {
    let field = ring.field();
    let mut scalar = FieldUnit::from_scalar(random_scalar(field, rng)).expect("nonzero");
    if *field == Field::Formal && rng.gen_bool(0.5) {
        let name = ["a", "b"][rng.gen_range(0..2)];
        let e = [-1, 1][rng.gen_range(0..2)];
        let sym = FieldUnit::formal(Field::Rationals.one(), [(name.to_string(), e)]).expect("unit");
        scalar = scalar.mul(&sym);
    }
    let r = ring.arrangement().len();
    let exponents = (0..r)
        .map(|_| if rng.gen_bool(0.5) { 0 } else { rng.gen_range(-2..=2) })
        .collect();
    UnitElement::new(scalar, exponents)
}

fn circuit_units(ring: &CohomologyRing, c: &AffineDependency) -> Vec<UnitElement> {
    let r = ring.arrangement().len();
    c.indices
        .iter()
        .zip(&c.scalars)
        .map(|(&i, s)| UnitElement::generator(ring.field(), r, i).scaled(&FieldUnit::from_scalar(s.clone()).expect("nonzero")))
        .collect()
}

fn scalar_unit(ring: &CohomologyRing, s: Scalar) -> UnitElement {
    UnitElement::constant(FieldUnit::from_scalar(s).expect("nonzero"), ring.arrangement().len())
}

fn minus(ring: &CohomologyRing, u: &UnitElement) -> UnitElement {
    u.scaled(&FieldUnit::minus_one(ring.field()))
}

/// A tuple summing to 0, drawn from the available families.
fn zero_sum_tuple<R: Rng>(ring: &CohomologyRing, circuits: &[AffineDependency], rng: &mut R) -> Vec<UnitElement> {
    let h = random_unit(ring, rng);
    let pick = circuits.choose(rng);
    let mut tuple = match pick {
        Some(c) if c.constant == 0 => circuit_units(ring, c),
        Some(c) => {
            let mut t = circuit_units(ring, c);
            t.push(scalar_unit(ring, ring.arrangement().zero().one_like()).scaled(&FieldUnit::minus_one(ring.field())));
            t
        }
        None => {
            let u = random_unit(ring, rng);
            vec![u.clone(), minus(ring, &u)]
        }
    };
    tuple = tuple.iter().map(|u| u.mul(&h)).collect();
    tuple.shuffle(rng);
    tuple
}

fn kinds_for(ring: &CohomologyRing, circuits: &[AffineDependency]) -> Vec<&'static str> {
    let has = |c: u8| circuits.iter().any(|d| d.constant == c);
    let p = match ring.field() {
        Field::Prime(p) => Some(*p),
        _ => None,
    };
    KINDS
        .iter()
        .copied()
        .filter(|k| match *k {
            "circuit_sum_one" | "circuit_minus_one" => has(1),
            "circuit_zero_sum" => has(0),
            "steinberg_constants" | "constant_zero_sum" => p.is_some_and(|p| p > 2),
            _ => true,
        })
        .collect()
}

/// Builds one instance of `kind` and returns its units and the element that must vanish.
pub fn instance<R: Rng>(
    ring: &CohomologyRing,
    circuits: &[AffineDependency],
    kind: &str,
    rng: &mut R,
) -> Result<(Vec<UnitElement>, CohomologyElement)> {
    let field = ring.field().clone();
    match kind {
        "square" => {
            let u = random_unit(ring, rng);
            let x = ring.rel_square(&u)?;
            Ok((vec![u], x))
        }
        "cancel" => {
            let u = random_unit(ring, rng);
            let units = vec![u.clone(), minus(ring, &u)];
            let x = ring.rel_r(&units)?;
            Ok((units, x))
        }
        "circuit_sum_one" => {
            let ones: Vec<_> = circuits.iter().filter(|c| c.constant == 1).collect();
            let mut units = circuit_units(ring, ones.choose(rng).expect("available"));
            units.shuffle(rng);
            let x = ring.rel_sum_one(&units)?;
            Ok((units, x))
        }
        "circuit_zero_sum" => {
            let zeros: Vec<_> = circuits.iter().filter(|c| c.constant == 0).collect();
            let h = random_unit(ring, rng);
            let mut units: Vec<_> = circuit_units(ring, zeros.choose(rng).expect("available"))
                .iter()
                .map(|u| u.mul(&h))
                .collect();
            units.shuffle(rng);
            let x = ring.rel_r(&units)?;
            Ok((units, x))
        }
        "circuit_minus_one" => {
            let ones: Vec<_> = circuits.iter().filter(|c| c.constant == 1).collect();
            let h = random_unit(ring, rng);
            let mut units = circuit_units(ring, ones.choose(rng).expect("available"));
            units.push(scalar_unit(ring, field.from_i64(-1)));
            let mut units: Vec<_> = units.iter().map(|u| u.mul(&h)).collect();
            units.shuffle(rng);
            let x = ring.rel_r(&units)?;
            Ok((units, x))
        }
        "quotient_sum_one" => {
            let g = zero_sum_tuple(ring, circuits, rng);
            let last = g.last().expect("nonempty").inv();
            let units: Vec<_> = g[..g.len() - 1].iter().map(|u| minus(ring, &u.mul(&last))).collect();
            let x = ring.rel_sum_one(&units)?;
            Ok((units, x))
        }
        "steinberg_constants" => {
            let Field::Prime(p) = field else { unreachable!() };
            let l = rng.gen_range(2..p) as i64;
            let h = random_unit(ring, rng);
            let mut units = vec![scalar_unit(ring, field.from_i64(l)), scalar_unit(ring, field.from_i64(1 - l))];
            units.shuffle(rng);
            // [l][1 - l] and its product with [h]
            let x = ring.rel_sum_one(&units)?;
            let x = ring.multiply(&x, &ring.unit_class(&h)?)?;
            Ok((units, x))
        }
        "constant_zero_sum" => {
            let Field::Prime(p) = field else { unreachable!() };
            let (a, b) = loop {
                let a = rng.gen_range(1..p) as i64;
                let b = rng.gen_range(1..p) as i64;
                if (a + b) % p as i64 != 0 {
                    break (a, b);
                }
            };
            let h = random_unit(ring, rng);
            let mut units: Vec<_> = [a, b, -a - b]
                .iter()
                .map(|&v| scalar_unit(ring, field.from_i64(v)).mul(&h))
                .collect();
            units.shuffle(rng);
            let x = ring.rel_r(&units)?;
            Ok((units, x))
        }
        "minus_one_tail" => {
            let len = rng.gen_range(1..=3);
            let fs: Vec<_> = (0..len).map(|_| random_unit(ring, rng)).collect();
            let mut with_minus = fs.clone();
            with_minus.push(scalar_unit(ring, field.from_i64(-1)));
            // R(f_1..f_{t-1}, -1) = (-1)^t [f_1]...[f_{t-1}]
            let t = len + 1;
            let lhs = ring.r_tilde(&with_minus)?;
            let word = ring.reduce_word(&fs)?;
            let x = if t % 2 == 0 { ring.sub(&lhs, &word)? } else { ring.add(&lhs, &word)? };
            Ok((fs, x))
        }
        other => Err(crate::error::Error::precondition(format!("unknown instance family {other}"))),
    }
}

/// Runs `trials` random instances on one arrangement.
pub fn relation_suite(ring: &CohomologyRing, seed: u64, trials: usize) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let circuits = ring.arrangement().circuits();
    let kinds = kinds_for(ring, &circuits);
    let mut by_kind: BTreeMap<String, KindCounts> = BTreeMap::new();
    let mut examples = Vec::new();
    let (mut passed, mut failures) = (0, 0);
    for _ in 0..trials {
        let kind = *kinds.choose(&mut rng).expect("square is always available");
        let (units, x) = instance(ring, &circuits, kind, &mut rng)?;
        let outcome = ring.is_zero(&x)?;
        let counts = by_kind.entry(kind.to_string()).or_default();
        match outcome {
            Equality::Equal => {
                counts.passed += 1;
                passed += 1;
                continue;
            }
            Equality::NotEqual => counts.failed += 1,
            Equality::Unknown => counts.undecided += 1,
        }
        failures += 1;
        if examples.len() < MAX_EXAMPLES {
            examples.push(FailureRecord {
                kind: kind.to_string(),
                units: units.iter().map(UnitElement::render).collect(),
                outcome: outcome.as_str().to_string(),
                residual: x.to_string(),
            });
        }
    }
    Ok(SuiteReport {
        seed,
        trials,
        field: ring.field().to_string(),
        passed,
        failures,
        by_kind,
        examples,
    })
}
