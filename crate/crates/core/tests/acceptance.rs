//! End-to-end acceptance run. Each criterion prints one PASS/FAIL line; the
//! test fails if any line is FAIL.

mod common;

use std::process::Command;
use std::time::Instant;

use hypermotive::cli::ArrangementDocument;
use hypermotive::combinatorics::binomial;
use hypermotive::exterior::{graded_rank, ExteriorElement, QuotientReducer};
use hypermotive::motive::{module_basis, tate_twists};
use hypermotive::ring::{line_arrangement, tame_symbol_line};
use hypermotive::verify::{random_scalar, relation_suite};
use hypermotive::{CoefficientElement, CohomologyRing, Equality, Field, FieldUnit, UnitElement};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn twists_equal_ranks() -> Outcome {
    let start = Instant::now();
    let corpus = common::corpus();
    ensure(corpus.len() >= 12, || format!("corpus has {} arrangements", corpus.len()))?;
    for (name, a) in &corpus {
        let ranks = graded_rank(a).ranks;
        let twists = tate_twists(a);
        for (d, &r) in ranks.iter().enumerate() {
            ensure(twists.multiplicity(d) == r, || format!("{name}: degree {d} twist {} vs rank {r}", twists.multiplicity(d)))?;
        }
        ensure(twists.counts.keys().all(|&n| n < ranks.len()), || format!("{name}: twist beyond ranks"))?;
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 60.0, || format!("took {secs:.1}s"))?;
    Ok(format!("{} arrangements in {secs:.2}s", corpus.len()))
}

fn normal_crossing_count() -> Outcome {
    let mut checked = 0;
    for (name, a) in common::corpus() {
        if !a.is_normal_crossing() {
            continue;
        }
        let expected: usize = (0..=a.dimension()).map(|t| binomial(a.len(), t)).sum();
        let rank = module_basis(&a).len();
        ensure(rank == expected, || format!("{name}: rank {rank}, expected {expected}"))?;
        checked += 1;
    }
    ensure(checked > 0, || "no normal crossing arrangement in the corpus".into())?;
    Ok(format!("{checked} normal crossing arrangements"))
}

fn relation_suite_runs() -> Outcome {
    let mut relations = 0;
    let mut tails = 0;
    let mut seed = 0;
    for field in [Field::Prime(2), Field::Prime(5), Field::Prime(7), Field::Rationals] {
        for (name, a) in common::corpus_over(&field) {
            let ring = CohomologyRing::new(&a).map_err(|e| format!("{name}: {e}"))?;
            seed += 1;
            let report = relation_suite(&ring, seed, 20).map_err(|e| format!("{name}: {e}"))?;
            for (kind, counts) in &report.by_kind {
                ensure(counts.failed == 0 && counts.undecided == 0, || {
                    format!("{name} over {field}: {kind} {counts:?}, e.g. {:?}", report.examples.first())
                })?;
                if kind == "minus_one_tail" {
                    tails += counts.passed;
                } else {
                    relations += counts.passed;
                }
            }
        }
    }
    ensure(relations >= 500, || format!("only {relations} relation instances"))?;
    ensure(tails >= 100, || format!("only {tails} minus-one tail instances"))?;
    Ok(format!("{relations} relation and {tails} minus-one tail instances reduce to zero"))
}

fn gysin_split() -> Outcome {
    let mut splits = 0;
    for (name, a) in common::corpus() {
        let ring = CohomologyRing::new(&a).map_err(|e| e.to_string())?;
        let one = CoefficientElement::one(ring.field());
        for s in ring.basis().to_vec() {
            let x = ring.monomial(one.clone(), &s);
            for j in 0..a.len() {
                let (_, split) = ring.gysin_split(&x, j).map_err(|e| e.to_string())?;
                let back = ring
                    .add(&ring.multiply(&ring.generator(j).unwrap(), &split.x1).unwrap(), &split.x2)
                    .unwrap();
                ensure(back == x, || format!("{name}: {s:?} at pivot {j}"))?;
                splits += 1;
            }
        }
        for j in 0..a.len() {
            let (deleted, map) = a.delete(j).map_err(|e| e.to_string())?;
            let back: Vec<usize> = (0..a.len()).filter(|&i| map[i].is_some()).collect();
            for s in module_basis(&deleted) {
                let lifted: Vec<usize> = s.iter().map(|&k| back[k]).collect();
                let (_, r) = ring.gysin_residue(&ring.monomial(one.clone(), &lifted), j).unwrap();
                ensure(r.is_empty(), || format!("{name}: residue of {lifted:?} at {j} is {r}"))?;
            }
        }
    }
    Ok(format!("{splits} splits reconstruct exactly"))
}

fn divisor_map() -> Outcome {
    let mut pairs = 0;
    for (name, a) in common::corpus() {
        let ring = CohomologyRing::new(&a).map_err(|e| e.to_string())?;
        let reducer = QuotientReducer::new(&a).map_err(|e| format!("{name}: {e:?}"))?;
        let one = CoefficientElement::one(ring.field());
        let basis = ring.basis().to_vec();
        for s in &basis {
            for t in &basis {
                let prod = ring.multiply(&ring.monomial(one.clone(), s), &ring.monomial(one.clone(), t)).unwrap();
                let lhs = ring.a0_projection(&prod).unwrap();
                let rhs = reducer.reduce(&ExteriorElement::monomial(s).wedge(&ExteriorElement::monomial(t)));
                ensure(lhs == rhs, || format!("{name}: {s:?} * {t:?}"))?;
                pairs += 1;
            }
        }
        for i in 0..a.len() {
            let back = ring.a0_projection(&ring.generator(i).unwrap()).unwrap();
            ensure(back == ExteriorElement::monomial(&[i]), || format!("{name}: round trip of {i}"))?;
        }
    }
    Ok(format!("{pairs} basis pairs"))
}

fn tame_symbols() -> Outcome {
    let q = Field::Rationals;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut pairs = 0;
    while pairs < 200 {
        let n = rng.gen_range(1..=5);
        let mut pts: Vec<i64> = (-6..=6).collect();
        pts.shuffle(&mut rng);
        let pts: Vec<_> = pts[..n].iter().map(|&p| q.from_i64(p)).collect();
        let a = line_arrangement(&q, &pts).map_err(|e| e.to_string())?;
        let ring = CohomologyRing::new(&a).map_err(|e| e.to_string())?;
        let mut unit = || {
            let c = FieldUnit::from_scalar(random_scalar(&q, &mut rng)).unwrap();
            UnitElement::new(c, (0..n).map(|_| rng.gen_range(-2..=2)).collect())
        };
        let (f, g) = (unit(), unit());
        let via_ring: Vec<_> = ring
            .tame_symbol(&[f.clone(), g.clone()])
            .map_err(|e| e.to_string())?
            .into_iter()
            .map(|(u, s)| (u, pts[s[0]].clone()))
            .collect();
        let direct = tame_symbol_line(&pts, &f, &g).map_err(|e| e.to_string())?;
        ensure(via_ring == direct, || format!("points {pts:?}: {f:?}, {g:?}"))?;
        pairs += 1;
    }
    // x and 1 - x, x - 1 on the line minus {0, 1}
    let pts = vec![q.from_i64(0), q.from_i64(1)];
    let ring = CohomologyRing::new(&line_arrangement(&q, &pts).unwrap()).unwrap();
    let one = FieldUnit::from_scalar(q.from_i64(1)).unwrap();
    let minus_one = FieldUnit::from_scalar(q.from_i64(-1)).unwrap();
    let x = UnitElement::new(one.clone(), vec![1, 0]);
    let x_minus_one = UnitElement::new(one.clone(), vec![0, 1]);
    let one_minus_x = UnitElement::new(minus_one.clone(), vec![0, 1]);
    let steinberg = ring.tame_symbol(&[x.clone(), one_minus_x]).map_err(|e| e.to_string())?;
    ensure(steinberg.iter().all(|(u, _)| *u == one), || format!("beta(x, 1-x) = {steinberg:?}"))?;
    let shifted = ring.tame_symbol(&[x, x_minus_one]).map_err(|e| e.to_string())?;
    let expected = vec![(minus_one, vec![0])];
    let nontrivial: Vec<_> = shifted.into_iter().filter(|(u, _)| *u != one).collect();
    ensure(nontrivial == expected, || format!("beta(x, x-1) = {nontrivial:?}"))?;
    Ok(format!("{pairs} random pairs plus the two point checks"))
}

fn elementary_divisors() -> Outcome {
    let mut divisors = 0;
    for (name, a) in common::corpus() {
        let g = graded_rank(&a);
        for d in g.elementary_divisors.iter().flatten() {
            ensure(d.to_string() == "1", || format!("{name}: elementary divisor {d}"))?;
            divisors += 1;
        }
    }
    Ok(format!("{divisors} elementary divisors, all 1"))
}

fn order_robustness() -> Outcome {
    let mut perms = 0;
    for (name, a) in common::corpus().into_iter().filter(|(_, a)| a.len() <= 5) {
        let twists = tate_twists(&a);
        let ranks = graded_rank(&a).ranks;
        for p in common::all_permutations(a.len()) {
            let b = a.permuted(&p).map_err(|e| e.to_string())?;
            ensure(tate_twists(&b) == twists, || format!("{name}: twists under {p:?}"))?;
            ensure(graded_rank(&b).ranks == ranks, || format!("{name}: ranks under {p:?}"))?;
            perms += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut products = 0;
    for (name, a) in common::corpus() {
        let ring = CohomologyRing::new(&a).map_err(|e| e.to_string())?;
        for _ in 0..3 {
            let words: Vec<_> = (0..2)
                .map(|_| {
                    let len = rng.gen_range(1..=a.dimension() + 2);
                    let w: Vec<usize> = (0..len).map(|_| rng.gen_range(0..a.len())).collect();
                    let u = FieldUnit::from_scalar(random_scalar(ring.field(), &mut rng)).unwrap();
                    (CoefficientElement::symbol(ring.field(), &u).unwrap(), w)
                })
                .collect();
            let reference = ring.reduce_words(&words);
            for _ in 0..10 {
                let other = ring.reduce_words_randomly(&words, &mut rng);
                let eq = ring.equals(&reference, &other).map_err(|e| e.to_string())?;
                ensure(eq == Equality::Equal, || format!("{name}: {words:?} gives {eq:?}"))?;
            }
            products += 1;
        }
    }
    Ok(format!("{perms} permutations, {products} products under 10 random orders each"))
}

fn cli_determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut runs = 0;
    for name in ["t", "braid_3", "generic_4_lines", "mixed_3_space"] {
        let a = common::corpus().into_iter().find(|(n, _)| *n == name).unwrap().1;
        let path = dir.path().join(format!("{name}.json"));
        std::fs::write(&path, ArrangementDocument::from_arrangement(&a).to_json()).map_err(|e| e.to_string())?;
        for args in [
            vec!["verify", "--seed", "11", "--trials", "25"],
            vec!["rank"],
            vec!["reduce", "--word", "h1,-1*h2,h3^2*h1^-1", "--seed", "4"],
        ] {
            let outputs: Vec<_> = (0..2)
                .map(|_| {
                    Command::new(env!("CARGO_BIN_EXE_hypermotive"))
                        .args(&args)
                        .arg("--input")
                        .arg(&path)
                        .output()
                        .unwrap()
                })
                .collect();
            ensure(outputs[0].status.success(), || {
                format!("{name} {args:?}: {}", String::from_utf8_lossy(&outputs[0].stderr))
            })?;
            ensure(outputs[0].stdout == outputs[1].stdout, || format!("{name} {args:?} differs between runs"))?;
            serde_json::from_slice::<serde_json::Value>(&outputs[0].stdout).map_err(|e| e.to_string())?;
            runs += 1;
        }
    }
    Ok(format!("{runs} command pairs byte-identical"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("twist multiplicities equal exterior quotient ranks", twists_equal_ranks),
        ("normal crossing rank count", normal_crossing_count),
        ("relation suite", relation_suite_runs),
        ("gysin split exactness", gysin_split),
        ("divisor map is a ring isomorphism", divisor_map),
        ("tame symbol consistency", tame_symbols),
        ("elementary divisors all 1", elementary_divisors),
        ("order robustness and confluence", order_robustness),
        ("cli determinism", cli_determinism),
    ];
    let mut failed = Vec::new();
    for (i, (title, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {}: PASS {title} ({detail})", i + 1),
            Err(why) => {
                println!("criterion {}: FAIL {title}: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
