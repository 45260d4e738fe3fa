//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Runs without the libtest harness so the report is the output.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use schur_core::classify::{
    check_not_orbit_viii, check_not_tensor_viii, check_not_wedge, corollary_filter,
    enumerate_b_candidates, evaluate_candidate, is_traditional, orbit_coincidence, AClass,
    CandidateConstraint, ShapeVerdict, TensorVerdict, Traditional,
};
use schur_core::testing::Corrupted;
use schur_core::verify::{Status, Witness, CHECK_PRODUCT};
use schur_core::{
    enumerate_window, g, project_to_b, verify_partition, Coefficient, Family, GroupElement,
    Lattice, Partition, RingElement,
};

const PARAMS: [i64; 6] = [-3, -2, -1, 1, 2, 3];

struct Outcome {
    pass: bool,
    summary: String,
    details: Vec<String>,
}

impl Outcome {
    fn new(details: Vec<String>, summary: String) -> Self {
        Outcome {
            pass: details.is_empty(),
            summary,
            details,
        }
    }
}

fn within(elapsed: Duration, limit_secs: u64, details: &mut Vec<String>) {
    if elapsed > Duration::from_secs(limit_secs) {
        details.push(format!("took {elapsed:.2?}, limit {limit_secs}s"));
    }
}

fn axiom_suite() -> Outcome {
    let start = Instant::now();
    let families = Family::catalog(&PARAMS);
    let mut details = Vec::new();
    for f in &families {
        let report = verify_partition(f, 3, 3).expect("window is non-empty");
        if !report.passed() {
            let failed: Vec<String> = report
                .checks
                .iter()
                .filter(|c| c.status == Status::Fail)
                .map(|c| format!("{}: {}", c.name, c.witness.as_ref().unwrap()))
                .collect();
            details.push(format!("{f}: {}", failed.join("; ")));
        }
    }
    let verified = families.len() - details.len();
    let elapsed = start.elapsed();
    within(elapsed, 30, &mut details);
    let summary = format!(
        "{verified} of {} descriptors verified at R=3, Frobenius range 3 ({elapsed:.2?})",
        families.len()
    );
    Outcome::new(details, summary)
}

fn orbit_coincidence_suite() -> Outcome {
    let mut details = Vec::new();
    let mut points = 0;
    for n in 1..=3 {
        for f in [
            Family::orbit_v(n).unwrap(),
            Family::orbit_vi(n).unwrap(),
            Family::orbit_vii(n).unwrap(),
        ] {
            let gens = f.orbit_generators().unwrap();
            points += f.window_points(4).len();
            if let Some(m) = orbit_coincidence(&f, &gens, 4).unwrap() {
                details.push(format!(
                    "{f} at ({}): class {} vs orbit {:?}",
                    m.element, m.class, m.orbit
                ));
            }
        }
    }
    Outcome::new(
        details,
        format!("9 families, {points} window points compared at R=4"),
    )
}

fn expected_survivors(a_class: AClass, bound: i64) -> BTreeSet<ShapeVerdict> {
    let mut out = BTreeSet::from([ShapeVerdict::Singleton, ShapeVerdict::PlusMinus]);
    for k in (-bound..=bound).filter(|&k| k != 0) {
        out.insert(ShapeVerdict::InvAI1 { i1: k });
        if a_class == AClass::Symmetric {
            out.insert(ShapeVerdict::AI0 { i0: k });
            out.insert(ShapeVerdict::Quad { i2: k });
        }
    }
    out
}

fn candidate_suite() -> Outcome {
    let start = Instant::now();
    let mut details = Vec::new();
    let mut counts = Vec::new();
    let b = g(0, 1);
    let mut injected: Vec<BTreeSet<GroupElement>> = vec![
        BTreeSet::from([b, g(1, 1), g(2, 1)]),
        BTreeSet::from([b, g(1, -1), g(-1, -1)]),
    ];
    for j in -4..=4 {
        injected.push(BTreeSet::from([b, g(1, 1), g(j, -1)]));
    }
    for a_class in [AClass::Symmetric, AClass::Singleton] {
        let constraint = CandidateConstraint::new(a_class, 4, 4).unwrap();
        let results = enumerate_b_candidates(&constraint);
        let mut survivors = BTreeSet::new();
        for r in &results {
            if r.survived() {
                if !r.verdict.is_shape() {
                    details.push(format!("{a_class:?}: unclassified survivor {:?}", r.set));
                }
                survivors.insert(r.verdict);
            } else if r.witnesses.is_empty() || !r.witnesses.iter().all(|w| w.check(&r.set)) {
                details.push(format!(
                    "{a_class:?}: rejection of {:?} does not recheck",
                    r.set
                ));
            }
        }
        let expected = expected_survivors(a_class, 4);
        for missing in expected.difference(&survivors) {
            details.push(format!("{a_class:?}: shape {missing:?} did not survive"));
        }
        for d in &injected {
            let r = evaluate_candidate(d, &constraint);
            if r.survived() || r.witnesses.is_empty() || !r.witnesses.iter().all(|w| w.check(d)) {
                details.push(format!(
                    "{a_class:?}: injected {d:?} not rejected with a witness"
                ));
            }
        }
        counts.push(format!(
            "{a_class:?}: {} candidates, {} survivors",
            results.len(),
            results.iter().filter(|r| r.survived()).count()
        ));
    }
    let elapsed = start.elapsed();
    within(elapsed, 60, &mut details);
    Outcome::new(
        details,
        format!(
            "{}; {} injected rejected ({elapsed:.2?})",
            counts.join(", "),
            injected.len()
        ),
    )
}

/// The corollary as stated: `{b}` always; `{a^n0 b, b}` when `2 i0 = n0 j0`;
/// `{a^n1 b, a^-n1 b^-1, b, b^-1}` when `2 i0 = n1 j0`. Shapes are recognised
/// here by direct set comparison.
fn corollary_oracle(d: &BTreeSet<GroupElement>, i0: i64, j0: i64) -> bool {
    let b = g(0, 1);
    if *d == BTreeSet::from([b]) {
        return true;
    }
    for n in -20..=20 {
        if n == 0 || 2 * i0 != n * j0 {
            continue;
        }
        if *d == BTreeSet::from([g(n, 1), b])
            || *d == BTreeSet::from([g(n, 1), g(-n, -1), b, g(0, -1)])
        {
            return true;
        }
    }
    false
}

fn corollary_suite() -> Outcome {
    let constraint = CandidateConstraint::new(AClass::Symmetric, 4, 4).unwrap();
    let candidates = enumerate_b_candidates(&constraint);
    let mut details = Vec::new();
    let mut cases = 0;
    let mut allowed = 0;
    for r in &candidates {
        for i0 in -4..=4 {
            for j0 in (-4..=4).filter(|&j| j != 0) {
                cases += 1;
                let verdict = corollary_filter(&r.set, i0, j0).unwrap();
                let ours = verdict != ShapeVerdict::Rejected;
                if ours != corollary_oracle(&r.set, i0, j0) {
                    details.push(format!(
                        "{:?} at i0={i0}, j0={j0}: filter says {verdict:?}",
                        r.set
                    ));
                }
                if ours {
                    allowed += 1;
                    if !r.survived() {
                        details.push(format!("{:?} passes the corollary but fails N1-N3", r.set));
                    }
                }
            }
        }
    }
    if corollary_filter(&BTreeSet::from([g(0, 1)]), 1, 0).is_ok() {
        details.push("j0 = 0 accepted".into());
    }
    Outcome::new(
        details,
        format!(
            "{cases} (candidate, i0, j0) cases, {allowed} allowed, zero disagreements required"
        ),
    )
}

fn type_viii_suite() -> Outcome {
    let mut details = Vec::new();
    for n in (-10..=10).filter(|&n| n != 0) {
        match check_not_orbit_viii(n) {
            Ok(w) if w.required_image == g(n + 1, -1) && w.computed_image == g(n - 1, -1) => {}
            other => details.push(format!("not-orbit n={n}: {other:?}")),
        }
    }
    for n in 1..=3 {
        match check_not_tensor_viii(n, n.unsigned_abs() + 2) {
            Ok(TensorVerdict::NotTensor {
                max_class_size: 2,
                witnesses,
            }) if !witnesses.is_empty() => {}
            other => details.push(format!("not-tensor n={n}: {other:?}")),
        }
    }
    for n in PARAMS {
        let f = Family::type_viii(n).unwrap();
        if check_not_wedge(f).is_err() {
            details.push(format!("not-wedge n={n} failed"));
        }
        match is_traditional(f) {
            Ok(Traditional::NotTraditional { .. }) => {}
            other => details.push(format!("is_traditional n={n}: {other:?}")),
        }
    }
    Outcome::new(
        details,
        "not-orbit for 1<=|n|<=10, not-tensor for n=1..3, not-wedge and not-traditional for 6 values of n".into(),
    )
}

fn slice_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let mut details = Vec::new();
    let families = Family::catalog(&PARAMS);
    let mut slices = 0;
    for f in &families {
        let classes = enumerate_window(f, 3).unwrap();
        let mut bad = 0;
        let mut first = None;
        for _ in 0..50 {
            let left = classes.choose(&mut rng).unwrap();
            let right = classes.choose(&mut rng).unwrap();
            let product = left.simple_quantity().convolve(&right.simple_quantity());
            let values: BTreeSet<Coefficient> = product.terms().map(|(_, c)| c.clone()).collect();
            for c in &values {
                slices += 1;
                let slice: BTreeSet<GroupElement> = product
                    .terms()
                    .filter(|(_, v)| *v == c)
                    .map(|(x, _)| *x)
                    .collect();
                let union = slice
                    .iter()
                    .all(|&x| f.class_of(x).unwrap().iter().all(|y| slice.contains(y)));
                let indicator: BTreeMap<Coefficient, Coefficient> = values
                    .iter()
                    .map(|v| (v.clone(), Coefficient::from(i64::from(v == c))))
                    .collect();
                let via_fn = product.apply_coeff_fn(&indicator).unwrap();
                let via_slice =
                    RingElement::simple_quantity(&product.coeff_slice(c).unwrap()).unwrap();
                if !union || via_fn != via_slice || via_fn.support() != slice {
                    bad += 1;
                    first.get_or_insert(format!("sq({left}) * sq({right}) slice at {c}"));
                }
            }
        }
        if bad > 0 {
            details.push(format!("{f}: {bad} bad slices, first {}", first.unwrap()));
        }
    }
    Outcome::new(
        details,
        format!(
            "{} families x 50 class pairs, {slices} slices",
            families.len()
        ),
    )
}

fn projection_suite() -> Outcome {
    let mut details = Vec::new();
    let mut checked = 0;
    let mut expect = vec![
        (Family::PlusMinus, Family::ZSymmetric),
        (Family::TensorDiscSym, Family::ZSymmetric),
        (Family::TensorSymSym, Family::ZSymmetric),
        (Family::Discrete, Family::ZDiscrete),
        (Family::TensorSymDisc, Family::ZDiscrete),
    ];
    for n in PARAMS {
        for f in [
            Family::orbit_v(n).unwrap(),
            Family::orbit_vi(n).unwrap(),
            Family::orbit_vii(n).unwrap(),
            Family::type_viii(n).unwrap(),
        ] {
            expect.push((f, Family::ZSymmetric));
        }
    }
    for (f, want) in expect {
        checked += 1;
        match project_to_b(&f, 4) {
            Ok(p) if p.pattern == want => {}
            Ok(p) => details.push(format!("{f}: expected {want}, got {}", p.pattern)),
            Err(e) => details.push(format!("{f}: {e}")),
        }
    }
    Outcome::new(
        details,
        format!("{checked} rank-two descriptors projected at R=4"),
    )
}

fn random_element(rng: &mut ChaCha8Rng) -> RingElement {
    let terms = rng.gen_range(0..=4);
    RingElement::from_terms((0..terms).map(|_| {
        let x = g(rng.gen_range(-3..=3), rng.gen_range(-3..=3));
        let c = Coefficient::ratio(rng.gen_range(-4..=4), rng.gen_range(1..=3)).unwrap();
        (x, c)
    }))
}

fn random_set(rng: &mut ChaCha8Rng) -> BTreeSet<GroupElement> {
    (0..rng.gen_range(1..=5))
        .map(|_| g(rng.gen_range(-2..=2), rng.gen_range(-2..=2)))
        .collect()
}

/// gcd of all 2x2 minors of the generator rows.
fn minor_gcd(gens: &[GroupElement]) -> i64 {
    let mut d = 0i64;
    for (k, x) in gens.iter().enumerate() {
        for y in &gens[k + 1..] {
            d = d.gcd(&(x.i * y.j - x.j * y.i));
        }
    }
    d
}

/// Membership by determinant and content arguments alone.
fn lattice_oracle_contains(gens: &[GroupElement], x: GroupElement) -> bool {
    let d = minor_gcd(gens);
    if d != 0 {
        let mut with = gens.to_vec();
        with.push(x);
        return minor_gcd(&with) == d;
    }
    let nonzero: Vec<_> = gens.iter().filter(|v| !v.is_identity()).collect();
    let Some(first) = nonzero.first() else {
        return x.is_identity();
    };
    let c = first.i.gcd(&first.j);
    let u = g(first.i / c, first.j / c);
    let step = nonzero.iter().fold(0i64, |acc, v| {
        let t = if u.i != 0 { v.i / u.i } else { v.j / u.j };
        acc.gcd(&t)
    });
    if x.i * u.j - x.j * u.i != 0 {
        return false;
    }
    let t = if u.i != 0 { x.i / u.i } else { x.j / u.j };
    t % step == 0
}

fn algebra_suite() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    let mut details = Vec::new();
    for case in 0..200 {
        let (x, y, z) = (
            random_element(&mut rng),
            random_element(&mut rng),
            random_element(&mut rng),
        );
        let mut fail = |what: &str| details.push(format!("case {case}: {what}"));
        if &x * &y != &y * &x {
            fail("convolution is not commutative");
        }
        if &(&x * &y) * &z != &x * &(&y * &z) {
            fail("convolution is not associative");
        }
        if (&x * &y).star() != &y.star() * &x.star() {
            fail("star is not an anti-automorphism");
        }
        let m = rng.gen_range(-3..=3);
        if (&x * &y).frobenius(m) != &x.frobenius(m) * &y.frobenius(m) {
            fail("Frobenius map is not multiplicative");
        }
        let (s, t) = (random_set(&mut rng), random_set(&mut rng));
        let common: BTreeSet<_> = s.intersection(&t).copied().collect();
        let had = RingElement::simple_quantity(&s)
            .unwrap()
            .hadamard(&RingElement::simple_quantity(&t).unwrap());
        let want = if common.is_empty() {
            RingElement::zero()
        } else {
            RingElement::simple_quantity(&common).unwrap()
        };
        if had != want {
            fail("sq(S) o sq(T) != sq(S & T)");
        }

        let gens: Vec<GroupElement> = (0..rng.gen_range(1..=4))
            .map(|_| g(rng.gen_range(-6..=6), rng.gen_range(-6..=6)))
            .collect();
        let lattice = Lattice::generated_by(&gens);
        let d = minor_gcd(&gens);
        if d != 0 && lattice.index() != Some(d.unsigned_abs()) {
            fail("index differs from the gcd of minors");
        }
        let mut shuffled = gens.clone();
        shuffled.shuffle(&mut rng);
        let extra = shuffled.iter().fold(GroupElement::IDENTITY, |acc, &v| {
            acc + rng.gen_range(-2i64..=2) * v
        });
        shuffled.push(extra);
        if Lattice::generated_by(&shuffled) != lattice {
            fail("canonical form depends on the presentation");
        }
        for _ in 0..5 {
            let x = g(rng.gen_range(-12..=12), rng.gen_range(-12..=12));
            if lattice.contains(x) != lattice_oracle_contains(&gens, x) {
                fail("membership disagrees with the row-reduction oracle");
            }
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, 5, &mut details);
    Outcome::new(details, format!("200 random cases ({elapsed:.2?})"))
}

/// A corruption that changes the partition: split the class of a small
/// element, or merge two singletons when every class is a singleton.
fn corrupt(f: Family) -> Corrupted<Family> {
    let probes = if f.is_rank_one() {
        vec![g(1, 0), g(2, 0)]
    } else {
        vec![g(1, 1), g(0, 1), g(1, 0)]
    };
    for p in probes {
        let class = f.class_of(p).unwrap();
        if class.len() > 1 {
            return Corrupted::split(f, *class.iter().last().unwrap());
        }
    }
    Corrupted::merge(f, g(1, 0), g(-1, 0))
}

fn mutation_suite() -> Outcome {
    let mut details = Vec::new();
    let families = Family::catalog(&PARAMS);
    for f in &families {
        let broken = corrupt(*f);
        assert!(broken.is_effective().unwrap());
        let report = verify_partition(&broken, 3, 3).unwrap();
        let check = report.check(CHECK_PRODUCT).unwrap();
        match (&check.status, &check.witness) {
            (Status::Fail, Some(Witness::Product(_))) => {}
            _ => details.push(format!("{} not caught by product closure", broken.label())),
        }
    }
    Outcome::new(details, format!("{} corrupted descriptors", families.len()))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("axiom suite", axiom_suite),
        ("orbit coincidence", orbit_coincidence_suite),
        ("basic sets containing b", candidate_suite),
        ("corollary filter", corollary_suite),
        ("type (viii) is not traditional", type_viii_suite),
        ("slices and coefficient functions", slice_suite),
        ("projection to <b>", projection_suite),
        ("core algebra properties", algebra_suite),
        ("mutation sensitivity", mutation_suite),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let outcome = run();
        let status = if outcome.pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {}: {status} - {name}: {}",
            k + 1,
            outcome.summary
        );
        for d in outcome.details.iter().take(12) {
            println!("    {d}");
        }
        if outcome.details.len() > 12 {
            println!("    ... {} more", outcome.details.len() - 12);
        }
        if !outcome.pass {
            failed += 1;
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
