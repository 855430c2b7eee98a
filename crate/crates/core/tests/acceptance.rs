//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use blockperm::analysis::{
    check_fplus_complement, check_fplus_inv_complement, dual_points, fplus_fixed_dimension, fplus_fixed_membership,
    graph_box_count, invariant_set_box_count, invariant_set_fsk, lebesgue_integral_exact, one_sided_limits,
    quotient_traces, riemann_midpoint, riemann_ranks, welldefinedness_witness, InvariantClass, DEFAULT_CELL_BUDGET,
};
use blockperm::rational::{integer, pow, ratio};
use blockperm::sample::{self, SampleRng};
use blockperm::theta::enumerate_all;
use blockperm::{BlockPermutation, DigitExpansion, Form, LambdaFunction, RadixKind, Rational};
use num::Signed;
use rand::seq::IndexedRandom;

type Outcome = Result<(bool, String), blockperm::Error>;
type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

const BASES: [u8; 3] = [2, 3, 5];
const BLOCKS: [usize; 3] = [1, 2, 3];

fn random_fsk(rng: &mut SampleRng) -> LambdaFunction {
    let s = *BASES.choose(rng).unwrap();
    let k = *BLOCKS.choose(rng).unwrap();
    LambdaFunction::fsk(sample::permutation(rng, s, k))
}

fn table(s: u8, k: usize, images: &[u32]) -> LambdaFunction {
    LambdaFunction::fsk(BlockPermutation::from_images(s, k, images.to_vec()).unwrap())
}

/// Fifty random `f^s_k` shared by the sampling criteria.
fn fsk_sample() -> Vec<LambdaFunction> {
    let mut rng = sample::rng(0xacce);
    (0..50).map(|_| random_fsk(&mut rng)).collect()
}

/// Every form with θ = identity or complement that classifies as linear.
fn linear_forms() -> Vec<LambdaFunction> {
    let mut out = Vec::new();
    for s in BASES {
        for k in [1, 2] {
            for form in Form::ALL.iter().copied().filter(|f| f.has_theta()) {
                for theta in [
                    BlockPermutation::identity(s, k).unwrap(),
                    BlockPermutation::complement(s, k).unwrap(),
                ] {
                    let f = LambdaFunction::with_form(form, theta).unwrap();
                    if f.linearity().is_linear() {
                        out.push(f);
                    }
                }
            }
        }
    }
    out
}

fn radix_forms() -> Vec<LambdaFunction> {
    BASES
        .iter()
        .flat_map(|&s| [LambdaFunction::fplus(s).unwrap(), LambdaFunction::fplus_inv(s).unwrap()])
        .collect()
}

fn abs_below(q: &Rational, bound: &Rational) -> bool {
    q.abs() < *bound
}

fn integral() -> Outcome {
    let mut rng = sample::rng(1);
    let mut funcs: Vec<LambdaFunction> = (0..100).map(|_| random_fsk(&mut rng)).collect();
    funcs.extend(radix_forms());
    let half = ratio(1, 2);
    let mut off_half = Vec::new();
    let mut riemann_off = 0;
    for f in &funcs {
        let exact = lebesgue_integral_exact(f, 1)?.exact;
        if exact != half {
            off_half.push(format!("{f} = {exact}"));
        }
        let n = riemann_ranks(f, DEFAULT_CELL_BUDGET)
            .into_iter()
            .find(|&n| u128::from(f.base()).pow(n as u32) >= 10_000)
            .expect("a grid with at least 10^4 cells fits the budget");
        let r = riemann_midpoint(f, n, DEFAULT_CELL_BUDGET)?;
        riemann_off += usize::from(!abs_below(&(r - &exact), &ratio(1, 1000)));
    }
    Ok((
        off_half.is_empty() && riemann_off == 0,
        format!(
            "{} functions; integral != 1/2: [{}]; midpoint sums off by >= 1e-3: {riemann_off}",
            funcs.len(),
            off_half.join(", ")
        ),
    ))
}

fn equations() -> Outcome {
    let mut rng = sample::rng(2);
    let mut failures = 0;
    let mut checked = 0;
    for s in 2..=6u8 {
        for _ in 0..1000 {
            let e = sample::expansion(&mut rng, s, RadixKind::SAdic, 6, 6);
            failures += usize::from(!check_fplus_complement(s, &e)?.holds);
            let e = sample::expansion(&mut rng, s, RadixKind::NegaSAdic, 6, 6);
            failures += usize::from(!check_fplus_inv_complement(s, &e)?.holds);
            checked += 2;
        }
    }
    Ok((failures == 0, format!("{checked} exact checks, {failures} failures")))
}

fn group() -> Outcome {
    let order21 = enumerate_all(2, 1)?.count();
    let order22 = enumerate_all(2, 2)?.count();
    let mut rng = sample::rng(3);
    let id = BlockPermutation::identity(3, 2)?;
    let mut bad = 0;
    for _ in 0..1000 {
        let p = sample::permutation(&mut rng, 3, 2);
        let q = sample::permutation(&mut rng, 3, 2);
        let r = sample::permutation(&mut rng, 3, 2);
        let ok = p.compose(&q)?.compose(&r)? == p.compose(&q.compose(&r)?)?
            && p.compose(&id)? == p
            && id.compose(&p)? == p
            && p.compose(&p.inverse())? == id
            && p.inverse().compose(&p)? == id;
        bad += usize::from(!ok);
    }
    Ok((
        order21 == 2 && order22 == 24 && bad == 0,
        format!("|(2,1)| = {order21}, |(2,2)| = {order22}, {bad} of 1000 triples violate a law"),
    ))
}

fn invariants() -> Outcome {
    let mut notes = Vec::new();
    let ternary = invariant_set_fsk(&table(3, 1, &[0, 2, 1]))?;
    let ternary_ok = ternary.classification == InvariantClass::Finite(vec![integer(0)]);
    notes.push(format!("ternary {}", ternary.classification.label()));
    let swap = invariant_set_fsk(&table(2, 2, &[2, 3, 0, 1]))?;
    let swap_ok = swap.classification == InvariantClass::Empty;
    notes.push(format!("f^2_2 {}", swap.classification.label()));

    let two_fixed = table(4, 1, &[0, 1, 3, 2]);
    let inv = invariant_set_fsk(&two_fixed)?;
    let dim = inv.dimension.as_ref().and_then(|d| d.exact());
    let mut continuum_ok = inv.classification == InvariantClass::Continuum && dim == Some(ratio(1, 2));
    let mut ranks = 0;
    for m in (1..).take_while(|&m| 4u64.pow(m as u32) <= 1_000_000) {
        let c = invariant_set_box_count(&two_fixed, m, DEFAULT_CELL_BUDGET)?;
        continuum_ok &= c.count == 2u64.pow(m as u32) && c.estimate.exact() == Some(ratio(1, 2));
        ranks = m;
    }
    notes.push(format!(
        "s=4 j=2 {} dim {:?}, box estimate 1/2 at ranks 1..={ranks}",
        inv.classification.label(),
        dim
    ));

    let mut mismatches = 0;
    let mut examined = 0;
    for s in [2u8, 3] {
        let f = LambdaFunction::fplus(s)?;
        let cells = u64::from(s).pow(8);
        let scale = pow(s, 8);
        for i in 0..cells {
            let word = (0..8)
                .rev()
                .map(|j| ((i / u64::from(s).pow(j)) % u64::from(s)) as u8)
                .collect::<Vec<_>>();
            let grid = DigitExpansion::from_rational(&Rational::new(i.into(), scale.clone()), s, RadixKind::SAdic)?;
            let periodic = DigitExpansion::new(s, RadixKind::SAdic, Vec::new(), word)?.canonicalize();
            for e in [grid, periodic] {
                if e.is_endpoint() {
                    continue;
                }
                let x = e.value();
                mismatches += usize::from(fplus_fixed_membership(&e)? != (f.evaluate_point(&x)? == x));
                examined += 1;
            }
        }
    }
    let fplus_dim_ok = BASES
        .iter()
        .all(|&s| fplus_fixed_dimension(s).exact() == Some(ratio(1, 2)));
    notes.push(format!(
        "f_+ membership: {mismatches} mismatches of {examined}; dimension 1/2: {fplus_dim_ok}"
    ));
    Ok((
        ternary_ok && swap_ok && continuum_ok && mismatches == 0 && fplus_dim_ok,
        notes.join("; "),
    ))
}

fn discontinuity() -> Outcome {
    let j = one_sided_limits(&table(3, 1, &[0, 2, 1]), &ratio(1, 3))?;
    let point_ok = j.left_limit == ratio(1, 6)
        && j.right_limit == ratio(2, 3)
        && j.jump == ratio(1, 2)
        && j.closed_form_jump == j.jump
        && j.agrees;
    let mut nonzero = 0;
    let mut points = 0;
    for f in linear_forms() {
        for x0 in dual_points(f.base(), f.domain_kind(), 4) {
            let j = one_sided_limits(&f, &x0)?;
            nonzero += usize::from(j.jump != integer(0) || !j.agrees);
            points += 1;
        }
    }
    Ok((
        point_ok && nonzero == 0,
        format!(
            "f^3_1 at 1/3: left {}, right {}, jump {}, closed form {}; linear forms: {nonzero} nonzero of {points} jumps",
            j.left_limit, j.right_limit, j.jump, j.closed_form_jump
        ),
    ))
}

fn quotients() -> Outcome {
    let mut rng = sample::rng(6);
    let mut weak = Vec::new();
    let mut nonlinear = 0;
    for f in fsk_sample().iter().filter(|f| !f.linearity().is_linear()) {
        nonlinear += 1;
        for _ in 0..5 {
            let x0 = sample::canonical_expansion(&mut rng, f.base(), RadixKind::SAdic, 3, 6);
            let values: BTreeSet<Rational> = quotient_traces(f, &x0, 20)?
                .into_iter()
                .flat_map(|t| t.persistent)
                .collect();
            if values.len() < 2 {
                weak.push(format!("θ {:?} at {x0}", f.digit_map().images()));
            }
        }
    }
    let mut linear_bad = 0;
    for s in BASES {
        for k in BLOCKS {
            for (theta, slope) in [
                (BlockPermutation::identity(s, k)?, integer(1)),
                (BlockPermutation::complement(s, k)?, integer(-1)),
            ] {
                let f = LambdaFunction::fsk(theta);
                for _ in 0..5 {
                    let x0 = sample::canonical_expansion(&mut rng, s, RadixKind::SAdic, 3, 6);
                    let constant = quotient_traces(&f, &x0, 20)?
                        .iter()
                        .all(|t| t.entries.iter().all(|e| e.quotient == slope));
                    linear_bad += usize::from(!constant);
                }
            }
        }
    }
    Ok((
        weak.is_empty() && linear_bad == 0,
        format!(
            "{nonlinear} nonlinear f^s_k x 5 points: {} with < 2 persistent values {weak:?}; identity/complement off-slope: {linear_bad}",
            weak.len()
        ),
    ))
}

fn box_counting() -> Outcome {
    let mut funcs = fsk_sample();
    funcs.extend(radix_forms());
    let mut rng = sample::rng(7);
    for form in [
        Form::FPlusAfterFsk,
        Form::FskAfterFPlusInv,
        Form::FPlusAfterFskAfterFPlusInv,
    ] {
        let theta = random_fsk(&mut rng).digit_map().clone();
        funcs.push(LambdaFunction::with_form(form, theta)?);
    }
    let mut bad = Vec::new();
    let mut grids = 0;
    for f in &funcs {
        let (s, k) = (u128::from(f.base()), f.block_size());
        for m in (1..).take_while(|&m| s.checked_pow((m * k) as u32).is_some_and(|c| c <= 1_000_000)) {
            let e = graph_box_count(f, m, DEFAULT_CELL_BUDGET)?;
            if u128::from(e.count) != s.pow((m * k) as u32) || e.estimate.exact() != Some(integer(1)) {
                bad.push(format!("{f} rank {m}: {}", e.count));
            }
            grids += 1;
        }
    }
    Ok((
        bad.is_empty(),
        format!("{} functions, {grids} grids, mismatches {bad:?}", funcs.len()),
    ))
}

fn welldefinedness() -> Outcome {
    let mut funcs = fsk_sample();
    funcs.extend(radix_forms());
    let mut missing = Vec::new();
    let mut nonlinear = 0;
    for f in funcs.iter().filter(|f| !f.linearity().is_linear()) {
        nonlinear += 1;
        match welldefinedness_witness(f, 6)? {
            Some(w) if w.canonical_value != w.dual_value => {}
            _ => missing.push(f.to_string()),
        }
    }
    let linear = linear_forms();
    let mut spurious = 0;
    for f in &linear {
        spurious += usize::from(welldefinedness_witness(f, 6)?.is_some());
    }
    Ok((
        missing.is_empty() && spurious == 0,
        format!(
            "{nonlinear} nonlinear: missing witness {missing:?}; {} linear: {spurious} spurious",
            linear.len()
        ),
    ))
}

fn round_trip() -> Outcome {
    let mut rng = sample::rng(9);
    let mut bad = 0;
    let mut forbidden = 0;
    let mut pairs = 0;
    for s in [2u8, 3, 5, 10] {
        for kind in [RadixKind::SAdic, RadixKind::NegaSAdic] {
            for _ in 0..100_000 {
                let q = sample::rational_in(&mut rng, s, kind, 5000);
                let e = DigitExpansion::from_rational(&q, s, kind)?;
                bad += usize::from(e.value() != q);
                forbidden += usize::from(e.has_forbidden_tail() && !e.is_endpoint());
            }
            for _ in 0..10_000 {
                let raw = sample::expansion(&mut rng, s, kind, 5, 5);
                let c = raw.canonicalize();
                forbidden += usize::from(c.has_forbidden_tail() && !c.is_endpoint());
                bad += usize::from(c.value() != raw.value());
            }
            pairs += 1;
        }
    }
    Ok((
        bad == 0 && forbidden == 0,
        format!("{pairs} (s, kind) pairs x 1e5 rationals: {bad} value changes, {forbidden} forbidden tails"),
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("integral", integral, Some(Duration::from_secs(30))),
        ("functional equations", equations, None),
        ("group order", group, None),
        ("invariant sets", invariants, None),
        ("discontinuity", discontinuity, None),
        ("difference quotients", quotients, None),
        ("box counting", box_counting, Some(Duration::from_secs(60))),
        ("well-definedness", welldefinedness, None),
        ("round trip", round_trip, None),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok((ok, detail)) => (ok, detail),
            Err(e) => (false, format!("error: {e}")),
        };
        let in_time = limit.is_none_or(|l| elapsed <= l);
        let ok = ok && in_time;
        failed += usize::from(!ok);
        let timing = match limit {
            Some(l) => format!("{:.2}s, limit {}s", elapsed.as_secs_f64(), l.as_secs()),
            None => format!("{:.2}s", elapsed.as_secs_f64()),
        };
        println!(
            "{} criterion {} ({name}): {detail} [{timing}]",
            if ok { "PASS" } else { "FAIL" },
            i + 1
        );
    }
    println!("{} of 9 criteria passed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
