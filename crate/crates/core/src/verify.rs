//! Per-function check suite and the full analysis report.
//!
//! [`verify`] runs every property that applies to one function: integral,
//! complement equations for its base, group laws for its θ, invariant sets,
//! one-sided limits, difference quotients, box counts, witnesses at twins and
//! exact round trips. All sampling is seeded, so two runs with the same
//! options produce the same report.

use std::collections::BTreeSet;
use std::fmt;

use crate::analysis::{
    self, graph_box_count, invariant_set_box_count, invariant_set_fsk, lebesgue_integral_exact, one_sided_limits,
    riemann_ranks, InvariantClass, DEFAULT_CELL_BUDGET, DEFAULT_SEARCH_DEPTH,
};
use crate::digits::{DigitExpansion, RadixKind};
use crate::error::{Error, Result};
use crate::lambda_fn::{Form, LambdaFunction, LinearClass};
use crate::rational::{self, Rational};
use crate::report::{self, Record, Report};
use crate::sample;
use crate::theta::{BlockPermutation, Linearity};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Depth of the twin and grid searches.
    pub depth: usize,
    /// Perturbation depth for difference quotients.
    pub quotient_depth: usize,
    /// Box-count ranks; `None` means every rank with at most `max_box_cells` cells.
    pub ranks: Option<Vec<usize>>,
    pub max_box_cells: u128,
    /// Midpoint sums use the smallest grid with at least this many cells.
    pub riemann_min_cells: u128,
    pub samples: usize,
    pub seed: u64,
    pub cell_budget: u128,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            depth: DEFAULT_SEARCH_DEPTH,
            quotient_depth: 20,
            ranks: None,
            max_box_cells: 1_000_000,
            riemann_min_cells: 10_000,
            samples: 200,
            seed: 0x5eed,
            cell_budget: DEFAULT_CELL_BUDGET,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Verification {
    pub checks: Vec<Check>,
    pub report: Report,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }
}

struct Suite {
    checks: Vec<Check>,
    report: Report,
}

impl Suite {
    fn record(&mut self, name: &'static str, status: Status, detail: impl Into<String>) {
        let detail = detail.into();
        self.report.push(
            Record::new("check")
                .text("name", name)
                .text("status", status)
                .text("detail", &detail),
        );
        self.checks.push(Check { name, status, detail });
    }

    fn judge(&mut self, name: &'static str, ok: bool, detail: impl Into<String>) {
        self.record(name, if ok { Status::Pass } else { Status::Fail }, detail);
    }

    /// Runs `body`; an error becomes a failed check.
    fn run(&mut self, name: &'static str, body: impl FnOnce(&mut Suite) -> Result<()>) {
        if let Err(e) = body(self) {
            self.record(name, Status::Fail, format!("error: {e}"));
        }
    }
}

fn slope_of(class: &LinearClass) -> Option<Rational> {
    match class {
        LinearClass::IdentityLinear => Some(rational::integer(1)),
        LinearClass::ComplementLinear => Some(rational::integer(-1)),
        LinearClass::AffineLinear { slope, .. } => Some(rational::integer(i64::from(*slope))),
        LinearClass::NotLinear => None,
    }
}

fn abs_below(q: &Rational, bound: &Rational) -> bool {
    &num::Signed::abs(q) < bound
}

/// Whether both representations of some `y` pull back through `θ⁻¹` to
/// canonical inputs: neither `0^k` nor `(s−1)^k` may have preimage `(s−1)^k`.
fn collides_at_twins(theta: &BlockPermutation) -> bool {
    let top = theta.images().len() - 1;
    let inv = theta.inverse();
    inv.images()[top] as usize != top && inv.images()[0] as usize != top
}

pub fn verify(f: &LambdaFunction, opts: &VerifyOptions) -> Verification {
    let mut suite = Suite {
        checks: Vec::new(),
        report: Report::new(),
    };
    suite.report.push(report::function_record(f));
    let mut rng = sample::rng(opts.seed);
    let s = f.base();
    let k = f.block_size();
    let linearity = f.linearity();
    let linear = linearity.is_linear();

    suite.run("integral", |suite| {
        let result = lebesgue_integral_exact(f, 1)?;
        let half = rational::ratio(1, 2);
        suite.report.push(report::integral_record(&result));
        suite.judge(
            "integral.exact_is_one_half",
            result.exact == half,
            format!("exact = {}", rational::fraction(&result.exact)),
        );
        let rank = riemann_ranks(f, opts.cell_budget)
            .into_iter()
            .find(|&n| u128::from(s).pow(n as u32) >= opts.riemann_min_cells);
        match rank {
            Some(n) => {
                let r = analysis::riemann_midpoint(f, n, opts.cell_budget)?;
                let ok = abs_below(&(&r - &result.exact), &rational::ratio(1, 1000));
                suite.judge(
                    "integral.riemann_agrees",
                    ok,
                    format!("N = {n}, midpoint sum = {}", rational::decimal(&r, 15)),
                );
            }
            None => suite.record("integral.riemann_agrees", Status::Skip, "no grid fits the cell budget"),
        }
        Ok(())
    });

    suite.run("equations", |suite| {
        let mut bad_fplus = Vec::new();
        let mut bad_inv = Vec::new();
        for _ in 0..opts.samples {
            let e = sample::expansion(&mut rng, s, RadixKind::SAdic, 6, 6);
            if !analysis::check_fplus_complement(s, &e)?.holds {
                bad_fplus.push(e.to_string());
            }
            let e = sample::expansion(&mut rng, s, RadixKind::NegaSAdic, 6, 6);
            if !analysis::check_fplus_inv_complement(s, &e)?.holds {
                bad_inv.push(e.to_string());
            }
        }
        suite.judge(
            "equations.fplus_complement",
            bad_fplus.is_empty(),
            format!("{} samples, failures: {bad_fplus:?}", opts.samples),
        );
        suite.judge(
            "equations.fplus_inv_complement",
            bad_inv.is_empty(),
            format!("{} samples, failures: {bad_inv:?}", opts.samples),
        );
        Ok(())
    });

    match f.permutation() {
        Some(theta) => suite.run("group.laws", |suite| {
            let id = BlockPermutation::identity(s, k)?;
            let mut failures = 0;
            for _ in 0..opts.samples.min(100) {
                let q = sample::permutation(&mut rng, s, k);
                let r = sample::permutation(&mut rng, s, k);
                let p = theta;
                let ok = p.compose(&p.inverse())? == id
                    && p.inverse().compose(p)? == id
                    && p.compose(&q)?.compose(&r)? == p.compose(&q.compose(&r)?)?
                    && id.compose(p)? == *p
                    && p.compose(&id)? == *p;
                failures += usize::from(!ok);
            }
            suite.judge("group.laws", failures == 0, format!("{failures} failing triples"));
            Ok(())
        }),
        None => suite.record("group.laws", Status::Skip, "form has no θ"),
    }

    match f.form() {
        Form::Fsk => suite.run("invariants.classification", |suite| check_invariants(suite, f, opts)),
        Form::FPlus => suite.run("invariants.fplus_membership", |suite| check_fplus_fixed(suite, f)),
        _ => suite.record(
            "invariants",
            Status::Skip,
            "invariant sets are classified for f^s_k and f_+",
        ),
    }

    suite.run("limits.jumps", |suite| {
        let depth = opts.depth.min(3);
        let mut disagreements = 0;
        let mut nonzero = 0;
        let mut first: Option<analysis::JumpReport> = None;
        for x0 in analysis::dual_points(s, f.domain_kind(), depth) {
            let j = one_sided_limits(f, &x0)?;
            disagreements += usize::from(!j.agrees);
            if j.jump != rational::integer(0) {
                nonzero += 1;
                if first.is_none() {
                    first = Some(j.clone());
                }
            }
        }
        if let Some(j) = &first {
            suite.report.push(report::jump_record(j));
        }
        suite.judge(
            "limits.closed_form",
            disagreements == 0,
            format!("{disagreements} disagreements at twins up to depth {depth}"),
        );
        if linear {
            suite.judge(
                "limits.linear_continuous",
                nonzero == 0,
                format!("{nonzero} nonzero jumps"),
            );
        }
        Ok(())
    });

    suite.run("quotients", |suite| {
        let mut weak = Vec::new();
        let expected = slope_of(&linearity);
        for _ in 0..5 {
            let x0 = sample::canonical_expansion(&mut rng, s, f.domain_kind(), 3, 6);
            let mut persistent = BTreeSet::new();
            let mut constant = true;
            for trace in analysis::quotient_traces(f, &x0, opts.quotient_depth)? {
                if let Some(slope) = &expected {
                    constant &= trace.entries.iter().all(|e| &e.quotient == slope);
                }
                persistent.extend(trace.persistent.iter().cloned());
                if suite.report.records.iter().all(|r| r.kind() != "quotients") {
                    suite.report.push(report::quotient_record(&trace));
                }
            }
            let ok = match &expected {
                Some(slope) => constant && persistent.iter().eq([slope]),
                None => persistent.len() >= 2,
            };
            if !ok {
                weak.push(x0.to_string());
            }
        }
        let what = match &expected {
            Some(slope) => format!("constant quotient {}", rational::fraction(slope)),
            None => "at least two persistent quotient values".to_string(),
        };
        suite.judge(
            "quotients",
            weak.is_empty(),
            format!("{what} at 5 points, depth {}; failing: {weak:?}", opts.quotient_depth),
        );
        Ok(())
    });

    suite.run("boxcount", |suite| {
        let ranks = match &opts.ranks {
            Some(r) => r.clone(),
            None => (1..)
                .take_while(|&m| {
                    u128::from(s)
                        .checked_pow((m * k) as u32)
                        .is_some_and(|c| c <= opts.max_box_cells)
                })
                .collect(),
        };
        let mut bad = Vec::new();
        let mut series = analysis::BoxCountSeries::default();
        for m in ranks {
            let e = graph_box_count(f, m, opts.cell_budget)?;
            let expected = u128::from(s).pow((m * k) as u32);
            if u128::from(e.count) != expected || e.estimate.exact() != Some(rational::integer(1)) {
                bad.push(m);
            }
            series.entries.push(e);
        }
        let counts: Vec<String> = series.counts().iter().map(u64::to_string).collect();
        suite.judge(
            "boxcount",
            bad.is_empty() && !series.entries.is_empty(),
            format!(
                "ranks {:?}, counts [{}], failing ranks {bad:?}",
                series.ranks(),
                counts.join(", ")
            ),
        );
        Ok(())
    });

    suite.run("welldefinedness", |suite| {
        let w = analysis::welldefinedness_witness(f, opts.depth)?;
        suite
            .report
            .push(report::welldefinedness_record(w.as_ref(), opts.depth));
        let ok = w.is_some() != linear;
        let detail = match (&w, linear) {
            (Some(w), _) => format!("witness at {}", rational::fraction(&w.point)),
            (None, true) => "absent, as expected for an affine function".to_string(),
            (None, false) => format!("no witness up to depth {}", opts.depth),
        };
        suite.judge("welldefinedness", ok, detail);
        Ok(())
    });

    if linear {
        suite.record("monotonicity", Status::Skip, format!("{} function", linearity.label()));
    } else {
        suite.run("monotonicity", |suite| {
            let w = analysis::monotonicity_counterexample(f, opts.depth)?;
            let ok = w
                .points
                .iter()
                .zip(&w.values)
                .map(|(x, y)| f.evaluate_point(x).map(|v| &v == y))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .all(|b| b);
            suite.report.push(report::monotonicity_record(&w));
            suite.judge("monotonicity", ok, format!("triple at depth {}", w.depth));
            Ok(())
        });
    }

    if f.form() == Form::Fsk && f.theta_linearity() == Some(Linearity::Other) {
        suite.run("noninjectivity", |suite| {
            let w = analysis::noninjectivity_witness(f, opts.depth)?;
            suite.report.push(report::noninjectivity_record(w.as_ref(), opts.depth));
            let expected = collides_at_twins(f.digit_map());
            let ok = match &w {
                Some(w) => {
                    expected
                        && w.x1.value() != w.x2.value()
                        && f.evaluate_point(&w.x1.value())? == w.value
                        && f.evaluate_point(&w.x2.value())? == w.value
                }
                None => !expected,
            };
            let what = if expected {
                "collision expected"
            } else {
                "θ⁻¹ sends a twin tail to the (s−1)-tail; injective"
            };
            suite.judge("noninjectivity", ok, format!("{what}, search depth {}", opts.depth));
            Ok(())
        });
    } else {
        suite.record("noninjectivity", Status::Skip, "applies to f^s_k with a nonlinear θ");
    }

    suite.run("roundtrip", |suite| {
        let mut bad = Vec::new();
        for kind in [f.domain_kind(), f.range_kind()] {
            for _ in 0..opts.samples {
                let q = sample::rational_in(&mut rng, s, kind, 500);
                let e = DigitExpansion::from_rational(&q, s, kind)?;
                if e.value() != q || (e.has_forbidden_tail() && !e.is_endpoint()) {
                    bad.push(rational::fraction(&q));
                }
            }
        }
        suite.judge("roundtrip", bad.is_empty(), format!("failures: {bad:?}"));
        Ok(())
    });

    Verification {
        checks: suite.checks,
        report: suite.report,
    }
}

fn check_invariants(suite: &mut Suite, f: &LambdaFunction, opts: &VerifyOptions) -> Result<()> {
    let inv = invariant_set_fsk(f)?;
    suite.report.push(report::invariant_record(&inv));
    let s = f.base();
    let theta = f.digit_map();
    let k = f.block_size();
    // brute force over repeating single blocks, at digit level
    let mut fixed_points = 0;
    for code in 0..theta.len() as u32 {
        let block = crate::theta::decode(s, k, code);
        let e = DigitExpansion::new(s, RadixKind::SAdic, Vec::new(), block)?;
        if f.evaluate_expansion_raw(&e)?.normalized() == e.normalized() {
            fixed_points += 1;
        }
    }
    let expected = match fixed_points {
        0 => "Empty",
        1 => "Finite",
        _ => "Continuum",
    };
    let mut ok = inv.classification.label() == expected && inv.fixed_block_count() == fixed_points;
    if let InvariantClass::Finite(points) = &inv.classification {
        ok &= points.len() == 1 && f.evaluate_point(&points[0])? == points[0];
    }
    let mut detail = format!("{} with j = {}", inv.classification.label(), inv.fixed_block_count());
    if fixed_points > 0 {
        let rank = (1..=4)
            .rev()
            .find(|&m| u128::from(s).pow((m * k) as u32) <= opts.max_box_cells)
            .unwrap_or(1);
        let cover = invariant_set_box_count(f, rank, opts.cell_budget)?;
        let prefixes = brute_fixed_prefixes(f, rank * k)?;
        let law = (fixed_points as u64).pow(rank as u32);
        ok &= cover.count == law && prefixes == law;
        ok &= inv.dimension.as_ref().is_some_and(|d| d.same_value(&cover.estimate));
        suite.report.push(report::invariant_box_record(&cover));
        detail.push_str(&format!(", rank {rank} cover {} = j^{rank}", cover.count));
    }
    suite.judge("invariants.classification", ok, detail);
    Ok(())
}

fn brute_fixed_prefixes(f: &LambdaFunction, digits: usize) -> Result<u64> {
    let s = f.base();
    let cells = u64::from(s).pow(digits as u32);
    let mut count = 0;
    for code in 0..cells {
        let mut rest = code;
        let mut prefix = vec![0u8; digits];
        for d in prefix.iter_mut().rev() {
            *d = (rest % u64::from(s)) as u8;
            rest /= u64::from(s);
        }
        if f.evaluate_prefix(&prefix)? == prefix {
            count += 1;
        }
    }
    Ok(count)
}

fn check_fplus_fixed(suite: &mut Suite, f: &LambdaFunction) -> Result<()> {
    let s = f.base();
    let rank = (1..=8).rev().find(|&r| u64::from(s).pow(r) <= 200_000).unwrap_or(1);
    let scale = rational::pow(s, rank as usize);
    let mut mismatches = 0;
    for i in 0..u64::from(s).pow(rank) {
        let x = Rational::new(i.into(), scale.clone());
        let e = DigitExpansion::from_rational(&x, s, RadixKind::SAdic)?;
        if analysis::fplus_fixed_membership(&e)? != (f.evaluate_point(&x)? == x) {
            mismatches += 1;
        }
    }
    let dim = analysis::fplus_fixed_dimension(s);
    suite.judge(
        "invariants.fplus_membership",
        mismatches == 0 && dim.exact() == Some(rational::ratio(1, 2)),
        format!("rank {rank}: {mismatches} mismatches; dimension {dim}"),
    );
    Ok(())
}

/// The `analyze` report: linearity, twins, monotonicity, invariant set.
pub fn analyze(f: &LambdaFunction, depth: usize) -> Result<Report> {
    let mut r = Report::new();
    r.push(report::function_record(f));
    let w = analysis::welldefinedness_witness(f, depth)?;
    r.push(report::welldefinedness_record(w.as_ref(), depth));
    if let Some(w) = &w {
        r.push(report::jump_record(&one_sided_limits(f, &w.point)?));
    }
    match analysis::monotonicity_counterexample(f, depth) {
        Ok(m) => r.push(report::monotonicity_record(&m)),
        Err(Error::Precondition(why)) => r.push(
            Record::new("monotonicity")
                .text("witness", "absent")
                .text("reason", why),
        ),
        Err(Error::SearchExhausted(d)) => {
            r.push(Record::new("monotonicity").text("witness", "absent").text("depth", d))
        }
        Err(e) => return Err(e),
    }
    if f.form() == Form::Fsk {
        r.push(report::invariant_record(&invariant_set_fsk(f)?));
        if f.theta_linearity() == Some(Linearity::Other) {
            let w = analysis::noninjectivity_witness(f, depth)?;
            r.push(report::noninjectivity_record(w.as_ref(), depth));
        }
    }
    if f.form() == Form::FPlus {
        r.push(
            Record::new("invariant_set")
                .text("characterization", "odd-position digits are 0")
                .text("dimension", analysis::fplus_fixed_dimension(f.base())),
        );
    }
    Ok(r)
}
