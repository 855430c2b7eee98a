//! Serialized output: structured text records and CSV series.
//!
//! A text report is a sequence of records, one per finding:
//!
//! ```text
//! [jump]
//! point = 1/3
//! left_limit = 1/6
//! right_limit = 2/3
//! jump = 1/2
//! ```
//!
//! Rationals are always printed as exact `num/den`; with `decimal` rendering
//! a 15-digit decimal follows in brackets. Nothing time- or
//! environment-dependent is written, so reports are reproducible byte for byte.

use std::fmt::Write as _;
use std::io;

use crate::analysis::{
    BoxCountSeries, GraphSample, IntegralResult, InvariantBoxCount, InvariantSetReport, JumpReport,
    MonotonicityWitness, NoninjectivityWitness, QuotientTrace, WelldefinednessWitness,
};
use crate::lambda_fn::{LambdaFunction, LinearClass};
use crate::rational::{self, Rational};

pub const DECIMAL_PLACES: usize = 15;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Value {
    Text(String),
    Rational(Rational),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Record {
    kind: String,
    fields: Vec<(String, Value)>,
}

impl Record {
    pub fn new(kind: impl Into<String>) -> Self {
        Record {
            kind: kind.into(),
            fields: Vec::new(),
        }
    }

    pub fn kind(&self) -> &str {
        &self.kind
    }

    pub fn text(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.fields.push((key.into(), Value::Text(value.to_string())));
        self
    }

    pub fn rational(mut self, key: impl Into<String>, value: &Rational) -> Self {
        self.fields.push((key.into(), Value::Rational(value.clone())));
        self
    }

    pub fn rationals<'a>(mut self, key: impl Into<String>, values: impl IntoIterator<Item = &'a Rational>) -> Self {
        let list: Vec<_> = values.into_iter().map(rational::fraction).collect();
        self.fields
            .push((key.into(), Value::Text(format!("[{}]", list.join(", ")))));
        self
    }

    /// Value of `key` as rendered without decimals.
    pub fn get(&self, key: &str) -> Option<String> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| match v {
            Value::Text(t) => t.clone(),
            Value::Rational(q) => rational::fraction(q),
        })
    }

    fn render_into(&self, out: &mut String, decimal: bool) {
        let _ = writeln!(out, "[{}]", self.kind);
        for (key, value) in &self.fields {
            match value {
                Value::Text(t) => {
                    let _ = writeln!(out, "{key} = {t}");
                }
                Value::Rational(q) if decimal => {
                    let _ = writeln!(
                        out,
                        "{key} = {} [{}]",
                        rational::fraction(q),
                        rational::decimal(q, DECIMAL_PLACES)
                    );
                }
                Value::Rational(q) => {
                    let _ = writeln!(out, "{key} = {}", rational::fraction(q));
                }
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub records: Vec<Record>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, record: Record) {
        self.records.push(record);
    }

    pub fn render(&self, decimal: bool) -> String {
        let mut out = String::new();
        for (i, r) in self.records.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            r.render_into(&mut out, decimal);
        }
        out
    }
}

pub fn function_record(f: &LambdaFunction) -> Record {
    let linearity = f.linearity();
    let mut r = Record::new("function")
        .text("form", f.form().name())
        .text("s", f.base())
        .text("k", f.block_size())
        .text("domain", f.domain_kind())
        .text("range", f.range_kind())
        .text("linearity", linearity.label());
    if let LinearClass::AffineLinear { slope, intercept } = &linearity {
        r = r.text("slope", slope).rational("intercept", intercept);
    }
    r
}

pub fn welldefinedness_record(w: Option<&WelldefinednessWitness>, depth: usize) -> Record {
    let r = Record::new("welldefinedness").text("depth", depth);
    match w {
        Some(w) => r
            .text("witness", "found")
            .rational("point", &w.point)
            .rational("canonical_value", &w.canonical_value)
            .rational("dual_value", &w.dual_value),
        None => r.text("witness", "absent"),
    }
}

pub fn monotonicity_record(w: &MonotonicityWitness) -> Record {
    Record::new("monotonicity")
        .text("depth", w.depth)
        .text("shape", if w.peak { "peak" } else { "valley" })
        .rationals("points", &w.points)
        .rationals("values", &w.values)
}

pub fn noninjectivity_record(w: Option<&NoninjectivityWitness>, depth: usize) -> Record {
    let r = Record::new("noninjectivity").text("depth", depth);
    match w {
        Some(w) => r
            .text("witness", "found")
            .rational("x1", &w.x1.value())
            .text("x1_expansion", &w.x1)
            .rational("x2", &w.x2.value())
            .text("x2_expansion", &w.x2)
            .rational("value", &w.value),
        None => r.text("witness", "absent"),
    }
}

pub fn invariant_record(inv: &InvariantSetReport) -> Record {
    let blocks: Vec<String> = inv.fixed_blocks.iter().map(ToString::to_string).collect();
    let mut r = Record::new("invariant_set")
        .text("classification", inv.classification.label())
        .text("fixed_block_count", inv.fixed_block_count())
        .text("fixed_blocks", format!("[{}]", blocks.join(", ")));
    if let crate::analysis::InvariantClass::Finite(points) = &inv.classification {
        r = r.rationals("points", points);
    }
    match &inv.dimension {
        Some(d) => r.text("dimension", d).text("dimension_symbolic", d.symbolic()),
        None => r.text("dimension", "undefined"),
    }
}

pub fn invariant_box_record(c: &InvariantBoxCount) -> Record {
    Record::new("invariant_box_count")
        .text("rank", c.rank)
        .text("digits", c.digits)
        .text("count", c.count)
        .text("estimate", &c.estimate)
}

pub fn jump_record(j: &JumpReport) -> Record {
    Record::new("jump")
        .rational("point", &j.point)
        .text("canonical", &j.canonical)
        .text("twin", &j.twin)
        .text("break_position", j.break_position)
        .rational("left_limit", &j.left_limit)
        .rational("right_limit", &j.right_limit)
        .rational("value", &j.value)
        .rational("jump", &j.jump)
        .rational("closed_form_jump", &j.closed_form_jump)
        .text("agrees", j.agrees)
}

pub fn quotient_record(q: &QuotientTrace) -> Record {
    Record::new("quotients")
        .rational("point", &q.point)
        .text("expansion", &q.expansion)
        .text("digit", q.digit)
        .text("depth", q.depth)
        .text("entries", q.entries.len())
        .rationals("persistent", &q.persistent)
}

pub fn integral_record(i: &IntegralResult) -> Record {
    let mut r = Record::new("integral")
        .rational("exact", &i.exact)
        .rational("recursion_coefficient", &i.coefficient)
        .rational("recursion_constant", &i.constant);
    for (n, q) in &i.riemann_estimates {
        r = r.rational(format!("riemann_{n}"), q);
    }
    r
}

/// `rank,digits,count,estimate` rows; `estimate_decimal` is added with `decimal`.
pub fn write_box_count_csv<W: io::Write>(out: W, series: &BoxCountSeries, decimal: bool) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["rank", "digits", "count", "estimate"];
    if decimal {
        header.push("estimate_decimal");
    }
    w.write_record(&header)?;
    for e in &series.entries {
        let mut row = vec![
            e.rank.to_string(),
            e.digits.to_string(),
            e.count.to_string(),
            e.estimate.to_string(),
        ];
        if decimal {
            row.push(format!("{:.15}", e.estimate.to_f64()));
        }
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

/// Header note for graph CSVs.
pub const GRAPH_NOTE: &str =
    "# x = left ends of rank-N cells; f(x) uses the canonical representation, so jumps show the right-limit branch";

/// `x,y,x_decimal,y_decimal` rows after a `#` note line.
pub fn write_graph_csv<W: io::Write>(mut out: W, digits: usize, samples: &[GraphSample]) -> csv::Result<()> {
    writeln!(out, "{GRAPH_NOTE} (N = {digits})")?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["x", "y", "x_decimal", "y_decimal"])?;
    for p in samples {
        w.write_record([
            rational::fraction(&p.x),
            rational::fraction(&p.y),
            rational::decimal(&p.x, DECIMAL_PLACES),
            rational::decimal(&p.y, DECIMAL_PLACES),
        ])?;
    }
    w.flush()?;
    Ok(())
}
