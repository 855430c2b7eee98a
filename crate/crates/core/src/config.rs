//! Text formats for θ tables and function specs.
//!
//! ```text
//! # the ternary example
//! form = "fsk"
//! s = 3
//! k = 1
//! 0 -> 0
//! 1 -> 2
//! 2 -> 1
//! ```
//!
//! Header lines are `key = value` with keys `form`, `s`, `k` and optionally
//! `theta = identity | complement` in place of a table. Table lines are
//! `preimage -> image`; blocks are written as concatenated digits for bases
//! up to 10, or comma-separated (`0,11 -> 3,2`) for any base. `#` starts a
//! comment. A θ config is the same format without `form`.

use std::collections::HashMap;

use crate::digits::check_base;
use crate::error::{Error, Result};
use crate::lambda_fn::{Form, LambdaFunction};
use crate::theta::{decode, encode, BlockPermutation};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

#[derive(Default)]
struct Raw {
    form: Option<(usize, String)>,
    base: Option<(usize, String)>,
    k: Option<(usize, String)>,
    shorthand: Option<(usize, String)>,
    rows: Vec<(usize, String, String)>,
    lines: usize,
}

fn scan(text: &str) -> Result<Raw> {
    let mut raw = Raw::default();
    for (i, line) in text.lines().enumerate() {
        let n = i + 1;
        raw.lines = n;
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some((from, to)) = line.split_once("->") {
            raw.rows.push((n, from.trim().to_string(), to.trim().to_string()));
        } else if let Some((key, value)) = line.split_once('=') {
            let value = value.trim().trim_matches('"').trim().to_string();
            let slot = match key.trim() {
                "form" => &mut raw.form,
                "s" => &mut raw.base,
                "k" => &mut raw.k,
                "theta" => &mut raw.shorthand,
                other => return Err(parse_err(n, format!("unknown key `{other}`"))),
            };
            if slot.is_some() {
                return Err(parse_err(n, format!("`{}` is set twice", key.trim())));
            }
            *slot = Some((n, value));
        } else {
            return Err(parse_err(
                n,
                format!("expected `key = value` or `preimage -> image`, got `{line}`"),
            ));
        }
    }
    Ok(raw)
}

fn parse_block(text: &str, base: u8, k: usize, line: usize) -> Result<Vec<u8>> {
    let digits: Vec<u8> = if text.contains(',') || base > 10 {
        text.split(',')
            .map(|d| {
                d.trim()
                    .parse::<u32>()
                    .map_err(|_| parse_err(line, format!("bad digit `{}` in block `{text}`", d.trim())))
                    .and_then(|v| {
                        u8::try_from(v)
                            .ok()
                            .filter(|&v| v < base)
                            .ok_or_else(|| parse_err(line, format!("digit {v} is out of range for base {base}")))
                    })
            })
            .collect::<Result<_>>()?
    } else {
        text.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| {
                c.to_digit(10)
                    .and_then(|v| u8::try_from(v).ok())
                    .filter(|&v| v < base)
                    .ok_or_else(|| parse_err(line, format!("`{c}` is not a digit of base {base}")))
            })
            .collect::<Result<_>>()?
    };
    if digits.len() != k {
        return Err(parse_err(
            line,
            format!("block `{text}` has {} digits, expected k = {k}", digits.len()),
        ));
    }
    Ok(digits)
}

fn header_int(slot: &Option<(usize, String)>, key: &str, lines: usize) -> Result<(usize, u32)> {
    let (line, value) = slot
        .as_ref()
        .ok_or_else(|| parse_err(lines.max(1), format!("missing `{key} = <int>`")))?;
    let v = value
        .parse::<u32>()
        .map_err(|_| parse_err(*line, format!("`{key}` must be a positive integer, got `{value}`")))?;
    Ok((*line, v))
}

fn theta_from(raw: &Raw) -> Result<BlockPermutation> {
    let (base_line, base) = header_int(&raw.base, "s", raw.lines)?;
    let base = check_base(base).map_err(|e| parse_err(base_line, e.to_string()))?;
    let (k_line, k) = header_int(&raw.k, "k", raw.lines)?;
    if k == 0 {
        return Err(parse_err(k_line, "`k` must be at least 1"));
    }
    let k = k as usize;
    if let Some((line, name)) = &raw.shorthand {
        if let Some((row, _, _)) = raw.rows.first() {
            return Err(parse_err(*row, "a table cannot be combined with `theta`"));
        }
        let made = match name.as_str() {
            "identity" => BlockPermutation::identity(base, k),
            "complement" => BlockPermutation::complement(base, k),
            other => return Err(parse_err(*line, format!("unknown theta `{other}`"))),
        };
        return made.map_err(|e| parse_err(*line, e.to_string()));
    }
    let blocks = (u64::from(base))
        .checked_pow(k as u32)
        .filter(|&n| n <= 1 << 20)
        .ok_or_else(|| parse_err(k_line, format!("s^k = {base}^{k} blocks is too large")))? as usize;
    let mut images: Vec<Option<u32>> = vec![None; blocks];
    let mut image_line: HashMap<u32, usize> = HashMap::new();
    for (line, from, to) in &raw.rows {
        let a = encode(base, &parse_block(from, base, k, *line)?);
        let b = encode(base, &parse_block(to, base, k, *line)?);
        if images[a as usize].is_some() {
            return Err(parse_err(
                *line,
                format!("block `{from}` is listed twice as a preimage"),
            ));
        }
        if let Some(first) = image_line.insert(b, *line) {
            return Err(parse_err(
                *line,
                format!("block `{to}` is already the image of line {first}; θ must be a bijection"),
            ));
        }
        images[a as usize] = Some(b);
    }
    if let Some(missing) = images.iter().position(Option::is_none) {
        let block: String = decode(base, k, missing as u32)
            .iter()
            .map(u8::to_string)
            .collect::<Vec<_>>()
            .join(",");
        return Err(parse_err(
            raw.lines.max(1),
            format!("block {block} has no image ({} of {blocks} listed)", raw.rows.len()),
        ));
    }
    BlockPermutation::from_images(base, k, images.into_iter().map(Option::unwrap).collect())
        .map_err(|e| parse_err(raw.lines.max(1), e.to_string()))
}

pub fn parse_theta_config(text: &str) -> Result<BlockPermutation> {
    let raw = scan(text)?;
    if let Some((line, _)) = raw.form {
        return Err(parse_err(line, "a θ config has no `form`"));
    }
    theta_from(&raw)
}

pub fn parse_function_spec(text: &str) -> Result<LambdaFunction> {
    let raw = scan(text)?;
    let form = match &raw.form {
        None => Form::Fsk,
        Some((line, name)) => Form::parse(name).ok_or_else(|| {
            let names: Vec<_> = Form::ALL.iter().map(|f| f.name()).collect();
            parse_err(
                *line,
                format!("unknown form `{name}` (expected one of {})", names.join(", ")),
            )
        })?,
    };
    if form.has_theta() {
        return LambdaFunction::with_form(form, theta_from(&raw)?);
    }
    if let Some((line, _, _)) = raw.rows.first() {
        return Err(parse_err(*line, format!("form {} takes no θ table", form.name())));
    }
    if let Some((line, _)) = &raw.shorthand {
        return Err(parse_err(*line, format!("form {} takes no θ", form.name())));
    }
    if let Some((line, k)) = &raw.k {
        if k != "1" {
            return Err(parse_err(*line, format!("form {} has k = 1", form.name())));
        }
    }
    let (line, base) = header_int(&raw.base, "s", raw.lines)?;
    let base = check_base(base).map_err(|e| parse_err(line, e.to_string()))?;
    match form {
        Form::FPlus => LambdaFunction::fplus(base),
        _ => LambdaFunction::fplus_inv(base),
    }
}

/// Spec text that [`parse_function_spec`] reads back to `f`.
pub fn render_function_spec(f: &LambdaFunction) -> String {
    let mut out = format!("form = \"{}\"\n", f.form().name());
    match f.permutation() {
        Some(theta) => out.push_str(&theta.to_string()),
        None => out.push_str(&format!("s = {}\n", f.base())),
    }
    out
}
