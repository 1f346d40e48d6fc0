//! Text formats: boards and kernels as JSON with integers as decimal
//! strings, 2-D boards as CSV, sequence and cross files, ASCII rendering.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::existence::{CountRecord, ExistenceVerdict};
use crate::fill::CrossSpec;
use crate::grid::{IntGrid, Violation};
use crate::linalg::KernelBasis;

fn parse_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse(msg.into()))
}

fn parse_int(s: &str) -> Result<BigInt> {
    BigInt::from_str(s.trim()).map_err(|_| Error::Parse(format!("not an integer: {s:?}")))
}

fn int_value(v: &Value) -> Result<BigInt> {
    match v {
        Value::String(s) => parse_int(s),
        Value::Number(n) if n.is_i64() || n.is_u64() => parse_int(&n.to_string()),
        _ => parse_err(format!("expected an integer, got {v}")),
    }
}

fn strings(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

fn nest(cells: &[BigInt], dims: &[usize]) -> Value {
    match dims {
        [] | [_] => strings(cells),
        [_, rest @ ..] => {
            let stride: usize = rest.iter().product();
            Value::Array(cells.chunks(stride.max(1)).map(|c| nest(c, rest)).collect())
        }
    }
}

fn unnest(v: &Value, dims: &[usize], out: &mut Vec<BigInt>) -> Result<()> {
    let Some((&len, rest)) = dims.split_first() else {
        out.push(int_value(v)?);
        return Ok(());
    };
    match v {
        Value::Array(items) if items.len() == len => items.iter().try_for_each(|item| unnest(item, rest, out)),
        _ => parse_err(format!("cells do not match dims {dims:?}")),
    }
}

pub fn board_to_json(grid: &IntGrid) -> Value {
    json!({ "dims": grid.dims(), "cells": nest(grid.cells(), grid.dims()) })
}

pub fn board_from_json(text: &str) -> Result<IntGrid> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let dims: Vec<usize> = match v.get("dims").and_then(Value::as_array) {
        Some(ds) => ds
            .iter()
            .map(|d| {
                d.as_u64()
                    .map(|d| d as usize)
                    .ok_or_else(|| Error::Parse(format!("bad dimension {d}")))
            })
            .collect::<Result<_>>()?,
        None => return parse_err("board JSON needs a \"dims\" array"),
    };
    let Some(cells) = v.get("cells") else {
        return parse_err("board JSON needs a \"cells\" array");
    };
    let mut flat = Vec::new();
    unnest(cells, &dims, &mut flat)?;
    IntGrid::new(dims, flat)
}

pub fn board_to_csv(grid: &IntGrid) -> Result<String> {
    if grid.dims().len() != 2 {
        return Err(Error::Unsupported("CSV output is only defined for 2-D boards".into()));
    }
    let mut out = String::new();
    for row in grid.rows() {
        let line: Vec<String> = row.iter().map(ToString::to_string).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    Ok(out)
}

pub fn board_from_csv(text: &str) -> Result<IntGrid> {
    let rows: Vec<Vec<BigInt>> = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split(',').map(parse_int).collect())
        .collect::<Result<_>>()?;
    let width = rows.first().map_or(0, Vec::len);
    if rows.is_empty() || rows.iter().any(|r| r.len() != width) {
        return parse_err("CSV board must be a nonempty rectangle");
    }
    IntGrid::new(vec![rows.len(), width], rows.into_iter().flatten().collect())
}

/// Reads a board as JSON if it looks like JSON, else as CSV.
pub fn board_from_str(text: &str) -> Result<IntGrid> {
    if text.trim_start().starts_with('{') {
        board_from_json(text)
    } else {
        board_from_csv(text)
    }
}

pub fn kernel_to_json(basis: &KernelBasis) -> Value {
    json!({ "dim": basis.dim(), "vectors": basis.vectors().iter().map(|v| strings(v)).collect::<Vec<_>>() })
}

pub fn verdict_to_json(v: &ExistenceVerdict) -> Value {
    json!({ "exists": v.exists, "rule": v.rule, "certificate": v.certificate })
}

pub fn count_to_json(c: &CountRecord) -> Value {
    json!({ "n": c.n, "d": c.d, "count": c.count })
}

pub fn violations_to_json(violations: &[Violation]) -> Value {
    let items: Vec<Value> = violations
        .iter()
        .map(|v| json!({ "cell": v.cell, "expected": v.expected.to_string(), "actual": v.actual.to_string() }))
        .collect();
    json!({ "valid": violations.is_empty(), "count": violations.len(), "violations": items })
}

/// One integer per line; blank lines and `#` comments are skipped.
pub fn parse_sequence(text: &str) -> Result<Vec<BigInt>> {
    content_lines(text).map(parse_int).collect()
}

fn content_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
}

/// Four sections `[a]`, `[b]`, `[c]`, `[d]`, each holding `index value`
/// lines with signed nonzero indices.
pub fn parse_cross(text: &str) -> Result<CrossSpec> {
    let mut cross = CrossSpec::default();
    let mut current: Option<&mut BTreeMap<i64, BigInt>> = None;
    for line in content_lines(text) {
        if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            current = Some(match name.trim() {
                "a" => &mut cross.a,
                "b" => &mut cross.b,
                "c" => &mut cross.c,
                "d" => &mut cross.d,
                other => return parse_err(format!("unknown section [{other}]")),
            });
            continue;
        }
        let Some(seq) = current.as_deref_mut() else {
            return parse_err(format!("entry before any section: {line:?}"));
        };
        let mut parts = line.split_whitespace();
        let (Some(idx), Some(val), None) = (parts.next(), parts.next(), parts.next()) else {
            return parse_err(format!("expected `index value`, got {line:?}"));
        };
        let idx: i64 = idx.parse().map_err(|_| Error::Parse(format!("bad index {idx:?}")))?;
        if idx == 0 {
            return parse_err("cross sequences have no index 0");
        }
        if seq.insert(idx, parse_int(val)?).is_some() {
            return parse_err(format!("duplicate index {idx}"));
        }
    }
    Ok(cross)
}

/// Right-aligned columns, row 0 at the top. Boards beyond 2-D are shown as
/// a sequence of 2-D slices over the leading axes.
pub fn render_ascii(grid: &IntGrid) -> String {
    let dims = grid.dims();
    let (m, n) = match dims.len() {
        1 => (1, dims[0]),
        _ => (dims[dims.len() - 2], dims[dims.len() - 1]),
    };
    let width = grid.cells().iter().map(|c| c.to_string().len()).max().unwrap_or(1);
    let mut out = String::new();
    for (s, slice) in grid.cells().chunks((m * n).max(1)).enumerate() {
        if dims.len() > 2 {
            let mut prefix = Vec::new();
            let mut rem = s;
            for &d in dims[..dims.len() - 2].iter().rev() {
                prefix.push(rem % d);
                rem /= d;
            }
            prefix.reverse();
            if s > 0 {
                out.push('\n');
            }
            out.push_str(&format!("slice {prefix:?}\n"));
        }
        for row in slice.chunks(n.max(1)) {
            let line: Vec<String> = row.iter().map(|c| format!("{:>width$}", c.to_string())).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
    }
    out
}
