use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use sofic_core::graph::LabeledGraph;
use sofic_core::monoid::{builtin_handle, builtin_semigroup, Element, FiniteSemigroup, HandleSpec, MonoidHandle, SemigroupSpec};
use sofic_core::sofic::ApproxMap;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read `{}`", path.display()))
}

/// A JSON file if the path exists, otherwise a built-in name.
pub fn monoid(arg: &str) -> Result<MonoidHandle> {
    let path = Path::new(arg);
    if path.is_file() {
        let spec = HandleSpec::from_json(&read(path)?).with_context(|| format!("in `{arg}`"))?;
        return Ok(spec.build()?);
    }
    Ok(builtin_handle(arg)?)
}

pub fn semigroup(arg: &str) -> Result<FiniteSemigroup> {
    let path = Path::new(arg);
    if path.is_file() {
        let spec: SemigroupSpec =
            serde_json::from_str(&read(path)?).with_context(|| format!("semigroup spec in `{arg}`"))?;
        return Ok(spec.build()?);
    }
    Ok(builtin_semigroup(arg)?)
}

pub fn graph(path: &Path) -> Result<LabeledGraph> {
    LabeledGraph::from_json_str(&read(path)?).with_context(|| format!("in `{}`", path.display()))
}

pub fn approx(path: &Path, fallback: Option<&MonoidHandle>) -> Result<ApproxMap> {
    ApproxMap::from_json_str(&read(path)?, fallback).with_context(|| format!("in `{}`", path.display()))
}

/// Splits at commas that are not inside parentheses.
fn split_top_level(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out
}

/// A finite set of elements: `ball:R` for `B_R(1)`, a file holding a JSON
/// array of strings, or a comma-separated list.
pub fn elements(h: &MonoidHandle, arg: &str) -> Result<Vec<Element>> {
    if let Some(r) = arg.strip_prefix("ball:") {
        let r: usize = r.parse().with_context(|| format!("`{arg}`: radius must be an integer"))?;
        return Ok(h.elements_ball(r)?);
    }
    let path = Path::new(arg);
    let names: Vec<String> = if path.is_file() {
        serde_json::from_str(&read(path)?).with_context(|| format!("`{arg}` must hold a JSON array of strings"))?
    } else {
        split_top_level(arg).into_iter().map(|s| s.trim().to_string()).collect()
    };
    if names.is_empty() || names.iter().any(String::is_empty) {
        bail!("empty element in `{arg}`");
    }
    Ok(h.parse_all(&names)?)
}
