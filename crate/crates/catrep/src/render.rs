//! Plain-text rendering of JSON reports. Everything shown is read off the
//! JSON value, so the two formats cannot disagree.

use std::fmt::Write;

use serde_json::Value;

fn as_matrix(v: &Value) -> Option<Vec<Vec<i64>>> {
    let rows = v.as_array()?;
    if rows.is_empty() {
        return None;
    }
    rows.iter()
        .map(|r| {
            r.as_array()?
                .iter()
                .map(Value::as_i64)
                .collect::<Option<Vec<_>>>()
        })
        .collect()
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(if *b { "yes" } else { "no" }.into()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

/// One line for short lists of scalars.
fn inline(v: &Value) -> Option<String> {
    match v {
        Value::Array(xs) => {
            let parts: Option<Vec<String>> = xs
                .iter()
                .map(|x| scalar(x).or_else(|| inline(x).map(|s| format!("[{s}]"))))
                .collect();
            let parts = parts?;
            let line = parts.join(", ");
            (line.chars().count() <= 72).then_some(line)
        }
        Value::Object(m) if m.values().all(|x| matches!(x, Value::Number(_))) && m.len() <= 8 => {
            Some(
                m.iter()
                    .map(|(k, x)| format!("{k}: {x}"))
                    .collect::<Vec<_>>()
                    .join(", "),
            )
        }
        _ => scalar(v),
    }
}

fn grid(out: &mut String, rows: &[Vec<i64>], indent: usize) {
    let width = rows
        .iter()
        .flatten()
        .map(|x| x.to_string().len())
        .max()
        .unwrap_or(1);
    for r in rows {
        let cells: Vec<String> = r.iter().map(|x| format!("{x:>width$}")).collect();
        let _ = writeln!(out, "{:indent$}[ {} ]", "", cells.join(" "));
    }
}

fn block(out: &mut String, v: &Value, indent: usize) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                entry(out, k, x, indent);
            }
        }
        Value::Array(xs) => {
            for x in xs {
                if let Some(rows) = as_matrix(x) {
                    let _ = writeln!(out, "{:indent$}-", "");
                    grid(out, &rows, indent + 2);
                } else if let Some(s) = inline(x) {
                    let _ = writeln!(out, "{:indent$}- {s}", "");
                } else {
                    let _ = writeln!(out, "{:indent$}-", "");
                    block(out, x, indent + 2);
                }
            }
        }
        other => {
            let _ = writeln!(out, "{:indent$}{}", "", scalar(other).unwrap_or_default());
        }
    }
}

fn entry(out: &mut String, key: &str, v: &Value, indent: usize) {
    let label = key.replace('_', " ");
    if let Some(rows) = as_matrix(v) {
        let _ = writeln!(out, "{:indent$}{label}:", "");
        grid(out, &rows, indent + 2);
    } else if v.as_array().is_some_and(Vec::is_empty) || v.as_object().is_some_and(|m| m.is_empty())
    {
        let _ = writeln!(out, "{:indent$}{label}: (none)", "");
    } else if let Some(s) = inline(v) {
        let _ = writeln!(out, "{:indent$}{label}: {s}", "");
    } else {
        let _ = writeln!(out, "{:indent$}{label}:", "");
        block(out, v, indent + 2);
    }
}

pub fn render(v: &Value) -> String {
    let mut out = String::new();
    block(&mut out, v, 0);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn matrices_and_scalars() {
        let text = render(&json!({
            "valid": true,
            "matrix": [[1, 10], [2, 2]],
            "cells": [["s", "t"], ["e"]],
            "none": [],
        }));
        assert_eq!(
            text,
            "valid: yes\nmatrix:\n  [  1 10 ]\n  [  2  2 ]\ncells: [s, t], [e]\nnone: (none)\n"
        );
    }
}
