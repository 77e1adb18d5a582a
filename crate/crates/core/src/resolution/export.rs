use std::fmt::Write;

use serde::Serialize;

use super::{lct_from_tree, ResolutionTree};
use crate::exactpoly::render_rat;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreeFormat {
    Dot,
    Json,
}

#[derive(Serialize)]
struct DivisorRecord {
    id: usize,
    parent: Option<usize>,
    m: u32,
    a: u32,
    candidate: String,
}

#[derive(Serialize)]
struct TreeRecord {
    input: String,
    divisors: Vec<DivisorRecord>,
    lct: Option<String>,
}

fn to_dot(t: &ResolutionTree) -> String {
    let mut out = String::from("digraph resolution {\n");
    let _ = writeln!(out, "  label=\"{}\";", t.input);
    for n in &t.nodes {
        let e = &n.divisor;
        let _ = writeln!(
            out,
            "  E{id} [label=\"E{id} m={m} a={a} cand={c}\"];",
            id = e.id,
            m = e.m,
            a = e.a,
            c = render_rat(&e.candidate())
        );
    }
    for n in &t.nodes {
        if let Some(p) = n.parent {
            let _ = writeln!(out, "  E{p} -> E{};", n.divisor.id);
        }
    }
    out.push_str("}\n");
    out
}

/// The JSON form as a value, for embedding into larger reports.
pub fn tree_json(t: &ResolutionTree) -> serde_json::Value {
    let record = TreeRecord {
        input: t.input.to_string(),
        divisors: t
            .nodes
            .iter()
            .map(|n| DivisorRecord {
                id: n.divisor.id,
                parent: n.parent,
                m: n.divisor.m,
                a: n.divisor.a,
                candidate: render_rat(&n.divisor.candidate()),
            })
            .collect(),
        lct: lct_from_tree(t).ok().map(|r| render_rat(&r)),
    };
    serde_json::to_value(record).expect("plain data serializes")
}

pub fn export_tree(t: &ResolutionTree, format: TreeFormat) -> String {
    match format {
        TreeFormat::Dot => to_dot(t),
        TreeFormat::Json => tree_json(t).to_string(),
    }
}
