use std::fmt::Write as _;

use fixedbitset::FixedBitSet;

use super::{Compactification, VertexKind};
use crate::error::Result;
use crate::relation::PreorderGraph;

/// `id,kind,h:<name>…,c:<name>…` with quantized coordinates as decimals.
pub fn vertices_csv(comp: &Compactification) -> Result<String> {
    let decimals = (-comp.params.eps_q.log10()).ceil().max(0.0) as usize;
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["id".to_string(), "kind".to_string()];
    header.extend(comp.family.h_names().iter().map(|n| format!("h:{n}")));
    header.extend(comp.family.c_names().iter().map(|n| format!("c:{n}")));
    w.write_record(&header)?;
    for v in &comp.vertices {
        let mut row = vec![
            v.id.to_string(),
            match v.kind {
                VertexKind::Core => "core".into(),
                VertexKind::Remainder => "remainder".into(),
            },
        ];
        row.extend(
            v.coords
                .iter()
                .map(|&c| format!("{:.*}", decimals, c as f64 * comp.params.eps_q)),
        );
        w.write_record(&row)?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Transitive reduction of the induced preorder in DOT, with remainder
/// vertices drawn as filled double circles.
pub fn preorder_dot(comp: &Compactification) -> String {
    let mut out = String::from("digraph induced {\n  rankdir=BT;\n  node [shape=circle];\n");
    for v in &comp.vertices {
        if v.kind == VertexKind::Remainder {
            let _ = writeln!(
                out,
                "  v{} [shape=doublecircle, style=filled, fillcolor=lightgrey, label=\"r{}\"];",
                v.id, v.id
            );
        }
    }
    for (a, b) in comp.induced.transitive_reduction() {
        let _ = writeln!(out, "  v{a} -> v{b};");
    }
    out.push_str("}\n");
    out
}

/// Each row of the relation as a hex string, least significant index
/// first within every nibble-aligned group of four.
pub fn relation_hex(g: &PreorderGraph) -> Vec<String> {
    g.rows().iter().map(|row| row_hex(row, g.n())).collect()
}

fn row_hex(row: &FixedBitSet, n: usize) -> String {
    (0..n.div_ceil(4))
        .map(|k| {
            let nibble = (0..4)
                .filter(|b| {
                    let i = 4 * k + b;
                    i < n && row.contains(i)
                })
                .fold(0u32, |acc, b| acc | 1 << b);
            char::from_digit(nibble, 16).unwrap()
        })
        .collect()
}
