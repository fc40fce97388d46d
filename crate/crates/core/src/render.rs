//! Text renderings of diagrams: a compact ASCII drawing that can be read
//! back, and Graphviz DOT for whole subtrees.
//!
//! The ASCII drawing puts generator `a_g` in column `2(g-1)` of the bottom
//! row (`●` used, `○` unused). The first arc, when the diagram starts with
//! one, is drawn inline as `●–●`. Every arc added above is a row of its own,
//! outermost on top:
//!
//! ```text
//! ╭───────╮
//! │ ╭───╮ │
//! ● ● ● ● ●
//! ```

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::diagram::{walk, Diagram, Placement, Step};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    Ascii,
    Dot,
}

/// Renders `d` itself (ASCII) or the subtree rooted at `d` (DOT).
pub fn render(d: &Diagram, format: RenderFormat) -> String {
    match format {
        RenderFormat::Ascii => render_ascii(d),
        RenderFormat::Dot => render_dot(d),
    }
}

pub fn render_ascii(d: &Diagram) -> String {
    let n = d.rank();
    let width = 2 * n - 1;
    let col = |g: usize| 2 * (g - 1);
    let mut rows: Vec<Vec<char>> = Vec::new();

    let mut above: Vec<(usize, usize)> = Vec::new();
    let mut inline: Option<usize> = None;
    for (step, placement) in d.steps().iter().zip(d.placements()) {
        if let Placement::Arc { x, y } = *placement {
            if matches!(step, Step::InitialArc(_)) {
                inline = Some(x);
            } else {
                above.push((x, y));
            }
        }
    }
    // Outermost (last drawn) arc first.
    for (row_idx, &(x, y)) in above.iter().rev().enumerate() {
        let mut row = vec![' '; width];
        for &(ox, oy) in above.iter().rev().take(row_idx) {
            row[col(ox)] = '│';
            row[col(oy)] = '│';
        }
        row[col(x)] = '╭';
        row[col(y)] = '╮';
        for c in &mut row[col(x) + 1..col(y)] {
            *c = '─';
        }
        rows.push(row);
    }

    let mut nodes = vec![' '; width];
    for g in 1..=n {
        let used = matches!(d.used_interval(), Some((u, v)) if (u..=v).contains(&g));
        nodes[col(g)] = if used { '●' } else { '○' };
    }
    if let Some(x) = inline {
        nodes[col(x) + 1] = '–';
    }
    rows.push(nodes);

    let mut out = String::new();
    for row in rows {
        let line: String = row.into_iter().collect();
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// Reads back a drawing produced by [`render_ascii`].
pub fn decode_ascii(text: &str) -> Result<Diagram> {
    let malformed = |why: &str| Error::MalformedDiagram(format!("ascii drawing: {why}"));
    let lines: Vec<Vec<char>> = text.lines().filter(|l| !l.trim().is_empty()).map(|l| l.chars().collect()).collect();
    let (nodes, arc_rows) = lines.split_last().ok_or_else(|| malformed("empty"))?;
    if nodes.len() % 2 == 0 {
        return Err(malformed("node row has even width"));
    }
    let n = nodes.len().div_ceil(2);
    let mut used = BTreeSet::new();
    for g in 1..=n {
        match nodes[2 * (g - 1)] {
            '●' => {
                used.insert(g);
            }
            '○' => {}
            c => return Err(malformed(&format!("unexpected node symbol {c:?}"))),
        }
    }
    let mut inline = None;
    for g in 1..n {
        match nodes[2 * g - 1] {
            '–' if inline.is_none() => inline = Some((g, g + 1)),
            ' ' => {}
            c => return Err(malformed(&format!("unexpected connector {c:?}"))),
        }
    }
    let mut arcs = BTreeSet::new();
    for row in arc_rows {
        let find = |c: char| row.iter().position(|&x| x == c).filter(|p| p % 2 == 0).map(|p| p / 2 + 1);
        let (x, y) = find('╭').zip(find('╮')).ok_or_else(|| malformed("arc row without both ends"))?;
        arcs.insert((x, y));
    }
    let endpoints: BTreeSet<usize> = arcs.iter().chain(inline.iter()).flat_map(|&(x, y)| [x, y]).collect();
    let dots: BTreeSet<usize> = used.difference(&endpoints).copied().collect();

    if used.is_empty() {
        return Diagram::root(n);
    }
    let mut steps = Vec::new();
    let (mut u, mut v) = if let Some((x, y)) = inline {
        steps.push(Step::InitialArc(y));
        (x, y)
    } else {
        let first = match arcs.iter().min_by_key(|(x, y)| y - x) {
            Some(&(x, y)) if y == x + 2 => x + 1,
            Some(_) => return Err(malformed("innermost arc does not cover a single dot")),
            None if dots.len() == 1 => *dots.iter().next().unwrap(),
            None => return Err(malformed("expected exactly one dot")),
        };
        steps.push(Step::InitialDot(first));
        (first, first)
    };
    let last = *used.iter().next_back().unwrap();
    let first_used = *used.iter().next().unwrap();
    while (u, v) != (first_used, last) {
        if u > 1 && arcs.contains(&(u - 1, v + 1)) {
            steps.push(Step::ArcAbove);
            (u, v) = (u - 1, v + 1);
        } else if u > 1 && dots.contains(&(u - 1)) {
            steps.push(Step::DotLeft);
            u -= 1;
        } else if dots.contains(&(v + 1)) {
            steps.push(Step::DotRight);
            v += 1;
        } else {
            return Err(malformed("used generators do not form a valid construction"));
        }
    }
    let d = Diagram::from_steps(n, &steps)?;
    if render_ascii(&d).trim_end() != text.trim_end() {
        return Err(malformed("drawing is not in canonical form"));
    }
    Ok(d)
}

/// Graphviz description of the subtree rooted at `d`.
pub fn render_dot(d: &Diagram) -> String {
    let mut out = String::new();
    out.push_str("digraph D {\n");
    out.push_str("  node [shape=box, fontname=\"monospace\"];\n");
    let mut next_id = 0usize;
    let mut stack: Vec<(usize, usize)> = Vec::new(); // (depth, vertex id)
    walk(d.clone(), &mut |v: &Diagram| {
        let id = next_id;
        next_id += 1;
        let depth = v.level();
        let style = if v.is_leaf() { ", style=bold" } else { "" };
        let _ = writeln!(out, "  v{id} [label=\"{}\"{style}];", v.id());
        while stack.last().is_some_and(|&(dep, _)| dep >= depth) {
            stack.pop();
        }
        if let Some(&(_, parent)) = stack.last() {
            let _ = writeln!(out, "  v{parent} -> v{id};");
        }
        stack.push((depth, id));
    });
    out.push_str("}\n");
    out
}

/// Indented listing of the subtree rooted at `d`, one vertex per line.
pub fn render_tree_ascii(d: &Diagram) -> String {
    let base = d.level();
    let mut out = String::new();
    walk(d.clone(), &mut |v: &Diagram| {
        let indent = "  ".repeat(v.level() - base);
        let marker = if v.is_leaf() { " *" } else { "" };
        let _ = writeln!(out, "{indent}{}{marker}", v.id());
        for line in render_ascii(v).lines() {
            let _ = writeln!(out, "{indent}    {line}");
        }
    });
    out
}
