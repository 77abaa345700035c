//! Plain-text renderings for `--format table`.

use qf_core::{FiniteGroup, FiniteQuandle};

/// A Cayley table with row and column headers; entry `(x, y)` is `f(x, y)`.
pub fn cayley(op: &str, names: &[String], f: impl Fn(usize, usize) -> usize) -> String {
    let n = names.len();
    let width = names.iter().map(|s| s.chars().count()).max().unwrap_or(1).max(op.chars().count());
    let cell = |s: &str| format!("{s:>width$}");
    let mut out = String::new();
    out.push_str(&cell(op));
    out.push_str(" |");
    for name in names {
        out.push(' ');
        out.push_str(&cell(name));
    }
    out.push('\n');
    out.push_str(&"-".repeat(width + 1));
    out.push('+');
    out.push_str(&"-".repeat((width + 1) * n));
    out.push('\n');
    for x in 0..n {
        out.push_str(&cell(&names[x]));
        out.push_str(" |");
        for y in 0..n {
            out.push(' ');
            out.push_str(&cell(&names[f(x, y)]));
        }
        out.push('\n');
    }
    out
}

pub fn quandle_table(q: &FiniteQuandle) -> String {
    let names: Vec<String> = (0..q.order()).map(|x| q.name(x)).collect();
    cayley("*", &names, |x, y| q.op(x, y))
}

pub fn group_table(g: &FiniteGroup) -> String {
    let names: Vec<String> = (0..g.order()).map(|x| g.label(x)).collect();
    cayley("·", &names, |x, y| g.mul(x, y))
}

/// Left-aligned columns separated by two spaces.
pub fn columns(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let parts: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        parts.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    for row in rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    out
}
