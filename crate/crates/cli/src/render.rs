//! Aligned text output.

use reductor_core::family::PerRayTable;
use reductor_core::{Fan, GroupData, ReductorSet};

/// Right-aligned columns, first column left-aligned.
pub fn table(header: &[String], rows: &[Vec<String>]) -> String {
    let cols = header.len();
    let mut width = vec![0; cols];
    for row in std::iter::once(header).chain(rows.iter().map(Vec::as_slice)) {
        for (w, cell) in width.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    for row in std::iter::once(header).chain(rows.iter().map(Vec::as_slice)) {
        let mut line = String::new();
        for (k, (cell, w)) in row.iter().zip(&width).enumerate() {
            let pad = w - cell.chars().count();
            if k == 0 {
                line.push_str(cell);
                line.push_str(&" ".repeat(pad));
            } else {
                line.push_str("  ");
                line.push_str(&" ".repeat(pad));
                line.push_str(cell);
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

pub fn group_name(g: &GroupData) -> String {
    let weights = g.weight_matrix();
    let factor = |d: u64, w: &[u64]| {
        let w: Vec<String> = w.iter().map(u64::to_string).collect();
        format!("1/{d}({})", w.join(","))
    };
    let parts: Vec<String> = g.orders().iter().zip(weights).map(|(&d, w)| factor(d, w)).collect();
    parts.join(" x ")
}

/// Rows are characters, columns are rays.
pub fn set_table(fan: &Fan, set: &ReductorSet) -> String {
    let mut header = vec!["".to_string()];
    header.extend(fan.rays().iter().map(|r| r.name()));
    let rows: Vec<Vec<String>> = set
        .divisors()
        .iter()
        .map(|d| {
            let mut row = vec![d.character().to_string()];
            row.extend((0..fan.rays().len()).map(|r| d.coeff(r).to_string()));
            row
        })
        .collect();
    table(&header, &rows)
}

pub fn per_ray_table(fan: &Fan, t: &PerRayTable) -> String {
    let mut header = vec![format!("{}:", fan.ray(t.ray).name())];
    header.extend(fan.group().characters().iter().map(ToString::to_string));
    let rows: Vec<Vec<String>> = t
        .rows
        .iter()
        .enumerate()
        .map(|(k, row)| {
            let mut cells = vec![format!("{}", k + 1)];
            cells.extend(row.iter().map(ToString::to_string));
            cells
        })
        .collect();
    table(&header, &rows)
}
