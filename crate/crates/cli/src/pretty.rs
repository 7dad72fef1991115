//! ASCII rendering of shapes and plans on stderr: 3-D shapes are drawn as
//! stacked 2-D layers, the a₃ = 0 layer first.

use std::collections::BTreeSet;

use gerst_core::{FloorPlan, Point};

pub fn render_cells(n: usize, cells: &BTreeSet<Point>) {
    if cells.is_empty() {
        eprintln!("(empty)");
        return;
    }
    match n {
        2 => render_layer(cells, None),
        3 => {
            let depth = cells.iter().map(|p| p.coords()[2]).max().unwrap_or(0);
            for z in 0..=depth {
                eprintln!("layer z={z}");
                render_layer(cells, Some(z));
            }
        }
        _ => {
            for p in cells {
                eprintln!("{p}");
            }
        }
    }
    eprintln!();
}

fn render_layer(cells: &BTreeSet<Point>, layer: Option<u32>) {
    let picked: Vec<&Point> = cells
        .iter()
        .filter(|p| layer.map_or(true, |z| p.coords()[2] == z))
        .collect();
    let w = picked.iter().map(|p| p.coords()[0]).max().map_or(0, |m| m + 1);
    let h = picked.iter().map(|p| p.coords()[1]).max().map_or(0, |m| m + 1);
    let full_w = cells.iter().map(|p| p.coords()[0] + 1).max().unwrap_or(w);
    for y in (0..h.max(1)).rev() {
        let mut line = String::new();
        for x in 0..full_w.max(w) {
            let hit = picked
                .iter()
                .any(|p| p.coords()[0] == x && p.coords()[1] == y);
            line.push(if hit { '#' } else { '.' });
            line.push(' ');
        }
        eprintln!("{line}");
    }
}

pub fn render_plan(plan: &FloorPlan) {
    eprintln!("plan with {} component(s)", plan.len());
    for (j, shape) in plan.nu.iter().enumerate() {
        eprintln!("component {j}: b={} c={}", plan.b[j], plan.c[j]);
        render_cells(3, shape.cells());
    }
}
