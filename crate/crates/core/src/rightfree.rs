//! Two-dimensional right-free configurations: socle/row/height bookkeeping,
//! the configuration partial order, and the exhaustive search showing that
//! no right-free configuration has small intersection.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumerate::shapes_up_to;
use crate::error::{Error, Result};
use crate::floorplan::FloorPlan;
use crate::point::{cell_meet, translate, translate_down, Point};
use crate::shape::{components_of, SkewShape, StandardShape};

/// A right-free configuration (ν°, b, c): connected abstract skew shapes in
/// ℕ² whose b-placements are pairwise incomparable and whose c-placements
/// are pairwise disjoint.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RightFreeConfig {
    pub nu0: Vec<SkewShape>,
    pub b: Vec<Point>,
    pub c: Vec<Point>,
}

impl RightFreeConfig {
    pub fn new(nu0: Vec<SkewShape>, b: Vec<Point>, c: Vec<Point>) -> Result<Self> {
        let cfg = RightFreeConfig { nu0, b, c };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn len(&self) -> usize {
        self.nu0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nu0.is_empty()
    }

    pub fn nu_len(&self) -> usize {
        self.nu0.iter().map(|s| s.len()).sum()
    }

    pub fn validate(&self) -> Result<()> {
        if self.nu0.len() != self.b.len() || self.nu0.len() != self.c.len() {
            return Err(Error::InvalidPlan(format!(
                "lengths differ: {} shapes, {} b-anchors, {} c-anchors",
                self.nu0.len(),
                self.b.len(),
                self.c.len()
            )));
        }
        for (j, s) in self.nu0.iter().enumerate() {
            if s.dim() != 2 {
                return Err(Error::DimensionMismatch {
                    expected: 2,
                    got: s.dim(),
                });
            }
            if s.is_empty() || !s.is_abstract() {
                return Err(Error::InvalidPlan(format!(
                    "nu0[{j}] is not an abstract skew shape"
                )));
            }
            if !s.is_connected() {
                return Err(Error::InvalidPlan(format!("nu0[{j}] is not connected")));
            }
        }
        let placed_b: Vec<BTreeSet<Point>> =
            (0..self.len()).map(|j| self.placed_b(j)).collect();
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                for u in &placed_b[i] {
                    for v in &placed_b[j] {
                        if u.comparable(v) {
                            return Err(Error::InvalidPlan(format!(
                                "b-placements {i} and {j} are comparable: {u} and {v}"
                            )));
                        }
                    }
                }
            }
        }
        let mut seen: BTreeSet<Point> = BTreeSet::new();
        for j in 0..self.len() {
            for p in self.placed_c(j) {
                if !seen.insert(p.clone()) {
                    return Err(Error::InvalidPlan(format!(
                        "c-placements overlap at {p}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn placed_b(&self, j: usize) -> BTreeSet<Point> {
        translate(self.nu0[j].cells(), &self.b[j])
    }

    pub fn placed_c(&self, j: usize) -> BTreeSet<Point> {
        translate(self.nu0[j].cells(), &self.c[j])
    }

    /// X = ⨆(ν°_j + b_j), the placed union on the left side.
    pub fn x_union(&self) -> BTreeSet<Point> {
        (0..self.len()).flat_map(|j| self.placed_b(j)).collect()
    }

    /// Y = ⨆(ν°_j + c_j).
    pub fn y_union(&self) -> BTreeSet<Point> {
        (0..self.len()).flat_map(|j| self.placed_c(j)).collect()
    }

    /// λ° = closure of X under ≤.
    pub fn lambda0(&self) -> StandardShape {
        StandardShape::closure_of(2, &self.x_union().into_iter().collect::<Vec<_>>())
            .expect("dims checked")
    }

    /// μ° = closure of Y under ≤.
    pub fn mu0(&self) -> StandardShape {
        StandardShape::closure_of(2, &self.y_union().into_iter().collect::<Vec<_>>())
            .expect("dims checked")
    }

    /// |λ° ∩ μ°| < |ν°|.
    pub fn has_small_intersection(&self) -> bool {
        self.lambda0().intersect(&self.mu0()).len() < self.nu_len()
    }
}

/// Socle elements of a cell set: cells with no successor along any axis.
pub fn socle(cells: &BTreeSet<Point>, n: usize) -> BTreeSet<Point> {
    cells
        .iter()
        .filter(|v| {
            (0..n).all(|axis| {
                let up = v.step(axis, true).expect("upward step");
                !cells.contains(&up)
            })
        })
        .cloned()
        .collect()
}

/// Cells of `sigma` in row `i` (second coordinate equal to `i`).
pub fn row(cells: &BTreeSet<Point>, i: u32) -> BTreeSet<Point> {
    cells
        .iter()
        .filter(|p| p.coords()[1] == i)
        .cloned()
        .collect()
}

/// Height of a cell set: the largest `j` with (0, j) a cell. Errors when
/// column zero is empty (defined for standard shapes).
pub fn height(cells: &BTreeSet<Point>) -> Result<u32> {
    cells
        .iter()
        .filter(|p| p.coords()[0] == 0)
        .map(|p| p.coords()[1])
        .max()
        .ok_or(Error::EmptyShape)
}

/// The configuration order: containment of both closures, no more cells,
/// and a deficit |λ°∩μ°| − |ν°| that does not increase.
pub fn config_leq(x: &RightFreeConfig, y: &RightFreeConfig) -> bool {
    let (lx, mx) = (x.lambda0(), x.mu0());
    let (ly, my) = (y.lambda0(), y.mu0());
    if !lx.cells().is_subset(ly.cells()) || !mx.cells().is_subset(my.cells()) {
        return false;
    }
    if x.nu_len() > y.nu_len() {
        return false;
    }
    let dx = lx.intersect(&mx).len() as i64 - x.nu_len() as i64;
    let dy = ly.intersect(&my).len() as i64 - y.nu_len() as i64;
    dx <= dy
}

/// Evaluation of the minimal-configuration conclusions on an arbitrary
/// configuration; diagnostic only, since no small-intersection configuration
/// exists to be minimal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub socle_lambda_avoids_mu: bool,
    pub socle_mu_avoids_lambda: bool,
    pub rows_of_x_full: bool,
    pub rows_of_y_full: bool,
    pub h_lambda: u32,
    pub h_mu: u32,
    /// Σ over pieces of the number of distinct rows the piece spans.
    pub row_span_sum: usize,
    /// Σ over pieces of their heights H(ν°_j).
    pub piece_height_sum: u32,
    /// H(λ°) against the row-span sum (how the worked example adds up).
    pub height_sum_matches: bool,
    /// H(λ°) against Σ H(ν°_j).
    pub piece_height_sum_matches: bool,
    pub h_mu_le_h_lambda: bool,
    pub top_row_contained: bool,
}

pub fn check_minimal_config_lemmas(cfg: &RightFreeConfig) -> Result<LemmaReport> {
    cfg.validate()?;
    let lam = cfg.lambda0();
    let mu = cfg.mu0();
    if lam.is_empty() || mu.is_empty() {
        return Err(Error::EmptyShape);
    }
    let x = cfg.x_union();
    let y = cfg.y_union();
    let h_lambda = height(lam.cells())?;
    let h_mu = height(mu.cells())?;
    let soc_l = socle(lam.cells(), 2);
    let soc_m = socle(mu.cells(), 2);
    let row_span_sum: usize = cfg
        .nu0
        .iter()
        .map(|s| {
            s.cells()
                .iter()
                .map(|p| p.coords()[1])
                .collect::<BTreeSet<_>>()
                .len()
        })
        .sum();
    let piece_height_sum: u32 = cfg
        .nu0
        .iter()
        .map(|s| height(s.cells()).expect("abstract pieces touch column zero"))
        .sum();
    Ok(LemmaReport {
        socle_lambda_avoids_mu: soc_l.iter().all(|p| !mu.contains(p)),
        socle_mu_avoids_lambda: soc_m.iter().all(|p| !lam.contains(p)),
        rows_of_x_full: (0..=h_lambda).all(|r| !row(&x, r).is_empty()),
        rows_of_y_full: (0..=h_mu).all(|s| !row(&y, s).is_empty()),
        h_lambda,
        h_mu,
        row_span_sum,
        piece_height_sum,
        height_sum_matches: h_lambda as usize == row_span_sum,
        piece_height_sum_matches: h_lambda == piece_height_sum,
        h_mu_le_h_lambda: h_mu <= h_lambda,
        top_row_contained: row(lam.cells(), h_mu).is_subset(&row(mu.cells(), h_mu)),
    })
}

/// The bottom layer of a right-free floor plan as a right-free
/// configuration. Bottom slices that fall apart in the plane are split into
/// their connected components, each re-anchored by its meet.
pub fn bottom_config(plan: &FloorPlan) -> Result<RightFreeConfig> {
    plan.validate()?;
    let hb = plan.h_all_on(crate::floorplan::Side::B)?;
    if let Some((j, &v)) = hb.iter().enumerate().find(|(_, &v)| v != 0) {
        return Err(Error::NotRightFree { index: j, value: v });
    }
    let mut nu0 = Vec::new();
    let mut b = Vec::new();
    let mut c = Vec::new();
    for (j, shape) in plan.nu.iter().enumerate() {
        let slice: BTreeSet<Point> = shape
            .cells()
            .iter()
            .filter(|p| p.coords()[2] == 0)
            .map(|p| p.project())
            .collect();
        for comp in components_of(&slice, 2) {
            let m = cell_meet(&comp).expect("nonempty");
            nu0.push(SkewShape::from_cells(2, translate_down(&comp, &m))
                .expect("slice component of a skew shape is skew"));
            b.push(plan.b[j].add(&m));
            c.push(plan.c[j].add(&m));
        }
    }
    RightFreeConfig::new(nu0, b, c)
}

/// Search bounds and report for the small-intersection search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub max_components: usize,
    pub max_cells: usize,
    pub box_w: u32,
    pub box_h: u32,
    /// Complete configurations materialized by the search.
    pub examined: u64,
    /// Subtrees cut because the intersection could no longer be small.
    pub pruned: u64,
    pub witnesses: Vec<RightFreeConfig>,
}

struct SearchCtx {
    shapes: Vec<SkewShape>,
    max_components: usize,
    max_cells: usize,
    w: u32,
    h: u32,
    prune: bool,
    collect_all: bool,
}

#[derive(Default)]
struct SearchAcc {
    examined: u64,
    pruned: u64,
    witnesses: Vec<RightFreeConfig>,
    all: Vec<RightFreeConfig>,
}

/// Exhaustive search for right-free configurations of small intersection
/// within the given bounds. The expected result is an empty witness list.
/// `shards`/`shard` split the work deterministically by the first
/// component's placement.
pub fn search_small_intersection(
    max_components: usize,
    max_cells: usize,
    box_wh: (u32, u32),
    shards: usize,
    shard: usize,
) -> SearchOutcome {
    let (acc, _) = run_search(max_components, max_cells, box_wh, shards, shard, true, false);
    SearchOutcome {
        max_components,
        max_cells,
        box_w: box_wh.0,
        box_h: box_wh.1,
        examined: acc.examined,
        pruned: acc.pruned,
        witnesses: acc.witnesses,
    }
}

/// All valid right-free configurations within bounds (no pruning); intended
/// for property tests at small bounds.
pub fn enumerate_rightfree_configs(
    max_components: usize,
    max_cells: usize,
    box_wh: (u32, u32),
) -> Vec<RightFreeConfig> {
    let (acc, _) = run_search(max_components, max_cells, box_wh, 1, 0, false, true);
    acc.all
}

fn run_search(
    max_components: usize,
    max_cells: usize,
    box_wh: (u32, u32),
    shards: usize,
    shard: usize,
    prune: bool,
    collect_all: bool,
) -> (SearchAcc, usize) {
    assert!(max_components >= 1 && max_cells >= 1 && shards >= 1 && shard < shards);
    let ctx = SearchCtx {
        shapes: shapes_up_to(2, max_cells),
        max_components,
        max_cells,
        w: box_wh.0,
        h: box_wh.1,
        prune,
        collect_all,
    };

    // First-component choices, used for sharding and parallelism.
    let mut roots = Vec::new();
    for (si, shape) in ctx.shapes.iter().enumerate() {
        for b in placements(shape, ctx.w, ctx.h) {
            roots.push((si, b));
        }
    }
    let root_count = roots.len();
    let results: Vec<SearchAcc> = roots
        .into_par_iter()
        .enumerate()
        .filter(|(i, _)| i % shards == shard)
        .map(|(_, (si, b))| {
            let mut acc = SearchAcc::default();
            let mut chosen = vec![(si, b)];
            extend_b(&ctx, &mut chosen, &mut acc);
            acc
        })
        .collect();
    let mut merged = SearchAcc::default();
    for mut r in results {
        merged.examined += r.examined;
        merged.pruned += r.pruned;
        merged.witnesses.append(&mut r.witnesses);
        merged.all.append(&mut r.all);
    }
    (merged, root_count)
}

fn placements(shape: &SkewShape, w: u32, h: u32) -> Vec<Point> {
    let mut max_x = 0;
    let mut max_y = 0;
    for p in shape.cells() {
        max_x = max_x.max(p.coords()[0]);
        max_y = max_y.max(p.coords()[1]);
    }
    let mut out = Vec::new();
    for y in 0..h.saturating_sub(max_y) {
        for x in 0..w.saturating_sub(max_x) {
            out.push(Point::new([x, y]));
        }
    }
    out
}

/// Extends the b-side structure; every prefix is itself processed.
fn extend_b(ctx: &SearchCtx, chosen: &mut Vec<(usize, Point)>, acc: &mut SearchAcc) {
    if incomparable_placement(ctx, chosen) {
        assign_c(ctx, chosen, acc);
        if chosen.len() < ctx.max_components {
            let used: usize = chosen.iter().map(|&(si, _)| ctx.shapes[si].len()).sum();
            let last = chosen.last().cloned().expect("nonempty");
            for si in last.0..ctx.shapes.len() {
                if used + ctx.shapes[si].len() > ctx.max_cells {
                    continue;
                }
                for b in placements(&ctx.shapes[si], ctx.w, ctx.h) {
                    if si == last.0 && b <= last.1 {
                        continue;
                    }
                    chosen.push((si, b));
                    extend_b(ctx, chosen, acc);
                    chosen.pop();
                }
            }
        }
    }
}

/// Checks that the most recently added piece is incomparable with all
/// earlier placed cells.
fn incomparable_placement(ctx: &SearchCtx, chosen: &[(usize, Point)]) -> bool {
    let (si, b) = chosen.last().expect("nonempty");
    let new_cells: Vec<Point> = ctx.shapes[*si].cells().iter().map(|p| p.add(b)).collect();
    for &(osi, ref ob) in &chosen[..chosen.len() - 1] {
        for p in ctx.shapes[osi].cells() {
            let u = p.add(ob);
            if new_cells.iter().any(|v| u.comparable(v)) {
                return false;
            }
        }
    }
    true
}

struct CState {
    lambda: Vec<bool>,
    mu_closed: Vec<bool>,
    c_cells: Vec<bool>,
    inter: usize,
    total_cells: usize,
    w: usize,
}

fn assign_c(ctx: &SearchCtx, chosen: &[(usize, Point)], acc: &mut SearchAcc) {
    let w = ctx.w as usize;
    let h = ctx.h as usize;
    // λ° bitmap from the fixed b-structure.
    let mut lambda = vec![false; w * h];
    for &(si, ref b) in chosen {
        for p in ctx.shapes[si].cells() {
            let q = p.add(b);
            close_down(&mut lambda, w, q.coords()[0] as usize, q.coords()[1] as usize);
        }
    }
    let mut st = CState {
        lambda,
        mu_closed: vec![false; w * h],
        c_cells: vec![false; w * h],
        inter: 0,
        total_cells: chosen.iter().map(|&(si, _)| ctx.shapes[si].len()).sum(),
        w,
    };
    let mut c_anchors = Vec::with_capacity(chosen.len());
    assign_c_rec(ctx, chosen, 0, &mut st, &mut c_anchors, acc);
}

fn close_down(bitmap: &mut [bool], w: usize, x: usize, y: usize) {
    let mut stack = vec![(x, y)];
    while let Some((x, y)) = stack.pop() {
        if bitmap[y * w + x] {
            continue;
        }
        bitmap[y * w + x] = true;
        if x > 0 {
            stack.push((x - 1, y));
        }
        if y > 0 {
            stack.push((x, y - 1));
        }
    }
}

fn assign_c_rec(
    ctx: &SearchCtx,
    chosen: &[(usize, Point)],
    j: usize,
    st: &mut CState,
    c_anchors: &mut Vec<Point>,
    acc: &mut SearchAcc,
) {
    if j < chosen.len() && ctx.prune && st.inter >= st.total_cells {
        acc.pruned += 1;
        return;
    }
    if j == chosen.len() {
        acc.examined += 1;
        let small = st.inter < st.total_cells;
        if small || ctx.collect_all {
            let cfg = RightFreeConfig {
                nu0: chosen
                    .iter()
                    .map(|&(si, _)| ctx.shapes[si].clone())
                    .collect(),
                b: chosen.iter().map(|&(_, ref b)| b.clone()).collect(),
                c: c_anchors.clone(),
            };
            debug_assert!(cfg.validate().is_ok());
            if small {
                acc.witnesses.push(cfg.clone());
            }
            if ctx.collect_all {
                acc.all.push(cfg);
            }
        }
        return;
    }
    let (si, _) = chosen[j];
    let shape = &ctx.shapes[si];
    for c in placements(shape, ctx.w as u32, ctx.h as u32) {
        // Disjointness of the placed c-pieces.
        let cells: Vec<(usize, usize)> = shape
            .cells()
            .iter()
            .map(|p| {
                let q = p.add(&c);
                (q.coords()[0] as usize, q.coords()[1] as usize)
            })
            .collect();
        if cells.iter().any(|&(x, y)| st.c_cells[y * st.w + x]) {
            continue;
        }
        for &(x, y) in &cells {
            st.c_cells[y * st.w + x] = true;
        }
        // Grow the μ° closure, tracking the intersection with λ°.
        let mut added = Vec::new();
        for &(x, y) in &cells {
            grow_closure(st, x, y, &mut added);
        }
        c_anchors.push(c);
        assign_c_rec(ctx, chosen, j + 1, st, c_anchors, acc);
        c_anchors.pop();
        for &(x, y) in &added {
            st.mu_closed[y * st.w + x] = false;
            if st.lambda[y * st.w + x] {
                st.inter -= 1;
            }
        }
        for &(x, y) in &cells {
            st.c_cells[y * st.w + x] = false;
        }
    }
}

fn grow_closure(st: &mut CState, x: usize, y: usize, added: &mut Vec<(usize, usize)>) {
    let mut stack = vec![(x, y)];
    while let Some((x, y)) = stack.pop() {
        if st.mu_closed[y * st.w + x] {
            continue;
        }
        st.mu_closed[y * st.w + x] = true;
        if st.lambda[y * st.w + x] {
            st.inter += 1;
        }
        added.push((x, y));
        if x > 0 {
            stack.push((x - 1, y));
        }
        if y > 0 {
            stack.push((x, y - 1));
        }
    }
}
