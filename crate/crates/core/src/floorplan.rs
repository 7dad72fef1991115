//! Floor plans: 2-D footprint data for sequences of 3-D pieces, the
//! placement preorder ≤_b, b-heights, and the minimum (canonical) lift back
//! to three dimensions.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gluing::GluingData;
use crate::heights::{side_valid, HeightGrid, PieceColumns};
use crate::point::Point;
use crate::shape::{HeightPair, SkewShape, StandardShape};

/// Which anchor family an operation refers to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    B,
    C,
}

/// A floor plan (ν, b, c): connected abstract skew shapes in ℕ³ with 2-D
/// anchors whose projected placements are pairwise disjoint on each side.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FloorPlan {
    pub nu: Vec<SkewShape>,
    pub b: Vec<Point>,
    pub c: Vec<Point>,
}

impl FloorPlan {
    pub fn new(nu: Vec<SkewShape>, b: Vec<Point>, c: Vec<Point>) -> Result<Self> {
        let plan = FloorPlan { nu, b, c };
        plan.validate()?;
        Ok(plan)
    }

    pub fn len(&self) -> usize {
        self.nu.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nu.is_empty()
    }

    /// Total cell count Σ|ν_j|.
    pub fn nu_len(&self) -> usize {
        self.nu.iter().map(|s| s.len()).sum()
    }

    pub fn validate(&self) -> Result<()> {
        if self.nu.len() != self.b.len() || self.nu.len() != self.c.len() {
            return Err(Error::InvalidPlan(format!(
                "lengths differ: {} shapes, {} b-anchors, {} c-anchors",
                self.nu.len(),
                self.b.len(),
                self.c.len()
            )));
        }
        for (j, s) in self.nu.iter().enumerate() {
            if s.dim() != 3 {
                return Err(Error::DimensionMismatch {
                    expected: 3,
                    got: s.dim(),
                });
            }
            if s.is_empty() || !s.is_abstract() {
                return Err(Error::InvalidPlan(format!(
                    "nu[{j}] is not an abstract skew shape"
                )));
            }
            if !s.is_connected() {
                return Err(Error::InvalidPlan(format!("nu[{j}] is not connected")));
            }
        }
        for (side, anchors) in [("b", &self.b), ("c", &self.c)] {
            let mut seen: BTreeSet<Point> = BTreeSet::new();
            for (j, anchor) in anchors.iter().enumerate() {
                if anchor.dim() != 2 {
                    return Err(Error::DimensionMismatch {
                        expected: 2,
                        got: anchor.dim(),
                    });
                }
                for p in self.footprint(j, anchor) {
                    if !seen.insert(p.clone()) {
                        return Err(Error::InvalidPlan(format!(
                            "projected placements overlap on the {side} side at {p}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn anchors(&self, side: Side) -> &[Point] {
        match side {
            Side::B => &self.b,
            Side::C => &self.c,
        }
    }

    /// π(ν_j) + anchor, as 2-D cells.
    fn footprint(&self, j: usize, anchor: &Point) -> BTreeSet<Point> {
        self.nu[j]
            .cells()
            .iter()
            .map(|p| p.project().add(anchor))
            .collect()
    }

    pub fn footprint_on(&self, side: Side, j: usize) -> BTreeSet<Point> {
        self.footprint(j, &self.anchors(side)[j])
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.nu.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.nu.len(),
            });
        }
        Ok(())
    }

    /// ν_i ≤ ν_j on the given side: some placed footprint cell of i lies
    /// below some placed footprint cell of j.
    pub fn leq_on(&self, side: Side, i: usize, j: usize) -> Result<bool> {
        self.check_index(i)?;
        self.check_index(j)?;
        let fi = self.footprint_on(side, i);
        let fj = self.footprint_on(side, j);
        Ok(fi.iter().any(|v| fj.iter().any(|w| v.leq(w))))
    }

    pub fn leq_b(&self, i: usize, j: usize) -> Result<bool> {
        self.leq_on(Side::B, i, j)
    }

    pub fn leq_c(&self, i: usize, j: usize) -> Result<bool> {
        self.leq_on(Side::C, i, j)
    }

    /// The pairwise height h(i, j) on a side: the largest forced clearance
    /// between the bottom of piece i and the top of piece j over comparable
    /// footprint cells. May be negative.
    pub fn h_pair_on(&self, side: Side, i: usize, j: usize) -> Result<i64> {
        self.check_index(i)?;
        self.check_index(j)?;
        if i == j || !self.leq_on(side, i, j)? {
            return Err(Error::NotRelated { i, j });
        }
        let hp_i = self.nu[i].height_functions()?;
        let hp_j = self.nu[j].height_functions()?;
        let anchors = self.anchors(side);
        Ok(h_pair_from(
            &hp_i,
            &anchors[i],
            &hp_j,
            &anchors[j],
        )
        .expect("related pieces have a witness"))
    }

    pub fn hb_pair(&self, i: usize, j: usize) -> Result<i64> {
        self.h_pair_on(Side::B, i, j)
    }

    pub fn hc_pair(&self, i: usize, j: usize) -> Result<i64> {
        self.h_pair_on(Side::C, i, j)
    }

    /// All component heights h(j) on a side: the maximum over chains
    /// starting at j of the summed pairwise heights, with the empty chain
    /// contributing zero. Longest-path dynamic programming over the
    /// (acyclic) placement relation; a cycle is reported as an error.
    pub fn h_all_on(&self, side: Side) -> Result<Vec<i64>> {
        let l = self.nu.len();
        let anchors = self.anchors(side);
        let hps: Vec<HeightPair> = self
            .nu
            .iter()
            .map(|s| s.height_functions())
            .collect::<Result<_>>()?;
        // Edge weights between related pairs.
        let mut edges: Vec<Vec<(usize, i64)>> = vec![Vec::new(); l];
        for i in 0..l {
            for j in 0..l {
                if i == j {
                    continue;
                }
                if let Some(w) = h_pair_from(&hps[i], &anchors[i], &hps[j], &anchors[j]) {
                    edges[i].push((j, w));
                }
            }
        }
        let mut memo: Vec<Option<i64>> = vec![None; l];
        let mut in_progress = vec![false; l];
        fn dfs(
            v: usize,
            edges: &[Vec<(usize, i64)>],
            memo: &mut [Option<i64>],
            in_progress: &mut [bool],
        ) -> Result<i64> {
            if let Some(val) = memo[v] {
                return Ok(val);
            }
            if in_progress[v] {
                return Err(Error::CyclicPlacement { index: v });
            }
            in_progress[v] = true;
            let mut best = 0i64;
            for &(to, w) in &edges[v] {
                best = best.max(w + dfs(to, edges, memo, in_progress)?);
            }
            in_progress[v] = false;
            memo[v] = Some(best);
            Ok(best)
        }
        (0..l)
            .map(|v| dfs(v, &edges, &mut memo, &mut in_progress))
            .collect()
    }

    pub fn hb(&self, j: usize) -> Result<i64> {
        self.check_index(j)?;
        Ok(self.h_all_on(Side::B)?[j])
    }

    pub fn hc(&self, j: usize) -> Result<i64> {
        self.check_index(j)?;
        Ok(self.h_all_on(Side::C)?[j])
    }

    /// The minimum realization: vertical offsets h_b(j) and h_c(j).
    pub fn canonical_realization(&self) -> Result<Realization> {
        let bz = self
            .h_all_on(Side::B)?
            .into_iter()
            .map(|v| v as u32)
            .collect();
        let cz = self
            .h_all_on(Side::C)?
            .into_iter()
            .map(|v| v as u32)
            .collect();
        Ok(Realization {
            plan: self.clone(),
            bz,
            cz,
        })
    }

    /// Upper height function of the canonical realization's closure on a
    /// side, computed directly from component heights:
    /// p̄(a) = max over j and footprint cells v ≥ a of (h(j) + p̄_j(v − b_j)).
    pub fn upper_height_on(&self, side: Side, a: &Point) -> Result<u32> {
        let hs = self.h_all_on(side)?;
        let anchors = self.anchors(side);
        let mut best = 0u32;
        for (j, shape) in self.nu.iter().enumerate() {
            let hp = shape.height_functions()?;
            for (&(x, y), &up) in &hp.upper {
                if up == 0 {
                    continue;
                }
                let v = Point::new([x, y]).add(&anchors[j]);
                if a.leq(&v) {
                    best = best.max(hs[j] as u32 + up);
                }
            }
        }
        Ok(best)
    }

    pub fn upper_height_lambda(&self, a: &Point) -> Result<u32> {
        self.upper_height_on(Side::B, a)
    }

    pub fn upper_height_mu(&self, a: &Point) -> Result<u32> {
        self.upper_height_on(Side::C, a)
    }

    /// A plan is right-free when every b-side component height is zero.
    pub fn is_right_free(&self) -> Result<bool> {
        Ok(self.h_all_on(Side::B)?.iter().all(|&v| v == 0))
    }

    /// Piece column data for one side, for height-grid computations.
    pub fn piece_columns(&self, side: Side) -> Vec<PieceColumns> {
        self.nu
            .iter()
            .zip(self.anchors(side))
            .map(|(s, a)| PieceColumns::new(s, a))
            .collect()
    }
}

/// max over witnesses v ≤ w of upper_j(w − b_j) − lower_i(v − b_i), or
/// `None` when the pieces are unrelated.
fn h_pair_from(
    hp_i: &HeightPair,
    anchor_i: &Point,
    hp_j: &HeightPair,
    anchor_j: &Point,
) -> Option<i64> {
    let mut best: Option<i64> = None;
    for (&(ix, iy), &up_i) in &hp_i.upper {
        if up_i == 0 {
            continue;
        }
        let lo_i = hp_i.lower_at((ix, iy));
        let v = (ix + anchor_i.coords()[0], iy + anchor_i.coords()[1]);
        for (&(jx, jy), &up_j) in &hp_j.upper {
            if up_j == 0 {
                continue;
            }
            let w = (jx + anchor_j.coords()[0], jy + anchor_j.coords()[1]);
            if v.0 <= w.0 && v.1 <= w.1 {
                let val = up_j as i64 - lo_i as i64;
                best = Some(best.map_or(val, |b| b.max(val)));
            }
        }
    }
    best
}

/// A realization of a floor plan: vertical offsets for both sides.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Realization {
    pub plan: FloorPlan,
    pub bz: Vec<u32>,
    pub cz: Vec<u32>,
}

impl Realization {
    /// The 3-D anchors 𝐛_j = (b_j, bz_j).
    pub fn b_anchors(&self) -> Vec<Point> {
        self.plan
            .b
            .iter()
            .zip(&self.bz)
            .map(|(a, &z)| Point::new([a.coords()[0], a.coords()[1], z]))
            .collect()
    }

    pub fn c_anchors(&self) -> Vec<Point> {
        self.plan
            .c
            .iter()
            .zip(&self.cz)
            .map(|(a, &z)| Point::new([a.coords()[0], a.coords()[1], z]))
            .collect()
    }

    /// Assembles the scaffolded gluing data (λ and μ are the closures of the
    /// placed pieces).
    pub fn gluing_data(&self) -> Result<GluingData> {
        if self.bz.len() != self.plan.len() || self.cz.len() != self.plan.len() {
            return Err(Error::InvalidPlan("offset lengths differ".into()));
        }
        let b = self.b_anchors();
        let c = self.c_anchors();
        let mut b_cells: Vec<Point> = Vec::new();
        let mut c_cells: Vec<Point> = Vec::new();
        for (j, shape) in self.plan.nu.iter().enumerate() {
            for cell in shape.cells() {
                b_cells.push(cell.add(&b[j]));
                c_cells.push(cell.add(&c[j]));
            }
        }
        Ok(GluingData {
            lambda: StandardShape::closure_of(3, &b_cells)?,
            mu: StandardShape::closure_of(3, &c_cells)?,
            nu: self.plan.nu.clone(),
            b,
            c,
        })
    }

    /// Does this offset assignment give rise to a module?
    pub fn is_valid(&self) -> Result<bool> {
        self.plan.validate()?;
        if self.bz.len() != self.plan.len() || self.cz.len() != self.plan.len() {
            return Err(Error::InvalidPlan("offset lengths differ".into()));
        }
        Ok(self.gluing_data()?.validate().is_ok())
    }

    pub fn lambda(&self) -> Result<StandardShape> {
        Ok(self.gluing_data()?.lambda)
    }

    pub fn mu(&self) -> Result<StandardShape> {
        Ok(self.gluing_data()?.mu)
    }
}

/// Fast one-sided realization check on a validated plan.
pub fn side_offsets_valid(pieces: &[PieceColumns], z: &[u32]) -> bool {
    let grid = HeightGrid::new(pieces, z);
    side_valid(pieces, z, &grid)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn skew3(cells: &[[u32; 3]]) -> SkewShape {
        SkewShape::from_cells(3, cells.iter().map(|c| Point::from(*c)).collect()).unwrap()
    }

    fn pt2(x: u32, y: u32) -> Point {
        Point::from([x, y])
    }

    /// The three-component plan with h_b = (0, 1, 0).
    pub(crate) fn chain_example() -> FloorPlan {
        let nu1 = skew3(&[[0, 0, 2], [1, 0, 0], [1, 0, 1], [1, 0, 2]]);
        let point = skew3(&[[0, 0, 0]]);
        FloorPlan::new(
            vec![nu1, point.clone(), point],
            vec![pt2(0, 0), pt2(0, 2), pt2(0, 3)],
            vec![pt2(0, 0), pt2(0, 2), pt2(0, 3)],
        )
        .unwrap()
    }

    /// The two-component plan whose minimum offsets are zero.
    pub(crate) fn flat_pair_example() -> FloorPlan {
        let nu1 = skew3(&[[0, 0, 1], [1, 0, 0], [1, 0, 1]]);
        let point = skew3(&[[0, 0, 0]]);
        FloorPlan::new(
            vec![nu1, point],
            vec![pt2(0, 0), pt2(0, 2)],
            vec![pt2(0, 0), pt2(0, 2)],
        )
        .unwrap()
    }

    #[test]
    fn placement_order_on_chain_example() {
        let plan = chain_example();
        assert!(plan.leq_b(0, 1).unwrap());
        assert!(plan.leq_b(1, 2).unwrap());
        assert!(plan.leq_b(0, 2).unwrap());
        assert!(plan.leq_b(1, 1).unwrap());
        assert!(!plan.leq_b(1, 0).unwrap());
    }

    #[test]
    fn incomparable_anchors() {
        let point = skew3(&[[0, 0, 0]]);
        let plan = FloorPlan::new(
            vec![point.clone(), point],
            vec![pt2(0, 4), pt2(4, 0)],
            vec![pt2(0, 4), pt2(4, 0)],
        )
        .unwrap();
        assert!(!plan.leq_b(0, 1).unwrap());
        assert!(!plan.leq_b(1, 0).unwrap());
    }

    #[test]
    fn pair_heights_match_worked_example() {
        let plan = chain_example();
        assert_eq!(plan.hb_pair(1, 2).unwrap(), 1);
        assert_eq!(plan.hb_pair(0, 1).unwrap(), -1);
        assert!(matches!(
            plan.hb_pair(2, 1),
            Err(Error::NotRelated { .. })
        ));

        // Two stacked single cells one diagonal step apart.
        let point = skew3(&[[0, 0, 0]]);
        let stacked = FloorPlan::new(
            vec![point.clone(), point],
            vec![pt2(0, 0), pt2(1, 1)],
            vec![pt2(0, 0), pt2(1, 1)],
        )
        .unwrap();
        assert_eq!(stacked.hb_pair(0, 1).unwrap(), 1);
    }

    #[test]
    fn component_heights_and_canonical_offsets() {
        let plan = chain_example();
        assert_eq!(plan.h_all_on(Side::B).unwrap(), vec![0, 1, 0]);
        let real = plan.canonical_realization().unwrap();
        assert_eq!(real.bz, vec![0, 1, 0]);
        assert_eq!(
            real.b_anchors(),
            vec![
                Point::from([0, 0, 0]),
                Point::from([0, 2, 1]),
                Point::from([0, 3, 0])
            ]
        );
        assert!(real.is_valid().unwrap());

        // A single component only has the trivial chain.
        let single = FloorPlan::new(
            vec![skew3(&[[0, 0, 0]])],
            vec![pt2(0, 0)],
            vec![pt2(0, 0)],
        )
        .unwrap();
        assert_eq!(single.h_all_on(Side::B).unwrap(), vec![0]);

        // Three stacked cells, each pair forcing one unit of clearance.
        let point = skew3(&[[0, 0, 0]]);
        let tower = FloorPlan::new(
            vec![point.clone(), point.clone(), point],
            vec![pt2(0, 0), pt2(1, 1), pt2(2, 2)],
            vec![pt2(0, 0), pt2(1, 1), pt2(2, 2)],
        )
        .unwrap();
        assert_eq!(tower.h_all_on(Side::B).unwrap(), vec![2, 1, 0]);
    }

    #[test]
    fn flat_pair_has_zero_minimum() {
        let plan = flat_pair_example();
        assert_eq!(plan.h_all_on(Side::B).unwrap(), vec![0, 0]);
        let real = plan.canonical_realization().unwrap();
        assert_eq!(real.bz, vec![0, 0]);
        assert!(real.is_valid().unwrap());
        // The offsets (1, 1) also realize the plan, one step above minimum.
        let lifted = Realization {
            plan: plan.clone(),
            bz: vec![1, 1],
            cz: vec![1, 1],
        };
        assert!(lifted.is_valid().unwrap());
        // Dropping the forced offset of the chain example is invalid.
        let chain = chain_example();
        let dropped = Realization {
            plan: chain.clone(),
            bz: vec![0, 0, 0],
            cz: vec![0, 1, 0],
        };
        assert!(!dropped.is_valid().unwrap());
    }

    #[test]
    fn right_free_detection() {
        assert!(!chain_example().is_right_free().unwrap());
        assert!(flat_pair_example().is_right_free().unwrap());
    }

    #[test]
    fn upper_heights_agree_with_assembled_closure() {
        for plan in [chain_example(), flat_pair_example()] {
            let real = plan.canonical_realization().unwrap();
            let lambda = real.lambda().unwrap();
            let mut footprint: BTreeSet<(u32, u32)> = BTreeSet::new();
            for p in lambda.cells() {
                footprint.insert((p.coords()[0], p.coords()[1]));
            }
            footprint.insert((7, 7));
            for (x, y) in footprint {
                let direct = lambda
                    .cells()
                    .iter()
                    .filter(|p| p.coords()[0] == x && p.coords()[1] == y)
                    .count() as u32;
                assert_eq!(
                    plan.upper_height_lambda(&pt2(x, y)).unwrap(),
                    direct,
                    "column ({x},{y})"
                );
            }
        }
    }

    #[test]
    fn overlapping_footprints_rejected() {
        let point = skew3(&[[0, 0, 0]]);
        let res = FloorPlan::new(
            vec![point.clone(), point],
            vec![pt2(0, 0), pt2(0, 0)],
            vec![pt2(0, 0), pt2(1, 1)],
        );
        assert!(matches!(res, Err(Error::InvalidPlan(_))));
    }

    #[test]
    fn side_grid_matches_set_closure() {
        let plan = chain_example();
        let real = plan.canonical_realization().unwrap();
        let pieces = plan.piece_columns(Side::B);
        let grid = HeightGrid::new(&pieces, &real.bz);
        let lambda = real.lambda().unwrap();
        assert_eq!(grid.len(), lambda.len());
        assert!(side_offsets_valid(&pieces, &real.bz));
        assert!(!side_offsets_valid(&pieces, &[0, 0, 0]));
    }
}
