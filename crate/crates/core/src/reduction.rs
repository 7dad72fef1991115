//! Bottom slices of 3-D shapes and the bottom-slice reduction of floor
//! plans: remove the a₃ = 0 layer of every piece and re-anchor the remaining
//! components one level down.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::floorplan::{FloorPlan, Side};
use crate::heights::HeightGrid;
use crate::point::{cell_meet, translate_down, Point};
use crate::shape::{components_of, SkewShape};

/// The bottom slice of a connected abstract 3-D skew shape together with the
/// components of the remainder, each normalized and paired with its meet.
/// Remainder components are ordered colexicographically by meet.
pub fn bottom_slice(sigma: &SkewShape) -> Result<(BTreeSet<Point>, Vec<(SkewShape, Point)>)> {
    if sigma.dim() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            got: sigma.dim(),
        });
    }
    let slice: BTreeSet<Point> = sigma
        .cells()
        .iter()
        .filter(|p| p.coords()[2] == 0)
        .cloned()
        .collect();
    let rest: BTreeSet<Point> = sigma
        .cells()
        .iter()
        .filter(|p| p.coords()[2] > 0)
        .cloned()
        .collect();
    let mut comps: Vec<(SkewShape, Point)> = components_of(&rest, 3)
        .into_iter()
        .map(|cells| {
            let anchor = cell_meet(&cells).expect("component nonempty");
            let shape = SkewShape::from_cells(3, translate_down(&cells, &anchor))
                .expect("remainder component of a skew shape is skew");
            (shape, anchor)
        })
        .collect();
    comps.sort_by(|a, b| a.1.cmp_colex(&b.1));
    Ok((slice, comps))
}

/// A bottom-slice reduction: the reduced plan, the map back to parent
/// components, and the recorded meets of the removed-layer components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceReduction {
    pub star_plan: FloorPlan,
    /// `eta[j]` is the index of the parent component of star piece `j`.
    pub eta: Vec<usize>,
    /// Meet ∧τ_j of the parent-relative component defining star piece `j`.
    pub anchors: Vec<Point>,
}

/// Removes the bottom slice of every piece. Star components are enumerated
/// by (parent index, colexicographic meet).
pub fn bottom_slice_reduction(plan: &FloorPlan) -> Result<SliceReduction> {
    plan.validate()?;
    let mut nu = Vec::new();
    let mut b = Vec::new();
    let mut c = Vec::new();
    let mut eta = Vec::new();
    let mut anchors = Vec::new();
    for (parent, shape) in plan.nu.iter().enumerate() {
        let (slice, comps) = bottom_slice(shape)?;
        if slice.is_empty() {
            // An abstract shape has meet at the origin, so its bottom slice
            // is nonempty; anything else indicates corrupted input.
            return Err(Error::InvalidPlan(format!(
                "piece {parent} has an empty bottom slice"
            )));
        }
        for (comp, anchor) in comps {
            nu.push(comp);
            b.push(plan.b[parent].add(&anchor.project()));
            c.push(plan.c[parent].add(&anchor.project()));
            eta.push(parent);
            anchors.push(anchor);
        }
    }
    let star_plan = FloorPlan::new(nu, b, c)?;
    Ok(SliceReduction {
        star_plan,
        eta,
        anchors,
    })
}

/// Upper heights of the canonical realization's closure on a side, as a grid.
fn side_upper_grid(plan: &FloorPlan, side: Side) -> Result<HeightGrid> {
    let z: Vec<u32> = plan
        .h_all_on(side)?
        .into_iter()
        .map(|v| v as u32)
        .collect();
    Ok(HeightGrid::new(&plan.piece_columns(side), &z))
}

/// The height-drop law: after a bottom-slice reduction, the closure heights
/// drop by at least one everywhere on the reduced support, on both sides.
pub fn verify_height_drop(plan: &FloorPlan) -> Result<bool> {
    let red = bottom_slice_reduction(plan)?;
    if red.star_plan.is_empty() {
        return Ok(true);
    }
    for side in [Side::B, Side::C] {
        let full = side_upper_grid(plan, side)?;
        let star = side_upper_grid(&red.star_plan, side)?;
        for y in 0..star.h as u32 {
            for x in 0..star.w as u32 {
                let s = star.get(x, y);
                if s > 0 && full.get(x, y) < s + 1 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// |ν°| ≤ |λ° ∩ μ°|: the removed layer fits inside the bottom slice of the
/// two closures. Under this condition a counterexample reduces to a
/// counterexample.
pub fn prop_main_condition(plan: &FloorPlan) -> Result<bool> {
    plan.validate()?;
    let slice_total: usize = plan
        .nu
        .iter()
        .map(|s| {
            s.cells()
                .iter()
                .filter(|p| p.coords()[2] == 0)
                .count()
        })
        .sum();
    let lam = side_upper_grid(plan, Side::B)?;
    let mu = side_upper_grid(plan, Side::C)?;
    Ok(slice_total <= lam.support_intersection_len(&mu))
}

/// Iterates bottom-slice reductions until no cells remain. The returned
/// chain starts with the input plan and ends with the empty plan; |ν|
/// strictly decreases along it.
pub fn reduce_to_fixpoint(plan: &FloorPlan) -> Result<Vec<FloorPlan>> {
    plan.validate()?;
    let mut chain = vec![plan.clone()];
    let mut current = plan.clone();
    while !current.is_empty() {
        let red = bottom_slice_reduction(&current)?;
        if red.star_plan.nu_len() >= current.nu_len() {
            return Err(Error::InvalidPlan(
                "bottom-slice reduction did not shrink the plan".into(),
            ));
        }
        current = red.star_plan;
        chain.push(current.clone());
    }
    Ok(chain)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    fn skew3(cells: &[[u32; 3]]) -> SkewShape {
        SkewShape::from_cells(3, cells.iter().map(|c| Point::from(*c)).collect()).unwrap()
    }

    fn pt2(x: u32, y: u32) -> Point {
        Point::from([x, y])
    }

    /// Five-cell piece whose remainder splits into two singleton components
    /// anchored at (1,0,1) and (0,1,1).
    pub(crate) fn split_piece() -> SkewShape {
        skew3(&[[1, 0, 0], [1, 0, 1], [1, 1, 0], [0, 1, 0], [0, 1, 1]])
    }

    /// The worked reduction example: a single cell at (2,2) and the split
    /// piece at the origin.
    pub(crate) fn reduction_example() -> FloorPlan {
        FloorPlan::new(
            vec![skew3(&[[0, 0, 0]]), split_piece()],
            vec![pt2(2, 2), pt2(0, 0)],
            vec![pt2(2, 2), pt2(0, 0)],
        )
        .unwrap()
    }

    #[test]
    fn slice_of_large_example() {
        let sigma = crate::shape::tests::slice_example_shape();
        let (slice, comps) = bottom_slice(&sigma).unwrap();
        assert_eq!(slice.len(), 4);
        assert_eq!(comps.len(), 2);
        // Components anchored at (2,0,1) and (0,2,1); colex order puts the
        // low-row component first.
        assert_eq!(comps[0].1, Point::from([2, 0, 1]));
        assert_eq!(comps[1].1, Point::from([0, 2, 1]));
        assert_eq!(comps[1].0.cells().len(), 3);
    }

    #[test]
    fn slice_of_flat_and_column() {
        let flat = skew3(&[[0, 0, 0], [1, 0, 0]]);
        let (slice, comps) = bottom_slice(&flat).unwrap();
        assert_eq!(slice.len(), 2);
        assert!(comps.is_empty());

        let column = skew3(&[[0, 0, 0], [0, 0, 1], [0, 0, 2]]);
        let (slice, comps) = bottom_slice(&column).unwrap();
        assert_eq!(slice.len(), 1);
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].1, Point::from([0, 0, 1]));
        assert_eq!(comps[0].0.len(), 2);
    }

    #[test]
    fn reduction_of_worked_example() {
        let plan = reduction_example();
        let red = bottom_slice_reduction(&plan).unwrap();
        assert_eq!(red.star_plan.len(), 2);
        assert_eq!(red.eta, vec![1, 1]);
        assert_eq!(red.star_plan.b, vec![pt2(1, 0), pt2(0, 1)]);
        assert_eq!(red.star_plan.c, vec![pt2(1, 0), pt2(0, 1)]);
        red.star_plan.validate().unwrap();
    }

    #[test]
    fn flat_plan_reduces_to_empty() {
        let plan = FloorPlan::new(
            vec![skew3(&[[0, 0, 0]])],
            vec![pt2(0, 0)],
            vec![pt2(0, 0)],
        )
        .unwrap();
        let red = bottom_slice_reduction(&plan).unwrap();
        assert!(red.star_plan.is_empty());
        assert_eq!(reduce_to_fixpoint(&plan).unwrap().len(), 2);
    }

    #[test]
    fn column_chain_length() {
        let h = 3u32;
        let cells: Vec<[u32; 3]> = (0..h).map(|z| [0, 0, z]).collect();
        let plan = FloorPlan::new(
            vec![skew3(&cells)],
            vec![pt2(0, 0)],
            vec![pt2(0, 0)],
        )
        .unwrap();
        let chain = reduce_to_fixpoint(&plan).unwrap();
        assert_eq!(chain.len(), h as usize + 1);
        let red = bottom_slice_reduction(&plan).unwrap();
        assert_eq!(red.star_plan.b, vec![pt2(0, 0)]);
    }

    #[test]
    fn worked_example_chain_and_cell_accounting() {
        let plan = reduction_example();
        let chain = reduce_to_fixpoint(&plan).unwrap();
        assert_eq!(chain.len(), 3);
        for pair in chain.windows(2) {
            let slice_total: usize = pair[0]
                .nu
                .iter()
                .map(|s| s.cells().iter().filter(|p| p.coords()[2] == 0).count())
                .sum();
            assert_eq!(pair[1].nu_len(), pair[0].nu_len() - slice_total);
        }
    }

    #[test]
    fn height_drop_on_examples() {
        for plan in [
            reduction_example(),
            crate::floorplan::tests::chain_example(),
            crate::floorplan::tests::flat_pair_example(),
        ] {
            assert!(verify_height_drop(&plan).unwrap());
        }
    }

    #[test]
    fn main_condition_small_cases() {
        let single = FloorPlan::new(
            vec![skew3(&[[0, 0, 0]])],
            vec![pt2(0, 0)],
            vec![pt2(0, 0)],
        )
        .unwrap();
        assert!(prop_main_condition(&single).unwrap());

        let empty = FloorPlan::new(vec![], vec![], vec![]).unwrap();
        assert!(prop_main_condition(&empty).unwrap());
    }
}
