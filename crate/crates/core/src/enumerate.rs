//! Exhaustive enumeration of connected abstract skew shapes by cell count,
//! via polyform growth with canonical-parent isomorph rejection.

use std::collections::BTreeSet;

use crate::point::{cell_meet, translate_down, Point};
use crate::shape::{components_of, is_skew_shape, SkewShape};

/// All connected cell sets with `cells` cells up to translation (meet at the
/// origin), in canonical order. Grown level by level; a shape is accepted
/// only from its canonical parent, so each one is produced exactly once.
pub fn connected_polyforms(dim: usize, cells: usize) -> Vec<BTreeSet<Point>> {
    assert!(cells >= 1);
    let mut level: Vec<BTreeSet<Point>> = vec![[Point::origin(dim)].into_iter().collect()];
    for _ in 1..cells {
        let mut next: BTreeSet<Vec<Point>> = BTreeSet::new();
        for shape in &level {
            for candidate in growth_candidates(shape, dim) {
                if canonical_parent(&candidate, dim) == *shape {
                    next.insert(candidate.iter().cloned().collect());
                }
            }
        }
        level = next
            .into_iter()
            .map(|v| v.into_iter().collect())
            .collect();
    }
    level
}

/// Normalized supersets obtained by attaching one neighbouring cell.
fn growth_candidates(shape: &BTreeSet<Point>, dim: usize) -> Vec<BTreeSet<Point>> {
    let mut out: BTreeSet<Vec<Point>> = BTreeSet::new();
    for p in shape {
        for axis in 0..dim {
            for up in [true, false] {
                let q = match p.step(axis, up) {
                    Some(q) => q,
                    // A step below zero: shift the whole shape up instead.
                    None => {
                        let mut grown: BTreeSet<Point> = shape
                            .iter()
                            .map(|r| {
                                let mut c = r.coords().to_vec();
                                c[axis] += 1;
                                Point::new(c)
                            })
                            .collect();
                        grown.insert(p.clone());
                        out.insert(grown.into_iter().collect());
                        continue;
                    }
                };
                if !shape.contains(&q) {
                    let mut grown = shape.clone();
                    grown.insert(q);
                    out.insert(grown.into_iter().collect());
                }
            }
        }
    }
    out.into_iter().map(|v| v.into_iter().collect()).collect()
}

/// The canonical parent: remove the lexicographically largest cell whose
/// removal keeps the shape connected, then normalize. Every connected shape
/// with at least two cells has such a cell.
fn canonical_parent(shape: &BTreeSet<Point>, dim: usize) -> BTreeSet<Point> {
    for cell in shape.iter().rev() {
        let mut rest = shape.clone();
        rest.remove(cell);
        if components_of(&rest, dim).len() == 1 {
            let m = cell_meet(&rest).expect("nonempty");
            return translate_down(&rest, &m);
        }
    }
    unreachable!("a connected polyform always has a removable cell")
}

/// All connected abstract skew shapes with exactly `cells` cells, in
/// canonical (sorted cell list) order, without duplicates.
pub fn enumerate_connected_shapes(dim: usize, cells: usize) -> Vec<SkewShape> {
    connected_polyforms(dim, cells)
        .into_iter()
        .filter(|s| is_skew_shape(dim, s).expect("dims consistent"))
        .map(|s| SkewShape::from_cells(dim, s).expect("just checked"))
        .collect()
}

/// All connected abstract skew shapes with 1..=`max_cells` cells, flattened
/// in (size, canonical) order.
pub fn shapes_up_to(dim: usize, max_cells: usize) -> Vec<SkewShape> {
    (1..=max_cells)
        .flat_map(|k| enumerate_connected_shapes(dim, k))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force oracle: all shapes with `cells` cells inside a small box,
    /// filtered by connectivity, skew validity, and meet at the origin.
    fn brute_force(dim: usize, cells: usize, side: u32) -> BTreeSet<Vec<Point>> {
        let mut all_cells = Vec::new();
        fn fill(dim: usize, side: u32, cur: &mut Vec<u32>, out: &mut Vec<Point>) {
            if cur.len() == dim {
                out.push(Point::new(cur.clone()));
                return;
            }
            for v in 0..side {
                cur.push(v);
                fill(dim, side, cur, out);
                cur.pop();
            }
        }
        fill(dim, side, &mut Vec::new(), &mut all_cells);
        let mut out = BTreeSet::new();
        let mut chosen = Vec::new();
        fn subsets(
            all: &[Point],
            start: usize,
            left: usize,
            dim: usize,
            chosen: &mut Vec<Point>,
            out: &mut BTreeSet<Vec<Point>>,
        ) {
            if left == 0 {
                let set: BTreeSet<Point> = chosen.iter().cloned().collect();
                let m = cell_meet(&set).unwrap();
                if m != Point::origin(dim) {
                    return;
                }
                if components_of(&set, dim).len() != 1 {
                    return;
                }
                if !is_skew_shape(dim, &set).unwrap() {
                    return;
                }
                out.insert(set.into_iter().collect());
                return;
            }
            for i in start..all.len() {
                chosen.push(all[i].clone());
                subsets(all, i + 1, left - 1, dim, chosen, out);
                chosen.pop();
            }
        }
        subsets(&all_cells, 0, cells, dim, &mut chosen, &mut out);
        out
    }

    #[test]
    fn counts_match_brute_force() {
        for (dim, cells, side) in [(2, 1, 1), (2, 2, 3), (2, 3, 3), (2, 4, 4), (3, 2, 3), (3, 3, 3)]
        {
            let fast: BTreeSet<Vec<Point>> = enumerate_connected_shapes(dim, cells)
                .into_iter()
                .map(|s| s.cells().iter().cloned().collect())
                .collect();
            let brute = brute_force(dim, cells, side);
            assert_eq!(fast, brute, "dim {dim} cells {cells}");
        }
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_connected_shapes(2, 1).len(), 1);
        // Unit-step connectivity admits exactly the two dominoes in the
        // plane and the three axis dominoes in space.
        assert_eq!(enumerate_connected_shapes(2, 2).len(), 2);
        assert_eq!(enumerate_connected_shapes(3, 2).len(), 3);
        // Skew-valid connected triominoes: two straight and two bent.
        assert_eq!(enumerate_connected_shapes(2, 3).len(), 4);
    }

    #[test]
    fn no_duplicates_and_all_connected() {
        for (dim, cells) in [(2, 5), (3, 4)] {
            let shapes = enumerate_connected_shapes(dim, cells);
            let dedup: BTreeSet<Vec<Point>> = shapes
                .iter()
                .map(|s| s.cells().iter().cloned().collect())
                .collect();
            assert_eq!(dedup.len(), shapes.len());
            for s in &shapes {
                assert!(s.is_connected());
                assert!(s.is_abstract());
                assert_eq!(s.len(), cells);
            }
        }
    }
}
