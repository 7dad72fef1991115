//! Column-height grids for one side of a placement: the downward closure of
//! placed three-dimensional pieces is determined by its column heights over
//! ℕ², which keeps the hot verification loops off explicit cell sets.

use crate::point::Point;
use crate::shape::SkewShape;

/// Per-piece column data: for each footprint cell, the absolute 2-D position
/// and the z-interval `[lo, hi)` occupied by the piece before any vertical
/// offset is applied.
#[derive(Clone, Debug)]
pub struct PieceColumns {
    pub cols: Vec<(u32, u32, u32, u32)>,
}

impl PieceColumns {
    /// Columns of `shape` anchored at the 2-D point `b`.
    pub fn new(shape: &SkewShape, b: &Point) -> Self {
        let hp = shape.height_functions().expect("3-dimensional piece");
        let cols = hp
            .upper
            .iter()
            .filter(|(_, &hi)| hi > 0)
            .map(|(&(x, y), &hi)| {
                let lo = hp.lower_at((x, y));
                (x + b.coords()[0], y + b.coords()[1], lo, hi)
            })
            .collect();
        PieceColumns { cols }
    }

    pub fn cell_count(&self) -> usize {
        self.cols.iter().map(|&(_, _, lo, hi)| (hi - lo) as usize).sum()
    }
}

/// Column heights of the downward closure of a union of placed pieces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightGrid {
    pub w: usize,
    pub h: usize,
    grid: Vec<u32>,
}

impl HeightGrid {
    /// Builds the closure heights for pieces with vertical offsets `z`.
    pub fn new(pieces: &[PieceColumns], z: &[u32]) -> Self {
        let mut w = 0usize;
        let mut h = 0usize;
        for p in pieces {
            for &(x, y, _, _) in &p.cols {
                w = w.max(x as usize + 1);
                h = h.max(y as usize + 1);
            }
        }
        let mut grid = vec![0u32; w * h];
        for (p, &dz) in pieces.iter().zip(z) {
            for &(x, y, _, hi) in &p.cols {
                let idx = y as usize * w + x as usize;
                grid[idx] = grid[idx].max(hi + dz);
            }
        }
        // Downward closure: sweep from the far corner toward the origin.
        for y in (0..h).rev() {
            for x in (0..w).rev() {
                let mut v = grid[y * w + x];
                if x + 1 < w {
                    v = v.max(grid[y * w + x + 1]);
                }
                if y + 1 < h {
                    v = v.max(grid[(y + 1) * w + x]);
                }
                grid[y * w + x] = v;
            }
        }
        HeightGrid { w, h, grid }
    }

    pub fn get(&self, x: u32, y: u32) -> u32 {
        let (x, y) = (x as usize, y as usize);
        if x >= self.w || y >= self.h {
            0
        } else {
            self.grid[y * self.w + x]
        }
    }

    /// Total cell count of the closure.
    pub fn len(&self) -> usize {
        self.grid.iter().map(|&v| v as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.iter().all(|&v| v == 0)
    }

    /// |intersection| of two closures: columns intersect from the floor up.
    pub fn intersection_len(&self, other: &HeightGrid) -> usize {
        let w = self.w.min(other.w);
        let h = self.h.min(other.h);
        let mut total = 0usize;
        for y in 0..h {
            for x in 0..w {
                total +=
                    self.grid[y * self.w + x].min(other.grid[y * other.w + x]) as usize;
            }
        }
        total
    }

    /// Number of columns with positive height (the bottom slice size).
    pub fn support_len(&self) -> usize {
        self.grid.iter().filter(|&&v| v > 0).count()
    }

    /// Bottom-slice intersection size: columns where both grids are positive.
    pub fn support_intersection_len(&self, other: &HeightGrid) -> usize {
        let w = self.w.min(other.w);
        let h = self.h.min(other.h);
        let mut total = 0usize;
        for y in 0..h {
            for x in 0..w {
                if self.grid[y * self.w + x] > 0 && other.grid[y * other.w + x] > 0 {
                    total += 1;
                }
            }
        }
        total
    }

    /// All cells of the closure, as (x, y, z) triples.
    pub fn cells(&self) -> Vec<Point> {
        let mut out = Vec::with_capacity(self.len());
        for y in 0..self.h {
            for x in 0..self.w {
                for z in 0..self.grid[y * self.w + x] {
                    out.push(Point::new([x as u32, y as u32, z]));
                }
            }
        }
        out
    }
}

/// Checks the one-sided placement conditions of a realization: with vertical
/// offsets `z`, every piece must be closed under ≥ inside the closure of the
/// union. Footprint disjointness across pieces is assumed (floor-plan
/// validity). Column reasoning: each piece column must reach the top of the
/// closure column, and a lateral neighbour column that rises above a piece
/// column's bottom must belong to the same piece and start no higher.
pub fn side_valid(pieces: &[PieceColumns], z: &[u32], grid: &HeightGrid) -> bool {
    for (p, &dz) in pieces.iter().zip(z) {
        for &(x, y, _, hi) in &p.cols {
            if hi + dz != grid.get(x, y) {
                return false;
            }
        }
        for &(x, y, lo, _) in &p.cols {
            let lo = lo + dz;
            for (nx, ny) in [(x + 1, y), (x, y + 1)] {
                if grid.get(nx, ny) > lo {
                    match p.cols.iter().find(|&&(cx, cy, _, _)| cx == nx && cy == ny) {
                        Some(&(_, _, nlo, _)) if nlo + dz <= lo => {}
                        _ => return false,
                    }
                }
            }
        }
    }
    true
}

/// Convenience: build the grid and run [`side_valid`] in one call.
pub fn side_realization_valid(pieces: &[PieceColumns], z: &[u32]) -> bool {
    let grid = HeightGrid::new(pieces, z);
    side_valid(pieces, z, &grid)
}
