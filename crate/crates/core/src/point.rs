//! Lattice cells of ℕⁿ and the componentwise order.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A cell of ℕⁿ. The derived `Ord` is lexicographic and is used for
/// canonical sorting; the lattice (componentwise) order is [`Point::leq`].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(pub Vec<u32>);

impl Point {
    pub fn new(coords: impl Into<Vec<u32>>) -> Self {
        Point(coords.into())
    }

    pub fn origin(n: usize) -> Self {
        Point(vec![0; n])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    /// Componentwise (lattice) order: `self ≤ other`.
    pub fn leq(&self, other: &Point) -> bool {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Strict lattice order.
    pub fn lt(&self, other: &Point) -> bool {
        self != other && self.leq(other)
    }

    pub fn comparable(&self, other: &Point) -> bool {
        self.leq(other) || other.leq(self)
    }

    pub fn add(&self, other: &Point) -> Point {
        debug_assert_eq!(self.dim(), other.dim());
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise difference; requires `other ≤ self`.
    pub fn sub(&self, other: &Point) -> Point {
        debug_assert!(other.leq(self));
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn meet(&self, other: &Point) -> Point {
        Point(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    /// Neighbour in direction `axis`, shifted by `+1` or `-1`. Returns `None`
    /// when the step would leave ℕⁿ.
    pub fn step(&self, axis: usize, up: bool) -> Option<Point> {
        let mut c = self.0.clone();
        if up {
            c[axis] += 1;
        } else if c[axis] == 0 {
            return None;
        } else {
            c[axis] -= 1;
        }
        Some(Point(c))
    }

    /// Projection onto the first two coordinates.
    pub fn project(&self) -> Point {
        Point(self.0[..2].to_vec())
    }

    /// Colexicographic comparison (last coordinate most significant).
    pub fn cmp_colex(&self, other: &Point) -> Ordering {
        self.0.iter().rev().cmp(other.0.iter().rev())
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl From<&[u32]> for Point {
    fn from(v: &[u32]) -> Self {
        Point(v.to_vec())
    }
}

impl<const N: usize> From<[u32; N]> for Point {
    fn from(v: [u32; N]) -> Self {
        Point(v.to_vec())
    }
}

/// Meet (componentwise minimum) of a nonempty cell set.
pub fn cell_meet<'a, I: IntoIterator<Item = &'a Point>>(cells: I) -> Result<Point> {
    let mut it = cells.into_iter();
    let first = it.next().ok_or(Error::EmptyShape)?;
    let mut m = first.clone();
    for p in it {
        m = m.meet(p);
    }
    Ok(m)
}

/// Checks that every cell has the same dimension `n`.
pub fn check_dims<'a, I: IntoIterator<Item = &'a Point>>(n: usize, cells: I) -> Result<()> {
    for p in cells {
        if p.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: p.dim(),
            });
        }
    }
    Ok(())
}

/// Translates every cell by `v`.
pub fn translate(cells: &BTreeSet<Point>, v: &Point) -> BTreeSet<Point> {
    cells.iter().map(|p| p.add(v)).collect()
}

/// Translates every cell by `-v`; requires `v ≤ p` for all cells.
pub fn translate_down(cells: &BTreeSet<Point>, v: &Point) -> BTreeSet<Point> {
    cells.iter().map(|p| p.sub(v)).collect()
}
