//! Standard shapes (Young diagrams in ℕⁿ), skew shapes, height functions,
//! and the dictionary with finite-colength monomial ideals.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::point::{cell_meet, check_dims, translate, translate_down, Point};

/// A finite downward-closed subset of ℕⁿ, equivalently the standard
/// monomials of a finite-colength monomial ideal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StandardShape {
    n: usize,
    cells: BTreeSet<Point>,
}

impl StandardShape {
    pub fn empty(n: usize) -> Self {
        StandardShape {
            n,
            cells: BTreeSet::new(),
        }
    }

    /// Validating constructor: the cells must already be downward closed.
    pub fn from_cells(n: usize, cells: BTreeSet<Point>) -> Result<Self> {
        check_dims(n, &cells)?;
        for p in &cells {
            for axis in 0..n {
                if let Some(q) = p.step(axis, false) {
                    if !cells.contains(&q) {
                        return Err(Error::NotDownwardClosed { witness: p.clone() });
                    }
                }
            }
        }
        Ok(StandardShape { n, cells })
    }

    /// Smallest downward-closed superset of an arbitrary cell set.
    pub fn closure_of<'a, I: IntoIterator<Item = &'a Point>>(n: usize, cells: I) -> Result<Self> {
        let mut out = BTreeSet::new();
        for p in cells {
            if p.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: p.dim(),
                });
            }
            downset_into(p, &mut out);
        }
        Ok(StandardShape { n, cells: out })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> &BTreeSet<Point> {
        &self.cells
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.cells.contains(p)
    }

    /// Cellwise intersection (again a standard shape).
    pub fn intersect(&self, other: &StandardShape) -> StandardShape {
        StandardShape {
            n: self.n,
            cells: self.cells.intersection(&other.cells).cloned().collect(),
        }
    }

    pub fn union_len(&self, other: &StandardShape) -> usize {
        self.cells.union(&other.cells).count()
    }

    /// Minimal monomial generators of the complement ideal.
    /// Inverse of [`ideal_to_shape`].
    pub fn to_ideal(&self) -> Vec<Point> {
        let n = self.n;
        if self.cells.is_empty() {
            return vec![Point::origin(n)];
        }
        // Generators live inside the box one past the shape's extent.
        let mut max = vec![1u32; n];
        for p in &self.cells {
            for i in 0..n {
                max[i] = max[i].max(p.coords()[i] + 2);
            }
        }
        let mut gens = Vec::new();
        let mut cur = Point::origin(n);
        enumerate_box(&max, 0, &mut cur, &mut |p: &Point| {
            if self.cells.contains(p) {
                return;
            }
            for axis in 0..n {
                if let Some(q) = p.step(axis, false) {
                    if !self.cells.contains(&q) {
                        return;
                    }
                }
            }
            gens.push(p.clone());
        });
        gens.sort();
        gens
    }
}

fn downset_into(p: &Point, out: &mut BTreeSet<Point>) {
    let dims: Vec<u32> = p.coords().iter().map(|c| c + 1).collect();
    let mut cur = Point::origin(p.dim());
    enumerate_box(&dims, 0, &mut cur, &mut |q: &Point| {
        out.insert(q.clone());
    });
}

fn enumerate_box(dims: &[u32], axis: usize, cur: &mut Point, f: &mut impl FnMut(&Point)) {
    if axis == dims.len() {
        f(cur);
        return;
    }
    for v in 0..dims[axis] {
        cur.0[axis] = v;
        enumerate_box(dims, axis + 1, cur, f);
    }
}

/// The standard monomials of the ideal generated by the given exponent
/// vectors. Errors when the ideal does not have finite colength, naming an
/// axis without a pure power among the generators.
pub fn ideal_to_shape(n: usize, gens: &[Point]) -> Result<StandardShape> {
    check_dims(n, gens)?;
    // Finite colength needs a pure power of each variable.
    let mut bound = vec![None; n];
    for g in gens {
        for axis in 0..n {
            let c = g.coords();
            if c.iter().enumerate().all(|(i, &v)| i == axis || v == 0) {
                let d = c[axis];
                bound[axis] = Some(bound[axis].map_or(d, |b: u32| b.min(d)));
            }
        }
    }
    let mut dims = Vec::with_capacity(n);
    for (axis, b) in bound.iter().enumerate() {
        match b {
            Some(d) => dims.push(*d),
            None => return Err(Error::InfiniteColength { axis: axis + 1 }),
        }
    }
    let mut cells = BTreeSet::new();
    let mut cur = Point::origin(n);
    enumerate_box(&dims, 0, &mut cur, &mut |p: &Point| {
        if !gens.iter().any(|g| g.leq(p)) {
            cells.insert(p.clone());
        }
    });
    Ok(StandardShape { n, cells })
}

/// Is `cells` a skew shape, i.e. is closure(cells) ∖ cells downward closed?
pub fn is_skew_shape(n: usize, cells: &BTreeSet<Point>) -> Result<bool> {
    check_dims(n, cells)?;
    let outer = StandardShape::closure_of(n, cells)?;
    for p in outer.cells() {
        if cells.contains(p) {
            continue;
        }
        for axis in 0..n {
            if let Some(q) = p.step(axis, false) {
                if cells.contains(&q) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// A difference of two standard shapes, canonically encoded as
/// `outer ∖ inner` with `outer` the closure of the cells.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SkewShape {
    n: usize,
    outer: StandardShape,
    inner: StandardShape,
    cells: BTreeSet<Point>,
}

impl SkewShape {
    pub fn empty(n: usize) -> Self {
        SkewShape {
            n,
            outer: StandardShape::empty(n),
            inner: StandardShape::empty(n),
            cells: BTreeSet::new(),
        }
    }

    /// Validating constructor from raw cells; canonicalizes outer and inner.
    pub fn from_cells(n: usize, cells: BTreeSet<Point>) -> Result<Self> {
        check_dims(n, &cells)?;
        let outer = StandardShape::closure_of(n, &cells)?;
        let mut inner_cells = BTreeSet::new();
        for p in outer.cells() {
            if !cells.contains(p) {
                inner_cells.insert(p.clone());
            }
        }
        // Fail fast with the offending cell when the complement is not
        // downward closed.
        for p in &inner_cells {
            for axis in 0..n {
                if let Some(q) = p.step(axis, false) {
                    if !inner_cells.contains(&q) && outer.contains(&q) {
                        return Err(Error::NotSkew { witness: p.clone() });
                    }
                }
            }
        }
        let inner = StandardShape {
            n,
            cells: inner_cells,
        };
        Ok(SkewShape {
            n,
            outer,
            inner,
            cells,
        })
    }

    pub fn from_standard(s: &StandardShape) -> Self {
        SkewShape {
            n: s.dim(),
            outer: s.clone(),
            inner: StandardShape::empty(s.dim()),
            cells: s.cells().clone(),
        }
    }

    /// Difference `outer ∖ inner` of two standard shapes with `inner ⊆ outer`.
    pub fn from_difference(outer: &StandardShape, inner: &StandardShape) -> Result<Self> {
        if outer.dim() != inner.dim() {
            return Err(Error::DimensionMismatch {
                expected: outer.dim(),
                got: inner.dim(),
            });
        }
        let cells: BTreeSet<Point> = outer.cells().difference(inner.cells()).cloned().collect();
        SkewShape::from_cells(outer.dim(), cells)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> &BTreeSet<Point> {
        &self.cells
    }

    pub fn outer(&self) -> &StandardShape {
        &self.outer
    }

    pub fn inner(&self) -> &StandardShape {
        &self.inner
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.cells.contains(p)
    }

    /// Componentwise minimum of the cells.
    pub fn meet(&self) -> Result<Point> {
        cell_meet(&self.cells)
    }

    /// Translates the shape so that its meet is the origin.
    pub fn normalized(&self) -> Result<SkewShape> {
        let m = self.meet()?;
        if m == Point::origin(self.n) {
            return Ok(self.clone());
        }
        SkewShape::from_cells(self.n, translate_down(&self.cells, &m))
    }

    /// Is the meet at the origin (and the shape nonempty)?
    pub fn is_abstract(&self) -> bool {
        matches!(self.meet(), Ok(m) if m == Point::origin(self.n))
    }

    pub fn translated(&self, v: &Point) -> SkewShape {
        // A translate of a skew shape is skew; rebuild via the checked path.
        SkewShape::from_cells(self.n, translate(&self.cells, v))
            .expect("translate of a skew shape is skew")
    }

    /// Connected components under unit steps ±e₁,…,±eₙ inside the shape,
    /// ordered lexicographically by their meets.
    pub fn components(&self) -> Vec<SkewShape> {
        let comps = components_of(&self.cells, self.n);
        comps
            .into_iter()
            .map(|c| SkewShape::from_cells(self.n, c).expect("component of a skew shape is skew"))
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        components_of(&self.cells, self.n).len() == 1
    }

    pub fn translation_equivalent(&self, other: &SkewShape) -> bool {
        if self.is_empty() || other.is_empty() {
            return self.is_empty() && other.is_empty();
        }
        let a = self.normalized().expect("nonempty");
        let b = other.normalized().expect("nonempty");
        a.cells == b.cells
    }

    /// Upper and lower height functions of a 3-dimensional skew shape.
    pub fn height_functions(&self) -> Result<HeightPair> {
        if self.n != 3 {
            return Err(Error::DimensionMismatch {
                expected: 3,
                got: self.n,
            });
        }
        let mut upper = BTreeMap::new();
        for p in self.outer.cells() {
            let key = (p.coords()[0], p.coords()[1]);
            let e = upper.entry(key).or_insert(0u32);
            *e = (*e).max(p.coords()[2] + 1);
        }
        let mut lower = BTreeMap::new();
        for p in self.inner.cells() {
            let key = (p.coords()[0], p.coords()[1]);
            let e = lower.entry(key).or_insert(0u32);
            *e = (*e).max(p.coords()[2] + 1);
        }
        Ok(HeightPair { upper, lower })
    }

    /// Projection to the first two coordinates (a skew shape in ℕ²).
    pub fn project(&self) -> SkewShape {
        let cells: BTreeSet<Point> = self.cells.iter().map(|p| p.project()).collect();
        SkewShape::from_cells(2, cells).expect("projection of a skew shape is skew")
    }
}

/// Components of a raw cell set under unit-step paths, ordered
/// lexicographically by componentwise meet. Input order is irrelevant.
pub fn components_of(cells: &BTreeSet<Point>, n: usize) -> Vec<BTreeSet<Point>> {
    let mut seen: BTreeSet<&Point> = BTreeSet::new();
    let mut comps = Vec::new();
    for start in cells {
        if seen.contains(start) {
            continue;
        }
        let mut comp = BTreeSet::new();
        let mut queue = VecDeque::new();
        queue.push_back(start.clone());
        seen.insert(start);
        while let Some(p) = queue.pop_front() {
            comp.insert(p.clone());
            for axis in 0..n {
                for up in [true, false] {
                    if let Some(q) = p.step(axis, up) {
                        if let Some(q_ref) = cells.get(&q) {
                            if seen.insert(q_ref) {
                                queue.push_back(q);
                            }
                        }
                    }
                }
            }
        }
        comps.push(comp);
    }
    comps.sort_by_key(|c| cell_meet(c).expect("component nonempty"));
    comps
}

/// The pair of finitely supported maps ℕ² → ℕ encoding a 3-dimensional
/// abstract skew shape; only nonzero values are stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct HeightPair {
    pub upper: BTreeMap<(u32, u32), u32>,
    pub lower: BTreeMap<(u32, u32), u32>,
}

impl HeightPair {
    pub fn upper_at(&self, a: (u32, u32)) -> u32 {
        self.upper.get(&a).copied().unwrap_or(0)
    }

    pub fn lower_at(&self, a: (u32, u32)) -> u32 {
        self.lower.get(&a).copied().unwrap_or(0)
    }

    /// Membership test: (a, a₃) lies in the shape iff lower(a) ≤ a₃ < upper(a).
    pub fn contains_cell(&self, a: (u32, u32), a3: u32) -> bool {
        self.lower_at(a) <= a3 && a3 < self.upper_at(a)
    }

    /// Checks the height-pair conditions. With `allow_empty`, an identically
    /// zero upper map is accepted (the empty shape).
    pub fn validate(&self, allow_empty: bool) -> Result<()> {
        let zero = self.upper.values().all(|&v| v == 0);
        if zero && !allow_empty {
            return Err(Error::HeightPair { condition: "(i)" });
        }
        // (ii) finite support holds by representation.
        for (a, &lo) in &self.lower {
            if lo > self.upper_at(*a) {
                return Err(Error::HeightPair { condition: "(iii)" });
            }
        }
        for (map, label) in [(&self.upper, "(iv) upper"), (&self.lower, "(iv) lower")] {
            for (&(x, y), &v) in map {
                if v == 0 {
                    continue;
                }
                let below_x = if x > 0 {
                    map.get(&(x - 1, y)).copied().unwrap_or(0)
                } else {
                    u32::MAX
                };
                let below_y = if y > 0 {
                    map.get(&(x, y - 1)).copied().unwrap_or(0)
                } else {
                    u32::MAX
                };
                if v > below_x || v > below_y {
                    return Err(Error::HeightPair { condition: label });
                }
            }
        }
        // (v): a column with upper = lower > 0 must be witnessed by an
        // actual cell further out at the same upper height.
        for (&a, &up) in &self.upper {
            if up == 0 || self.lower_at(a) != up {
                continue;
            }
            let witnessed = self.upper.iter().any(|(&b, &ub)| {
                b != a && a.0 <= b.0 && a.1 <= b.1 && ub == up && self.lower_at(b) < up
            });
            if !witnessed {
                return Err(Error::HeightPair { condition: "(v)" });
            }
        }
        Ok(())
    }

    /// Rebuilds the shape. Inverse of [`SkewShape::height_functions`] on
    /// abstract shapes; an all-zero upper map yields the empty shape.
    pub fn to_shape(&self) -> Result<SkewShape> {
        self.validate(true)?;
        let mut cells = BTreeSet::new();
        for (&(x, y), &up) in &self.upper {
            for z in self.lower_at((x, y))..up {
                cells.insert(Point::new([x, y, z]));
            }
        }
        if cells.is_empty() {
            return Ok(SkewShape::empty(3));
        }
        let shape = SkewShape::from_cells(3, cells)?;
        // The stated conditions admit pairs whose cell set is a translate of
        // an abstract shape (e.g. upper = 2, lower = 1 at the origin alone);
        // reject those explicitly.
        let m = shape.meet()?;
        if m != Point::origin(3) {
            return Err(Error::HeightPair { condition: "meet" });
        }
        Ok(shape)
    }
}

/// A unidirectional (northeast/northwest/southeast/southwest) path from `r`
/// to `s` inside a connected 2-dimensional skew shape, staying within the
/// rectangle defined by `r` and `s`.
pub fn find_unidirectional_path(sigma: &SkewShape, r: &Point, s: &Point) -> Result<Vec<Point>> {
    if sigma.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: sigma.dim(),
        });
    }
    for p in [r, s] {
        if !sigma.contains(p) {
            return Err(Error::NotInShape { point: p.clone() });
        }
    }
    if r == s {
        return Ok(vec![r.clone()]);
    }
    let (r1, r2) = (r.coords()[0], r.coords()[1]);
    let (s1, s2) = (s.coords()[0], s.coords()[1]);
    let lo = (r1.min(s1), r2.min(s2));
    let hi = (r1.max(s1), r2.max(s2));
    let in_rect =
        |p: &Point| -> bool {
            let (x, y) = (p.coords()[0], p.coords()[1]);
            lo.0 <= x && x <= hi.0 && lo.1 <= y && y <= hi.1
        };
    // The step directions are forced by the sign pattern of s − r.
    let mut steps: Vec<(usize, bool)> = Vec::new();
    if s1 != r1 {
        steps.push((0, s1 > r1));
    }
    if s2 != r2 {
        steps.push((1, s2 > r2));
    }
    let mut parent: BTreeMap<Point, Point> = BTreeMap::new();
    let mut queue = VecDeque::new();
    queue.push_back(r.clone());
    parent.insert(r.clone(), r.clone());
    while let Some(p) = queue.pop_front() {
        if &p == s {
            let mut path = vec![s.clone()];
            let mut cur = s.clone();
            while cur != *r {
                cur = parent[&cur].clone();
                path.push(cur.clone());
            }
            path.reverse();
            return Ok(path);
        }
        for &(axis, up) in &steps {
            if let Some(q) = p.step(axis, up) {
                if in_rect(&q) && sigma.contains(&q) && !parent.contains_key(&q) {
                    parent.insert(q.clone(), p.clone());
                    queue.push_back(q);
                }
            }
        }
    }
    // The path lemma guarantees success when r and s share a component.
    if sigma.is_connected() {
        Err(Error::NoPath)
    } else {
        Err(Error::NotConnected)
    }
}

// ---------------------------------------------------------------------------
// JSON encodings: {"n": <int>, "cells": [[c1,...,cn], ...]}, cells sorted.

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ShapeJson {
    n: usize,
    cells: Vec<Point>,
}

impl Serialize for StandardShape {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ShapeJson {
            n: self.n,
            cells: self.cells.iter().cloned().collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for StandardShape {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = ShapeJson::deserialize(de)?;
        StandardShape::from_cells(raw.n, raw.cells.into_iter().collect())
            .map_err(|e| D::Error::custom(e.to_string()))
    }
}

impl Serialize for SkewShape {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ShapeJson {
            n: self.n,
            cells: self.cells.iter().cloned().collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for SkewShape {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = ShapeJson::deserialize(de)?;
        SkewShape::from_cells(raw.n, raw.cells.into_iter().collect())
            .map_err(|e| D::Error::custom(e.to_string()))
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    fn pts<const N: usize>(cells: &[[u32; N]]) -> BTreeSet<Point> {
        cells.iter().map(|c| Point::from(*c)).collect()
    }

    fn skew2(cells: &[[u32; 2]]) -> SkewShape {
        SkewShape::from_cells(2, pts(cells)).unwrap()
    }

    fn skew3(cells: &[[u32; 3]]) -> SkewShape {
        SkewShape::from_cells(3, pts(cells)).unwrap()
    }

    #[test]
    fn meet_of_example_shape() {
        let s = skew2(&[[3, 0], [1, 1], [2, 1], [1, 2]]);
        assert_eq!(s.meet().unwrap(), Point::from([1, 0]));
        assert_eq!(
            skew2(&[[0, 0]]).meet().unwrap(),
            Point::from([0, 0])
        );
        assert_eq!(
            cell_meet(&pts(&[[2, 3, 1], [4, 1, 2]])).unwrap(),
            Point::from([2, 1, 1])
        );
        assert_eq!(cell_meet(&BTreeSet::new()), Err(Error::EmptyShape));
    }

    #[test]
    fn normalize_example_shape() {
        let s = skew2(&[[3, 0], [1, 1], [2, 1], [1, 2]]);
        let t = s.normalized().unwrap();
        assert_eq!(t.cells(), &pts(&[[2, 0], [0, 1], [1, 1], [0, 2]]));
        assert_eq!(t.normalized().unwrap(), t);
        assert_eq!(
            skew3(&[[1, 1, 1]]).normalized().unwrap().cells(),
            &pts(&[[0, 0, 0]])
        );
    }

    #[test]
    fn closure_of_example_shape() {
        let c = StandardShape::closure_of(2, &pts(&[[3, 0], [1, 1], [2, 1], [1, 2]])).unwrap();
        assert_eq!(c.len(), 9);
        // Rows of lengths (4, 3, 2) bottom-up.
        for (row, len) in [(0u32, 4u32), (1, 3), (2, 2)] {
            let got = c.cells().iter().filter(|p| p.coords()[1] == row).count();
            assert_eq!(got as u32, len);
        }
        assert!(StandardShape::closure_of(2, &BTreeSet::new())
            .unwrap()
            .is_empty());
        assert_eq!(
            StandardShape::closure_of(3, &pts(&[[0, 0, 2]])).unwrap().cells(),
            &pts(&[[0, 0, 0], [0, 0, 1], [0, 0, 2]])
        );
    }

    #[test]
    fn skew_shape_predicate() {
        assert!(is_skew_shape(2, &pts(&[[1, 1]])).unwrap());
        assert!(!is_skew_shape(2, &pts(&[[0, 0], [2, 0]])).unwrap());
        // Any standard shape is skew.
        let lam = ideal_to_shape(
            2,
            &[
                Point::from([4, 0]),
                Point::from([3, 1]),
                Point::from([2, 2]),
                Point::from([0, 4]),
            ],
        )
        .unwrap();
        assert!(is_skew_shape(2, lam.cells()).unwrap());
    }

    #[test]
    fn components_of_gluing_example() {
        let zeta = skew2(&[[0, 3], [1, 3], [1, 2], [2, 1], [3, 0]]);
        let comps = zeta.components();
        assert_eq!(comps.len(), 3);
        assert_eq!(comps[0].cells(), &pts(&[[0, 3], [1, 2], [1, 3]]));
        assert_eq!(comps[1].cells(), &pts(&[[2, 1]]));
        assert_eq!(comps[2].cells(), &pts(&[[3, 0]]));

        let std = skew2(&[[0, 0], [1, 0], [0, 1]]);
        assert_eq!(std.components().len(), 1);
        assert_eq!(skew2(&[[1, 0], [0, 1]]).components().len(), 2);
    }

    #[test]
    fn translation_equivalence() {
        let s = skew2(&[[3, 0], [1, 1], [2, 1], [1, 2]]);
        let t = skew2(&[[2, 0], [0, 1], [1, 1], [0, 2]]);
        assert!(s.translation_equivalent(&t));
        assert!(s.translation_equivalent(&s));
        assert!(!skew2(&[[0, 0]]).translation_equivalent(&skew2(&[[0, 0], [1, 0]])));
    }

    /// The 8-cell shape from the bottom-slice discussion, assembled from its
    /// outer and inner standard shapes.
    pub(crate) fn slice_example_shape() -> SkewShape {
        skew3(&[
            [2, 0, 0],
            [2, 0, 1],
            [2, 1, 0],
            [1, 2, 0],
            [2, 2, 0],
            [0, 2, 1],
            [1, 2, 1],
            [0, 2, 2],
        ])
    }

    #[test]
    fn height_functions_of_slice_example() {
        let sigma = slice_example_shape();
        assert!(sigma.is_connected());
        assert!(sigma.is_abstract());
        let hp = sigma.height_functions().unwrap();
        assert_eq!(hp.upper_at((0, 2)), 3);
        assert_eq!(hp.upper_at((1, 2)), 2);
        assert_eq!(hp.lower_at((0, 2)), 1);
        assert_eq!(hp.lower_at((1, 2)), 0);

        let single = skew3(&[[0, 0, 0]]);
        let hp = single.height_functions().unwrap();
        assert_eq!(hp.upper_at((0, 0)), 1);
        assert!(hp.lower.values().all(|&v| v == 0));

        let column = skew3(&[[0, 0, 0], [0, 0, 1]]);
        let hp = column.height_functions().unwrap();
        assert_eq!(hp.upper_at((0, 0)), 2);
    }

    #[test]
    fn height_membership() {
        let hp = slice_example_shape().height_functions().unwrap();
        assert!(hp.contains_cell((0, 2), 1));
        assert!(hp.contains_cell((0, 2), 2));
        assert!(!hp.contains_cell((0, 2), 0));
        assert!(!hp.contains_cell((0, 2), 3));
        assert!(!hp.contains_cell((9, 9), 0));
        let single = skew3(&[[0, 0, 0]]).height_functions().unwrap();
        assert!(single.contains_cell((0, 0), 0));
    }

    #[test]
    fn height_round_trip_and_rejection() {
        for sigma in [
            slice_example_shape(),
            skew3(&[[0, 0, 0]]),
            skew3(&[[0, 0, 1], [1, 0, 0], [1, 0, 1]]),
        ] {
            let hp = sigma.height_functions().unwrap();
            hp.validate(false).unwrap();
            assert_eq!(hp.to_shape().unwrap(), sigma);
        }
        // Zero upper map: the empty shape.
        assert!(HeightPair::default().to_shape().unwrap().is_empty());
        // A floating column is not an abstract shape.
        let mut hp = HeightPair::default();
        hp.upper.insert((0, 0), 2);
        hp.lower.insert((0, 0), 1);
        assert!(matches!(hp.to_shape(), Err(Error::HeightPair { .. })));
    }

    #[test]
    fn unidirectional_paths() {
        let s = skew2(&[[0, 0]]);
        assert_eq!(
            find_unidirectional_path(&s, &Point::from([0, 0]), &Point::from([0, 0])).unwrap(),
            vec![Point::from([0, 0])]
        );

        let rect = skew2(&[[0, 0], [1, 0], [2, 0], [0, 1], [1, 1], [2, 1]]);
        let path =
            find_unidirectional_path(&rect, &Point::from([0, 0]), &Point::from([2, 1])).unwrap();
        assert_eq!(path.len(), 4);
        assert_eq!(path[0], Point::from([0, 0]));
        assert_eq!(path[3], Point::from([2, 1]));

        let nw = skew2(&[[0, 3], [1, 3], [1, 2]]);
        let path =
            find_unidirectional_path(&nw, &Point::from([1, 2]), &Point::from([0, 3])).unwrap();
        assert_eq!(
            path,
            vec![Point::from([1, 2]), Point::from([1, 3]), Point::from([0, 3])]
        );

        let split = skew2(&[[1, 0], [0, 1]]);
        assert!(
            find_unidirectional_path(&split, &Point::from([1, 0]), &Point::from([0, 1])).is_err()
        );
    }

    #[test]
    fn ideal_dictionary() {
        // S/I for I = (x1^4, x1^3 x2, x1^2 x2^2, x2^4): 11 cells with column
        // heights (4, 4, 2, 1).
        let gens = vec![
            Point::from([4, 0]),
            Point::from([3, 1]),
            Point::from([2, 2]),
            Point::from([0, 4]),
        ];
        let lam = ideal_to_shape(2, &gens).unwrap();
        assert_eq!(lam.len(), 11);
        for (col, h) in [(0u32, 4usize), (1, 4), (2, 2), (3, 1)] {
            assert_eq!(
                lam.cells().iter().filter(|p| p.coords()[0] == col).count(),
                h
            );
        }
        let mut sorted_gens = gens.clone();
        sorted_gens.sort();
        assert_eq!(lam.to_ideal(), sorted_gens);

        let origin = ideal_to_shape(
            3,
            &[
                Point::from([1, 0, 0]),
                Point::from([0, 1, 0]),
                Point::from([0, 0, 1]),
            ],
        )
        .unwrap();
        assert_eq!(origin.cells(), &pts(&[[0, 0, 0]]));
        assert_eq!(
            origin.to_ideal(),
            vec![
                Point::from([0, 0, 1]),
                Point::from([0, 1, 0]),
                Point::from([1, 0, 0])
            ]
        );

        let two = ideal_to_shape(2, &[Point::from([2, 0]), Point::from([0, 1])]).unwrap();
        assert_eq!(two.cells(), &pts(&[[0, 0], [1, 0]]));

        assert_eq!(
            ideal_to_shape(2, &[Point::from([1, 1])]),
            Err(Error::InfiniteColength { axis: 1 })
        );

        assert_eq!(
            StandardShape::empty(2).to_ideal(),
            vec![Point::from([0, 0])]
        );
    }
}
