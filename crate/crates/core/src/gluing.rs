//! Combinatorial modules glued from two cyclic monomial quotients along a
//! monomial isomorphism, in the anchored form (λ, μ, ν, 𝐛, 𝐜).

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::point::{translate, Point};
use crate::shape::{ideal_to_shape, SkewShape, StandardShape};

/// Gluing data (λ, μ, ν, 𝐛, 𝐜): two standard shapes, a sequence of connected
/// abstract skew shapes, and anchor vectors placing each piece inside λ and μ.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GluingData {
    pub lambda: StandardShape,
    pub mu: StandardShape,
    pub nu: Vec<SkewShape>,
    pub b: Vec<Point>,
    pub c: Vec<Point>,
}

impl GluingData {
    pub fn n(&self) -> usize {
        self.lambda.dim()
    }

    pub fn components(&self) -> usize {
        self.nu.len()
    }

    /// Total cell count Σ|ν_j|.
    pub fn nu_len(&self) -> usize {
        self.nu.iter().map(|s| s.len()).sum()
    }

    pub fn placed_b(&self, j: usize) -> BTreeSet<Point> {
        translate(self.nu[j].cells(), &self.b[j])
    }

    pub fn placed_c(&self, j: usize) -> BTreeSet<Point> {
        translate(self.nu[j].cells(), &self.c[j])
    }

    /// Checks the gluing conditions: each ν_j is a connected abstract skew
    /// shape, both placements are pairwise disjoint, contained in λ resp. μ,
    /// and closed under ≥ inside them. The error names the first violated
    /// clause with a witness cell.
    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        if self.mu.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: self.mu.dim(),
            });
        }
        if self.nu.len() != self.b.len() || self.nu.len() != self.c.len() {
            return Err(Error::InvalidGluing(format!(
                "lengths differ: {} shapes, {} b-anchors, {} c-anchors",
                self.nu.len(),
                self.b.len(),
                self.c.len()
            )));
        }
        for (j, s) in self.nu.iter().enumerate() {
            if s.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: s.dim(),
                });
            }
            if s.is_empty() || !s.is_abstract() {
                return Err(Error::InvalidGluing(format!(
                    "nu[{j}] is not an abstract skew shape"
                )));
            }
            if !s.is_connected() {
                return Err(Error::InvalidGluing(format!("nu[{j}] is not connected")));
            }
            if self.b[j].dim() != n || self.c[j].dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: self.b[j].dim().min(self.c[j].dim()),
                });
            }
        }
        validate_side(&self.lambda, &self.nu, &self.b, "lambda")?;
        validate_side(&self.mu, &self.nu, &self.c, "mu")?;
        Ok(())
    }

    /// dim_k of the glued module: |λ| + |μ| − |ν|.
    pub fn dimension(&self) -> usize {
        self.lambda.len() + self.mu.len() - self.nu_len()
    }

    /// The dimension inequality fails exactly when |ν| > |λ ∩ μ|.
    pub fn is_counterexample(&self) -> bool {
        self.nu_len() > self.lambda.intersect(&self.mu).len()
    }

    /// Shrinks λ and μ to the closures of the placed pieces. Idempotent, and
    /// it preserves being a counterexample.
    pub fn scaffolded(&self) -> GluingData {
        let n = self.n();
        let b_cells: Vec<Point> = (0..self.nu.len())
            .flat_map(|j| self.placed_b(j).into_iter())
            .collect();
        let c_cells: Vec<Point> = (0..self.nu.len())
            .flat_map(|j| self.placed_c(j).into_iter())
            .collect();
        GluingData {
            lambda: StandardShape::closure_of(n, &b_cells).expect("dims checked"),
            mu: StandardShape::closure_of(n, &c_cells).expect("dims checked"),
            nu: self.nu.clone(),
            b: self.b.clone(),
            c: self.c.clone(),
        }
    }

    /// Is the j-th summand, placed in λ, contained in the ideal (x₃)?
    /// Equivalently: does every placed cell have third coordinate ≥ 1?
    pub fn summand_in_x3(&self, j: usize) -> Result<bool> {
        if self.n() != 3 {
            return Err(Error::DimensionMismatch {
                expected: 3,
                got: self.n(),
            });
        }
        if j >= self.nu.len() {
            return Err(Error::IndexOutOfRange {
                index: j,
                len: self.nu.len(),
            });
        }
        Ok(self.placed_b(j).iter().all(|p| p.coords()[2] >= 1))
    }
}

/// One side of the gluing conditions: pieces disjoint, contained in the
/// ambient standard shape, and closed under ≥ inside it (checked one step at
/// a time, which suffices on a finite poset).
fn validate_side(
    ambient: &StandardShape,
    nu: &[SkewShape],
    anchors: &[Point],
    side: &str,
) -> Result<()> {
    let n = ambient.dim();
    let mut owner: std::collections::BTreeMap<Point, usize> = std::collections::BTreeMap::new();
    for (j, (shape, anchor)) in nu.iter().zip(anchors).enumerate() {
        for cell in shape.cells() {
            let p = cell.add(anchor);
            if !ambient.contains(&p) {
                return Err(Error::InvalidGluing(format!(
                    "piece {j} is not contained in {side}: cell {p}"
                )));
            }
            if let Some(other) = owner.insert(p.clone(), j) {
                return Err(Error::InvalidGluing(format!(
                    "pieces {other} and {j} overlap in {side} at {p}"
                )));
            }
        }
    }
    for (&ref p, &j) in &owner {
        for axis in 0..n {
            let q = p.step(axis, true).expect("upward step");
            if ambient.contains(&q) && owner.get(&q) != Some(&j) {
                return Err(Error::InvalidGluing(format!(
                    "piece {j} is not closed under >= in {side}: {q} lies above {p}"
                )));
            }
        }
    }
    Ok(())
}

/// A monomial module isomorphism between two skew shapes, recorded as a
/// matching of connected components acting by translation.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct IsoMatching {
    /// `permutation[i]` is the index (in canonical component order of ξ) of
    /// the component matched with the i-th component of ζ.
    pub permutation: Vec<usize>,
    /// Translation vector per ζ-component (may be negative).
    pub shifts: Vec<Vec<i64>>,
}

/// All monomial module isomorphisms ζ → ξ: bijections between connected
/// components that match translation-equivalence classes. The count is the
/// product of the class multiplicities' factorials, and is zero exactly when
/// the class multisets differ.
pub fn enumerate_monomial_isos(zeta: &SkewShape, xi: &SkewShape) -> Vec<IsoMatching> {
    let zc = zeta.components();
    let xc = xi.components();
    if zc.len() != xc.len() {
        return Vec::new();
    }
    let n = zeta.dim();
    if zc.is_empty() {
        return vec![IsoMatching {
            permutation: Vec::new(),
            shifts: Vec::new(),
        }];
    }
    // Group ζ components by translation class, and find the matching ξ
    // candidates for each class.
    let mut classes: Vec<(SkewShape, Vec<usize>, Vec<usize>)> = Vec::new();
    'outer: for (i, comp) in zc.iter().enumerate() {
        let norm = comp.normalized().expect("component nonempty");
        for (repr, zi, _) in classes.iter_mut() {
            if repr.cells() == norm.cells() {
                zi.push(i);
                continue 'outer;
            }
        }
        classes.push((norm, vec![i], Vec::new()));
    }
    for (k, comp) in xc.iter().enumerate() {
        let norm = comp.normalized().expect("component nonempty");
        match classes
            .iter_mut()
            .find(|(repr, _, _)| repr.cells() == norm.cells())
        {
            Some((_, _, xs)) => xs.push(k),
            None => return Vec::new(),
        }
    }
    if classes.iter().any(|(_, zi, xs)| zi.len() != xs.len()) {
        return Vec::new();
    }

    // Cartesian product over classes of all assignments within the class.
    let mut partial: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
    for (_, zi, xs) in &classes {
        let perms = permutations(xs);
        let mut next = Vec::with_capacity(partial.len() * perms.len());
        for assignment in &partial {
            for perm in &perms {
                let mut a = assignment.clone();
                a.extend(zi.iter().copied().zip(perm.iter().copied()));
                next.push(a);
            }
        }
        partial = next;
    }

    let mut out: Vec<IsoMatching> = partial
        .into_iter()
        .map(|pairs| {
            let mut permutation = vec![0usize; zc.len()];
            let mut shifts = vec![Vec::new(); zc.len()];
            for (zi, xk) in pairs {
                permutation[zi] = xk;
                let zm = zc[zi].meet().expect("nonempty");
                let xm = xc[xk].meet().expect("nonempty");
                shifts[zi] = (0..n)
                    .map(|d| xm.coords()[d] as i64 - zm.coords()[d] as i64)
                    .collect();
            }
            IsoMatching {
                permutation,
                shifts,
            }
        })
        .collect();
    out.sort_by(|a, b| a.permutation.cmp(&b.permutation));
    out
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, x);
            out.push(tail);
        }
    }
    out
}

/// The ℕⁿ-graded indecomposable decomposition of a monomial subquotient:
/// exactly the connected components, each reported normalized with its
/// embedding anchor.
pub fn indecomposable_decomposition(k_over_i: &SkewShape) -> Vec<(SkewShape, Point)> {
    k_over_i
        .components()
        .into_iter()
        .map(|c| {
            let anchor = c.meet().expect("component nonempty");
            (c.normalized().expect("component nonempty"), anchor)
        })
        .collect()
}

/// Builds every gluing datum arising from monomial ideals I ⊆ K and J ⊆ L of
/// finite colength, one per monomial isomorphism K/I ≅ L/J. Components of
/// K/I are taken in canonical order; the 𝐜 anchors record the matching.
pub fn gluings_from_ideals(
    n: usize,
    i_gens: &[Point],
    j_gens: &[Point],
    k_gens: &[Point],
    l_gens: &[Point],
) -> Result<Vec<GluingData>> {
    let lambda = ideal_to_shape(n, i_gens)?;
    let mu = ideal_to_shape(n, j_gens)?;
    let shape_k = ideal_to_shape(n, k_gens)?;
    let shape_l = ideal_to_shape(n, l_gens)?;
    if !shape_k.cells().is_subset(lambda.cells()) {
        return Err(Error::InvalidGluing("I is not contained in K".into()));
    }
    if !shape_l.cells().is_subset(mu.cells()) {
        return Err(Error::InvalidGluing("J is not contained in L".into()));
    }
    let zeta = SkewShape::from_difference(&lambda, &shape_k)?;
    let xi = SkewShape::from_difference(&mu, &shape_l)?;

    let zc = zeta.components();
    let xc = xi.components();
    let isos = enumerate_monomial_isos(&zeta, &xi);
    let mut out = Vec::with_capacity(isos.len());
    for iso in isos {
        let mut nu = Vec::with_capacity(zc.len());
        let mut b = Vec::with_capacity(zc.len());
        let mut c = Vec::with_capacity(zc.len());
        for (zi, comp) in zc.iter().enumerate() {
            nu.push(comp.normalized().expect("nonempty"));
            b.push(comp.meet().expect("nonempty"));
            c.push(xc[iso.permutation[zi]].meet().expect("nonempty"));
        }
        let g = GluingData {
            lambda: lambda.clone(),
            mu: mu.clone(),
            nu,
            b,
            c,
        };
        g.validate()?;
        out.push(g);
    }
    Ok(out)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    fn pt2(x: u32, y: u32) -> Point {
        Point::from([x, y])
    }

    /// I, J, K, L of the two-isomorphism gluing example.
    pub(crate) fn example_ideals() -> (Vec<Point>, Vec<Point>, Vec<Point>, Vec<Point>) {
        let i = vec![pt2(4, 0), pt2(3, 1), pt2(2, 2), pt2(0, 4)];
        let j = vec![pt2(4, 0), pt2(3, 1), pt2(1, 3), pt2(0, 4)];
        // (x1, x2)^3
        let k = vec![pt2(3, 0), pt2(2, 1), pt2(1, 2), pt2(0, 3)];
        (i, j, k.clone(), k)
    }

    #[test]
    fn gluing_example_has_two_isos() {
        let (i, j, k, l) = example_ideals();
        let gs = gluings_from_ideals(2, &i, &j, &k, &l).unwrap();
        assert_eq!(gs.len(), 2);
        for g in &gs {
            assert_eq!(g.b, vec![pt2(0, 2), pt2(2, 1), pt2(3, 0)]);
            g.validate().unwrap();
            assert_eq!(g.dimension(), 17);
            assert!(!g.is_counterexample());
            assert_eq!(g.lambda.intersect(&g.mu).len(), 10);
        }
        let mut cs: Vec<Vec<Point>> = gs.iter().map(|g| g.c.clone()).collect();
        cs.sort();
        assert_eq!(
            cs,
            vec![
                vec![pt2(1, 1), pt2(0, 3), pt2(3, 0)],
                vec![pt2(1, 1), pt2(3, 0), pt2(0, 3)],
            ]
        );
    }

    #[test]
    fn iso_counts() {
        let (i, _, k, _) = example_ideals();
        let lambda = ideal_to_shape(2, &i).unwrap();
        let shape_k = ideal_to_shape(2, &k).unwrap();
        let zeta = SkewShape::from_difference(&lambda, &shape_k).unwrap();
        // Identity case: one matching per class-preserving bijection.
        assert_eq!(enumerate_monomial_isos(&zeta, &zeta).len(), 2);

        let single = SkewShape::from_cells(2, [pt2(0, 0)].into_iter().collect()).unwrap();
        let isos = enumerate_monomial_isos(&single, &single);
        assert_eq!(isos.len(), 1);
        assert_eq!(isos[0].shifts, vec![vec![0, 0]]);

        // Class multisets differ: A,A,B versus A,B,B.
        let aab = SkewShape::from_cells(
            2,
            [pt2(0, 2), pt2(2, 1), pt2(3, 0), pt2(4, 0)]
                .into_iter()
                .collect(),
        )
        .unwrap();
        let abb = SkewShape::from_cells(
            2,
            [pt2(0, 3), pt2(1, 2), pt2(2, 1), pt2(4, 0)]
                .into_iter()
                .collect(),
        )
        .unwrap();
        assert_eq!(enumerate_monomial_isos(&aab, &abb).len(), 0);
    }

    #[test]
    fn validation_catches_overlap() {
        let (i, j, k, l) = example_ideals();
        let mut g = gluings_from_ideals(2, &i, &j, &k, &l).unwrap().remove(0);
        g.b[2] = g.b[1].clone();
        assert!(matches!(g.validate(), Err(Error::InvalidGluing(msg)) if msg.contains("overlap")));
    }

    #[test]
    fn validation_catches_escape_and_closure() {
        let (i, j, k, l) = example_ideals();
        let mut g = gluings_from_ideals(2, &i, &j, &k, &l).unwrap().remove(0);
        g.b[2] = pt2(9, 9);
        assert!(matches!(g.validate(), Err(Error::InvalidGluing(msg)) if msg.contains("contained")));

        let mut g2 = gluings_from_ideals(2, &i, &j, &k, &l).unwrap().remove(0);
        g2.b[2] = pt2(2, 0); // (3,0) in lambda now sits above the piece
        assert!(
            matches!(g2.validate(), Err(Error::InvalidGluing(msg)) if msg.contains("closed under"))
        );
    }

    #[test]
    fn empty_gluing_is_valid() {
        let origin = StandardShape::closure_of(2, &[pt2(0, 0)]).unwrap();
        let g = GluingData {
            lambda: origin.clone(),
            mu: origin,
            nu: vec![],
            b: vec![],
            c: vec![],
        };
        g.validate().unwrap();
        assert_eq!(g.dimension(), 2);
        assert!(!g.is_counterexample());
        let s = g.scaffolded();
        assert!(s.lambda.is_empty() && s.mu.is_empty());
    }

    #[test]
    fn full_gluing_of_two_points() {
        let origin = StandardShape::closure_of(2, &[pt2(0, 0)]).unwrap();
        let g = GluingData {
            lambda: origin.clone(),
            mu: origin,
            nu: vec![SkewShape::from_cells(2, [pt2(0, 0)].into_iter().collect()).unwrap()],
            b: vec![pt2(0, 0)],
            c: vec![pt2(0, 0)],
        };
        g.validate().unwrap();
        assert_eq!(g.dimension(), 1);
    }

    /// The four-variable module that fails the dimension bound.
    pub(crate) fn n4_module() -> GluingData {
        let e = |axis: usize| {
            let mut c = [0u32; 4];
            c[axis] = 1;
            Point::from(c)
        };
        let lambda =
            StandardShape::closure_of(4, &[e(0), e(1)]).unwrap();
        let mu = StandardShape::closure_of(4, &[e(2), e(3)]).unwrap();
        let point = SkewShape::from_cells(4, [Point::from([0u32, 0, 0, 0])].into_iter().collect())
            .unwrap();
        GluingData {
            lambda,
            mu,
            nu: vec![point.clone(), point],
            b: vec![e(0), e(1)],
            c: vec![e(2), e(3)],
        }
    }

    #[test]
    fn n4_module_is_counterexample() {
        let g = n4_module();
        g.validate().unwrap();
        assert_eq!(g.dimension(), 4);
        assert_eq!(g.lambda.intersect(&g.mu).len(), 1);
        assert!(g.is_counterexample());
    }

    #[test]
    fn scaffold_shrinks_example() {
        // λ with column data {3,3,1},{2,1},{2} shrinks to {3,3},{2},{2}.
        let heights = |cols: &[(u32, u32, u32)]| -> StandardShape {
            let mut cells = BTreeSet::new();
            for &(x, y, h) in cols {
                for z in 0..h {
                    cells.insert(Point::from([x, y, z]));
                }
            }
            StandardShape::from_cells(3, cells).unwrap()
        };
        let lambda = heights(&[
            (0, 0, 3),
            (1, 0, 3),
            (2, 0, 1),
            (0, 1, 2),
            (1, 1, 1),
            (0, 2, 2),
        ]);
        let nu1 = SkewShape::from_cells(
            3,
            [
                Point::from([0u32, 0, 1]),
                Point::from([1u32, 0, 0]),
                Point::from([1u32, 0, 1]),
            ]
            .into_iter()
            .collect(),
        )
        .unwrap();
        let nu2 =
            SkewShape::from_cells(3, [Point::from([0u32, 0, 0])].into_iter().collect()).unwrap();
        let g = GluingData {
            lambda: lambda.clone(),
            mu: lambda,
            nu: vec![nu1, nu2],
            b: vec![Point::from([0, 0, 1]), Point::from([0, 2, 1])],
            c: vec![Point::from([0, 0, 1]), Point::from([0, 2, 1])],
        };
        g.validate().unwrap();
        let s = g.scaffolded();
        s.validate().unwrap();
        let expect = heights(&[(0, 0, 3), (1, 0, 3), (0, 1, 2), (0, 2, 2)]);
        assert_eq!(s.lambda, expect);
        assert_eq!(s.scaffolded(), s);
        assert_eq!((s.nu, s.b, s.c), (g.nu, g.b, g.c));
    }

    #[test]
    fn decomposition_counts() {
        let (i, _, k, _) = example_ideals();
        let lambda = ideal_to_shape(2, &i).unwrap();
        let shape_k = ideal_to_shape(2, &k).unwrap();
        let zeta = SkewShape::from_difference(&lambda, &shape_k).unwrap();
        assert_eq!(indecomposable_decomposition(&zeta).len(), 3);

        let connected = SkewShape::from_cells(2, [pt2(0, 0), pt2(1, 0)].into_iter().collect())
            .unwrap();
        assert_eq!(indecomposable_decomposition(&connected).len(), 1);

        let two = SkewShape::from_cells(2, [pt2(1, 0), pt2(0, 1)].into_iter().collect()).unwrap();
        assert_eq!(indecomposable_decomposition(&two).len(), 2);
    }

    #[test]
    fn summand_x3_membership() {
        let point = SkewShape::from_cells(3, [Point::from([0u32, 0, 0])].into_iter().collect())
            .unwrap();
        let col = StandardShape::closure_of(3, &[Point::from([0, 0, 1])]).unwrap();
        let g = GluingData {
            lambda: col.clone(),
            mu: col,
            nu: vec![point],
            b: vec![Point::from([0, 0, 1])],
            c: vec![Point::from([0, 0, 1])],
        };
        g.validate().unwrap();
        assert!(g.summand_in_x3(0).unwrap());
        assert!(matches!(
            g.summand_in_x3(1),
            Err(Error::IndexOutOfRange { .. })
        ));

        let flat = StandardShape::closure_of(3, &[Point::from([0, 0, 0])]).unwrap();
        let g2 = GluingData {
            lambda: flat.clone(),
            mu: flat,
            nu: vec![SkewShape::from_cells(
                3,
                [Point::from([0u32, 0, 0])].into_iter().collect(),
            )
            .unwrap()],
            b: vec![Point::from([0, 0, 0])],
            c: vec![Point::from([0, 0, 0])],
        };
        assert!(!g2.summand_in_x3(0).unwrap());
    }
}
