//! Ground truth for the dimension question: build the commuting
//! multiplication matrices of a glued module over a prime field and compute
//! the dimension of the unital algebra they generate by span closure.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gluing::GluingData;
use crate::point::Point;

pub const DEFAULT_PRIME: u64 = 10007;
pub const CHECK_PRIME: u64 = 65537;

/// A dense square matrix over F_p.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct PrimeFieldMatrix {
    p: u64,
    d: usize,
    entries: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    p: u64,
    d: usize,
    entries: Vec<Vec<u64>>,
}

impl From<PrimeFieldMatrix> for MatrixJson {
    fn from(m: PrimeFieldMatrix) -> Self {
        MatrixJson {
            p: m.p,
            d: m.d,
            entries: (0..m.d)
                .map(|i| m.entries[i * m.d..(i + 1) * m.d].to_vec())
                .collect(),
        }
    }
}

impl TryFrom<MatrixJson> for PrimeFieldMatrix {
    type Error = String;
    fn try_from(raw: MatrixJson) -> std::result::Result<Self, String> {
        if raw.entries.len() != raw.d || raw.entries.iter().any(|r| r.len() != raw.d) {
            return Err("entry rows do not match the declared size".into());
        }
        let mut m = PrimeFieldMatrix::zero(raw.p, raw.d).map_err(|e| e.to_string())?;
        for (i, row) in raw.entries.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        Ok(m)
    }
}

impl PrimeFieldMatrix {
    pub fn zero(p: u64, d: usize) -> Result<Self> {
        if !is_prime(p) || p <= d as u64 {
            return Err(Error::BadPrime { p, d });
        }
        Ok(PrimeFieldMatrix {
            p,
            d,
            entries: vec![0; d * d],
        })
    }

    pub fn identity(p: u64, d: usize) -> Result<Self> {
        let mut m = Self::zero(p, d)?;
        for i in 0..d {
            m.entries[i * d + i] = 1;
        }
        Ok(m)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn size(&self) -> usize {
        self.d
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.d + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.entries[i * self.d + j] = v % self.p;
    }

    pub fn mul(&self, other: &PrimeFieldMatrix) -> Result<PrimeFieldMatrix> {
        if self.d != other.d || self.p != other.p {
            return Err(Error::SizeMismatch);
        }
        let d = self.d;
        let mut out = PrimeFieldMatrix::zero(self.p, d)?;
        for i in 0..d {
            for k in 0..d {
                let a = self.entries[i * d + k];
                if a == 0 {
                    continue;
                }
                for j in 0..d {
                    let b = other.entries[k * d + j];
                    if b != 0 {
                        let e = &mut out.entries[i * d + j];
                        *e = (*e + a * b) % self.p;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn commutes_with(&self, other: &PrimeFieldMatrix) -> Result<bool> {
        Ok(self.mul(other)? == other.mul(self)?)
    }

    /// Columns as sparse (row, coeff) lists.
    fn sparse_columns(&self) -> Vec<Vec<(u32, u64)>> {
        let d = self.d;
        let mut cols = vec![Vec::new(); d];
        for i in 0..d {
            for j in 0..d {
                let v = self.entries[i * d + j];
                if v != 0 {
                    cols[j].push((i as u32, v));
                }
            }
        }
        cols
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut f = 2u64;
    while f * f <= p {
        if p % f == 0 {
            return false;
        }
        f += 1;
    }
    true
}

fn modinv(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2) mod p.
    let mut base = a % p;
    let mut exp = p - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Which summand of the glued module a basis vector comes from.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum SideTag {
    Left,
    Right,
}

/// Basis bookkeeping for the glued module: all λ-cells (left, in
/// lexicographic order) followed by the unidentified μ-cells, with the
/// identification of glued right cells recorded separately.
#[derive(Clone, Debug)]
pub struct ModuleBasis {
    pub basis_cells: Vec<(SideTag, Point)>,
    /// Right ξ-cell → left ζ-cell it is glued to.
    pub identification: BTreeMap<Point, Point>,
}

impl ModuleBasis {
    pub fn build(g: &GluingData) -> Result<Self> {
        g.validate()?;
        let mut identification = BTreeMap::new();
        for j in 0..g.components() {
            for cell in g.nu[j].cells() {
                identification.insert(cell.add(&g.c[j]), cell.add(&g.b[j]));
            }
        }
        let mut basis_cells: Vec<(SideTag, Point)> = g
            .lambda
            .cells()
            .iter()
            .map(|p| (SideTag::Left, p.clone()))
            .collect();
        for p in g.mu.cells() {
            if !identification.contains_key(p) {
                basis_cells.push((SideTag::Right, p.clone()));
            }
        }
        Ok(ModuleBasis {
            basis_cells,
            identification,
        })
    }

    pub fn len(&self) -> usize {
        self.basis_cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis_cells.is_empty()
    }
}

/// The multiplication action of the variables on a module basis: per
/// generator, the image index of each basis vector (multiplication by a
/// variable sends basis monomials to basis monomials or to zero).
#[derive(Clone, Debug)]
pub struct ModuleAction {
    pub n: usize,
    pub dim: usize,
    pub maps: Vec<Vec<Option<u32>>>,
}

impl ModuleAction {
    pub fn from_gluing(g: &GluingData) -> Result<(ModuleBasis, Self)> {
        let basis = ModuleBasis::build(g)?;
        let action = Self::from_parts(
            g.n(),
            g.lambda.cells().iter().cloned().collect(),
            g.mu.cells().iter().cloned().collect(),
            &basis.identification,
        );
        Ok((basis, action))
    }

    /// Assembles the action from raw cell lists and the identification map.
    /// `lambda` and `mu` must be downward closed; glued right cells are
    /// folded onto their left representatives.
    pub fn from_parts(
        n: usize,
        mut lambda: Vec<Point>,
        mu: Vec<Point>,
        identification: &BTreeMap<Point, Point>,
    ) -> Self {
        lambda.sort();
        let mut index: BTreeMap<(bool, Point), u32> = BTreeMap::new();
        let mut cells: Vec<(bool, Point)> = Vec::new();
        for p in &lambda {
            index.insert((false, p.clone()), cells.len() as u32);
            cells.push((false, p.clone()));
        }
        let mut right: Vec<Point> = mu
            .iter()
            .filter(|p| !identification.contains_key(*p))
            .cloned()
            .collect();
        right.sort();
        for p in right {
            index.insert((true, p.clone()), cells.len() as u32);
            cells.push((true, p));
        }
        let dim = cells.len();
        let lambda_set: std::collections::BTreeSet<Point> = lambda.into_iter().collect();
        let mu_set: std::collections::BTreeSet<Point> = mu.into_iter().collect();
        let mut maps = vec![vec![None; dim]; n];
        for (idx, (is_right, cell)) in cells.iter().enumerate() {
            for (axis, map) in maps.iter_mut().enumerate() {
                let target = cell.step(axis, true).expect("upward step");
                let entry = if !is_right {
                    lambda_set
                        .contains(&target)
                        .then(|| index[&(false, target.clone())])
                } else if mu_set.contains(&target) {
                    Some(match identification.get(&target) {
                        Some(left) => index[&(false, left.clone())],
                        None => index[&(true, target.clone())],
                    })
                } else {
                    None
                };
                map[idx] = entry;
            }
        }
        ModuleAction { n, dim, maps }
    }

    /// Dimension of the unital algebra generated by the action matrices,
    /// by sparse span closure over F_p.
    pub fn algebra_dimension(&self, p: u64) -> Result<usize> {
        if !is_prime(p) || p <= self.dim as u64 {
            return Err(Error::BadPrime { p, d: self.dim });
        }
        let cols: Vec<Vec<Vec<(u32, u64)>>> = self
            .maps
            .iter()
            .map(|m| {
                m.iter()
                    .map(|t| t.map(|u| vec![(u, 1u64)]).unwrap_or_default())
                    .collect()
            })
            .collect();
        Ok(span_closure_dimension(&cols, self.dim, p))
    }

    pub fn to_matrices(&self, p: u64) -> Result<Vec<PrimeFieldMatrix>> {
        let mut out = Vec::with_capacity(self.n);
        for map in &self.maps {
            let mut m = PrimeFieldMatrix::zero(p, self.dim)?;
            for (v, target) in map.iter().enumerate() {
                if let Some(u) = target {
                    m.set(*u as usize, v, 1);
                }
            }
            out.push(m);
        }
        Ok(out)
    }
}

/// The n multiplication matrices of the module arising from `g`, over F_p.
/// The construction is asserted to commute pairwise.
pub fn module_to_matrices(g: &GluingData, p: u64) -> Result<Vec<PrimeFieldMatrix>> {
    let (_, action) = ModuleAction::from_gluing(g)?;
    let mats = action.to_matrices(p)?;
    for i in 0..mats.len() {
        for j in i + 1..mats.len() {
            if !mats[i].commutes_with(&mats[j])? {
                return Err(Error::NonCommuting { i, j });
            }
        }
    }
    Ok(mats)
}

/// Dimension over F_p of the unital algebra generated by pairwise commuting
/// matrices: span closure starting from the identity, repeatedly
/// left-multiplying new basis elements by the generators and row-reducing
/// until stable. Non-commuting input is rejected.
pub fn algebra_dimension(mats: &[PrimeFieldMatrix]) -> Result<usize> {
    let first = mats.first().ok_or(Error::SizeMismatch)?;
    let (p, d) = (first.p, first.d);
    for m in mats {
        if m.p != p || m.d != d {
            return Err(Error::SizeMismatch);
        }
    }
    for i in 0..mats.len() {
        for j in i + 1..mats.len() {
            if !mats[i].commutes_with(&mats[j])? {
                return Err(Error::NonCommuting { i, j });
            }
        }
    }
    if d == 0 {
        return Ok(0);
    }
    let cols: Vec<Vec<Vec<(u32, u64)>>> = mats.iter().map(|m| m.sparse_columns()).collect();
    Ok(span_closure_dimension(&cols, d, p))
}

/// Row-echelon span closure over sparse vectors indexed by matrix position
/// (row-major). `gen_cols[g][v]` lists the nonzero entries of column v of
/// generator g.
fn span_closure_dimension(gen_cols: &[Vec<Vec<(u32, u64)>>], d: usize, p: u64) -> usize {
    if d == 0 {
        return 0;
    }
    let du = d as u32;
    let mut basis: Vec<Vec<(u32, u64)>> = Vec::new();
    let mut pivots: Vec<(u32, usize)> = Vec::new();

    let reduce = |vec: &mut Vec<(u32, u64)>,
                  basis: &Vec<Vec<(u32, u64)>>,
                  pivots: &Vec<(u32, usize)>| {
        loop {
            let lead = match vec.first() {
                Some(&(pos, _)) => pos,
                None => return,
            };
            let row = match pivots.binary_search_by_key(&lead, |&(pos, _)| pos) {
                Ok(i) => pivots[i].1,
                Err(_) => return,
            };
            let coeff = vec[0].1 % p;
            // vec -= coeff * basis[row]  (basis rows are monic)
            let mut merged = Vec::with_capacity(vec.len() + basis[row].len());
            let (mut a, mut b) = (vec.iter().peekable(), basis[row].iter().peekable());
            while a.peek().is_some() || b.peek().is_some() {
                match (a.peek(), b.peek()) {
                    (Some(&&(pa, va)), Some(&&(pb, vb))) => {
                        if pa < pb {
                            merged.push((pa, va));
                            a.next();
                        } else if pb < pa {
                            merged.push((pb, (p - coeff) * vb % p));
                            b.next();
                        } else {
                            let v = (va + (p - coeff) * vb) % p;
                            if v != 0 {
                                merged.push((pa, v));
                            }
                            a.next();
                            b.next();
                        }
                    }
                    (Some(&&(pa, va)), None) => {
                        merged.push((pa, va));
                        a.next();
                    }
                    (None, Some(&&(pb, vb))) => {
                        merged.push((pb, (p - coeff) * vb % p));
                        b.next();
                    }
                    (None, None) => unreachable!(),
                }
            }
            *vec = merged;
        }
    };

    let insert = |mut vec: Vec<(u32, u64)>,
                      basis: &mut Vec<Vec<(u32, u64)>>,
                      pivots: &mut Vec<(u32, usize)>|
     -> Option<usize> {
        reduce(&mut vec, basis, pivots);
        let &(lead, coeff) = vec.first()?;
        if coeff != 1 {
            let inv = modinv(coeff, p);
            for e in vec.iter_mut() {
                e.1 = e.1 * inv % p;
            }
        }
        basis.push(vec);
        let at = pivots
            .binary_search_by_key(&lead, |&(pos, _)| pos)
            .unwrap_err();
        pivots.insert(at, (lead, basis.len() - 1));
        Some(basis.len() - 1)
    };

    let identity: Vec<(u32, u64)> = (0..du).map(|i| (i * du + i, 1u64)).collect();
    let mut frontier = Vec::new();
    if let Some(idx) = insert(identity, &mut basis, &mut pivots) {
        frontier.push(idx);
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &idx in &frontier {
            for cols in gen_cols {
                // candidate = generator · basis[idx]
                let mut cand: Vec<(u32, u64)> = Vec::new();
                for &(pos, x) in &basis[idx] {
                    let (row, col) = (pos / du, pos % du);
                    for &(i, a) in &cols[row as usize] {
                        cand.push((i * du + col, a * x % p));
                    }
                }
                cand.sort_by_key(|&(pos, _)| pos);
                // merge duplicate positions
                let mut merged: Vec<(u32, u64)> = Vec::with_capacity(cand.len());
                for (pos, v) in cand {
                    match merged.last_mut() {
                        Some(last) if last.0 == pos => {
                            last.1 = (last.1 + v) % p;
                            if last.1 == 0 {
                                merged.pop();
                            }
                        }
                        _ => {
                            if v % p != 0 {
                                merged.push((pos, v % p));
                            }
                        }
                    }
                }
                if let Some(new_idx) = insert(merged, &mut basis, &mut pivots) {
                    next.push(new_idx);
                }
            }
        }
        frontier = next;
    }
    basis.len()
}

/// Outcome of the dimension comparison for one module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GqVerdict {
    pub dim_module: usize,
    pub dim_algebra: usize,
    /// |λ ∪ μ|, the combinatorial prediction for the algebra dimension.
    pub dim_union: usize,
    pub holds: bool,
    pub prime: u64,
}

/// Computes dim N and dim k[A₁,…,Aₙ] for the module arising from `g` and
/// reports whether the dimension bound holds.
pub fn verify_gq(g: &GluingData, p: u64) -> Result<GqVerdict> {
    let (_, action) = ModuleAction::from_gluing(g)?;
    let dim_module = g.dimension();
    debug_assert_eq!(dim_module, action.dim);
    let dim_algebra = action.algebra_dimension(p)?;
    let dim_union = g.lambda.union_len(&g.mu);
    debug_assert_eq!(dim_algebra, dim_union);
    Ok(GqVerdict {
        dim_module,
        dim_algebra,
        dim_union,
        holds: dim_algebra <= dim_module,
        prime: p,
    })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::shape::{SkewShape, StandardShape};

    fn unit(p: u64, d: usize, i: usize, j: usize) -> PrimeFieldMatrix {
        let mut m = PrimeFieldMatrix::zero(p, d).unwrap();
        m.set(i, j, 1);
        m
    }

    #[test]
    fn standard_basis_anchor() {
        // E13, E14, E23, E24 in M4 generate an algebra of dimension 5.
        let mats = vec![
            unit(DEFAULT_PRIME, 4, 0, 2),
            unit(DEFAULT_PRIME, 4, 0, 3),
            unit(DEFAULT_PRIME, 4, 1, 2),
            unit(DEFAULT_PRIME, 4, 1, 3),
        ];
        assert_eq!(algebra_dimension(&mats).unwrap(), 5);
    }

    #[test]
    fn zero_and_jordan() {
        let zeros = vec![
            PrimeFieldMatrix::zero(DEFAULT_PRIME, 6).unwrap(),
            PrimeFieldMatrix::zero(DEFAULT_PRIME, 6).unwrap(),
        ];
        assert_eq!(algebra_dimension(&zeros).unwrap(), 1);

        let d = 5;
        let mut jordan = PrimeFieldMatrix::zero(DEFAULT_PRIME, d).unwrap();
        for i in 0..d - 1 {
            jordan.set(i, i + 1, 1);
        }
        let mats = vec![jordan, PrimeFieldMatrix::zero(DEFAULT_PRIME, d).unwrap()];
        assert_eq!(algebra_dimension(&mats).unwrap(), d);
    }

    #[test]
    fn non_commuting_rejected() {
        let mats = vec![unit(DEFAULT_PRIME, 3, 0, 0), unit(DEFAULT_PRIME, 3, 0, 1)];
        assert!(matches!(
            algebra_dimension(&mats),
            Err(Error::NonCommuting { .. })
        ));
    }

    #[test]
    fn trivial_module_matrices() {
        let origin3 = StandardShape::closure_of(3, &[Point::from([0, 0, 0])]).unwrap();
        let g = GluingData {
            lambda: origin3.clone(),
            mu: origin3,
            nu: vec![],
            b: vec![],
            c: vec![],
        };
        let mats = module_to_matrices(&g, DEFAULT_PRIME).unwrap();
        assert_eq!(mats.len(), 3);
        for m in &mats {
            assert_eq!(m.size(), 2);
            assert_eq!(m, &PrimeFieldMatrix::zero(DEFAULT_PRIME, 2).unwrap());
        }
        let v = verify_gq(&g, DEFAULT_PRIME).unwrap();
        assert_eq!((v.dim_module, v.dim_algebra, v.holds), (2, 1, true));
    }

    #[test]
    fn shift_module_matrices() {
        let lambda = StandardShape::closure_of(2, &[Point::from([1, 0])]).unwrap();
        let mu = StandardShape::closure_of(2, &[Point::from([0, 0])]).unwrap();
        let g = GluingData {
            lambda,
            mu,
            nu: vec![],
            b: vec![],
            c: vec![],
        };
        let mats = module_to_matrices(&g, DEFAULT_PRIME).unwrap();
        // Basis: (0,0)L, (1,0)L, (0,0)R. x1 shifts the left line once.
        assert_eq!(mats[0].get(1, 0), 1);
        assert_eq!(
            mats[0].mul(&mats[0]).unwrap(),
            PrimeFieldMatrix::zero(DEFAULT_PRIME, 3).unwrap()
        );
        assert_eq!(mats[1], PrimeFieldMatrix::zero(DEFAULT_PRIME, 3).unwrap());
    }

    #[test]
    fn n4_remark_module_fails_bound() {
        let g = crate::gluing::tests::n4_module();
        let mats = module_to_matrices(&g, DEFAULT_PRIME).unwrap();
        assert_eq!(mats.len(), 4);
        assert_eq!(mats[0].size(), 4);
        let v = verify_gq(&g, DEFAULT_PRIME).unwrap();
        assert_eq!((v.dim_module, v.dim_algebra), (4, 5));
        assert!(!v.holds);
        let v2 = verify_gq(&g, CHECK_PRIME).unwrap();
        assert_eq!(v2.dim_algebra, 5);
    }

    #[test]
    fn gluing_example_dimensions() {
        let (i, j, k, l) = crate::gluing::tests::example_ideals();
        let gs = crate::gluing::gluings_from_ideals(2, &i, &j, &k, &l).unwrap();
        for g in &gs {
            let v = verify_gq(g, DEFAULT_PRIME).unwrap();
            assert_eq!((v.dim_module, v.dim_algebra, v.dim_union), (17, 12, 12));
            assert!(v.holds);
        }
    }

    #[test]
    fn empty_module_dimension_zero() {
        let g = GluingData {
            lambda: StandardShape::empty(2),
            mu: StandardShape::empty(2),
            nu: vec![],
            b: vec![],
            c: vec![],
        };
        let v = verify_gq(&g, DEFAULT_PRIME).unwrap();
        assert_eq!((v.dim_module, v.dim_algebra), (0, 0));
        assert!(v.holds);
    }

    #[test]
    fn full_gluing_point_module() {
        let origin = StandardShape::closure_of(2, &[Point::from([0, 0])]).unwrap();
        let g = GluingData {
            lambda: origin.clone(),
            mu: origin,
            nu: vec![SkewShape::from_cells(
                2,
                [Point::from([0, 0])].into_iter().collect(),
            )
            .unwrap()],
            b: vec![Point::from([0, 0])],
            c: vec![Point::from([0, 0])],
        };
        let v = verify_gq(&g, DEFAULT_PRIME).unwrap();
        assert_eq!((v.dim_module, v.dim_algebra, v.holds), (1, 1, true));
    }

    #[test]
    fn bad_prime_rejected() {
        assert!(PrimeFieldMatrix::zero(6, 4).is_err());
        assert!(PrimeFieldMatrix::zero(3, 4).is_err());
        assert!(PrimeFieldMatrix::zero(10007, 4).is_ok());
    }
}
