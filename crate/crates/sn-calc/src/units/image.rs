//! Identity-plus-finite-block matrices over a Laurent polynomial ring: the
//! image of 1 + a_{n,s} in the matrix ring of level s over one block
//! coordinate set, and the determinant degree that feeds the lattice
//! homomorphisms.

use std::collections::BTreeMap;

use crate::element::Element;
use crate::error::{Result, SnError};
use crate::ideal::{ideal_member, IdealSpec};
use crate::laurent::{laurent_det, LaurentElement};
use crate::mixed::{to_mixed, CoordSymbol};
use crate::monomial::MultiIndex;
use crate::scalar::Scalar;

/// Matrix indexed by exponent vectors over the block coordinate set `coords`,
/// equal to the identity outside the recorded finite block; entries are
/// Laurent polynomials in the complementary coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentMatrix {
    /// Block coordinate set I (sorted, 1-based).
    pub coords: Vec<usize>,
    /// Complementary coordinates carrying the Laurent variables (sorted).
    pub laurent_coords: Vec<usize>,
    /// Off-identity part: (row, col) over I -> entry delta + block value.
    pub block: BTreeMap<(MultiIndex, MultiIndex), LaurentElement>,
}

impl LaurentMatrix {
    pub fn identity(n: usize, coords: &[usize]) -> Self {
        let mut sorted = coords.to_vec();
        sorted.sort_unstable();
        let laurent_coords: Vec<usize> = (1..=n).filter(|i| !sorted.contains(i)).collect();
        LaurentMatrix { coords: sorted, laurent_coords, block: BTreeMap::new() }
    }

    pub fn nvars(&self) -> usize {
        self.laurent_coords.len()
    }

    pub fn is_identity(&self) -> bool {
        self.block.values().all(LaurentElement::is_zero)
    }

    /// Entry at (row, col) including the implicit identity.
    pub fn entry(&self, row: &MultiIndex, col: &MultiIndex) -> LaurentElement {
        let nv = self.nvars();
        let mut v = self
            .block
            .get(&(row.clone(), col.clone()))
            .cloned()
            .unwrap_or_else(|| LaurentElement::zero(nv));
        if row == col {
            v = &v + &LaurentElement::one(nv);
        }
        v
    }

    /// Index set of the finite block: all row and column labels, sorted.
    pub fn support(&self) -> Vec<MultiIndex> {
        let mut idx: Vec<MultiIndex> = self
            .block
            .keys()
            .flat_map(|(r, c)| [r.clone(), c.clone()])
            .collect();
        idx.sort();
        idx.dedup();
        idx
    }

    /// Product of two identity-plus-block matrices over the same coordinates.
    pub fn mul(&self, other: &LaurentMatrix) -> Result<LaurentMatrix> {
        if self.coords != other.coords {
            return Err(SnError::InvalidArgument("matrix product over different block sets".into()));
        }
        let mut out = LaurentMatrix {
            coords: self.coords.clone(),
            laurent_coords: self.laurent_coords.clone(),
            block: BTreeMap::new(),
        };
        // (1 + A)(1 + B) = 1 + A + B + AB
        for ((r, c), v) in &self.block {
            out.accumulate(r.clone(), c.clone(), v.clone());
        }
        for ((r, c), v) in &other.block {
            out.accumulate(r.clone(), c.clone(), v.clone());
        }
        for ((r1, c1), v1) in &self.block {
            for ((r2, c2), v2) in &other.block {
                if c1 == r2 {
                    out.accumulate(r1.clone(), c2.clone(), v1 * v2);
                }
            }
        }
        out.block.retain(|_, v| !v.is_zero());
        Ok(out)
    }

    fn accumulate(&mut self, row: MultiIndex, col: MultiIndex, val: LaurentElement) {
        if val.is_zero() {
            return;
        }
        let nv = self.nvars();
        let e = self.block.entry((row, col)).or_insert_with(|| LaurentElement::zero(nv));
        *e = &*e + &val;
    }
}

/// Image of u (with u - 1 in a_{n,s}) in the identity-plus-block matrix ring
/// over the block coordinate set `coords` with |coords| = s: mixed terms whose
/// E-type is exactly the block set contribute their complementary factor as a
/// Laurent entry; terms of strictly larger type are dropped (they lie one
/// level deeper), and other types belong to different blocks.
pub fn matrix_image(u: &Element, coords: &[usize]) -> Result<LaurentMatrix> {
    let n = u.n();
    let mut sorted = coords.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != coords.len() || sorted.is_empty() {
        return Err(SnError::InvalidArgument("block coordinates must be a nonempty set".into()));
    }
    for &i in &sorted {
        if i < 1 || i > n {
            return Err(SnError::InvalidArgument(format!("coordinate {i} out of range 1..={n}")));
        }
    }
    let s = sorted.len();
    let diff = u - &Element::one(n);
    if !ideal_member(&diff, &IdealSpec::LevelSum(s))? {
        return Err(SnError::NotInIdeal {
            ideal: format!("a:{s}"),
            detail: "matrix image needs u - 1 in the level ideal of the block size".into(),
        });
    }
    let mut out = LaurentMatrix::identity(n, &sorted);
    let laurent_pos: BTreeMap<usize, usize> =
        out.laurent_coords.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let mixed = to_mixed(&diff);
    for (m, c) in mixed.terms() {
        if m.e_type() != sorted {
            continue;
        }
        let mut row = Vec::with_capacity(s);
        let mut col = Vec::with_capacity(s);
        let mut exps = vec![0i64; out.laurent_coords.len()];
        for (i0, sym) in m.0.iter().enumerate() {
            match sym {
                CoordSymbol::E(a, b) => {
                    row.push(*a);
                    col.push(*b);
                }
                CoordSymbol::One => {}
                CoordSymbol::X(a) => exps[laurent_pos[&(i0 + 1)]] = *a as i64,
                CoordSymbol::Y(b) => exps[laurent_pos[&(i0 + 1)]] = -(*b as i64),
            }
        }
        let val = LaurentElement::monomial(exps, c.clone());
        out.accumulate(MultiIndex(row), MultiIndex(col), val);
    }
    out.block.retain(|_, v| !v.is_zero());
    Ok(out)
}

/// Exact determinant of the finite block. Succeeds only when the determinant
/// is a single monomial unit of the Laurent ring: returns the unit scalar and
/// the exponent vector over the complementary coordinates.
pub fn det_degree(m: &LaurentMatrix) -> Result<(Scalar, Vec<i64>)> {
    let nv = m.nvars();
    let support = m.support();
    let d = support.len();
    if d == 0 {
        return Ok((crate::scalar::one(), vec![0; nv]));
    }
    let mat: Vec<Vec<LaurentElement>> = support
        .iter()
        .map(|r| support.iter().map(|c| m.entry(r, c)).collect())
        .collect();
    let det = laurent_det(&mat)?;
    match det.as_monomial() {
        Some((c, e)) => Ok((c, e)),
        None => Err(SnError::NotMonomialUnit(format!(
            "block determinant {det} over {} variables",
            nv
        ))),
    }
}
