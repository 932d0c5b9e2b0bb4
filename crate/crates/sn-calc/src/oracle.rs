//! Independent test oracles. These deliberately avoid the computation paths
//! they validate: the cokernel dimension here is a pure rank computation on
//! truncations and never touches the involution-based adjoint route.

use std::collections::BTreeMap;

use crate::action::{apply, PolyElement};
use crate::element::Element;
use crate::error::{Result, SnError};
use crate::linalg::{rank, SparseRow};
use crate::monomial::MultiIndex;
use crate::scalar::{self, Scalar};

fn box_monomials(n: usize, d: u32) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    fn rec(n: usize, d: u32, cur: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if cur.len() == n {
            out.push(MultiIndex(cur.clone()));
            return;
        }
        for e in 0..=d {
            cur.push(e);
            rec(n, d, cur, out);
            cur.pop();
        }
    }
    rec(n, d, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Componentwise maximum of (beta - alpha)+ over the terms: feeding sources up
/// to D + reach is enough for any image monomial in the box of side D.
fn source_reach(a: &Element) -> u32 {
    a.terms()
        .map(|(m, _)| {
            m.beta
                .0
                .iter()
                .zip(&m.alpha.0)
                .map(|(b, al)| b.saturating_sub(*al))
                .max()
                .unwrap_or(0)
        })
        .max()
        .unwrap_or(0)
}

/// Rank-based cokernel dimension on truncations: for each target box of side
/// d, the dimension of the box modulo the part of the image landing inside it,
/// computed from two ranks of the source matrix. The value is returned once it
/// is constant for `window` consecutive degrees past the support degree.
pub fn direct_coker_dim(a: &Element, window: u32, cap: u32) -> Result<u32> {
    let n = a.n();
    let reach = source_reach(a) + 1;
    let floor = a.support_degree();
    let mut prev: Option<usize> = None;
    let mut run = 0u32;
    for d in 0..=cap {
        let source = box_monomials(n, d + reach);
        // rows indexed by image monomials; split inside/outside the target box
        let mut rows: BTreeMap<MultiIndex, Vec<(usize, Scalar)>> = BTreeMap::new();
        for (j, gamma) in source.iter().enumerate() {
            let image = apply(a, &PolyElement::monomial(gamma.clone(), scalar::one()))?;
            for (mu, c) in image.terms() {
                rows.entry(mu.clone()).or_default().push((j, c.clone()));
            }
        }
        let all_rows: Vec<SparseRow> = rows
            .values()
            .map(|r| {
                let mut row = r.clone();
                row.sort_by_key(|(c, _)| *c);
                row
            })
            .collect();
        let outside_rows: Vec<SparseRow> = rows
            .iter()
            .filter(|(mu, _)| mu.0.iter().any(|&e| e > d))
            .map(|(_, r)| {
                let mut row = r.clone();
                row.sort_by_key(|(c, _)| *c);
                row
            })
            .collect();
        let r1 = rank(source.len(), all_rows);
        let r2 = rank(source.len(), outside_rows);
        // image vectors supported in the box: r1 - r2 of them
        let box_size = (d as usize + 1).pow(n as u32);
        let coker = box_size - (r1 - r2);
        if d >= floor {
            run = match prev {
                Some(p) if p == coker => run + 1,
                _ => 1,
            };
            prev = Some(coker);
            if run >= window {
                return Ok(coker as u32);
            }
        }
    }
    Err(SnError::NotStabilized { cap, window })
}
