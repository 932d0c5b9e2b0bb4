//! Exact inversion routines: the finite-matrix case (units congruent to 1
//! modulo the matrix ideal), the one-block case (1 + p_{Ci}, inverted through
//! the Laurent quotient with a finite correction), and the general chain used
//! by the CLI. Failures certify non-units rather than guessing.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::element::Element;
use crate::error::{Result, SnError};
use crate::ideal::{ideal_member, IdealSpec};
use crate::laurent::{laurent_det, laurent_image_full, LaurentElement};
use crate::linalg::invert_dense;
use crate::mixed::{to_mixed, CoordSymbol};
use crate::monomial::MultiIndex;
use crate::scalar::{self, Scalar};
use crate::units::image::matrix_image;

/// Invert u with u - 1 in the matrix ideal by inverting the finite
/// coefficient block over the rationals.
pub fn invert_one_plus_matrix_ideal(u: &Element) -> Result<Element> {
    let n = u.n();
    let diff = u - &Element::one(n);
    if !ideal_member(&diff, &IdealSpec::MatrixIdeal)? {
        return Err(SnError::NotInIdeal {
            ideal: "F".into(),
            detail: "finite-block inversion needs u - 1 in the matrix ideal".into(),
        });
    }
    if diff.is_zero() {
        return Ok(Element::one(n));
    }
    // coefficient block in the matrix-unit basis
    let mixed = to_mixed(&diff);
    let mut entries: BTreeMap<(MultiIndex, MultiIndex), Scalar> = BTreeMap::new();
    let mut labels: Vec<MultiIndex> = Vec::new();
    for (m, c) in mixed.terms() {
        let mut row = Vec::with_capacity(n);
        let mut col = Vec::with_capacity(n);
        for sym in &m.0 {
            match sym {
                CoordSymbol::E(a, b) => {
                    row.push(*a);
                    col.push(*b);
                }
                _ => unreachable!("membership check guarantees full E-type"),
            }
        }
        let (row, col) = (MultiIndex(row), MultiIndex(col));
        labels.push(row.clone());
        labels.push(col.clone());
        *entries.entry((row, col)).or_insert_with(scalar::zero) += c.clone();
    }
    labels.sort();
    labels.dedup();
    let d = labels.len();
    let pos: BTreeMap<&MultiIndex, usize> = labels.iter().enumerate().map(|(k, m)| (m, k)).collect();
    let mut mat: Vec<Vec<Scalar>> = (0..d)
        .map(|i| (0..d).map(|j| if i == j { scalar::one() } else { scalar::zero() }).collect())
        .collect();
    for ((r, c), v) in &entries {
        mat[pos[r]][pos[c]] += v.clone();
    }
    let inv = invert_dense(&mat)
        .ok_or_else(|| SnError::NotAUnit("finite coefficient block is singular".into()))?;
    let coords: Vec<usize> = (1..=n).collect();
    let mut out = Element::one(n);
    for (i, r) in labels.iter().enumerate() {
        for (j, c) in labels.iter().enumerate() {
            let mut v = inv[i][j].clone();
            if i == j {
                v -= scalar::one();
            }
            if v.is_zero() {
                continue;
            }
            let unit = Element::matrix_unit(n, &coords, &r.0, &c.0)?;
            out = &out + &unit.scale(&v);
        }
    }
    debug_assert!((&out * u).is_one() && (u * &out).is_one());
    Ok(out)
}

fn lift_laurent(n: usize, coord: usize, v: &LaurentElement) -> Element {
    // one Laurent variable: x^k lifts to x^k for k >= 0 and to y^{-k} below
    let mut out = Element::zero(n);
    for (e, c) in v.terms() {
        let k = e[0];
        let m = if k >= 0 {
            Element::var_x(n, coord).pow(k as u32)
        } else {
            Element::var_y(n, coord).pow((-k) as u32)
        };
        out = &out + &m.scale(c);
    }
    out
}

/// Invert u with u - 1 in p_{Ci} (every mixed term matrix-type away from
/// coordinate i). The block image over the Laurent ring of coordinate i must
/// have a degree-zero monomial determinant; its adjugate inverse is lifted
/// back and the finite-rank discrepancy is fixed by a matrix-ideal inversion.
pub fn invert_one_plus_block(u: &Element, i: usize) -> Result<Element> {
    let n = u.n();
    if n < 2 {
        return invert_one_plus_matrix_ideal(u);
    }
    if i < 1 || i > n {
        return Err(SnError::InvalidArgument(format!("coordinate {i} out of range 1..={n}")));
    }
    let block_coords: Vec<usize> = (1..=n).filter(|&k| k != i).collect();
    let diff = u - &Element::one(n);
    if !ideal_member(&diff, &IdealSpec::PrimeSet(block_coords.clone()))? {
        return Err(SnError::NotInIdeal {
            ideal: format!("p:{block_coords:?}"),
            detail: "one-block inversion needs u - 1 matrix-type off the given coordinate".into(),
        });
    }
    let m = matrix_image(u, &block_coords)?;
    let support = m.support();
    let d = support.len();
    if d == 0 {
        // u - 1 lies entirely in the matrix ideal
        return invert_one_plus_matrix_ideal(u);
    }
    let mat: Vec<Vec<LaurentElement>> = support
        .iter()
        .map(|r| support.iter().map(|c| m.entry(r, c)).collect())
        .collect();
    let det = laurent_det(&mat)?;
    let Some((lambda, degs)) = det.as_monomial() else {
        return Err(SnError::NotAUnit(format!(
            "block determinant over the Laurent ring is {det}, not a monomial unit"
        )));
    };
    if degs.iter().any(|&k| k != 0) {
        return Err(SnError::NotAUnit(format!(
            "block determinant has degree {degs:?}; a unit needs degree zero"
        )));
    }
    // adjugate inverse: the determinant is the scalar lambda, so entries of
    // the inverse are cofactors divided by lambda
    let mut inv: Vec<Vec<LaurentElement>> = vec![vec![LaurentElement::zero(1); d]; d];
    for r in 0..d {
        for c in 0..d {
            let mut cof = if d == 1 {
                LaurentElement::one(1)
            } else {
                let minor: Vec<Vec<LaurentElement>> = (0..d)
                    .filter(|&rr| rr != c)
                    .map(|rr| {
                        (0..d)
                            .filter(|&cc| cc != r)
                            .map(|cc| mat[rr][cc].clone())
                            .collect()
                    })
                    .collect();
                laurent_det(&minor)?
            };
            if (r + c) % 2 == 1 {
                cof = cof.neg();
            }
            let mut scaled = LaurentElement::zero(1);
            for (e, k) in cof.terms() {
                scaled.add_term(e.clone(), k / &lambda);
            }
            inv[r][c] = scaled;
        }
    }
    // lift the inverse image back: v = 1 + sum (inv - id)[r][c] E_{r c}(block)
    let mut v = Element::one(n);
    for (ri, r) in support.iter().enumerate() {
        for (ci, c) in support.iter().enumerate() {
            let mut entry = inv[ri][ci].clone();
            if ri == ci {
                entry = &entry - &LaurentElement::one(1);
            }
            if entry.is_zero() {
                continue;
            }
            let unit = Element::matrix_unit(n, &block_coords, &r.0, &c.0)?;
            v = &v + &(&lift_laurent(n, i, &entry) * &unit);
        }
    }
    // fix the finite-rank discrepancy
    let g = &(u * &v) - &Element::one(n);
    if !ideal_member(&g, &IdealSpec::MatrixIdeal)? {
        return Err(SnError::NotAUnit(
            "Laurent correction left a residue outside the matrix ideal".into(),
        ));
    }
    let tail = invert_one_plus_matrix_ideal(&(&Element::one(n) + &g))
        .map_err(|_| SnError::NotAUnit("finite block is singular after the Laurent correction".into()))?;
    let inv_el = &v * &tail;
    if !(&inv_el * u).is_one() || !(u * &inv_el).is_one() {
        return Err(SnError::NotAUnit("candidate inverse failed the exact product check".into()));
    }
    Ok(inv_el)
}

/// General inversion chain: strip the scalar unit factor (the full Laurent
/// image must be a degree-zero monomial, otherwise the element is certified
/// not a unit), then use the finite-block route when 1 - u/lambda is
/// matrix-type, or the top-level factorization when it sits at level n-1.
/// Deeper levels have no constructive factorization and are refused.
pub fn invert_element(u: &Element) -> Result<Element> {
    let n = u.n();
    if u.is_zero() {
        return Err(SnError::NotAUnit("zero is not a unit".into()));
    }
    let img = laurent_image_full(u);
    let Some((lambda, degs)) = img.as_monomial() else {
        return Err(SnError::NotAUnit(format!(
            "image in the Laurent quotient is {img}, not a monomial unit"
        )));
    };
    if degs.iter().any(|&k| k != 0) {
        return Err(SnError::NotAUnit(format!(
            "image in the Laurent quotient has degree {degs:?}; units map to scalars"
        )));
    }
    let v = u.scale(&lambda.recip());
    let inv_v = if v.is_one() {
        Element::one(n)
    } else if ideal_member(&(&v - &Element::one(n)), &IdealSpec::MatrixIdeal)? {
        invert_one_plus_matrix_ideal(&v)?
    } else if n >= 2 && ideal_member(&(&v - &Element::one(n)), &IdealSpec::LevelSum(n - 1))? {
        let fact = crate::units::factor::factor_ann1(&v)?;
        fact.inverse_element()?
    } else {
        return Err(SnError::Unsupported(
            "no constructive inversion below level n-1; only scalars, finite blocks, and the top \
             proper level are handled"
                .into(),
        ));
    };
    Ok(inv_v.scale(&lambda.recip()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn nilpotent_elementary() {
        let n = 1;
        let u = &Element::one(n) + &Element::matrix_unit(n, &[1], &[0], &[1]).unwrap();
        let inv = invert_one_plus_matrix_ideal(&u).unwrap();
        assert_eq!(inv, &Element::one(n) - &Element::matrix_unit(n, &[1], &[0], &[1]).unwrap());
    }

    #[test]
    fn xy_is_not_a_unit() {
        let n = 1;
        // 1 - E_00 = x y: the finite block is singular
        let u = &Element::one(n) - &Element::matrix_unit(n, &[1], &[0], &[0]).unwrap();
        assert!(matches!(invert_one_plus_matrix_ideal(&u), Err(SnError::NotAUnit(_))));
        assert!(matches!(invert_element(&u), Err(SnError::NotAUnit(_))));
    }

    #[test]
    fn random_elementary_products() {
        let n = 2;
        let atoms = [
            (&[1usize, 2][..], [0u32, 1], [1u32, 0], int(2)),
            (&[1, 2][..], [1, 1], [0, 0], rat(1, 3)),
            (&[1, 2][..], [0, 0], [2, 1], int(-1)),
        ];
        let mut u = Element::one(n);
        for (coords, a, b, c) in &atoms {
            let e = Element::matrix_unit(n, coords, a, b).unwrap().scale(c);
            u = &u * &(&Element::one(n) + &e);
        }
        let inv = invert_one_plus_matrix_ideal(&u).unwrap();
        assert!((&u * &inv).is_one() && (&inv * &u).is_one());
    }

    #[test]
    fn block_inversion_through_laurent() {
        let n = 2;
        // u = (1 + y_1 E_{01}(2)) (1 + x_1 E_{10}(2)): invertible with mixing
        let e01 = Element::matrix_unit(n, &[2], &[0], &[1]).unwrap();
        let e10 = Element::matrix_unit(n, &[2], &[1], &[0]).unwrap();
        let u = &(&Element::one(n) + &(&Element::var_y(n, 1) * &e01))
            * &(&Element::one(n) + &(&Element::var_x(n, 1) * &e10));
        let inv = invert_one_plus_block(&u, 1).unwrap();
        assert!((&u * &inv).is_one() && (&inv * &u).is_one());
    }

    #[test]
    fn injective_non_unit_is_refused() {
        let n = 2;
        // mu_{\{2\}}(x_1) is injective but not a unit: determinant degree 1
        let u = crate::units::mu(n, &[2], &Element::var_x(n, 1)).unwrap();
        assert!(matches!(invert_one_plus_block(&u, 1), Err(SnError::NotAUnit(_))));
    }

    #[test]
    fn scalar_factor_is_stripped() {
        let n = 1;
        let u = Element::scalar(n, rat(-3, 7));
        assert_eq!(invert_element(&u).unwrap(), Element::scalar(n, rat(-7, 3)));
        // x is not a unit: Laurent image has degree 1
        assert!(matches!(invert_element(&Element::var_x(n, 1)), Err(SnError::NotAUnit(_))));
    }
}
