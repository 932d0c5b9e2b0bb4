//! Unit-group machinery: the mu and theta constructors, generator words with
//! closed-form inverses, finite-matrix inversion, Laurent matrix images with
//! determinant degrees, the lattice homomorphisms, constructive factorization
//! over the top proper level, and the commutator identity suite.

pub mod factor;
pub mod identities;
pub mod image;
pub mod invert;
pub mod lattice;
pub mod words;

pub use factor::{factor_ann1, FactorAnn1};
pub use identities::{commutator_identities_suite, IdentityCheck};
pub use image::{det_degree, matrix_image, LaurentMatrix};
pub use invert::{invert_element, invert_one_plus_block, invert_one_plus_matrix_ideal};
pub use lattice::{chi, psi_prime, LatticeVector};
pub use words::{Atom, ElemCoeff, MuPayload, Word};

use crate::element::Element;
use crate::error::{Result, SnError};

fn validate_coords(n: usize, coords: &[usize], what: &str) -> Result<Vec<usize>> {
    if coords.is_empty() {
        return Err(SnError::InvalidArgument(format!("{what} needs a nonempty coordinate set")));
    }
    let mut sorted = coords.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != coords.len() {
        return Err(SnError::InvalidArgument(format!("{what}: repeated coordinate")));
    }
    for &i in &sorted {
        if i < 1 || i > n {
            return Err(SnError::InvalidArgument(format!("{what}: coordinate {i} out of range 1..={n}")));
        }
    }
    Ok(sorted)
}

/// mu_I(u) = u * E_00(I) + 1 - E_00(I). The payload must avoid the
/// coordinates of I (it lives in the complementary tensor factor).
pub fn mu(n: usize, coords: &[usize], payload: &Element) -> Result<Element> {
    let sorted = validate_coords(n, coords, "mu")?;
    if payload.n() != n {
        return Err(SnError::DimensionMismatch { expected: n, found: payload.n() });
    }
    for (m, _) in payload.terms() {
        for &i in &sorted {
            if m.alpha.0[i - 1] != 0 || m.beta.0[i - 1] != 0 {
                return Err(SnError::InvalidArgument(format!(
                    "mu payload must not involve coordinate {i} of the pinched set"
                )));
            }
        }
    }
    let e = Element::e_set(n, &sorted)?;
    let scaled = payload * &e;
    Ok(&scaled + &(&Element::one(n) - &e))
}

/// Scalar mu_I(lambda): lambda E_00(I) + 1 - E_00(I).
pub fn mu_scalar(n: usize, coords: &[usize], lambda: &crate::scalar::Scalar) -> Result<Element> {
    use num_traits::Zero;
    if lambda.is_zero() {
        return Err(SnError::InvalidArgument("mu scaling needs a nonzero scalar".into()));
    }
    mu(n, coords, &Element::scalar(n, lambda.clone()))
}

/// theta_{ij}(J) = mu_{J\i}(y_i) * mu_{J\j}(x_j), for distinct i, j in J with
/// |J| >= 2. A unit that is the product of two one-sided non-units.
pub fn theta(n: usize, j_set: &[usize], i: usize, j: usize) -> Result<Element> {
    let sorted = validate_coords(n, j_set, "theta")?;
    if sorted.len() < 2 {
        return Err(SnError::InvalidArgument("theta needs a set with at least two coordinates".into()));
    }
    if i == j {
        return Err(SnError::InvalidArgument("theta needs two distinct coordinates".into()));
    }
    if !sorted.contains(&i) || !sorted.contains(&j) {
        return Err(SnError::InvalidArgument("theta coordinates must lie in the set".into()));
    }
    let minus_i: Vec<usize> = sorted.iter().copied().filter(|&k| k != i).collect();
    let minus_j: Vec<usize> = sorted.iter().copied().filter(|&k| k != j).collect();
    let left = mu(n, &minus_i, &Element::var_y(n, i))?;
    let right = mu(n, &minus_j, &Element::var_x(n, j))?;
    Ok(&left * &right)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{apply, PolyElement};
    use crate::monomial::MultiIndex;
    use crate::scalar::{int, rat};

    #[test]
    fn theta_inverse_pair() {
        let n = 2;
        let t12 = theta(n, &[1, 2], 1, 2).unwrap();
        let t21 = theta(n, &[1, 2], 2, 1).unwrap();
        assert!((&t12 * &t21).is_one());
        assert!((&t21 * &t12).is_one());
    }

    #[test]
    fn theta_chain_rule() {
        let n = 3;
        let j = [1, 2, 3];
        let a = theta(n, &j, 1, 2).unwrap();
        let b = theta(n, &j, 2, 3).unwrap();
        let c = theta(n, &j, 1, 3).unwrap();
        assert_eq!(&a * &b, c);
    }

    #[test]
    #[allow(clippy::if_same_then_else)]
    fn theta_action_four_cases() {
        let n = 3;
        let j_set = [1, 2, 3];
        let (i, j) = (2, 3);
        let th = theta(n, &j_set, i, j).unwrap();
        for a1 in 0..=3u32 {
            for a2 in 0..=3u32 {
                for a3 in 0..=3u32 {
                    let alpha = MultiIndex(vec![a1, a2, a3]);
                    let p = PolyElement::monomial(alpha.clone(), int(1));
                    let got = apply(&th, &p).unwrap();
                    let others_zero = j_set
                        .iter()
                        .filter(|&&k| k != i && k != j)
                        .all(|&k| alpha.0[k - 1] == 0);
                    let expect = if !others_zero {
                        p.clone()
                    } else {
                        let ai = alpha.0[i - 1];
                        let aj = alpha.0[j - 1];
                        if ai > 0 && aj > 0 {
                            p.clone()
                        } else if ai > 0 && aj == 0 {
                            let mut e = alpha.0.clone();
                            e[i - 1] -= 1;
                            PolyElement::monomial(MultiIndex(e), int(1))
                        } else {
                            let mut e = alpha.0.clone();
                            e[j - 1] += 1;
                            PolyElement::monomial(MultiIndex(e), int(1))
                        }
                    };
                    assert_eq!(got, expect, "alpha=({a1},{a2},{a3})");
                }
            }
        }
    }

    #[test]
    fn theta_moves_the_origin() {
        let n = 2;
        let th = theta(n, &[1, 2], 1, 2).unwrap();
        let got = apply(&th, &PolyElement::one(n)).unwrap();
        assert_eq!(got, PolyElement::monomial(MultiIndex(vec![0, 1]), int(1)));
    }

    #[test]
    fn mu_multiplies_payloads() {
        let n = 2;
        let a = mu(n, &[1], &Element::var_x(n, 2)).unwrap();
        let b = mu(n, &[1], &Element::var_y(n, 2)).unwrap();
        // y x = 1 so mu(y) mu(x) = 1, but mu(x) mu(y) = mu(xy) != 1
        assert!((&b * &a).is_one());
        assert!(!(&a * &b).is_one());
        let lam = mu_scalar(n, &[1, 2], &rat(1, 3)).unwrap();
        let lam_inv = mu_scalar(n, &[1, 2], &int(3)).unwrap();
        assert!((&lam * &lam_inv).is_one());
    }

    #[test]
    fn argument_validation() {
        assert!(theta(2, &[1], 1, 1).is_err());
        assert!(theta(2, &[1, 2], 1, 1).is_err());
        assert!(theta(2, &[1, 2], 1, 3).is_err());
        assert!(mu(2, &[], &Element::one(2)).is_err());
        assert!(mu(2, &[1], &Element::var_x(2, 1)).is_err());
        assert!(mu_scalar(2, &[1], &int(0)).is_err());
    }
}
