//! Constructive factorization over the top proper level: any unit congruent
//! to 1 modulo a_{n,n-1} splits, uniquely in the leading part, as a product
//! of powers of the distinguished top-level current generators followed by one
//! factor per coordinate block. Every step is verified exactly and failures
//! certify that the input was not a unit.

use crate::element::Element;
use crate::error::{Result, SnError};
use crate::fredholm::{ann1_components, fredholm_correction, ind_vector, Stabilization};
use crate::units::invert::invert_one_plus_block;
use crate::units::words::{Atom, Word};

/// A unit together with its exact inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitWitness {
    pub element: Element,
    pub inverse: Element,
}

/// Result of the top-level factorization: exponents of the current
/// generators theta_{n,j} (j = 1..n-1) over the full coordinate set, then one
/// block factor per coordinate, in coordinate order.
#[derive(Debug, Clone)]
pub struct FactorAnn1 {
    pub n: usize,
    pub theta_exponents: Vec<i64>,
    pub factors: Vec<UnitWitness>,
}

impl FactorAnn1 {
    /// The defining current-generator prefix as a word.
    pub fn theta_word(&self) -> Word {
        let full: Vec<usize> = (1..=self.n).collect();
        let mut w = Word::identity(self.n);
        for (j0, &m) in self.theta_exponents.iter().enumerate() {
            if m != 0 {
                w.push(Atom::Theta { j_set: full.clone(), i: self.n, j: j0 + 1 }, m);
            }
        }
        w
    }

    /// Reassemble the product theta-prefix * u_1 * ... * u_n.
    pub fn reassemble(&self) -> Result<Element> {
        let mut acc = self.theta_word().to_element()?;
        for f in &self.factors {
            acc = &acc * &f.element;
        }
        Ok(acc)
    }

    /// Exact inverse of the factored element: block inverses in reverse order
    /// times the inverse of the theta prefix.
    pub fn inverse_element(&self) -> Result<Element> {
        let mut acc = Element::one(self.n);
        for f in self.factors.iter().rev() {
            acc = &acc * &f.inverse;
        }
        let prefix_inv = self.theta_word().inverse()?.to_element()?;
        Ok(&acc * &prefix_inv)
    }
}

/// Factor a unit u with u - 1 in a_{n,n-1}: read the current-generator
/// exponents off the per-coordinate index vector, strip the prefix, then peel
/// one block factor per coordinate, correcting each to an invertible map and
/// inverting it through the Laurent quotient. The reassembled product is
/// checked to equal u exactly.
pub fn factor_ann1(u: &Element) -> Result<FactorAnn1> {
    let n = u.n();
    if n < 2 {
        return Err(SnError::InvalidArgument(
            "top-level factorization needs at least two coordinates".into(),
        ));
    }
    // exponents from the per-coordinate indices (theta_{n,j} has index -1 at j)
    let ind = ind_vector(u)?;
    let theta_exponents: Vec<i64> = ind[..n - 1].iter().map(|&v| -v).collect();

    let out_shell = FactorAnn1 { n, theta_exponents: theta_exponents.clone(), factors: Vec::new() };
    let prefix_inv = out_shell.theta_word().inverse()?.to_element()?;
    let mut w = &prefix_inv * u;

    let mut factors = Vec::with_capacity(n);
    for k in 1..=n {
        let comps = ann1_components(&w, k).map_err(|e| {
            SnError::NotAUnit(format!("step {k}: residue left the expected level ({e})"))
        })?;
        for (idx, c) in comps.iter().enumerate() {
            if idx + 1 < k && !c.is_zero() {
                return Err(SnError::NotAUnit(format!(
                    "step {k}: residue has a component at already-peeled coordinate {}",
                    idx + 1
                )));
            }
        }
        let a_k = comps[k - 1].clone();
        let candidate = &Element::one(n) + &a_k;
        let u_k = if k < n {
            let f = fredholm_correction(&candidate, Stabilization::for_element(&candidate))
                .map_err(|e| SnError::NotAUnit(format!("step {k}: correction failed ({e})")))?;
            &candidate + &f
        } else {
            // the last factor is the full residue and must already be a unit
            w.clone()
        };
        let u_k_inv = invert_one_plus_block(&u_k, k)
            .map_err(|e| SnError::NotAUnit(format!("step {k}: block inversion failed ({e})")))?;
        w = &u_k_inv * &w;
        factors.push(UnitWitness { element: u_k, inverse: u_k_inv });
    }
    if !w.is_one() {
        return Err(SnError::NotAUnit("factorization left a nontrivial residue".into()));
    }
    let out = FactorAnn1 { n, theta_exponents, factors };
    let product = out.reassemble()?;
    if &product != u {
        return Err(SnError::NotAUnit("reassembled product differs from the input".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::MultiIndex;
    use crate::scalar::{int, rat};
    use crate::units::words::ElemCoeff;

    #[test]
    fn identity_factors_trivially() {
        let one = Element::one(3);
        let f = factor_ann1(&one).unwrap();
        assert_eq!(f.theta_exponents, vec![0, 0]);
        assert!(f.factors.iter().all(|w| w.element.is_one()));
        assert!(f.reassemble().unwrap().is_one());
    }

    #[test]
    fn pure_theta_atom() {
        let n = 2;
        let full = vec![1, 2];
        let th = crate::units::theta(n, &full, n, 1).unwrap();
        let f = factor_ann1(&th).unwrap();
        assert_eq!(f.theta_exponents, vec![1]);
        for u in &f.factors {
            assert!(u.element.is_one());
        }
        assert_eq!(f.reassemble().unwrap(), th);
    }

    #[test]
    fn single_block_factor() {
        let n = 2;
        // 1 + x_1 E_{00,01}(C1-style block on coordinate 2)
        let e = Element::matrix_unit(n, &[2], &[0], &[1]).unwrap();
        let u = &Element::one(n) + &(&Element::var_x(n, 1) * &e);
        let f = factor_ann1(&u).unwrap();
        assert_eq!(f.theta_exponents, vec![0]);
        assert_eq!(f.factors[0].element, u);
        assert!(f.factors[1].element.is_one());
        assert_eq!(f.reassemble().unwrap(), u);
    }

    #[test]
    fn theta_times_elementary() {
        let n = 2;
        let w = Word::new(
            n,
            vec![
                (Atom::Theta { j_set: vec![1, 2], i: 2, j: 1 }, 1),
                (
                    Atom::Elementary {
                        i_set: vec![1],
                        coeff: ElemCoeff::YPow { var: 2, t: 1, scale: int(1) },
                        alpha: MultiIndex(vec![1]),
                        beta: MultiIndex(vec![0]),
                    },
                    1,
                ),
            ],
        );
        let (u, u_inv) = w.to_unit().unwrap();
        let f = factor_ann1(&u).unwrap();
        assert_eq!(f.theta_exponents, vec![1]);
        assert_eq!(f.reassemble().unwrap(), u);
        assert_eq!(&f.inverse_element().unwrap(), &u_inv);
    }

    #[test]
    fn non_unit_is_certified() {
        let n = 2;
        // 1 - E_00(1)E_00(2) = one minus a projection: block singular
        let e = Element::matrix_unit(n, &[1, 2], &[0, 0], &[0, 0]).unwrap();
        let u = &Element::one(n) - &e;
        assert!(matches!(factor_ann1(&u), Err(SnError::NotAUnit(_))));
    }

    #[test]
    fn three_coordinates_with_scaling() {
        let n = 3;
        let w = Word::new(
            n,
            vec![
                (Atom::Theta { j_set: vec![1, 2, 3], i: 3, j: 2 }, -1),
                (Atom::Mu { i_set: vec![1, 3], payload: crate::units::words::MuPayload::Scalar(rat(2, 3)) }, 1),
            ],
        );
        let (u, _) = w.to_unit().unwrap();
        let f = factor_ann1(&u).unwrap();
        assert_eq!(f.theta_exponents, vec![0, -1]);
        assert_eq!(f.reassemble().unwrap(), u);
    }
}
