//! The polynomial module: the faithful simple module on which the algebra acts
//! by shifts. x_i raises the i-th exponent, y_i lowers it (killing monomials
//! with exponent zero), and matrix units act as rank-one maps on monomials.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::element::Element;
use crate::error::{Result, SnError};
use crate::monomial::MultiIndex;
use crate::scalar::{self, Scalar};

/// Polynomial in the module, stored on the monomial basis x^alpha.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyElement {
    n: usize,
    terms: BTreeMap<MultiIndex, Scalar>,
}

impl PolyElement {
    pub fn zero(n: usize) -> Self {
        PolyElement { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        PolyElement::monomial(MultiIndex::zero(n), scalar::one())
    }

    pub fn monomial(alpha: MultiIndex, c: Scalar) -> Self {
        let mut p = PolyElement::zero(alpha.len());
        p.add_term(alpha, c);
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Scalar)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, alpha: &MultiIndex) -> Scalar {
        self.terms.get(alpha).cloned().unwrap_or_else(scalar::zero)
    }

    pub fn add_term(&mut self, alpha: MultiIndex, c: Scalar) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(alpha.len(), self.n);
        match self.terms.entry(alpha) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> PolyElement {
        let mut out = PolyElement::zero(self.n);
        for (a, k) in &self.terms {
            out.add_term(a.clone(), k * c);
        }
        out
    }

    pub fn max_exponent(&self) -> u32 {
        self.terms.keys().map(MultiIndex::max_entry).max().unwrap_or(0)
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(a, c)| json!({"alpha": a.0, "coeff": scalar::to_string(c)}))
            .collect();
        json!({"n": self.n, "terms": terms})
    }
}

impl std::ops::Add for &PolyElement {
    type Output = PolyElement;
    fn add(self, other: &PolyElement) -> PolyElement {
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub for &PolyElement {
    type Output = PolyElement;
    fn sub(self, other: &PolyElement) -> PolyElement {
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), -c.clone());
        }
        out
    }
}

impl fmt::Display for PolyElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (a, c)) in self.terms.iter().enumerate() {
            let neg = scalar::is_negative(c);
            let abs = if neg { -c.clone() } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if a.is_zero() {
                write!(f, "{}", scalar::to_string(&abs))?;
            } else {
                if abs != scalar::one() {
                    write!(f, "{}*", scalar::to_string(&abs))?;
                }
                let mut first = true;
                for (i, &e) in a.0.iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    if !first {
                        write!(f, "*")?;
                    }
                    first = false;
                    write!(f, "x{}", i + 1)?;
                    if e > 1 {
                        write!(f, "^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Action of a basis monomial on a module monomial: y^beta first (zero unless
/// the exponents dominate beta), then x^alpha.
fn monomial_action(alpha: &MultiIndex, beta: &MultiIndex, gamma: &MultiIndex) -> Option<MultiIndex> {
    gamma.checked_sub(beta).map(|g| g.add(alpha))
}

/// Linear action of an element on a module polynomial.
pub fn apply(a: &Element, p: &PolyElement) -> Result<PolyElement> {
    if a.n() != p.n() {
        return Err(SnError::DimensionMismatch { expected: a.n(), found: p.n() });
    }
    let mut out = PolyElement::zero(p.n());
    for (m, c) in a.terms() {
        for (gamma, k) in p.terms() {
            if let Some(target) = monomial_action(&m.alpha, &m.beta, gamma) {
                out.add_term(target, c * k);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn xm(exps: &[u32]) -> PolyElement {
        PolyElement::monomial(MultiIndex(exps.to_vec()), int(1))
    }

    #[test]
    fn generators_shift() {
        let n = 2;
        // y_1 * 1 = 0
        let y1 = Element::var_y(n, 1);
        assert!(apply(&y1, &PolyElement::one(n)).unwrap().is_zero());
        // x_1 * x^(0,2) = x^(1,2)
        let x1 = Element::var_x(n, 1);
        assert_eq!(apply(&x1, &xm(&[0, 2])).unwrap(), xm(&[1, 2]));
        // y_2 * x^(1,2) = x^(1,1)
        let y2 = Element::var_y(n, 2);
        assert_eq!(apply(&y2, &xm(&[1, 2])).unwrap(), xm(&[1, 1]));
    }

    #[test]
    fn matrix_units_act_as_rank_one() {
        let n = 2;
        let e = Element::matrix_unit(n, &[1, 2], &[1, 2], &[0, 1]).unwrap();
        // E_{beta gamma} * x^alpha = delta_{gamma alpha} x^beta
        assert_eq!(apply(&e, &xm(&[0, 1])).unwrap(), xm(&[1, 2]));
        assert!(apply(&e, &xm(&[0, 2])).unwrap().is_zero());
        assert!(apply(&e, &xm(&[1, 1])).unwrap().is_zero());
    }

    #[test]
    fn action_respects_products() {
        let n = 2;
        let a = &Element::var_x(n, 1) - &Element::var_y(n, 2).pow(2);
        let b = &Element::var_y(n, 1) * &Element::var_x(n, 2);
        let p = &xm(&[2, 1]) + &xm(&[0, 3]).scale(&int(3));
        let lhs = apply(&(&a * &b), &p).unwrap();
        let rhs = apply(&a, &apply(&b, &p).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn dimension_mismatch_errors() {
        let a = Element::var_x(2, 1);
        assert!(apply(&a, &PolyElement::one(3)).is_err());
    }
}
