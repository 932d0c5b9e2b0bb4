//! Laurent polynomials with rational coefficients, the quotient map that sends
//! chosen coordinates to Laurent variables (x_i -> x_i, y_i -> x_i^{-1}), and a
//! fraction-free determinant over the Laurent ring.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::element::Element;
use crate::error::{Result, SnError};
use crate::monomial::{Monomial, MultiIndex};
use crate::scalar::{self, Scalar};

/// Finite rational combination of Laurent monomials in a fixed number of
/// variables; exponents range over the integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentElement {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, Scalar>,
}

impl LaurentElement {
    pub fn zero(nvars: usize) -> Self {
        LaurentElement { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        LaurentElement::monomial(vec![0; nvars], scalar::one())
    }

    pub fn scalar(nvars: usize, c: Scalar) -> Self {
        LaurentElement::monomial(vec![0; nvars], c)
    }

    pub fn monomial(exps: Vec<i64>, c: Scalar) -> Self {
        let mut e = LaurentElement::zero(exps.len());
        e.add_term(exps, c);
        e
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Scalar)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().next().map(|(e, c)| e.iter().all(|&k| k == 0) && *c == scalar::one()).unwrap_or(false)
    }

    /// The single (coefficient, exponent) pair if this is one monomial.
    pub fn as_monomial(&self) -> Option<(Scalar, Vec<i64>)> {
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            Some((c.clone(), e.clone()))
        } else {
            None
        }
    }

    pub fn add_term(&mut self, exps: Vec<i64>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(exps.len(), self.nvars);
        match self.terms.entry(exps) {
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

    pub fn neg(&self) -> LaurentElement {
        let mut out = LaurentElement::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }

    /// Leading term in the graded-lexicographic order on integer exponents.
    fn leading(&self) -> Option<(&Vec<i64>, &Scalar)> {
        self.terms.iter().max_by(|(a, _), (b, _)| grlex(a, b))
    }

    /// Exact division: panics only through the iteration cap, which cannot be
    /// reached when the quotient exists (the fraction-free elimination below
    /// guarantees it does).
    pub fn exact_div(&self, divisor: &LaurentElement) -> Result<LaurentElement> {
        if divisor.is_zero() {
            return Err(SnError::InvalidArgument("division by zero Laurent polynomial".into()));
        }
        let mut rem = self.clone();
        let mut quot = LaurentElement::zero(self.nvars);
        let (dexp, dcoef) = {
            let (e, c) = divisor.leading().unwrap();
            (e.clone(), c.clone())
        };
        let cap = 16usize + 8 * (self.term_count() + divisor.term_count());
        for _ in 0..cap {
            if rem.is_zero() {
                return Ok(quot);
            }
            let (rexp, rcoef) = {
                let (e, c) = rem.leading().unwrap();
                (e.clone(), c.clone())
            };
            let qexp: Vec<i64> = rexp.iter().zip(&dexp).map(|(a, b)| a - b).collect();
            let qcoef = rcoef / &dcoef;
            let t = LaurentElement::monomial(qexp, qcoef);
            quot = &quot + &t;
            rem = &rem - &(&t * divisor);
        }
        Err(SnError::InvalidArgument("Laurent division is not exact".into()))
    }
}

fn grlex(a: &[i64], b: &[i64]) -> Ordering {
    let sa: i64 = a.iter().sum();
    let sb: i64 = b.iter().sum();
    sa.cmp(&sb).then_with(|| a.cmp(b))
}

impl std::ops::Add for &LaurentElement {
    type Output = LaurentElement;
    fn add(self, other: &LaurentElement) -> LaurentElement {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub for &LaurentElement {
    type Output = LaurentElement;
    fn sub(self, other: &LaurentElement) -> LaurentElement {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl std::ops::Mul for &LaurentElement {
    type Output = LaurentElement;
    fn mul(self, other: &LaurentElement) -> LaurentElement {
        let mut out = LaurentElement::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for LaurentElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
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
            let trivial = e.iter().all(|&v| v == 0);
            if trivial {
                write!(f, "{}", scalar::to_string(&abs))?;
            } else {
                if abs != scalar::one() {
                    write!(f, "{}*", scalar::to_string(&abs))?;
                }
                let mut first = true;
                for (i, &v) in e.iter().enumerate() {
                    if v == 0 {
                        continue;
                    }
                    if !first {
                        write!(f, "*")?;
                    }
                    first = false;
                    write!(f, "x{}", i + 1)?;
                    if v != 1 {
                        write!(f, "^{v}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Image of an element in the tensor product of the untouched coordinate
/// algebra with the Laurent ring of the mapped coordinates. Keys are monomials
/// over the complement coordinates (compressed to that coordinate list).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorLaurent {
    /// Mapped coordinates, sorted, 1-based.
    pub laurent_coords: Vec<usize>,
    /// Untouched coordinates, sorted, 1-based.
    pub algebra_coords: Vec<usize>,
    /// Monomial over the untouched coordinates -> Laurent coefficient.
    pub terms: BTreeMap<Monomial, LaurentElement>,
}

impl TensorLaurent {
    pub fn is_zero(&self) -> bool {
        self.terms.values().all(LaurentElement::is_zero)
    }

    /// The pure Laurent value when every coordinate was mapped.
    pub fn as_laurent(&self) -> Option<&LaurentElement> {
        if self.algebra_coords.is_empty() && self.terms.len() == 1 {
            self.terms.values().next()
        } else {
            None
        }
    }
}

/// Quotient map killing the matrix ideal of each coordinate in `coords`:
/// x_i^a y_i^b goes to the Laurent monomial x_i^{a-b} there, other coordinates
/// are untouched. An algebra homomorphism; its kernel is the sum of the
/// height-one primes of the mapped coordinates.
pub fn laurent_image(a: &Element, coords: &[usize]) -> Result<TensorLaurent> {
    let n = a.n();
    let mut sorted = coords.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != coords.len() {
        return Err(SnError::InvalidArgument("repeated coordinate in Laurent image set".into()));
    }
    for &i in &sorted {
        if i < 1 || i > n {
            return Err(SnError::InvalidArgument(format!("coordinate {i} out of range 1..={n}")));
        }
    }
    let algebra_coords: Vec<usize> = (1..=n).filter(|i| !sorted.contains(i)).collect();
    let mut out = TensorLaurent {
        laurent_coords: sorted.clone(),
        algebra_coords: algebra_coords.clone(),
        terms: BTreeMap::new(),
    };
    let k = algebra_coords.len();
    for (m, c) in a.terms() {
        let exps: Vec<i64> = sorted
            .iter()
            .map(|&i| m.alpha.0[i - 1] as i64 - m.beta.0[i - 1] as i64)
            .collect();
        let key = Monomial::new(
            MultiIndex(algebra_coords.iter().map(|&i| m.alpha.0[i - 1]).collect()),
            MultiIndex(algebra_coords.iter().map(|&i| m.beta.0[i - 1]).collect()),
        );
        let entry = out
            .terms
            .entry(key)
            .or_insert_with(|| LaurentElement::zero(sorted.len()));
        entry.add_term(exps, c.clone());
        let _ = k;
    }
    out.terms.retain(|_, v| !v.is_zero());
    Ok(out)
}

/// Image under the full quotient to the Laurent polynomial algebra.
pub fn laurent_image_full(a: &Element) -> LaurentElement {
    let n = a.n();
    let all: Vec<usize> = (1..=n).collect();
    let t = laurent_image(a, &all).expect("full coordinate set is valid");
    let mut out = LaurentElement::zero(n);
    for le in t.terms.values() {
        out = &out + le;
    }
    out
}

/// Fraction-free (Bareiss) determinant of a square matrix over the Laurent
/// ring. All intermediate divisions are exact.
pub fn laurent_det(mat: &[Vec<LaurentElement>]) -> Result<LaurentElement> {
    let d = mat.len();
    if d == 0 {
        return Ok(LaurentElement::one(0));
    }
    let nvars = mat[0][0].nvars();
    for row in mat {
        if row.len() != d {
            return Err(SnError::InvalidArgument("determinant of a non-square matrix".into()));
        }
    }
    let mut m: Vec<Vec<LaurentElement>> = mat.to_vec();
    let mut sign = false;
    let mut prev = LaurentElement::one(nvars);
    for k in 0..d {
        if m[k][k].is_zero() {
            let swap = (k + 1..d).find(|&r| !m[r][k].is_zero());
            match swap {
                Some(r) => {
                    m.swap(k, r);
                    sign = !sign;
                }
                None => return Ok(LaurentElement::zero(nvars)),
            }
        }
        for i in k + 1..d {
            for j in k + 1..d {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.exact_div(&prev)?;
            }
            m[i][k] = LaurentElement::zero(nvars);
        }
        prev = m[k][k].clone();
    }
    let det = m[d - 1][d - 1].clone();
    Ok(if sign { det.neg() } else { det })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn le(terms: &[(Vec<i64>, i64)]) -> LaurentElement {
        let nv = terms.first().map(|(e, _)| e.len()).unwrap_or(0);
        let mut out = LaurentElement::zero(nv);
        for (e, c) in terms {
            out.add_term(e.clone(), int(*c));
        }
        out
    }

    #[test]
    fn image_of_powers() {
        // x^3 y -> x^2 under the one-variable quotient
        let a = Element::monomial(1, MultiIndex(vec![3]), MultiIndex(vec![1]), int(1));
        assert_eq!(laurent_image_full(&a), le(&[(vec![2], 1)]));
        // 1 -> 1 on any coordinate set
        let one = Element::one(2);
        assert!(laurent_image(&one, &[2]).unwrap().terms.len() == 1);
        assert!(laurent_image_full(&one).is_one());
    }

    #[test]
    fn matrix_units_die() {
        let e = Element::matrix_unit(2, &[1, 2], &[1, 0], &[0, 2]).unwrap();
        assert!(laurent_image(&e, &[1, 2]).unwrap().is_zero());
        // killing only coordinate 1 still kills it (the factor there is in the ideal)
        assert!(laurent_image(&e, &[1]).unwrap().is_zero());
    }

    #[test]
    fn image_is_multiplicative() {
        let a = &Element::var_x(2, 1) + &Element::var_y(2, 2).scale(&rat(2, 3));
        let b = &Element::var_y(2, 1).pow(2) - &Element::one(2);
        let ab = &a * &b;
        assert_eq!(
            laurent_image_full(&ab),
            &laurent_image_full(&a) * &laurent_image_full(&b)
        );
    }

    #[test]
    fn exact_division() {
        let f = le(&[(vec![2], 1), (vec![0], -1)]); // x^2 - 1
        let g = le(&[(vec![1], 1), (vec![0], -1)]); // x - 1
        assert_eq!(f.exact_div(&g).unwrap(), le(&[(vec![1], 1), (vec![0], 1)]));
        // Laurent exponents divide freely
        let f = le(&[(vec![0], 1), (vec![-2], -1)]);
        let g = le(&[(vec![-1], 1)]);
        assert_eq!(f.exact_div(&g).unwrap(), le(&[(vec![1], 1), (vec![-1], -1)]));
        assert!(le(&[(vec![1], 1), (vec![0], 1)]).exact_div(&g.neg()).is_ok());
    }

    #[test]
    fn bareiss_determinant() {
        // diag(x^-1) in one variable
        let m = vec![vec![le(&[(vec![-1], 1)])]];
        assert_eq!(laurent_det(&m).unwrap(), le(&[(vec![-1], 1)]));
        // 2x2 with cancellation: det [[2, x^-1],[x, 1]] = 2 - 1 = 1
        let m = vec![
            vec![le(&[(vec![0], 2)]), le(&[(vec![-1], 1)])],
            vec![le(&[(vec![1], 1)]), le(&[(vec![0], 1)])],
        ];
        assert_eq!(laurent_det(&m).unwrap(), le(&[(vec![0], 1)]));
        // singular
        let m = vec![
            vec![le(&[(vec![1], 1)]), le(&[(vec![1], 1)])],
            vec![le(&[(vec![2], 1)]), le(&[(vec![2], 1)])],
        ];
        assert!(laurent_det(&m).unwrap().is_zero());
        // needs a row swap
        let m = vec![
            vec![LaurentElement::zero(1), le(&[(vec![0], 1)])],
            vec![le(&[(vec![0], 1)]), le(&[(vec![0], 3)])],
        ];
        assert_eq!(laurent_det(&m).unwrap(), le(&[(vec![0], -1)]));
    }
}
