//! Elements of the algebra of one-sided inverses: finite rational linear
//! combinations of basis monomials x^alpha y^beta, with canonical arithmetic.
//!
//! The generators obey y_i x_i = 1 and all cross-coordinate commutations, so a
//! product of basis monomials is again a basis monomial and multiplication is
//! the bilinear extension.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Result, SnError};
use crate::monomial::{Monomial, MultiIndex};
use crate::scalar::{self, Scalar};

/// Finite rational combination of basis monomials of the fixed ambient algebra.
/// No zero coefficients are ever stored; the term map iterates in the canonical
/// degree-lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    n: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Element {
    pub fn zero(n: usize) -> Self {
        Element { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Element::scalar(n, scalar::one())
    }

    pub fn scalar(n: usize, c: Scalar) -> Self {
        let mut e = Element::zero(n);
        e.add_term(Monomial::one(n), c);
        e
    }

    /// Generator x_i (1-based coordinate).
    pub fn var_x(n: usize, i: usize) -> Self {
        let mut e = Element::zero(n);
        e.add_term(Monomial::new(MultiIndex::unit(n, i), MultiIndex::zero(n)), scalar::one());
        e
    }

    /// Generator y_i (1-based coordinate).
    pub fn var_y(n: usize, i: usize) -> Self {
        let mut e = Element::zero(n);
        e.add_term(Monomial::new(MultiIndex::zero(n), MultiIndex::unit(n, i)), scalar::one());
        e
    }

    pub fn monomial(n: usize, alpha: MultiIndex, beta: MultiIndex, coeff: Scalar) -> Self {
        assert_eq!(alpha.len(), n);
        assert_eq!(beta.len(), n);
        let mut e = Element::zero(n);
        e.add_term(Monomial::new(alpha, beta), coeff);
        e
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
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
            && self
                .terms
                .iter()
                .next()
                .map(|(m, c)| m.is_one() && *c == scalar::one())
                .unwrap_or(false)
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(scalar::zero)
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&Monomial::one(self.n))
    }

    /// Largest exponent appearing in any coordinate of any term.
    pub fn support_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.alpha.max_entry().max(m.beta.max_entry()))
            .max()
            .unwrap_or(0)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.n(), self.n);
        match self.terms.entry(m) {
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

    fn assert_same_n(&self, other: &Element) {
        assert_eq!(self.n, other.n, "elements from different ambient algebras");
    }

    pub fn checked_add(&self, other: &Element) -> Result<Element> {
        self.check_dim(other)?;
        Ok(self + other)
    }

    pub fn checked_mul(&self, other: &Element) -> Result<Element> {
        self.check_dim(other)?;
        Ok(self * other)
    }

    fn check_dim(&self, other: &Element) -> Result<()> {
        if self.n != other.n {
            return Err(SnError::DimensionMismatch { expected: self.n, found: other.n });
        }
        Ok(())
    }

    pub fn neg(&self) -> Element {
        let mut out = Element::zero(self.n);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        let mut out = Element::zero(self.n);
        for (m, k) in &self.terms {
            out.add_term(m.clone(), k * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Element {
        let mut acc = Element::one(self.n);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// The involution x_i <-> y_i: sends x^alpha y^beta to x^beta y^alpha
    /// termwise and reverses products.
    pub fn involution(&self) -> Element {
        let mut out = Element::zero(self.n);
        for (m, c) in &self.terms {
            out.add_term(m.involution(), c.clone());
        }
        out
    }

    /// Fully expanded matrix unit E_{alpha beta}(I): the product over i in I of
    /// x_i^{a_i} y_i^{b_i} - x_i^{a_i+1} y_i^{b_i+1}. Exponent vectors are
    /// indexed by the sorted coordinate set I.
    pub fn matrix_unit(n: usize, coords: &[usize], alpha: &[u32], beta: &[u32]) -> Result<Element> {
        if coords.is_empty() {
            return Err(SnError::InvalidArgument("matrix unit needs a nonempty coordinate set".into()));
        }
        if alpha.len() != coords.len() || beta.len() != coords.len() {
            return Err(SnError::InvalidArgument(
                "matrix unit exponents must be indexed by the coordinate set".into(),
            ));
        }
        let mut seen = vec![false; n + 1];
        for &i in coords {
            if i < 1 || i > n {
                return Err(SnError::InvalidArgument(format!("coordinate {i} out of range 1..={n}")));
            }
            if seen[i] {
                return Err(SnError::InvalidArgument(format!("repeated coordinate {i}")));
            }
            seen[i] = true;
        }
        let mut acc = Element::one(n);
        for (k, &i) in coords.iter().enumerate() {
            let lo = Element::monomial(
                n,
                MultiIndex::unit(n, i).scale_by(alpha[k]),
                MultiIndex::unit(n, i).scale_by(beta[k]),
                scalar::one(),
            );
            let hi = Element::monomial(
                n,
                MultiIndex::unit(n, i).scale_by(alpha[k] + 1),
                MultiIndex::unit(n, i).scale_by(beta[k] + 1),
                scalar::one(),
            );
            acc = &acc * &(&lo - &hi);
        }
        Ok(acc)
    }

    /// E_{00}(I): the product of 1 - x_i y_i over the coordinate set.
    pub fn e_set(n: usize, coords: &[usize]) -> Result<Element> {
        Element::matrix_unit(n, coords, &vec![0; coords.len()], &vec![0; coords.len()])
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(m, c)| {
                json!({
                    "alpha": m.alpha.0,
                    "beta": m.beta.0,
                    "coeff": scalar::to_string(c),
                })
            })
            .collect();
        json!({ "n": self.n, "terms": terms })
    }

    pub fn from_json(v: &Value) -> Result<Element> {
        let bad = |msg: &str| SnError::InvalidArgument(format!("element JSON: {msg}"));
        let n = v.get("n").and_then(Value::as_u64).ok_or_else(|| bad("missing n"))? as usize;
        let mut out = Element::zero(n);
        let terms = v.get("terms").and_then(Value::as_array).ok_or_else(|| bad("missing terms"))?;
        for t in terms {
            let read_vec = |key: &str| -> Result<MultiIndex> {
                let arr = t.get(key).and_then(Value::as_array).ok_or_else(|| bad("missing exponent vector"))?;
                if arr.len() != n {
                    return Err(bad("exponent vector length differs from n"));
                }
                let mut v = Vec::with_capacity(n);
                for e in arr {
                    v.push(e.as_u64().ok_or_else(|| bad("exponent not a nonnegative integer"))? as u32);
                }
                Ok(MultiIndex(v))
            };
            let alpha = read_vec("alpha")?;
            let beta = read_vec("beta")?;
            let coeff = t.get("coeff").and_then(Value::as_str).ok_or_else(|| bad("missing coeff"))?;
            out.add_term(Monomial::new(alpha, beta), scalar::parse(coeff)?);
        }
        Ok(out)
    }
}

impl MultiIndex {
    fn scale_by(&self, k: u32) -> MultiIndex {
        MultiIndex(self.0.iter().map(|&e| e * k).collect())
    }
}

impl std::ops::Add for &Element {
    type Output = Element;
    fn add(self, other: &Element) -> Element {
        self.assert_same_n(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub for &Element {
    type Output = Element;
    fn sub(self, other: &Element) -> Element {
        self.assert_same_n(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl std::ops::Mul for &Element {
    type Output = Element;
    fn mul(self, other: &Element) -> Element {
        self.assert_same_n(other);
        let mut out = Element::zero(self.n);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
    let mut first = true;
    let mut put = |f: &mut fmt::Formatter<'_>, sym: char, i: usize, e: u32| -> fmt::Result {
        if e == 0 {
            return Ok(());
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        write!(f, "{sym}{}", i + 1)?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
        Ok(())
    };
    for (i, &e) in m.alpha.0.iter().enumerate() {
        put(f, 'x', i, e)?;
    }
    for (i, &e) in m.beta.0.iter().enumerate() {
        put(f, 'y', i, e)?;
    }
    Ok(())
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
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
            if m.is_one() {
                write!(f, "{}", scalar::to_string(&abs))?;
            } else {
                if abs != scalar::one() {
                    write!(f, "{}*", scalar::to_string(&abs))?;
                }
                write_monomial(f, m)?;
            }
        }
        Ok(())
    }
}
