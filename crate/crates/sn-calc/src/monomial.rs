//! Multi-indices and basis monomials x^alpha y^beta with the canonical
//! degree-lexicographic order on the concatenated exponent vector.

use std::cmp::Ordering;
use std::fmt;

/// Vector of nonnegative exponents, one per ambient coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    /// e_i with a 1 in (1-based) coordinate i.
    pub fn unit(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= n, "coordinate out of range");
        let mut v = vec![0; n];
        v[i - 1] = 1;
        MultiIndex(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn max_entry(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise positive part of self - other.
    pub fn sub_pos(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a.saturating_sub(*b)).collect())
    }

    /// Componentwise self <= other.
    pub fn le(&self, other: &MultiIndex) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Exact componentwise difference; None if any coordinate would go negative.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        let mut v = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            v.push(a.checked_sub(*b)?);
        }
        Some(MultiIndex(v))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, e) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Basis monomial x^alpha y^beta of the shift algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub alpha: MultiIndex,
    pub beta: MultiIndex,
}

impl Monomial {
    pub fn new(alpha: MultiIndex, beta: MultiIndex) -> Self {
        assert_eq!(alpha.len(), beta.len(), "exponent vectors of unequal length");
        Monomial { alpha, beta }
    }

    pub fn one(n: usize) -> Self {
        Monomial::new(MultiIndex::zero(n), MultiIndex::zero(n))
    }

    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    pub fn degree(&self) -> u32 {
        self.alpha.degree() + self.beta.degree()
    }

    pub fn is_one(&self) -> bool {
        self.alpha.is_zero() && self.beta.is_zero()
    }

    /// y^beta x^gamma = x^(gamma-beta)_+ y^(beta-gamma)_+ per coordinate, so the
    /// product of two basis monomials is again a single basis monomial.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.alpha.add(&other.alpha.sub_pos(&self.beta)),
            other.beta.add(&self.beta.sub_pos(&other.alpha)),
        )
    }

    /// x^alpha y^beta -> x^beta y^alpha.
    pub fn involution(&self) -> Monomial {
        Monomial::new(self.beta.clone(), self.alpha.clone())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.alpha.0.cmp(&other.alpha.0))
            .then_with(|| self.beta.0.cmp(&other.beta.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
