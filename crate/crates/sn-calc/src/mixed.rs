//! The mixed (tensor-factor) basis: per coordinate one of 1, x^a, y^b, or a
//! matrix unit E_{ab}. It refines the direct-sum decomposition of each
//! coordinate factor into scalars, the two polynomial halves, and the
//! infinite-matrix ideal, which is what makes ideal membership decidable by
//! inspection of the E-type set of each term.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::element::Element;
use crate::monomial::{Monomial, MultiIndex};
use crate::scalar::{self, Scalar};

/// Per-coordinate symbol of a mixed-basis monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CoordSymbol {
    One,
    /// x^a with a >= 1.
    X(u32),
    /// y^b with b >= 1.
    Y(u32),
    /// Matrix unit E_{ab} of this coordinate.
    E(u32, u32),
}

impl CoordSymbol {
    fn grade(&self) -> u32 {
        match self {
            CoordSymbol::One => 0,
            CoordSymbol::X(a) | CoordSymbol::Y(a) => *a,
            CoordSymbol::E(a, b) => a + b,
        }
    }

    fn rank(&self) -> u8 {
        match self {
            CoordSymbol::One => 0,
            CoordSymbol::X(_) => 1,
            CoordSymbol::Y(_) => 2,
            CoordSymbol::E(..) => 3,
        }
    }

    fn key(&self) -> (u8, u32, u32) {
        match self {
            CoordSymbol::One => (0, 0, 0),
            CoordSymbol::X(a) => (1, *a, 0),
            CoordSymbol::Y(b) => (2, *b, 0),
            CoordSymbol::E(a, b) => (3, *a, *b),
        }
    }
}

/// One mixed-basis monomial: a symbol per coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MixedMonomial(pub Vec<CoordSymbol>);

impl MixedMonomial {
    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn grade(&self) -> u32 {
        self.0.iter().map(CoordSymbol::grade).sum()
    }

    /// E-type set: 1-based coordinates carrying a matrix-unit symbol.
    pub fn e_type(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter_map(|(i, s)| matches!(s, CoordSymbol::E(..)).then_some(i + 1))
            .collect()
    }

    pub fn e_type_size(&self) -> usize {
        self.0.iter().filter(|s| matches!(s, CoordSymbol::E(..))).count()
    }
}

impl Ord for MixedMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.grade()
            .cmp(&other.grade())
            .then_with(|| {
                let a: Vec<_> = self.0.iter().map(CoordSymbol::rank).collect();
                let b: Vec<_> = other.0.iter().map(CoordSymbol::rank).collect();
                a.cmp(&b)
            })
            .then_with(|| {
                let a: Vec<_> = self.0.iter().map(CoordSymbol::key).collect();
                let b: Vec<_> = other.0.iter().map(CoordSymbol::key).collect();
                a.cmp(&b)
            })
    }
}

impl PartialOrd for MixedMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An element re-expressed in the mixed basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedElement {
    n: usize,
    terms: BTreeMap<MixedMonomial, Scalar>,
}

impl MixedElement {
    pub fn zero(n: usize) -> Self {
        MixedElement { n, terms: BTreeMap::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MixedMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, m: MixedMonomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
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

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let factors: Vec<Value> = m
                    .0
                    .iter()
                    .map(|s| match s {
                        CoordSymbol::One => json!({"kind": "one"}),
                        CoordSymbol::X(a) => json!({"kind": "x", "a": a}),
                        CoordSymbol::Y(b) => json!({"kind": "y", "b": b}),
                        CoordSymbol::E(a, b) => json!({"kind": "e", "a": a, "b": b}),
                    })
                    .collect();
                json!({"factors": factors, "coeff": scalar::to_string(c)})
            })
            .collect();
        json!({"n": self.n, "terms": terms})
    }
}

/// Rewrite of a single coordinate factor x^a y^b into mixed symbols:
/// for a >= b it telescopes to x^{a-b} minus the matrix units E_{k+a-b,k},
/// k < b; for b > a to y^{b-a} minus E_{k,k+b-a}, k < a.
fn coord_expansion(a: u32, b: u32) -> Vec<(CoordSymbol, Scalar)> {
    let head = match a.cmp(&b) {
        Ordering::Greater => CoordSymbol::X(a - b),
        Ordering::Equal => CoordSymbol::One,
        Ordering::Less => CoordSymbol::Y(b - a),
    };
    let mut out = vec![(head, scalar::one())];
    let m = a.min(b);
    for k in 0..m {
        let sym = if a >= b { CoordSymbol::E(k + a - b, k) } else { CoordSymbol::E(k, k + b - a) };
        out.push((sym, -scalar::one()));
    }
    out
}

/// Convert to the mixed basis by rewriting each coordinate factor with the
/// closed telescoping formula and distributing across coordinates.
pub fn to_mixed(a: &Element) -> MixedElement {
    let n = a.n();
    let mut out = MixedElement::zero(n);
    for (m, c) in a.terms() {
        // cartesian product of the per-coordinate expansions
        let expansions: Vec<Vec<(CoordSymbol, Scalar)>> =
            (0..n).map(|i| coord_expansion(m.alpha.0[i], m.beta.0[i])).collect();
        let mut stack: Vec<(usize, Vec<CoordSymbol>, Scalar)> = vec![(0, Vec::new(), c.clone())];
        while let Some((i, syms, coeff)) = stack.pop() {
            if i == n {
                out.add_term(MixedMonomial(syms), coeff);
                continue;
            }
            for (sym, sgn) in &expansions[i] {
                let mut syms2 = syms.clone();
                syms2.push(sym.clone());
                stack.push((i + 1, syms2, &coeff * sgn));
            }
        }
    }
    out
}

/// Inverse conversion: each symbol expands back to monomials and the
/// coordinate factors are multiplied out.
pub fn from_mixed(m: &MixedElement) -> Element {
    let n = m.n();
    let mut out = Element::zero(n);
    for (mono, c) in m.terms() {
        // per coordinate: list of (alpha_i, beta_i, sign)
        let factors: Vec<Vec<(u32, u32, i8)>> = mono
            .0
            .iter()
            .map(|s| match s {
                CoordSymbol::One => vec![(0, 0, 1)],
                CoordSymbol::X(a) => vec![(*a, 0, 1)],
                CoordSymbol::Y(b) => vec![(0, *b, 1)],
                CoordSymbol::E(a, b) => vec![(*a, *b, 1), (*a + 1, *b + 1, -1)],
            })
            .collect();
        let mut stack: Vec<(usize, Vec<u32>, Vec<u32>, Scalar)> =
            vec![(0, Vec::new(), Vec::new(), c.clone())];
        while let Some((i, al, be, coeff)) = stack.pop() {
            if i == n {
                out.add_term(Monomial::new(MultiIndex(al), MultiIndex(be)), coeff);
                continue;
            }
            for &(a, b, s) in &factors[i] {
                let mut al2 = al.clone();
                let mut be2 = be.clone();
                al2.push(a);
                be2.push(b);
                let c2 = if s < 0 { -coeff.clone() } else { coeff.clone() };
                stack.push((i + 1, al2, be2, c2));
            }
        }
    }
    out
}

fn write_symbol(f: &mut fmt::Formatter<'_>, i: usize, s: &CoordSymbol, n: usize) -> fmt::Result {
    match s {
        CoordSymbol::One => Ok(()),
        CoordSymbol::X(a) => {
            write!(f, "x{}", i + 1)?;
            if *a > 1 {
                write!(f, "^{a}")?;
            }
            Ok(())
        }
        CoordSymbol::Y(b) => {
            write!(f, "y{}", i + 1)?;
            if *b > 1 {
                write!(f, "^{b}")?;
            }
            Ok(())
        }
        CoordSymbol::E(a, b) => {
            if n == 1 {
                write!(f, "E({a},{b})")
            } else {
                write!(f, "E[{}]({a}|{b})", i + 1)
            }
        }
    }
}

impl fmt::Display for MixedElement {
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
            let trivial = m.0.iter().all(|s| matches!(s, CoordSymbol::One));
            if trivial {
                write!(f, "{}", scalar::to_string(&abs))?;
            } else {
                if abs != scalar::one() {
                    write!(f, "{}*", scalar::to_string(&abs))?;
                }
                let mut first = true;
                for (i, s) in m.0.iter().enumerate() {
                    if matches!(s, CoordSymbol::One) {
                        continue;
                    }
                    if !first {
                        write!(f, "*")?;
                    }
                    first = false;
                    write_symbol(f, i, s, self.n)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn m1(a: u32, b: u32) -> Element {
        Element::monomial(1, MultiIndex(vec![a]), MultiIndex(vec![b]), int(1))
    }

    #[test]
    fn xy_is_one_minus_e00() {
        let mx = to_mixed(&m1(1, 1));
        assert_eq!(mx.to_string(), "1 - E(0,0)");
        assert_eq!(from_mixed(&mx), m1(1, 1));
    }

    #[test]
    fn telescoping_examples() {
        // x^2 y^2 = 1 - E_{00} - E_{11}
        assert_eq!(to_mixed(&m1(2, 2)).to_string(), "1 - E(0,0) - E(1,1)");
        // x^3 y = x^2 - E_{20}
        assert_eq!(to_mixed(&m1(3, 1)).to_string(), "x1^2 - E(2,0)");
        // both verified by expanding the mixed form back to monomials
        for (a, b) in [(2, 2), (3, 1), (0, 4), (5, 2)] {
            let e = m1(a, b);
            assert_eq!(from_mixed(&to_mixed(&e)), e);
        }
    }

    #[test]
    fn pure_monomials_pass_through() {
        for e in [m1(0, 0), m1(3, 0), m1(0, 2)] {
            let mx = to_mixed(&e);
            assert_eq!(mx.term_count(), 1);
            assert_eq!(from_mixed(&mx), e);
        }
    }

    #[test]
    fn e_type_of_matrix_units() {
        let e = Element::matrix_unit(3, &[1, 3], &[0, 2], &[1, 0]).unwrap();
        let mx = to_mixed(&e);
        assert_eq!(mx.term_count(), 1);
        let (mono, c) = mx.terms().next().unwrap();
        assert_eq!(mono.e_type(), vec![1, 3]);
        assert_eq!(c, &int(1));
        assert_eq!(mono.0[1], CoordSymbol::One);
    }
}
