//! Generator words: ordered products of the distinguished unit-group atoms,
//! each carried with an integer exponent. Atoms from the checked families have
//! closed-form inverses, so a word built from them is a unit with an explicit
//! inverse witness.

use std::fmt;

use num_traits::Zero;

use crate::element::Element;
use crate::error::{ParseError, Result, SnError};
use crate::monomial::MultiIndex;
use crate::scalar::{self, Scalar};
use crate::units::{mu, mu_scalar, theta};

/// Payload of a mu atom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MuPayload {
    /// Nonzero scalar. Closed inverse: the reciprocal payload.
    Scalar(Scalar),
    /// x^gamma over the complement coordinates; a one-sided non-unit.
    XMono(Vec<(usize, u32)>),
    /// y^gamma over the complement coordinates; a one-sided non-unit.
    YMono(Vec<(usize, u32)>),
}

/// Coefficient of an elementary atom 1 + a E_{alpha beta}(I), restricted to
/// the generator families: a scalar, or a scalar multiple of a single
/// x_k^t / y_k^t with k outside I.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElemCoeff {
    Scalar(Scalar),
    XPow { var: usize, t: u32, scale: Scalar },
    YPow { var: usize, t: u32, scale: Scalar },
}

impl ElemCoeff {
    fn to_element(&self, n: usize) -> Element {
        match self {
            ElemCoeff::Scalar(c) => Element::scalar(n, c.clone()),
            ElemCoeff::XPow { var, t, scale } => {
                Element::var_x(n, *var).pow(*t).scale(scale)
            }
            ElemCoeff::YPow { var, t, scale } => {
                Element::var_y(n, *var).pow(*t).scale(scale)
            }
        }
    }

    fn neg(&self) -> ElemCoeff {
        match self {
            ElemCoeff::Scalar(c) => ElemCoeff::Scalar(-c.clone()),
            ElemCoeff::XPow { var, t, scale } => {
                ElemCoeff::XPow { var: *var, t: *t, scale: -scale.clone() }
            }
            ElemCoeff::YPow { var, t, scale } => {
                ElemCoeff::YPow { var: *var, t: *t, scale: -scale.clone() }
            }
        }
    }
}

/// One word atom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Atom {
    /// theta_{ij}(J). Closed inverse: swap i and j.
    Theta { j_set: Vec<usize>, i: usize, j: usize },
    /// mu_I(payload).
    Mu { i_set: Vec<usize>, payload: MuPayload },
    /// 1 + a E_{alpha beta}(I) with alpha != beta; nilpotent off-diagonal, so
    /// the closed inverse is 1 - a E_{alpha beta}(I).
    Elementary { i_set: Vec<usize>, coeff: ElemCoeff, alpha: MultiIndex, beta: MultiIndex },
    /// A unit congruent to 1 modulo the matrix ideal, carried with its
    /// inverse.
    FiniteUnit { u: Element, u_inv: Element },
}

impl Atom {
    pub fn to_element(&self, n: usize) -> Result<Element> {
        match self {
            Atom::Theta { j_set, i, j } => theta(n, j_set, *i, *j),
            Atom::Mu { i_set, payload } => match payload {
                MuPayload::Scalar(c) => mu_scalar(n, i_set, c),
                MuPayload::XMono(pows) => {
                    let mut p = Element::one(n);
                    for &(k, t) in pows {
                        p = &p * &Element::var_x(n, k).pow(t);
                    }
                    mu(n, i_set, &p)
                }
                MuPayload::YMono(pows) => {
                    let mut p = Element::one(n);
                    for &(k, t) in pows {
                        p = &p * &Element::var_y(n, k).pow(t);
                    }
                    mu(n, i_set, &p)
                }
            },
            Atom::Elementary { i_set, coeff, alpha, beta } => {
                if alpha == beta {
                    return Err(SnError::InvalidArgument(
                        "elementary atom needs distinct row and column indices".into(),
                    ));
                }
                let e = Element::matrix_unit(n, i_set, &alpha.0, &beta.0)?;
                let a = coeff.to_element(n);
                Ok(&Element::one(n) + &(&a * &e))
            }
            Atom::FiniteUnit { u, .. } => Ok(u.clone()),
        }
    }

    /// Closed-form inverse atom; mu atoms with monomial payload have none.
    pub fn inverse(&self) -> Result<Atom> {
        match self {
            Atom::Theta { j_set, i, j } => {
                Ok(Atom::Theta { j_set: j_set.clone(), i: *j, j: *i })
            }
            Atom::Mu { i_set, payload } => match payload {
                MuPayload::Scalar(c) => {
                    if c.is_zero() {
                        return Err(SnError::InvalidArgument("zero mu scaling".into()));
                    }
                    Ok(Atom::Mu { i_set: i_set.clone(), payload: MuPayload::Scalar(c.recip()) })
                }
                MuPayload::XMono(_) | MuPayload::YMono(_) => Err(SnError::NonInvertibleAtom(
                    "mu with a monomial payload is a one-sided non-unit".into(),
                )),
            },
            Atom::Elementary { i_set, coeff, alpha, beta } => Ok(Atom::Elementary {
                i_set: i_set.clone(),
                coeff: coeff.neg(),
                alpha: alpha.clone(),
                beta: beta.clone(),
            }),
            Atom::FiniteUnit { u, u_inv } => {
                Ok(Atom::FiniteUnit { u: u_inv.clone(), u_inv: u.clone() })
            }
        }
    }
}

/// Product of atoms with integer exponents, evaluated left to right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word {
    pub n: usize,
    pub atoms: Vec<(Atom, i64)>,
}

impl Word {
    pub fn identity(n: usize) -> Self {
        Word { n, atoms: Vec::new() }
    }

    pub fn new(n: usize, atoms: Vec<(Atom, i64)>) -> Self {
        Word { n, atoms }
    }

    pub fn push(&mut self, atom: Atom, exp: i64) {
        self.atoms.push((atom, exp));
    }

    /// Expand the word to an element.
    pub fn to_element(&self) -> Result<Element> {
        let mut acc = Element::one(self.n);
        for (atom, exp) in &self.atoms {
            if *exp == 0 {
                continue;
            }
            let base = if *exp > 0 { atom.to_element(self.n)? } else { atom.inverse()?.to_element(self.n)? };
            for _ in 0..exp.unsigned_abs() {
                acc = &acc * &base;
            }
        }
        Ok(acc)
    }

    /// Reverse the atoms and invert each; fails on atoms without a
    /// closed-form inverse.
    pub fn inverse(&self) -> Result<Word> {
        let mut atoms = Vec::with_capacity(self.atoms.len());
        for (atom, exp) in self.atoms.iter().rev() {
            atoms.push((atom.inverse()?, *exp));
        }
        Ok(Word { n: self.n, atoms })
    }

    /// Element together with a verified inverse witness.
    pub fn to_unit(&self) -> Result<(Element, Element)> {
        let u = self.to_element()?;
        let v = self.inverse()?.to_element()?;
        if !(&u * &v).is_one() || !(&v * &u).is_one() {
            return Err(SnError::NotAUnit("word inverse failed the product check".into()));
        }
        Ok((u, v))
    }

    /// Parse the word syntax: juxtaposed atoms, each optionally raised to an
    /// integer power. Atom forms: `theta[J;i,j]`, `mu[I](lambda)`,
    /// `mu[I](x_k^m)`, `mu[I](y_k^m)`, `elem[I](coef; alpha; beta)`.
    pub fn parse(text: &str, n: usize) -> Result<Word> {
        let mut p = WordParser { text: text.as_bytes(), pos: 0, n };
        let w = p.word()?;
        Ok(w)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return write!(f, "1");
        }
        let list = |v: &[usize]| v.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(",");
        let idx = |v: &MultiIndex| v.0.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(",");
        for (k, (atom, exp)) in self.atoms.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            match atom {
                Atom::Theta { j_set, i, j } => write!(f, "theta[{};{},{}]", list(j_set), i, j)?,
                Atom::Mu { i_set, payload } => {
                    write!(f, "mu[{}](", list(i_set))?;
                    match payload {
                        MuPayload::Scalar(c) => write!(f, "{}", scalar::to_string(c))?,
                        MuPayload::XMono(pows) | MuPayload::YMono(pows) => {
                            let sym = if matches!(payload, MuPayload::XMono(_)) { 'x' } else { 'y' };
                            for (m, &(var, t)) in pows.iter().enumerate() {
                                if m > 0 {
                                    write!(f, "*")?;
                                }
                                write!(f, "{sym}{var}")?;
                                if t != 1 {
                                    write!(f, "^{t}")?;
                                }
                            }
                        }
                    }
                    write!(f, ")")?;
                }
                Atom::Elementary { i_set, coeff, alpha, beta } => {
                    write!(f, "elem[{}](", list(i_set))?;
                    match coeff {
                        ElemCoeff::Scalar(c) => write!(f, "{}", scalar::to_string(c))?,
                        ElemCoeff::XPow { var, t, scale } | ElemCoeff::YPow { var, t, scale } => {
                            if *scale != scalar::one() {
                                write!(f, "{}*", scalar::to_string(scale))?;
                            }
                            let sym = if matches!(coeff, ElemCoeff::XPow { .. }) { 'x' } else { 'y' };
                            write!(f, "{sym}{var}")?;
                            if *t != 1 {
                                write!(f, "^{t}")?;
                            }
                        }
                    }
                    write!(f, "; {}; {})", idx(alpha), idx(beta))?;
                }
                Atom::FiniteUnit { .. } => write!(f, "<finite-unit>")?,
            }
            if *exp != 1 {
                write!(f, "^{exp}")?;
            }
        }
        Ok(())
    }
}

struct WordParser<'a> {
    text: &'a [u8],
    pos: usize,
    n: usize,
}

impl<'a> WordParser<'a> {
    fn err(&self, msg: impl Into<String>) -> SnError {
        SnError::Parse(ParseError::new(1, self.pos + 1, msg))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len()
            && (self.text[self.pos].is_ascii_whitespace() || self.text[self.pos] == b'*')
        {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.text.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", c as char)))
        }
    }

    fn integer(&mut self) -> Result<i64> {
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
        }
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.text[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| self.err("expected an integer"))
    }

    fn coord_list(&mut self) -> Result<Vec<usize>> {
        self.eat(b'[')?;
        let mut out = Vec::new();
        loop {
            let v = self.integer()?;
            if v < 1 || v as usize > self.n {
                return Err(self.err(format!("coordinate {v} out of range 1..={}", self.n)));
            }
            out.push(v as usize);
            match self.peek() {
                Some(b',') => {
                    self.pos += 1;
                }
                _ => break,
            }
        }
        Ok(out)
    }

    fn exp_list(&mut self, len: usize) -> Result<MultiIndex> {
        let mut out = Vec::new();
        loop {
            let v = self.integer()?;
            if v < 0 {
                return Err(self.err("exponent must be nonnegative"));
            }
            out.push(v as u32);
            match self.peek() {
                Some(b',') => {
                    self.pos += 1;
                    self.skip_spaces_only();
                }
                _ => break,
            }
        }
        if out.len() != len {
            return Err(self.err(format!("expected {len} exponents, found {}", out.len())));
        }
        Ok(MultiIndex(out))
    }

    fn skip_spaces_only(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.text[start..self.pos]).into_owned()
    }

    fn rational(&mut self) -> Result<Scalar> {
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
        }
        while self.pos < self.text.len()
            && (self.text[self.pos].is_ascii_digit() || self.text[self.pos] == b'/')
        {
            self.pos += 1;
        }
        scalar::parse(std::str::from_utf8(&self.text[start..self.pos]).unwrap_or(""))
            .map_err(|_| self.err("expected a rational"))
    }

    fn monomial_payload(&mut self) -> Result<(char, Vec<(usize, u32)>)> {
        let mut kind = ' ';
        let mut pows = Vec::new();
        loop {
            self.skip_spaces_only();
            let c = self.peek().ok_or_else(|| self.err("unexpected end of payload"))?;
            if c != b'x' && c != b'y' {
                break;
            }
            let this = c as char;
            if kind == ' ' {
                kind = this;
            } else if kind != this {
                return Err(self.err("mu payload must not mix x and y factors"));
            }
            self.pos += 1;
            let var = self.integer()?;
            if var < 1 || var as usize > self.n {
                return Err(self.err("payload variable out of range"));
            }
            let t = if self.peek() == Some(b'^') {
                self.pos += 1;
                let t = self.integer()?;
                if t < 1 {
                    return Err(self.err("payload exponent must be positive"));
                }
                t as u32
            } else {
                1
            };
            pows.push((var as usize, t));
            self.skip_spaces_only();
            if self.peek() == Some(b'*') {
                self.pos += 1;
            }
        }
        if kind == ' ' {
            return Err(self.err("expected a monomial payload"));
        }
        Ok((kind, pows))
    }

    fn atom(&mut self) -> Result<Atom> {
        let name = self.ident();
        match name.as_str() {
            "theta" => {
                self.eat(b'[')?;
                self.pos -= 1;
                let j_set = {
                    let mut set = self.coord_list()?;
                    // coordinate list ends at ';'
                    self.eat(b';')?;
                    set.sort_unstable();
                    set
                };
                let i = self.integer()? as usize;
                self.eat(b',')?;
                let j = self.integer()? as usize;
                self.eat(b']')?;
                Ok(Atom::Theta { j_set, i, j })
            }
            "mu" => {
                let i_set = self.coord_list()?;
                self.eat(b']')?;
                self.eat(b'(')?;
                self.skip_spaces_only();
                let payload = match self.peek() {
                    Some(c) if c == b'x' || c == b'y' => {
                        let (kind, pows) = self.monomial_payload()?;
                        if kind == 'x' {
                            MuPayload::XMono(pows)
                        } else {
                            MuPayload::YMono(pows)
                        }
                    }
                    _ => MuPayload::Scalar(self.rational()?),
                };
                self.skip_spaces_only();
                self.eat(b')')?;
                Ok(Atom::Mu { i_set, payload })
            }
            "elem" => {
                let i_set = self.coord_list()?;
                self.eat(b']')?;
                self.eat(b'(')?;
                self.skip_spaces_only();
                let coeff = match self.peek() {
                    Some(c) if c == b'x' || c == b'y' => {
                        let (kind, pows) = self.monomial_payload()?;
                        if pows.len() != 1 {
                            return Err(self.err("elementary coefficient must be a single power"));
                        }
                        let (var, t) = pows[0];
                        if kind == 'x' {
                            ElemCoeff::XPow { var, t, scale: scalar::one() }
                        } else {
                            ElemCoeff::YPow { var, t, scale: scalar::one() }
                        }
                    }
                    _ => ElemCoeff::Scalar(self.rational()?),
                };
                self.skip_spaces_only();
                self.eat(b';')?;
                self.skip_spaces_only();
                let alpha = self.exp_list(i_set.len())?;
                self.skip_spaces_only();
                self.eat(b';')?;
                self.skip_spaces_only();
                let beta = self.exp_list(i_set.len())?;
                self.skip_spaces_only();
                self.eat(b')')?;
                Ok(Atom::Elementary { i_set, coeff, alpha, beta })
            }
            other => Err(self.err(format!("unknown atom '{other}'"))),
        }
    }

    fn word(&mut self) -> Result<Word> {
        let mut atoms = Vec::new();
        loop {
            self.skip_ws();
            if self.pos >= self.text.len() {
                break;
            }
            let atom = self.atom()?;
            let exp = if self.peek() == Some(b'^') {
                self.pos += 1;
                self.integer()?
            } else {
                1
            };
            atoms.push((atom, exp));
        }
        Ok(Word { n: self.n, atoms })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn theta_word_inverse() {
        let w = Word::new(2, vec![(Atom::Theta { j_set: vec![1, 2], i: 1, j: 2 }, 1)]);
        let inv = w.inverse().unwrap();
        assert_eq!(inv.atoms[0].0, Atom::Theta { j_set: vec![1, 2], i: 2, j: 1 });
        let (u, v) = w.to_unit().unwrap();
        assert!((&u * &v).is_one());
    }

    #[test]
    fn empty_word_is_identity() {
        let w = Word::identity(3);
        assert!(w.to_element().unwrap().is_one());
        assert!(w.inverse().unwrap().atoms.is_empty());
    }

    #[test]
    fn elementary_inverse_by_nilpotency() {
        // 1 + x_2^2 E_{0,alpha}(1): inverse is 1 - x_2^2 E_{0,alpha}(1)
        let atom = Atom::Elementary {
            i_set: vec![1],
            coeff: ElemCoeff::XPow { var: 2, t: 2, scale: int(1) },
            alpha: MultiIndex(vec![0]),
            beta: MultiIndex(vec![2]),
        };
        let w = Word::new(2, vec![(atom, 1)]);
        let (u, v) = w.to_unit().unwrap();
        assert!((&u * &v).is_one() && (&v * &u).is_one());
    }

    #[test]
    fn mu_monomial_atoms_do_not_invert() {
        let w = Word::new(2, vec![(Atom::Mu { i_set: vec![1], payload: MuPayload::XMono(vec![(2, 1)]) }, 1)]);
        assert!(matches!(w.inverse(), Err(SnError::NonInvertibleAtom(_))));
        // but they evaluate fine
        assert!(!w.to_element().unwrap().is_one());
    }

    #[test]
    fn mixed_word_product_check() {
        let w = Word::new(
            3,
            vec![
                (Atom::Theta { j_set: vec![1, 2, 3], i: 3, j: 1 }, 2),
                (Atom::Mu { i_set: vec![1, 2], payload: MuPayload::Scalar(rat(1, 3)) }, 1),
                (
                    Atom::Elementary {
                        i_set: vec![2, 3],
                        coeff: ElemCoeff::Scalar(int(2)),
                        alpha: MultiIndex(vec![1, 0]),
                        beta: MultiIndex(vec![0, 1]),
                    },
                    -1,
                ),
            ],
        );
        let (u, v) = w.to_unit().unwrap();
        assert!((&u * &v).is_one() && (&v * &u).is_one());
    }

    #[test]
    fn parse_round_trip() {
        let texts = [
            "theta[1,2;2,1]",
            "theta[1,2,3;3,1]^-2 mu[1,2](1/3)",
            "mu[2](x1^2) elem[1](y2; 0; 1)^3",
            "elem[1,2](-5; 1,0; 0,1)",
        ];
        for t in texts {
            let w = Word::parse(t, 3).unwrap();
            let w2 = Word::parse(&w.to_string(), 3).unwrap();
            assert_eq!(w, w2, "round trip through {t}");
        }
        assert!(Word::parse("frob[1]", 2).is_err());
        assert!(Word::parse("theta[1,4;1,4]", 3).is_err());
    }
}
