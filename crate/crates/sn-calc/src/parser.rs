//! Expression grammar for the CLI:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-'? atom ('^' int)?
//! atom   := rational | var | call | '(' expr ')'
//! var    := ('x' | 'y') int?              (index defaults to 1)
//! call   := E[<I>](<alpha>|<beta>) | mu[<I>](<payload>) | theta[<J>;<i>,<j>]
//!         | elem[<I>](<coef>; <alpha>; <beta>)
//! ```
//!
//! Whitespace insensitive. `E(a,b)` is accepted as shorthand for `E[1](a|b)`
//! in one coordinate. `elem[...]` desugars to `1 + coef*E[...](...)`.

use num_traits::Zero;

use crate::action::PolyElement;
use crate::element::Element;
use crate::error::{ParseError, Result, SnError};
use crate::scalar::{self, Scalar};
use crate::units::words::MuPayload;
use crate::units::{mu, mu_scalar, theta};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarKind {
    X,
    Y,
}

/// Abstract syntax of an expression. Subtraction and unary minus are held as
/// products with a rational -1, so the node set stays small.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Rational(Scalar),
    Var { kind: VarKind, index: usize },
    MatUnit { coords: Vec<usize>, alpha: Vec<u32>, beta: Vec<u32> },
    MuCall { coords: Vec<usize>, payload: MuPayload },
    ThetaCall { j_set: Vec<usize>, i: usize, j: usize },
    Sum(Vec<Expr>),
    Product(Vec<Expr>),
    Power(Box<Expr>, i64),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Sym(char),
}

struct Lexer {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    end: (usize, usize),
}

fn lex(text: &str) -> Result<Lexer> {
    let mut toks = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, co) = (line, col);
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_digit() {
                    s.push(d);
                    chars.next();
                    col += 1;
                } else {
                    break;
                }
            }
            toks.push((Tok::Num(s), l, co));
            continue;
        }
        if c.is_ascii_alphabetic() {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_alphabetic() {
                    s.push(d);
                    chars.next();
                    col += 1;
                } else {
                    break;
                }
            }
            toks.push((Tok::Ident(s), l, co));
            continue;
        }
        if "+-*^()[],;|/".contains(c) {
            chars.next();
            col += 1;
            toks.push((Tok::Sym(c), l, co));
            continue;
        }
        return Err(ParseError::new(l, co, format!("unexpected character '{c}'")).into());
    }
    Ok(Lexer { toks, pos: 0, end: (line, col) })
}

struct Parser {
    lx: Lexer,
    n: usize,
}

impl Parser {
    fn here(&self) -> (usize, usize) {
        self.lx
            .toks
            .get(self.lx.pos)
            .map(|(_, l, c)| (*l, *c))
            .unwrap_or(self.lx.end)
    }

    fn err(&self, msg: impl Into<String>) -> SnError {
        let (l, c) = self.here();
        ParseError::new(l, c, msg).into()
    }

    fn peek(&self) -> Option<&Tok> {
        self.lx.toks.get(self.lx.pos).map(|(t, _, _)| t)
    }

    fn eat_sym(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(Tok::Sym(s)) if *s == c => {
                self.lx.pos += 1;
                Ok(())
            }
            _ => Err(self.err(format!("expected '{c}'"))),
        }
    }

    fn at_sym(&self, c: char) -> bool {
        matches!(self.peek(), Some(Tok::Sym(s)) if *s == c)
    }

    fn unsigned(&mut self) -> Result<u64> {
        match self.peek() {
            Some(Tok::Num(s)) => {
                let v = s.parse().map_err(|_| self.err("integer too large"))?;
                self.lx.pos += 1;
                Ok(v)
            }
            _ => Err(self.err("expected an integer")),
        }
    }

    fn signed(&mut self) -> Result<i64> {
        let neg = if self.at_sym('-') {
            self.lx.pos += 1;
            true
        } else {
            false
        };
        let v = self.unsigned()? as i64;
        Ok(if neg { -v } else { v })
    }

    /// Rational literal continuing from an already-consumed numerator.
    fn rational_from(&mut self, num: u64) -> Result<Scalar> {
        if self.at_sym('/') {
            self.lx.pos += 1;
            let den = self.unsigned()?;
            if den == 0 {
                return Err(self.err("zero denominator"));
            }
            Ok(scalar::rat(num as i64, den as i64))
        } else {
            Ok(scalar::int(num as i64))
        }
    }

    fn coord(&mut self) -> Result<usize> {
        let v = self.unsigned()? as usize;
        if v < 1 || v > self.n {
            return Err(self.err(format!("coordinate {v} out of range 1..={}", self.n)));
        }
        Ok(v)
    }

    fn coord_list(&mut self) -> Result<Vec<usize>> {
        let mut out = vec![self.coord()?];
        while self.at_sym(',') {
            self.lx.pos += 1;
            out.push(self.coord()?);
        }
        Ok(out)
    }

    fn exp_list(&mut self) -> Result<Vec<u32>> {
        let mut out = vec![self.unsigned()? as u32];
        while self.at_sym(',') {
            self.lx.pos += 1;
            out.push(self.unsigned()? as u32);
        }
        Ok(out)
    }

    fn var_index(&mut self) -> Result<usize> {
        // optional index defaults to coordinate 1
        if let Some(Tok::Num(_)) = self.peek() {
            self.coord()
        } else {
            if self.n < 1 {
                return Err(self.err("no coordinates available"));
            }
            Ok(1)
        }
    }

    fn mu_payload(&mut self) -> Result<MuPayload> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == "x" || s == "y" => {
                let mut kind = ' ';
                let mut pows: Vec<(usize, u32)> = Vec::new();
                loop {
                    match self.peek() {
                        Some(Tok::Ident(s)) if s == "x" || s == "y" => {
                            let this = s.chars().next().unwrap();
                            if kind == ' ' {
                                kind = this;
                            } else if kind != this {
                                return Err(self.err("mu payload must not mix x and y factors"));
                            }
                            self.lx.pos += 1;
                            let var = self.var_index()?;
                            let t = if self.at_sym('^') {
                                self.lx.pos += 1;
                                let t = self.signed()?;
                                if t < 1 {
                                    return Err(self.err("payload exponent must be positive"));
                                }
                                t as u32
                            } else {
                                1
                            };
                            pows.push((var, t));
                            if self.at_sym('*') {
                                self.lx.pos += 1;
                            }
                        }
                        _ => break,
                    }
                }
                Ok(if kind == 'x' { MuPayload::XMono(pows) } else { MuPayload::YMono(pows) })
            }
            _ => {
                let neg = if self.at_sym('-') {
                    self.lx.pos += 1;
                    true
                } else {
                    false
                };
                let num = self.unsigned()?;
                let r = self.rational_from(num)?;
                Ok(MuPayload::Scalar(if neg { -r } else { r }))
            }
        }
    }

    fn call(&mut self, name: &str) -> Result<Expr> {
        match name {
            "E" => {
                if self.at_sym('(') {
                    // one-coordinate shorthand E(a,b)
                    if self.n != 1 {
                        return Err(self.err("E(a,b) shorthand needs one coordinate; use E[I](alpha|beta)"));
                    }
                    self.eat_sym('(')?;
                    let a = self.unsigned()? as u32;
                    self.eat_sym(',')?;
                    let b = self.unsigned()? as u32;
                    self.eat_sym(')')?;
                    return Ok(Expr::MatUnit { coords: vec![1], alpha: vec![a], beta: vec![b] });
                }
                self.eat_sym('[')?;
                let coords = self.coord_list()?;
                self.eat_sym(']')?;
                self.eat_sym('(')?;
                let alpha = self.exp_list()?;
                self.eat_sym('|')?;
                let beta = self.exp_list()?;
                self.eat_sym(')')?;
                if alpha.len() != coords.len() || beta.len() != coords.len() {
                    return Err(self.err("matrix-unit exponent lists must match the coordinate set"));
                }
                Ok(Expr::MatUnit { coords, alpha, beta })
            }
            "mu" => {
                self.eat_sym('[')?;
                let coords = self.coord_list()?;
                self.eat_sym(']')?;
                self.eat_sym('(')?;
                let payload = self.mu_payload()?;
                self.eat_sym(')')?;
                Ok(Expr::MuCall { coords, payload })
            }
            "theta" => {
                self.eat_sym('[')?;
                let j_set = self.coord_list()?;
                self.eat_sym(';')?;
                let i = self.coord()?;
                self.eat_sym(',')?;
                let j = self.coord()?;
                self.eat_sym(']')?;
                Ok(Expr::ThetaCall { j_set, i, j })
            }
            "elem" => {
                self.eat_sym('[')?;
                let coords = self.coord_list()?;
                self.eat_sym(']')?;
                self.eat_sym('(')?;
                // coefficient: rational or monomial payload
                let coef: Expr = match self.peek() {
                    Some(Tok::Ident(s)) if s == "x" || s == "y" => {
                        let kind = if s == "x" { VarKind::X } else { VarKind::Y };
                        self.lx.pos += 1;
                        let index = self.var_index()?;
                        let base = Expr::Var { kind, index };
                        if self.at_sym('^') {
                            self.lx.pos += 1;
                            Expr::Power(Box::new(base), self.signed()?)
                        } else {
                            base
                        }
                    }
                    _ => {
                        let neg = if self.at_sym('-') {
                            self.lx.pos += 1;
                            true
                        } else {
                            false
                        };
                        let num = self.unsigned()?;
                        let r = self.rational_from(num)?;
                        Expr::Rational(if neg { -r } else { r })
                    }
                };
                self.eat_sym(';')?;
                let alpha = self.exp_list()?;
                self.eat_sym(';')?;
                let beta = self.exp_list()?;
                self.eat_sym(')')?;
                if alpha.len() != coords.len() || beta.len() != coords.len() {
                    return Err(self.err("elementary exponent lists must match the coordinate set"));
                }
                if alpha == beta {
                    return Err(self.err("elementary needs distinct exponent vectors"));
                }
                let unit = Expr::MatUnit { coords, alpha, beta };
                Ok(Expr::Sum(vec![
                    Expr::Rational(scalar::one()),
                    Expr::Product(vec![coef, unit]),
                ]))
            }
            other => Err(self.err(format!("unknown call '{other}'"))),
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Tok::Num(s)) => {
                self.lx.pos += 1;
                let num: u64 = s.parse().map_err(|_| self.err("integer too large"))?;
                Ok(Expr::Rational(self.rational_from(num)?))
            }
            Some(Tok::Ident(name)) => {
                self.lx.pos += 1;
                match name.as_str() {
                    "x" => Ok(Expr::Var { kind: VarKind::X, index: self.var_index()? }),
                    "y" => Ok(Expr::Var { kind: VarKind::Y, index: self.var_index()? }),
                    _ => self.call(&name),
                }
            }
            Some(Tok::Sym('(')) => {
                self.lx.pos += 1;
                let e = self.expr()?;
                self.eat_sym(')')?;
                Ok(e)
            }
            _ => Err(self.err("expected a rational, a variable, a call, or '('")),
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        let neg = if self.at_sym('-') {
            self.lx.pos += 1;
            true
        } else {
            false
        };
        let base = self.atom()?;
        let powered = if self.at_sym('^') {
            self.lx.pos += 1;
            let e = self.signed()?;
            Expr::Power(Box::new(base), e)
        } else {
            base
        };
        Ok(if neg {
            match powered {
                Expr::Rational(r) => Expr::Rational(-r),
                other => Expr::Product(vec![Expr::Rational(-scalar::one()), other]),
            }
        } else {
            powered
        })
    }

    fn term(&mut self) -> Result<Expr> {
        let mut factors = vec![self.factor()?];
        while self.at_sym('*') {
            self.lx.pos += 1;
            factors.push(self.factor()?);
        }
        Ok(if factors.len() == 1 { factors.pop().unwrap() } else { Expr::Product(factors) })
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut terms = vec![self.term()?];
        loop {
            if self.at_sym('+') {
                self.lx.pos += 1;
                terms.push(self.term()?);
            } else if self.at_sym('-') {
                self.lx.pos += 1;
                let t = self.term()?;
                terms.push(match t {
                    Expr::Rational(r) => Expr::Rational(-r),
                    other => Expr::Product(vec![Expr::Rational(-scalar::one()), other]),
                });
            } else {
                break;
            }
        }
        Ok(if terms.len() == 1 { terms.pop().unwrap() } else { Expr::Sum(terms) })
    }
}

/// Parse an expression against the ambient coordinate count.
pub fn parse(text: &str, n: usize) -> Result<Expr> {
    let lx = lex(text)?;
    let mut p = Parser { lx, n };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

fn needs_parens_in_product(e: &Expr) -> bool {
    // nested products would otherwise re-parse flattened
    matches!(e, Expr::Sum(_) | Expr::Product(_))
}

fn needs_parens_as_base(e: &Expr) -> bool {
    match e {
        Expr::Sum(_) | Expr::Product(_) | Expr::Power(..) => true,
        Expr::Rational(r) => scalar::is_negative(r),
        _ => false,
    }
}

/// Canonical text form; `parse(print(e), n) == e` for grammar-shaped trees.
pub fn print(e: &Expr) -> String {
    match e {
        Expr::Rational(r) => scalar::to_string(r),
        Expr::Var { kind, index } => {
            format!("{}{index}", if *kind == VarKind::X { 'x' } else { 'y' })
        }
        Expr::MatUnit { coords, alpha, beta } => {
            let list = |v: &[usize]| v.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(",");
            let exps = |v: &[u32]| v.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(",");
            format!("E[{}]({}|{})", list(coords), exps(alpha), exps(beta))
        }
        Expr::MuCall { coords, payload } => {
            let list = coords.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(",");
            let p = match payload {
                MuPayload::Scalar(c) => scalar::to_string(c),
                MuPayload::XMono(pows) | MuPayload::YMono(pows) => {
                    let sym = if matches!(payload, MuPayload::XMono(_)) { 'x' } else { 'y' };
                    pows.iter()
                        .map(|(v, t)| {
                            if *t == 1 {
                                format!("{sym}{v}")
                            } else {
                                format!("{sym}{v}^{t}")
                            }
                        })
                        .collect::<Vec<_>>()
                        .join("*")
                }
            };
            format!("mu[{list}]({p})")
        }
        Expr::ThetaCall { j_set, i, j } => {
            let list = j_set.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(",");
            format!("theta[{list};{i},{j}]")
        }
        Expr::Sum(children) => children
            .iter()
            .map(|c| {
                if matches!(c, Expr::Sum(_)) {
                    format!("({})", print(c))
                } else {
                    print(c)
                }
            })
            .collect::<Vec<_>>()
            .join(" + "),
        Expr::Product(children) => children
            .iter()
            .map(|c| {
                if needs_parens_in_product(c) {
                    format!("({})", print(c))
                } else {
                    print(c)
                }
            })
            .collect::<Vec<_>>()
            .join("*"),
        Expr::Power(base, e) => {
            let b = if needs_parens_as_base(base) {
                format!("({})", print(base))
            } else {
                print(base)
            };
            format!("{b}^{e}")
        }
    }
}

impl Expr {
    /// Evaluate against the ambient algebra. Negative powers use the
    /// closed-form inverse when the base is a theta or scalar-mu call and the
    /// general certified inversion chain otherwise.
    pub fn eval(&self, n: usize) -> Result<Element> {
        match self {
            Expr::Rational(c) => Ok(Element::scalar(n, c.clone())),
            Expr::Var { kind, index } => {
                if *index < 1 || *index > n {
                    return Err(SnError::InvalidArgument(format!(
                        "variable index {index} out of range 1..={n}"
                    )));
                }
                Ok(match kind {
                    VarKind::X => Element::var_x(n, *index),
                    VarKind::Y => Element::var_y(n, *index),
                })
            }
            Expr::MatUnit { coords, alpha, beta } => Element::matrix_unit(n, coords, alpha, beta),
            Expr::MuCall { coords, payload } => match payload {
                MuPayload::Scalar(c) => mu_scalar(n, coords, c),
                MuPayload::XMono(pows) => {
                    let mut p = Element::one(n);
                    for &(v, t) in pows {
                        p = &p * &Element::var_x(n, v).pow(t);
                    }
                    mu(n, coords, &p)
                }
                MuPayload::YMono(pows) => {
                    let mut p = Element::one(n);
                    for &(v, t) in pows {
                        p = &p * &Element::var_y(n, v).pow(t);
                    }
                    mu(n, coords, &p)
                }
            },
            Expr::ThetaCall { j_set, i, j } => theta(n, j_set, *i, *j),
            Expr::Sum(children) => {
                let mut acc = Element::zero(n);
                for c in children {
                    acc = &acc + &c.eval(n)?;
                }
                Ok(acc)
            }
            Expr::Product(children) => {
                let mut acc = Element::one(n);
                for c in children {
                    acc = &acc * &c.eval(n)?;
                }
                Ok(acc)
            }
            Expr::Power(base, e) => {
                if *e >= 0 {
                    Ok(base.eval(n)?.pow(*e as u32))
                } else {
                    let inv = match base.as_ref() {
                        Expr::ThetaCall { j_set, i, j } => theta(n, j_set, *j, *i)?,
                        Expr::MuCall { coords, payload: MuPayload::Scalar(c) } => {
                            if c.is_zero() {
                                return Err(SnError::InvalidArgument("zero mu scaling".into()));
                            }
                            mu_scalar(n, coords, &c.recip())?
                        }
                        _ => crate::units::invert::invert_element(&base.eval(n)?)?,
                    };
                    Ok(inv.pow((-*e) as u32))
                }
            }
        }
    }
}

/// Interpret an element as a module polynomial; fails if any y appears.
pub fn element_to_poly(a: &Element) -> Result<PolyElement> {
    let mut out = PolyElement::zero(a.n());
    for (m, c) in a.terms() {
        if !m.beta.is_zero() {
            return Err(SnError::InvalidArgument(
                "module polynomials must not involve the one-sided inverses".into(),
            ));
        }
        out.add_term(m.alpha.clone(), c.clone());
    }
    Ok(out)
}
