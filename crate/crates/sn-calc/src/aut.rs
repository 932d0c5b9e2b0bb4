//! The automorphism group in factored form: a permutation of the coordinates,
//! a torus scaling, and an inner automorphism given by a unit with an exact
//! inverse witness. Composition refactors into this canonical shape and the
//! Jacobian characters (including the exotic ones in one and two coordinates)
//! read off the factors.

use std::fmt;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::element::Element;
use crate::error::{Result, SnError};
use crate::ideal::{ideal_member, IdealSpec};
use crate::linalg::det_dense;
use crate::mixed::{to_mixed, CoordSymbol};
use crate::monomial::{Monomial, MultiIndex};
use crate::scalar::{self, Scalar};
use crate::units::lattice::psi_prime;
use crate::units::words::{Atom, ElemCoeff, MuPayload, Word};

/// Permutation of {1..n}, stored as 1-based images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((1..=n).collect())
    }

    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self> {
        if i < 1 || i > n || j < 1 || j > n || i == j {
            return Err(SnError::InvalidArgument(format!(
                "transposition needs distinct coordinates in 1..={n}"
            )));
        }
        let mut v: Vec<usize> = (1..=n).collect();
        v.swap(i - 1, j - 1);
        Ok(Perm(v))
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v < 1 || v > n || seen[v] {
                return Err(SnError::InvalidArgument("not a permutation".into()));
            }
            seen[v] = true;
        }
        Ok(Perm(images))
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn image(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// self after other: (self * other)(i) = self(other(i)).
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&k| self.0[k - 1]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut v = vec![0; self.0.len()];
        for (i, &img) in self.0.iter().enumerate() {
            v[img - 1] = i + 1;
        }
        Perm(v)
    }

    pub fn sign(&self) -> i64 {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut sign = 1i64;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cur = self.0[cur] - 1;
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// Coordinate relabeling on elements: x_i -> x_{s(i)}, y_i -> y_{s(i)}.
    pub fn apply_element(&self, a: &Element) -> Element {
        let n = a.n();
        let mut out = Element::zero(n);
        for (m, c) in a.terms() {
            let mut alpha = vec![0u32; n];
            let mut beta = vec![0u32; n];
            for i in 1..=n {
                alpha[self.image(i) - 1] = m.alpha.0[i - 1];
                beta[self.image(i) - 1] = m.beta.0[i - 1];
            }
            out.add_term(Monomial::new(MultiIndex(alpha), MultiIndex(beta)), c.clone());
        }
        out
    }
}

/// Torus action x_i -> lambda_i x_i, y_i -> lambda_i^{-1} y_i on elements:
/// each monomial picks up the factor lambda^(alpha - beta).
pub fn torus_apply(lambda: &[Scalar], a: &Element) -> Result<Element> {
    let n = a.n();
    if lambda.len() != n {
        return Err(SnError::DimensionMismatch { expected: n, found: lambda.len() });
    }
    let mut out = Element::zero(n);
    for (m, c) in a.terms() {
        let mut factor = scalar::one();
        for i in 0..n {
            let e = m.alpha.0[i] as i64 - m.beta.0[i] as i64;
            factor *= scalar::pow(&lambda[i], e)?;
        }
        out.add_term(m.clone(), c * &factor);
    }
    Ok(out)
}

/// Factored automorphism: permutation, then torus, then inner (the inner part
/// acts first). The unit is carried with an exact two-sided inverse witness
/// and must be congruent to 1 modulo the sum of the height-one primes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automorphism {
    n: usize,
    perm: Perm,
    lambda: Vec<Scalar>,
    u: Element,
    u_inv: Element,
}

impl Automorphism {
    pub fn new(perm: Perm, lambda: Vec<Scalar>, u: Element, u_inv: Element) -> Result<Self> {
        let n = perm.n();
        if lambda.len() != n {
            return Err(SnError::DimensionMismatch { expected: n, found: lambda.len() });
        }
        if u.n() != n {
            return Err(SnError::DimensionMismatch { expected: n, found: u.n() });
        }
        if lambda.iter().any(Scalar::is_zero) {
            return Err(SnError::InvalidArgument("torus entries must be nonzero".into()));
        }
        if !(&u * &u_inv).is_one() || !(&u_inv * &u).is_one() {
            return Err(SnError::NotAUnit("inner witness failed the product check".into()));
        }
        let diff = &u - &Element::one(n);
        if !ideal_member(&diff, &IdealSpec::LevelSum(1))? {
            return Err(SnError::NotInIdeal {
                ideal: "a:1".into(),
                detail: "inner units must be congruent to 1 modulo the prime sum".into(),
            });
        }
        Ok(Automorphism { n, perm, lambda, u, u_inv })
    }

    pub fn identity(n: usize) -> Self {
        Automorphism {
            n,
            perm: Perm::identity(n),
            lambda: vec![scalar::one(); n],
            u: Element::one(n),
            u_inv: Element::one(n),
        }
    }

    pub fn permutation(perm: Perm) -> Self {
        let n = perm.n();
        Automorphism {
            n,
            perm,
            lambda: vec![scalar::one(); n],
            u: Element::one(n),
            u_inv: Element::one(n),
        }
    }

    pub fn torus(lambda: Vec<Scalar>) -> Result<Self> {
        let n = lambda.len();
        Automorphism::new(Perm::identity(n), lambda, Element::one(n), Element::one(n))
    }

    pub fn inner(u: Element, u_inv: Element) -> Result<Self> {
        let n = u.n();
        Automorphism::new(Perm::identity(n), vec![scalar::one(); n], u, u_inv)
    }

    /// Inner automorphism from a generator word; the witness comes from the
    /// closed-form word inverse.
    pub fn inner_from_word(w: &Word) -> Result<Self> {
        let (u, u_inv) = w.to_unit()?;
        Automorphism::inner(u, u_inv)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn perm(&self) -> &Perm {
        &self.perm
    }

    pub fn lambda(&self) -> &[Scalar] {
        &self.lambda
    }

    pub fn unit(&self) -> &Element {
        &self.u
    }

    pub fn unit_inverse(&self) -> &Element {
        &self.u_inv
    }

    /// Apply: conjugation by the unit, then the torus scaling, then the
    /// coordinate permutation. An algebra homomorphism.
    pub fn apply(&self, a: &Element) -> Result<Element> {
        if a.n() != self.n {
            return Err(SnError::DimensionMismatch { expected: self.n, found: a.n() });
        }
        let conj = &(&self.u * a) * &self.u_inv;
        let scaled = torus_apply(&self.lambda, &conj)?;
        Ok(self.perm.apply_element(&scaled))
    }

    /// Canonical composition: permutations and tori compose by conjugation
    /// rules, and the left unit is pulled through the right torus and
    /// permutation before multiplying the units. Coherence with pointwise
    /// composition is verified on the generators x_1..x_n.
    pub fn compose(&self, other: &Automorphism) -> Result<Automorphism> {
        if other.n != self.n {
            return Err(SnError::DimensionMismatch { expected: self.n, found: other.n });
        }
        let n = self.n;
        let perm = self.perm.compose(&other.perm);
        let lambda: Vec<Scalar> = (1..=n)
            .map(|i| &self.lambda[other.perm.image(i) - 1] * &other.lambda[i - 1])
            .collect();
        let inv_lambda2: Vec<Scalar> = other.lambda.iter().map(|l| l.recip()).collect();
        let moved_u = torus_apply(&inv_lambda2, &other.perm.inverse().apply_element(&self.u))?;
        let moved_u_inv =
            torus_apply(&inv_lambda2, &other.perm.inverse().apply_element(&self.u_inv))?;
        let u = &moved_u * &other.u;
        let u_inv = &other.u_inv * &moved_u_inv;
        let out = Automorphism::new(perm, lambda, u, u_inv)?;
        for i in 1..=n {
            let xi = Element::var_x(n, i);
            if out.apply(&xi)? != self.apply(&other.apply(&xi)?)? {
                return Err(SnError::InvalidArgument(
                    "composition refactoring failed the coherence check".into(),
                ));
            }
        }
        Ok(out)
    }

    /// Inverse in the factored form, verified by acting as the identity on
    /// the generators.
    pub fn invert(&self) -> Result<Automorphism> {
        let n = self.n;
        let perm = self.perm.inverse();
        let lambda: Vec<Scalar> =
            (1..=n).map(|i| self.lambda[perm.image(i) - 1].recip()).collect();
        let move_unit = |w: &Element| -> Result<Element> {
            Ok(self.perm.apply_element(&torus_apply(&self.lambda, w)?))
        };
        let out = Automorphism::new(perm, lambda, move_unit(&self.u_inv)?, move_unit(&self.u)?)?;
        let composed = self.compose(&out)?;
        for i in 1..=n {
            let xi = Element::var_x(n, i);
            if composed.apply(&xi)? != xi {
                return Err(SnError::InvalidArgument("inverse failed the identity check".into()));
            }
        }
        Ok(out)
    }

    /// Two automorphisms are equal exactly when they agree on x_1..x_n.
    pub fn rigidity_equal(&self, other: &Automorphism) -> Result<bool> {
        if other.n != self.n {
            return Err(SnError::DimensionMismatch { expected: self.n, found: other.n });
        }
        for i in 1..=self.n {
            let xi = Element::var_x(self.n, i);
            if self.apply(&xi)? != other.apply(&xi)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The Jacobian character: permutation sign times the product of the
    /// torus entries. Inner automorphisms contribute nothing.
    pub fn jacobian(&self) -> Scalar {
        let mut prod = scalar::one();
        for l in &self.lambda {
            prod *= l;
        }
        if self.perm.sign() < 0 {
            -prod
        } else {
            prod
        }
    }

    /// Determinant of the finite coefficient block of the inner unit (only
    /// meaningful in one coordinate, where inner units are finite-block).
    fn unit_block_det(&self) -> Result<Scalar> {
        let n = self.n;
        let diff = &self.u - &Element::one(n);
        if !ideal_member(&diff, &IdealSpec::MatrixIdeal)? {
            return Err(SnError::InvalidArgument(
                "block determinant needs a unit congruent to 1 modulo the matrix ideal".into(),
            ));
        }
        if diff.is_zero() {
            return Ok(scalar::one());
        }
        let mixed = to_mixed(&diff);
        let mut labels: Vec<MultiIndex> = Vec::new();
        let mut entries: Vec<(MultiIndex, MultiIndex, Scalar)> = Vec::new();
        for (m, c) in mixed.terms() {
            let mut row = Vec::new();
            let mut col = Vec::new();
            for sym in &m.0 {
                match sym {
                    CoordSymbol::E(a, b) => {
                        row.push(*a);
                        col.push(*b);
                    }
                    _ => unreachable!("full E-type checked above"),
                }
            }
            let (row, col) = (MultiIndex(row), MultiIndex(col));
            labels.push(row.clone());
            labels.push(col.clone());
            entries.push((row, col, c.clone()));
        }
        labels.sort();
        labels.dedup();
        let pos = |m: &MultiIndex| labels.iter().position(|l| l == m).unwrap();
        let d = labels.len();
        let mut mat: Vec<Vec<Scalar>> = (0..d)
            .map(|i| (0..d).map(|j| if i == j { scalar::one() } else { scalar::zero() }).collect())
            .collect();
        for (r, c, v) in entries {
            mat[pos(&r)][pos(&c)] += v;
        }
        Ok(det_dense(&mat))
    }

    /// Parity of the two-coordinate current generator in the inner unit,
    /// extracted from the determinant-degree lattice image.
    fn theta_parity(&self) -> Result<u8> {
        debug_assert_eq!(self.n, 2);
        if self.u.is_one() {
            return Ok(0);
        }
        let v = psi_prime(&self.u, 1)?;
        let c = v.coeff(2, &[1]);
        if v.coeff(1, &[2]) != -c {
            return Err(SnError::NotAUnit(
                "lattice image is outside the character kernel".into(),
            ));
        }
        Ok(c.rem_euclid(2) as u8)
    }

    /// The exotic Jacobian characters, which exist only in one and two
    /// coordinates: the torus entry times the block determinant of the inner
    /// unit (one coordinate), or the Jacobian twisted by the current-generator
    /// parity (two coordinates).
    pub fn jacobian_exotic(&self) -> Result<Scalar> {
        match self.n {
            1 => {
                let det = self.unit_block_det()?;
                Ok(&self.lambda[0] * &det)
            }
            2 => {
                let parity = self.theta_parity()?;
                let base = self.jacobian();
                Ok(if parity == 1 { -base } else { base })
            }
            n => Err(SnError::Unsupported(format!(
                "the exotic Jacobian exists only for one or two coordinates, not {n}"
            ))),
        }
    }

    /// Image in the abelianization: the permutation sign and torus product,
    /// plus the block determinant (one coordinate) or the current-generator
    /// parity (two coordinates).
    pub fn abelianization_class(&self) -> Result<AbelianClass> {
        let mut prod = scalar::one();
        for l in &self.lambda {
            prod *= l;
        }
        match self.n {
            1 => Ok(AbelianClass {
                n: 1,
                sign: None,
                torus_product: prod,
                extra: AbelianExtra::UnitDet(self.unit_block_det()?),
            }),
            2 => Ok(AbelianClass {
                n: 2,
                sign: Some(if self.perm.sign() < 0 { -1 } else { 1 }),
                torus_product: prod,
                extra: AbelianExtra::ThetaParity(self.theta_parity()?),
            }),
            _ => Ok(AbelianClass {
                n: self.n,
                sign: Some(if self.perm.sign() < 0 { -1 } else { 1 }),
                torus_product: prod,
                extra: AbelianExtra::None,
            }),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "perm": self.perm.0,
            "lambda": self.lambda.iter().map(scalar::to_string).collect::<Vec<_>>(),
            "u": self.u.to_json(),
            "u_inv": self.u_inv.to_json(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Automorphism> {
        let bad = |msg: &str| SnError::InvalidArgument(format!("automorphism JSON: {msg}"));
        let n = v.get("n").and_then(Value::as_u64).ok_or_else(|| bad("missing n"))? as usize;
        let perm: Vec<usize> = v
            .get("perm")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing perm"))?
            .iter()
            .map(|x| x.as_u64().map(|k| k as usize).ok_or_else(|| bad("bad perm entry")))
            .collect::<Result<_>>()?;
        if perm.len() != n {
            return Err(bad("perm length differs from n"));
        }
        let lambda: Vec<Scalar> = v
            .get("lambda")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing lambda"))?
            .iter()
            .map(|x| {
                x.as_str()
                    .ok_or_else(|| bad("lambda entries must be fraction strings"))
                    .and_then(scalar::parse)
            })
            .collect::<Result<_>>()?;
        let u = Element::from_json(v.get("u").ok_or_else(|| bad("missing u"))?)?;
        let u_inv = Element::from_json(v.get("u_inv").ok_or_else(|| bad("missing u_inv"))?)?;
        Automorphism::new(Perm::from_images(perm)?, lambda, u, u_inv)
    }
}

impl fmt::Display for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "perm {:?}, lambda [{}], unit {}",
            self.perm.0,
            self.lambda.iter().map(scalar::to_string).collect::<Vec<_>>().join(", "),
            self.u
        )
    }
}

/// Abelianization data. The extra component depends on the number of
/// coordinates: a determinant in one, a parity bit in two, nothing above.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianClass {
    pub n: usize,
    pub sign: Option<i8>,
    pub torus_product: Scalar,
    pub extra: AbelianExtra,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AbelianExtra {
    None,
    UnitDet(Scalar),
    ThetaParity(u8),
}

impl AbelianClass {
    /// Componentwise product (signs and parities multiply in the two-element
    /// group); the class of a composition is the product of the classes.
    pub fn combine(&self, other: &AbelianClass) -> Result<AbelianClass> {
        if self.n != other.n {
            return Err(SnError::DimensionMismatch { expected: self.n, found: other.n });
        }
        let sign = match (self.sign, other.sign) {
            (Some(a), Some(b)) => Some(a * b),
            (None, None) => None,
            _ => return Err(SnError::InvalidArgument("incompatible classes".into())),
        };
        let extra = match (&self.extra, &other.extra) {
            (AbelianExtra::None, AbelianExtra::None) => AbelianExtra::None,
            (AbelianExtra::UnitDet(a), AbelianExtra::UnitDet(b)) => AbelianExtra::UnitDet(a * b),
            (AbelianExtra::ThetaParity(a), AbelianExtra::ThetaParity(b)) => {
                AbelianExtra::ThetaParity((a + b) % 2)
            }
            _ => return Err(SnError::InvalidArgument("incompatible classes".into())),
        };
        Ok(AbelianClass {
            n: self.n,
            sign,
            torus_product: &self.torus_product * &other.torus_product,
            extra,
        })
    }

    pub fn to_json(&self) -> Value {
        let mut obj = serde_json::Map::new();
        obj.insert("n".into(), json!(self.n));
        if let Some(s) = self.sign {
            obj.insert("sign".into(), json!(s));
        }
        obj.insert("torus_product".into(), json!(scalar::to_string(&self.torus_product)));
        match &self.extra {
            AbelianExtra::None => {}
            AbelianExtra::UnitDet(d) => {
                obj.insert("unit_det".into(), json!(scalar::to_string(d)));
            }
            AbelianExtra::ThetaParity(p) => {
                obj.insert("theta_parity".into(), json!(p));
            }
        }
        Value::Object(obj)
    }
}

/// The distinguished generator families of the automorphism group.
#[derive(Debug, Clone)]
pub enum GnGenerator {
    /// Coordinate transposition (i j).
    Transposition { i: usize, j: usize },
    /// Torus scaling of the first coordinate only.
    TorusFirst { lambda: Scalar },
    /// Inner by the current generator over the initial segment {1..s}, s >= 2.
    InnerTheta { s: usize },
    /// Inner by 1 + x_n^t E or 1 + y_n^t E over the initial segment {1..s},
    /// s <= n-1, with one exponent vector zero and the other nonzero.
    InnerMonomial { use_x: bool, t: u32, s: usize, alpha: Vec<u32>, alpha_first: bool },
    /// Inner by the mu scaling 1 + (lambda - 1) E_00({1..s}).
    InnerScaling { s: usize, lambda: Scalar },
    /// Inner by 1 + E_{0 alpha} or 1 + E_{alpha 0} over {1..s}, alpha != 0.
    InnerElementary { s: usize, alpha: Vec<u32>, alpha_first: bool },
}

/// Build one named generator as a factored automorphism with witness.
pub fn gn_generator(n: usize, kind: &GnGenerator) -> Result<Automorphism> {
    let segment = |s: usize| -> Vec<usize> { (1..=s).collect() };
    match kind {
        GnGenerator::Transposition { i, j } => {
            Ok(Automorphism::permutation(Perm::transposition(n, *i, *j)?))
        }
        GnGenerator::TorusFirst { lambda } => {
            if n == 0 {
                return Err(SnError::InvalidArgument("empty coordinate set".into()));
            }
            let mut v = vec![scalar::one(); n];
            v[0] = lambda.clone();
            Automorphism::torus(v)
        }
        GnGenerator::InnerTheta { s } => {
            if *s < 2 || *s > n {
                return Err(SnError::InvalidArgument(format!("theta generator needs 2 <= s <= {n}")));
            }
            let w = Word::new(n, vec![(Atom::Theta { j_set: segment(*s), i: *s, j: 1 }, 1)]);
            Automorphism::inner_from_word(&w)
        }
        GnGenerator::InnerMonomial { use_x, t, s, alpha, alpha_first } => {
            if *s < 1 || *s + 1 > n {
                return Err(SnError::InvalidArgument(format!(
                    "monomial elementary needs 1 <= s <= {}",
                    n.saturating_sub(1)
                )));
            }
            if *t == 0 || alpha.len() != *s || alpha.iter().all(|&a| a == 0) {
                return Err(SnError::InvalidArgument(
                    "monomial elementary needs t >= 1 and a nonzero exponent vector".into(),
                ));
            }
            let zero = MultiIndex(vec![0; *s]);
            let a_idx = MultiIndex(alpha.clone());
            let (al, be) = if *alpha_first { (a_idx, zero) } else { (zero, a_idx) };
            let coeff = if *use_x {
                ElemCoeff::XPow { var: n, t: *t, scale: scalar::one() }
            } else {
                ElemCoeff::YPow { var: n, t: *t, scale: scalar::one() }
            };
            let w = Word::new(
                n,
                vec![(Atom::Elementary { i_set: segment(*s), coeff, alpha: al, beta: be }, 1)],
            );
            Automorphism::inner_from_word(&w)
        }
        GnGenerator::InnerScaling { s, lambda } => {
            if *s < 1 || *s > n {
                return Err(SnError::InvalidArgument(format!("scaling needs 1 <= s <= {n}")));
            }
            if lambda.is_zero() {
                return Err(SnError::InvalidArgument("scaling needs a nonzero parameter".into()));
            }
            let w = Word::new(
                n,
                vec![(Atom::Mu { i_set: segment(*s), payload: MuPayload::Scalar(lambda.clone()) }, 1)],
            );
            Automorphism::inner_from_word(&w)
        }
        GnGenerator::InnerElementary { s, alpha, alpha_first } => {
            if *s < 1 || *s > n {
                return Err(SnError::InvalidArgument(format!("elementary needs 1 <= s <= {n}")));
            }
            if alpha.len() != *s || alpha.iter().all(|&a| a == 0) {
                return Err(SnError::InvalidArgument(
                    "elementary needs a nonzero exponent vector over the segment".into(),
                ));
            }
            let zero = MultiIndex(vec![0; *s]);
            let a_idx = MultiIndex(alpha.clone());
            let (al, be) = if *alpha_first { (a_idx, zero) } else { (zero, a_idx) };
            let w = Word::new(
                n,
                vec![(
                    Atom::Elementary {
                        i_set: segment(*s),
                        coeff: ElemCoeff::Scalar(scalar::one()),
                        alpha: al,
                        beta: be,
                    },
                    1,
                )],
            );
            Automorphism::inner_from_word(&w)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};
    use crate::units::theta;

    fn omega_theta(n: usize, j_set: &[usize], i: usize, j: usize) -> Automorphism {
        let u = theta(n, j_set, i, j).unwrap();
        let u_inv = theta(n, j_set, j, i).unwrap();
        Automorphism::inner(u, u_inv).unwrap()
    }

    #[test]
    fn identity_and_torus_action() {
        let n = 2;
        let id = Automorphism::identity(n);
        let a = &Element::var_x(n, 1) * &Element::var_y(n, 2);
        assert_eq!(id.apply(&a).unwrap(), a);
        let t = Automorphism::torus(vec![int(2), rat(1, 3)]).unwrap();
        assert_eq!(t.apply(&Element::var_x(n, 1)).unwrap(), Element::var_x(n, 1).scale(&int(2)));
        assert_eq!(t.apply(&Element::var_y(n, 1)).unwrap(), Element::var_y(n, 1).scale(&rat(1, 2)));
        assert_eq!(t.apply(&Element::var_x(n, 2)).unwrap(), Element::var_x(n, 2).scale(&rat(1, 3)));
    }

    #[test]
    fn apply_is_a_homomorphism() {
        let n = 2;
        let sigma = omega_theta(n, &[1, 2], 1, 2);
        let a = &Element::var_x(n, 1) + &Element::var_y(n, 2).pow(2);
        let b = &Element::var_y(n, 1) * &Element::var_x(n, 2);
        let lhs = sigma.apply(&(&a * &b)).unwrap();
        let rhs = &sigma.apply(&a).unwrap() * &sigma.apply(&b).unwrap();
        assert_eq!(lhs, rhs);
        // defining relations are preserved: left inverses and all
        // cross-coordinate commutations
        let image = |v: &Element| sigma.apply(v).unwrap();
        for i in 1..=n {
            let yi = image(&Element::var_y(n, i));
            let xi = image(&Element::var_x(n, i));
            assert!((&yi * &xi).is_one());
            for j in 1..=n {
                if i == j {
                    continue;
                }
                let xj = image(&Element::var_x(n, j));
                let yj = image(&Element::var_y(n, j));
                assert_eq!(&xi * &xj, &xj * &xi);
                assert_eq!(&xi * &yj, &yj * &xi);
                assert_eq!(&yi * &yj, &yj * &yi);
            }
        }
    }

    #[test]
    fn composition_coherence() {
        let n = 2;
        let s = Automorphism::permutation(Perm::transposition(n, 1, 2).unwrap());
        let t = Automorphism::torus(vec![int(3), rat(-1, 2)]).unwrap();
        let w = omega_theta(n, &[1, 2], 2, 1);
        let st = s.compose(&t).unwrap();
        let stw = st.compose(&w).unwrap();
        let a = &Element::var_x(n, 1) * &Element::var_y(n, 2).pow(2);
        let lhs = stw.apply(&a).unwrap();
        let rhs = s.apply(&t.apply(&w.apply(&a).unwrap()).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverse_round_trip() {
        let n = 2;
        let t = Automorphism::torus(vec![int(2), int(5)]).unwrap();
        assert_eq!(t.invert().unwrap().lambda()[0], rat(1, 2));
        let w = omega_theta(n, &[1, 2], 1, 2);
        let winv = w.invert().unwrap();
        assert_eq!(winv.unit(), &theta(n, &[1, 2], 2, 1).unwrap());
        let mix = Automorphism::permutation(Perm::transposition(n, 1, 2).unwrap())
            .compose(&t)
            .unwrap()
            .compose(&w)
            .unwrap();
        let inv = mix.invert().unwrap();
        let both = mix.compose(&inv).unwrap();
        assert!(both.rigidity_equal(&Automorphism::identity(n)).unwrap());
    }

    #[test]
    fn rigidity_decides_equality() {
        let n = 2;
        // an inner scaling differs from the identity on some x_i
        let m = crate::units::mu_scalar(n, &[1, 2], &int(3)).unwrap();
        let m_inv = crate::units::mu_scalar(n, &[1, 2], &rat(1, 3)).unwrap();
        let sigma = Automorphism::inner(m, m_inv).unwrap();
        assert!(!sigma.rigidity_equal(&Automorphism::identity(n)).unwrap());
        // two different factorizations of one map: the commutator of theta
        // with a scaling, rebuilt as a composition chain, against the single
        // collapsed scaling
        let th = omega_theta(n, &[1, 2], 1, 2);
        let mu2 = Automorphism::inner(
            crate::units::mu_scalar(n, &[1], &int(2)).unwrap(),
            crate::units::mu_scalar(n, &[1], &rat(1, 2)).unwrap(),
        )
        .unwrap();
        let chain = th
            .compose(&mu2)
            .unwrap()
            .compose(&th.invert().unwrap())
            .unwrap()
            .compose(&mu2.invert().unwrap())
            .unwrap();
        let collapsed = Automorphism::inner(
            crate::units::mu_scalar(n, &[1, 2], &rat(1, 2)).unwrap(),
            crate::units::mu_scalar(n, &[1, 2], &int(2)).unwrap(),
        )
        .unwrap();
        assert!(chain.rigidity_equal(&collapsed).unwrap());
        // and then the y images agree too
        for i in 1..=n {
            let yi = Element::var_y(n, i);
            assert_eq!(chain.apply(&yi).unwrap(), collapsed.apply(&yi).unwrap());
        }
    }

    #[test]
    fn jacobians() {
        let n = 2;
        let s = Automorphism::permutation(Perm::transposition(n, 1, 2).unwrap());
        assert_eq!(s.jacobian(), int(-1));
        let t = Automorphism::torus(vec![int(2), rat(1, 3)]).unwrap();
        assert_eq!(t.jacobian(), rat(2, 3));
        let w = omega_theta(n, &[1, 2], 1, 2);
        assert_eq!(w.jacobian(), int(1));
        // exotic: the current generator flips the sign
        assert_eq!(w.jacobian_exotic().unwrap(), int(-1));
        // squares agree
        let ww = w.compose(&w).unwrap();
        assert_eq!(ww.jacobian_exotic().unwrap(), int(1));
    }

    #[test]
    fn exotic_one_coordinate() {
        let n = 1;
        let e01 = Element::matrix_unit(n, &[1], &[0], &[1]).unwrap();
        let u = &Element::one(n) + &e01;
        let u_inv = &Element::one(n) - &e01;
        let sigma = Automorphism::new(
            Perm::identity(n),
            vec![int(7)],
            u,
            u_inv,
        )
        .unwrap();
        // det(1 + nilpotent) = 1, so the exotic value is the torus entry
        assert_eq!(sigma.jacobian_exotic().unwrap(), int(7));
        assert_eq!(sigma.jacobian(), int(7));
        // a diagonal unit with nontrivial determinant separates the two
        let e00 = Element::matrix_unit(n, &[1], &[0], &[0]).unwrap();
        let v = &Element::one(n) + &e00; // block det 2
        let v_inv = &Element::one(n) - &e00.scale(&rat(1, 2));
        let tau = Automorphism::inner(v, v_inv).unwrap();
        assert_eq!(tau.jacobian(), int(1));
        assert_eq!(tau.jacobian_exotic().unwrap(), int(2));
    }

    #[test]
    fn abelian_classes() {
        // two coordinates: the current generator has parity 1 and trivial
        // sign/torus data
        let w = omega_theta(2, &[1, 2], 1, 2);
        let c = w.abelianization_class().unwrap();
        assert_eq!(c.sign, Some(1));
        assert_eq!(c.torus_product, int(1));
        assert_eq!(c.extra, AbelianExtra::ThetaParity(1));
        // three coordinates: inner automorphisms are trivial in the quotient
        let w3 = omega_theta(3, &[1, 2, 3], 1, 2);
        let c3 = w3.abelianization_class().unwrap();
        assert_eq!(c3.sign, Some(1));
        assert_eq!(c3.torus_product, int(1));
        assert_eq!(c3.extra, AbelianExtra::None);
        // identity is neutral
        let idc = Automorphism::identity(3).abelianization_class().unwrap();
        assert_eq!(idc.combine(&c3).unwrap(), c3);
    }

    #[test]
    fn generator_constructors() {
        let n = 3;
        let t = gn_generator(n, &GnGenerator::TorusFirst { lambda: int(2) }).unwrap();
        assert_eq!(t.lambda(), &[int(2), int(1), int(1)]);
        let tr = gn_generator(n, &GnGenerator::Transposition { i: 1, j: 2 }).unwrap();
        assert_eq!(tr.perm().images(), &[2, 1, 3]);
        let th = gn_generator(n, &GnGenerator::InnerTheta { s: 2 }).unwrap();
        assert_eq!(th.unit(), &theta(n, &[1, 2], 2, 1).unwrap());
        assert!(gn_generator(n, &GnGenerator::InnerTheta { s: 1 }).is_err());
        let el = gn_generator(
            n,
            &GnGenerator::InnerMonomial { use_x: true, t: 2, s: 2, alpha: vec![1, 0], alpha_first: false },
        )
        .unwrap();
        assert!(!el.unit().is_one());
        assert!(gn_generator(
            n,
            &GnGenerator::InnerMonomial { use_x: true, t: 0, s: 2, alpha: vec![1, 0], alpha_first: false }
        )
        .is_err());
    }

    #[test]
    fn json_round_trip() {
        let n = 2;
        let mix = Automorphism::permutation(Perm::transposition(n, 1, 2).unwrap())
            .compose(&Automorphism::torus(vec![int(2), rat(1, 3)]).unwrap())
            .unwrap()
            .compose(&omega_theta(n, &[1, 2], 2, 1))
            .unwrap();
        let j = mix.to_json();
        let back = Automorphism::from_json(&j).unwrap();
        assert!(mix.rigidity_equal(&back).unwrap());
        assert_eq!(mix, back);
    }
}
