//! The free lattice on pairs (j, I) with j outside I, the determinant-degree
//! homomorphism into it, and the characters indexed by the unions J = {j} u I.
//!
//! The image of the level-s unit group is exactly the common kernel of the
//! characters, a free abelian group of rank s * (n choose s+1) spanned by the
//! differences -(max J, J\max J) + (j, J\j); the quotient of the full lattice
//! by the image is free of rank (n choose s+1), one generator per union set.
//! Factors congruent to 1 modulo a single prime intersection, or modulo any
//! deeper level, map to zero.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::element::Element;
use crate::error::{Result, SnError};
use crate::ideal::{ideal_member, IdealSpec};
use crate::units::image::{det_degree, matrix_image};

/// Finitely supported integer vector on the basis (j, I), j not in I.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LatticeVector {
    entries: BTreeMap<(usize, Vec<usize>), i64>,
}

impl LatticeVector {
    pub fn zero() -> Self {
        LatticeVector::default()
    }

    pub fn basis(j: usize, i_set: &[usize]) -> Self {
        let mut v = LatticeVector::zero();
        v.add(j, i_set, 1);
        v
    }

    pub fn add(&mut self, j: usize, i_set: &[usize], k: i64) {
        if k == 0 {
            return;
        }
        debug_assert!(!i_set.contains(&j), "basis pair needs j outside I");
        let mut key = i_set.to_vec();
        key.sort_unstable();
        let e = self.entries.entry((j, key)).or_insert(0);
        *e += k;
        if *e == 0 {
            self.entries.retain(|_, v| *v != 0);
        }
    }

    pub fn coeff(&self, j: usize, i_set: &[usize]) -> i64 {
        let mut key = i_set.to_vec();
        key.sort_unstable();
        self.entries.get(&(j, key)).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, Vec<usize>), &i64)> {
        self.entries.iter()
    }

    pub fn plus(&self, other: &LatticeVector) -> LatticeVector {
        let mut out = self.clone();
        for ((j, i_set), k) in &other.entries {
            out.add(*j, i_set, *k);
        }
        out
    }

    pub fn neg(&self) -> LatticeVector {
        let mut out = LatticeVector::zero();
        for ((j, i_set), k) in &self.entries {
            out.add(*j, i_set, -k);
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let items: Vec<Value> = self
            .entries
            .iter()
            .map(|((j, i_set), k)| json!({"j": j, "I": i_set, "n": k}))
            .collect();
        Value::Array(items)
    }

    pub fn from_json(v: &Value) -> Result<LatticeVector> {
        let bad = |msg: &str| SnError::InvalidArgument(format!("lattice vector JSON: {msg}"));
        let arr = v.as_array().ok_or_else(|| bad("expected an array"))?;
        let mut out = LatticeVector::zero();
        for item in arr {
            let j = item.get("j").and_then(Value::as_u64).ok_or_else(|| bad("missing j"))? as usize;
            let i_set: Vec<usize> = item
                .get("I")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("missing I"))?
                .iter()
                .map(|x| x.as_u64().map(|v| v as usize).ok_or_else(|| bad("bad coordinate")))
                .collect::<Result<_>>()?;
            let k = item.get("n").and_then(Value::as_i64).ok_or_else(|| bad("missing n"))?;
            if i_set.contains(&j) {
                return Err(bad("j must lie outside I"));
            }
            out.add(j, &i_set, k);
        }
        Ok(out)
    }
}

fn subsets_of_size(n: usize, s: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, s: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == s {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            cur.push(i);
            rec(i + 1, n, s, cur, out);
            cur.pop();
        }
    }
    rec(1, n, s, &mut cur, &mut out);
    out
}

/// Determinant-degree homomorphism at level s: for every block set I of size
/// s, the exponent vector of the block determinant contributes its coordinate
/// at j (outside I) to the basis pair (j, I). Determinant failures certify
/// that the input was not a unit.
pub fn psi_prime(u: &Element, s: usize) -> Result<LatticeVector> {
    let n = u.n();
    if s < 1 || s >= n {
        return Err(SnError::InvalidArgument(format!("level {s} out of range 1..={}", n - 1)));
    }
    let diff = u - &Element::one(n);
    if !ideal_member(&diff, &IdealSpec::LevelSum(s))? {
        return Err(SnError::NotInIdeal {
            ideal: format!("a:{s}"),
            detail: "the homomorphism needs u - 1 at the given level".into(),
        });
    }
    let mut out = LatticeVector::zero();
    for i_set in subsets_of_size(n, s) {
        let m = matrix_image(u, &i_set)?;
        let (_, degs) = det_degree(&m).map_err(|e| {
            SnError::NotAUnit(format!("block {i_set:?}: {e}"))
        })?;
        for (pos, &j) in m.laurent_coords.iter().enumerate() {
            out.add(j, &i_set, degs[pos]);
        }
    }
    Ok(out)
}

/// Character of the lattice summing the coefficients of all pairs whose union
/// {j} u I equals the given set.
pub fn chi(j_union: &[usize], v: &LatticeVector) -> i64 {
    let mut target = j_union.to_vec();
    target.sort_unstable();
    target.dedup();
    let mut total = 0;
    for ((j, i_set), k) in v.iter() {
        let mut union = i_set.clone();
        union.push(*j);
        union.sort_unstable();
        if union == target {
            total += k;
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};
    use crate::units::{mu_scalar, theta};

    #[test]
    fn theta_images_are_difference_vectors() {
        // psi'(theta_{ij}(J)) = -(i, J\i) + (j, J\j)
        for (n, j_set, s) in [(2usize, vec![1usize, 2], 1usize), (3, vec![1, 2, 3], 2), (3, vec![1, 3], 1)] {
            for &i in &j_set {
                for &j in &j_set {
                    if i == j {
                        continue;
                    }
                    let th = theta(n, &j_set, i, j).unwrap();
                    let v = psi_prime(&th, s).unwrap();
                    let minus_i: Vec<usize> = j_set.iter().copied().filter(|&k| k != i).collect();
                    let minus_j: Vec<usize> = j_set.iter().copied().filter(|&k| k != j).collect();
                    let mut expect = LatticeVector::zero();
                    expect.add(i, &minus_i, -1);
                    expect.add(j, &minus_j, 1);
                    assert_eq!(v, expect, "n={n} J={j_set:?} i={i} j={j}");
                }
            }
        }
    }

    #[test]
    fn identity_and_scalings_map_to_zero() {
        assert!(psi_prime(&Element::one(3), 1).unwrap().is_zero());
        let m = mu_scalar(3, &[2], &rat(5, 3)).unwrap();
        assert!(psi_prime(&m, 1).unwrap().is_zero());
    }

    #[test]
    fn chi_kills_theta_images() {
        let n = 3;
        for j_set in [vec![1usize, 2], vec![1, 3], vec![2, 3], vec![1, 2, 3]] {
            let s = j_set.len() - 1;
            let th = theta(n, &j_set, *j_set.last().unwrap(), j_set[0]).unwrap();
            let v = psi_prime(&th, s).unwrap();
            assert_eq!(chi(&j_set, &v), 0);
            // a single basis pair with matching union evaluates to 1
            let minus_last: Vec<usize> =
                j_set.iter().copied().filter(|k| k != j_set.last().unwrap()).collect();
            assert_eq!(chi(&j_set, &LatticeVector::basis(*j_set.last().unwrap(), &minus_last)), 1);
        }
    }

    #[test]
    fn prime_block_and_deeper_factors_map_to_zero() {
        use crate::monomial::MultiIndex;
        use crate::units::words::{Atom, ElemCoeff, Word};
        let n = 3;
        let s = 1;
        // a product of units congruent to 1 modulo single prime intersections
        // (block factors at the level) and modulo the deeper level: its
        // lattice image at level s vanishes
        let w = Word::new(
            n,
            vec![
                (
                    Atom::Elementary {
                        i_set: vec![1],
                        coeff: ElemCoeff::XPow { var: 2, t: 2, scale: int(1) },
                        alpha: MultiIndex(vec![0]),
                        beta: MultiIndex(vec![2]),
                    },
                    1,
                ),
                (Atom::Mu { i_set: vec![2], payload: crate::units::words::MuPayload::Scalar(rat(5, 2)) }, 1),
                (Atom::Theta { j_set: vec![1, 2, 3], i: 3, j: 1 }, 1),
                (Atom::Theta { j_set: vec![1, 2, 3], i: 1, j: 3 }, 1),
                (
                    Atom::Elementary {
                        i_set: vec![2, 3],
                        coeff: ElemCoeff::Scalar(int(-2)),
                        alpha: MultiIndex(vec![1, 0]),
                        beta: MultiIndex(vec![0, 1]),
                    },
                    1,
                ),
            ],
        );
        let u = w.to_element().unwrap();
        assert!(psi_prime(&u, s).unwrap().is_zero());
        // while a current generator of the level does not vanish
        let th = theta(n, &[1, 2], 1, 2).unwrap();
        assert!(!psi_prime(&th, s).unwrap().is_zero());
    }

    #[test]
    fn kernel_basis_is_attained_and_products_are_exact() {
        use crate::units::words::{Atom, Word};
        let n = 3;
        // the distinguished generators attain the kernel-lattice basis
        for j_set in [vec![1usize, 2], vec![1, 3], vec![2, 3], vec![1, 2, 3]] {
            let s = j_set.len() - 1;
            let top = *j_set.last().unwrap();
            for &j in j_set.iter().filter(|&&j| j != top) {
                let th = theta(n, &j_set, top, j).unwrap();
                let v = psi_prime(&th, s).unwrap();
                let minus_top: Vec<usize> = j_set.iter().copied().filter(|&k| k != top).collect();
                let minus_j: Vec<usize> = j_set.iter().copied().filter(|&k| k != j).collect();
                let mut basis = LatticeVector::zero();
                basis.add(top, &minus_top, -1);
                basis.add(j, &minus_j, 1);
                assert_eq!(v, basis);
            }
        }
        // distinct exponent vectors of the top-level generators give distinct
        // lattice images
        let full: Vec<usize> = (1..=n).collect();
        let word = |m: &[i64]| {
            let mut w = Word::identity(n);
            for (j0, &e) in m.iter().enumerate() {
                if e != 0 {
                    w.push(Atom::Theta { j_set: full.clone(), i: n, j: j0 + 1 }, e);
                }
            }
            w
        };
        let exps = [vec![0i64, 0], vec![1, 0], vec![0, 1], vec![-1, 2], vec![2, -1]];
        let mut images = Vec::new();
        for m in &exps {
            let u = word(m).to_element().unwrap();
            images.push(psi_prime(&u, n - 1).unwrap());
        }
        for i in 0..images.len() {
            for j in i + 1..images.len() {
                assert_ne!(images[i], images[j], "exponents {:?} vs {:?}", exps[i], exps[j]);
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let mut v = LatticeVector::zero();
        v.add(3, &[1, 2], -2);
        v.add(1, &[2], 5);
        let j = v.to_json();
        assert_eq!(LatticeVector::from_json(&j).unwrap(), v);
    }
}
