//! Fredholm machinery on the polynomial module: truncated kernel dimensions
//! with stabilization detection, the index (cokernel via the involution, which
//! is the formal adjoint for the monomial inner product), per-coordinate index
//! homomorphisms on 1 + a_{n,n-1}, invariance under finite-rank perturbation,
//! and the kernel/cokernel matching correction of an index-zero map.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::action::{apply, PolyElement};
use crate::element::Element;
use crate::error::{Result, SnError};
use crate::ideal::{ideal_member, IdealSpec};
use crate::linalg::{invert_dense, Echelon, SparseRow};
use crate::mixed::to_mixed;
use crate::monomial::MultiIndex;
use crate::scalar::{self, Scalar};
use crate::units::image::{det_degree, matrix_image};

/// Truncation control: scan cube truncations of increasing side, declare the
/// dimension stable once it is constant for `window` consecutive degrees at or
/// past `floor`, and fail loudly past `cap`.
#[derive(Debug, Clone, Copy)]
pub struct Stabilization {
    pub window: u32,
    pub cap: u32,
    pub floor: u32,
}

impl Stabilization {
    /// Defaults: window 3, cap = 4 * support degree + 8, floor = support
    /// degree of the operator.
    pub fn for_element(a: &Element) -> Self {
        let s = a.support_degree();
        Stabilization { window: 3, cap: 4 * s + 8, floor: s }
    }

    pub fn with_window(mut self, window: u32) -> Self {
        self.window = window.max(1);
        self
    }

    pub fn with_cap(mut self, cap: u32) -> Self {
        self.cap = cap;
        self
    }
}

/// Monomials of the cube box (all exponents <= d) in canonical order.
fn box_monomials(n: usize, d: u32) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    loop {
        out.push(MultiIndex(cur.clone()));
        let mut i = 0;
        loop {
            if i == n {
                out.sort();
                return out;
            }
            if cur[i] < d {
                cur[i] += 1;
                for c in cur.iter_mut().take(i) {
                    *c = 0;
                }
                break;
            }
            i += 1;
        }
    }
}

/// Echelon form of the action of `a` on polynomials supported in the cube of
/// side `d`. The image is not truncated, so nullspace members are global
/// kernel vectors.
fn box_echelon(a: &Element, d: u32) -> (Vec<MultiIndex>, Echelon) {
    let n = a.n();
    let cols = box_monomials(n, d);
    // rows indexed by image monomials
    let mut rows: BTreeMap<MultiIndex, Vec<(usize, Scalar)>> = BTreeMap::new();
    for (j, gamma) in cols.iter().enumerate() {
        let image = apply(a, &PolyElement::monomial(gamma.clone(), scalar::one()))
            .expect("same ambient dimension");
        for (mu, c) in image.terms() {
            rows.entry(mu.clone()).or_default().push((j, c.clone()));
        }
    }
    let mut ech = Echelon::new(cols.len());
    for (_, mut row) in rows {
        row.sort_by_key(|(c, _)| *c);
        ech.insert(row as SparseRow);
    }
    (cols, ech)
}

/// Kernel basis of the action restricted to the cube of side `d`.
fn kernel_in_box(a: &Element, d: u32) -> Vec<PolyElement> {
    let n = a.n();
    let (cols, mut ech) = box_echelon(a, d);
    ech.nullspace()
        .into_iter()
        .map(|v| {
            let mut p = PolyElement::zero(n);
            for (col, c) in v {
                p.add_term(cols[col].clone(), c);
            }
            p
        })
        .collect()
}

/// Stabilized kernel dimension of the action of `a`.
pub fn kernel_dim(a: &Element, params: Stabilization) -> Result<u32> {
    kernel_data(a, params, false).map(|(dims, _, _)| dims)
}

/// Stabilized kernel with basis and the truncation degree used.
pub fn kernel_basis(a: &Element, params: Stabilization) -> Result<(Vec<PolyElement>, u32)> {
    kernel_data(a, params, true).map(|(_, basis, d)| (basis, d))
}

fn kernel_data(a: &Element, params: Stabilization, want_basis: bool) -> Result<(u32, Vec<PolyElement>, u32)> {
    let mut run = 0u32;
    let mut prev: Option<usize> = None;
    let mut d = params.floor;
    while d <= params.cap {
        let (cols, ech) = box_echelon(a, d);
        let dim = cols.len() - ech.rank();
        run = match prev {
            Some(p) if p == dim => run + 1,
            _ => 1,
        };
        prev = Some(dim);
        if run >= params.window {
            let basis = if want_basis { kernel_in_box(a, d) } else { Vec::new() };
            return Ok((dim as u32, basis, d));
        }
        d += 1;
    }
    Err(SnError::NotStabilized { cap: params.cap.max(params.floor), window: params.window })
}

/// Kernel dimension, cokernel dimension, index, and the truncation degree at
/// which both sides stabilized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexReport {
    pub kernel_dim: u32,
    pub coker_dim: u32,
    pub index: i64,
    pub stabilized_at: u32,
}

impl IndexReport {
    pub fn to_json(&self) -> Value {
        json!({
            "ker": self.kernel_dim,
            "coker": self.coker_dim,
            "index": self.index,
            "stabilized_at": self.stabilized_at,
        })
    }
}

/// Fredholm index of the action of `a`: kernel dimension minus cokernel
/// dimension, the latter computed as the kernel dimension of the involuted
/// element (the formal adjoint under the monomial inner product).
pub fn index(a: &Element, params: Stabilization) -> Result<IndexReport> {
    let (ker, _, d1) = kernel_data(a, params, false)?;
    let adj = a.involution();
    let (coker, _, d2) = kernel_data(&adj, params, false)?;
    Ok(IndexReport {
        kernel_dim: ker,
        coker_dim: coker,
        index: ker as i64 - coker as i64,
        stabilized_at: d1.max(d2),
    })
}

pub fn index_default(a: &Element) -> Result<IndexReport> {
    index(a, Stabilization::for_element(a))
}

/// True when the index survives a finite-rank perturbation from the matrix
/// ideal.
pub fn perturb_invariance_check(a: &Element, f: &Element) -> Result<bool> {
    if !ideal_member(f, &IdealSpec::MatrixIdeal)? {
        return Err(SnError::NotInIdeal {
            ideal: "F".into(),
            detail: "perturbation must lie in the matrix ideal".into(),
        });
    }
    let base = index(a, Stabilization::for_element(a))?;
    let sum = a.checked_add(f)?;
    let perturbed = index(&sum, Stabilization::for_element(&sum))?;
    Ok(base.index == perturbed.index)
}

/// Split u - 1 (which must lie in a_{n,n-1}) into components a_i with
/// a_i in p_{Ci}. Per-coordinate assignment is by the E-type of each mixed
/// term; full-type terms go to the component of `lowest` (coordinates below
/// `lowest` must already be clean).
pub fn ann1_components(u: &Element, lowest: usize) -> Result<Vec<Element>> {
    let n = u.n();
    if n < 2 {
        return Err(SnError::InvalidArgument(
            "per-coordinate index decomposition needs at least two coordinates".into(),
        ));
    }
    let diff = u - &Element::one(n);
    if !ideal_member(&diff, &IdealSpec::LevelSum(n - 1))? {
        return Err(SnError::NotInIdeal {
            ideal: format!("a:{}", n - 1),
            detail: "u - 1 must have E-type of size >= n-1 in every mixed term".into(),
        });
    }
    let mixed = to_mixed(&diff);
    let mut parts: Vec<crate::mixed::MixedElement> =
        (0..n).map(|_| crate::mixed::MixedElement::zero(n)).collect();
    for (m, c) in mixed.terms() {
        let t = m.e_type();
        let coord = if t.len() == n {
            lowest
        } else {
            // E-type is the complement of exactly one coordinate
            (1..=n).find(|i| !t.contains(i)).expect("type of size n-1")
        };
        parts[coord - 1].add_term(m.clone(), c.clone());
    }
    Ok(parts.into_iter().map(|p| crate::mixed::from_mixed(&p)).collect())
}

/// Per-coordinate index vector of u in (1 + a_{n,n-1})*: coordinate i is the
/// index of 1 + a_i. Computed by the truncation oracle and cross-checked
/// against the negated determinant degree of the Laurent matrix image.
pub fn ind_vector(u: &Element) -> Result<Vec<i64>> {
    let n = u.n();
    let comps = ann1_components(u, 1)?;
    let mut out = Vec::with_capacity(n);
    for (i, a_i) in comps.iter().enumerate() {
        out.push(ind_one_coordinate(u, a_i, i + 1)?);
    }
    Ok(out)
}

/// ind_i(u): index of the i-th component of u = 1 + sum a_k.
pub fn ind_i(u: &Element, i: usize) -> Result<i64> {
    let n = u.n();
    if i < 1 || i > n {
        return Err(SnError::InvalidArgument(format!("coordinate {i} out of range 1..={n}")));
    }
    let comps = ann1_components(u, 1)?;
    ind_one_coordinate(u, &comps[i - 1], i)
}

fn ind_one_coordinate(u: &Element, a_i: &Element, i: usize) -> Result<i64> {
    let n = u.n();
    let op = &Element::one(n) + a_i;
    let oracle = index(&op, Stabilization::for_element(&op))?.index;

    // fast path: the x_i-degree of the determinant of the block image over
    // the Laurent ring of coordinate i, negated
    let coords: Vec<usize> = (1..=n).filter(|&k| k != i).collect();
    let m = matrix_image(u, &coords)?;
    let (_, degs) = det_degree(&m)?;
    let fast = -degs[0];

    if fast != oracle {
        return Err(SnError::NotAUnit(format!(
            "coordinate {i}: determinant-degree index {fast} disagrees with the truncation oracle {oracle}; \
             the input is outside the certified unit class"
        )));
    }
    Ok(oracle)
}

/// For an index-zero Fredholm element, produce a matrix-ideal element f such
/// that a + f acts invertibly: f matches a kernel basis to a monomial
/// complement of the image and vanishes on a monomial complement of the
/// kernel. Complement monomials are chosen greedily in canonical order.
pub fn fredholm_correction(a: &Element, params: Stabilization) -> Result<Element> {
    let n = a.n();
    let report = index(a, params)?;
    if report.index != 0 {
        return Err(SnError::InvalidArgument(format!(
            "correction requires index 0, got {}",
            report.index
        )));
    }
    if report.kernel_dim == 0 {
        return Ok(Element::zero(n));
    }
    let (kernel, _) = kernel_basis(a, params)?;
    let adj = a.involution();
    let (adj_kernel, _) = kernel_basis(&adj, params)?;
    let r = kernel.len();
    debug_assert_eq!(adj_kernel.len(), r);

    // pivot monomials S for the kernel: smallest set (in canonical order)
    // whose coordinate restriction of the kernel basis is invertible
    let s_monos = pivot_monomials(&kernel, r)?;
    // pivot monomials W against the adjoint kernel: complement of the image
    let w_monos = pivot_monomials(&adj_kernel, r)?;

    // B[j][k] = coefficient of kernel vector k at monomial s_j
    let b: Vec<Vec<Scalar>> = s_monos
        .iter()
        .map(|s| kernel.iter().map(|v| v.coeff(s)).collect())
        .collect();
    let binv = invert_dense(&b).ok_or_else(|| {
        SnError::InvalidArgument("kernel pivot matrix unexpectedly singular".into())
    })?;

    let mut f = Element::zero(n);
    for (k, w) in w_monos.iter().enumerate() {
        for (j, s) in s_monos.iter().enumerate() {
            let c = &binv[k][j];
            if num_traits::Zero::is_zero(c) {
                continue;
            }
            let unit = Element::matrix_unit(n, &(1..=n).collect::<Vec<_>>(), &w.0, &s.0)?;
            f = &f + &unit.scale(c);
        }
    }

    // postcondition: a + f has trivial kernel and full image on truncations
    let fixed = a + &f;
    let p = Stabilization::for_element(&fixed);
    if kernel_dim(&fixed, p)? != 0 || kernel_dim(&fixed.involution(), p)? != 0 {
        return Err(SnError::InvalidArgument(
            "correction verification failed: a + f is not bijective on truncations".into(),
        ));
    }
    Ok(f)
}

/// Greedy selection of `r` monomials, scanned in canonical order, on which the
/// given polynomials restrict to an invertible matrix.
fn pivot_monomials(basis: &[PolyElement], r: usize) -> Result<Vec<MultiIndex>> {
    let mut candidates: Vec<MultiIndex> = basis
        .iter()
        .flat_map(|p| p.terms().map(|(m, _)| m.clone()))
        .collect();
    candidates.sort();
    candidates.dedup();
    let mut ech = Echelon::new(basis.len());
    let mut chosen = Vec::new();
    for m in candidates {
        let row: SparseRow = basis
            .iter()
            .enumerate()
            .filter_map(|(k, v)| {
                let c = v.coeff(&m);
                (!num_traits::Zero::is_zero(&c)).then_some((k, c))
            })
            .collect();
        if ech.insert(row) {
            chosen.push(m);
            if chosen.len() == r {
                return Ok(chosen);
            }
        }
    }
    Err(SnError::InvalidArgument("kernel basis has deficient monomial support".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn x(n: usize, i: usize) -> Element {
        Element::var_x(n, i)
    }
    fn y(n: usize, i: usize) -> Element {
        Element::var_y(n, i)
    }

    #[test]
    fn kernel_dims_of_shifts() {
        assert_eq!(kernel_dim(&x(1, 1), Stabilization::for_element(&x(1, 1))).unwrap(), 0);
        let y3 = y(1, 1).pow(3);
        assert_eq!(kernel_dim(&y3, Stabilization::for_element(&y3)).unwrap(), 3);
        let one = Element::one(1);
        assert_eq!(kernel_dim(&one, Stabilization::for_element(&one)).unwrap(), 0);
    }

    #[test]
    fn shift_indices() {
        for i in 1..=4u32 {
            let xi = x(1, 1).pow(i);
            assert_eq!(index_default(&xi).unwrap().index, -(i as i64));
            let yi = y(1, 1).pow(i);
            assert_eq!(index_default(&yi).unwrap().index, i as i64);
        }
    }

    #[test]
    fn surjection_with_line_kernel() {
        // 1 + (y_i - 1) * prod_{k != i} E_00(k) has index 1; the x counterpart -1
        for n in [2usize, 3] {
            for i in 1..=n {
                let others: Vec<usize> = (1..=n).filter(|&k| k != i).collect();
                let e = Element::e_set(n, &others).unwrap();
                let up = &Element::one(n) + &(&(&y(n, i) - &Element::one(n)) * &e);
                let r = index_default(&up).unwrap();
                assert_eq!((r.kernel_dim, r.coker_dim, r.index), (1, 0, 1));
                let down = &Element::one(n) + &(&(&x(n, i) - &Element::one(n)) * &e);
                let r = index_default(&down).unwrap();
                assert_eq!((r.kernel_dim, r.coker_dim, r.index), (0, 1, -1));
            }
        }
    }

    #[test]
    fn non_fredholm_fails_loudly() {
        // x_1 in two variables: the adjoint has infinite kernel
        let a = x(2, 1);
        let err = index_default(&a).unwrap_err();
        assert!(matches!(err, SnError::NotStabilized { .. }));
    }

    #[test]
    fn perturbation_keeps_index() {
        let a = y(1, 1).pow(2);
        let f = Element::matrix_unit(1, &[1], &[0], &[3]).unwrap().scale(&int(5));
        assert!(perturb_invariance_check(&a, &f).unwrap());
        // both sides of that check are the index 2
        assert_eq!(index_default(&a).unwrap().index, 2);
        assert_eq!(index_default(&(&a + &f)).unwrap().index, 2);
        assert!(perturb_invariance_check(&a, &Element::zero(1)).unwrap());
        // a perturbation outside the matrix ideal is rejected
        assert!(perturb_invariance_check(&a, &x(1, 1)).is_err());
    }

    #[test]
    fn units_have_index_zero() {
        // a product of generator-family atoms is a unit, hence index 0
        use crate::units::words::{Atom, ElemCoeff, Word};
        let w = Word::new(
            2,
            vec![
                (Atom::Theta { j_set: vec![1, 2], i: 2, j: 1 }, 1),
                (
                    Atom::Elementary {
                        i_set: vec![2],
                        coeff: ElemCoeff::XPow { var: 1, t: 1, scale: int(1) },
                        alpha: crate::monomial::MultiIndex(vec![1]),
                        beta: crate::monomial::MultiIndex(vec![0]),
                    },
                    1,
                ),
            ],
        );
        let (u, _) = w.to_unit().unwrap();
        assert_eq!(index_default(&u).unwrap().index, 0);
    }

    #[test]
    fn correction_after_a_unit_factor() {
        // a unit times the corner defect 1 - E_00 still has index 0 and a
        // correction that restores bijectivity on truncations
        let n = 1;
        let e00 = Element::matrix_unit(n, &[1], &[0], &[0]).unwrap();
        let unit = &Element::one(n) + &Element::matrix_unit(n, &[1], &[0], &[1]).unwrap();
        let a = &unit * &(&Element::one(n) - &e00);
        let f = fredholm_correction(&a, Stabilization::for_element(&a)).unwrap();
        assert!(!f.is_zero());
        let fixed = &a + &f;
        let p = Stabilization::for_element(&fixed);
        assert_eq!(kernel_dim(&fixed, p).unwrap(), 0);
        assert_eq!(kernel_dim(&fixed.involution(), p).unwrap(), 0);
    }

    #[test]
    fn correction_of_rank_one_defect() {
        // 1 - E_00 kills the constants and misses them: the correction is E_00
        let n = 1;
        let e00 = Element::matrix_unit(n, &[1], &[0], &[0]).unwrap();
        let a = &Element::one(n) - &e00;
        let f = fredholm_correction(&a, Stabilization::for_element(&a)).unwrap();
        assert_eq!(f, e00);
        // already invertible: correction is zero
        let u = Element::one(n);
        assert!(fredholm_correction(&u, Stabilization::for_element(&u)).unwrap().is_zero());
        // nonzero index is refused
        assert!(fredholm_correction(&x(1, 1), Stabilization::for_element(&x(1, 1))).is_err());
    }

    #[test]
    fn ind_vector_of_current_generators() {
        // theta_{ij} over the full set: +1 at i, -1 at j
        for n in [2usize, 3] {
            let full: Vec<usize> = (1..=n).collect();
            for i in 1..=n {
                for j in 1..=n {
                    if i == j {
                        continue;
                    }
                    let th = crate::units::theta(n, &full, i, j).unwrap();
                    let v = ind_vector(&th).unwrap();
                    let mut expect = vec![0i64; n];
                    expect[i - 1] = 1;
                    expect[j - 1] = -1;
                    assert_eq!(v, expect, "n={n} i={i} j={j}");
                    assert_eq!(v.iter().sum::<i64>(), 0);
                }
            }
        }
    }

    #[test]
    fn ind_of_identity() {
        let one = Element::one(2);
        assert_eq!(ind_vector(&one).unwrap(), vec![0, 0]);
        assert_eq!(ind_i(&one, 1).unwrap(), 0);
    }
}
