//! Exhaustive verification of the commutator and idempotent identities among
//! theta generators, mu scalings, and the corner idempotents e_J = E_00(J).

use crate::element::Element;
use crate::error::Result;
use crate::scalar::{self, Scalar};
use crate::units::{mu, mu_scalar, theta};

/// One verified identity instance.
#[derive(Debug, Clone)]
pub struct IdentityCheck {
    pub id: &'static str,
    pub case: String,
    pub pass: bool,
}

fn group_commutator(u: &Element, u_inv: &Element, v: &Element, v_inv: &Element) -> Element {
    &(&(u * v) * u_inv) * v_inv
}

fn subsets_with_at_least_two(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() >= 2 {
            let set: Vec<usize> = (1..=n).filter(|i| mask & (1 << (i - 1)) != 0).collect();
            out.push(set);
        }
    }
    out.sort_by_key(|s| (s.len(), s.clone()));
    out
}

/// Run the identity suite for every subset J with |J| >= 2, every ordered
/// pair of distinct i, j in J, and every scaling in `lambdas`. Failures are
/// reported, not thrown.
pub fn commutator_identities_suite(n: usize, lambdas: &[Scalar]) -> Result<Vec<IdentityCheck>> {
    let mut checks = Vec::new();
    let one = Element::one(n);
    for j_set in subsets_with_at_least_two(n) {
        let e_j = Element::e_set(n, &j_set)?;
        for &i in &j_set {
            for &j in &j_set {
                if i == j {
                    continue;
                }
                let minus_i: Vec<usize> = j_set.iter().copied().filter(|&k| k != i).collect();
                let minus_j: Vec<usize> = j_set.iter().copied().filter(|&k| k != j).collect();
                let case = format!("n={n} J={j_set:?} i={i} j={j}");

                let th = theta(n, &j_set, i, j)?;
                let th_inv = theta(n, &j_set, j, i)?;

                let mu_yi = mu(n, &minus_i, &Element::var_y(n, i))?;
                let mu_xi = mu(n, &minus_i, &Element::var_x(n, i))?;
                let e_mj = Element::e_set(n, &minus_j)?;

                // corner identities for the idempotents
                let lhs = &mu_yi * &e_mj;
                let rhs = &e_mj * &mu_xi;
                let expect = &e_mj - &e_j;
                checks.push(IdentityCheck {
                    id: "meJij1",
                    case: case.clone(),
                    pass: lhs == expect && rhs == expect,
                });
                checks.push(IdentityCheck {
                    id: "meJij2",
                    case: case.clone(),
                    pass: (&mu_yi * &e_j).is_zero() && (&e_j * &mu_xi).is_zero(),
                });
                let xy = &Element::var_x(n, j) * &Element::var_y(n, j);
                let mu_xyj = mu(n, &minus_j, &xy)?;
                checks.push(IdentityCheck {
                    id: "meJij3",
                    case: case.clone(),
                    pass: mu_xyj == &one - &e_j,
                });

                for lam in lambdas {
                    let case_l = format!("{case} lambda={}", scalar::to_string(lam));
                    let mu_l = mu_scalar(n, &minus_j, lam)?;
                    let mu_l_inv = mu_scalar(n, &minus_j, &lam.recip())?;

                    checks.push(IdentityCheck {
                        id: "meJij4",
                        case: case_l.clone(),
                        pass: &e_j * &mu_l == &mu_l * &e_j
                            && &e_j * &mu_l == e_j.scale(lam),
                    });

                    // commutator of theta with a mu scaling collapses to a
                    // scaling on the union set, with reciprocal parameter
                    let comm = group_commutator(&th, &th_inv, &mu_l, &mu_l_inv);
                    checks.push(IdentityCheck {
                        id: "tmJ",
                        case: case_l.clone(),
                        pass: comm == mu_scalar(n, &j_set, &lam.recip())?,
                    });
                    let comm = group_commutator(&mu_l, &mu_l_inv, &th, &th_inv);
                    checks.push(IdentityCheck {
                        id: "tmJ1",
                        case: case_l,
                        pass: comm == mu_scalar(n, &j_set, lam)?,
                    });
                }
            }
        }
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn suite_passes_for_three_coordinates() {
        let lambdas = [int(2), int(-1), rat(1, 3)];
        let checks = commutator_identities_suite(3, &lambdas).unwrap();
        assert!(!checks.is_empty());
        for c in &checks {
            assert!(c.pass, "{} failed at {}", c.id, c.case);
        }
        // lambda = 1 collapses the commutators to the identity
        let trivial = commutator_identities_suite(2, &[int(1)]).unwrap();
        for c in trivial.iter().filter(|c| c.id == "tmJ" || c.id == "tmJ1") {
            assert!(c.pass);
        }
    }

    #[test]
    fn explicit_two_coordinate_commutator() {
        // [theta_{12}, mu_{1}(2)] = mu_{12}(1/2)
        let n = 2;
        let th = theta(n, &[1, 2], 1, 2).unwrap();
        let th_inv = theta(n, &[1, 2], 2, 1).unwrap();
        let m = mu_scalar(n, &[1], &int(2)).unwrap();
        let m_inv = mu_scalar(n, &[1], &rat(1, 2)).unwrap();
        let comm = group_commutator(&th, &th_inv, &m, &m_inv);
        assert_eq!(comm, mu_scalar(n, &[1, 2], &rat(1, 2)).unwrap());
    }
}
