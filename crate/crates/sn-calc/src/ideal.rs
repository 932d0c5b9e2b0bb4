//! Decision procedures for the distinguished family of two-sided ideals: the
//! height-one primes and their intersections p_I, the sums a_{n,s}, and the
//! infinite-matrix ideal F_n; plus the filtration dimension count.

use num_integer::binomial;

use crate::element::Element;
use crate::error::{Result, SnError};
use crate::mixed::to_mixed;

/// Specification of one ideal from the decidable family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdealSpec {
    /// p_I: intersection of the height-one primes over a nonempty coordinate set.
    PrimeSet(Vec<usize>),
    /// a_{n,s}: sum of all p_I with |I| = s, 1 <= s <= n.
    LevelSum(usize),
    /// F_n: the infinite-matrix ideal (all coordinates matrix-type).
    MatrixIdeal,
}

impl IdealSpec {
    pub fn validate(&self, n: usize) -> Result<()> {
        match self {
            IdealSpec::PrimeSet(coords) => {
                if coords.is_empty() {
                    return Err(SnError::InvalidArgument("prime-set ideal needs a nonempty coordinate set".into()));
                }
                let mut sorted = coords.clone();
                sorted.sort_unstable();
                sorted.dedup();
                if sorted.len() != coords.len() {
                    return Err(SnError::InvalidArgument("repeated coordinate in prime set".into()));
                }
                for &i in coords {
                    if i < 1 || i > n {
                        return Err(SnError::InvalidArgument(format!("coordinate {i} out of range 1..={n}")));
                    }
                }
                Ok(())
            }
            IdealSpec::LevelSum(s) => {
                if *s < 1 || *s > n {
                    return Err(SnError::InvalidArgument(format!("level {s} out of range 1..={n}")));
                }
                Ok(())
            }
            IdealSpec::MatrixIdeal => Ok(()),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            IdealSpec::PrimeSet(coords) => {
                let list: Vec<String> = coords.iter().map(|c| c.to_string()).collect();
                format!("p:{}", list.join(","))
            }
            IdealSpec::LevelSum(s) => format!("a:{s}"),
            IdealSpec::MatrixIdeal => "F".into(),
        }
    }
}

/// Membership test via the mixed basis: a term lies in p_I when its E-type set
/// contains I, in a_{n,s} when the E-type has at least s coordinates, and in
/// F_n when every coordinate is matrix-type. An element belongs to the ideal
/// when every mixed term does. For prime sets the answer is cross-checked
/// against vanishing of the per-coordinate Laurent images, which is an
/// independent characterization of the same ideals.
pub fn ideal_member(a: &Element, ideal: &IdealSpec) -> Result<bool> {
    ideal.validate(a.n())?;
    let mixed = to_mixed(a);
    let ok = match ideal {
        IdealSpec::PrimeSet(coords) => {
            let by_type = mixed.terms().all(|(m, _)| {
                let t = m.e_type();
                coords.iter().all(|i| t.contains(i))
            });
            let by_laurent = coords
                .iter()
                .all(|&i| crate::laurent::laurent_image(a, &[i]).expect("validated").is_zero());
            assert_eq!(by_type, by_laurent, "membership routes disagree");
            by_type
        }
        IdealSpec::LevelSum(s) => mixed.terms().all(|(m, _)| m.e_type_size() >= *s),
        IdealSpec::MatrixIdeal => mixed.terms().all(|(m, _)| m.e_type_size() == a.n()),
    };
    Ok(ok)
}

/// Number of basis monomials x^alpha y^beta of total degree at most `i`,
/// counted by enumeration. Closed form: binomial(i + 2n, 2n).
pub fn filtration_dim(n: usize, i: u32) -> u64 {
    // count lattice points of l^1-ball intersected with the positive orthant
    // in 2n coordinates, one coordinate at a time
    fn count(vars: usize, budget: u32) -> u64 {
        if vars == 0 {
            return 1;
        }
        (0..=budget).map(|e| count(vars - 1, budget - e)).sum()
    }
    count(2 * n, i)
}

/// The closed binomial form, used as an oracle against the enumeration.
pub fn filtration_dim_closed(n: usize, i: u32) -> u64 {
    binomial((i as u64) + 2 * n as u64, 2 * n as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::Element;
    use crate::units::{mu, theta};

    #[test]
    fn matrix_units_generate_the_matrix_ideal() {
        let e = Element::matrix_unit(2, &[1, 2], &[1, 0], &[0, 2]).unwrap();
        assert!(ideal_member(&e, &IdealSpec::MatrixIdeal).unwrap());
        assert!(ideal_member(&e, &IdealSpec::PrimeSet(vec![1])).unwrap());
        assert!(ideal_member(&e, &IdealSpec::LevelSum(2)).unwrap());
    }

    #[test]
    fn one_is_in_no_proper_ideal() {
        let one = Element::one(2);
        assert!(!ideal_member(&one, &IdealSpec::LevelSum(1)).unwrap());
        assert!(!ideal_member(&one, &IdealSpec::MatrixIdeal).unwrap());
        // zero is in every ideal
        assert!(ideal_member(&Element::zero(2), &IdealSpec::MatrixIdeal).unwrap());
    }

    #[test]
    fn partial_type_membership() {
        // E_{00}(1) in S_2: type {1} only
        let e = Element::matrix_unit(2, &[1], &[0], &[0]).unwrap();
        assert!(ideal_member(&e, &IdealSpec::PrimeSet(vec![1])).unwrap());
        assert!(!ideal_member(&e, &IdealSpec::PrimeSet(vec![2])).unwrap());
        assert!(ideal_member(&e, &IdealSpec::LevelSum(1)).unwrap());
        assert!(!ideal_member(&e, &IdealSpec::LevelSum(2)).unwrap());
    }

    #[test]
    fn theta_minus_one_membership() {
        // theta_{ij}(J) - 1 lies in a_{n,|J|-1}
        let n = 3;
        let th = theta(n, &[1, 2, 3], 1, 3).unwrap();
        let d = &th - &Element::one(n);
        assert!(ideal_member(&d, &IdealSpec::LevelSum(2)).unwrap());
        assert!(!ideal_member(&d, &IdealSpec::LevelSum(3)).unwrap());
        // mu_I(y_i) - 1 lies in p_I
        let m = mu(n, &[2, 3], &Element::var_y(n, 1)).unwrap();
        let d = &m - &Element::one(n);
        assert!(ideal_member(&d, &IdealSpec::PrimeSet(vec![2, 3])).unwrap());
    }

    #[test]
    fn ideal_product_commutes_into_union_prime() {
        // instances: a in p_I, b in p_J built from generators; both ab and ba
        // lie in p_{I union J}
        let n = 3;
        let a = Element::matrix_unit(n, &[1], &[2], &[0]).unwrap();
        let a = &a * &Element::var_x(n, 3);
        let b = Element::matrix_unit(n, &[2], &[1], &[1]).unwrap();
        let ab = &a * &b;
        let ba = &b * &a;
        let union = IdealSpec::PrimeSet(vec![1, 2]);
        assert!(ideal_member(&ab, &union).unwrap());
        assert!(ideal_member(&ba, &union).unwrap());
    }

    #[test]
    fn filtration_counts_match_closed_form() {
        assert_eq!(filtration_dim(1, 0), 1);
        assert_eq!(filtration_dim(1, 2), 6);
        assert_eq!(filtration_dim(2, 3), 35);
        for n in 1..=3 {
            for i in 0..=8 {
                assert_eq!(filtration_dim(n, i), filtration_dim_closed(n, i), "n={n} i={i}");
            }
        }
    }

    #[test]
    fn laurent_cross_check_for_prime_sets() {
        use crate::laurent::laurent_image;
        let n = 2;
        let samples = [
            Element::matrix_unit(n, &[1], &[1], &[0]).unwrap(),
            &Element::var_x(n, 1) * &Element::var_y(n, 1),
            Element::one(n),
            Element::matrix_unit(n, &[1, 2], &[0, 0], &[0, 0]).unwrap(),
        ];
        for a in &samples {
            for coords in [vec![1], vec![2], vec![1, 2]] {
                let in_ideal = coords
                    .iter()
                    .all(|&i| ideal_member(a, &IdealSpec::PrimeSet(vec![i])).unwrap());
                // membership in the sum of primes over `coords` equals vanishing
                // of the Laurent image; for a single prime they coincide
                if coords.len() == 1 {
                    let img = laurent_image(a, &coords).unwrap();
                    assert_eq!(in_ideal, img.is_zero(), "element {a} coords {coords:?}");
                }
            }
        }
    }
}
