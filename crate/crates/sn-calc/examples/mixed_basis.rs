//! The mixed (tensor-factor) basis, ideal membership, Laurent quotients, and
//! the filtration dimension count.
//!
//! Run with: cargo run --example mixed_basis

use sn_calc::element::Element;
use sn_calc::ideal::{filtration_dim, filtration_dim_closed, ideal_member, IdealSpec};
use sn_calc::laurent::{laurent_image, laurent_image_full};
use sn_calc::mixed::to_mixed;
use sn_calc::monomial::MultiIndex;
use sn_calc::scalar::int;

fn main() {
    // one coordinate: the corner rewrites
    let m = |a: u32, b: u32| Element::monomial(1, MultiIndex(vec![a]), MultiIndex(vec![b]), int(1));
    for (a, b) in [(1, 1), (2, 2), (3, 1), (1, 3)] {
        println!("x^{a} y^{b}  ->  {}", to_mixed(&m(a, b)));
    }

    // membership in the decidable ideal family, read off the E-types
    let n = 3;
    let th = sn_calc::units::theta(n, &[1, 2, 3], 1, 3).unwrap();
    let d = &th - &Element::one(n);
    for spec in [
        IdealSpec::LevelSum(1),
        IdealSpec::LevelSum(2),
        IdealSpec::LevelSum(3),
        IdealSpec::PrimeSet(vec![2]),
        IdealSpec::MatrixIdeal,
    ] {
        println!(
            "theta[1,2,3;1,3] - 1 in {:<6} : {}",
            spec.describe(),
            ideal_member(&d, &spec).unwrap()
        );
    }

    // Laurent quotients kill the matrix part and invert the x variables
    let a = Element::monomial(2, MultiIndex(vec![3, 0]), MultiIndex(vec![1, 2]), int(1));
    println!("full Laurent image of x1^3 y1 y2^2 = {}", laurent_image_full(&a));
    let partial = laurent_image(&a, &[1]).unwrap();
    println!("coordinate-1 image has {} tensor term(s)", partial.terms.len());

    // filtration dimensions by enumeration, against the closed form
    for n in 1..=3usize {
        let counted: Vec<u64> = (0..=6).map(|i| filtration_dim(n, i)).collect();
        let closed: Vec<u64> = (0..=6).map(|i| filtration_dim_closed(n, i)).collect();
        println!("n={n}: dims {counted:?} (closed form {closed:?})");
    }
}
