//! The polynomial module and the Fredholm machinery: actions, stabilized
//! kernels, indices through the adjoint, per-coordinate indices, perturbation
//! invariance, and the kernel/cokernel matching correction.
//!
//! Run with: cargo run --example index_theory

use sn_calc::action::{apply, PolyElement};
use sn_calc::element::Element;
use sn_calc::fredholm::{
    fredholm_correction, ind_vector, index_default, perturb_invariance_check, Stabilization,
};
use sn_calc::monomial::MultiIndex;
use sn_calc::scalar::int;

fn main() {
    let n = 1;
    let x = Element::var_x(n, 1);
    let y = Element::var_y(n, 1);

    // shifts on the module
    let p = PolyElement::monomial(MultiIndex(vec![2]), int(1));
    println!("x * x^2 = {}", apply(&x, &p).unwrap());
    println!("y * x^2 = {}", apply(&y, &p).unwrap());
    println!("y * 1   = {}", apply(&y, &PolyElement::one(n)).unwrap());

    // indices of the shift powers
    for i in 1..=3u32 {
        let rx = index_default(&x.pow(i)).unwrap();
        let ry = index_default(&y.pow(i)).unwrap();
        println!(
            "ind(x^{i}) = {:>2} (ker {}, coker {}), ind(y^{i}) = {:>2}",
            rx.index, rx.kernel_dim, rx.coker_dim, ry.index
        );
    }

    // the index ignores finite-rank perturbations
    let f = Element::matrix_unit(n, &[1], &[0], &[3]).unwrap().scale(&int(5));
    println!(
        "ind(y^2) stable under 5 E_03 : {}",
        perturb_invariance_check(&y.pow(2), &f).unwrap()
    );

    // an index-zero defect and its correcting finite-rank element
    let e00 = Element::matrix_unit(n, &[1], &[0], &[0]).unwrap();
    let a = &Element::one(n) - &e00; // = x y, kills and misses the constants
    let fix = fredholm_correction(&a, Stabilization::for_element(&a)).unwrap();
    println!("correction of 1 - E_00 = {fix}");
    println!("corrected element      = {}", &a + &fix);

    // per-coordinate indices in two coordinates: the current generator
    // carries +1 and -1
    let th = sn_calc::units::theta(2, &[1, 2], 1, 2).unwrap();
    println!("ind vector of theta[1,2;1,2] = {:?}", ind_vector(&th).unwrap());
}
