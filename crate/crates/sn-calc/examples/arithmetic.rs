//! Basic arithmetic: the defining relations, canonical normal forms, matrix
//! units, the involution, and JSON serialization.
//!
//! Run with: cargo run --example arithmetic

use sn_calc::element::Element;
use sn_calc::scalar::rat;

fn main() {
    let n = 2;
    let x1 = Element::var_x(n, 1);
    let y1 = Element::var_y(n, 1);
    let y2 = Element::var_y(n, 2);

    // y_i is a left inverse of x_i but not a right inverse
    println!("y1 * x1          = {}", &y1 * &x1);
    println!("x1 * y1          = {}", &x1 * &y1);

    // cross-coordinate generators commute
    let lhs = &x1 * &y2;
    let rhs = &y2 * &x1;
    println!("x1 y2 == y2 x1   : {}", lhs == rhs);

    // matrix units expand to signed monomials and multiply like a matrix ring
    let e01 = Element::matrix_unit(n, &[1], &[0], &[1]).unwrap();
    let e12 = Element::matrix_unit(n, &[1], &[1], &[2]).unwrap();
    println!("E_01(1)          = {e01}");
    println!("E_01(1) E_12(1)  = {}", &e01 * &e12);
    println!("E_12(1) E_01(1)  = {}", &e12 * &e01);

    // two-coordinate corner idempotent
    let corner = Element::e_set(n, &[1, 2]).unwrap();
    println!("E_00({{1,2}})      = {corner}");
    println!("idempotent       : {}", &corner * &corner == corner);

    // the involution swaps x and y and reverses products
    let a = &(&x1 * &x1) * &y2.scale(&rat(3, 2));
    println!("a                = {a}");
    println!("eta(a)           = {}", a.involution());

    // canonical JSON with exact fraction coefficients
    println!("a as JSON        = {}", a.to_json());
}
