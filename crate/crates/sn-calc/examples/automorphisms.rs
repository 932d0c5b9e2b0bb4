//! The automorphism group in factored form: applying, composing, inverting,
//! rigidity, the Jacobian character, the exotic characters in one and two
//! coordinates, and abelianization classes.
//!
//! Run with: cargo run --example automorphisms

use sn_calc::aut::{gn_generator, Automorphism, GnGenerator, Perm};
use sn_calc::element::Element;
use sn_calc::scalar::{int, rat, to_string};
use sn_calc::units::theta;

fn main() {
    let n = 2;
    let swap = Automorphism::permutation(Perm::transposition(n, 1, 2).unwrap());
    let torus = Automorphism::torus(vec![int(2), rat(1, 3)]).unwrap();
    let omega = Automorphism::inner(
        theta(n, &[1, 2], 1, 2).unwrap(),
        theta(n, &[1, 2], 2, 1).unwrap(),
    )
    .unwrap();

    // images of the generators under a mixed automorphism
    let sigma = swap.compose(&torus).unwrap().compose(&omega).unwrap();
    for i in 1..=n {
        let xi = Element::var_x(n, i);
        println!("sigma(x{i}) = {}", sigma.apply(&xi).unwrap());
    }

    // inversion round-trips
    let inv = sigma.invert().unwrap();
    let id = sigma.compose(&inv).unwrap();
    println!("sigma sigma^-1 == id : {}", id.rigidity_equal(&Automorphism::identity(n)).unwrap());

    // the Jacobian character and the two-coordinate exotic twist
    println!("J(swap)   = {}", to_string(&swap.jacobian()));
    println!("J(torus)  = {}", to_string(&torus.jacobian()));
    println!("J(omega)  = {}", to_string(&omega.jacobian()));
    println!("Jex(omega) = {}", to_string(&omega.jacobian_exotic().unwrap()));
    println!("abelian class of omega: {}", omega.abelianization_class().unwrap().to_json());

    // one coordinate: the exotic character sees the block determinant
    let e00 = Element::matrix_unit(1, &[1], &[0], &[0]).unwrap();
    let tau = Automorphism::inner(
        &Element::one(1) + &e00,
        &Element::one(1) - &e00.scale(&rat(1, 2)),
    )
    .unwrap();
    println!("J(tau) = {}, Jex(tau) = {}", to_string(&tau.jacobian()), to_string(&tau.jacobian_exotic().unwrap()));

    // the named generator families
    let g = gn_generator(3, &GnGenerator::InnerTheta { s: 2 }).unwrap();
    println!("inner theta generator unit: {}", g.unit());
    let t = gn_generator(3, &GnGenerator::TorusFirst { lambda: int(5) }).unwrap();
    println!("torus generator lambda: {:?}", t.lambda().iter().map(to_string).collect::<Vec<_>>());
}
