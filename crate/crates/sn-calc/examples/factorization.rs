//! Constructive factorization at the top proper level: read the current
//! generator exponents off the index vector, peel one block factor per
//! coordinate, and verify the exact reassembly.
//!
//! Run with: cargo run --example factorization

use sn_calc::fredholm::ind_vector;
use sn_calc::units::factor::factor_ann1;
use sn_calc::units::words::Word;

fn main() {
    let n = 2;
    let w = Word::parse("theta[1,2;2,1]^2 mu[2](-1) elem[1](y2^2; 0; 1)", n).unwrap();
    let u = w.to_element().unwrap();
    println!("input word    : {w}");
    println!("expanded terms: {}", u.term_count());
    println!("index vector  : {:?}", ind_vector(&u).unwrap());

    let f = factor_ann1(&u).unwrap();
    println!("theta exponents: {:?}", f.theta_exponents);
    for (k, factor) in f.factors.iter().enumerate() {
        println!(
            "block factor {}: {} terms (inverse has {})",
            k + 1,
            factor.element.term_count(),
            factor.inverse.term_count()
        );
    }
    println!("reassembles   : {}", f.reassemble().unwrap() == u);

    let inv = f.inverse_element().unwrap();
    println!("u * u^-1 == 1 : {}", (&u * &inv).is_one());

    // a non-unit is certified, never silently factored
    let xy = &sn_calc::element::Element::var_x(n, 1) * &sn_calc::element::Element::var_y(n, 1);
    match factor_ann1(&xy) {
        Err(e) => println!("x1 y1 refused : {e}"),
        Ok(_) => unreachable!(),
    }
}
