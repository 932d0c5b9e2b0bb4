//! Unit-group machinery: generator words with closed-form inverses, finite
//! and one-block inversion, Laurent matrix images, determinant degrees, and
//! the lattice homomorphisms with their characters.
//!
//! Run with: cargo run --example unit_groups

use sn_calc::element::Element;
use sn_calc::monomial::MultiIndex;
use sn_calc::scalar::{int, rat};
use sn_calc::units::invert::invert_element;
use sn_calc::units::lattice::{chi, psi_prime};
use sn_calc::units::words::{Atom, ElemCoeff, MuPayload, Word};
use sn_calc::units::{det_degree, matrix_image, theta};

fn main() {
    let n = 3;

    // a word in the generator families, with its closed-form inverse
    let w = Word::parse("theta[1,2,3;3,1]^2 mu[1,2](1/3) elem[2,3](x1^2; 1,0; 0,1)", n).unwrap();
    println!("word          : {w}");
    let (u, u_inv) = w.to_unit().unwrap();
    println!("expanded terms: {}", u.term_count());
    println!("u u^-1 == 1   : {}", (&u * &u_inv).is_one());

    // matrix images: identity plus a finite block over a Laurent ring
    let th = theta(n, &[1, 2, 3], 3, 1).unwrap();
    for coords in [vec![1usize, 2], vec![1, 3], vec![2, 3]] {
        let m = matrix_image(&th, &coords).unwrap();
        let (unit, degs) = det_degree(&m).unwrap();
        println!(
            "block {:?}: {} entries, det = {} * x^{:?}",
            coords,
            m.block.len(),
            sn_calc::scalar::to_string(&unit),
            degs
        );
    }

    // the lattice image separates current generators; the characters kill it
    let v = psi_prime(&u, 2).unwrap();
    println!("lattice image : {}", v.to_json());
    println!("chi over {{1,2,3}} : {}", chi(&[1, 2, 3], &v));

    // certified inversion: a scalar multiple of a unit inverts, a one-sided
    // map is refused with evidence
    let unit = Word::new(
        2,
        vec![(
            Atom::Elementary {
                i_set: vec![1],
                coeff: ElemCoeff::Scalar(rat(5, 2)),
                alpha: MultiIndex(vec![2]),
                beta: MultiIndex(vec![0]),
            },
            1,
        ), (Atom::Mu { i_set: vec![1, 2], payload: MuPayload::Scalar(int(3)) }, 1)],
    )
    .to_element()
    .unwrap()
    .scale(&rat(-2, 7));
    let inv = invert_element(&unit).unwrap();
    println!("inverse check : {}", (&unit * &inv).is_one());
    match invert_element(&Element::var_x(2, 1)) {
        Err(e) => println!("x1 refused    : {e}"),
        Ok(_) => unreachable!(),
    }
}
