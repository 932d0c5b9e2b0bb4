//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//! Everything here is exact; there are no tolerances to tune.

use std::process::Command;

use rand::Rng;

use sn_calc::aut::{AbelianExtra, Automorphism};
use sn_calc::element::Element;
use sn_calc::fredholm::{ind_vector, index_default};
use sn_calc::mixed::{from_mixed, to_mixed};
use sn_calc::monomial::MultiIndex;
use sn_calc::parser::{parse, print};
use sn_calc::scalar::{int, rat};
use sn_calc::units::identities::commutator_identities_suite;
use sn_calc::units::lattice::{chi, psi_prime};
use sn_calc::units::{factor_ann1, theta};
use sn_calc::verify::{
    random_automorphism, random_element, random_expr, random_factor_word, random_unit_word,
    registry, rng_from_seed, run_suite, Budget,
};

const SEED: u64 = 0x5EED_0001;

fn report(criterion: &str, pass: bool, cases: usize) {
    println!(
        "criterion {criterion}: {} ({cases} cases)",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {criterion} failed");
}

fn suite_ids(ids: &[&str]) -> (bool, usize) {
    let mut pass = true;
    let mut cases = 0;
    for id in ids {
        let results = run_suite(Some(id), None, SEED, Budget::full());
        assert!(!results.is_empty(), "no identity matched {id}");
        for r in results {
            if r.id == *id {
                pass &= r.pass;
                cases += r.cases;
                if !r.pass {
                    eprintln!("identity {id} failed: {}", r.detail);
                }
            }
        }
    }
    (pass, cases)
}

#[test]
fn criterion_01_relations_and_basis() {
    let (pass, cases) = suite_ids(&["yx", "EijEkl", "xyEij", "xyEij1", "eEij1"]);
    report("01 relations-and-basis", pass, cases);
}

#[test]
fn criterion_02_mixed_basis() {
    let mut rng = rng_from_seed(SEED ^ 2);
    let mut cases = 0;
    // 500 random elements per ambient size
    for n in 1..=3 {
        for _ in 0..500 {
            cases += 1;
            let a = random_element(&mut rng, n, 5, 4);
            assert_eq!(from_mixed(&to_mixed(&a)), a, "round trip failed at n={n}");
        }
    }
    // the corner rewrite, verbatim
    let xy = &Element::var_x(1, 1) * &Element::var_y(1, 1);
    cases += 1;
    assert_eq!(to_mixed(&xy).to_string(), "1 - E(0,0)");
    report("02 mixed-basis", true, cases);
}

#[test]
fn criterion_03_filtration() {
    let (pass, cases) = suite_ids(&["filtdim"]);
    report("03 filtration", pass, cases);
}

#[test]
fn criterion_04_module_action() {
    use sn_calc::action::{apply, PolyElement};
    let mut rng = rng_from_seed(SEED ^ 4);
    let mut cases = 0;
    // 500 random triples across the ambient sizes
    for k in 0..500 {
        let n = 1 + (k % 3);
        cases += 1;
        let a = random_element(&mut rng, n, 4, 3);
        let b = random_element(&mut rng, n, 4, 3);
        let mut p = PolyElement::zero(n);
        for _ in 0..rng.gen_range(0..4) {
            p.add_term(
                MultiIndex((0..n).map(|_| rng.gen_range(0..=4)).collect()),
                rat(rng.gen_range(-3..=3).max(1), rng.gen_range(1..=3)),
            );
        }
        let lhs = apply(&(&a * &b), &p).unwrap();
        let rhs = apply(&a, &apply(&b, &p).unwrap()).unwrap();
        assert_eq!(lhs, rhs, "module axiom failed at n={n}");
    }
    let (pass, more) = suite_ids(&["curtij"]);
    report("04 module-action", pass, cases + more);
}

#[test]
fn criterion_05_index() {
    let mut cases = 0;
    // shift powers in one coordinate
    for i in 1..=4u32 {
        cases += 2;
        assert_eq!(index_default(&Element::var_x(1, 1).pow(i)).unwrap().index, -(i as i64));
        assert_eq!(index_default(&Element::var_y(1, 1).pow(i)).unwrap().index, i as i64);
    }
    // corner surjections and injections in two and three coordinates
    for n in [2usize, 3] {
        for i in 1..=n {
            let others: Vec<usize> = (1..=n).filter(|&k| k != i).collect();
            let e = Element::e_set(n, &others).unwrap();
            let up = &Element::one(n)
                + &(&(&Element::var_y(n, i) - &Element::one(n)) * &e);
            let down = &Element::one(n)
                + &(&(&Element::var_x(n, i) - &Element::one(n)) * &e);
            cases += 2;
            assert_eq!(index_default(&up).unwrap().index, 1, "n={n} i={i}");
            assert_eq!(index_default(&down).unwrap().index, -1, "n={n} i={i}");
        }
    }
    // additivity on 50 composable Fredholm samples and invariance under 50
    // finite-rank perturbations, via the registry runners
    let (pass, more) = suite_ids(&["b8Feb9", "b23Apr9"]);
    report("05 index", pass, cases + more);
}

#[test]
fn criterion_06_per_coordinate_index() {
    let mut rng = rng_from_seed(SEED ^ 6);
    let mut cases = 0;
    // 100 random unit words at the top proper level across n = 2, 3; each
    // ind_vector call cross-checks the determinant fast path against the
    // truncation oracle and errors on disagreement
    for n in [2usize, 3] {
        for k in 0..50 {
            cases += 1;
            let atoms = rng.gen_range(1..=2);
            let u = random_unit_word(&mut rng, n, n - 1, atoms).to_element().unwrap();
            let v = ind_vector(&u).expect("fast path agreed with the oracle");
            assert_eq!(v.iter().sum::<i64>(), 0, "indices must sum to zero (n={n})");
            // homomorphism property on pairs of single-atom words
            if k % 2 == 0 {
                let a = random_unit_word(&mut rng, n, n - 1, 1).to_element().unwrap();
                let b = random_unit_word(&mut rng, n, n - 1, 1).to_element().unwrap();
                let va = ind_vector(&a).unwrap();
                let vb = ind_vector(&b).unwrap();
                let vab = ind_vector(&(&a * &b)).unwrap();
                let sum: Vec<i64> = va.iter().zip(&vb).map(|(x, y)| x + y).collect();
                assert_eq!(vab, sum, "per-coordinate index not additive (n={n})");
                cases += 1;
            }
        }
    }
    // index vectors of the adjacent current generators
    for n in [2usize, 3] {
        let full: Vec<usize> = (1..=n).collect();
        for j in 1..n {
            cases += 1;
            let th = theta(n, &full, j, j + 1).unwrap();
            let mut expect = vec![0i64; n];
            expect[j - 1] = 1;
            expect[j] = -1;
            assert_eq!(ind_vector(&th).unwrap(), expect);
        }
    }
    report("06 per-coordinate-index", true, cases);
}

#[test]
fn criterion_07_theta_group() {
    let mut cases = 0;
    // inverse pairs and chains, exhaustive over |J| in {2,3} at n = 3
    let n = 3;
    for j_set in [vec![1usize, 2], vec![1, 3], vec![2, 3], vec![1, 2, 3]] {
        for &i in &j_set {
            for &j in &j_set {
                if i == j {
                    continue;
                }
                cases += 1;
                let a = theta(n, &j_set, i, j).unwrap();
                let b = theta(n, &j_set, j, i).unwrap();
                assert!((&a * &b).is_one() && (&b * &a).is_one());
                for &k in &j_set {
                    if k == i || k == j {
                        continue;
                    }
                    cases += 1;
                    let bc = &theta(n, &j_set, i, j).unwrap() * &theta(n, &j_set, j, k).unwrap();
                    assert_eq!(bc, theta(n, &j_set, i, k).unwrap());
                }
            }
        }
    }
    // commutator and idempotent identities, exhaustive with the three scalings
    let lambdas = [int(2), int(-1), rat(1, 3)];
    for c in commutator_identities_suite(n, &lambdas).unwrap() {
        cases += 1;
        assert!(c.pass, "{} failed at {}", c.id, c.case);
    }
    report("07 theta-group", true, cases);
}

#[test]
fn criterion_08_lattice_homomorphism() {
    let mut rng = rng_from_seed(SEED ^ 8);
    let mut cases = 0;
    let (pass, more) = suite_ids(&["ptijJ"]);
    assert!(pass);
    cases += more;
    // characters kill the image: 100 random unit words per (n, s)
    for (n, s) in [(2usize, 1usize), (3, 1), (3, 2)] {
        for _ in 0..100 {
            cases += 1;
            let atoms = rng.gen_range(1..=3);
            let u = random_unit_word(&mut rng, n, s, atoms).to_element().unwrap();
            let v = psi_prime(&u, s).unwrap();
            for mask in 0u32..(1 << n) {
                if mask.count_ones() as usize != s + 1 {
                    continue;
                }
                let j_set: Vec<usize> = (1..=n).filter(|i| mask & (1 << (i - 1)) != 0).collect();
                assert_eq!(chi(&j_set, &v), 0, "character survived at n={n} s={s} J={j_set:?}");
            }
        }
        // multiplicativity
        for _ in 0..50 {
            cases += 1;
            let u = random_unit_word(&mut rng, n, s, 1).to_element().unwrap();
            let w = random_unit_word(&mut rng, n, s, 1).to_element().unwrap();
            let sum = psi_prime(&u, s).unwrap().plus(&psi_prime(&w, s).unwrap());
            assert_eq!(psi_prime(&(&u * &w), s).unwrap(), sum);
        }
    }
    report("08 lattice-homomorphism", true, cases);
}

#[test]
fn criterion_09_factorization() {
    let mut rng = rng_from_seed(SEED ^ 9);
    let mut cases = 0;
    // 50 random words from the factor sets across n = 2, 3
    for n in [2usize, 3] {
        for _ in 0..25 {
            cases += 1;
            let atoms = rng.gen_range(1..=2);
            let w = random_factor_word(&mut rng, n, atoms);
            let u = w.to_element().unwrap();
            let f = factor_ann1(&u).unwrap();
            assert_eq!(f.reassemble().unwrap(), u, "reassembly failed at n={n}");
            // the inverse from the factorization is exact
            let inv = f.inverse_element().unwrap();
            assert!((&u * &inv).is_one() && (&inv * &u).is_one());
        }
    }
    report("09 factorization", true, cases);
}

#[test]
fn criterion_10_automorphisms() {
    let mut rng = rng_from_seed(SEED ^ 10);
    let mut cases = 0;
    // composition coherence on 200 random pairs
    for k in 0..200 {
        cases += 1;
        let n = 1 + (k % 3);
        let a = random_automorphism(&mut rng, n).unwrap();
        let b = random_automorphism(&mut rng, n).unwrap();
        let c = a.compose(&b).unwrap();
        let probe = random_element(&mut rng, n, 3, 2);
        assert_eq!(
            c.apply(&probe).unwrap(),
            a.apply(&b.apply(&probe).unwrap()).unwrap(),
            "coherence failed at n={n}"
        );
    }
    // rigidity on 100 pairs: x-agreement forces y-agreement
    for k in 0..100 {
        cases += 1;
        let n = 1 + (k % 3);
        let a = random_automorphism(&mut rng, n).unwrap();
        let b = if k % 2 == 0 {
            a.compose(&Automorphism::identity(n)).unwrap()
        } else {
            random_automorphism(&mut rng, n).unwrap()
        };
        if a.rigidity_equal(&b).unwrap() {
            for i in 1..=n {
                let yi = Element::var_y(n, i);
                assert_eq!(a.apply(&yi).unwrap(), b.apply(&yi).unwrap());
            }
        }
    }
    // the exact conjugation and commutator identities
    let (pass, more) = suite_ids(&["comijt", "sost", "sost1", "sost2", "sost3"]);
    assert!(pass);
    cases += more;
    // multiplicativity of the characters on 200 pairs across n = 1, 2, 3
    for k in 0..200 {
        cases += 1;
        let n = 1 + (k % 3);
        let a = random_automorphism(&mut rng, n).unwrap();
        let b = random_automorphism(&mut rng, n).unwrap();
        let c = a.compose(&b).unwrap();
        assert_eq!(c.jacobian(), &a.jacobian() * &b.jacobian());
        assert_eq!(
            c.abelianization_class().unwrap(),
            a.abelianization_class()
                .unwrap()
                .combine(&b.abelianization_class().unwrap())
                .unwrap()
        );
    }
    // the exotic character squares to the Jacobian square on 100 samples
    for _ in 0..100 {
        cases += 1;
        let a = random_automorphism(&mut rng, 2).unwrap();
        let j = a.jacobian();
        let je = a.jacobian_exotic().unwrap();
        assert_eq!(&j * &j, &je * &je);
    }
    // separating witnesses
    let w = Automorphism::inner(
        theta(2, &[1, 2], 1, 2).unwrap(),
        theta(2, &[1, 2], 2, 1).unwrap(),
    )
    .unwrap();
    cases += 1;
    assert_eq!(w.jacobian(), int(1));
    assert_eq!(w.jacobian_exotic().unwrap(), int(-1));
    assert_eq!(
        w.abelianization_class().unwrap().extra,
        AbelianExtra::ThetaParity(1)
    );
    // one coordinate: scaling a corner by 2 gives block determinant 2
    let e00 = Element::matrix_unit(1, &[1], &[0], &[0]).unwrap();
    let u = &Element::one(1) + &e00; // 1 + (2-1) E_00
    let u_inv = &Element::one(1) - &e00.scale(&rat(1, 2));
    let tau = Automorphism::inner(u, u_inv).unwrap();
    cases += 1;
    assert_eq!(tau.jacobian(), int(1));
    assert_eq!(tau.jacobian_exotic().unwrap(), int(2));
    report("10 automorphisms", true, cases);
}

#[test]
fn criterion_11_cli() {
    let mut rng = rng_from_seed(SEED ^ 11);
    let mut cases = 0;
    // 300 random syntax trees round trip through the printer
    for k in 0..300 {
        cases += 1;
        let n = 1 + (k % 3);
        let ast = random_expr(&mut rng, n, 3);
        let text = print(&ast);
        let back = parse(&text, n).unwrap_or_else(|e| panic!("reparse of {text:?} failed: {e}"));
        assert_eq!(back, ast, "round trip changed the tree for {text:?}");
    }
    // the parse examples
    assert!(parse("y1*x1", 1).unwrap().eval(1).unwrap().is_one());
    assert_eq!(
        parse("E[1,2](0,0|0,0)", 2).unwrap().eval(2).unwrap(),
        Element::e_set(2, &[1, 2]).unwrap()
    );
    assert_eq!(
        parse("theta[1,2;2,1]^-1", 2).unwrap().eval(2).unwrap(),
        theta(2, &[1, 2], 1, 2).unwrap()
    );
    cases += 3;

    let bin = env!("CARGO_BIN_EXE_sn-calc");
    let run = |args: &[&str]| {
        let out = Command::new(bin).args(args).output().expect("binary runs");
        (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).trim().to_string())
    };
    // pinned command outputs
    let (code, out) = run(&["--n", "1", "eval", "x*y"]);
    assert_eq!((code, out.as_str()), (0, "x1*y1"));
    let (code, out) = run(&["--n", "1", "mixed", "x*y"]);
    assert_eq!((code, out.as_str()), (0, "1 - E(0,0)"));
    let (code, out) = run(&["--n", "2", "index", "1+(y1-1)*E[2](0|0)"]);
    assert_eq!((code, out.as_str()), (0, "{\"index\": 1}"));
    cases += 3;

    // the verification suite exits 0 and reports every identity ID
    let out = Command::new(bin)
        .args(["verify-suite", "--seed", "7"])
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(0), "verify-suite must exit 0");
    let text = String::from_utf8_lossy(&out.stdout);
    for entry in registry() {
        cases += 1;
        assert!(
            text.lines().any(|l| l.starts_with("PASS") && l.split_whitespace().nth(1) == Some(entry.id)),
            "identity {} missing from the suite output",
            entry.id
        );
    }
    report("11 cli", true, cases);
}
