use crate::free::parse_presentation;
use crate::groebner::{AlgebraRef, GradedAlgebra};
use crate::module::{graded_hom, parse_module_spec, regular_module, GradedModule};
use crate::Error;

use super::*;

fn alg(text: &str, d: i64) -> AlgebraRef {
    GradedAlgebra::new(&parse_presentation(text).unwrap(), d).unwrap()
}

fn module(a: &AlgebraRef, text: &str, hi: i64) -> GradedModule {
    parse_module_spec(text, a).unwrap().build(a, hi).unwrap()
}

const POLY2: &str = "field Q; gen x 1; gen y 1; rel y*x - x*y";
const WTD12: &str = "field Q; gen x 1; gen z 2; rel z*x - x*z";
const WTD23: &str = "field Q; gen x 2; gen z 3; rel z*x - x*z";
const QPLANE: &str = "field Q; gen x 1; gen y 1; rel y*x - 2*x*y";
const EVEN: &str = "field Q; gen x 2";

#[test]
fn index_one_is_the_algebra() {
    let a = alg(QPLANE, 6);
    let v = VeroneseAlgebra::new(&a, 1).unwrap();
    assert_eq!(v.presentation().num_generators(), 2);
    assert_eq!(v.algebra().hilbert(6).unwrap(), a.hilbert(6).unwrap());
}

#[test]
fn weighted_veronese_is_a_polynomial_ring() {
    let a = alg(WTD12, 12);
    let v = VeroneseAlgebra::new(&a, 2).unwrap();
    assert_eq!(v.presentation().names(), &["z", "x_x"]);
    assert_eq!(v.algebra().hilbert(6).unwrap(), vec![1, 2, 3, 4, 5, 6, 7]);
}

#[test]
fn pushforward_of_shifted_point_vanishes() {
    let a = alg(WTD12, 12);
    let v = VeroneseAlgebra::new(&a, 2).unwrap();
    let m = module(&a, "gen g 0; rel g*x", 12).shift(1);
    let p = veronese_pushforward(&v, &m).unwrap();
    assert!(p.dims().iter().all(|&d| d == 0));
    let r = veronese_pushforward(&v, &regular_module(&a, 12).unwrap()).unwrap();
    assert_eq!(r.dims(), v.algebra().hilbert(6).unwrap().as_slice());
}

#[test]
fn pullback_then_pushforward_is_identity() {
    let a = alg(QPLANE, 12);
    let v = VeroneseAlgebra::new(&a, 2).unwrap();
    let b = v.algebra();
    let names = b.presentation().names().to_vec();
    for spec in [
        "gen g 0".to_string(),
        format!("gen g 0; rel g*{}", names[0]),
        format!("gen g 0; gen h 1; rel g*{} - h", names[1]),
    ] {
        let n = module(b, &spec, 5);
        let up = veronese_pullback(&v, &n, 11).unwrap();
        let down = veronese_pushforward(&v, &up).unwrap();
        for i in n.lo()..=5 {
            assert_eq!(down.dim(i).unwrap(), n.dim(i).unwrap(), "{spec}, degree {i}");
        }
    }
    let free = veronese_pullback(&v, &regular_module(b, 6).unwrap(), 12).unwrap();
    assert_eq!(free.dims(), a.hilbert(12).unwrap().as_slice());
}

#[test]
fn coinduce_examples() {
    let a = alg(WTD12, 12);
    let v = VeroneseAlgebra::new(&a, 2).unwrap();
    let zero = GradedModule::zero(v.algebra().clone());
    assert!(veronese_coinduce(&v, &zero).unwrap().is_zero());
    let k = module(v.algebra(), "gen g 0; rel g*x_x; rel g*z", 4);
    let up = veronese_coinduce(&v, &k).unwrap();
    assert!(up.is_bounded());
    up.verify().unwrap();
    // maps A(−i)⁽²⁾ → k: one for each generator of A over A⁽²⁾ in degree i
    assert_eq!(up.dims().iter().sum::<usize>(), 2);
}

#[test]
fn ideal_family_examples() {
    let a = alg(WTD12, 12);
    let f = ideal_family(&a, 2, 12).unwrap();
    assert_eq!(f.get(1).display(), "(x)");
    assert_eq!(f.get(2).display(), "A");
    assert_eq!(f.get(3).display(), "(x)");
    assert_eq!(f.intersection.display(), "(x)");
    assert!(f.twosided);

    let e = alg(EVEN, 12);
    let f = ideal_family(&e, 2, 12).unwrap();
    assert!(f.get(1).is_zero());
    assert!(f.intersection.is_zero());
}

#[test]
fn degree_one_generated_family_has_finite_quotient() {
    let a = alg(QPLANE, 10);
    let f = ideal_family(&a, 3, 10).unwrap();
    let q = f.intersection.quotient_dims();
    assert!(q[4..].iter().all(|&d| d == 0), "{q:?}");
}

#[test]
fn lemma_on_examples() {
    let a = alg(WTD12, 12);
    let f = ideal_family(&a, 2, 12).unwrap();
    let r = check_lemma_i(&f, 12).unwrap();
    assert!(r.holds());
    assert_eq!(r.rows[4].power_dim, 1);

    let e = alg(EVEN, 12);
    assert!(check_lemma_i(&ideal_family(&e, 2, 12).unwrap(), 12).unwrap().holds());

    let f = ideal_family(&a, 2, 6).unwrap();
    assert!(matches!(check_lemma_i(&f, 3), Err(Error::WindowInsufficient { .. })));
}

#[test]
fn projector_splits_by_parity() {
    let a = alg(EVEN, 10);
    let m = module(&a, "gen g 0; gen h -1", 8);
    let p0 = projector(&m, 2, 0).unwrap();
    let p1 = projector(&m, 2, 1).unwrap();
    for e in m.lo()..=m.hi() {
        assert_eq!(p0.dim(e).unwrap() + p1.dim(e).unwrap(), m.dim(e).unwrap());
    }
    assert_eq!(projector(&p0, 2, 0).unwrap().dims(), p0.dims());
    assert!(projector(&p0, 2, 1).unwrap().dims().iter().all(|&d| d == 0));
    let b0 = p0.truncate_window(-1, 8).unwrap();
    let b1 = p1.truncate_window(-1, 8).unwrap();
    assert_eq!(graded_hom(&b0, &b1, 0).unwrap().dim(), 0);

    let q = alg(QPLANE, 4);
    assert!(matches!(
        projector(&regular_module(&q, 4).unwrap(), 2, 0),
        Err(Error::AlgebraNotConcentrated(1, 2))
    ));
}

#[test]
fn tails_examples() {
    let a = alg(POLY2, 8);
    let reg = regular_module(&a, 8).unwrap();
    assert!(!tails_window_equal(&reg, &reg.shift(1), 0, 6, 7).unwrap());
    let maximal = reg.truncate_below(1);
    assert!(tails_window_equal(&reg, &maximal, 1, 6, 7).unwrap());
    assert!(!tails_window_equal(&reg, &maximal, 0, 6, 7).unwrap());
    let point = module(&a, "gen g 0; rel g*x; rel g*y", 8);
    let with_point = reg.direct_sum(&point).unwrap();
    assert!(tails_window_equal(&reg, &with_point, 1, 6, 7).unwrap());
    // same dimensions, different modules: A/(x) ⊕ A/(y) against A/(x) ⊕ A/(x)
    let mx = module(&a, "gen g 0; gen h 0; rel g*x; rel h*y", 8);
    let mxx = module(&a, "gen g 0; gen h 0; rel g*x; rel h*x", 8);
    assert!(!tails_window_equal(&mx, &mxx, 1, 6, 7).unwrap());
}

#[test]
fn verevkin_examples() {
    let a = alg(WTD12, 12);
    let v = VeroneseAlgebra::new(&a, 2).unwrap();
    let f = ideal_family(&a, 2, 12).unwrap();
    let m = regular_module(&a, 12).unwrap().shift(1);
    let r = verevkin_defect(&v, &f, &m).unwrap();
    assert_eq!(r.rows[0].degree, -1);
    assert_eq!(r.rows[0].cokernel, 1);
    assert!(r.annihilated());

    let q = alg(QPLANE, 10);
    let v = VeroneseAlgebra::new(&q, 2).unwrap();
    let f = ideal_family(&q, 2, 10).unwrap();
    let r = verevkin_defect(&v, &f, &regular_module(&q, 10).unwrap()).unwrap();
    assert!(r.vanishes_from(0));
    assert!(r.annihilated());

    let n = module(v.algebra(), "gen g 0; gen h 1", 4);
    let up = veronese_pullback(&v, &n, 9).unwrap();
    let r = verevkin_defect(&v, &f, &up).unwrap();
    assert!(r.rows.iter().all(|row| row.cokernel == 0));
}

#[test]
fn min_veronese_examples() {
    assert_eq!(min_veronese_gen1(&alg(POLY2, 8), 8).unwrap().d, Some(1));
    assert_eq!(min_veronese_gen1(&alg(WTD12, 12), 8).unwrap().d, Some(2));
    assert_eq!(min_veronese_gen1(&alg(WTD23, 18), 8).unwrap().d, Some(6));
}
