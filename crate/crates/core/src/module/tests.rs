use crate::free::{parse_poly, parse_presentation};
use crate::groebner::{AlgebraRef, GradedAlgebra};
use crate::morphism::AlgebraMorphism;
use crate::veronese::VeroneseAlgebra;
use crate::Error;

use super::*;

fn alg(text: &str, d: i64) -> AlgebraRef {
    GradedAlgebra::new(&parse_presentation(text).unwrap(), d).unwrap()
}

const QPLANE: &str = "field Q; gen x 1; gen y 1; rel y*x - 2*x*y";
const POLY2: &str = "field Q; gen x 1; gen y 1; rel y*x - x*y";
const WTD12: &str = "field Q; gen x 1; gen z 2; rel z*x - x*z";
const POLY1: &str = "field Q; gen x 1";

fn module(a: &AlgebraRef, text: &str, hi: i64) -> GradedModule {
    parse_module_spec(text, a).unwrap().build(a, hi).unwrap()
}

#[test]
fn cyclic_quotient_by_x() {
    let a = alg(WTD12, 10);
    let m = module(&a, "gen g 0; rel g*x", 8);
    assert_eq!(m.dims(), &[1, 0, 1, 0, 1, 0, 1, 0, 1]);
    m.verify().unwrap();
}

#[test]
fn two_generators_one_syzygy() {
    let a = alg(POLY2, 8);
    let m = module(&a, "gen g1 0; gen g2 0; rel g1*x - g2*y", 5);
    assert_eq!(m.dims(), &[2, 3, 4, 5, 6, 7]);
    m.verify().unwrap();
}

#[test]
fn finite_module_is_detected_bounded() {
    let a = alg(POLY2, 8);
    let m = module(&a, "gen g 0; rel g*x; rel g*y", 6);
    assert!(m.is_bounded());
    assert_eq!(m.dims(), &[1]);
}

#[test]
fn module_spec_errors() {
    let a = alg(POLY2, 4);
    assert!(matches!(
        parse_module_spec("gen g 0; rel g*x + g*x*y", &a),
        Err(Error::InhomogeneousRelation(_))
    ));
    assert!(matches!(parse_module_spec("gen g 0; rel x*g", &a), Err(Error::Syntax { .. })));
    assert!(matches!(parse_module_spec("gen x 0", &a), Err(Error::DuplicateGenerator(_))));
}

#[test]
fn derived_presentation_matches_given_one() {
    let a = alg(POLY2, 8);
    let m = module(&a, "gen g 0; rel g*x", 6);
    let again = GradedModule::from_data(
        a.clone(),
        m.lo(),
        m.hi(),
        false,
        m.dims().to_vec(),
        (m.lo()..=m.hi())
            .map(|e| {
                (0..2)
                    .map(|x| (e + 1 <= m.hi()).then(|| m.action(e, x).unwrap().into_owned()))
                    .collect()
            })
            .collect(),
    )
    .unwrap();
    let p = again.presentation().unwrap();
    assert_eq!(p.generators, vec![0]);
    assert_eq!(p.relations.len(), 1);
    assert_eq!(p.relations[0].degree, 1);
}

#[test]
fn hom_from_free_module_is_evaluation() {
    let a = alg(QPLANE, 8);
    let n = module(&a, "gen g 0; gen h 1; rel g*y", 4);
    let free = regular_module(&a, 6).unwrap();
    for s in 0..3 {
        let h = graded_hom(&free, &n, s).unwrap();
        assert_eq!(h.dim(), n.dim(s).unwrap());
    }
}

#[test]
fn hom_respects_relations() {
    // Hom(A/(x), A/(x)) over k[x]: generator maps into the degree 0 part, dimension 1.
    let a = alg(POLY1, 6);
    let m = module(&a, "gen g 0; rel g*x", 6);
    assert_eq!(graded_hom(&m, &m, 0).unwrap().dim(), 1);
    // no nonzero maps A/(x) → A: the generator image would be killed by x
    let free = regular_module(&a, 6).unwrap();
    assert!(matches!(graded_hom(&m, &free, 0), Ok(h) if h.dim() == 0));
}

#[test]
fn hom_needs_certified_relations() {
    let a = alg(POLY1, 6);
    let m = regular_module(&a, 3).unwrap().truncate_below(1);
    let n = regular_module(&a, 6).unwrap();
    assert!(matches!(graded_hom(&m, &n, 0), Err(Error::WindowInsufficient { .. })));
}

#[test]
fn restriction_to_a_subring() {
    let a = alg("field Q; gen y 1", 6);
    let b = alg(QPLANE, 6);
    let phi = AlgebraMorphism::new(a.clone(), b.clone(), vec![parse_poly(b.presentation(), "y").unwrap()], 1).unwrap();
    let r = restrict_along(&phi, &regular_module(&b, 5).unwrap()).unwrap();
    assert_eq!(r.dims(), &[1, 2, 3, 4, 5, 6]);
    r.verify().unwrap();
}

#[test]
fn induction_of_residue_field() {
    let a = alg("field Q; gen y 1", 6);
    let b = alg(QPLANE, 6);
    let phi = AlgebraMorphism::new(a.clone(), b.clone(), vec![parse_poly(b.presentation(), "y").unwrap()], 1).unwrap();
    let k = module(&a, "gen g 0; rel g*y", 6);
    let ind = induce_along(&phi, &k, 6).unwrap();
    assert_eq!(ind.dims(), &[1, 1, 1, 1, 1, 1, 1]);
    let free = induce_along(&phi, &regular_module(&a, 6).unwrap(), 5).unwrap();
    assert_eq!(free.dims(), b.hilbert(5).unwrap().as_slice());
}

#[test]
fn veronese_residue_field_induced_up() {
    let a = alg(POLY1, 8);
    let v = VeroneseAlgebra::new(&a, 2).unwrap();
    let k = module(v.algebra(), "gen g 0; rel g*x_x", 4);
    let ind = induce_along(v.embedding(), &k, 6).unwrap();
    assert_eq!(ind.dims(), &[1, 1]);
    assert!(ind.is_bounded());
}

#[test]
fn veronese_of_polynomial_ring() {
    let a = alg(POLY2, 8);
    let v = VeroneseAlgebra::new(&a, 2).unwrap();
    assert_eq!(v.presentation().names(), &["x_x", "x_y", "y_y"]);
    // three commutators and one quadric
    assert_eq!(v.presentation().relations().len(), 4);
    assert_eq!(v.algebra().hilbert(4).unwrap(), vec![1, 3, 5, 7, 9]);
}

#[test]
fn bar_tensor_with_identity_bimodule_is_the_module() {
    let a = alg(QPLANE, 8);
    let m = watts_bimodule(&WattsFunctor::Identity(&a));
    let l = module(&a, "gen g 0; rel g*x", 8);
    let t = bar_tensor(&l, &m, 5).unwrap();
    assert_eq!(t.dims(), &l.dims()[..6]);
    let t = bar_tensor(&regular_module(&a, 8).unwrap().shift(1), &m, 4).unwrap();
    assert_eq!(t.lo(), -1);
    assert_eq!(t.dims(), &[1, 2, 3, 4, 5, 6]);
}

#[test]
fn bar_tensor_reproduces_veronese_pushforward() {
    let a = alg(WTD12, 12);
    let v = VeroneseAlgebra::new(&a, 2).unwrap();
    let m = watts_bimodule(&WattsFunctor::VeronesePushforward(&v));
    for p in 0..3 {
        let l = regular_module(&a, 12).unwrap().shift(p);
        let t = bar_tensor(&l, &m, 4).unwrap();
        let row = m.row(p, 4).unwrap();
        for q in 0..=4 {
            assert_eq!(t.dim(q).unwrap(), row.dim(q).unwrap(), "shift {p}, degree {q}");
        }
    }
}

#[test]
fn bar_tensor_of_zero_is_zero() {
    let a = alg(QPLANE, 6);
    let m = watts_bimodule(&WattsFunctor::Identity(&a));
    assert!(bar_tensor(&GradedModule::zero(a.clone()), &m, 3).unwrap().is_zero());
}

#[test]
fn adjunction_for_identity_and_veronese() {
    let a = alg(POLY1, 10);
    let id = watts_bimodule(&WattsFunctor::Identity(&a));
    let n = module(&a, "gen g 0; rel g*x*x*x", 6);
    let l = regular_module(&a, 10).unwrap();
    let r = adjunction_check(&l, &id, &n).unwrap();
    assert_eq!(r.lhs, 1);
    assert!(r.holds());

    let v = VeroneseAlgebra::new(&a, 2).unwrap();
    let ver = watts_bimodule(&WattsFunctor::VeronesePushforward(&v));
    let n = module(v.algebra(), "gen g 0; rel g*x_x*x_x", 4);
    for l in [
        regular_module(&a, 10).unwrap(),
        module(&a, "gen g 1; rel g*x*x", 10),
    ] {
        let r = adjunction_check(&l, &ver, &n).unwrap();
        assert!(r.holds(), "{r:?}");
    }
}
