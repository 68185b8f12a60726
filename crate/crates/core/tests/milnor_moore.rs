use suspla::bialgebra::{dual_cyclic_group_algebra, gp_lie, PresentedBialgebra};
use suspla::enveloping::{build_w, build_z};
use suspla::fixtures::{free_line, nonlinear_torsion, torsion_line, FixtureRng};
use suspla::linalg::{Field, SparseVector};
use suspla::milnor_moore::{
    check_gp_injectivity_criterion, counit_map, extend_lie_map, restrict, sample_adjunction, unit_map, unit_map_z, verify_mm_left_sided,
    verify_mm_torsion_free, BialgebraMorphism, MilnorMooreError,
};
use suspla::monoid::Monoid;
use suspla::suspensive::{SuspensiveLieAlgebra, SuspensiveMorphism};

#[test]
fn torsion_line_unit_is_injective_but_not_onto() {
    let l = torsion_line();
    let w = l.monoid().enumerate_window(3).unwrap();
    let env = build_w(&l, &w, None).unwrap();
    let u = unit_map(&env).unwrap();
    assert!(u.injective());
    let onto: Vec<bool> = u.per_degree.iter().map(|d| d.surjective()).collect();
    assert_eq!(onto, vec![true, true, false, false]);
}

#[test]
fn torsion_line_is_rejected_by_the_torsion_free_check() {
    let l = torsion_line();
    let w = l.monoid().enumerate_window(3).unwrap();
    match verify_mm_torsion_free(&l, &w, None) {
        Err(MilnorMooreError::NotTorsionFree { witness }) => assert_eq!(witness, "torsion element x in degree Q"),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn zero_algebra_passes_both_checks() {
    let l = SuspensiveLieAlgebra::zero(Field::Rational, Monoid::free_rank1("Q"));
    let w = l.monoid().enumerate_window(3).unwrap();
    assert!(verify_mm_torsion_free(&l, &w, None).unwrap().verdict);
    assert!(verify_mm_left_sided(&l, &w, None).unwrap().verdict);
}

#[test]
fn free_line_is_recovered_from_its_envelope() {
    let l = free_line(6);
    let w = l.monoid().enumerate_window(3).unwrap();
    let report = verify_mm_torsion_free(&l, &w, Some(3)).unwrap();
    assert!(report.verdict, "{:?}", report.witnesses);
}

#[test]
fn random_torsion_free_fixtures_pass() {
    let mut rng = FixtureRng::new(21);
    for k in 0..6 {
        let (l, w, cap) = match k % 3 {
            0 => {
                let l = rng.group_current_algebra(Monoid::cyclic(2, "s"));
                let w = l.monoid().enumerate_window(0).unwrap();
                (l, w, Some(2))
            }
            1 => {
                let l = rng.group_current_algebra(Monoid::klein_four());
                let w = l.monoid().enumerate_window(0).unwrap();
                (l, w, Some(2))
            }
            _ => {
                let l = rng.free_current_algebra(6);
                let w = l.monoid().enumerate_window(3).unwrap();
                (l, w, None)
            }
        };
        let report = verify_mm_torsion_free(&l, &w, cap).unwrap();
        assert!(report.verdict, "fixture {k}: {:?}", report.witnesses);
    }
}

#[test]
fn random_torsion_fixtures_pass_the_left_sided_check() {
    let mut rng = FixtureRng::new(5);
    for k in 0..6 {
        let l = rng.torsion_algebra(4);
        let w = l.monoid().enumerate_window(4).unwrap();
        let report = verify_mm_left_sided(&l, &w, None).unwrap();
        assert!(report.verdict, "fixture {k}: {:?}", report.witnesses);
    }
}

#[test]
fn nonlinear_monoid_is_rejected() {
    let l = nonlinear_torsion();
    let w = l.monoid().enumerate_window(0).unwrap();
    assert_eq!(verify_mm_left_sided(&l, &w, Some(1)).unwrap_err(), MilnorMooreError::NonLinearMonoid);
}

#[test]
fn finite_field_is_rejected() {
    let l = SuspensiveLieAlgebra::zero(Field::Prime(3), Monoid::free_rank1("Q"));
    let w = l.monoid().enumerate_window(2).unwrap();
    assert_eq!(verify_mm_torsion_free(&l, &w, None).unwrap_err(), MilnorMooreError::NonCharZero);
}

#[test]
fn adjunction_round_trips() {
    let l = free_line(3);
    let w = l.monoid().enumerate_window(3).unwrap();
    let env = build_w(&l, &w, Some(3)).unwrap();
    let unit = unit_map(&env).unwrap();
    for c in [0, 1, 2, -1] {
        let f = unit.morphism.scaled(&Field::Rational.from_i64(c));
        let h = extend_lie_map(&env, &env.algebra, &unit.gp, &f).unwrap();
        assert!(h.check(&env.algebra, &env.algebra).is_empty());
        assert_eq!(restrict(&env, &unit.gp, &h).unwrap(), f);
    }
    let id = BialgebraMorphism::identity(&env.algebra);
    let back = extend_lie_map(&env, &env.algebra, &unit.gp, &restrict(&env, &unit.gp, &id).unwrap()).unwrap();
    assert_eq!(back, id);
}

#[test]
fn projection_to_the_left_sided_quotient() {
    let l = torsion_line();
    let w = l.monoid().enumerate_window(3).unwrap();
    let z = build_z(&l, &w, None).unwrap();
    let proj = BialgebraMorphism {
        images: z.projection.clone(),
    };
    assert!(proj.check(&z.w.algebra, &z.algebra).is_empty());
    let gz = unit_map_z(&z).unwrap().gp;
    let alpha = restrict(&z.w, &gz, &proj).unwrap();
    assert_eq!(extend_lie_map(&z.w, &z.algebra, &gz, &alpha).unwrap(), proj);
    let report = check_gp_injectivity_criterion(&z.w.algebra, &z.algebra, &proj).unwrap();
    assert!(!report.map_injective && !report.gp_injective);
}

#[test]
fn injectivity_criterion_on_identity_and_counit() {
    let mut rng = FixtureRng::new(8);
    let l = rng.group_current_algebra(Monoid::cyclic(3, "g"));
    let w = l.monoid().enumerate_window(0).unwrap();
    let env = build_w(&l, &w, Some(2)).unwrap();
    let id = BialgebraMorphism::identity(&env.algebra);
    let r = check_gp_injectivity_criterion(&env.algebra, &env.algebra, &id).unwrap();
    assert!(r.map_injective && r.gp_injective);
    let c = counit_map(&env.algebra, Some(2)).unwrap();
    assert!(c.injective() && c.surjective());
    let r = check_gp_injectivity_criterion(&c.envelope.algebra, &env.algebra, &c.morphism).unwrap();
    assert!(r.map_injective && r.gp_injective);
    // The map that kills L.
    let zero = extend_lie_map(&env, &env.algebra, &gp_lie(&env.algebra).unwrap(), &SuspensiveMorphism::zero(l.dim())).unwrap();
    let r = check_gp_injectivity_criterion(&env.algebra, &env.algebra, &zero).unwrap();
    assert!(!r.map_injective && !r.gp_injective);
}

#[test]
fn counit_on_monoid_algebra_and_dual_group_algebra() {
    let m = Monoid::cyclic(2, "s");
    let w = m.enumerate_window(0).unwrap();
    let kg = PresentedBialgebra::monoid_algebra(Field::Rational, &m, &w).unwrap();
    let c = counit_map(&kg, None).unwrap();
    assert!(c.injective() && c.surjective());
    let dual = dual_cyclic_group_algebra(3, Field::Rational).unwrap();
    let c = counit_map(&dual, None).unwrap();
    assert!(c.injective() && !c.surjective());
    assert_eq!(c.morphism.images, vec![SparseVector::unit(0, Field::Rational)]);
}

#[test]
fn same_degree_bracket_is_lost_in_the_left_sided_quotient() {
    let l = suspla::fixtures::heisenberg_torsion();
    let w = l.monoid().enumerate_window(2).unwrap();
    let report = verify_mm_left_sided(&l, &w, None).unwrap();
    assert!(!report.verdict);
    assert!(report.checks["left_sided"]);
    assert!(!report.checks["unit_iso"]);
    assert!(report.witnesses.iter().any(|s| s.contains("degree Q^2")));
}

#[test]
fn sampled_adjunction_and_functoriality() {
    let mut rng = FixtureRng::new(31);
    for l in [free_line(3), torsion_line(), rng.torsion_algebra(4), rng.free_current_algebra(6)] {
        let top = if l.monoid().is_finite() { 0 } else { 3 };
        let w = l.monoid().enumerate_window(top).unwrap();
        let cap = if l.name(0) == "x0" { Some(3) } else { None };
        let env = build_w(&l, &w, cap).unwrap();
        let report = sample_adjunction(&env, 7, 6).unwrap();
        assert!(report.passed(), "{:?}", report.failures);
        assert!(report.samples >= 3);
        assert_eq!(sample_adjunction(&env, 7, 6).unwrap().samples, report.samples);
    }
}

#[test]
fn restriction_respects_composition() {
    let l = free_line(3);
    let w = l.monoid().enumerate_window(3).unwrap();
    let env = build_w(&l, &w, Some(3)).unwrap();
    let unit = unit_map(&env).unwrap();
    let two = extend_lie_map(&env, &env.algebra, &unit.gp, &unit.morphism.scaled(&Field::Rational.from_i64(2))).unwrap();
    let three = extend_lie_map(&env, &env.algebra, &unit.gp, &unit.morphism.scaled(&Field::Rational.from_i64(3))).unwrap();
    let six = restrict(&env, &unit.gp, &two.then(&three)).unwrap();
    assert_eq!(six, unit.morphism.scaled(&Field::Rational.from_i64(6)));
}
