use suspla::bialgebra::{check_bialgebra, gp_basis, is_left_sided, rigid_violations, Verdict};
use suspla::enveloping::{assoc_graded, build_w, build_z, sym_power_kg, EnvelopeError};
use suspla::fixtures::{free_line, heisenberg_torsion, torsion_line, FixtureRng};
use suspla::linalg::{Field, SparseVector};
use suspla::monoid::{Monoid, MonoidElement};
use suspla::suspensive::SuspensiveLieAlgebra;

fn dims(v: impl IntoIterator<Item = usize>) -> Vec<usize> {
    v.into_iter().collect()
}

#[test]
fn free_line_envelope_is_a_polynomial_ring_in_two_variables() {
    let l = free_line(3);
    let w = l.monoid().enumerate_window(3).unwrap();
    let env = build_w(&l, &w, Some(3)).unwrap();
    // k[s, x0]: degree s^n spanned by s^n x0^b, b <= cap.
    assert_eq!(dims(env.degree_dims().into_values()), vec![4, 4, 4, 4]);
    for ((_, level), k) in env.bidegree_dims() {
        assert!(level <= 3);
        assert_eq!(k, 1);
    }
    assert!(check_bialgebra(&env.algebra).passed);
    assert!(rigid_violations(&env.algebra).unwrap().is_empty());
}

#[test]
fn free_line_needs_an_explicit_cap() {
    let l = free_line(2);
    let w = l.monoid().enumerate_window(2).unwrap();
    assert_eq!(build_w(&l, &w, None).unwrap_err(), EnvelopeError::CapRequired);
}

#[test]
fn window_beyond_the_data_is_rejected() {
    let l = free_line(2);
    let w = l.monoid().enumerate_window(3).unwrap();
    assert!(matches!(build_w(&l, &w, Some(2)), Err(EnvelopeError::WindowTooSmall(_))));
}

#[test]
fn torsion_line_envelope() {
    let l = torsion_line();
    let w = l.monoid().enumerate_window(3).unwrap();
    let env = build_w(&l, &w, None).unwrap();
    assert_eq!(dims(env.degree_dims().into_values()), vec![1, 2, 2, 2]);
    // Generalized primitives in degree Q^n are spanned by x^n.
    for n in 1..=3u32 {
        let gp = gp_basis(&env.algebra, MonoidElement(n)).unwrap();
        assert_eq!(gp.len(), 1);
        let name = if n == 1 { "x".to_string() } else { format!("x^{n}") };
        let k = env.algebra.index_of(&name).unwrap();
        assert_eq!(gp[0].indices().collect::<Vec<_>>(), vec![k]);
        assert_eq!(env.lie_filtration_level(&gp[0]), n as usize);
    }
    let q = env.algebra.index_of("Q").unwrap();
    assert_eq!(env.lie_filtration_level(&SparseVector::unit(q, Field::Rational)), 0);
}

#[test]
fn zero_algebra_gives_the_monoid_algebra() {
    for m in [Monoid::cyclic(3, "g"), Monoid::klein_four(), Monoid::free_rank1("Q")] {
        let l = SuspensiveLieAlgebra::zero(Field::Rational, m.clone());
        let w = m.enumerate_window(4).unwrap();
        let env = build_w(&l, &w, None).unwrap();
        assert!(env.degree_dims().values().all(|&k| k == 1));
        let z = build_z(&l, &w, None).unwrap();
        assert_eq!(z.algebra.dim(), env.algebra.dim());
    }
}

#[test]
fn left_sided_quotient_of_the_torsion_line() {
    let l = torsion_line();
    let w = l.monoid().enumerate_window(3).unwrap();
    let z = build_z(&l, &w, None).unwrap();
    assert_eq!(dims(z.degree_dims().into_values()), vec![1, 2, 1, 1]);
    assert!(z.bi_ideal_violation.is_none());
    assert!(z.levels.iter().all(|&n| n <= 1));
    assert!(check_bialgebra(&z.algebra).passed);
    assert_eq!(is_left_sided(&z.algebra).unwrap().verdict, Verdict::True);
}

#[test]
fn heisenberg_bracket_dies_in_the_left_sided_quotient() {
    let l = heisenberg_torsion();
    let w = l.monoid().enumerate_window(2).unwrap();
    let z = build_z(&l, &w, None).unwrap();
    let zi = l.index_of("z").unwrap();
    assert!(z.inclusion[zi].is_zero());
}

/// Dimension of the degree `Q^n` part of `Sym^k` for the torsion line: only
/// `x^k` in degree `Q^k`, and `Q^a x^k` vanishes for `a > 0`.
#[test]
fn symmetric_powers_of_the_torsion_line() {
    let l = torsion_line();
    let w = l.monoid().enumerate_window(5).unwrap();
    for k in 0..=5usize {
        let s = sym_power_kg(&l, k, &w).unwrap();
        for (d, dim) in s {
            let expected = if k == 0 || d.0 as usize == k { 1 } else { 0 };
            assert_eq!(dim, expected, "Sym^{k} in degree {}", d.0);
        }
    }
}

#[test]
fn pbw_dimensions_on_random_fixtures() {
    let mut rng = FixtureRng::new(11);
    let mut cases = Vec::new();
    for _ in 0..3 {
        let l = rng.group_current_algebra(Monoid::cyclic(2, "s"));
        let w = l.monoid().enumerate_window(0).unwrap();
        cases.push((l, w, Some(2)));
        let l = rng.free_current_algebra(6);
        let w = l.monoid().enumerate_window(3).unwrap();
        cases.push((l, w, None));
        let l = rng.torsion_algebra(4);
        let w = l.monoid().enumerate_window(4).unwrap();
        cases.push((l, w, None));
    }
    for (l, w, cap) in cases {
        let env = build_w(&l, &w, cap).unwrap();
        assert!(check_bialgebra(&env.algebra).passed);
        let bi = env.bidegree_dims();
        for n in 0..=env.cap {
            for (d, k) in sym_power_kg(&l, n, &w).unwrap() {
                assert_eq!(bi.get(&(d, n)).copied().unwrap_or(0), k, "bidegree ({}, {n})", l.monoid().name(d));
            }
        }
        let graded = assoc_graded(&env).unwrap();
        assert!(check_bialgebra(&graded).passed);
    }
}

#[test]
fn normal_forms_do_not_depend_on_the_order_of_letters_up_to_brackets() {
    let mut rng = FixtureRng::new(3);
    let l = rng.free_current_algebra(6);
    let w = l.monoid().enumerate_window(3).unwrap();
    let env = build_w(&l, &w, None).unwrap();
    let g = l.monoid().identity();
    for a in 0..l.dim() {
        for b in 0..l.dim() {
            if l.degree(a).0 + l.degree(b).0 > 3 {
                continue;
            }
            let ab = env.word_element(g, &[a, b]).unwrap();
            let ba = env.word_element(g, &[b, a]).unwrap();
            let mut bracket = SparseVector::zero();
            for (k, c) in l.bracket_basis(a, b).unwrap().iter() {
                bracket = bracket.add_scaled(&env.inclusion[k], c);
            }
            assert_eq!(ab.sub(&ba), bracket);
        }
    }
}

#[test]
fn grouplikes_are_absorbed_by_any_letter() {
    let l = free_line(4);
    let w = l.monoid().enumerate_window(4).unwrap();
    let env = build_w(&l, &w, Some(2)).unwrap();
    let s = MonoidElement(1);
    // s . (x0 x1) = (s x0) x1 = x0 (s x1) = x1 x1.
    let lhs = env.word_element(s, &[0, 1]).unwrap();
    assert_eq!(lhs, env.word_element(l.monoid().identity(), &[1, 1]).unwrap());
    assert_eq!(lhs, env.word_element(l.monoid().identity(), &[0, 2]).unwrap());
}

#[test]
fn torsion_line_basis_names() {
    let l = torsion_line();
    let w = l.monoid().enumerate_window(3).unwrap();
    let env = build_w(&l, &w, None).unwrap();
    assert_eq!(env.cap, 3);
    assert_eq!(env.algebra.names(), &["1", "Q", "x", "Q^2", "x^2", "Q^3", "x^3"]);
    let s2 = sym_power_kg(&l, 2, &w).unwrap();
    assert_eq!(s2.values().copied().collect::<Vec<_>>(), vec![0, 0, 1, 0]);
}
