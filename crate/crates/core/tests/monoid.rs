use std::collections::BTreeSet;

use proptest::prelude::*;
use suspla::fixtures::nonlinear_monoid;
use suspla::monoid::{DegreeWindow, Monoid, MonoidDoc, MonoidElement, MonoidError};

fn e(n: u32) -> MonoidElement {
    MonoidElement(n)
}

#[test]
fn products() {
    let free = Monoid::free_rank1("Q");
    assert_eq!(free.mul(e(2), e(3)), e(5));
    assert_eq!(free.name(e(5)), "Q^5");
    let c2 = Monoid::cyclic(2, "s");
    assert_eq!(c2.mul(e(1), e(1)), c2.identity());
    for a in 0..4 {
        assert_eq!(Monoid::klein_four().mul(e(a), Monoid::klein_four().identity()), e(a));
    }
}

#[test]
fn divisibility_and_linearity() {
    let free = Monoid::free_rank1("Q");
    assert!(free.divides(e(1), e(3)));
    assert!(!free.divides(e(3), e(1)));
    assert!(free.is_linear());
    assert!(Monoid::cyclic(3, "g").is_linear());
    assert!(Monoid::klein_four().is_linear());
    let m = nonlinear_monoid();
    assert!(!m.divides(e(1), e(2)) && !m.divides(e(2), e(1)));
    assert!(!m.is_linear());
    // {1, a, b} with a, b idempotent and ab = a: b divides a, a does not divide b.
    let names = ["1", "a", "b"].iter().map(|s| s.to_string()).collect();
    let m = Monoid::finite_table(names, 0, vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 1, 2]]).unwrap();
    assert!(m.divides(e(2), e(1)));
    assert!(!m.divides(e(1), e(2)));
    assert!(m.is_linear());
}

#[test]
fn groups() {
    assert!(Monoid::cyclic(2, "s").is_group());
    assert!(Monoid::trivial().is_group());
    assert!(!Monoid::free_rank1("Q").is_group());
    assert!(!nonlinear_monoid().is_group());
}

#[test]
fn parsing_names() {
    let free = Monoid::free_rank1("Q");
    assert_eq!(free.parse_element("1").unwrap(), e(0));
    assert_eq!(free.parse_element("Q").unwrap(), e(1));
    assert_eq!(free.parse_element("Q^0").unwrap(), e(0));
    assert!(free.parse_element("2").is_err());
    for n in 0..6 {
        assert_eq!(free.parse_element(&free.name(e(n))).unwrap(), e(n));
    }
}

#[test]
fn windows() {
    let free = Monoid::free_rank1("Q");
    let w = free.enumerate_window(3).unwrap();
    assert_eq!(w.iter().collect::<Vec<_>>(), vec![e(0), e(1), e(2), e(3)]);
    assert_eq!(Monoid::cyclic(2, "s").enumerate_window(7).unwrap().len(), 2);
    assert_eq!(Monoid::trivial().enumerate_window(0).unwrap().len(), 1);
    assert!(matches!(free.enumerate_window(-1), Err(MonoidError::InvalidBound(_))));
    let gap: BTreeSet<MonoidElement> = [e(0), e(2)].into_iter().collect();
    assert!(DegreeWindow::new(&free, gap).is_err());
}

#[test]
fn bad_tables_are_rejected() {
    let names = ["1", "a"].iter().map(|s| s.to_string()).collect::<Vec<_>>();
    // Not commutative.
    assert!(Monoid::finite_table(names.clone(), 0, vec![vec![0, 1], vec![0, 1]]).is_err());
    // Identity does not act as identity.
    assert!(Monoid::finite_table(names, 1, vec![vec![0, 1], vec![1, 1]]).is_err());
}

#[test]
fn json_round_trip() {
    for m in [Monoid::free_rank1("Q"), Monoid::klein_four(), nonlinear_monoid()] {
        let doc = m.to_doc();
        let text = serde_json::to_string(&doc).unwrap();
        let back = Monoid::from_doc(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, m);
    }
}

fn arb_group() -> impl Strategy<Value = Monoid> {
    prop_oneof![
        (1usize..7).prop_map(|n| Monoid::cyclic(n, "g")),
        Just(Monoid::klein_four()),
        Just(nonlinear_monoid()),
    ]
}

#[test]
fn table_errors_and_unsupported_rank() {
    let names = vec!["e".to_string(), "a".to_string()];
    assert_eq!(Monoid::finite_table(names.clone(), 0, vec![vec![0, 1], vec![0, 0]]), Err(MonoidError::BadTable("unital")));
    assert_eq!(Monoid::finite_table(names, 5, vec![vec![0, 1], vec![1, 0]]), Err(MonoidError::BadIdentity(5)));
    let doc = MonoidDoc::Free { generators: vec!["P".into(), "Q".into()] };
    assert_eq!(Monoid::from_doc(&doc), Err(MonoidError::UnsupportedRank(2)));
}

proptest! {
    #[test]
    fn divides_is_a_preorder(m in arb_group()) {
        let n = m.order().unwrap() as u32;
        for a in 0..n {
            prop_assert!(m.divides(e(a), e(a)));
            for b in 0..n {
                for c in 0..n {
                    if m.divides(e(a), e(b)) && m.divides(e(b), e(c)) {
                        prop_assert!(m.divides(e(a), e(c)));
                    }
                }
                if m.is_group() {
                    prop_assert!(m.divides(e(a), e(b)));
                }
            }
        }
    }

    #[test]
    fn free_windows_are_divisor_closed(bound in 0i64..20) {
        let m = Monoid::free_rank1("Q");
        let w = m.enumerate_window(bound).unwrap();
        for d in w.iter() {
            for k in 0..=d.0 {
                prop_assert!(w.contains(e(k)));
            }
        }
    }
}
