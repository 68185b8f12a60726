use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use suspla::linalg::{kernel, quotient_basis, rref, Field, LinalgError, Scalar, SparseVector, Subspace};

fn q(n: i64) -> Scalar {
    Field::Rational.from_i64(n)
}

fn vec_of(values: &[i64]) -> SparseVector {
    SparseVector::from_dense(&values.iter().map(|&v| q(v)).collect::<Vec<_>>())
}

/// Rank by dense Gaussian elimination on big rationals.
fn dense_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let f = m[r][c].clone() / pivot.clone();
                for k in 0..cols {
                    let sub = m[rank][k].clone() * f.clone();
                    m[r][k] -= sub;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[test]
fn empty_span_and_forced_echelon_form() {
    let s = rref(Field::Rational, vec![], 3).unwrap();
    assert_eq!(s.rank(), 0);
    let s = rref(Field::Rational, vec![vec_of(&[1, 0, 0]), vec_of(&[1, 1, 0])], 3).unwrap();
    assert_eq!(s.rows(), &[vec_of(&[1, 0, 0]), vec_of(&[0, 1, 0])]);
}

#[test]
fn mixed_fields_are_rejected() {
    let a = SparseVector::unit(0, Field::Rational);
    let b = SparseVector::unit(1, Field::Prime(5));
    assert!(matches!(rref(Field::Rational, vec![a, b], 2), Err(LinalgError::KindMismatch { .. })));
}

#[test]
fn kernels_of_zero_and_identity() {
    assert_eq!(kernel(Field::Rational, vec![], 2).unwrap().rank(), 2);
    let id = vec![vec_of(&[1, 0]), vec_of(&[0, 1])];
    assert_eq!(kernel(Field::Rational, id, 2).unwrap().rank(), 0);
}

#[test]
fn quotient_edge_cases() {
    let full = Subspace::full(Field::Rational, 2);
    let zero = Subspace::zero(Field::Rational, 2);
    assert_eq!(quotient_basis(&full, &zero).unwrap().dim(), 2);
    assert_eq!(quotient_basis(&full, &full).unwrap().dim(), 0);
    let line = rref(Field::Rational, vec![vec_of(&[1, 0, 0])], 3).unwrap();
    let other = rref(Field::Rational, vec![vec_of(&[0, 1, 0])], 3).unwrap();
    assert!(matches!(quotient_basis(&line, &other), Err(LinalgError::NotSubspace)));
}

#[test]
fn prime_field_arithmetic() {
    let f = Field::prime(7).unwrap();
    let three = f.from_i64(3);
    assert!((&three * &three.inv()).is_one());
    assert_eq!(f.from_i64(-1).residue(), Some(6));
    assert!(Field::prime(9).is_err());
    assert_eq!(Field::Rational.parse("6/4").unwrap(), Field::Rational.from_ratio(3, 2));
    let half = Field::Rational.from_ratio(-2, -4);
    assert_eq!(half.as_rational().unwrap().denom(), &2.into());
    assert!(half.as_rational().unwrap().numer().is_one());
}

fn arb_rows() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..6).prop_flat_map(|cols| prop::collection::vec(prop::collection::vec(-3i64..4, cols), 0..6))
}

#[test]
fn scalar_strings() {
    let f = Field::Rational;
    assert_eq!(f.parse("6/4").unwrap().to_string(), "3/2");
    assert_eq!(f.parse("-4/2").unwrap().to_string(), "-2");
    assert_eq!(Field::Prime(7).parse("-1").unwrap().to_string(), "6");
    assert_eq!(f.from_ratio(1, -2).to_string(), "-1/2");
}

#[test]
fn echelon_form_ignores_ambient_width() {
    let rows = vec![vec_of(&[2, 4, 0, 6]), vec_of(&[1, 1, 1, 1]), vec_of(&[3, 5, 1, 7])];
    let narrow = rref(Field::Rational, rows.clone(), 4).unwrap();
    let wide = rref(Field::Rational, rows, 100).unwrap();
    assert_eq!(narrow.rows(), wide.rows());
    assert_eq!(narrow.pivots(), &[0, 1]);
    assert_eq!(narrow.non_pivots(), vec![2, 3]);
}

proptest! {
    #[test]
    fn rank_matches_dense_elimination(rows in arb_rows()) {
        let cols = rows.first().map_or(1, Vec::len);
        let s = rref(Field::Rational, rows.iter().map(|r| vec_of(r)).collect(), cols).unwrap();
        prop_assert_eq!(s.rank(), dense_rank(&rows));
    }

    #[test]
    fn rref_is_idempotent_and_order_independent(rows in arb_rows()) {
        let cols = rows.first().map_or(1, Vec::len);
        let vs: Vec<SparseVector> = rows.iter().map(|r| vec_of(r)).collect();
        let s = rref(Field::Rational, vs.clone(), cols).unwrap();
        prop_assert_eq!(&rref(Field::Rational, s.rows().to_vec(), cols).unwrap(), &s);
        let mut rev = vs;
        rev.reverse();
        prop_assert_eq!(&rref(Field::Rational, rev, cols).unwrap(), &s);
        for (row, &p) in s.rows().iter().zip(s.pivots()) {
            prop_assert!(row.get(p).unwrap().is_one());
            for other in s.rows() {
                if other != row {
                    prop_assert!(other.get(p).is_none());
                }
            }
        }
    }

    #[test]
    fn kernel_vectors_are_killed_and_rank_nullity_holds(rows in arb_rows()) {
        let cols = rows.first().map_or(1, Vec::len);
        let m: Vec<SparseVector> = rows.iter().map(|r| vec_of(r)).collect();
        let k = kernel(Field::Rational, m.clone(), cols).unwrap();
        for v in k.rows() {
            for r in &m {
                prop_assert!(r.dot(v).is_none_or(|c| c.is_zero()));
            }
        }
        prop_assert_eq!(k.rank() + dense_rank(&rows), cols);
    }

    #[test]
    fn normal_form_is_a_projection(rows in arb_rows(), v in prop::collection::vec(-3i64..4, 5)) {
        let cols = rows.first().map_or(1, Vec::len);
        let rel = rref(Field::Rational, rows.iter().map(|r| vec_of(r)).collect(), cols).unwrap();
        let quot = quotient_basis(&Subspace::full(Field::Rational, cols), &rel).unwrap();
        let v = vec_of(&v[..cols]);
        let nf = quot.normal_form(&v);
        prop_assert_eq!(quot.normal_form(&nf), nf.clone());
        prop_assert!(rel.contains(&nf.sub(&v)));
        prop_assert_eq!(quot.dim() + rel.rank(), cols);
    }

    #[test]
    fn prime_field_inverses(p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13]), a in 1i64..1000) {
        let f = Field::prime(p).unwrap();
        let x = f.from_i64(a);
        if !x.is_zero() {
            prop_assert!((&x * &x.inv()).is_one());
        }
    }
}
