//! Exact scalars and deterministic sparse linear algebra.
//!
//! Every structure in this crate is ultimately a finite block of vectors over
//! either the rationals or a prime field. This module provides the scalar type,
//! a sparse vector keyed by basis index, and canonical reduced row-echelon
//! subspaces together with the kernel and quotient constructions built on them.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("scalar kind mismatch: expected {expected}, found {found}")]
    KindMismatch { expected: Field, found: Field },
    #[error("vector index {index} out of range for ambient dimension {dim}")]
    DimensionMismatch { index: usize, dim: usize },
    #[error("relations are not contained in the ambient subspace")]
    NotSubspace,
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
}

/// The ground field of a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Self, LinalgError> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(LinalgError::NotPrime(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match *self {
            Field::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Fp {
                value: n.rem_euclid(p as i64) as u64,
                p,
            },
        }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Scalar {
        assert!(den != 0, "zero denominator");
        match *self {
            Field::Rational => Scalar::Rat(BigRational::new(num.into(), den.into())),
            Field::Prime(_) => self.from_i64(num) * self.from_i64(den).inv(),
        }
    }

    /// Parses the canonical string form: `"a/b"` or `"a"` over the rationals,
    /// a decimal residue over a prime field.
    pub fn parse(&self, s: &str) -> Result<Scalar, LinalgError> {
        let s = s.trim();
        let err = || LinalgError::Parse(s.to_string());
        match *self {
            Field::Rational => {
                let (n, d) = match s.split_once('/') {
                    Some((n, d)) => (n.trim(), d.trim()),
                    None => (s, "1"),
                };
                let n = BigInt::from_str(n).map_err(|_| err())?;
                let d = BigInt::from_str(d).map_err(|_| err())?;
                if d.is_zero() {
                    return Err(err());
                }
                Ok(Scalar::Rat(BigRational::new(n, d)))
            }
            Field::Prime(p) => {
                let v = i128::from_str(s).map_err(|_| err())?;
                Ok(Scalar::Fp {
                    value: v.rem_euclid(p as i128) as u64,
                    p,
                })
            }
        }
    }
}

/// Serialized form of a field: `{"kind":"Q"}` or `{"kind":"Fp","p":3}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum FieldDoc {
    Q,
    Fp { p: u64 },
}

impl FieldDoc {
    pub fn to_field(self) -> Result<Field, LinalgError> {
        match self {
            FieldDoc::Q => Ok(Field::Rational),
            FieldDoc::Fp { p } => Field::prime(p),
        }
    }
}

impl From<Field> for FieldDoc {
    fn from(f: Field) -> Self {
        match f {
            Field::Rational => FieldDoc::Q,
            Field::Prime(p) => FieldDoc::Fp { p },
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact scalar: a reduced rational or a residue modulo a prime.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Fp { value: u64, p: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Rational,
            Scalar::Fp { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Fp { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Fp { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(r.recip()),
            Scalar::Fp { value, p } => {
                assert!(*value != 0, "inverse of zero");
                Scalar::Fp {
                    value: pow_mod(*value, p - 2, *p),
                    p: *p,
                }
            }
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, LinalgError> {
        self.same_kind(other)?;
        Ok(self.clone() + other.clone())
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, LinalgError> {
        self.same_kind(other)?;
        Ok(self.clone() * other.clone())
    }

    fn same_kind(&self, other: &Scalar) -> Result<(), LinalgError> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(LinalgError::KindMismatch {
                expected: self.field(),
                found: other.field(),
            })
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Fp { .. } => None,
        }
    }

    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Fp { value, .. } => Some(*value),
            Scalar::Rat(_) => None,
        }
    }
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % p as u128) as u64;
        }
        base = ((base as u128 * base as u128) % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp { value, .. } => write!(f, "{value}"),
        }
    }
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("scalar kind mismatch: {} vs {}", a.field(), b.field())
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        match (&self, &rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Fp { value: a, p }, Scalar::Fp { value: b, p: q }) if p == q => Scalar::Fp {
                value: (a + b) % p,
                p: *p,
            },
            _ => mismatch(&self, &rhs),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Fp { value, p } => Scalar::Fp {
                value: (p - value) % p,
                p,
            },
        }
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        self + (-rhs)
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        match (&self, &rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Fp { value: a, p }, Scalar::Fp { value: b, p: q }) if p == q => Scalar::Fp {
                value: ((*a as u128 * *b as u128) % *p as u128) as u64,
                p: *p,
            },
            _ => mismatch(&self, &rhs),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.clone() * rhs.clone()
    }
}

/// A sparse vector: strictly increasing indices, no stored zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SparseVector {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVector {
    pub fn zero() -> Self {
        SparseVector::default()
    }

    pub fn unit(index: usize, field: Field) -> Self {
        SparseVector {
            entries: vec![(index, field.one())],
        }
    }

    /// Builds a vector from arbitrary `(index, scalar)` pairs, summing
    /// duplicates and dropping zeros.
    pub fn from_pairs<I: IntoIterator<Item = (usize, Scalar)>>(pairs: I) -> Self {
        let mut v: Vec<(usize, Scalar)> = pairs.into_iter().collect();
        v.sort_by_key(|(i, _)| *i);
        let mut entries: Vec<(usize, Scalar)> = Vec::with_capacity(v.len());
        for (i, c) in v {
            match entries.last_mut() {
                Some((j, acc)) if *j == i => *acc = acc.clone() + c,
                _ => entries.push((i, c)),
            }
        }
        entries.retain(|(_, c)| !c.is_zero());
        SparseVector { entries }
    }

    pub fn from_dense(values: &[Scalar]) -> Self {
        SparseVector {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, dim: usize, field: Field) -> Vec<Scalar> {
        let mut out = vec![field.zero(); dim];
        for (i, c) in &self.entries {
            out[*i] = c.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> + '_ {
        self.entries.iter().map(|(i, c)| (*i, c))
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|(i, _)| *i)
    }

    pub fn get(&self, index: usize) -> Option<&Scalar> {
        self.entries
            .binary_search_by_key(&index, |(i, _)| *i)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn leading(&self) -> Option<(usize, &Scalar)> {
        self.entries.first().map(|(i, c)| (*i, c))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn field(&self) -> Option<Field> {
        self.entries.first().map(|(_, c)| c.field())
    }

    pub fn scale(&self, c: &Scalar) -> SparseVector {
        if c.is_zero() {
            return SparseVector::zero();
        }
        SparseVector {
            entries: self.entries.iter().map(|(i, x)| (*i, x * c)).collect(),
        }
    }

    /// `self + c * other`, merging in one pass.
    pub fn add_scaled(&self, other: &SparseVector, c: &Scalar) -> SparseVector {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => match i.cmp(j) {
                    Ordering::Less => {
                        out.push((*i, x.clone()));
                        a.next();
                    }
                    Ordering::Greater => {
                        out.push((*j, y * c));
                        b.next();
                    }
                    Ordering::Equal => {
                        let s = x.clone() + y * c;
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                },
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, y * c));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVector { entries: out }
    }

    pub fn add(&self, other: &SparseVector) -> SparseVector {
        match other.field() {
            Some(f) => self.add_scaled(other, &f.one()),
            None => self.clone(),
        }
    }

    pub fn sub(&self, other: &SparseVector) -> SparseVector {
        match other.field() {
            Some(f) => self.add_scaled(other, &f.from_i64(-1)),
            None => self.clone(),
        }
    }

    pub fn dot(&self, other: &SparseVector) -> Option<Scalar> {
        let mut acc: Option<Scalar> = None;
        for (i, x) in &self.entries {
            if let Some(y) = other.get(*i) {
                let t = x * y;
                acc = Some(match acc {
                    Some(a) => a + t,
                    None => t,
                });
            }
        }
        acc
    }

    /// Re-indexes through `map`; entries mapped to `None` are dropped.
    pub fn remap<F: Fn(usize) -> Option<usize>>(&self, map: F) -> SparseVector {
        SparseVector::from_pairs(
            self.entries
                .iter()
                .filter_map(|(i, c)| map(*i).map(|j| (j, c.clone()))),
        )
    }

    /// Renders the vector as `a + 2*b - 1/2*c` using `name` for basis labels.
    pub fn format_with<F: Fn(usize) -> String>(&self, name: F) -> String {
        if self.entries.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (i, c)) in self.entries.iter().enumerate() {
            let label = name(*i);
            let (neg, mag) = match c {
                Scalar::Rat(r) if r.is_negative() => (true, Scalar::Rat(-r.clone())),
                _ => (false, c.clone()),
            };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if mag.is_one() {
                out.push_str(&label);
            } else {
                out.push_str(&format!("{mag}*{label}"));
            }
        }
        out
    }

    /// Scales a rational row to primitive integer content with positive
    /// leading coefficient. Prime-field rows are returned unchanged.
    fn primitive(&self) -> SparseVector {
        let Some((_, Scalar::Rat(_))) = self.entries.first() else {
            return self.clone();
        };
        let mut den = BigInt::one();
        for (_, c) in &self.entries {
            if let Scalar::Rat(r) = c {
                den = den.lcm(r.denom());
            }
        }
        let mut nums: Vec<BigInt> = self
            .entries
            .iter()
            .map(|(_, c)| match c {
                Scalar::Rat(r) => r.numer() * (&den / r.denom()),
                Scalar::Fp { .. } => unreachable!(),
            })
            .collect();
        let mut g = BigInt::zero();
        for n in &nums {
            g = g.gcd(n);
        }
        if nums[0].is_negative() {
            g = -g;
        }
        for n in nums.iter_mut() {
            *n = &*n / &g;
        }
        SparseVector {
            entries: self
                .entries
                .iter()
                .zip(nums)
                .map(|((i, _), n)| (*i, Scalar::Rat(BigRational::from_integer(n))))
                .collect(),
        }
    }
}

fn check_rows(rows: &[SparseVector], field: Field, dim: usize) -> Result<(), LinalgError> {
    for row in rows {
        for (i, c) in row.iter() {
            if c.field() != field {
                return Err(LinalgError::KindMismatch {
                    expected: field,
                    found: c.field(),
                });
            }
            if i >= dim {
                return Err(LinalgError::DimensionMismatch { index: i, dim });
            }
        }
    }
    Ok(())
}

/// A subspace stored as its canonical reduced row-echelon basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient_dim: usize,
    rows: Vec<SparseVector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient_dim: usize) -> Self {
        Subspace {
            field,
            ambient_dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient_dim: usize) -> Self {
        Subspace {
            field,
            ambient_dim,
            rows: (0..ambient_dim).map(|i| SparseVector::unit(i, field)).collect(),
            pivots: (0..ambient_dim).collect(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[SparseVector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn non_pivots(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.ambient_dim - self.rank());
        let mut k = 0;
        for j in 0..self.ambient_dim {
            if k < self.pivots.len() && self.pivots[k] == j {
                k += 1;
            } else {
                out.push(j);
            }
        }
        out
    }

    /// Reduces `v` against the echelon rows; the result has no support on
    /// pivot columns and differs from `v` by an element of the subspace.
    pub fn reduce(&self, v: &SparseVector) -> SparseVector {
        let mut v = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if let Some(c) = v.get(p) {
                let c = -(c.clone());
                v = v.add_scaled(row, &c);
            }
        }
        v
    }

    pub fn contains(&self, v: &SparseVector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &SparseVector) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(
            self.pivots
                .iter()
                .map(|p| v.get(*p).cloned().unwrap_or_else(|| self.field.zero()))
                .collect(),
        )
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    /// Linear combination of the echelon rows with the given coefficients.
    pub fn combine(&self, coords: &[Scalar]) -> SparseVector {
        let mut acc = SparseVector::zero();
        for (row, c) in self.rows.iter().zip(coords) {
            acc = acc.add_scaled(row, c);
        }
        acc
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        rref(self.field, rows, self.ambient_dim).expect("compatible subspaces")
    }
}

/// Canonical reduced row-echelon basis of the span of `rows`.
///
/// Pivoting is leftmost-nonzero; the output depends only on the span, never on
/// the order of the input rows.
pub fn rref(field: Field, rows: Vec<SparseVector>, ambient_dim: usize) -> Result<Subspace, LinalgError> {
    check_rows(&rows, field, ambient_dim)?;
    let rows: Vec<SparseVector> = rows.into_iter().filter(|r| !r.is_zero()).collect();
    if rows.is_empty() {
        return Ok(Subspace::zero(field, ambient_dim));
    }
    let (rows, pivots) = reduced_echelon(rows, ambient_dim);
    Ok(Subspace {
        field,
        ambient_dim,
        rows,
        pivots,
    })
}

fn reduced_echelon(rows: Vec<SparseVector>, ambient_dim: usize) -> (Vec<SparseVector>, Vec<usize>) {
    // Kept fully reduced throughout, so entries stay canonical and small.
    let mut echelon: std::collections::BTreeMap<usize, SparseVector> = Default::default();
    for row in rows {
        if echelon.len() == ambient_dim {
            break;
        }
        let mut v = row.primitive();
        let hits: Vec<(usize, Scalar)> = v.iter().filter(|(i, _)| echelon.contains_key(i)).map(|(i, c)| (i, c.clone())).collect();
        for (p, c) in hits {
            v = v.add_scaled(&echelon[&p], &-c);
        }
        let Some((lead, c)) = v.leading() else { continue };
        let v = v.scale(&c.inv());
        for other in echelon.values_mut() {
            if let Some(c) = other.get(lead) {
                let c = -(c.clone());
                *other = other.add_scaled(&v, &c);
            }
        }
        echelon.insert(lead, v);
    }
    let pivots: Vec<usize> = echelon.keys().copied().collect();
    (echelon.into_values().collect(), pivots)
}

/// Null space of the linear map whose matrix rows are `matrix`.
///
/// Each row is a linear functional on a `domain_dim`-dimensional space.
pub fn kernel(field: Field, matrix: Vec<SparseVector>, domain_dim: usize) -> Result<Subspace, LinalgError> {
    let row_space = rref(field, matrix, domain_dim)?;
    let mut basis = Vec::with_capacity(domain_dim - row_space.rank());
    for free in row_space.non_pivots() {
        let mut pairs = vec![(free, field.one())];
        for (row, &p) in row_space.rows.iter().zip(&row_space.pivots) {
            if let Some(c) = row.get(free) {
                pairs.push((p, -(c.clone())));
            }
        }
        basis.push(SparseVector::from_pairs(pairs));
    }
    rref(field, basis, domain_dim)
}

/// Transposes a list of column images into matrix rows.
///
/// `columns[j]` is the image of the j-th domain basis vector in a codomain
/// with coordinates below `codomain_dim`.
pub fn columns_to_rows(columns: &[SparseVector], codomain_dim: usize) -> Vec<SparseVector> {
    let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); codomain_dim];
    for (j, col) in columns.iter().enumerate() {
        for (i, c) in col.iter() {
            rows[i].push((j, c.clone()));
        }
    }
    rows.into_iter()
        .filter(|r| !r.is_empty())
        .map(SparseVector::from_pairs)
        .collect()
}

/// A quotient `ambient / relations` with chosen coset representatives.
#[derive(Debug, Clone)]
pub struct Quotient {
    relations: Subspace,
    complement: Subspace,
}

impl Quotient {
    pub fn dim(&self) -> usize {
        self.complement.rank()
    }

    pub fn relations(&self) -> &Subspace {
        &self.relations
    }

    /// The coset representatives, in canonical echelon form.
    pub fn representatives(&self) -> &[SparseVector] {
        self.complement.rows()
    }

    /// Ambient coordinates picked out as representatives (pivots of the
    /// complement). When the ambient space is the whole coordinate space these
    /// are exactly the non-pivot columns of the relations.
    pub fn representative_columns(&self) -> &[usize] {
        self.complement.pivots()
    }

    /// Canonical representative of the coset of `v`.
    pub fn normal_form(&self, v: &SparseVector) -> SparseVector {
        self.relations.reduce(v)
    }

    /// Coordinates of the coset of `v` in the representative basis.
    pub fn coordinates(&self, v: &SparseVector) -> Vec<Scalar> {
        let nf = self.normal_form(v);
        self.complement
            .coordinates(&nf)
            .expect("normal form lies in the complement")
    }
}

pub fn quotient_basis(ambient: &Subspace, relations: &Subspace) -> Result<Quotient, LinalgError> {
    if ambient.field != relations.field {
        return Err(LinalgError::KindMismatch {
            expected: ambient.field,
            found: relations.field,
        });
    }
    if !ambient.contains_subspace(relations) {
        return Err(LinalgError::NotSubspace);
    }
    let remainders: Vec<SparseVector> = ambient.rows.iter().map(|r| relations.reduce(r)).collect();
    let complement = rref(ambient.field, remainders, ambient.ambient_dim)?;
    Ok(Quotient {
        relations: relations.clone(),
        complement,
    })
}
