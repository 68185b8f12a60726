//! Bialgebras given by structure constants, rigid unit maps, grouplikes and
//! generalized primitives.
//!
//! Multiplication may be partial: a product whose degree leaves the computed
//! window is stored as [`Product::Overflow`]. Every check that runs into such a
//! product counts it as undecided instead of guessing.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{columns_to_rows, kernel, rref, Field, FieldDoc, LinalgError, Scalar, SparseVector, Subspace};
use crate::monoid::{DegreeWindow, Monoid, MonoidDoc, MonoidElement, MonoidError};
use crate::suspensive::{SuspensiveError, SuspensiveLieAlgebra, TorsionFlags};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BialgebraError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("product {0} leaves the computed window")]
    Overflow(String),
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("generalized primitives are not closed under the bracket: {0}")]
    NotClosedUnderBracket(String),
    #[error("no rigid structure is attached")]
    NotRigid,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Monoid(#[from] MonoidError),
    #[error(transparent)]
    Suspensive(#[from] SuspensiveError),
}

type Result<T> = std::result::Result<T, BialgebraError>;

/// Three-valued outcome for checks that may need undefined products.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    True,
    False,
    Indeterminate,
}

impl Verdict {
    pub fn is_true(self) -> bool {
        self == Verdict::True
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::True => "true",
            Verdict::False => "false",
            Verdict::Indeterminate => "indeterminate",
        })
    }
}

/// An element of `A (x) A`, keyed by pairs of basis indices.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct TensorSquareElement {
    terms: BTreeMap<(usize, usize), Scalar>,
}

impl TensorSquareElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms<I: IntoIterator<Item = ((usize, usize), Scalar)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in terms {
            out.add_term(k, &c);
        }
        out
    }

    /// `u (x) v`.
    pub fn pure(u: &SparseVector, v: &SparseVector) -> Self {
        let mut out = Self::zero();
        for (i, a) in u.iter() {
            for (j, b) in v.iter() {
                out.add_term((i, j), &(a * b));
            }
        }
        out
    }

    pub fn add_term(&mut self, key: (usize, usize), c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(old) => {
                let sum = old.clone() + c.clone();
                if sum.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *old = sum;
                }
            }
            None => {
                self.terms.insert(key, c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, other: &TensorSquareElement, c: &Scalar) {
        for (k, v) in &other.terms {
            self.add_term(*k, &(v * c));
        }
    }

    pub fn add(&self, other: &TensorSquareElement) -> TensorSquareElement {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(*k, v);
        }
        out
    }

    pub fn sub(&self, other: &TensorSquareElement) -> TensorSquareElement {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(*k, &-v.clone());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), &Scalar)> + '_ {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The flip `a (x) b -> b (x) a`.
    pub fn swap(&self) -> TensorSquareElement {
        TensorSquareElement {
            terms: self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())).collect(),
        }
    }

    /// Applies linear maps to each factor.
    pub fn map_factors<F, G>(&self, left: F, right: G) -> TensorSquareElement
    where
        F: Fn(usize) -> SparseVector,
        G: Fn(usize) -> SparseVector,
    {
        let mut out = TensorSquareElement::zero();
        for (&(i, j), c) in &self.terms {
            let mut t = TensorSquareElement::pure(&left(i), &right(j));
            t = t.scaled(c);
            out = out.add(&t);
        }
        out
    }

    pub fn scaled(&self, c: &Scalar) -> TensorSquareElement {
        let mut out = TensorSquareElement::zero();
        out.add_scaled(self, c);
        out
    }

    /// Flattened coordinates `i * dim + j`.
    pub fn flatten(&self, dim: usize) -> SparseVector {
        SparseVector::from_pairs(self.terms.iter().map(|(&(i, j), c)| (i * dim + j, c.clone())))
    }

    pub fn format_with<F: Fn(usize) -> String>(&self, name: F) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (n, (&(i, j), c)) in self.terms.iter().enumerate() {
            let text = c.to_string();
            let (neg, mag) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            if n == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if mag != "1" {
                out.push_str(&mag);
                out.push('*');
            }
            out.push_str(&format!("{} (x) {}", name(i), name(j)));
        }
        out
    }
}

/// Result of multiplying two basis elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Product {
    Defined(SparseVector),
    Overflow,
}

/// The rigid unit map on the degrees of a window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RigidStructure {
    pub monoid: Monoid,
    pub eta: BTreeMap<MonoidElement, usize>,
    pub window: DegreeWindow,
}

impl RigidStructure {
    pub fn new(monoid: Monoid, eta: BTreeMap<MonoidElement, usize>) -> Result<Self> {
        let window = DegreeWindow::new(&monoid, eta.keys().copied().collect())?;
        if window.len() != eta.len() {
            return Err(BialgebraError::Schema("the rigid unit map must cover the identity".into()));
        }
        let images: BTreeSet<usize> = eta.values().copied().collect();
        if images.len() != eta.len() {
            return Err(BialgebraError::Schema("the rigid unit map is not injective".into()));
        }
        Ok(RigidStructure { monoid, eta, window })
    }

    pub fn image(&self, g: MonoidElement) -> Option<usize> {
        self.eta.get(&g).copied()
    }
}

#[derive(Debug, Clone)]
pub struct PresentedBialgebra {
    field: Field,
    names: Vec<String>,
    degrees: Vec<Option<MonoidElement>>,
    unit: SparseVector,
    counit: Vec<Scalar>,
    mult: Vec<Vec<Product>>,
    comult: Vec<TensorSquareElement>,
    rigid: Option<RigidStructure>,
}

impl PresentedBialgebra {
    /// Assembles a bialgebra from tables; `mult[i][j]` is `e_i e_j`.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        field: Field,
        names: Vec<String>,
        degrees: Vec<Option<MonoidElement>>,
        unit: SparseVector,
        counit: Vec<Scalar>,
        mult: Vec<Vec<Product>>,
        comult: Vec<TensorSquareElement>,
        rigid: Option<RigidStructure>,
    ) -> Result<Self> {
        let n = names.len();
        if degrees.len() != n || counit.len() != n || mult.len() != n || comult.len() != n {
            return Err(BialgebraError::Schema("table sizes disagree with the basis".into()));
        }
        if mult.iter().any(|row| row.len() != n) {
            return Err(BialgebraError::Schema("multiplication table is not square".into()));
        }
        let in_range = |v: &SparseVector| v.indices().all(|k| k < n);
        if !in_range(&unit) {
            return Err(BialgebraError::Schema("unit has an index out of range".into()));
        }
        for row in &mult {
            for p in row {
                if let Product::Defined(v) = p {
                    if !in_range(v) {
                        return Err(BialgebraError::Schema("product has an index out of range".into()));
                    }
                }
            }
        }
        for t in &comult {
            if t.iter().any(|((i, j), _)| i >= n || j >= n) {
                return Err(BialgebraError::Schema("coproduct has an index out of range".into()));
            }
        }
        if degrees.iter().any(|d| d.is_some()) && rigid.is_none() {
            return Err(BialgebraError::Schema("degrees need a rigid structure naming the monoid".into()));
        }
        if let Some(r) = &rigid {
            if r.eta.values().any(|&i| i >= n) {
                return Err(BialgebraError::Schema("rigid unit map has an index out of range".into()));
            }
        }
        let mut seen = BTreeSet::new();
        for name in &names {
            if !seen.insert(name) {
                return Err(BialgebraError::Schema(format!("duplicate basis name {name}")));
            }
        }
        Ok(PresentedBialgebra {
            field,
            names,
            degrees,
            unit,
            counit,
            mult,
            comult,
            rigid,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn degree(&self, i: usize) -> Option<MonoidElement> {
        self.degrees[i]
    }

    pub fn is_graded(&self) -> bool {
        self.degrees.iter().any(|d| d.is_some())
    }

    pub fn rigid(&self) -> Option<&RigidStructure> {
        self.rigid.as_ref()
    }

    pub fn set_rigid(&mut self, rigid: Option<RigidStructure>) {
        self.rigid = rigid;
    }

    pub fn unit(&self) -> &SparseVector {
        &self.unit
    }

    pub fn counit_basis(&self, i: usize) -> &Scalar {
        &self.counit[i]
    }

    pub fn counit(&self, v: &SparseVector) -> Scalar {
        let mut acc = self.field.zero();
        for (i, c) in v.iter() {
            acc = acc + c * &self.counit[i];
        }
        acc
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &Product {
        &self.mult[i][j]
    }

    pub fn comul_basis(&self, i: usize) -> &TensorSquareElement {
        &self.comult[i]
    }

    pub fn format(&self, v: &SparseVector) -> String {
        v.format_with(|i| self.names[i].clone())
    }

    pub fn format_tensor(&self, t: &TensorSquareElement) -> String {
        t.format_with(|i| self.names[i].clone())
    }

    fn degree_name(&self, d: MonoidElement) -> String {
        match &self.rigid {
            Some(r) => r.monoid.name(d),
            None => format!("{}", d.0),
        }
    }

    /// Basis indices in degree `d`; every index if the algebra is ungraded.
    pub fn block(&self, d: MonoidElement) -> Vec<usize> {
        if self.is_graded() {
            (0..self.dim()).filter(|&i| self.degrees[i] == Some(d)).collect()
        } else {
            (0..self.dim()).collect()
        }
    }

    pub fn mul(&self, u: &SparseVector, v: &SparseVector) -> Result<SparseVector> {
        let mut out = SparseVector::zero();
        for (i, a) in u.iter() {
            for (j, b) in v.iter() {
                match &self.mult[i][j] {
                    Product::Defined(p) => out = out.add_scaled(p, &(a * b)),
                    Product::Overflow => {
                        return Err(BialgebraError::Overflow(format!("{} * {}", self.names[i], self.names[j])))
                    }
                }
            }
        }
        Ok(out)
    }

    /// Left-to-right product of a list of elements; the empty product is 1.
    pub fn mul_all(&self, factors: &[SparseVector]) -> Result<SparseVector> {
        let mut acc = self.unit.clone();
        for f in factors {
            acc = self.mul(&acc, f)?;
        }
        Ok(acc)
    }

    pub fn comul(&self, v: &SparseVector) -> TensorSquareElement {
        let mut out = TensorSquareElement::zero();
        for (i, c) in v.iter() {
            out.add_scaled(&self.comult[i], c);
        }
        out
    }

    /// Product in `A (x) A`, factorwise.
    pub fn tensor_mul(&self, s: &TensorSquareElement, t: &TensorSquareElement) -> Result<TensorSquareElement> {
        let mut out = TensorSquareElement::zero();
        for ((a, b), c) in s.iter() {
            for ((x, y), d) in t.iter() {
                let left = self.mul(&SparseVector::unit(a, self.field), &SparseVector::unit(x, self.field))?;
                let right = self.mul(&SparseVector::unit(b, self.field), &SparseVector::unit(y, self.field))?;
                let mut piece = TensorSquareElement::pure(&left, &right);
                piece = piece.scaled(&(c * d));
                out = out.add(&piece);
            }
        }
        Ok(out)
    }

    fn eta(&self, g: MonoidElement) -> Result<SparseVector> {
        let r = self.rigid.as_ref().ok_or(BialgebraError::NotRigid)?;
        let i = r
            .image(g)
            .ok_or_else(|| BialgebraError::WindowTooSmall(format!("degree {} is outside the window", r.monoid.name(g))))?;
        Ok(SparseVector::unit(i, self.field))
    }

    /// The group algebra of a finite monoid, or of the window of the free one
    /// with products beyond the window marked as overflow.
    pub fn monoid_algebra(field: Field, monoid: &Monoid, window: &DegreeWindow) -> Result<Self> {
        let elems: Vec<MonoidElement> = window.iter().collect();
        let index: BTreeMap<MonoidElement, usize> = elems.iter().enumerate().map(|(k, &g)| (g, k)).collect();
        let n = elems.len();
        let names = elems.iter().map(|&g| monoid.name(g)).collect();
        let mult = elems
            .iter()
            .map(|&a| {
                elems
                    .iter()
                    .map(|&b| match index.get(&monoid.mul(a, b)) {
                        Some(&k) => Product::Defined(SparseVector::unit(k, field)),
                        None => Product::Overflow,
                    })
                    .collect()
            })
            .collect();
        let comult = (0..n)
            .map(|k| TensorSquareElement::from_terms([((k, k), field.one())]))
            .collect();
        let rigid = RigidStructure::new(monoid.clone(), index.clone())?;
        PresentedBialgebra::new(
            field,
            names,
            elems.iter().map(|&g| Some(g)).collect(),
            SparseVector::unit(index[&monoid.identity()], field),
            vec![field.one(); n],
            mult,
            comult,
            Some(rigid),
        )
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: BialgebraDoc = serde_json::from_str(text).map_err(|e| BialgebraError::Schema(e.to_string()))?;
        Self::from_doc(&doc)
    }

    pub fn from_doc(doc: &BialgebraDoc) -> Result<Self> {
        let field = doc.field.unwrap_or(FieldDoc::Q).to_field()?;
        let names: Vec<String> = doc.basis.iter().map(|b| b.name.clone()).collect();
        let n = names.len();
        let lookup = names.clone();
        let idx = |s: &str| -> Result<usize> {
            lookup
                .iter()
                .position(|x| x == s)
                .ok_or_else(|| BialgebraError::Schema(format!("unknown basis element {s:?}")))
        };
        let vector = |terms: &[(String, String)]| -> Result<SparseVector> {
            let mut pairs = Vec::new();
            for (name, c) in terms {
                pairs.push((idx(name)?, field.parse(c)?));
            }
            Ok(SparseVector::from_pairs(pairs))
        };
        let (rigid, monoid) = match &doc.rigid {
            Some(r) => {
                let monoid = Monoid::from_doc(&r.monoid)?;
                let mut eta = BTreeMap::new();
                for (g, b) in &r.eta {
                    eta.insert(monoid.parse_element(g)?, idx(b)?);
                }
                (Some(RigidStructure::new(monoid.clone(), eta)?), Some(monoid))
            }
            None => (None, None),
        };
        let mut degrees = Vec::with_capacity(n);
        for b in &doc.basis {
            degrees.push(match (&b.degree, &monoid) {
                (Some(d), Some(m)) => Some(m.parse_element(d)?),
                (Some(_), None) => {
                    return Err(BialgebraError::Schema("degrees need a rigid structure naming the monoid".into()))
                }
                (None, _) => None,
            });
        }
        let mut counit = vec![field.zero(); n];
        for (name, c) in &doc.counit {
            counit[idx(name)?] = field.parse(c)?;
        }
        let mut mult = vec![vec![Product::Defined(SparseVector::zero()); n]; n];
        for (key, entry) in &doc.mult {
            let (a, b) = key
                .split_once('|')
                .ok_or_else(|| BialgebraError::Schema(format!("product key {key:?} is not of the form a|b")))?;
            let (i, j) = (idx(a.trim())?, idx(b.trim())?);
            mult[i][j] = match entry {
                MultEntry::Terms(t) => Product::Defined(vector(t)?),
                MultEntry::Marker(m) if m == "overflow" => Product::Overflow,
                MultEntry::Marker(m) => return Err(BialgebraError::Schema(format!("unknown product marker {m:?}"))),
            };
        }
        let mut comult = vec![TensorSquareElement::zero(); n];
        for (name, terms) in &doc.comult {
            let i = idx(name)?;
            let mut t = TensorSquareElement::zero();
            for (a, b, c) in terms {
                t.add_term((idx(a)?, idx(b)?), &field.parse(c)?);
            }
            comult[i] = t;
        }
        let unit = vector(&doc.unit)?;
        PresentedBialgebra::new(field, names, degrees, unit, counit, mult, comult, rigid)
    }

    pub fn to_doc(&self) -> BialgebraDoc {
        let terms = |v: &SparseVector| -> Vec<(String, String)> {
            v.iter().map(|(k, c)| (self.names[k].clone(), c.to_string())).collect()
        };
        let mut mult = BTreeMap::new();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let key = format!("{}|{}", self.names[i], self.names[j]);
                match &self.mult[i][j] {
                    Product::Defined(v) if v.is_zero() => {}
                    Product::Defined(v) => {
                        mult.insert(key, MultEntry::Terms(terms(v)));
                    }
                    Product::Overflow => {
                        mult.insert(key, MultEntry::Marker("overflow".into()));
                    }
                }
            }
        }
        BialgebraDoc {
            field: Some(self.field.into()),
            basis: (0..self.dim())
                .map(|i| BialgebraBasisDoc {
                    name: self.names[i].clone(),
                    degree: self.degrees[i].map(|d| self.degree_name(d)),
                })
                .collect(),
            unit: terms(&self.unit),
            counit: (0..self.dim())
                .filter(|&i| !self.counit[i].is_zero())
                .map(|i| (self.names[i].clone(), self.counit[i].to_string()))
                .collect(),
            mult,
            comult: (0..self.dim())
                .map(|i| {
                    (
                        self.names[i].clone(),
                        self.comult[i]
                            .iter()
                            .map(|((a, b), c)| (self.names[a].clone(), self.names[b].clone(), c.to_string()))
                            .collect(),
                    )
                })
                .collect(),
            rigid: self.rigid.as_ref().map(|r| RigidDoc {
                monoid: r.monoid.to_doc(),
                eta: r.eta.iter().map(|(g, &i)| (r.monoid.name(*g), self.names[i].clone())).collect(),
            }),
        }
    }

    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self.to_doc()).expect("serializable");
        serde_json::to_string_pretty(&value).expect("serializable")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BialgebraDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldDoc>,
    pub basis: Vec<BialgebraBasisDoc>,
    pub unit: Vec<(String, String)>,
    #[serde(default)]
    pub counit: BTreeMap<String, String>,
    #[serde(default)]
    pub mult: BTreeMap<String, MultEntry>,
    #[serde(default)]
    pub comult: BTreeMap<String, Vec<(String, String, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rigid: Option<RigidDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BialgebraBasisDoc {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MultEntry {
    Terms(Vec<(String, String)>),
    Marker(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RigidDoc {
    pub monoid: MonoidDoc,
    pub eta: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BialgebraAxiom {
    Unit,
    Associativity,
    Counit,
    Coassociativity,
    MultiplicativeCoproduct,
    MultiplicativeCounit,
    DiagonalDegree,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomViolation {
    pub axiom: BialgebraAxiom,
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BialgebraReport {
    pub violations: Vec<AxiomViolation>,
    /// Checks skipped because a needed product is undefined.
    pub indeterminate: usize,
    pub passed: bool,
}

impl BialgebraReport {
    pub fn violates(&self, axiom: BialgebraAxiom) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }
}

/// Checks the bialgebra axioms on basis elements, skipping undefined products.
pub fn check_bialgebra(a: &PresentedBialgebra) -> BialgebraReport {
    let n = a.dim();
    let f = a.field();
    let e = |i: usize| SparseVector::unit(i, f);
    let mut violations = Vec::new();
    let mut indeterminate = 0;
    let mut fail = |axiom, witness: String| violations.push(AxiomViolation { axiom, witness });

    for i in 0..n {
        for (lhs, side) in [(a.mul(a.unit(), &e(i)), "1 * "), (a.mul(&e(i), a.unit()), "* 1 on ")] {
            match lhs {
                Ok(v) if v != e(i) => fail(BialgebraAxiom::Unit, format!("{side}{} gives {}", a.name(i), a.format(&v))),
                Ok(_) => {}
                Err(_) => indeterminate += 1,
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            let ij = match a.mul_basis(i, j) {
                Product::Defined(v) => v.clone(),
                Product::Overflow => {
                    indeterminate += 1;
                    continue;
                }
            };
            for k in 0..n {
                let lhs = a.mul(&ij, &e(k));
                let rhs = match a.mul_basis(j, k) {
                    Product::Defined(jk) => a.mul(&e(i), jk),
                    Product::Overflow => Err(BialgebraError::Overflow(String::new())),
                };
                match (lhs, rhs) {
                    (Ok(l), Ok(r)) if l != r => fail(
                        BialgebraAxiom::Associativity,
                        format!("({} {}) {} != {} ({} {})", a.name(i), a.name(j), a.name(k), a.name(i), a.name(j), a.name(k)),
                    ),
                    (Ok(_), Ok(_)) => {}
                    _ => indeterminate += 1,
                }
            }
        }
    }
    for i in 0..n {
        let d = a.comul_basis(i);
        let mut left = SparseVector::zero();
        let mut right = SparseVector::zero();
        for ((x, y), c) in d.iter() {
            left = left.add_scaled(&e(y), &(c * a.counit_basis(x)));
            right = right.add_scaled(&e(x), &(c * a.counit_basis(y)));
        }
        if left != e(i) || right != e(i) {
            fail(BialgebraAxiom::Counit, format!("counit fails on {}", a.name(i)));
        }
        let mut lhs: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
        let mut rhs: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
        let push = |m: &mut BTreeMap<(usize, usize, usize), Scalar>, k, c: Scalar| {
            let entry = m.entry(k).or_insert_with(|| f.zero());
            *entry = entry.clone() + c;
        };
        for ((x, y), c) in d.iter() {
            for ((u, v), c2) in a.comul_basis(x).iter() {
                push(&mut lhs, (u, v, y), c * c2);
            }
            for ((u, v), c2) in a.comul_basis(y).iter() {
                push(&mut rhs, (x, u, v), c * c2);
            }
        }
        lhs.retain(|_, c| !c.is_zero());
        rhs.retain(|_, c| !c.is_zero());
        if lhs != rhs {
            fail(BialgebraAxiom::Coassociativity, format!("coassociativity fails on {}", a.name(i)));
        }
        if let Some(d0) = a.degree(i) {
            if let Some(((x, y), _)) = d.iter().find(|((x, y), _)| a.degree(*x) != Some(d0) || a.degree(*y) != Some(d0)) {
                fail(
                    BialgebraAxiom::DiagonalDegree,
                    format!("coproduct of {} has the term {} (x) {} off the diagonal", a.name(i), a.name(x), a.name(y)),
                );
            }
        }
    }
    let unit_coproduct = TensorSquareElement::pure(a.unit(), a.unit());
    if a.comul(a.unit()) != unit_coproduct {
        fail(BialgebraAxiom::MultiplicativeCoproduct, "coproduct of 1 is not 1 (x) 1".into());
    }
    if !a.counit(a.unit()).is_one() {
        fail(BialgebraAxiom::MultiplicativeCounit, "counit of 1 is not 1".into());
    }
    for i in 0..n {
        for j in 0..n {
            let ij = match a.mul_basis(i, j) {
                Product::Defined(v) => v,
                Product::Overflow => continue,
            };
            if a.counit(ij) != a.counit_basis(i).clone() * a.counit_basis(j).clone() {
                fail(
                    BialgebraAxiom::MultiplicativeCounit,
                    format!("counit of {} {} is not the product of counits", a.name(i), a.name(j)),
                );
            }
            match a.tensor_mul(a.comul_basis(i), a.comul_basis(j)) {
                Ok(t) if t != a.comul(ij) => fail(
                    BialgebraAxiom::MultiplicativeCoproduct,
                    format!("coproduct of {} {} is not multiplicative", a.name(i), a.name(j)),
                ),
                Ok(_) => {}
                Err(_) => indeterminate += 1,
            }
        }
    }
    let passed = violations.is_empty();
    BialgebraReport {
        violations,
        indeterminate,
        passed,
    }
}

/// Failures of the rigid unit map: grouplike, multiplicative, central.
pub fn rigid_violations(a: &PresentedBialgebra) -> Result<Vec<String>> {
    let r = a.rigid().ok_or(BialgebraError::NotRigid)?;
    let f = a.field();
    let mut bad = Vec::new();
    for (&g, &i) in &r.eta {
        let gi = SparseVector::unit(i, f);
        if a.comul_basis(i) != &TensorSquareElement::pure(&gi, &gi) || !a.counit_basis(i).is_one() {
            bad.push(format!("{} is not grouplike", a.name(i)));
        }
        if let Some(d) = a.degree(i) {
            if d != g {
                bad.push(format!("{} does not sit in degree {}", a.name(i), r.monoid.name(g)));
            }
        }
        for (&h, &j) in &r.eta {
            if let (Product::Defined(v), Some(&k)) = (a.mul_basis(i, j), r.eta.get(&r.monoid.mul(g, h))) {
                if v != &SparseVector::unit(k, f) {
                    bad.push(format!("{} * {} is not {}", a.name(i), a.name(j), a.name(k)));
                }
            }
        }
        for k in 0..a.dim() {
            if let (Product::Defined(u), Product::Defined(v)) = (a.mul_basis(i, k), a.mul_basis(k, i)) {
                if u != v {
                    bad.push(format!("{} does not commute with {}", a.name(i), a.name(k)));
                }
            }
        }
    }
    if let Some(&i) = r.eta.get(&r.monoid.identity()) {
        if a.unit() != &SparseVector::unit(i, f) {
            bad.push("the rigid unit map does not send the identity to 1".into());
        }
    }
    Ok(bad)
}

pub fn is_cocommutative(a: &PresentedBialgebra) -> bool {
    (0..a.dim()).all(|i| a.comul_basis(i).swap() == *a.comul_basis(i))
}

/// Basis of the `Q`-primitives, in canonical echelon form, as vectors of `A`.
pub fn gp_basis(a: &PresentedBialgebra, q: MonoidElement) -> Result<Vec<SparseVector>> {
    let g = a.eta(q)?;
    let block = a.block(q);
    let n = a.dim();
    let columns: Vec<SparseVector> = block
        .iter()
        .map(|&i| {
            let x = SparseVector::unit(i, a.field());
            a.comul(&x)
                .sub(&TensorSquareElement::pure(&x, &g))
                .sub(&TensorSquareElement::pure(&g, &x))
                .flatten(n)
        })
        .collect();
    let ker = kernel(a.field(), columns_to_rows(&columns, n * n), block.len())?;
    let vectors: Vec<SparseVector> = ker.rows().iter().map(|v| v.remap(|k| Some(block[k]))).collect();
    Ok(rref(a.field(), vectors, n)?.rows().to_vec())
}

/// Generalized primitives degree by degree over the rigid window.
pub fn gp_spaces(a: &PresentedBialgebra) -> Result<BTreeMap<MonoidElement, Vec<SparseVector>>> {
    let r = a.rigid().ok_or(BialgebraError::NotRigid)?;
    r.window.iter().map(|q| Ok((q, gp_basis(a, q)?))).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PgcReport {
    pub verdict: Verdict,
    pub witness: Option<String>,
    pub pairs_checked: usize,
}

/// Evaluates the primitive-grouplike compatibility expression on all pairs of
/// basis primitives in the window.
pub fn check_pgc(a: &PresentedBialgebra) -> Result<PgcReport> {
    let r = a.rigid().ok_or(BialgebraError::NotRigid)?;
    let spaces = gp_spaces(a)?;
    let mut undecided = false;
    let mut checked = 0;
    for (&q, xs) in &spaces {
        for (&q2, ys) in &spaces {
            let gq = a.eta(q)?;
            let gq2 = a.eta(q2)?;
            for x in xs {
                for y in ys {
                    let value = (|| -> Result<TensorSquareElement> {
                        let t1 = TensorSquareElement::pure(&a.mul(x, &gq2)?, &a.mul(&gq, y)?);
                        let t2 = TensorSquareElement::pure(&a.mul(&gq, y)?, &a.mul(x, &gq2)?);
                        let t3 = TensorSquareElement::pure(&a.mul(y, &gq)?, &a.mul(&gq2, x)?);
                        let t4 = TensorSquareElement::pure(&a.mul(&gq2, x)?, &a.mul(y, &gq)?);
                        Ok(t1.add(&t2).sub(&t3).sub(&t4))
                    })();
                    match value {
                        Ok(t) if !t.is_zero() => {
                            return Ok(PgcReport {
                                verdict: Verdict::False,
                                witness: Some(format!(
                                    "a = {} in degree {}, a' = {} in degree {}: {}",
                                    a.format(x),
                                    r.monoid.name(q),
                                    a.format(y),
                                    r.monoid.name(q2),
                                    a.format_tensor(&t)
                                )),
                                pairs_checked: checked + 1,
                            })
                        }
                        Ok(_) => checked += 1,
                        Err(_) => undecided = true,
                    }
                }
            }
        }
    }
    Ok(PgcReport {
        verdict: if undecided { Verdict::Indeterminate } else { Verdict::True },
        witness: None,
        pairs_checked: checked,
    })
}

/// The suspensive Lie algebra of generalized primitives, with the embedding
/// of its basis into `A`.
#[derive(Debug, Clone)]
pub struct GpLie {
    pub lie: SuspensiveLieAlgebra,
    pub embedding: Vec<SparseVector>,
}

impl GpLie {
    /// Coordinates of a generalized primitive in the primitive basis.
    ///
    /// Each degree is stored in echelon form and degrees have disjoint
    /// supports, so the coefficient of a basis vector is read off its pivot.
    pub fn coordinates(&self, v: &SparseVector) -> Option<SparseVector> {
        let mut pairs = Vec::new();
        let mut rebuilt = SparseVector::zero();
        for (k, row) in self.embedding.iter().enumerate() {
            let (p, _) = row.leading()?;
            if let Some(c) = v.get(p) {
                rebuilt = rebuilt.add_scaled(row, c);
                pairs.push((k, c.clone()));
            }
        }
        (rebuilt == *v).then(|| SparseVector::from_pairs(pairs))
    }
}

fn primitive_name(a: &PresentedBialgebra, v: &SparseVector, fallback: usize) -> String {
    let simple = v.len() == 1 && v.iter().all(|(_, c)| c.is_one());
    if simple {
        let (i, _) = v.leading().expect("nonzero");
        a.name(i).to_string()
    } else {
        format!("p{fallback}")
    }
}

/// Generalized primitives of `A` as a suspensive Lie algebra: grading by the
/// rigid degree, action by the rigid unit map, commutator bracket.
pub fn gp_lie(a: &PresentedBialgebra) -> Result<GpLie> {
    let r = a.rigid().ok_or(BialgebraError::NotRigid)?.clone();
    let f = a.field();
    let spaces = gp_spaces(a)?;
    let mut basis = Vec::new();
    let mut embedding = Vec::new();
    let mut subspaces = BTreeMap::new();
    for (&q, vs) in &spaces {
        let start = embedding.len();
        for v in vs {
            basis.push((primitive_name(a, v, embedding.len()), q));
            embedding.push(v.clone());
        }
        subspaces.insert(q, (start, rref(f, vs.clone(), a.dim())?));
    }
    let mut names_seen = BTreeSet::new();
    for (k, (name, _)) in basis.iter_mut().enumerate() {
        if !names_seen.insert(name.clone()) {
            *name = format!("p{k}");
        }
    }
    let data_window = if r.monoid.is_finite() { None } else { Some(r.window.top()) };
    let mut lie = SuspensiveLieAlgebra::new(f, r.monoid.clone(), basis.clone(), data_window)?;
    let to_coords = |target: MonoidElement, v: &SparseVector| -> Option<SparseVector> {
        let (start, space) = subspaces.get(&target)?;
        let c = space.coordinates(v)?;
        Some(SparseVector::from_pairs(c.into_iter().enumerate().map(|(k, s)| (start + k, s))))
    };
    let acting: Vec<MonoidElement> = if r.monoid.is_finite() {
        r.window.iter().filter(|&g| g != r.monoid.identity()).collect()
    } else {
        vec![r.monoid.generator().expect("free monoid has a generator")]
    };
    for &g in &acting {
        let eg = a.eta(g)?;
        for (i, v) in embedding.iter().enumerate() {
            let target = r.monoid.mul(g, basis[i].1);
            if !r.window.contains(target) {
                continue;
            }
            let image = a.mul(&eg, v)?;
            let coords = to_coords(target, &image).ok_or_else(|| {
                BialgebraError::NotClosedUnderBracket(format!("{} . {} is not primitive", r.monoid.name(g), a.format(v)))
            })?;
            lie.set_action(g, i, coords)?;
        }
    }
    for i in 0..embedding.len() {
        for j in (i + 1)..embedding.len() {
            let target = r.monoid.mul(basis[i].1, basis[j].1);
            if !r.window.contains(target) {
                continue;
            }
            let c = a.mul(&embedding[i], &embedding[j])?.sub(&a.mul(&embedding[j], &embedding[i])?);
            if c.is_zero() {
                continue;
            }
            let coords = to_coords(target, &c).ok_or_else(|| {
                BialgebraError::NotClosedUnderBracket(format!(
                    "[{}, {}] = {}",
                    a.format(&embedding[i]),
                    a.format(&embedding[j]),
                    a.format(&c)
                ))
            })?;
            lie.set_bracket(i, j, coords)?;
        }
    }
    Ok(GpLie { lie, embedding })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GpgReport {
    pub verdict: Verdict,
    pub generated_dim: usize,
    pub total_dim: usize,
    pub missing: Option<String>,
}

/// Whether grouplikes and generalized primitives generate `A` as an algebra,
/// within the computed window.
pub fn is_gpg(a: &PresentedBialgebra) -> Result<GpgReport> {
    let r = a.rigid().ok_or(BialgebraError::NotRigid)?;
    let f = a.field();
    let n = a.dim();
    let mut gens: Vec<SparseVector> = r.eta.values().map(|&i| SparseVector::unit(i, f)).collect();
    for vs in gp_spaces(a)?.into_values() {
        gens.extend(vs);
    }
    let mut span = rref(f, gens.iter().cloned().chain([a.unit().clone()]).collect(), n)?;
    let mut frontier: Vec<SparseVector> = span.rows().to_vec();
    let mut undecided = false;
    while !frontier.is_empty() {
        let mut fresh = Vec::new();
        for v in &frontier {
            for g in &gens {
                for p in [a.mul(v, g), a.mul(g, v)] {
                    match p {
                        Ok(p) => {
                            if !span.contains(&p) && !p.is_zero() {
                                span = span.sum(&rref(f, vec![p.clone()], n)?);
                                fresh.push(p);
                            }
                        }
                        Err(_) => undecided = true,
                    }
                }
            }
        }
        frontier = fresh;
    }
    let generated_dim = span.rank();
    let missing = span.non_pivots().first().map(|&i| a.name(i).to_string());
    let verdict = if generated_dim == n {
        Verdict::True
    } else if undecided {
        Verdict::Indeterminate
    } else {
        Verdict::False
    };
    Ok(GpgReport {
        verdict,
        generated_dim,
        total_dim: n,
        missing,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeftSidedReport {
    pub verdict: Verdict,
    pub witness: Option<String>,
    pub pairs_checked: usize,
}

/// Checks `xy = 0` for `x` in `GP_Q`, `y` in `GP_Q'` with `Q | Q'`, whenever
/// `QQ'` lies in the window.
pub fn is_left_sided(a: &PresentedBialgebra) -> Result<LeftSidedReport> {
    let r = a.rigid().ok_or(BialgebraError::NotRigid)?;
    let spaces = gp_spaces(a)?;
    let mut undecided = false;
    let mut checked = 0;
    for (&q, xs) in &spaces {
        for (&q2, ys) in &spaces {
            if !r.monoid.divides(q, q2) || !r.window.contains(r.monoid.mul(q, q2)) {
                continue;
            }
            for x in xs {
                for y in ys {
                    match a.mul(x, y) {
                        Ok(p) if !p.is_zero() => {
                            return Ok(LeftSidedReport {
                                verdict: Verdict::False,
                                witness: Some(format!(
                                    "({}) * ({}) = {} with {} dividing {}",
                                    a.format(x),
                                    a.format(y),
                                    a.format(&p),
                                    r.monoid.name(q),
                                    r.monoid.name(q2)
                                )),
                                pairs_checked: checked + 1,
                            })
                        }
                        Ok(_) => checked += 1,
                        Err(_) => undecided = true,
                    }
                }
            }
        }
    }
    Ok(LeftSidedReport {
        verdict: if undecided { Verdict::Indeterminate } else { Verdict::True },
        witness: None,
        pairs_checked: checked,
    })
}

/// Torsion classification of the generalized primitives.
pub fn is_torsion_free_bialgebra(a: &PresentedBialgebra) -> Result<TorsionFlags> {
    let gp = gp_lie(a)?;
    let r = a.rigid().ok_or(BialgebraError::NotRigid)?;
    Ok(gp.lie.torsion_flags(&r.window)?)
}

/// The subset sum `s_n` on homogeneous generalized primitives `(x_i, |x_i|)`:
/// over proper nonempty `U`, the product with `|x_i|` at `i in U` on the left
/// and at `i not in U` on the right.
pub fn s_n(a: &PresentedBialgebra, xs: &[(SparseVector, MonoidElement)]) -> Result<TensorSquareElement> {
    let n = xs.len();
    if n > 20 {
        return Err(BialgebraError::Schema("s_n is limited to 20 factors".into()));
    }
    let degrees: Vec<SparseVector> = xs.iter().map(|(_, q)| a.eta(*q)).collect::<Result<_>>()?;
    let mut out = TensorSquareElement::zero();
    for mask in 1u32..(1u32 << n).saturating_sub(1) {
        let pick = |in_u: bool| -> Vec<SparseVector> {
            (0..n)
                .map(|i| {
                    if ((mask >> i) & 1 == 1) == in_u {
                        degrees[i].clone()
                    } else {
                        xs[i].0.clone()
                    }
                })
                .collect()
        };
        let left = a.mul_all(&pick(true))?;
        let right = a.mul_all(&pick(false))?;
        out = out.add(&TensorSquareElement::pure(&left, &right));
    }
    Ok(out)
}

/// Roots of `x^n = 1` in the field, i.e. the characters of the cyclic group.
pub fn nth_roots_of_unity(n: u64, field: Field) -> Vec<Scalar> {
    match field {
        Field::Rational => {
            // Rational roots of x^n - 1 divide the constant term.
            let mut out = vec![field.one()];
            if n.is_multiple_of(2) {
                out.push(field.from_i64(-1));
            }
            out
        }
        Field::Prime(p) => (1..p)
            .map(|v| field.from_i64(v as i64))
            .filter(|x| {
                let mut acc = field.one();
                for _ in 0..n {
                    acc = acc * x.clone();
                }
                acc.is_one()
            })
            .collect(),
    }
}

/// The dual of the group algebra of the cyclic group of order `n`, on the
/// basis `1, d1, ..., d(n-1)` where `dk` is the indicator of the k-th element.
pub fn dual_cyclic_group_algebra(n: usize, field: Field) -> Result<PresentedBialgebra> {
    if n == 0 {
        return Err(BialgebraError::Schema("the cyclic group needs positive order".into()));
    }
    let one = field.one();
    // Indicator of the identity written in this basis.
    let delta = |k: usize| -> SparseVector {
        if k == 0 {
            let mut pairs = vec![(0, one.clone())];
            pairs.extend((1..n).map(|j| (j, -one.clone())));
            SparseVector::from_pairs(pairs)
        } else {
            SparseVector::unit(k, field)
        }
    };
    let mut names = vec!["1".to_string()];
    names.extend((1..n).map(|k| format!("d{k}")));
    let mult = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    Product::Defined(match (i, j) {
                        (0, j) => SparseVector::unit(j, field),
                        (i, 0) => SparseVector::unit(i, field),
                        (i, j) if i == j => SparseVector::unit(i, field),
                        _ => SparseVector::zero(),
                    })
                })
                .collect()
        })
        .collect();
    let comult = (0..n)
        .map(|k| {
            if k == 0 {
                return TensorSquareElement::from_terms([((0, 0), one.clone())]);
            }
            let mut t = TensorSquareElement::zero();
            for i in 0..n {
                let j = (k + n - i) % n;
                t = t.add(&TensorSquareElement::pure(&delta(i), &delta(j)));
            }
            t
        })
        .collect();
    let mut counit = vec![field.zero(); n];
    counit[0] = one.clone();
    let rigid = RigidStructure::new(Monoid::trivial(), BTreeMap::from([(MonoidElement(0), 0)]))?;
    PresentedBialgebra::new(
        field,
        names,
        vec![None; n],
        SparseVector::unit(0, field),
        counit,
        mult,
        comult,
        Some(rigid),
    )
}

/// Grouplikes of the dual cyclic group algebra: the characters `sum z^k dk`
/// for the `n`-th roots of unity `z`, written in the basis above.
pub fn grouplikes_of_dual_cyclic_group_algebra(n: usize, field: Field) -> Vec<SparseVector> {
    nth_roots_of_unity(n as u64, field)
        .into_iter()
        .map(|z| {
            let mut pairs = vec![(0, field.one())];
            let mut power = field.one();
            for k in 1..n {
                power = power * z.clone();
                pairs.push((k, power.clone() - field.one()));
            }
            SparseVector::from_pairs(pairs)
        })
        .collect()
}

/// Whether `v` is grouplike: `Delta(v) = v (x) v` and `e(v) = 1`.
pub fn is_grouplike(a: &PresentedBialgebra, v: &SparseVector) -> bool {
    a.comul(v) == TensorSquareElement::pure(v, v) && a.counit(v).is_one()
}

/// Echelon basis of a list of vectors in `A`.
pub fn span(a: &PresentedBialgebra, vectors: Vec<SparseVector>) -> Result<Subspace> {
    Ok(rref(a.field(), vectors, a.dim())?)
}
