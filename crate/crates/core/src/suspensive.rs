//! Monoid-graded Lie algebras carrying a compatible monoid action.
//!
//! A basis element has a degree in `G`; each element of `G` acts by a linear map
//! that shifts degrees multiplicatively; the bracket is `kG`-bilinear. For the
//! free monoid on `Q` only the action of `Q` is stored and powers are composed
//! on demand. Such algebras may be known only through a data window `Q^N`:
//! anything landing beyond it is reported as overflow, never as zero.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::RwLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{kernel, Field, FieldDoc, LinalgError, Scalar, SparseVector};
use crate::monoid::{DegreeWindow, Monoid, MonoidDoc, MonoidElement, MonoidError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SuspensiveError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("{what} lands in degree {degree}, beyond the data window")]
    Overflow { what: String, degree: String },
    #[error("window too small: degree {0} is needed but not available")]
    WindowTooSmall(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Monoid(#[from] MonoidError),
}

type Result<T> = std::result::Result<T, SuspensiveError>;

pub struct SuspensiveLieAlgebra {
    field: Field,
    monoid: Monoid,
    names: Vec<String>,
    degrees: Vec<MonoidElement>,
    action: BTreeMap<MonoidElement, BTreeMap<usize, SparseVector>>,
    bracket: BTreeMap<(usize, usize), SparseVector>,
    data_window: Option<u32>,
    powers: RwLock<HashMap<(u32, usize), SparseVector>>,
}

impl Clone for SuspensiveLieAlgebra {
    fn clone(&self) -> Self {
        SuspensiveLieAlgebra {
            field: self.field,
            monoid: self.monoid.clone(),
            names: self.names.clone(),
            degrees: self.degrees.clone(),
            action: self.action.clone(),
            bracket: self.bracket.clone(),
            data_window: self.data_window,
            powers: RwLock::new(HashMap::new()),
        }
    }
}

impl fmt::Debug for SuspensiveLieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SuspensiveLieAlgebra")
            .field("field", &self.field)
            .field("monoid", &self.monoid)
            .field("names", &self.names)
            .field("degrees", &self.degrees)
            .field("data_window", &self.data_window)
            .finish_non_exhaustive()
    }
}

impl SuspensiveLieAlgebra {
    /// An algebra with the given basis, zero bracket and zero action.
    ///
    /// `data_window` is only meaningful for the free monoid: the structure is
    /// known through degree `Q^N` and unknown beyond. `None` means complete.
    pub fn new(
        field: Field,
        monoid: Monoid,
        basis: Vec<(String, MonoidElement)>,
        data_window: Option<u32>,
    ) -> Result<Self> {
        if monoid.is_finite() && data_window.is_some() {
            return Err(SuspensiveError::Schema("a data window only applies to free_rank1".into()));
        }
        let mut names = Vec::with_capacity(basis.len());
        let mut degrees = Vec::with_capacity(basis.len());
        for (name, d) in basis {
            if !monoid.contains(d) {
                return Err(SuspensiveError::Schema(format!("degree of {name} is not in the monoid")));
            }
            if let Some(w) = data_window {
                if d.0 > w {
                    return Err(SuspensiveError::Schema(format!(
                        "{name} has degree {} beyond the data window",
                        monoid.name(d)
                    )));
                }
            }
            if names.contains(&name) {
                return Err(SuspensiveError::Schema(format!("duplicate basis name {name}")));
            }
            names.push(name);
            degrees.push(d);
        }
        Ok(SuspensiveLieAlgebra {
            field,
            monoid,
            names,
            degrees,
            action: BTreeMap::new(),
            bracket: BTreeMap::new(),
            data_window,
            powers: RwLock::new(HashMap::new()),
        })
    }

    /// The zero algebra over `monoid`.
    pub fn zero(field: Field, monoid: Monoid) -> Self {
        SuspensiveLieAlgebra::new(field, monoid, Vec::new(), None).expect("empty basis is valid")
    }

    /// Records the image of basis element `i` under `g`. For the free monoid
    /// only the generator may be given.
    pub fn set_action(&mut self, g: MonoidElement, i: usize, image: SparseVector) -> Result<()> {
        self.check_vector(&image)?;
        if i >= self.dim() {
            return Err(SuspensiveError::Schema(format!("action on unknown basis index {i}")));
        }
        if !self.monoid.is_finite() && Some(g) != self.monoid.generator() {
            return Err(SuspensiveError::Schema(
                "free_rank1 actions are given for the generator only".into(),
            ));
        }
        if !self.monoid.contains(g) {
            return Err(SuspensiveError::Schema("acting element is not in the monoid".into()));
        }
        let entry = self.action.entry(g).or_default();
        if image.is_zero() {
            entry.remove(&i);
        } else {
            entry.insert(i, image);
        }
        self.powers.write().expect("cache lock").clear();
        Ok(())
    }

    /// Records `[e_i, e_j]`. The opposite order is inferred by antisymmetry
    /// unless it is given explicitly too.
    pub fn set_bracket(&mut self, i: usize, j: usize, value: SparseVector) -> Result<()> {
        self.check_vector(&value)?;
        if i >= self.dim() || j >= self.dim() {
            return Err(SuspensiveError::Schema("bracket of unknown basis index".into()));
        }
        self.bracket.insert((i, j), value);
        Ok(())
    }

    fn check_vector(&self, v: &SparseVector) -> Result<()> {
        for (k, c) in v.iter() {
            if k >= self.dim() {
                return Err(SuspensiveError::Schema(format!("basis index {k} out of range")));
            }
            if c.field() != self.field {
                return Err(LinalgError::KindMismatch {
                    expected: self.field,
                    found: c.field(),
                }
                .into());
            }
        }
        Ok(())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn monoid(&self) -> &Monoid {
        &self.monoid
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn degree(&self, i: usize) -> MonoidElement {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[MonoidElement] {
        &self.degrees
    }

    pub fn data_window(&self) -> Option<u32> {
        self.data_window
    }

    /// Basis indices of degree `d`, in input order.
    pub fn block(&self, d: MonoidElement) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] == d).collect()
    }

    /// Whether degree `d` is inside the known data.
    pub fn knows_degree(&self, d: MonoidElement) -> bool {
        match self.data_window {
            Some(w) => d.0 <= w,
            None => true,
        }
    }

    pub fn format(&self, v: &SparseVector) -> String {
        v.format_with(|i| self.names[i].clone())
    }

    fn overflow(&self, what: String, d: MonoidElement) -> SuspensiveError {
        SuspensiveError::Overflow {
            what,
            degree: self.monoid.name(d),
        }
    }

    fn generator_image(&self, i: usize) -> SparseVector {
        self.monoid
            .generator()
            .and_then(|q| self.action.get(&q))
            .and_then(|m| m.get(&i))
            .cloned()
            .unwrap_or_default()
    }

    /// `g . e_i`.
    pub fn act_basis(&self, g: MonoidElement, i: usize) -> Result<SparseVector> {
        let id = self.monoid.identity();
        if self.monoid.is_finite() {
            if g == id && !self.action.contains_key(&id) {
                return Ok(SparseVector::unit(i, self.field));
            }
            return Ok(self
                .action
                .get(&g)
                .and_then(|m| m.get(&i))
                .cloned()
                .unwrap_or_default());
        }
        let target = self.monoid.mul(g, self.degrees[i]);
        if !self.knows_degree(target) {
            return Err(self.overflow(format!("{} . {}", self.monoid.name(g), self.names[i]), target));
        }
        if g.0 == 0 {
            return Ok(SparseVector::unit(i, self.field));
        }
        if let Some(v) = self.powers.read().expect("cache lock").get(&(g.0, i)) {
            return Ok(v.clone());
        }
        let prev = self.act_basis(MonoidElement(g.0 - 1), i)?;
        let mut out = SparseVector::zero();
        for (k, c) in prev.iter() {
            out = out.add_scaled(&self.generator_image(k), c);
        }
        self.powers.write().expect("cache lock").insert((g.0, i), out.clone());
        Ok(out)
    }

    /// `g . v`.
    pub fn act(&self, g: MonoidElement, v: &SparseVector) -> Result<SparseVector> {
        let mut out = SparseVector::zero();
        for (i, c) in v.iter() {
            out = out.add_scaled(&self.act_basis(g, i)?, c);
        }
        Ok(out)
    }

    /// `[e_i, e_j]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Result<SparseVector> {
        let d = self.monoid.mul(self.degrees[i], self.degrees[j]);
        if !self.knows_degree(d) {
            return Err(self.overflow(format!("[{}, {}]", self.names[i], self.names[j]), d));
        }
        if let Some(v) = self.bracket.get(&(i, j)) {
            return Ok(v.clone());
        }
        if let Some(v) = self.bracket.get(&(j, i)) {
            return Ok(v.scale(&-self.field.one()));
        }
        Ok(SparseVector::zero())
    }

    pub fn bracket(&self, u: &SparseVector, v: &SparseVector) -> Result<SparseVector> {
        let mut out = SparseVector::zero();
        for (i, a) in u.iter() {
            for (j, b) in v.iter() {
                out = out.add_scaled(&self.bracket_basis(i, j)?, &(a * b));
            }
        }
        Ok(out)
    }

    pub fn is_abelian(&self) -> bool {
        self.bracket.values().all(|v| v.is_zero())
    }

    /// Same grading and action, zero bracket.
    pub fn underlying_abelian(&self) -> SuspensiveLieAlgebra {
        let mut out = self.clone();
        out.bracket.clear();
        out
    }

    /// Elements of `G` used to probe the action: all elements for a finite
    /// monoid, `Q^0..Q^N` for the free one.
    fn acting_elements(&self, window: &DegreeWindow) -> Vec<MonoidElement> {
        window.iter().collect()
    }

    /// Checks every axiom on basis elements whose degrees lie in `window`.
    pub fn check_suspensive(&self, window: &DegreeWindow) -> Result<SuspensiveReport> {
        let m = &self.monoid;
        if let Some(w) = self.data_window {
            if window.top() > w {
                return Err(SuspensiveError::WindowTooSmall(m.name(MonoidElement(window.top()))));
            }
        }
        let mut report = SuspensiveReport::new(window.iter().map(|d| m.name(d)).collect());
        let inside: Vec<usize> = (0..self.dim()).filter(|&i| window.contains(self.degrees[i])).collect();
        let gs = self.acting_elements(window);
        let id = m.identity();

        // Stored action data must respect degrees.
        for (g, images) in &self.action {
            for (&i, v) in images {
                let want = m.mul(*g, self.degrees[i]);
                if let Some(k) = v.indices().find(|&k| self.degrees[k] != want) {
                    report.fail(
                        Axiom::ActionGrading,
                        format!(
                            "{} . {} has a term {} in degree {}, expected {}",
                            m.name(*g),
                            self.names[i],
                            self.names[k],
                            m.name(self.degrees[k]),
                            m.name(want)
                        ),
                    );
                }
            }
        }
        if let Some(images) = self.action.get(&id) {
            for &i in &inside {
                let v = images.get(&i).cloned().unwrap_or_default();
                if v != SparseVector::unit(i, self.field) {
                    report.fail(
                        Axiom::Unitality,
                        format!("1 . {} = {}", self.names[i], self.format(&v)),
                    );
                }
            }
        }
        if m.is_finite() {
            for &g in &gs {
                for &h in &gs {
                    let gh = m.mul(g, h);
                    for &i in &inside {
                        let lhs = self.act(g, &self.act_basis(h, i)?)?;
                        let rhs = self.act_basis(gh, i)?;
                        if lhs != rhs {
                            report.fail(
                                Axiom::Associativity,
                                format!("{} . ({} . {}) != ({}) . {}", m.name(g), m.name(h), self.names[i], m.name(gh), self.names[i]),
                            );
                        }
                    }
                }
            }
        }

        for (&(i, j), v) in &self.bracket {
            let want = m.mul(self.degrees[i], self.degrees[j]);
            if let Some(k) = v.indices().find(|&k| self.degrees[k] != want) {
                report.fail(
                    Axiom::GradedBracket,
                    format!(
                        "[{}, {}] has a term {} in degree {}, expected {}",
                        self.names[i],
                        self.names[j],
                        self.names[k],
                        m.name(self.degrees[k]),
                        m.name(want)
                    ),
                );
            }
            if i == j && !v.is_zero() {
                report.fail(
                    Axiom::Antisymmetry,
                    format!("[{}, {}] = {} is nonzero", self.names[i], self.names[i], self.format(v)),
                );
            }
            if i < j {
                if let Some(w) = self.bracket.get(&(j, i)) {
                    if v.add(w) != SparseVector::zero() {
                        report.fail(
                            Axiom::Antisymmetry,
                            format!("[{}, {}] + [{}, {}] != 0", self.names[i], self.names[j], self.names[j], self.names[i]),
                        );
                    }
                }
            }
        }

        for (a, &i) in inside.iter().enumerate() {
            for (b, &j) in inside.iter().enumerate().skip(a + 1) {
                for &k in inside.iter().skip(b + 1) {
                    let d = m.product([self.degrees[i], self.degrees[j], self.degrees[k]]);
                    if !window.contains(d) {
                        continue;
                    }
                    let ei = SparseVector::unit(i, self.field);
                    let ej = SparseVector::unit(j, self.field);
                    let ek = SparseVector::unit(k, self.field);
                    let terms = (|| -> Result<SparseVector> {
                        let t1 = self.bracket(&ei, &self.bracket_basis(j, k)?)?;
                        let t2 = self.bracket(&ej, &self.bracket_basis(k, i)?)?;
                        let t3 = self.bracket(&ek, &self.bracket_basis(i, j)?)?;
                        Ok(t1.add(&t2).add(&t3))
                    })();
                    match terms {
                        Ok(v) if !v.is_zero() => report.fail(
                            Axiom::Jacobi,
                            format!(
                                "Jacobi sum for ({}, {}, {}) is {}",
                                self.names[i],
                                self.names[j],
                                self.names[k],
                                self.format(&v)
                            ),
                        ),
                        Ok(_) => {}
                        Err(_) => report.indeterminate += 1,
                    }
                }
            }
        }

        for &g in &gs {
            if g == id {
                continue;
            }
            for &i in &inside {
                for &j in &inside {
                    let d = m.product([g, self.degrees[i], self.degrees[j]]);
                    if !window.contains(d) {
                        continue;
                    }
                    let ei = SparseVector::unit(i, self.field);
                    let ej = SparseVector::unit(j, self.field);
                    let sides = (|| -> Result<(SparseVector, SparseVector, SparseVector)> {
                        let left = self.bracket(&self.act_basis(g, i)?, &ej)?;
                        let mid = self.act(g, &self.bracket_basis(i, j)?)?;
                        let right = self.bracket(&ei, &self.act_basis(g, j)?)?;
                        Ok((left, mid, right))
                    })();
                    match sides {
                        Ok((l, c, r)) if l != c || c != r => report.fail(
                            Axiom::Bilinearity,
                            format!(
                                "[{g} . {x}, {y}] = {l}, {g} . [{x}, {y}] = {c}, [{x}, {g} . {y}] = {r}",
                                g = m.name(g),
                                x = self.names[i],
                                y = self.names[j],
                                l = self.format(&l),
                                c = self.format(&c),
                                r = self.format(&r)
                            ),
                        ),
                        Ok(_) => {}
                        Err(_) => report.indeterminate += 1,
                    }
                }
            }
        }
        report.passed = report.violations.is_empty();
        Ok(report)
    }

    /// Torsion classification on `window`.
    ///
    /// For each populated degree `Q` the map `Q . - : L_Q -> L_{Q^2}` is
    /// examined. A verdict that is already forced by known degrees is returned
    /// even if some other degree is out of reach; otherwise an unreachable `Q^2`
    /// is `WindowTooSmall`.
    pub fn torsion_flags(&self, window: &DegreeWindow) -> Result<TorsionFlags> {
        let m = &self.monoid;
        let mut torsion_free = Some(true);
        let mut torsion = Some(true);
        let mut witness = None;
        let mut nonzero_witness = None;
        let mut missing = None;
        for q in window.iter() {
            let block = self.block(q);
            if block.is_empty() {
                continue;
            }
            let q2 = m.mul(q, q);
            if !self.knows_degree(q2) {
                missing.get_or_insert(q2);
                continue;
            }
            let images: Vec<SparseVector> = block
                .iter()
                .map(|&i| self.act_basis(q, i))
                .collect::<Result<_>>()?;
            if images.iter().any(|v| !v.is_zero()) {
                torsion = Some(false);
                nonzero_witness.get_or_insert_with(|| {
                    let k = images.iter().position(|v| !v.is_zero()).unwrap_or(0);
                    format!(
                        "{} . {} = {}",
                        m.name(q),
                        self.names[block[k]],
                        self.format(&images[k])
                    )
                });
            }
            let local: Vec<SparseVector> = images.to_vec();
            let rows = crate::linalg::columns_to_rows(&local, self.dim());
            let ker = kernel(self.field, rows, block.len())?;
            if ker.rank() > 0 {
                torsion_free = Some(false);
                if witness.is_none() {
                    let v = ker.rows()[0].remap(|k| Some(block[k]));
                    witness = Some(format!("torsion element {} in degree {}", self.format(&v), m.name(q)));
                }
            }
        }
        if let Some(q2) = missing {
            if torsion_free == Some(true) {
                torsion_free = None;
            }
            if torsion == Some(true) {
                torsion = None;
            }
            if torsion_free.is_none() && torsion.is_none() {
                return Err(SuspensiveError::WindowTooSmall(m.name(q2)));
            }
        }
        Ok(TorsionFlags {
            torsion_free,
            torsion,
            torsion_witness: witness,
            nonzero_action_witness: nonzero_witness,
            missing_degree: missing.map(|d| m.name(d)),
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: LieDoc = serde_json::from_str(text).map_err(|e| SuspensiveError::Schema(e.to_string()))?;
        Self::from_doc(&doc)
    }

    pub fn from_doc(doc: &LieDoc) -> Result<Self> {
        let field = doc.field.unwrap_or(FieldDoc::Q).to_field()?;
        let monoid = Monoid::from_doc(&doc.monoid)?;
        let basis = doc
            .basis
            .iter()
            .map(|b| Ok((b.name.clone(), monoid.parse_element(&b.degree)?)))
            .collect::<Result<Vec<_>>>()?;
        let mut lie = SuspensiveLieAlgebra::new(field, monoid, basis, doc.window)?;
        let index = |name: &str| -> Result<usize> {
            lie_index(&lie.names, name)
        };
        let mut actions = Vec::new();
        for (g, images) in &doc.action {
            let g = lie.monoid.parse_element(g)?;
            for (x, terms) in images {
                let i = index(x)?;
                actions.push((g, i, parse_terms(&lie.names, field, terms)?));
            }
        }
        let mut brackets = Vec::new();
        for (pair, terms) in &doc.bracket {
            let (a, b) = pair
                .split_once('|')
                .ok_or_else(|| SuspensiveError::Schema(format!("bracket key {pair:?} is not of the form a|b")))?;
            brackets.push((index(a.trim())?, index(b.trim())?, parse_terms(&lie.names, field, terms)?));
        }
        for (g, i, v) in actions {
            lie.set_action(g, i, v)?;
        }
        for (i, j, v) in brackets {
            lie.set_bracket(i, j, v)?;
        }
        Ok(lie)
    }

    pub fn to_doc(&self) -> LieDoc {
        let terms = |v: &SparseVector| -> Vec<(String, String)> {
            v.iter().map(|(k, c)| (self.names[k].clone(), c.to_string())).collect()
        };
        let mut action: BTreeMap<String, BTreeMap<String, Vec<(String, String)>>> = BTreeMap::new();
        for (g, images) in &self.action {
            if images.is_empty() && *g != self.monoid.identity() {
                continue;
            }
            let entry = action.entry(self.monoid.name(*g)).or_default();
            for (i, v) in images {
                entry.insert(self.names[*i].clone(), terms(v));
            }
        }
        let bracket = self
            .bracket
            .iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|((i, j), v)| (format!("{}|{}", self.names[*i], self.names[*j]), terms(v)))
            .collect();
        LieDoc {
            field: Some(self.field.into()),
            monoid: self.monoid.to_doc(),
            basis: (0..self.dim())
                .map(|i| BasisDoc {
                    name: self.names[i].clone(),
                    degree: self.monoid.name(self.degrees[i]),
                })
                .collect(),
            action,
            bracket,
            window: self.data_window,
        }
    }

    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self.to_doc()).expect("serializable");
        serde_json::to_string_pretty(&value).expect("serializable")
    }
}

fn lie_index(names: &[String], name: &str) -> Result<usize> {
    names
        .iter()
        .position(|n| n == name)
        .ok_or_else(|| SuspensiveError::Schema(format!("unknown basis element {name:?}")))
}

/// Parses `[["x1","1/2"], ...]` against a list of basis names.
pub fn parse_terms(names: &[String], field: Field, terms: &[(String, String)]) -> Result<SparseVector> {
    let mut pairs = Vec::with_capacity(terms.len());
    for (name, c) in terms {
        pairs.push((lie_index(names, name)?, field.parse(c)?));
    }
    Ok(SparseVector::from_pairs(pairs))
}

/// Serialized form of a suspensive Lie algebra.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldDoc>,
    pub monoid: MonoidDoc,
    pub basis: Vec<BasisDoc>,
    #[serde(default)]
    pub action: BTreeMap<String, BTreeMap<String, Vec<(String, String)>>>,
    #[serde(default)]
    pub bracket: BTreeMap<String, Vec<(String, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisDoc {
    pub name: String,
    pub degree: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    ActionGrading,
    Unitality,
    Associativity,
    GradedBracket,
    Antisymmetry,
    Jacobi,
    Bilinearity,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuspensiveReport {
    pub window: Vec<String>,
    pub violations: Vec<Violation>,
    /// Checks that needed data beyond the data window.
    pub indeterminate: usize,
    pub passed: bool,
}

impl SuspensiveReport {
    fn new(window: Vec<String>) -> Self {
        SuspensiveReport {
            window,
            violations: Vec::new(),
            indeterminate: 0,
            passed: false,
        }
    }

    fn fail(&mut self, axiom: Axiom, witness: String) {
        self.violations.push(Violation { axiom, witness });
    }

    pub fn violates(&self, axiom: Axiom) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }
}

/// `None` means the window does not decide the flag.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorsionFlags {
    pub torsion_free: Option<bool>,
    pub torsion: Option<bool>,
    pub torsion_witness: Option<String>,
    pub nonzero_action_witness: Option<String>,
    pub missing_degree: Option<String>,
}

/// A degree-preserving linear map between suspensive Lie algebras, stored as
/// the images of the domain basis in codomain coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuspensiveMorphism {
    pub images: Vec<SparseVector>,
}

impl SuspensiveMorphism {
    pub fn identity(lie: &SuspensiveLieAlgebra) -> Self {
        SuspensiveMorphism {
            images: (0..lie.dim()).map(|i| SparseVector::unit(i, lie.field())).collect(),
        }
    }

    pub fn zero(domain_dim: usize) -> Self {
        SuspensiveMorphism {
            images: vec![SparseVector::zero(); domain_dim],
        }
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        SuspensiveMorphism {
            images: self.images.iter().map(|v| v.scale(c)).collect(),
        }
    }

    pub fn apply(&self, v: &SparseVector) -> SparseVector {
        let mut out = SparseVector::zero();
        for (i, c) in v.iter() {
            out = out.add_scaled(&self.images[i], c);
        }
        out
    }

    /// `after . self`.
    pub fn then(&self, after: &SuspensiveMorphism) -> SuspensiveMorphism {
        SuspensiveMorphism {
            images: self.images.iter().map(|v| after.apply(v)).collect(),
        }
    }

    /// Lists violated compatibilities (degree, action, bracket) on `window`.
    pub fn check(
        &self,
        domain: &SuspensiveLieAlgebra,
        codomain: &SuspensiveLieAlgebra,
        window: &DegreeWindow,
    ) -> Result<Vec<String>> {
        let m = domain.monoid();
        let mut bad = Vec::new();
        if self.images.len() != domain.dim() {
            return Err(SuspensiveError::Schema("morphism has the wrong number of images".into()));
        }
        let inside: Vec<usize> = (0..domain.dim()).filter(|&i| window.contains(domain.degree(i))).collect();
        for &i in &inside {
            if let Some(k) = self.images[i].indices().find(|&k| codomain.degree(k) != domain.degree(i)) {
                bad.push(format!("{} maps to {} of another degree", domain.name(i), codomain.name(k)));
            }
        }
        for g in window.iter() {
            for &i in &inside {
                let d = m.mul(g, domain.degree(i));
                if !window.contains(d) {
                    continue;
                }
                let lhs = self.apply(&domain.act_basis(g, i)?);
                let rhs = codomain.act(g, &self.images[i])?;
                if lhs != rhs {
                    bad.push(format!("map does not commute with {} on {}", m.name(g), domain.name(i)));
                }
            }
        }
        for &i in &inside {
            for &j in &inside {
                let d = m.mul(domain.degree(i), domain.degree(j));
                if !window.contains(d) {
                    continue;
                }
                let lhs = self.apply(&domain.bracket_basis(i, j)?);
                let rhs = codomain.bracket(&self.images[i], &self.images[j])?;
                if lhs != rhs {
                    bad.push(format!("map does not preserve [{}, {}]", domain.name(i), domain.name(j)));
                }
            }
        }
        Ok(bad)
    }
}
