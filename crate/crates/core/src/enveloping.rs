//! Enveloping bialgebras of suspensive Lie algebras, truncated to a degree
//! window and a cap on word length.
//!
//! Elements are spanned by a grouplike times a sorted word in the basis of
//! `L`. Words are straightened with `ba = ab + [b, a]`; a grouplike in front of
//! a nonempty word is absorbed into its first letter. That alone does not give
//! a normal form, since the grouplike can be absorbed by any letter, so each
//! (degree, length) block is finished by a linear quotient.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::bialgebra::{
    gp_spaces, BialgebraError, PresentedBialgebra, Product, RigidStructure, TensorSquareElement,
};
use crate::linalg::{rref, Field, LinalgError, Scalar, SparseVector, Subspace};
use crate::monoid::{DegreeWindow, Monoid, MonoidElement};
use crate::suspensive::{SuspensiveError, SuspensiveLieAlgebra};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnvelopeError {
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("words of unbounded length survive in the window; pass an explicit length cap")]
    CapRequired,
    #[error("length cap {0} cannot hold the degree-one part of the algebra")]
    CapTooSmall(usize),
    #[error("a product inside the window left the computed tables: {0}")]
    Overflow(String),
    #[error("truncations at different lengths disagree: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Suspensive(#[from] SuspensiveError),
    #[error(transparent)]
    Bialgebra(#[from] BialgebraError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

type Result<T> = std::result::Result<T, EnvelopeError>;

type WordVec = BTreeMap<Vec<usize>, Scalar>;

fn add_into(acc: &mut WordVec, word: Vec<usize>, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    match acc.get_mut(&word) {
        Some(old) => {
            let sum = old.clone() + c.clone();
            if sum.is_zero() {
                acc.remove(&word);
            } else {
                *old = sum;
            }
        }
        None => {
            acc.insert(word, c.clone());
        }
    }
}

/// A grouplike times a sorted word; the empty word is the grouplike alone.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct EnvelopeMonomial {
    pub grouplike: MonoidElement,
    pub word: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Column {
    Word(Vec<usize>),
    Group,
}

/// Columns of one (degree, length) block and the span of its relations.
struct Block {
    columns: Vec<Column>,
    index: HashMap<Column, usize>,
    relations: Subspace,
}

impl Block {
    fn representatives(&self) -> Vec<&Column> {
        self.relations.non_pivots().into_iter().map(|j| &self.columns[j]).collect()
    }
}

struct Builder<'a> {
    lie: &'a SuspensiveLieAlgebra,
    monoid: &'a Monoid,
    field: Field,
    straight: HashMap<Vec<usize>, WordVec>,
    blocks: HashMap<(MonoidElement, usize), Arc<Block>>,
}

impl<'a> Builder<'a> {
    fn new(lie: &'a SuspensiveLieAlgebra) -> Self {
        Builder {
            lie,
            monoid: lie.monoid(),
            field: lie.field(),
            straight: HashMap::new(),
            blocks: HashMap::new(),
        }
    }

    fn word_degree(&self, word: &[usize]) -> MonoidElement {
        self.monoid.product(word.iter().map(|&i| self.lie.degree(i)))
    }

    /// Rewrites a word into sorted words using the bracket.
    fn straighten(&mut self, word: &[usize]) -> Result<WordVec> {
        let descent = word.windows(2).position(|p| p[0] > p[1]);
        let Some(i) = descent else {
            let mut out = WordVec::new();
            out.insert(word.to_vec(), self.field.one());
            return Ok(out);
        };
        if let Some(v) = self.straight.get(word) {
            return Ok(v.clone());
        }
        let mut swapped = word.to_vec();
        swapped.swap(i, i + 1);
        let mut out = self.straighten(&swapped)?;
        let bracket = self.lie.bracket_basis(word[i], word[i + 1])?;
        for (k, c) in bracket.iter() {
            let mut shorter = Vec::with_capacity(word.len() - 1);
            shorter.extend_from_slice(&word[..i]);
            shorter.push(k);
            shorter.extend_from_slice(&word[i + 2..]);
            for (w, c2) in self.straighten(&shorter)? {
                add_into(&mut out, w, &(c * &c2));
            }
        }
        self.straight.insert(word.to_vec(), out.clone());
        Ok(out)
    }

    /// The word with letter `i` replaced by the vector `v`, straightened.
    fn substitute(&mut self, word: &[usize], i: usize, v: &SparseVector) -> Result<WordVec> {
        let mut out = WordVec::new();
        let mut w = word.to_vec();
        for (k, c) in v.iter() {
            w[i] = k;
            for (u, c2) in self.straighten(&w)? {
                add_into(&mut out, u, &(c * &c2));
            }
        }
        Ok(out)
    }

    /// `g` times a nonempty word, with `g` absorbed into the first letter.
    fn absorb(&mut self, g: MonoidElement, word: &[usize]) -> Result<WordVec> {
        if g == self.monoid.identity() {
            return self.straighten(word);
        }
        let v = self.lie.act_basis(g, word[0])?;
        self.substitute(word, 0, &v)
    }

    /// Sorted nonempty words of length at most `maxlen` whose degree divides `d`.
    fn words_dividing(&self, d: MonoidElement, maxlen: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut stack = vec![(Vec::new(), self.monoid.identity())];
        while let Some((word, deg)) = stack.pop() {
            if !word.is_empty() && self.monoid.divides(deg, d) {
                out.push(word.clone());
            }
            if word.len() == maxlen {
                continue;
            }
            let start = word.last().copied().unwrap_or(0);
            for k in start..self.lie.dim() {
                let next = self.monoid.mul(deg, self.lie.degree(k));
                if !self.monoid.is_finite() && next.0 > d.0 {
                    continue;
                }
                let mut w = word.clone();
                w.push(k);
                stack.push((w, next));
            }
        }
        out.sort();
        out
    }

    fn block(&mut self, d: MonoidElement, maxlen: usize) -> Result<Arc<Block>> {
        if let Some(b) = self.blocks.get(&(d, maxlen)) {
            return Ok(b.clone());
        }
        let id = self.monoid.identity();
        let sources = self.words_dividing(d, maxlen);
        let mut columns: Vec<Column> = sources
            .iter()
            .filter(|w| self.word_degree(w) == d)
            .map(|w| Column::Word(w.clone()))
            .collect();
        columns.sort_by(|a, b| match (a, b) {
            (Column::Word(x), Column::Word(y)) => y.len().cmp(&x.len()).then(y.cmp(x)),
            _ => unreachable!(),
        });
        columns.push(Column::Group);
        let index: HashMap<Column, usize> = columns.iter().cloned().enumerate().map(|(k, c)| (c, k)).collect();
        let to_vec = |wv: &WordVec, index: &HashMap<Column, usize>| -> SparseVector {
            SparseVector::from_pairs(
                wv.iter()
                    .map(|(w, c)| (index[&Column::Word(w.clone())], c.clone())),
            )
        };
        let elements: Vec<MonoidElement> = match self.monoid {
            Monoid::FiniteTable { .. } => self.monoid.elements_upto(0),
            Monoid::FreeRank1 { .. } => self.monoid.elements_upto(d.0),
        };
        let mut rows = Vec::new();
        for w in &sources {
            let e = self.word_degree(w);
            for f in self.monoid.quotients(d, e) {
                if f == id {
                    continue;
                }
                let lhs = self.absorb(f, w)?;
                for &g in &elements {
                    if g == id {
                        continue;
                    }
                    for g2 in self.monoid.quotients(f, g) {
                        for i in 0..w.len() {
                            if i > 0 && w[i] == w[i - 1] {
                                continue;
                            }
                            if g2 == id && i == 0 {
                                continue;
                            }
                            let moved = self.lie.act_basis(g, w[i])?;
                            let sub = self.substitute(w, i, &moved)?;
                            let mut rhs = WordVec::new();
                            for (u, c) in sub {
                                for (u2, c2) in self.absorb(g2, &u)? {
                                    add_into(&mut rhs, u2, &(&c * &c2));
                                }
                            }
                            let row = to_vec(&lhs, &index).sub(&to_vec(&rhs, &index));
                            if !row.is_zero() {
                                rows.push(row);
                            }
                        }
                    }
                }
            }
        }
        let relations = rref(self.field, rows, columns.len())?;
        let block = Arc::new(Block {
            columns,
            index,
            relations,
        });
        self.blocks.insert((d, maxlen), block.clone());
        Ok(block)
    }

    /// Normal form of `sum c (g . word)` in degree `d`, as representative
    /// columns with coefficients.
    fn normal_form(
        &mut self,
        d: MonoidElement,
        terms: &[(MonoidElement, WordVec)],
        maxlen: usize,
    ) -> Result<Vec<(Column, Scalar)>> {
        let block = self.block(d, maxlen)?;
        let mut pairs = Vec::new();
        for (g, wv) in terms {
            for (w, c) in wv {
                if w.is_empty() {
                    pairs.push((block.index[&Column::Group], c.clone()));
                    continue;
                }
                for (u, c2) in self.absorb(*g, w)? {
                    pairs.push((block.index[&Column::Word(u)], c * &c2));
                }
            }
        }
        let v = block.relations.reduce(&SparseVector::from_pairs(pairs));
        Ok(v.iter().map(|(j, c)| (block.columns[j].clone(), c.clone())).collect())
    }
}

/// A truncated enveloping bialgebra with its Lie filtration.
#[derive(Debug, Clone)]
pub struct Envelope {
    pub lie: SuspensiveLieAlgebra,
    pub window: DegreeWindow,
    pub cap: usize,
    pub algebra: PresentedBialgebra,
    /// Lie filtration level of each basis element.
    pub levels: Vec<usize>,
    pub monomials: Vec<EnvelopeMonomial>,
    /// Images of the basis of `L`.
    pub inclusion: Vec<SparseVector>,
}

impl Envelope {
    /// Smallest `n` with `v` in the `n`-th stage of the Lie filtration.
    pub fn lie_filtration_level(&self, v: &SparseVector) -> usize {
        lie_level(&self.levels, v)
    }

    /// Dimensions of the associated graded, keyed by (degree, Lie degree).
    pub fn bidegree_dims(&self) -> BTreeMap<(MonoidElement, usize), usize> {
        bidegree_dims(&self.algebra, &self.levels)
    }

    pub fn degree_dims(&self) -> BTreeMap<MonoidElement, usize> {
        let mut out: BTreeMap<MonoidElement, usize> = self.window.iter().map(|d| (d, 0)).collect();
        for i in 0..self.algebra.dim() {
            *out.entry(self.algebra.degree(i).expect("graded")).or_default() += 1;
        }
        out
    }

    /// `g` times the product of the given letters, through the tables.
    pub fn word_element(&self, g: MonoidElement, letters: &[usize]) -> std::result::Result<SparseVector, BialgebraError> {
        let rigid = self.algebra.rigid().expect("envelopes are rigid");
        let gi = rigid
            .image(g)
            .ok_or_else(|| BialgebraError::WindowTooSmall(self.lie.monoid().name(g)))?;
        let mut factors = vec![SparseVector::unit(gi, self.algebra.field())];
        factors.extend(letters.iter().map(|&k| self.inclusion[k].clone()));
        self.algebra.mul_all(&factors)
    }
}

pub fn lie_level(levels: &[usize], v: &SparseVector) -> usize {
    v.indices().map(|i| levels[i]).max().unwrap_or(0)
}

fn bidegree_dims(a: &PresentedBialgebra, levels: &[usize]) -> BTreeMap<(MonoidElement, usize), usize> {
    let mut out = BTreeMap::new();
    for (i, &level) in levels.iter().enumerate() {
        *out.entry((a.degree(i).expect("graded"), level)).or_default() += 1;
    }
    out
}

fn word_name(lie: &SuspensiveLieAlgebra, word: &[usize]) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut k = 0;
    while k < word.len() {
        let mut run = 1;
        while k + run < word.len() && word[k + run] == word[k] {
            run += 1;
        }
        let name = lie.name(word[k]);
        let name = if name.contains(['^', '*', '+', ' ']) { format!("({name})") } else { name.to_string() };
        parts.push(if run == 1 { name.to_string() } else { format!("{name}^{run}") });
        k += run;
    }
    parts.join("*")
}

/// The largest `n` with a nonzero `n`-th symmetric power in the window, when
/// word lengths are bounded by degree.
pub fn default_cap(lie: &SuspensiveLieAlgebra, window: &DegreeWindow) -> Result<usize> {
    if lie.dim() == 0 {
        return Ok(0);
    }
    let monoid = lie.monoid();
    if monoid.is_finite() || (0..lie.dim()).any(|i| lie.degree(i) == monoid.identity()) {
        return Err(EnvelopeError::CapRequired);
    }
    let mut best = 0;
    for n in 1..=window.top() as usize {
        if sym_power_kg(lie, n, window)?.values().any(|&k| k > 0) {
            best = n;
        }
    }
    Ok(best)
}

fn check_window(lie: &SuspensiveLieAlgebra, window: &DegreeWindow) -> Result<()> {
    if let Some(w) = lie.data_window() {
        if window.top() > w {
            return Err(EnvelopeError::WindowTooSmall(format!(
                "the algebra is known through degree {} only",
                lie.monoid().name(MonoidElement(w))
            )));
        }
    }
    Ok(())
}

/// The universal rigid enveloping bialgebra, truncated to `window` and words
/// of length at most `lie_cap`.
pub fn build_w(lie: &SuspensiveLieAlgebra, window: &DegreeWindow, lie_cap: Option<usize>) -> Result<Envelope> {
    check_window(lie, window)?;
    let cap = match lie_cap {
        Some(c) => c,
        None => default_cap(lie, window)?,
    };
    if cap == 0 && lie.dim() > 0 && (0..lie.dim()).any(|i| window.contains(lie.degree(i))) {
        return Err(EnvelopeError::CapTooSmall(cap));
    }
    let monoid = lie.monoid().clone();
    let field = lie.field();
    let mut b = Builder::new(lie);

    let mut monomials = Vec::new();
    let mut lookup: HashMap<(MonoidElement, Column), usize> = HashMap::new();
    for d in window.iter() {
        let block = b.block(d, cap)?;
        let mut reps: Vec<Column> = block.representatives().into_iter().cloned().collect();
        reps.sort_by(|x, y| match (x, y) {
            (Column::Group, Column::Group) => std::cmp::Ordering::Equal,
            (Column::Group, _) => std::cmp::Ordering::Less,
            (_, Column::Group) => std::cmp::Ordering::Greater,
            (Column::Word(u), Column::Word(v)) => u.len().cmp(&v.len()).then(u.cmp(v)),
        });
        for c in reps {
            lookup.insert((d, c.clone()), monomials.len());
            monomials.push(match c {
                Column::Group => EnvelopeMonomial {
                    grouplike: d,
                    word: Vec::new(),
                },
                Column::Word(w) => EnvelopeMonomial {
                    grouplike: monoid.identity(),
                    word: w,
                },
            });
        }
    }
    let n = monomials.len();
    let degree_of = |m: &EnvelopeMonomial, b: &Builder| monoid.mul(m.grouplike, b.word_degree(&m.word));
    let degrees: Vec<MonoidElement> = monomials.iter().map(|m| degree_of(m, &b)).collect();
    let levels: Vec<usize> = monomials.iter().map(|m| m.word.len()).collect();

    let to_basis = |d: MonoidElement, cols: Vec<(Column, Scalar)>| -> Result<Option<SparseVector>> {
        let mut pairs = Vec::with_capacity(cols.len());
        for (c, s) in cols {
            match lookup.get(&(d, c.clone())) {
                Some(&k) => pairs.push((k, s)),
                None => match &c {
                    Column::Word(w) if w.len() > cap => return Ok(None),
                    _ => {
                        return Err(EnvelopeError::Inconsistent(format!(
                            "representative {c:?} in degree {} is missing",
                            monoid.name(d)
                        )))
                    }
                },
            }
        }
        Ok(Some(SparseVector::from_pairs(pairs)))
    };

    let mut mult = vec![vec![Product::Overflow; n]; n];
    for i in 0..n {
        for j in 0..n {
            let d = monoid.mul(degrees[i], degrees[j]);
            if !window.contains(d) {
                continue;
            }
            let g = monoid.mul(monomials[i].grouplike, monomials[j].grouplike);
            let mut word = monomials[i].word.clone();
            word.extend_from_slice(&monomials[j].word);
            let len = word.len();
            let straight = if word.is_empty() {
                WordVec::from([(Vec::new(), field.one())])
            } else {
                b.straighten(&word)?
            };
            let cols = b.normal_form(d, &[(g, straight)], cap.max(len))?;
            if let Some(v) = to_basis(d, cols)? {
                mult[i][j] = Product::Defined(v);
            }
        }
    }

    let mut comult = Vec::with_capacity(n);
    for (i, m) in monomials.iter().enumerate() {
        let d = degrees[i];
        if m.word.is_empty() {
            comult.push(TensorSquareElement::from_terms([((i, i), field.one())]));
            continue;
        }
        let w = &m.word;
        let k = w.len();
        let mut t = TensorSquareElement::zero();
        for mask in 0u32..(1u32 << k) {
            let (mut left_word, mut right_word) = (Vec::new(), Vec::new());
            let (mut left_g, mut right_g) = (monoid.identity(), monoid.identity());
            for (pos, &letter) in w.iter().enumerate() {
                let q = lie.degree(letter);
                if (mask >> pos) & 1 == 1 {
                    left_word.push(letter);
                    right_g = monoid.mul(right_g, q);
                } else {
                    right_word.push(letter);
                    left_g = monoid.mul(left_g, q);
                }
            }
            let mut side = |g: MonoidElement, word: Vec<usize>| -> Result<SparseVector> {
                let wv = WordVec::from([(word, field.one())]);
                let cols = b.normal_form(d, &[(g, wv)], cap)?;
                to_basis(d, cols)?.ok_or_else(|| EnvelopeError::Overflow("coproduct factor".into()))
            };
            let left = side(left_g, left_word)?;
            let right = side(right_g, right_word)?;
            t = t.add(&TensorSquareElement::pure(&left, &right));
        }
        comult.push(t);
    }

    let names: Vec<String> = monomials
        .iter()
        .map(|m| {
            if m.word.is_empty() {
                monoid.name(m.grouplike)
            } else {
                word_name(lie, &m.word)
            }
        })
        .collect();
    let eta: BTreeMap<MonoidElement, usize> = window
        .iter()
        .map(|d| (d, lookup[&(d, Column::Group)]))
        .collect();
    let counit = monomials
        .iter()
        .map(|m| if m.word.is_empty() { field.one() } else { field.zero() })
        .collect();
    let unit = SparseVector::unit(eta[&monoid.identity()], field);
    let rigid = RigidStructure::new(monoid.clone(), eta)?;

    let mut inclusion = Vec::with_capacity(lie.dim());
    for k in 0..lie.dim() {
        let d = lie.degree(k);
        if !window.contains(d) {
            inclusion.push(SparseVector::zero());
            continue;
        }
        let wv = WordVec::from([(vec![k], field.one())]);
        let cols = b.normal_form(d, &[(monoid.identity(), wv)], cap.max(1))?;
        inclusion.push(to_basis(d, cols)?.ok_or(EnvelopeError::CapTooSmall(cap))?);
    }

    let algebra = PresentedBialgebra::new(
        field,
        names,
        degrees.iter().map(|&d| Some(d)).collect(),
        unit,
        counit,
        mult,
        comult,
        Some(rigid),
    )?;
    Ok(Envelope {
        lie: lie.clone(),
        window: window.clone(),
        cap,
        algebra,
        levels,
        monomials,
        inclusion,
    })
}

/// Dimensions per degree of the `n`-th symmetric power of `L` over `kG`.
///
/// Spans `g . (l_1 ... l_n)` with the letters unordered and imposes
/// `(fg) . w = f . w[i -> g l_i]` for every letter position `i`.
pub fn sym_power_kg(lie: &SuspensiveLieAlgebra, n: usize, window: &DegreeWindow) -> Result<BTreeMap<MonoidElement, usize>> {
    check_window(lie, window)?;
    let m = lie.monoid();
    let field = lie.field();
    let mut out = BTreeMap::new();
    let elements: Vec<MonoidElement> = window.iter().collect();
    let id = m.identity();
    for d in window.iter() {
        if n == 0 {
            out.insert(d, 1);
            continue;
        }
        // Multisets of n letters with degree dividing d.
        let mut words: Vec<Vec<usize>> = Vec::new();
        let mut partial = vec![(Vec::<usize>::new(), id)];
        while let Some((w, deg)) = partial.pop() {
            if w.len() == n {
                if m.divides(deg, d) {
                    words.push(w);
                }
                continue;
            }
            let start = w.last().copied().unwrap_or(0);
            for k in start..lie.dim() {
                let next = m.mul(deg, lie.degree(k));
                if !m.is_finite() && next.0 > d.0 {
                    continue;
                }
                let mut w2 = w.clone();
                w2.push(k);
                partial.push((w2, next));
            }
        }
        let mut cols: BTreeMap<(MonoidElement, Vec<usize>), usize> = BTreeMap::new();
        for w in &words {
            let deg = m.product(w.iter().map(|&k| lie.degree(k)));
            for f in m.quotients(d, deg) {
                let next = cols.len();
                cols.entry((f, w.clone())).or_insert(next);
            }
        }
        let mut rows = Vec::new();
        for ((h, w), &col) in &cols {
            for &g in &elements {
                if g == id {
                    continue;
                }
                for f in m.quotients(*h, g) {
                    for i in 0..w.len() {
                        let image = lie.act_basis(g, w[i])?;
                        let mut pairs = vec![(col, field.one())];
                        for (k, c) in image.iter() {
                            let mut u = w.clone();
                            u[i] = k;
                            u.sort();
                            let j = cols[&(f, u)];
                            pairs.push((j, -c.clone()));
                        }
                        rows.push(SparseVector::from_pairs(pairs));
                    }
                }
            }
        }
        let rank = rref(field, rows, cols.len())?.rank();
        out.insert(d, cols.len() - rank);
    }
    Ok(out)
}

/// Associated graded of the Lie filtration: products and coproducts keep only
/// the components of the expected Lie degree.
pub fn assoc_graded(env: &Envelope) -> Result<PresentedBialgebra> {
    graded_of(&env.algebra, &env.levels)
}

fn graded_of(a: &PresentedBialgebra, levels: &[usize]) -> Result<PresentedBialgebra> {
    let n = a.dim();
    let keep = |v: &SparseVector, level: usize| SparseVector::from_pairs(v.iter().filter(|(k, _)| levels[*k] == level).map(|(k, c)| (k, c.clone())));
    let mult = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match a.mul_basis(i, j) {
                    Product::Defined(v) => Product::Defined(keep(v, levels[i] + levels[j])),
                    Product::Overflow => Product::Overflow,
                })
                .collect()
        })
        .collect();
    let comult = (0..n)
        .map(|i| {
            TensorSquareElement::from_terms(
                a.comul_basis(i)
                    .iter()
                    .filter(|((x, y), _)| levels[*x] + levels[*y] == levels[i])
                    .map(|(k, c)| (k, c.clone())),
            )
        })
        .collect();
    Ok(PresentedBialgebra::new(
        a.field(),
        a.names().to_vec(),
        (0..n).map(|i| a.degree(i)).collect(),
        a.unit().clone(),
        (0..n).map(|i| a.counit_basis(i).clone()).collect(),
        mult,
        comult,
        a.rigid().cloned(),
    )?)
}

/// The envelope quotient in which products of generalized primitives
/// `x y` with `|x|` dividing `|y|`, and `|x| x`, vanish.
#[derive(Debug, Clone)]
pub struct LeftSidedEnvelope {
    pub w: Envelope,
    pub algebra: PresentedBialgebra,
    pub levels: Vec<usize>,
    /// Images of the basis of `W` in the quotient.
    pub projection: Vec<SparseVector>,
    /// Images of the basis of `L` in the quotient.
    pub inclusion: Vec<SparseVector>,
    /// Dimension of the ideal inside the window.
    pub ideal_dim: usize,
    /// First failure of the bi-ideal property, if any.
    pub bi_ideal_violation: Option<String>,
    pub warnings: Vec<String>,
}

impl LeftSidedEnvelope {
    pub fn lie_filtration_level(&self, v: &SparseVector) -> usize {
        lie_level(&self.levels, v)
    }

    pub fn degree_dims(&self) -> BTreeMap<MonoidElement, usize> {
        let mut out: BTreeMap<MonoidElement, usize> = self.w.window.iter().map(|d| (d, 0)).collect();
        for i in 0..self.algebra.dim() {
            *out.entry(self.algebra.degree(i).expect("graded")).or_default() += 1;
        }
        out
    }
}

pub fn build_z(lie: &SuspensiveLieAlgebra, window: &DegreeWindow, lie_cap: Option<usize>) -> Result<LeftSidedEnvelope> {
    let mut warnings = Vec::new();
    match lie.torsion_flags(window) {
        Ok(flags) if flags.torsion == Some(false) => warnings.push(format!(
            "input is not torsion: {}",
            flags.nonzero_action_witness.unwrap_or_default()
        )),
        Ok(_) => {}
        Err(e) => warnings.push(format!("torsion could not be decided: {e}")),
    }
    let w = build_w(lie, window, lie_cap)?;
    let a = &w.algebra;
    let f = a.field();
    let m = lie.monoid();
    let rigid = a.rigid().expect("envelopes are rigid").clone();
    let n = a.dim();
    let spaces = gp_spaces(a)?;
    let overflow = |e: BialgebraError| match e {
        BialgebraError::Overflow(s) => EnvelopeError::Overflow(s),
        other => other.into(),
    };

    let mut gens = Vec::new();
    for (&q1, xs) in &spaces {
        for (&q2, ys) in &spaces {
            if !m.divides(q1, q2) || !window.contains(m.mul(q1, q2)) {
                continue;
            }
            for x in xs {
                for y in ys {
                    gens.push(a.mul(x, y).map_err(overflow)?);
                }
            }
        }
        if window.contains(m.mul(q1, q1)) {
            let g = SparseVector::unit(rigid.eta[&q1], f);
            for x in xs {
                gens.push(a.mul(&g, x).map_err(overflow)?);
            }
        }
    }
    // Algebra generators: grouplikes and letters.
    let mut multipliers: Vec<SparseVector> = rigid.eta.values().map(|&i| SparseVector::unit(i, f)).collect();
    multipliers.extend(w.inclusion.iter().filter(|v| !v.is_zero()).cloned());

    // Order coordinates so that long words are eliminated first and
    // grouplikes never are.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| w.levels[y].cmp(&w.levels[x]).then(y.cmp(&x)));
    let mut position = vec![0; n];
    for (p, &i) in order.iter().enumerate() {
        position[i] = p;
    }
    let permute = |v: &SparseVector| v.remap(|i| Some(position[i]));
    let unpermute = |v: &SparseVector| v.remap(|p| Some(order[p]));

    let mut ideal = rref(f, gens.iter().map(permute).collect(), n)?;
    let mut frontier: Vec<SparseVector> = ideal.rows().iter().map(unpermute).collect();
    while !frontier.is_empty() {
        let mut fresh = Vec::new();
        for v in &frontier {
            let d = v.leading().map(|(i, _)| a.degree(i).expect("graded"));
            for g in &multipliers {
                let dg = g.leading().map(|(i, _)| a.degree(i).expect("graded"));
                if let (Some(d), Some(dg)) = (d, dg) {
                    if !window.contains(m.mul(d, dg)) {
                        continue;
                    }
                }
                for p in [a.mul(g, v), a.mul(v, g)] {
                    let p = p.map_err(overflow)?;
                    let pp = permute(&p);
                    if !ideal.contains(&pp) {
                        ideal = ideal.sum(&rref(f, vec![pp], n)?);
                        fresh.push(p);
                    }
                }
            }
        }
        frontier = fresh;
    }

    let reps: Vec<usize> = {
        let mut r: Vec<usize> = ideal.non_pivots().into_iter().map(|p| order[p]).collect();
        r.sort();
        r
    };
    let rep_index: HashMap<usize, usize> = reps.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let project = |v: &SparseVector| -> SparseVector {
        let nf = unpermute(&ideal.reduce(&permute(v)));
        nf.remap(|i| Some(rep_index[&i]))
    };
    let projection: Vec<SparseVector> = (0..n).map(|i| project(&SparseVector::unit(i, f))).collect();
    let zn = reps.len();
    let mult = reps
        .iter()
        .map(|&i| {
            reps.iter()
                .map(|&j| match a.mul_basis(i, j) {
                    Product::Defined(v) => Product::Defined(project(v)),
                    Product::Overflow => Product::Overflow,
                })
                .collect()
        })
        .collect();
    let project_tensor = |t: &TensorSquareElement| t.map_factors(|i| projection[i].clone(), |j| projection[j].clone());
    let comult = reps.iter().map(|&i| project_tensor(a.comul_basis(i))).collect();
    let mut bi_ideal_violation = None;
    for row in ideal.rows() {
        let v = unpermute(row);
        if !a.counit(&v).is_zero() || !project_tensor(&a.comul(&v)).is_zero() {
            bi_ideal_violation = Some(format!("ideal element {} is not coideal", a.format(&v)));
            break;
        }
    }
    let eta = rigid
        .eta
        .iter()
        .map(|(&g, &i)| {
            rep_index
                .get(&i)
                .map(|&k| (g, k))
                .ok_or_else(|| EnvelopeError::Inconsistent("a grouplike fell into the ideal".into()))
        })
        .collect::<Result<BTreeMap<_, _>>>()?;
    let algebra = PresentedBialgebra::new(
        f,
        reps.iter().map(|&i| a.name(i).to_string()).collect(),
        reps.iter().map(|&i| a.degree(i)).collect(),
        project(a.unit()),
        reps.iter().map(|&i| a.counit_basis(i).clone()).collect(),
        mult,
        comult,
        Some(RigidStructure::new(m.clone(), eta)?),
    )?;
    let levels = reps.iter().map(|&i| w.levels[i]).collect();
    let inclusion = w.inclusion.iter().map(project).collect();
    let _ = zn;
    Ok(LeftSidedEnvelope {
        ideal_dim: ideal.rank(),
        w,
        algebra,
        levels,
        projection,
        inclusion,
        bi_ideal_violation,
        warnings,
    })
}

/// Associated graded of the Lie filtration of a left-sided envelope.
pub fn assoc_graded_z(z: &LeftSidedEnvelope) -> Result<PresentedBialgebra> {
    graded_of(&z.algebra, &z.levels)
}
