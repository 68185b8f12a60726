//! The mod-p Dyer-Lashof algebra as a rewriting system.
//!
//! Words in the generators `Q^i` (and `bQ^i` at odd primes) are rewritten to
//! admissible form with the Adem relations; words of excess below the chosen
//! threshold `e` are then discarded, which realizes the quotient `R(e)`.
//! At p = 2 the classical presentation is used: `Q^i` has degree `i` and there
//! are no bockstein generators.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use serde::Serialize;
use thiserror::Error;

use crate::linalg::{self, Field, LinalgError, Quotient, SparseVector, Subspace};

/// Upper bound on rewrite steps for a single normalization.
pub const STEP_CEILING: usize = 50_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DlError {
    #[error("{0} is not a prime")]
    InvalidPrime(u64),
    #[error("cannot parse monomial {0:?}")]
    Parse(String),
    #[error("bockstein generators do not exist at p = 2")]
    BocksteinAtTwo,
    #[error("pair {0} {1} is admissible; no Adem relation applies")]
    NotApplicable(Generator, Generator),
    #[error("internal degree {degree} exceeds cap {cap}")]
    CapExceeded { degree: i64, cap: i64 },
    #[error("rewriting exceeded {0} steps")]
    StepCeiling(usize),
    #[error("degree {0} has unbounded word length; pass an explicit length bound")]
    LengthBoundRequired(i64),
    #[error("the coproduct is only defined on R(e) for e >= 0")]
    CoproductUndefined,
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// `Q^index` or, with the bockstein flag, `bQ^index`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Generator {
    pub bockstein: bool,
    pub index: u32,
}

impl Generator {
    pub fn q(index: u32) -> Self {
        Generator { bockstein: false, index }
    }

    pub fn bq(index: u32) -> Self {
        Generator { bockstein: true, index }
    }

    fn eps(&self) -> i64 {
        self.bockstein as i64
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bockstein {
            write!(f, "bQ{}", self.index)
        } else {
            write!(f, "Q{}", self.index)
        }
    }
}

/// A word in the generators; the empty word is the unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
pub struct Monomial(pub Vec<Generator>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Monomial) -> Monomial {
        let mut w = self.0.clone();
        w.extend_from_slice(&other.0);
        Monomial(w)
    }

    /// Parses whitespace-separated `Q<i>` / `bQ<i>` tokens. `"1"` and the
    /// empty string denote the unit.
    pub fn parse(s: &str) -> Result<Self, DlError> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(Monomial::one());
        }
        let mut word = Vec::new();
        for tok in s.split_whitespace() {
            let (bockstein, rest) = match tok.strip_prefix("bQ") {
                Some(r) => (true, r),
                None => match tok.strip_prefix('Q') {
                    Some(r) => (false, r),
                    None => return Err(DlError::Parse(s.to_string())),
                },
            };
            let index = rest.parse::<u32>().map_err(|_| DlError::Parse(s.to_string()))?;
            word.push(Generator { bockstein, index });
        }
        Ok(Monomial(word))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|g| g.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// An F_p-linear combination of monomials, coefficients in `1..p`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DlElement {
    terms: BTreeMap<Monomial, u64>,
}

impl DlElement {
    pub fn zero() -> Self {
        DlElement::default()
    }

    pub fn monomial(m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(m, 1);
        DlElement { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u64)> + '_ {
        self.terms.iter().map(|(m, c)| (m, *c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> u64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: u64, p: u64) {
        if c.is_multiple_of(p) {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert(0);
        *e = (*e + c) % p;
        if *e == 0 {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &DlElement, p: u64) -> DlElement {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c, p);
        }
        out
    }

    pub fn scale(&self, c: u64, p: u64) -> DlElement {
        let mut out = DlElement::zero();
        for (m, d) in self.terms() {
            out.add_term(m.clone(), mul_mod(c, d, p), p);
        }
        out
    }

    /// `(monomial string, coefficient string)` pairs in sorted order.
    pub fn term_list(&self) -> Vec<(String, String)> {
        self.terms.iter().map(|(m, c)| (m.to_string(), c.to_string())).collect()
    }
}

impl fmt::Display for DlElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| if *c == 1 { m.to_string() } else { format!("{c}*{m}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// An element of `R(e) (x) R(e)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DlTensor {
    terms: BTreeMap<(Monomial, Monomial), u64>,
}

impl DlTensor {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Monomial, Monomial), u64)> + '_ {
        self.terms.iter().map(|(k, c)| (k, *c))
    }

    fn add_term(&mut self, key: (Monomial, Monomial), c: u64, p: u64) {
        if c.is_multiple_of(p) {
            return;
        }
        let e = self.terms.entry(key.clone()).or_insert(0);
        *e = (*e + c) % p;
        if *e == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn term_list(&self) -> Vec<(String, String, String)> {
        self.terms
            .iter()
            .map(|((a, b), c)| (a.to_string(), b.to_string(), c.to_string()))
            .collect()
    }
}

impl fmt::Display for DlTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((a, b), c)| {
                if *c == 1 {
                    format!("{a} (x) {b}")
                } else {
                    format!("{c}*{a} (x) {b}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A triple tensor, used for coassociativity checks.
pub type DlTriple = BTreeMap<(Monomial, Monomial, Monomial), u64>;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Binomial coefficient mod p by Lucas' theorem, zero unless `0 <= b <= a`.
pub fn binomial_mod_p(a: i64, b: i64, p: u64) -> u64 {
    if a < 0 || b < 0 || b > a {
        return 0;
    }
    let p = p as i64;
    let (mut a, mut b) = (a, b);
    let mut acc: u64 = 1;
    while a > 0 || b > 0 {
        let (x, y) = (a % p, b % p);
        if y > x {
            return 0;
        }
        acc = mul_mod(acc, small_binomial(x as u64, y as u64, p as u64), p as u64);
        a /= p;
        b /= p;
    }
    acc
}

fn small_binomial(n: u64, k: u64, p: u64) -> u64 {
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..k {
        num = mul_mod(num, (n - i) % p, p);
        den = mul_mod(den, (i + 1) % p, p);
    }
    mul_mod(num, linalg::pow_mod(den, p - 2, p), p)
}

/// Which rewritable pair a normalization pass rewrites first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RewriteOrder {
    Leftmost,
    Rightmost,
}

type PairImage = Arc<Vec<(Generator, Generator, u64)>>;

/// An algebra `R(e)` at a prime, with an internal degree cap.
#[derive(Debug)]
pub struct DyerLashof {
    p: u64,
    excess_threshold: i64,
    degree_cap: i64,
    memo: RwLock<HashMap<(Generator, Generator), PairImage>>,
}

impl Clone for DyerLashof {
    fn clone(&self) -> Self {
        DyerLashof {
            p: self.p,
            excess_threshold: self.excess_threshold,
            degree_cap: self.degree_cap,
            memo: RwLock::new(self.memo.read().expect("memo lock").clone()),
        }
    }
}

impl DyerLashof {
    pub fn new(p: u64, excess_threshold: i64, degree_cap: i64) -> Result<Self, DlError> {
        if !linalg::is_prime(p) {
            return Err(DlError::InvalidPrime(p));
        }
        Ok(DyerLashof {
            p,
            excess_threshold,
            degree_cap,
            memo: RwLock::new(HashMap::new()),
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn excess_threshold(&self) -> i64 {
        self.excess_threshold
    }

    pub fn degree_cap(&self) -> i64 {
        self.degree_cap
    }

    pub fn field(&self) -> Field {
        Field::Prime(self.p)
    }

    pub fn generator_degree(&self, g: Generator) -> i64 {
        if self.p == 2 {
            g.index as i64
        } else {
            2 * g.index as i64 * (self.p as i64 - 1) - g.eps()
        }
    }

    pub fn degree(&self, m: &Monomial) -> i64 {
        m.0.iter().map(|g| self.generator_degree(*g)).sum()
    }

    pub fn validate(&self, m: &Monomial) -> Result<(), DlError> {
        if self.p == 2 && m.0.iter().any(|g| g.bockstein) {
            return Err(DlError::BocksteinAtTwo);
        }
        let d = self.degree(m);
        if d > self.degree_cap {
            return Err(DlError::CapExceeded {
                degree: d,
                cap: self.degree_cap,
            });
        }
        Ok(())
    }

    pub fn parse(&self, s: &str) -> Result<Monomial, DlError> {
        let m = Monomial::parse(s)?;
        self.validate(&m)?;
        Ok(m)
    }

    /// Excess of a monomial; the empty word has excess `i64::MAX`.
    pub fn excess(&self, m: &Monomial) -> i64 {
        let Some(first) = m.0.first() else {
            return i64::MAX;
        };
        let rest: i64 = m.0[1..].iter().map(|g| self.generator_degree(*g)).sum();
        if self.p == 2 {
            first.index as i64 - rest
        } else {
            2 * first.index as i64 - first.eps() - rest
        }
    }

    /// Whether the adjacent pair `a b` is the left side of an Adem relation.
    pub fn is_rewritable(&self, a: Generator, b: Generator) -> bool {
        let (r, s) = (a.index as u64, b.index as u64);
        if self.p == 2 {
            r > 2 * s
        } else if b.bockstein {
            r >= self.p * s
        } else {
            r > self.p * s
        }
    }

    pub fn is_admissible(&self, m: &Monomial) -> bool {
        m.0.windows(2).all(|w| !self.is_rewritable(w[0], w[1]))
    }

    /// The right side of the Adem relation for a rewritable pair.
    pub fn adem_step(&self, a: Generator, b: Generator) -> Result<DlElement, DlError> {
        if !self.is_rewritable(a, b) {
            return Err(DlError::NotApplicable(a, b));
        }
        let mut out = DlElement::zero();
        for (x, y, c) in self.pair_image(a, b).iter() {
            out.add_term(Monomial(vec![*x, *y]), *c, self.p);
        }
        Ok(out)
    }

    fn pair_image(&self, a: Generator, b: Generator) -> PairImage {
        if let Some(hit) = self.memo.read().expect("memo lock").get(&(a, b)) {
            return hit.clone();
        }
        let image = Arc::new(self.compute_pair(a, b));
        self.memo
            .write()
            .expect("memo lock")
            .entry((a, b))
            .or_insert(image)
            .clone()
    }

    fn compute_pair(&self, a: Generator, b: Generator) -> Vec<(Generator, Generator, u64)> {
        let p = self.p;
        let pi = p as i64;
        let (r, s) = (a.index as i64, b.index as i64);
        let mut acc: BTreeMap<(Generator, Generator), u64> = BTreeMap::new();
        let mut push = |x: Generator, y: Generator, c: i64| {
            let c = c.rem_euclid(pi) as u64;
            if c != 0 {
                let e = acc.entry((x, y)).or_insert(0);
                *e = (*e + c) % p;
            }
        };
        for i in 0..=(r + s) {
            let top = Generator {
                bockstein: a.bockstein,
                index: (r + s - i) as u32,
            };
            if p == 2 {
                let c = binomial_mod_p(i - s - 1, 2 * i - r, 2) as i64;
                push(top, Generator::q(i as u32), c);
                continue;
            }
            let sign = if (r + i) % 2 == 0 { 1 } else { -1 };
            if !b.bockstein {
                let c = binomial_mod_p(pi * i - (pi - 1) * s - i - 1, pi * i - r, p) as i64;
                push(top, Generator::q(i as u32), sign * c);
            } else {
                if !a.bockstein {
                    let c = binomial_mod_p(pi * i - (pi - 1) * s - i, pi * i - r, p) as i64;
                    push(Generator::bq((r + s - i) as u32), Generator::q(i as u32), sign * c);
                }
                let c = binomial_mod_p(pi * i - (pi - 1) * s - i - 1, pi * i - r - 1, p) as i64;
                push(top, Generator::bq(i as u32), -sign * c);
            }
        }
        acc.into_iter()
            .filter(|(_, c)| *c != 0)
            .map(|((x, y), c)| (x, y, c))
            .collect()
    }

    pub fn normalize_monomial(&self, m: &Monomial) -> Result<DlElement, DlError> {
        self.normalize(&DlElement::monomial(m.clone()))
    }

    pub fn normalize(&self, x: &DlElement) -> Result<DlElement, DlError> {
        self.normalize_with(x, RewriteOrder::Leftmost)
    }

    /// Rewrites every word to admissible form, then drops words of excess
    /// below the threshold.
    pub fn normalize_with(&self, x: &DlElement, order: RewriteOrder) -> Result<DlElement, DlError> {
        for (m, _) in x.terms() {
            self.validate(m)?;
        }
        let p = self.p;
        let mut pending: BTreeMap<Monomial, u64> = x.terms.clone();
        let mut out = DlElement::zero();
        let mut steps = 0usize;
        while let Some((w, c)) = pending.pop_first() {
            steps += 1;
            if steps > STEP_CEILING {
                return Err(DlError::StepCeiling(STEP_CEILING));
            }
            let pos = match order {
                RewriteOrder::Leftmost => (0..w.len().saturating_sub(1)).find(|&k| self.is_rewritable(w.0[k], w.0[k + 1])),
                RewriteOrder::Rightmost => (0..w.len().saturating_sub(1))
                    .rev()
                    .find(|&k| self.is_rewritable(w.0[k], w.0[k + 1])),
            };
            let Some(k) = pos else {
                if self.excess(&w) >= self.excess_threshold {
                    out.add_term(w, c, p);
                }
                continue;
            };
            for (x, y, d) in self.pair_image(w.0[k], w.0[k + 1]).iter() {
                let mut v = Vec::with_capacity(w.len());
                v.extend_from_slice(&w.0[..k]);
                v.push(*x);
                v.push(*y);
                v.extend_from_slice(&w.0[k + 2..]);
                let e = pending.entry(Monomial(v)).or_insert(0);
                *e = (*e + mul_mod(c, *d, p)) % p;
            }
            pending.retain(|_, c| *c != 0);
        }
        Ok(out)
    }

    pub fn multiply(&self, x: &DlElement, y: &DlElement) -> Result<DlElement, DlError> {
        let mut raw = DlElement::zero();
        for (a, c) in x.terms() {
            for (b, d) in y.terms() {
                raw.add_term(a.concat(b), mul_mod(c, d, self.p), self.p);
            }
        }
        self.normalize(&raw)
    }

    pub fn augment(&self, x: &DlElement) -> u64 {
        x.terms()
            .filter(|(m, _)| m.0.iter().all(|g| *g == Generator::q(0)))
            .fold(0, |acc, (_, c)| (acc + c) % self.p)
    }

    fn generator_coproduct(&self, g: Generator) -> Vec<(Monomial, Monomial)> {
        let n = g.index;
        let mut out = Vec::new();
        for j in 0..=n {
            if g.bockstein {
                out.push((Monomial(vec![Generator::bq(j)]), Monomial(vec![Generator::q(n - j)])));
                out.push((Monomial(vec![Generator::q(j)]), Monomial(vec![Generator::bq(n - j)])));
            } else {
                out.push((Monomial(vec![Generator::q(j)]), Monomial(vec![Generator::q(n - j)])));
            }
        }
        out
    }

    fn koszul(&self, b: &Monomial, c: &Monomial) -> u64 {
        if self.p != 2 && (self.degree(b) * self.degree(c)) % 2 != 0 {
            self.p - 1
        } else {
            1
        }
    }

    fn tensor_product(&self, x: &DlTensor, y: &DlTensor) -> Result<DlTensor, DlError> {
        let p = self.p;
        let mut out = DlTensor::default();
        let mut cache: HashMap<Monomial, DlElement> = HashMap::new();
        let mut nf = |m: Monomial| -> Result<DlElement, DlError> {
            if let Some(v) = cache.get(&m) {
                return Ok(v.clone());
            }
            let v = self.normalize_monomial(&m)?;
            cache.insert(m, v.clone());
            Ok(v)
        };
        for ((a, b), c) in x.terms() {
            for ((u, v), d) in y.terms() {
                let coeff = mul_mod(mul_mod(c, d, p), self.koszul(b, u), p);
                let left = nf(a.concat(u))?;
                let right = nf(b.concat(v))?;
                for (l, cl) in left.terms() {
                    for (r, cr) in right.terms() {
                        out.add_term((l.clone(), r.clone()), mul_mod(coeff, mul_mod(cl, cr, p), p), p);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Coproduct of a word, expanded multiplicatively from the generator
    /// formulas with each tensor factor normalized.
    pub fn coproduct_monomial(&self, m: &Monomial) -> Result<DlTensor, DlError> {
        if self.excess_threshold < 0 {
            return Err(DlError::CoproductUndefined);
        }
        self.validate(m)?;
        let mut acc = DlTensor::default();
        acc.add_term((Monomial::one(), Monomial::one()), 1, self.p);
        for g in m.0.iter().rev() {
            let mut dg = DlTensor::default();
            for (a, b) in self.generator_coproduct(*g) {
                dg.add_term((a, b), 1, self.p);
            }
            acc = self.tensor_product(&dg, &acc)?;
        }
        Ok(acc)
    }

    pub fn coproduct(&self, x: &DlElement) -> Result<DlTensor, DlError> {
        let mut out = DlTensor::default();
        for (m, c) in x.terms() {
            for (k, d) in self.coproduct_monomial(m)?.terms() {
                out.add_term(k.clone(), mul_mod(c, d, self.p), self.p);
            }
        }
        Ok(out)
    }

    /// Applies `f` to the tensor factor selected by `left`.
    fn coproduct_on_factor(&self, t: &DlTensor, left: bool) -> Result<DlTriple, DlError> {
        let p = self.p;
        let mut out: DlTriple = BTreeMap::new();
        for ((a, b), c) in t.terms() {
            let split = self.coproduct_monomial(if left { a } else { b })?;
            for ((x, y), d) in split.terms() {
                let key = if left {
                    (x.clone(), y.clone(), b.clone())
                } else {
                    (a.clone(), x.clone(), y.clone())
                };
                let e = out.entry(key).or_insert(0);
                *e = (*e + mul_mod(c, d, p)) % p;
            }
        }
        out.retain(|_, c| *c != 0);
        Ok(out)
    }

    /// Whether `(D (x) id) D x = (id (x) D) D x`.
    pub fn is_coassociative_on(&self, x: &DlElement) -> Result<bool, DlError> {
        let d = self.coproduct(x)?;
        Ok(self.coproduct_on_factor(&d, true)? == self.coproduct_on_factor(&d, false)?)
    }

    /// Whether `D(normalize w)` agrees with the coproduct expanded from the raw
    /// word `w`, so that relations map into the ideal they generate.
    pub fn is_multiplicative_on(&self, w: &Monomial) -> Result<bool, DlError> {
        let normalized = self.normalize_monomial(w)?;
        Ok(self.coproduct(&normalized)? == self.coproduct_monomial(w)?)
    }

    /// Default word-length bound for `basis_in_degree`.
    pub fn default_length_bound(&self, degree: i64) -> Result<usize, DlError> {
        if self.excess_threshold >= 0 && degree > 0 {
            Ok(degree as usize)
        } else if self.excess_threshold >= 0 && degree < 0 {
            Ok(0)
        } else {
            Err(DlError::LengthBoundRequired(degree))
        }
    }

    /// Admissible monomials of the given degree with excess at least the
    /// threshold, sorted, up to the given word length.
    pub fn basis_in_degree(&self, degree: i64, length_bound: Option<usize>) -> Result<Vec<Monomial>, DlError> {
        if degree > self.degree_cap {
            return Err(DlError::CapExceeded {
                degree,
                cap: self.degree_cap,
            });
        }
        let bound = match length_bound {
            Some(b) => b,
            None => self.default_length_bound(degree)?,
        };
        let mut out = Vec::new();
        let mut word = Vec::new();
        self.extend_admissible(&mut word, degree, bound, &mut out);
        out.retain(|m| self.excess(m) >= self.excess_threshold);
        out.sort();
        Ok(out)
    }

    fn generators_up_to(&self, max_degree: i64) -> Vec<Generator> {
        let mut out = Vec::new();
        let mut i = 0u32;
        loop {
            let q = Generator::q(i);
            let b = Generator::bq(i);
            let mut any = false;
            if self.p != 2 && self.generator_degree(b) <= max_degree {
                out.push(b);
                any = true;
            }
            if self.generator_degree(q) <= max_degree {
                out.push(q);
                any = true;
            }
            if !any {
                break;
            }
            i += 1;
        }
        out
    }

    fn extend_admissible(&self, word: &mut Vec<Generator>, remaining: i64, slots: usize, out: &mut Vec<Monomial>) {
        if remaining == 0 {
            out.push(Monomial(word.clone()));
        }
        if slots == 0 {
            return;
        }
        // Every later letter has degree at least -1.
        let slack = if self.p == 2 { 0 } else { slots as i64 - 1 };
        for g in self.generators_up_to(remaining + slack) {
            if let Some(prev) = word.last() {
                if self.is_rewritable(*prev, g) {
                    continue;
                }
            }
            let rest = remaining - self.generator_degree(g);
            let min_rest = if self.p == 2 { 0 } else { -(slots as i64 - 1) };
            if rest < min_rest {
                continue;
            }
            word.push(g);
            self.extend_admissible(word, rest, slots - 1, out);
            word.pop();
        }
    }

    /// Coordinates of a normalized element in a degree basis.
    pub fn to_vector(&self, x: &DlElement, basis: &[Monomial]) -> SparseVector {
        let field = self.field();
        SparseVector::from_pairs(x.terms().map(|(m, c)| {
            let i = basis.binary_search(m).expect("element lies in the listed basis");
            (i, field.from_i64(c as i64))
        }))
    }

    pub fn from_vector(&self, v: &SparseVector, basis: &[Monomial]) -> DlElement {
        let mut out = DlElement::zero();
        for (i, c) in v.iter() {
            out.add_term(basis[i].clone(), c.residue().expect("prime field"), self.p);
        }
        out
    }

    pub fn homogeneous_degree(&self, x: &DlElement) -> Option<i64> {
        let mut degs = x.terms().map(|(m, _)| self.degree(m));
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }
}

/// The filtration of `R(e)` by powers of the ideal `K` of positive-degree
/// elements, computed degreewise up to the degree cap.
#[derive(Debug, Clone)]
pub struct KAdicFiltration {
    algebra: DyerLashof,
    /// For each positive degree, its admissible basis.
    bases: BTreeMap<i64, Vec<Monomial>>,
    /// `powers[d][n-1]` is `K^n` in degree `d`, for `n >= 1` while nonzero.
    powers: BTreeMap<i64, Vec<Subspace>>,
}

/// A homogeneous element of the associated graded `E_0 R`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct E0Element {
    pub degree: i64,
    pub level: usize,
    /// Normal form modulo the next filtration stage; zero means the class is 0.
    pub value: DlElement,
}

impl E0Element {
    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

impl KAdicFiltration {
    pub fn new(algebra: &DyerLashof) -> Result<Self, DlError> {
        if algebra.excess_threshold < 0 {
            return Err(DlError::CoproductUndefined);
        }
        let algebra = algebra.clone();
        let field = algebra.field();
        let cap = algebra.degree_cap;
        let mut bases = BTreeMap::new();
        for d in 1..=cap {
            bases.insert(d, algebra.basis_in_degree(d, None)?);
        }
        let mut powers: BTreeMap<i64, Vec<Subspace>> = BTreeMap::new();
        for d in 1..=cap {
            powers.insert(d, vec![Subspace::full(field, bases[&d].len())]);
        }
        // K^n_d is spanned by products a*b with a in K^(n-1)_(d1), b of degree d2 > 0.
        let mut n = 2;
        loop {
            let mut grew = false;
            for d in 1..=cap {
                let mut rows = Vec::new();
                for d1 in 1..d {
                    let d2 = d - d1;
                    let Some(prev) = powers[&d1].get(n - 2) else {
                        continue;
                    };
                    for a in prev.rows() {
                        let a = algebra.from_vector(a, &bases[&d1]);
                        for b in &bases[&d2] {
                            let prod = algebra.multiply(&a, &DlElement::monomial(b.clone()))?;
                            rows.push(algebra.to_vector(&prod, &bases[&d]));
                        }
                    }
                }
                let sub = linalg::rref(field, rows, bases[&d].len())?;
                if !sub.is_zero() {
                    powers.get_mut(&d).expect("degree present").push(sub);
                    grew = true;
                }
            }
            if !grew {
                break;
            }
            n += 1;
        }
        Ok(KAdicFiltration { algebra, bases, powers })
    }

    pub fn algebra(&self) -> &DyerLashof {
        &self.algebra
    }

    pub fn basis(&self, degree: i64) -> Option<&[Monomial]> {
        self.bases.get(&degree).map(|v| v.as_slice())
    }

    fn power(&self, degree: i64, n: usize) -> Option<&Subspace> {
        if n == 0 {
            return None;
        }
        self.powers.get(&degree).and_then(|v| v.get(n - 1))
    }

    fn in_power(&self, degree: i64, n: usize, v: &SparseVector) -> bool {
        if v.is_zero() {
            return true;
        }
        match self.power(degree, n) {
            Some(s) => s.contains(v),
            None => n == 0,
        }
    }

    /// Largest `n` with `x` in `K^n`; `None` for the zero element.
    pub fn level(&self, x: &DlElement) -> Result<Option<usize>, DlError> {
        let x = self.algebra.normalize(x)?;
        if x.is_zero() {
            return Ok(None);
        }
        let mut level = usize::MAX;
        let mut by_degree: BTreeMap<i64, DlElement> = BTreeMap::new();
        for (m, c) in x.terms() {
            let d = self.algebra.degree(m);
            by_degree.entry(d).or_default().add_term(m.clone(), c, self.algebra.p);
        }
        for (d, part) in by_degree {
            let l = if d <= 0 {
                0
            } else {
                let v = self.algebra.to_vector(&part, &self.bases[&d]);
                let mut n = 1;
                while self.power(d, n + 1).is_some_and(|s| s.contains(&v)) {
                    n += 1;
                }
                n
            };
            level = level.min(l);
        }
        Ok(Some(level))
    }

    /// Representatives of `K^n / K^(n+1)` in a positive degree.
    pub fn graded_piece(&self, degree: i64, n: usize) -> Result<Quotient, DlError> {
        let field = self.algebra.field();
        let dim = self.bases.get(&degree).map_or(0, |b| b.len());
        let ambient = self
            .power(degree, n)
            .cloned()
            .unwrap_or_else(|| Subspace::zero(field, dim));
        let next = self
            .power(degree, n + 1)
            .cloned()
            .unwrap_or_else(|| Subspace::zero(field, dim));
        Ok(linalg::quotient_basis(&ambient, &next)?)
    }

    /// Homogeneous basis representatives of `E_0 R` in a positive degree,
    /// one list per filtration level.
    pub fn graded_basis(&self, degree: i64) -> Result<Vec<(usize, DlElement)>, DlError> {
        let mut out = Vec::new();
        let Some(levels) = self.powers.get(&degree) else {
            return Ok(out);
        };
        for n in 1..=levels.len() {
            let q = self.graded_piece(degree, n)?;
            for rep in q.representatives() {
                out.push((n, self.algebra.from_vector(rep, &self.bases[&degree])));
            }
        }
        Ok(out)
    }

    /// The class of `x` in `E_0 R`, for homogeneous `x`.
    pub fn class_of(&self, x: &DlElement) -> Result<E0Element, DlError> {
        let x = self.algebra.normalize(x)?;
        let degree = self.algebra.homogeneous_degree(&x).unwrap_or(0);
        if x.terms().any(|(m, _)| self.algebra.degree(m) != degree) {
            return Err(DlError::NotHomogeneous);
        }
        let level = self.level(&x)?.unwrap_or(0);
        self.class_at(&x, degree, level)
    }

    fn class_at(&self, x: &DlElement, degree: i64, level: usize) -> Result<E0Element, DlError> {
        if degree <= 0 {
            return Ok(E0Element {
                degree,
                level,
                value: if level == 0 { x.clone() } else { DlElement::zero() },
            });
        }
        let v = self.algebra.to_vector(x, &self.bases[&degree]);
        if !self.in_power(degree, level, &v) {
            return Err(DlError::NotHomogeneous);
        }
        let value = match self.power(degree, level + 1) {
            Some(next) => self.algebra.from_vector(&next.reduce(&v), &self.bases[&degree]),
            None => x.clone(),
        };
        Ok(E0Element { degree, level, value })
    }

    /// Product in `E_0 R`: the class of `xy` in filtration level
    /// `level(x) + level(y)`, which is zero when `xy` lies deeper.
    pub fn e0_multiply(&self, x: &DlElement, y: &DlElement) -> Result<E0Element, DlError> {
        let cx = self.class_of(x)?;
        let cy = self.class_of(y)?;
        let prod = self.algebra.multiply(x, y)?;
        self.class_at(&prod, cx.degree + cy.degree, cx.level + cy.level)
    }
}

/// Outcome of the left-sidedness check on `E_0 R`.
#[derive(Debug, Clone, Serialize)]
pub struct LeftSidedReport {
    pub p: u64,
    pub degree_bound: i64,
    pub pairs_checked: usize,
    /// Nonzero products that the statement requires to vanish.
    pub violations: Vec<(String, String, String)>,
    /// At p = 2, nonzero products of equal degree (allowed).
    pub equal_degree_products: Vec<(String, String, String)>,
    /// Elements on which left and right multiplication by `Q0` differ.
    pub q0_noncentral: Vec<String>,
    pub passed: bool,
}

/// Checks that `xy = 0` in `E_0 R` for positive-degree homogeneous basis
/// elements with `|x| <= |y|` (odd p) or `|x| < |y|` (p = 2) and
/// `|x| + |y| <= degree_bound`, and that `Q0` is central in `E_0 R`.
pub fn verify_left_sided_e0(p: u64, degree_bound: i64) -> Result<LeftSidedReport, DlError> {
    let algebra = DyerLashof::new(p, 0, degree_bound)?;
    let filt = KAdicFiltration::new(&algebra)?;
    let mut elements: Vec<(i64, DlElement)> = Vec::new();
    for d in 1..=degree_bound {
        for (_, x) in filt.graded_basis(d)? {
            elements.push((d, x));
        }
    }
    let mut violations = Vec::new();
    let mut equal = Vec::new();
    let mut checked = 0;
    for (dx, x) in &elements {
        for (dy, y) in &elements {
            if dx + dy > degree_bound || dx > dy {
                continue;
            }
            checked += 1;
            let prod = filt.e0_multiply(x, y)?;
            if prod.is_zero() {
                continue;
            }
            let witness = (x.to_string(), y.to_string(), prod.value.to_string());
            if p == 2 && dx == dy {
                equal.push(witness);
            } else {
                violations.push(witness);
            }
        }
    }
    let q0 = DlElement::monomial(Monomial(vec![Generator::q(0)]));
    let mut noncentral = Vec::new();
    for (_, x) in &elements {
        let left = filt.e0_multiply(&q0, x)?;
        let right = filt.e0_multiply(x, &q0)?;
        if left.value != right.value {
            noncentral.push(x.to_string());
        }
    }
    let passed = violations.is_empty() && noncentral.is_empty();
    Ok(LeftSidedReport {
        p,
        degree_bound,
        pairs_checked: checked,
        violations,
        equal_degree_products: equal,
        q0_noncentral: noncentral,
        passed,
    })
}
