//! Commutative monoids used as degree objects.
//!
//! Two kinds are supported: monoids given by a finite multiplication table and
//! the free monoid on one generator `Q`, whose elements are the powers `Q^n`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MonoidError {
    #[error("multiplication table is not {0}")]
    BadTable(&'static str),
    #[error("identity index {0} is out of range")]
    BadIdentity(usize),
    #[error("unknown monoid element {0:?}")]
    UnknownElement(String),
    #[error("window bound {0} is negative")]
    InvalidBound(i64),
    #[error("window is not divisor-closed: {divisor} divides {element} but is missing")]
    NotDivisorClosed { element: String, divisor: String },
    #[error("free commutative monoids of rank {0} are not supported")]
    UnsupportedRank(usize),
}

/// An element: a table index for finite monoids, an exponent for `free_rank1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MonoidElement(pub u32);

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Monoid {
    FiniteTable {
        names: Vec<String>,
        identity: usize,
        table: Vec<Vec<usize>>,
    },
    FreeRank1 {
        generator: String,
    },
}

/// Serialized form of a monoid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MonoidDoc {
    FiniteTable {
        elements: Vec<String>,
        identity: usize,
        table: Vec<Vec<usize>>,
    },
    FreeRank1 {
        generator: String,
    },
    /// Accepted only to be rejected with a precise error.
    Free {
        generators: Vec<String>,
    },
}

impl Monoid {
    pub fn finite_table(names: Vec<String>, identity: usize, table: Vec<Vec<usize>>) -> Result<Self, MonoidError> {
        let n = names.len();
        if identity >= n {
            return Err(MonoidError::BadIdentity(identity));
        }
        if table.len() != n || table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(MonoidError::BadTable("square over the element set"));
        }
        if (0..n).any(|a| table[identity][a] != a || table[a][identity] != a) {
            return Err(MonoidError::BadTable("unital"));
        }
        for a in 0..n {
            for b in 0..n {
                if table[a][b] != table[b][a] {
                    return Err(MonoidError::BadTable("commutative"));
                }
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(MonoidError::BadTable("associative"));
                    }
                }
            }
        }
        Ok(Monoid::FiniteTable { names, identity, table })
    }

    pub fn free_rank1(generator: &str) -> Self {
        Monoid::FreeRank1 {
            generator: generator.to_string(),
        }
    }

    /// The cyclic group of order `n`, elements named `e, g, g^2, ...`.
    pub fn cyclic(n: usize, generator: &str) -> Self {
        let names = (0..n)
            .map(|k| match k {
                0 => "e".to_string(),
                1 => generator.to_string(),
                _ => format!("{generator}^{k}"),
            })
            .collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Monoid::finite_table(names, 0, table).expect("cyclic group table")
    }

    /// The Klein four-group `C2 x C2`.
    pub fn klein_four() -> Self {
        let names = ["e", "a", "b", "ab"].iter().map(|s| s.to_string()).collect();
        let table = (0..4).map(|x| (0..4).map(|y| x ^ y).collect()).collect();
        Monoid::finite_table(names, 0, table).expect("Klein table")
    }

    pub fn trivial() -> Self {
        Monoid::finite_table(vec!["e".to_string()], 0, vec![vec![0]]).expect("trivial table")
    }

    pub fn from_doc(doc: &MonoidDoc) -> Result<Self, MonoidError> {
        match doc {
            MonoidDoc::FiniteTable {
                elements,
                identity,
                table,
            } => Monoid::finite_table(elements.clone(), *identity, table.clone()),
            MonoidDoc::FreeRank1 { generator } => Ok(Monoid::free_rank1(generator)),
            MonoidDoc::Free { generators } if generators.len() == 1 => Ok(Monoid::free_rank1(&generators[0])),
            MonoidDoc::Free { generators } => Err(MonoidError::UnsupportedRank(generators.len())),
        }
    }

    pub fn to_doc(&self) -> MonoidDoc {
        match self {
            Monoid::FiniteTable { names, identity, table } => MonoidDoc::FiniteTable {
                elements: names.clone(),
                identity: *identity,
                table: table.clone(),
            },
            Monoid::FreeRank1 { generator } => MonoidDoc::FreeRank1 {
                generator: generator.clone(),
            },
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Monoid::FiniteTable { .. })
    }

    pub fn order(&self) -> Option<usize> {
        match self {
            Monoid::FiniteTable { names, .. } => Some(names.len()),
            Monoid::FreeRank1 { .. } => None,
        }
    }

    pub fn identity(&self) -> MonoidElement {
        match self {
            Monoid::FiniteTable { identity, .. } => MonoidElement(*identity as u32),
            Monoid::FreeRank1 { .. } => MonoidElement(0),
        }
    }

    /// The generator `Q` of a free rank-1 monoid.
    pub fn generator(&self) -> Option<MonoidElement> {
        match self {
            Monoid::FreeRank1 { .. } => Some(MonoidElement(1)),
            Monoid::FiniteTable { .. } => None,
        }
    }

    pub fn contains(&self, a: MonoidElement) -> bool {
        match self {
            Monoid::FiniteTable { names, .. } => (a.0 as usize) < names.len(),
            Monoid::FreeRank1 { .. } => true,
        }
    }

    pub fn mul(&self, a: MonoidElement, b: MonoidElement) -> MonoidElement {
        match self {
            Monoid::FiniteTable { table, .. } => MonoidElement(table[a.0 as usize][b.0 as usize] as u32),
            Monoid::FreeRank1 { .. } => MonoidElement(a.0 + b.0),
        }
    }

    pub fn product<I: IntoIterator<Item = MonoidElement>>(&self, items: I) -> MonoidElement {
        items.into_iter().fold(self.identity(), |acc, x| self.mul(acc, x))
    }

    pub fn pow(&self, a: MonoidElement, n: u32) -> MonoidElement {
        (0..n).fold(self.identity(), |acc, _| self.mul(acc, a))
    }

    /// All `g` with `g * a = b`.
    pub fn quotients(&self, b: MonoidElement, a: MonoidElement) -> Vec<MonoidElement> {
        match self {
            Monoid::FiniteTable { names, table, .. } => (0..names.len())
                .filter(|&g| table[g][a.0 as usize] == b.0 as usize)
                .map(|g| MonoidElement(g as u32))
                .collect(),
            Monoid::FreeRank1 { .. } => {
                if a.0 <= b.0 {
                    vec![MonoidElement(b.0 - a.0)]
                } else {
                    Vec::new()
                }
            }
        }
    }

    /// Whether some `g` satisfies `g * q = q2`.
    pub fn divides(&self, q: MonoidElement, q2: MonoidElement) -> bool {
        !self.quotients(q2, q).is_empty()
    }

    /// Whether divisibility is total.
    pub fn is_linear(&self) -> bool {
        match self {
            Monoid::FreeRank1 { .. } => true,
            Monoid::FiniteTable { names, .. } => {
                let n = names.len() as u32;
                (0..n).all(|a| {
                    (0..n).all(|b| {
                        self.divides(MonoidElement(a), MonoidElement(b)) || self.divides(MonoidElement(b), MonoidElement(a))
                    })
                })
            }
        }
    }

    pub fn is_group(&self) -> bool {
        match self {
            Monoid::FreeRank1 { .. } => false,
            Monoid::FiniteTable { names, .. } => {
                let id = self.identity();
                (0..names.len() as u32).all(|a| self.divides(MonoidElement(a), id))
            }
        }
    }

    pub fn is_invertible(&self, a: MonoidElement) -> bool {
        self.divides(a, self.identity())
    }

    pub fn name(&self, a: MonoidElement) -> String {
        match self {
            Monoid::FiniteTable { names, .. } => names[a.0 as usize].clone(),
            Monoid::FreeRank1 { generator } => match a.0 {
                0 => "1".to_string(),
                1 => generator.clone(),
                n => format!("{generator}^{n}"),
            },
        }
    }

    /// Parses an element name: a table name, or for `free_rank1` one of
    /// `"1"`, `"Q"`, `"Q^n"`, or a bare exponent `"n"`.
    pub fn parse_element(&self, s: &str) -> Result<MonoidElement, MonoidError> {
        let s = s.trim();
        let unknown = || MonoidError::UnknownElement(s.to_string());
        match self {
            Monoid::FiniteTable { names, .. } => names
                .iter()
                .position(|n| n == s)
                .map(|i| MonoidElement(i as u32))
                .ok_or_else(unknown),
            Monoid::FreeRank1 { generator } => {
                if s == "1" {
                    return Ok(MonoidElement(0));
                }
                if s == generator {
                    return Ok(MonoidElement(1));
                }
                let exp = s
                    .strip_prefix(generator.as_str())
                    .and_then(|r| r.strip_prefix('^'))
                    .ok_or_else(unknown)?;
                exp.parse::<u32>().map(MonoidElement).map_err(|_| unknown())
            }
        }
    }

    /// All elements for a finite monoid, `{Q^0, ..., Q^bound}` for the free one.
    pub fn enumerate_window(&self, bound: i64) -> Result<DegreeWindow, MonoidError> {
        if bound < 0 {
            return Err(MonoidError::InvalidBound(bound));
        }
        let elements = match self {
            Monoid::FiniteTable { names, .. } => (0..names.len() as u32).map(MonoidElement).collect(),
            Monoid::FreeRank1 { .. } => (0..=bound as u32).map(MonoidElement).collect(),
        };
        DegreeWindow::new(self, elements)
    }

    pub fn elements_upto(&self, bound: u32) -> Vec<MonoidElement> {
        match self {
            Monoid::FiniteTable { names, .. } => (0..names.len() as u32).map(MonoidElement).collect(),
            Monoid::FreeRank1 { .. } => (0..=bound).map(MonoidElement).collect(),
        }
    }
}

impl fmt::Display for Monoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Monoid::FiniteTable { names, .. } => write!(f, "finite monoid {{{}}}", names.join(", ")),
            Monoid::FreeRank1 { generator } => write!(f, "free monoid on {generator}"),
        }
    }
}

/// A divisor-closed finite set of degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeWindow {
    elements: BTreeSet<MonoidElement>,
}

impl DegreeWindow {
    pub fn new(monoid: &Monoid, elements: BTreeSet<MonoidElement>) -> Result<Self, MonoidError> {
        let mut elements = elements;
        elements.insert(monoid.identity());
        for &d in &elements {
            if !monoid.contains(d) {
                return Err(MonoidError::UnknownElement(format!("{}", d.0)));
            }
        }
        let candidates: Vec<MonoidElement> = match monoid {
            Monoid::FiniteTable { names, .. } => (0..names.len() as u32).map(MonoidElement).collect(),
            Monoid::FreeRank1 { .. } => {
                let top = elements.iter().map(|e| e.0).max().unwrap_or(0);
                (0..=top).map(MonoidElement).collect()
            }
        };
        for &d in &elements {
            for &e in &candidates {
                if monoid.divides(e, d) && !elements.contains(&e) {
                    return Err(MonoidError::NotDivisorClosed {
                        element: monoid.name(d),
                        divisor: monoid.name(e),
                    });
                }
            }
        }
        Ok(DegreeWindow { elements })
    }

    pub fn contains(&self, d: MonoidElement) -> bool {
        self.elements.contains(&d)
    }

    pub fn iter(&self) -> impl Iterator<Item = MonoidElement> + '_ {
        self.elements.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Largest exponent, meaningful for `free_rank1` windows.
    pub fn top(&self) -> u32 {
        self.elements.iter().map(|e| e.0).max().unwrap_or(0)
    }
}
