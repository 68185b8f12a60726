//! Maps between suspensive Lie algebras and rigid bialgebras: the unit and
//! counit of the envelope / generalized-primitive adjunction, and checks of
//! the two equivalence theorems on truncations.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::bialgebra::{
    gp_spaces, gp_lie, is_gpg, is_left_sided, BialgebraError, GpLie, PresentedBialgebra, Product, TensorSquareElement,
    Verdict,
};
use crate::enveloping::{build_w, build_z, Envelope, EnvelopeError, LeftSidedEnvelope};
use crate::linalg::{rref, Field, LinalgError, SparseVector};
use crate::monoid::DegreeWindow;
use crate::suspensive::{SuspensiveError, SuspensiveLieAlgebra, SuspensiveMorphism};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MilnorMooreError {
    #[error("the ground field must have characteristic zero")]
    NonCharZero,
    #[error("input is not torsion-free: {witness}")]
    NotTorsionFree { witness: String },
    #[error("input is not torsion: {witness}")]
    NonTorsionInput { witness: String },
    #[error("divisibility in the monoid is not a total preorder")]
    NonLinearMonoid,
    #[error("the window does not decide {0}")]
    Undecided(String),
    #[error("domain is not generated by grouplikes and generalized primitives")]
    NotGpg,
    #[error("{0}")]
    Mismatch(String),
    #[error(transparent)]
    Envelope(#[from] EnvelopeError),
    #[error(transparent)]
    Bialgebra(#[from] BialgebraError),
    #[error(transparent)]
    Suspensive(#[from] SuspensiveError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

type Result<T> = std::result::Result<T, MilnorMooreError>;

/// A linear map between presented bialgebras, as images of the domain basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BialgebraMorphism {
    pub images: Vec<SparseVector>,
}

/// Rank of a map restricted to one degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeRank {
    pub degree: String,
    pub domain_dim: usize,
    pub codomain_dim: usize,
    pub rank: usize,
}

impl DegreeRank {
    pub fn injective(&self) -> bool {
        self.rank == self.domain_dim
    }

    pub fn surjective(&self) -> bool {
        self.rank == self.codomain_dim
    }

    pub fn iso(&self) -> bool {
        self.injective() && self.surjective()
    }
}

fn rank_of(field: Field, vectors: &[SparseVector], dim: usize) -> Result<usize> {
    Ok(rref(field, vectors.to_vec(), dim)?.rank())
}

impl BialgebraMorphism {
    pub fn identity(a: &PresentedBialgebra) -> Self {
        BialgebraMorphism {
            images: (0..a.dim()).map(|i| SparseVector::unit(i, a.field())).collect(),
        }
    }

    pub fn apply(&self, v: &SparseVector) -> SparseVector {
        let mut out = SparseVector::zero();
        for (i, c) in v.iter() {
            out = out.add_scaled(&self.images[i], c);
        }
        out
    }

    pub fn apply_tensor(&self, t: &TensorSquareElement) -> TensorSquareElement {
        t.map_factors(|i| self.images[i].clone(), |j| self.images[j].clone())
    }

    /// `after . self`.
    pub fn then(&self, after: &BialgebraMorphism) -> BialgebraMorphism {
        BialgebraMorphism {
            images: self.images.iter().map(|v| after.apply(v)).collect(),
        }
    }

    /// Lists failures of unitality, counitality, multiplicativity (where both
    /// sides are defined), comultiplicativity and compatibility with the rigid
    /// unit maps.
    pub fn check(&self, domain: &PresentedBialgebra, codomain: &PresentedBialgebra) -> Vec<String> {
        let mut bad = Vec::new();
        if self.images.len() != domain.dim() {
            bad.push("wrong number of images".into());
            return bad;
        }
        if self.apply(domain.unit()) != *codomain.unit() {
            bad.push("unit is not preserved".into());
        }
        for i in 0..domain.dim() {
            if codomain.counit(&self.images[i]) != *domain.counit_basis(i) {
                bad.push(format!("counit differs on {}", domain.name(i)));
            }
            let lhs = codomain.comul(&self.images[i]);
            let rhs = self.apply_tensor(domain.comul_basis(i));
            if lhs != rhs {
                bad.push(format!("coproduct differs on {}", domain.name(i)));
            }
        }
        for i in 0..domain.dim() {
            for j in 0..domain.dim() {
                let Product::Defined(p) = domain.mul_basis(i, j) else { continue };
                let Ok(q) = codomain.mul(&self.images[i], &self.images[j]) else { continue };
                if self.apply(p) != q {
                    bad.push(format!("product {} * {} is not preserved", domain.name(i), domain.name(j)));
                }
            }
        }
        if let (Some(rd), Some(rc)) = (domain.rigid(), codomain.rigid()) {
            for (&g, &i) in &rd.eta {
                match rc.image(g) {
                    Some(k) if self.images[i] == SparseVector::unit(k, codomain.field()) => {}
                    _ => bad.push(format!("rigid unit differs at {}", rd.monoid.name(g))),
                }
            }
        }
        bad
    }

    /// Ranks per degree of the domain window. Both algebras must be graded.
    pub fn degree_ranks(&self, domain: &PresentedBialgebra, codomain: &PresentedBialgebra) -> Result<Vec<DegreeRank>> {
        let r = domain.rigid().ok_or(BialgebraError::NotRigid)?;
        let mut out = Vec::new();
        for d in r.window.iter() {
            let block = domain.block(d);
            let images: Vec<SparseVector> = block.iter().map(|&i| self.images[i].clone()).collect();
            out.push(DegreeRank {
                degree: r.monoid.name(d),
                domain_dim: block.len(),
                codomain_dim: codomain.block(d).len(),
                rank: rank_of(domain.field(), &images, codomain.dim())?,
            });
        }
        Ok(out)
    }

    pub fn is_injective(&self, codomain: &PresentedBialgebra) -> Result<bool> {
        Ok(rank_of(codomain.field(), &self.images, codomain.dim())? == self.images.len())
    }
}

fn lie_degree_ranks(
    domain: &SuspensiveLieAlgebra,
    codomain: &SuspensiveLieAlgebra,
    f: &SuspensiveMorphism,
    window: &DegreeWindow,
) -> Result<Vec<DegreeRank>> {
    let m = domain.monoid();
    let mut out = Vec::new();
    for d in window.iter() {
        let block = domain.block(d);
        let images: Vec<SparseVector> = block.iter().map(|&i| f.images[i].clone()).collect();
        out.push(DegreeRank {
            degree: m.name(d),
            domain_dim: block.len(),
            codomain_dim: codomain.block(d).len(),
            rank: rank_of(domain.field(), &images, codomain.dim())?,
        });
    }
    Ok(out)
}

/// `L -> GP_*(A)` together with per-degree ranks.
#[derive(Debug, Clone)]
pub struct UnitMap {
    pub gp: GpLie,
    pub morphism: SuspensiveMorphism,
    pub per_degree: Vec<DegreeRank>,
}

impl UnitMap {
    pub fn injective(&self) -> bool {
        self.per_degree.iter().all(DegreeRank::injective)
    }

    pub fn surjective(&self) -> bool {
        self.per_degree.iter().all(DegreeRank::surjective)
    }
}

fn unit_into(lie: &SuspensiveLieAlgebra, algebra: &PresentedBialgebra, inclusion: &[SparseVector], window: &DegreeWindow) -> Result<UnitMap> {
    let gp = gp_lie(algebra)?;
    let images = inclusion
        .iter()
        .enumerate()
        .map(|(i, v)| {
            gp.coordinates(v)
                .ok_or_else(|| MilnorMooreError::Mismatch(format!("image of {} is not primitive", lie.name(i))))
        })
        .collect::<Result<Vec<_>>>()?;
    let morphism = SuspensiveMorphism { images };
    let per_degree = lie_degree_ranks(lie, &gp.lie, &morphism, window)?;
    Ok(UnitMap { gp, morphism, per_degree })
}

/// The canonical map from `L` to the generalized primitives of its envelope.
pub fn unit_map(env: &Envelope) -> Result<UnitMap> {
    unit_into(&env.lie, &env.algebra, &env.inclusion, &env.window)
}

/// The canonical map from `L` to the generalized primitives of `Z(L)`.
pub fn unit_map_z(z: &LeftSidedEnvelope) -> Result<UnitMap> {
    unit_into(&z.w.lie, &z.algebra, &z.inclusion, &z.w.window)
}

/// The bialgebra map `W(L) -> A` determined by `f: L -> GP_*(A)`: a word goes
/// to the product of the images of its letters, a grouplike to its rigid
/// image.
pub fn extend_lie_map(env: &Envelope, target: &PresentedBialgebra, gp: &GpLie, f: &SuspensiveMorphism) -> Result<BialgebraMorphism> {
    let rigid = target.rigid().ok_or(BialgebraError::NotRigid)?;
    let field = target.field();
    let letters: Vec<SparseVector> = f
        .images
        .iter()
        .map(|c| {
            let mut v = SparseVector::zero();
            for (k, s) in c.iter() {
                v = v.add_scaled(&gp.embedding[k], s);
            }
            v
        })
        .collect();
    let mut images = Vec::with_capacity(env.algebra.dim());
    for m in &env.monomials {
        let g = rigid.image(m.grouplike).ok_or_else(|| {
            BialgebraError::WindowTooSmall(format!("{} has no rigid image", env.lie.monoid().name(m.grouplike)))
        })?;
        let mut factors = vec![SparseVector::unit(g, field)];
        factors.extend(m.word.iter().map(|&k| letters[k].clone()));
        images.push(target.mul_all(&factors)?);
    }
    Ok(BialgebraMorphism { images })
}

/// Restriction of a bialgebra map out of `W(L)` along `L -> W(L)`, read in
/// the generalized primitives of the target.
pub fn restrict(env: &Envelope, gp: &GpLie, h: &BialgebraMorphism) -> Result<SuspensiveMorphism> {
    let images = env
        .inclusion
        .iter()
        .enumerate()
        .map(|(i, v)| {
            gp.coordinates(&h.apply(v))
                .ok_or_else(|| MilnorMooreError::Mismatch(format!("image of {} is not primitive", env.lie.name(i))))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SuspensiveMorphism { images })
}

/// Self-maps of `lie` compatible with its structure: identity, zero, and
/// random scalings `x -> c x` and, over the free monoid, weights
/// `x -> c^n x` on degree `Q^n`, kept only when they pass the morphism check.
pub fn sample_endomorphisms<R: Rng>(
    lie: &SuspensiveLieAlgebra,
    window: &DegreeWindow,
    rng: &mut R,
    count: usize,
) -> Result<Vec<SuspensiveMorphism>> {
    let f = lie.field();
    let id = SuspensiveMorphism::identity(lie);
    let mut out = vec![id.clone(), SuspensiveMorphism::zero(lie.dim())];
    for _ in 0..count {
        let num = *[-3i64, -2, -1, 1, 2, 3].choose(rng).expect("nonempty");
        let c = f.from_ratio(num, rng.gen_range(1..=2));
        let mut candidates = vec![id.scaled(&c)];
        if !lie.monoid().is_finite() {
            candidates.push(SuspensiveMorphism {
                images: (0..lie.dim())
                    .map(|i| SparseVector::unit(i, f).scale(&(0..lie.degree(i).0).fold(f.one(), |acc, _| &acc * &c)))
                    .collect(),
            });
        }
        for m in candidates {
            if m.check(lie, lie, window)?.is_empty() && !out.contains(&m) {
                out.push(m);
            }
        }
    }
    Ok(out)
}

/// Outcome of sampled adjunction round trips on one envelope.
#[derive(Debug, Clone, Serialize)]
pub struct AdjunctionReport {
    pub seed: u64,
    pub samples: usize,
    pub failures: Vec<String>,
}

impl AdjunctionReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks on seeded samples `f` that extending `L -> L -> GP_*(W L)` gives a
/// bialgebra map restricting back to it, and that extension respects
/// composition.
pub fn sample_adjunction(env: &Envelope, seed: u64, count: usize) -> Result<AdjunctionReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let unit = unit_map(env)?;
    let maps = sample_endomorphisms(&env.lie, &env.window, &mut rng, count)?;
    let mut failures = Vec::new();
    let mut extended = Vec::with_capacity(maps.len());
    for (k, g) in maps.iter().enumerate() {
        let f = g.then(&unit.morphism);
        let h = extend_lie_map(env, &env.algebra, &unit.gp, &f)?;
        let bad = h.check(&env.algebra, &env.algebra);
        if !bad.is_empty() {
            failures.push(format!("sample {k}: extension is not a bialgebra map: {}", bad.join("; ")));
        }
        if restrict(env, &unit.gp, &h)? != f {
            failures.push(format!("sample {k}: restriction of the extension differs"));
        }
        extended.push(h);
    }
    for (a, b) in (0..maps.len()).zip(1..maps.len()) {
        let composite = maps[a].then(&maps[b]).then(&unit.morphism);
        let h = extend_lie_map(env, &env.algebra, &unit.gp, &composite)?;
        if h != extended[a].then(&extended[b]) {
            failures.push(format!("samples {a}, {b}: extension does not respect composition"));
        }
    }
    Ok(AdjunctionReport {
        seed,
        samples: maps.len(),
        failures,
    })
}

/// `W(GP_*(A)) -> A` with per-degree ranks.
#[derive(Debug, Clone)]
pub struct CounitMap {
    pub gp: GpLie,
    pub envelope: Envelope,
    pub morphism: BialgebraMorphism,
    pub per_degree: Vec<DegreeRank>,
}

impl CounitMap {
    pub fn injective(&self) -> bool {
        self.per_degree.iter().all(DegreeRank::injective)
    }

    pub fn surjective(&self) -> bool {
        self.per_degree.iter().all(DegreeRank::surjective)
    }
}

pub fn counit_map(a: &PresentedBialgebra, lie_cap: Option<usize>) -> Result<CounitMap> {
    let rigid = a.rigid().ok_or(BialgebraError::NotRigid)?;
    let gp = gp_lie(a)?;
    let envelope = build_w(&gp.lie, &rigid.window, lie_cap)?;
    let id = SuspensiveMorphism::identity(&gp.lie);
    let morphism = extend_lie_map(&envelope, a, &gp, &id)?;
    let per_degree = morphism.degree_ranks(&envelope.algebra, a)?;
    Ok(CounitMap {
        gp,
        envelope,
        morphism,
        per_degree,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct MilnorMooreReport {
    pub verdict: bool,
    pub window: Vec<String>,
    pub lie_cap: usize,
    pub unit: Vec<DegreeRank>,
    pub counit: Vec<DegreeRank>,
    pub checks: BTreeMap<String, bool>,
    pub witnesses: Vec<String>,
}

fn require_char_zero(lie: &SuspensiveLieAlgebra) -> Result<()> {
    if lie.field().characteristic() != 0 {
        return Err(MilnorMooreError::NonCharZero);
    }
    Ok(())
}

/// Builds `W(L)` and checks that `L -> GP_*(W L)` and `W(GP_*(W L)) -> W L`
/// are bijective in every degree of the window.
pub fn verify_mm_torsion_free(lie: &SuspensiveLieAlgebra, window: &DegreeWindow, lie_cap: Option<usize>) -> Result<MilnorMooreReport> {
    require_char_zero(lie)?;
    let flags = lie.torsion_flags(window)?;
    match flags.torsion_free {
        Some(true) => {}
        Some(false) => {
            return Err(MilnorMooreError::NotTorsionFree {
                witness: flags.torsion_witness.unwrap_or_default(),
            })
        }
        None => return Err(MilnorMooreError::Undecided(format!("torsion-freeness; {} is unknown", flags.missing_degree.unwrap_or_default()))),
    }
    let env = build_w(lie, window, lie_cap)?;
    let unit = unit_map(&env)?;
    let counit = counit_map(&env.algebra, Some(env.cap))?;
    let mut witnesses = Vec::new();
    for d in unit.per_degree.iter().filter(|d| !d.iso()) {
        witnesses.push(format!("unit map in degree {} has rank {} for dimensions {} -> {}", d.degree, d.rank, d.domain_dim, d.codomain_dim));
    }
    for d in counit.per_degree.iter().filter(|d| !d.iso()) {
        witnesses.push(format!("counit map in degree {} has rank {} for dimensions {} -> {}", d.degree, d.rank, d.domain_dim, d.codomain_dim));
    }
    let mut checks = BTreeMap::new();
    checks.insert("unit_iso".to_string(), unit.per_degree.iter().all(DegreeRank::iso));
    checks.insert("counit_iso".to_string(), counit.per_degree.iter().all(DegreeRank::iso));
    Ok(MilnorMooreReport {
        verdict: witnesses.is_empty(),
        window: window.iter().map(|d| lie.monoid().name(d)).collect(),
        lie_cap: env.cap,
        unit: unit.per_degree,
        counit: counit.per_degree,
        checks,
        witnesses,
    })
}

/// Builds `Z(L)` and checks that it is left-sided and generated by grouplikes
/// and generalized primitives, and that `L -> GP_*(Z L)` is bijective in
/// every degree of the window.
pub fn verify_mm_left_sided(lie: &SuspensiveLieAlgebra, window: &DegreeWindow, lie_cap: Option<usize>) -> Result<MilnorMooreReport> {
    require_char_zero(lie)?;
    if !lie.monoid().is_linear() {
        return Err(MilnorMooreError::NonLinearMonoid);
    }
    let flags = lie.torsion_flags(window)?;
    match flags.torsion {
        Some(true) => {}
        Some(false) => {
            return Err(MilnorMooreError::NonTorsionInput {
                witness: flags.nonzero_action_witness.unwrap_or_default(),
            })
        }
        None => return Err(MilnorMooreError::Undecided(format!("torsion; {} is unknown", flags.missing_degree.unwrap_or_default()))),
    }
    let z = build_z(lie, window, lie_cap)?;
    let left = is_left_sided(&z.algebra)?;
    let gpg = is_gpg(&z.algebra)?;
    let unit = unit_map_z(&z)?;
    let mut witnesses = Vec::new();
    if let Some(w) = &z.bi_ideal_violation {
        witnesses.push(w.clone());
    }
    if left.verdict != Verdict::True {
        witnesses.push(left.witness.clone().unwrap_or_else(|| format!("left-sidedness is {}", left.verdict)));
    }
    if gpg.verdict != Verdict::True {
        witnesses.push(format!(
            "generated {} of {} dimensions; first missing {}",
            gpg.generated_dim,
            gpg.total_dim,
            gpg.missing.clone().unwrap_or_default()
        ));
    }
    for d in unit.per_degree.iter().filter(|d| !d.iso()) {
        witnesses.push(format!("unit map in degree {} has rank {} for dimensions {} -> {}", d.degree, d.rank, d.domain_dim, d.codomain_dim));
    }
    let mut checks = BTreeMap::new();
    checks.insert("bi_ideal".to_string(), z.bi_ideal_violation.is_none());
    checks.insert("left_sided".to_string(), left.verdict == Verdict::True);
    checks.insert("gpg".to_string(), gpg.verdict == Verdict::True);
    checks.insert("unit_iso".to_string(), unit.per_degree.iter().all(DegreeRank::iso));
    Ok(MilnorMooreReport {
        verdict: witnesses.is_empty(),
        window: window.iter().map(|d| lie.monoid().name(d)).collect(),
        lie_cap: z.w.cap,
        unit: unit.per_degree,
        counit: Vec::new(),
        checks,
        witnesses,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InjectivityReport {
    pub map_injective: bool,
    pub gp_injective: bool,
    pub agree: bool,
}

/// Compares injectivity of `f` with injectivity of `f` on generalized
/// primitives. The domain must be generated by grouplikes and generalized
/// primitives.
pub fn check_gp_injectivity_criterion(domain: &PresentedBialgebra, codomain: &PresentedBialgebra, f: &BialgebraMorphism) -> Result<InjectivityReport> {
    match is_gpg(domain)?.verdict {
        Verdict::True => {}
        Verdict::False => return Err(MilnorMooreError::NotGpg),
        Verdict::Indeterminate => return Err(MilnorMooreError::Undecided("generation by primitives".into())),
    }
    let map_injective = f.is_injective(codomain)?;
    let mut gp_injective = true;
    for vs in gp_spaces(domain)?.into_values() {
        let images: Vec<SparseVector> = vs.iter().map(|v| f.apply(v)).collect();
        if rank_of(domain.field(), &images, codomain.dim())? < vs.len() {
            gp_injective = false;
        }
    }
    Ok(InjectivityReport {
        map_injective,
        gp_injective,
        agree: map_injective == gp_injective,
    })
}
