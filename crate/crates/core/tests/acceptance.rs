//! End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use suspla::bialgebra::{
    check_bialgebra, dual_cyclic_group_algebra, gp_basis, gp_spaces, grouplikes_of_dual_cyclic_group_algebra, is_gpg,
    s_n, BialgebraError, PresentedBialgebra, TensorSquareElement, Verdict,
};
use suspla::dyer_lashof::{verify_left_sided_e0, DlElement, DyerLashof, Generator, Monomial, RewriteOrder};
use suspla::enveloping::{assoc_graded, build_w, build_z, sym_power_kg, Envelope};
use suspla::fixtures::{free_line, nonlinear_torsion, torsion_line, FixtureRng};
use suspla::linalg::{rref, Field, SparseVector};
use suspla::milnor_moore::{
    check_gp_injectivity_criterion, counit_map, extend_lie_map, restrict, unit_map, unit_map_z, verify_mm_left_sided,
    verify_mm_torsion_free, BialgebraMorphism, MilnorMooreError,
};
use suspla::monoid::{DegreeWindow, Monoid, MonoidElement};
use suspla::suspensive::{SuspensiveLieAlgebra, SuspensiveMorphism};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn q(n: u32) -> MonoidElement {
    MonoidElement(n)
}

/// A fixture together with its window and word-length cap.
struct Case {
    lie: SuspensiveLieAlgebra,
    window: DegreeWindow,
    cap: Option<usize>,
}

fn finite_case(rng: &mut FixtureRng, m: Monoid) -> Case {
    let lie = rng.group_current_algebra(m);
    let window = lie.monoid().enumerate_window(0).unwrap();
    Case { lie, window, cap: Some(2) }
}

fn free_case(rng: &mut FixtureRng) -> Case {
    let lie = rng.free_current_algebra(6);
    let window = lie.monoid().enumerate_window(3).unwrap();
    Case { lie, window, cap: None }
}

fn torsion_case(rng: &mut FixtureRng) -> Case {
    let lie = rng.torsion_algebra(4);
    let window = lie.monoid().enumerate_window(4).unwrap();
    Case { lie, window, cap: None }
}

fn torsion_free_cases() -> Vec<Case> {
    let mut rng = FixtureRng::new(2024);
    (0..21)
        .map(|k| match k % 3 {
            0 => finite_case(&mut rng, Monoid::cyclic(2, "s")),
            1 => finite_case(&mut rng, Monoid::cyclic(3, "g")),
            _ => free_case(&mut rng),
        })
        .collect()
}

fn finite_group_cases() -> Vec<Case> {
    let mut rng = FixtureRng::new(4048);
    (0..10)
        .map(|k| if k % 2 == 0 { finite_case(&mut rng, Monoid::cyclic(2, "s")) } else { finite_case(&mut rng, Monoid::klein_four()) })
        .collect()
}

fn torsion_cases() -> Vec<Case> {
    let mut rng = FixtureRng::new(8096);
    (0..20).map(|_| torsion_case(&mut rng)).collect()
}

fn proportional(field: Field, a: &SparseVector, b: &SparseVector, dim: usize) -> bool {
    !a.is_zero() && !b.is_zero() && rref(field, vec![a.clone(), b.clone()], dim).unwrap().rank() == 1
}

fn u_to_w() -> Outcome {
    let l = free_line(5);
    let w = l.monoid().enumerate_window(5).unwrap();
    let env = build_w(&l, &w, Some(5)).map_err(|e| e.to_string())?;
    // k[s, x0]: degree s^n is spanned by s^n x0^b for b <= cap.
    let dims: Vec<usize> = env.degree_dims().into_values().collect();
    ensure!(dims == vec![6; 6], "degree dims {dims:?}");
    for n in 0..=5 {
        for b in 0..=5 {
            let k = env.bidegree_dims().get(&(q(n), b)).copied().unwrap_or(0);
            ensure!(k == 1, "bidegree (s^{n}, {b}) has dim {k}");
        }
    }
    ensure!(check_bialgebra(&env.algebra).passed, "bialgebra axioms fail");
    Ok(format!("dims {dims:?}"))
}

fn non_tf() -> Outcome {
    let l = torsion_line();
    let w = l.monoid().enumerate_window(5).unwrap();
    let env = build_w(&l, &w, None).map_err(|e| e.to_string())?;
    // k[Q, x]/(Qx): degree Q^n is spanned by Q^n and x^n.
    let dims: Vec<usize> = env.degree_dims().into_values().collect();
    ensure!(dims == vec![1, 2, 2, 2, 2, 2], "degree dims {dims:?}");
    for n in 1..=5u32 {
        let basis = gp_basis(&env.algebra, q(n)).map_err(|e| e.to_string())?;
        let xn = env.word_element(q(0), &vec![0; n as usize]).map_err(|e| e.to_string())?;
        ensure!(basis.len() == 1, "gp in Q^{n} has dim {}", basis.len());
        ensure!(proportional(Field::Rational, &basis[0], &xn, env.algebra.dim()), "gp in Q^{n} is not spanned by x^{n}");
    }
    let unit = unit_map(&env).map_err(|e| e.to_string())?;
    ensure!(unit.injective(), "unit map not injective");
    ensure!(!unit.per_degree[2].surjective(), "unit map onto at Q^2");
    Ok(format!("dims {dims:?}, unit injective, cokernel at Q^2"))
}

fn verify_all_torsion_free(cases: &[Case]) -> Outcome {
    for (k, c) in cases.iter().enumerate() {
        let report = match verify_mm_torsion_free(&c.lie, &c.window, c.cap) {
            Ok(r) => r,
            Err(e) => return Err(format!("fixture {k}: {e}")),
        };
        ensure!(report.verdict, "fixture {k}: {:?}", report.witnesses);
    }
    Ok(format!("{} fixtures", cases.len()))
}

fn mm_torsion_free() -> Outcome {
    let cases = torsion_free_cases();
    for (k, c) in cases.iter().enumerate() {
        let flags = c.lie.torsion_flags(&c.window).map_err(|e| e.to_string())?;
        ensure!(flags.torsion_free == Some(true), "fixture {k} is not torsion-free");
    }
    verify_all_torsion_free(&cases)
}

fn mm_finite_groups() -> Outcome {
    verify_all_torsion_free(&finite_group_cases())
}

fn mm_left_sided() -> Outcome {
    let cases = torsion_cases();
    for (k, c) in cases.iter().enumerate() {
        let report = verify_mm_left_sided(&c.lie, &c.window, c.cap).map_err(|e| format!("fixture {k}: {e}"))?;
        for key in ["left_sided", "gpg", "unit_iso"] {
            ensure!(report.checks.get(key) == Some(&true), "fixture {k}: {key} fails: {:?}", report.witnesses);
        }
        ensure!(report.verdict, "fixture {k}: {:?}", report.witnesses);
    }
    let l = nonlinear_torsion();
    let w = l.monoid().enumerate_window(0).unwrap();
    match verify_mm_left_sided(&l, &w, Some(1)) {
        Err(MilnorMooreError::NonLinearMonoid) => {}
        other => return Err(format!("nonlinear monoid gave {other:?}")),
    }
    Ok(format!("{} fixtures, nonlinear monoid rejected", cases.len()))
}

fn pbw() -> Outcome {
    let mut cases = torsion_free_cases();
    cases.extend(finite_group_cases());
    cases.extend(torsion_cases());
    let line = torsion_line();
    let window = line.monoid().enumerate_window(5).unwrap();
    cases.push(Case { lie: line, window, cap: None });
    let line = free_line(5);
    let window = line.monoid().enumerate_window(5).unwrap();
    cases.push(Case { lie: line, window, cap: Some(5) });
    for (k, c) in cases.iter().enumerate() {
        let env = build_w(&c.lie, &c.window, c.cap).map_err(|e| format!("fixture {k}: {e}"))?;
        let bi = env.bidegree_dims();
        for n in 0..=env.cap {
            for (d, dim) in sym_power_kg(&c.lie, n, &c.window).map_err(|e| e.to_string())? {
                let got = bi.get(&(d, n)).copied().unwrap_or(0);
                ensure!(got == dim, "fixture {k}: bidegree ({}, {n}) has {got}, Sym gives {dim}", c.lie.monoid().name(d));
            }
        }
        let graded = assoc_graded(&env).map_err(|e| e.to_string())?;
        ensure!(graded.dim() == env.algebra.dim(), "fixture {k}: graded dimension differs");
        ensure!(check_bialgebra(&graded).passed, "fixture {k}: graded algebra fails the axioms");
    }
    Ok(format!("{} fixtures", cases.len()))
}

/// Lie self-maps of `lie`: identity, zero, scalings and `c^n` weights,
/// whichever are compatible with the structure.
fn lie_endomorphisms(lie: &SuspensiveLieAlgebra, window: &DegreeWindow) -> Vec<SuspensiveMorphism> {
    let f = Field::Rational;
    let id = SuspensiveMorphism::identity(lie);
    let mut out = vec![id.clone(), SuspensiveMorphism::zero(lie.dim())];
    for c in [f.from_i64(2), f.from_i64(-1), f.from_ratio(1, 2)] {
        let scaled = id.scaled(&c);
        if scaled.check(lie, lie, window).unwrap().is_empty() {
            out.push(scaled);
        }
        if lie.monoid().is_finite() {
            continue;
        }
        let weighted = SuspensiveMorphism {
            images: (0..lie.dim()).map(|i| SparseVector::unit(i, f).scale(&(0..lie.degree(i).0).fold(f.one(), |acc, _| &acc * &c))).collect(),
        };
        if weighted.check(lie, lie, window).unwrap().is_empty() {
            out.push(weighted);
        }
    }
    out
}

fn adjunction_round_trip(env: &Envelope, target: &PresentedBialgebra, gp: &suspla::bialgebra::GpLie, f: &SuspensiveMorphism) -> Outcome {
    let h = extend_lie_map(env, target, gp, f).map_err(|e| e.to_string())?;
    let bad = h.check(&env.algebra, target);
    ensure!(bad.is_empty(), "extension is not a bialgebra map: {bad:?}");
    let back = restrict(env, gp, &h).map_err(|e| e.to_string())?;
    ensure!(&back == f, "restriction of the extension differs");
    let again = extend_lie_map(env, target, gp, &back).map_err(|e| e.to_string())?;
    ensure!(again == h, "extension of the restriction differs");
    Ok(String::new())
}

fn adjunction() -> Outcome {
    let mut samples = 0;
    let mut cases: Vec<Case> = torsion_free_cases().into_iter().take(6).collect();
    cases.extend(torsion_cases().into_iter().take(6));
    let line = free_line(3);
    let window = line.monoid().enumerate_window(3).unwrap();
    cases.push(Case { lie: line, window, cap: Some(3) });
    for (k, c) in cases.iter().enumerate() {
        let env = build_w(&c.lie, &c.window, c.cap).map_err(|e| e.to_string())?;
        let unit = unit_map(&env).map_err(|e| e.to_string())?;
        for g in lie_endomorphisms(&c.lie, &c.window) {
            let f = g.then(&unit.morphism);
            adjunction_round_trip(&env, &env.algebra, &unit.gp, &f).map_err(|e| format!("fixture {k}: {e}"))?;
            samples += 1;
        }
        // Restricting a bialgebra map and extending it back.
        let id = BialgebraMorphism::identity(&env.algebra);
        let back = extend_lie_map(&env, &env.algebra, &unit.gp, &restrict(&env, &unit.gp, &id).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        ensure!(back == id, "fixture {k}: identity does not round trip");
        samples += 1;
        if !c.lie.monoid().is_finite() && c.cap.is_none() {
            let z = build_z(&c.lie, &c.window, None).map_err(|e| e.to_string())?;
            let proj = BialgebraMorphism { images: z.projection.clone() };
            let gz = unit_map_z(&z).map_err(|e| e.to_string())?.gp;
            let alpha = restrict(&z.w, &gz, &proj).map_err(|e| e.to_string())?;
            let beta = extend_lie_map(&z.w, &z.algebra, &gz, &alpha).map_err(|e| e.to_string())?;
            ensure!(beta == proj, "fixture {k}: projection does not round trip");
            samples += 1;
        }
    }
    ensure!(samples >= 50, "only {samples} samples");
    Ok(format!("{samples} morphisms"))
}

fn injectivity() -> Outcome {
    let mut samples = 0;
    let mut injective = 0;
    let mut cases: Vec<Case> = torsion_free_cases().into_iter().take(6).collect();
    cases.extend(torsion_cases().into_iter().take(4));
    for (k, c) in cases.iter().enumerate() {
        let env = build_w(&c.lie, &c.window, c.cap).map_err(|e| e.to_string())?;
        ensure!(is_gpg(&env.algebra).unwrap().verdict == Verdict::True, "fixture {k}: domain is not gpg");
        let unit = unit_map(&env).map_err(|e| e.to_string())?;
        let mut maps = Vec::new();
        for g in lie_endomorphisms(&c.lie, &c.window) {
            maps.push((extend_lie_map(&env, &env.algebra, &unit.gp, &g.then(&unit.morphism)).map_err(|e| e.to_string())?, &env.algebra));
        }
        let counit = counit_map(&env.algebra, c.cap).map_err(|e| e.to_string())?;
        let report = check_gp_injectivity_criterion(&counit.envelope.algebra, &env.algebra, &counit.morphism).map_err(|e| e.to_string())?;
        ensure!(report.agree, "fixture {k}: counit verdicts disagree");
        samples += 1;
        let z = if c.lie.monoid().is_finite() { None } else { Some(build_z(&c.lie, &c.window, c.cap).map_err(|e| e.to_string())?) };
        if let Some(z) = &z {
            maps.push((BialgebraMorphism { images: z.projection.clone() }, &z.algebra));
        }
        for (h, target) in maps {
            let report = check_gp_injectivity_criterion(&env.algebra, target, &h).map_err(|e| e.to_string())?;
            ensure!(report.agree, "fixture {k}: map injective {} but GP injective {}", report.map_injective, report.gp_injective);
            injective += report.map_injective as usize;
            samples += 1;
        }
    }
    ensure!(samples >= 20, "only {samples} samples");
    Ok(format!("{samples} morphisms, {injective} injective"))
}

fn dual_group_algebras() -> Outcome {
    let three = dual_cyclic_group_algebra(3, Field::Rational).map_err(|e| e.to_string())?;
    let g3 = grouplikes_of_dual_cyclic_group_algebra(3, Field::Rational);
    ensure!(g3 == vec![three.unit().clone()], "grouplikes of Q[C3]^* are {g3:?}");
    let prim: usize = gp_spaces(&three).map_err(|e| e.to_string())?.values().map(Vec::len).sum();
    ensure!(prim == 0, "Q[C3]^* has {prim} primitives");
    ensure!(is_gpg(&three).unwrap().verdict == Verdict::False, "Q[C3]^* reported gpg");
    // In the basis of delta functions, the sign character is d_0 - d_1.
    let g2 = grouplikes_of_dual_cyclic_group_algebra(2, Field::Rational);
    let two = dual_cyclic_group_algebra(2, Field::Rational).map_err(|e| e.to_string())?;
    ensure!(g2.len() == 2 && g2[0] == *two.unit(), "grouplikes of Q[C2]^* are {g2:?}");
    let sign = two.unit().sub(&SparseVector::unit(1, Field::Rational).scale(&Field::Rational.from_i64(2)));
    ensure!(g2[1] == sign, "second grouplike of Q[C2]^* is {:?}", g2[1]);
    Ok("C3: {1}, no primitives, not gpg; C2: {1, -1}".into())
}

fn random_word(rng: &mut ChaCha8Rng, r: &DyerLashof) -> Monomial {
    loop {
        let len = rng.gen_range(1..=4);
        let word = Monomial(
            (0..len)
                .map(|_| {
                    if r.p() == 2 {
                        Generator::q(rng.gen_range(0..=12))
                    } else {
                        Generator { bockstein: rng.gen_bool(0.5), index: rng.gen_range(0..=3) }
                    }
                })
                .collect(),
        );
        if r.degree(&word) <= r.degree_cap() && r.validate(&word).is_ok() {
            return word;
        }
    }
}

fn dl_suite_at(p: u64, rng: &mut ChaCha8Rng) -> Outcome {
    let r = DyerLashof::new(p, 0, 24).map_err(|e| e.to_string())?;
    let mut words = Vec::new();
    for _ in 0..1000 {
        let w = random_word(rng, &r);
        let x = DlElement::monomial(w.clone());
        let left = r.normalize_with(&x, RewriteOrder::Leftmost).map_err(|e| format!("{w}: {e}"))?;
        let right = r.normalize_with(&x, RewriteOrder::Rightmost).map_err(|e| format!("{w}: {e}"))?;
        ensure!(left == right, "p={p}: strategies differ on {w}");
        for (v, _) in left.terms() {
            ensure!(r.is_admissible(v) && r.degree(v) == r.degree(&w), "p={p}: bad normal form of {w}");
        }
        words.push(w);
    }
    let mut generators = Vec::new();
    for i in 0..=24u32 {
        for b in [false, true] {
            let g = Generator { bockstein: b, index: i };
            let m = Monomial(vec![g]);
            if (p == 2 && b) || r.degree(&m) > 24 {
                continue;
            }
            generators.push(m);
        }
    }
    for m in generators.iter().chain(words.iter().take(200)) {
        let x = r.normalize_monomial(m).map_err(|e| e.to_string())?;
        ensure!(r.is_coassociative_on(&x).map_err(|e| e.to_string())?, "p={p}: coproduct not coassociative on {m}");
        ensure!(r.is_multiplicative_on(m).map_err(|e| e.to_string())?, "p={p}: coproduct not multiplicative on {m}");
    }
    let q0 = DlElement::monomial(Monomial(vec![Generator::q(0)]));
    ensure!(r.augment(&q0) == 1, "p={p}: counit of Q0 is not 1");
    for i in 1..=6u32 {
        let qi = DlElement::monomial(Monomial(vec![Generator::q(i)]));
        if r.degree(&Monomial(vec![Generator::q(i)])) > 24 {
            break;
        }
        ensure!(r.multiply(&q0, &qi).map_err(|e| e.to_string())?.is_zero(), "p={p}: Q0 Q{i} is nonzero");
        let back = r.normalize(&DlElement::monomial(Monomial(vec![Generator::q(i), Generator::q(0)]))).map_err(|e| e.to_string())?;
        for (v, _) in back.terms() {
            ensure!(v.0.iter().all(|g| g.index > 0), "p={p}: Q{i} Q0 -> {back}");
        }
    }
    let report = verify_left_sided_e0(p, 24).map_err(|e| e.to_string())?;
    ensure!(report.violations.is_empty(), "p={p}: E0 products {:?}", report.violations);
    ensure!(report.q0_noncentral.is_empty(), "p={p}: Q0 not central on {:?}", report.q0_noncentral);
    Ok(format!("p={p}: {} generators, {} E0 pairs", generators.len(), report.pairs_checked))
}

fn dyer_lashof() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let two = dl_suite_at(2, &mut rng)?;
    let three = dl_suite_at(3, &mut rng)?;
    Ok(format!("{two}; {three}"))
}

fn s_n_identity_on(a: &PresentedBialgebra, n: usize) -> Result<usize, String> {
    let r = a.rigid().ok_or("not rigid")?;
    let gens: Vec<(SparseVector, MonoidElement)> =
        gp_spaces(a).map_err(|e| e.to_string())?.into_iter().flat_map(|(d, vs)| vs.into_iter().map(move |v| (v, d))).collect();
    let mut count = 0;
    let mut tuple = Vec::with_capacity(n);
    fn walk(
        a: &PresentedBialgebra,
        gens: &[(SparseVector, MonoidElement)],
        n: usize,
        tuple: &mut Vec<(SparseVector, MonoidElement)>,
        count: &mut usize,
        r: &suspla::bialgebra::RigidStructure,
    ) -> Result<(), String> {
        if tuple.len() == n {
            let d = r.monoid.product(tuple.iter().map(|(_, q)| *q));
            if !r.window.contains(d) {
                return Ok(());
            }
            // Products past the word-length cap are not computed.
            let p = match a.mul_all(&tuple.iter().map(|(v, _)| v.clone()).collect::<Vec<_>>()) {
                Err(BialgebraError::Overflow(_)) => return Ok(()),
                other => other.map_err(|e| e.to_string())?,
            };
            let s = s_n(a, tuple).map_err(|e| e.to_string())?;
            let g = SparseVector::unit(r.image(d).ok_or("degree outside the window")?, a.field());
            let expected = a.comul(&p).sub(&TensorSquareElement::pure(&g, &p)).sub(&TensorSquareElement::pure(&p, &g));
            if s != expected {
                return Err(format!("s_{n} differs on a tuple of degree {}", r.monoid.name(d)));
            }
            *count += 1;
            return Ok(());
        }
        for x in gens {
            tuple.push(x.clone());
            walk(a, gens, n, tuple, count, r)?;
            tuple.pop();
        }
        Ok(())
    }
    walk(a, &gens, n, &mut tuple, &mut count, r)?;
    Ok(count)
}

fn s_n_identity() -> Outcome {
    let mut algebras = Vec::new();
    let line = torsion_line();
    let w = line.monoid().enumerate_window(5).unwrap();
    algebras.push(build_w(&line, &w, None).map_err(|e| e.to_string())?.algebra);
    algebras.push(build_z(&line, &w, None).map_err(|e| e.to_string())?.algebra);
    for c in torsion_cases().into_iter().take(4).chain(torsion_free_cases().into_iter().take(3)) {
        algebras.push(build_w(&c.lie, &c.window, c.cap).map_err(|e| e.to_string())?.algebra);
    }
    let mut tuples = 0;
    for (k, a) in algebras.iter().enumerate() {
        for n in [2, 3] {
            tuples += s_n_identity_on(a, n).map_err(|e| format!("algebra {k}: {e}"))?;
        }
    }
    ensure!(tuples > 0, "no tuples in the window");
    Ok(format!("{} algebras, {tuples} tuples", algebras.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, fn() -> Outcome); 11] = [
        ("envelope of the free line is k[s, x0]", 5, u_to_w),
        ("envelope of the torsion line is k[Q, x]/(Qx)", 5, non_tf),
        ("unit and counit are isomorphisms for torsion-free algebras", 60, mm_torsion_free),
        ("unit and counit are isomorphisms over finite abelian groups", 30, mm_finite_groups),
        ("left-sided quotient recovers torsion algebras", 60, mm_left_sided),
        ("associated graded matches the symmetric algebra", 30, pbw),
        ("extension and restriction are inverse", 30, adjunction),
        ("injectivity is detected on generalized primitives", 30, injectivity),
        ("grouplikes of dual cyclic group algebras", 5, dual_group_algebras),
        ("Dyer-Lashof structure at p = 2 and p = 3", 120, dyer_lashof),
        ("s_n agrees with the reduced coproduct", 30, s_n_identity),
    ];
    let mut failed = 0;
    for (k, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or(e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or("panic".into()))
        });
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs(*budget);
        let line = match (&outcome, over) {
            (Ok(detail), false) => format!("PASS {:>2} {name}: {detail}", k + 1),
            (Ok(detail), true) => format!("FAIL {:>2} {name}: {detail}; over the {budget}s budget", k + 1),
            (Err(why), _) => format!("FAIL {:>2} {name}: {why}", k + 1),
        };
        failed += (outcome.is_err() || over) as usize;
        println!("{line} ({:.2}s)", elapsed.as_secs_f64());
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
