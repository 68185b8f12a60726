//! Named example algebras and seeded random families used by the tests,
//! examples and the command line tool.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bialgebra::{PresentedBialgebra, Product, RigidStructure, TensorSquareElement};
use crate::linalg::{Field, Scalar, SparseVector};
use crate::monoid::{Monoid, MonoidElement};
use crate::suspensive::SuspensiveLieAlgebra;

fn q(n: i64) -> Scalar {
    Field::Rational.from_i64(n)
}

fn unit(i: usize) -> SparseVector {
    SparseVector::unit(i, Field::Rational)
}

/// One copy of the ground field in each degree `s^n`, `n <= top`, permuted
/// freely by the generator; zero bracket.
pub fn free_line(top: u32) -> SuspensiveLieAlgebra {
    let g = Monoid::free_rank1("s");
    let basis = (0..=top).map(|n| (format!("x{n}"), MonoidElement(n))).collect();
    let mut l = SuspensiveLieAlgebra::new(Field::Rational, g, basis, Some(top)).expect("valid basis");
    for n in 0..top as usize {
        l.set_action(MonoidElement(1), n, unit(n + 1)).expect("valid action");
    }
    l
}

/// A single `x` in degree `Q` with `Q . x = 0`.
pub fn torsion_line() -> SuspensiveLieAlgebra {
    let g = Monoid::free_rank1("Q");
    SuspensiveLieAlgebra::new(Field::Rational, g, vec![("x".into(), MonoidElement(1))], None).expect("valid basis")
}

/// `x, y` in degree `Q` with `[x, y] = z` in degree `Q^2` and zero action.
pub fn heisenberg_torsion() -> SuspensiveLieAlgebra {
    let g = Monoid::free_rank1("Q");
    let basis = vec![
        ("x".into(), MonoidElement(1)),
        ("y".into(), MonoidElement(1)),
        ("z".into(), MonoidElement(2)),
    ];
    let mut l = SuspensiveLieAlgebra::new(Field::Rational, g, basis, None).expect("valid basis");
    l.set_bracket(0, 1, unit(2)).expect("valid bracket");
    l
}

/// The commutative monoid `{1, a, b, z}` with `a, b` idempotent and `ab = z`
/// absorbing. Neither of `a`, `b` divides the other.
pub fn nonlinear_monoid() -> Monoid {
    let names = ["1", "a", "b", "z"].iter().map(|s| s.to_string()).collect();
    let table = vec![vec![0, 1, 2, 3], vec![1, 1, 3, 3], vec![2, 3, 2, 3], vec![3, 3, 3, 3]];
    Monoid::finite_table(names, 0, table).expect("valid table")
}

/// A torsion algebra over the nonlinear monoid: `u` in degree `a`, zero action
/// except the identity.
pub fn nonlinear_torsion() -> SuspensiveLieAlgebra {
    let m = nonlinear_monoid();
    let mut l = SuspensiveLieAlgebra::new(Field::Rational, m, vec![("u".into(), MonoidElement(1))], None).expect("valid basis");
    for g in 1..4 {
        l.set_action(MonoidElement(g), 0, SparseVector::zero()).expect("valid action");
    }
    l
}

/// A seeded random source of fixtures.
pub struct FixtureRng {
    rng: ChaCha8Rng,
    pub seed: u64,
}

impl FixtureRng {
    pub fn new(seed: u64) -> Self {
        FixtureRng {
            rng: ChaCha8Rng::seed_from_u64(seed),
            seed,
        }
    }

    fn small(&mut self, choices: &[i64]) -> Scalar {
        q(*choices.choose(&mut self.rng).expect("nonempty"))
    }

    /// Structure constants of a Lie algebra of dimension 1 to 3 over `Q`,
    /// as `c[(i, j)]` for `i < j`.
    fn lie_constants(&mut self) -> (usize, Vec<((usize, usize), SparseVector)>) {
        loop {
            let n = self.rng.gen_range(1..=3);
            let mut c = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    let v = SparseVector::from_pairs((0..n).map(|k| (k, self.small(&[0, 0, 1, -1, 2]))));
                    c.push(((i, j), v));
                }
            }
            if jacobi_holds(n, &c) {
                return (n, c);
            }
        }
    }

    /// `kG (x) g` for a group `G` given as a table, twisted by a sign
    /// character, in a random unitriangular basis of each degree.
    pub fn group_current_algebra(&mut self, monoid: Monoid) -> SuspensiveLieAlgebra {
        let order = monoid.order().expect("finite group");
        let (n, consts) = self.lie_constants();
        let character: Vec<i64> = if order.is_multiple_of(2) && self.rng.gen_bool(0.5) {
            sign_character(&monoid)
        } else {
            vec![1; order]
        };
        // Basis g (x) e_i at index g * n + i before the change of basis.
        let idx = |g: u32, i: usize| g as usize * n + i;
        let mut basis = Vec::new();
        for g in 0..order as u32 {
            for i in 0..n {
                basis.push((format!("{}_{}", monoid.name(MonoidElement(g)).replace('^', ""), i), MonoidElement(g)));
            }
        }
        let dim = basis.len();
        // New basis f_{g,i} = e_{g,i} + sum_{j > i} t e_{g,j}; keep the inverse.
        let mut forward = vec![SparseVector::zero(); dim];
        for g in 0..order as u32 {
            for i in 0..n {
                let mut v = SparseVector::unit(idx(g, i), Field::Rational);
                for j in (i + 1)..n {
                    v = v.add(&SparseVector::unit(idx(g, j), Field::Rational).scale(&self.small(&[0, 1, -1, 2])));
                }
                forward[idx(g, i)] = v;
            }
        }
        let inverse = invert_unitriangular(&forward);
        let mut l = SuspensiveLieAlgebra::new(Field::Rational, monoid.clone(), basis, None).expect("valid basis");
        let to_new = |v: &SparseVector| -> SparseVector {
            let mut out = SparseVector::zero();
            for (k, c) in v.iter() {
                out = out.add_scaled(&inverse[k], c);
            }
            out
        };
        for h in 0..order as u32 {
            let hm = MonoidElement(h);
            if hm == monoid.identity() {
                continue;
            }
            let sign = q(character[h as usize]);
            for b in 0..dim {
                let mut image = SparseVector::zero();
                for (k, c) in forward[b].iter() {
                    let (g, i) = ((k / n) as u32, k % n);
                    let target = monoid.mul(hm, MonoidElement(g));
                    image = image.add_scaled(&SparseVector::unit(idx(target.0, i), Field::Rational), &(c * &sign));
                }
                l.set_action(hm, b, to_new(&image)).expect("valid action");
            }
        }
        for a in 0..dim {
            for b in (a + 1)..dim {
                let mut value = SparseVector::zero();
                for (k1, c1) in forward[a].iter() {
                    for (k2, c2) in forward[b].iter() {
                        let (g1, i1) = ((k1 / n) as u32, k1 % n);
                        let (g2, i2) = ((k2 / n) as u32, k2 % n);
                        let gg = monoid.mul(MonoidElement(g1), MonoidElement(g2));
                        let inner = bracket_of(&consts, i1, i2);
                        for (k, c) in inner.iter() {
                            value = value.add_scaled(&SparseVector::unit(idx(gg.0, k), Field::Rational), &(&(c1 * c2) * c));
                        }
                    }
                }
                if !value.is_zero() {
                    l.set_bracket(a, b, to_new(&value)).expect("valid bracket");
                }
            }
        }
        l
    }

    /// `g (x) t k[t]` over the free monoid: `e_i t^n` in degree `Q^n` for
    /// `1 <= n <= top`, `Q` multiplying by `t`, bracket `[x t^a, y t^b] = [x, y] t^{a+b}`.
    /// The action is injective, so the algebra is torsion-free.
    pub fn free_current_algebra(&mut self, top: u32) -> SuspensiveLieAlgebra {
        let (n, consts) = self.lie_constants();
        let g = Monoid::free_rank1("Q");
        let idx = |d: u32, i: usize| (d as usize - 1) * n + i;
        let basis = (1..=top)
            .flat_map(|d| (0..n).map(move |i| (format!("e{i}t{d}"), MonoidElement(d))))
            .collect();
        let mut l = SuspensiveLieAlgebra::new(Field::Rational, g, basis, Some(top)).expect("valid basis");
        for d in 1..top {
            for i in 0..n {
                l.set_action(MonoidElement(1), idx(d, i), unit(idx(d + 1, i))).expect("valid action");
            }
        }
        for d1 in 1..=top {
            for d2 in 1..=top {
                if d1 + d2 > top {
                    continue;
                }
                for i in 0..n {
                    for j in 0..n {
                        if (d1, i) >= (d2, j) {
                            continue;
                        }
                        let v = bracket_of(&consts, i, j).remap(|k| Some(idx(d1 + d2, k)));
                        if !v.is_zero() {
                            l.set_bracket(idx(d1, i), idx(d2, j), v).expect("valid bracket");
                        }
                    }
                }
            }
        }
        l
    }

    /// A torsion algebra over the free monoid, populated in degrees
    /// `Q..Q^top` and known to vanish through `Q^{2 top}`.
    ///
    /// Either abelian with a random generator action subject to
    /// `Q^n . L_{Q^n} = 0`, or with zero action and brackets from pairs of
    /// distinct degrees into a central part.
    pub fn torsion_algebra(&mut self, top: u32) -> SuspensiveLieAlgebra {
        if self.rng.gen_bool(0.5) {
            self.torsion_with_action(top)
        } else {
            self.torsion_with_bracket(top)
        }
    }

    fn torsion_with_action(&mut self, top: u32) -> SuspensiveLieAlgebra {
        loop {
            let dims: Vec<usize> = (1..=top).map(|_| self.rng.gen_range(0..=2)).collect();
            let mut basis = Vec::new();
            let mut start = vec![0; top as usize + 2];
            for d in 1..=top {
                start[d as usize] = basis.len();
                for i in 0..dims[d as usize - 1] {
                    basis.push((format!("v{d}_{i}"), MonoidElement(d)));
                }
            }
            start[top as usize + 1] = basis.len();
            if basis.is_empty() {
                continue;
            }
            let g = Monoid::free_rank1("Q");
            let mut l = SuspensiveLieAlgebra::new(Field::Rational, g, basis, Some(2 * top)).expect("valid basis");
            for d in 1..top as usize {
                for a in start[d]..start[d + 1] {
                    let image = SparseVector::from_pairs(
                        (start[d + 1]..start[d + 2]).map(|b| (b, self.small(&[0, 0, 1, -1, 2]))),
                    );
                    l.set_action(MonoidElement(1), a, image).expect("valid action");
                }
            }
            let window = l.monoid().enumerate_window(top as i64).expect("window");
            if l.torsion_flags(&window).map(|f| f.torsion == Some(true)).unwrap_or(false) {
                return l;
            }
        }
    }

    fn torsion_with_bracket(&mut self, top: u32) -> SuspensiveLieAlgebra {
        let g = Monoid::free_rank1("Q");
        let mut basis = Vec::new();
        let mut generators = Vec::new();
        for d in 1..=top / 2 + 1 {
            for i in 0..self.rng.gen_range(0..=2) {
                generators.push(basis.len());
                basis.push((format!("u{d}_{i}"), MonoidElement(d)));
            }
        }
        let mut centre = Vec::new();
        for d in 3..=top {
            for i in 0..self.rng.gen_range(0..=1) {
                centre.push(basis.len());
                basis.push((format!("c{d}_{i}"), MonoidElement(d)));
            }
        }
        if basis.is_empty() {
            basis.push(("u1_0".into(), MonoidElement(1)));
        }
        let degs: Vec<u32> = basis.iter().map(|(_, d)| d.0).collect();
        let mut l = SuspensiveLieAlgebra::new(Field::Rational, g, basis, Some(2 * top)).expect("valid basis");
        for (pos, &a) in generators.iter().enumerate() {
            for &b in &generators[pos + 1..] {
                if degs[a] == degs[b] {
                    continue;
                }
                let target = degs[a] + degs[b];
                let v = SparseVector::from_pairs(
                    centre.iter().filter(|&&c| degs[c] == target).map(|&c| (c, self.small(&[0, 1, -1, 3]))),
                );
                if !v.is_zero() {
                    l.set_bracket(a, b, v).expect("valid bracket");
                }
            }
        }
        l
    }
}

fn sign_character(monoid: &Monoid) -> Vec<i64> {
    // First nontrivial homomorphism to {1, -1}, by brute force.
    let order = monoid.order().expect("finite");
    for mask in 1u32..(1 << order) {
        let chi: Vec<i64> = (0..order).map(|g| if mask >> g & 1 == 1 { -1 } else { 1 }).collect();
        if chi[monoid.identity().0 as usize] != 1 {
            continue;
        }
        let hom = (0..order as u32).all(|a| {
            (0..order as u32).all(|b| chi[monoid.mul(MonoidElement(a), MonoidElement(b)).0 as usize] == chi[a as usize] * chi[b as usize])
        });
        if hom {
            return chi;
        }
    }
    vec![1; order]
}

fn bracket_of(consts: &[((usize, usize), SparseVector)], i: usize, j: usize) -> SparseVector {
    if i == j {
        return SparseVector::zero();
    }
    let (a, b, sign) = if i < j { (i, j, 1) } else { (j, i, -1) };
    consts
        .iter()
        .find(|(k, _)| *k == (a, b))
        .map(|(_, v)| v.scale(&q(sign)))
        .unwrap_or_default()
}

fn jacobi_holds(n: usize, consts: &[((usize, usize), SparseVector)]) -> bool {
    let br = |u: &SparseVector, v: &SparseVector| {
        let mut out = SparseVector::zero();
        for (i, a) in u.iter() {
            for (j, b) in v.iter() {
                out = out.add_scaled(&bracket_of(consts, i, j), &(a * b));
            }
        }
        out
    };
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let (x, y, z) = (unit(a), unit(b), unit(c));
                let s = br(&x, &br(&y, &z)).add(&br(&y, &br(&z, &x))).add(&br(&z, &br(&x, &y)));
                if !s.is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

fn invert_unitriangular(forward: &[SparseVector]) -> Vec<SparseVector> {
    // forward[b] = e_b + (terms of larger index in the same block); solve
    // e_b = forward[b] - sum c e_k from the largest index down.
    let dim = forward.len();
    let mut inverse = vec![SparseVector::zero(); dim];
    for b in (0..dim).rev() {
        let mut v = SparseVector::unit(b, Field::Rational);
        for (k, c) in forward[b].iter() {
            if k != b {
                v = v.sub(&inverse[k].scale(c));
            }
        }
        inverse[b] = v;
    }
    inverse
}

/// Sweedler's four-dimensional Hopf algebra over `Q`: not cocommutative.
pub fn sweedler() -> PresentedBialgebra {
    let names: Vec<String> = ["1", "g", "x", "gx"].iter().map(|s| s.to_string()).collect();
    // g^2 = 1, x^2 = 0, xg = -gx.
    let table = [
        [Some((0, 1)), Some((1, 1)), Some((2, 1)), Some((3, 1))],
        [Some((1, 1)), Some((0, 1)), Some((3, 1)), Some((2, 1))],
        [Some((2, 1)), Some((3, -1)), None, None],
        [Some((3, 1)), Some((2, -1)), None, None],
    ];
    let mult = table
        .iter()
        .map(|row| {
            row.iter()
                .map(|e| {
                    Product::Defined(match e {
                        Some((k, c)) => SparseVector::from_pairs([(*k, q(*c))]),
                        None => SparseVector::zero(),
                    })
                })
                .collect()
        })
        .collect();
    let t = |pairs: &[((usize, usize), i64)]| TensorSquareElement::from_terms(pairs.iter().map(|&(k, c)| (k, q(c))));
    let comult = vec![
        t(&[((0, 0), 1)]),
        t(&[((1, 1), 1)]),
        t(&[((2, 0), 1), ((1, 2), 1)]),
        t(&[((3, 1), 1), ((0, 3), 1)]),
    ];
    PresentedBialgebra::new(
        Field::Rational,
        names,
        vec![None; 4],
        unit(0),
        vec![q(1), q(1), q(0), q(0)],
        mult,
        comult,
        None,
    )
    .expect("valid tables")
}

/// `k[a]` smashed with `C2` acting by `a -> -a`, truncated at `a^2`, with `a`
/// primitive in degree 1 and the group element in degree `s`.
///
/// The grouplike `s` anticommutes with `a`, so the primitive `a` and the
/// `s`-primitive `s*a` violate primitive-grouplike compatibility.
pub fn truncated_smash() -> PresentedBialgebra {
    let c2 = Monoid::cyclic(2, "s");
    let index = |i: usize, j: usize| i * 3 + j;
    let mut names = Vec::new();
    let mut degrees = Vec::new();
    for i in 0..2 {
        for j in 0..3 {
            names.push(match (i, j) {
                (0, 0) => "1".to_string(),
                (1, 0) => "s".to_string(),
                (0, j) => if j == 1 { "a".to_string() } else { format!("a^{j}") },
                (_, j) => if j == 1 { "s*a".to_string() } else { format!("s*a^{j}") },
            });
            degrees.push(Some(MonoidElement(i as u32)));
        }
    }
    let n = names.len();
    let mut mult = vec![vec![Product::Overflow; n]; n];
    for (i, j) in (0..2).flat_map(|i| (0..3).map(move |j| (i, j))) {
        for (k, l) in (0..2).flat_map(|k| (0..3).map(move |l| (k, l))) {
            if j + l > 2 {
                continue;
            }
            let sign = if j * k % 2 == 1 { -1 } else { 1 };
            mult[index(i, j)][index(k, l)] = Product::Defined(SparseVector::from_pairs([(index((i + k) % 2, j + l), q(sign))]));
        }
    }
    let binom = |a: usize, b: usize| -> i64 { (1..=b).fold(1, |acc, t| acc * (a + 1 - t) as i64 / t as i64) };
    let comult = (0..2)
        .flat_map(|i| (0..3).map(move |j| (i, j)))
        .map(|(i, j)| TensorSquareElement::from_terms((0..=j).map(|m| ((index(i, m), index(i, j - m)), q(binom(j, m))))))
        .collect();
    let counit = (0..n).map(|k| if k % 3 == 0 { q(1) } else { q(0) }).collect();
    let eta = [(MonoidElement(0), 0), (MonoidElement(1), 3)].into_iter().collect();
    let rigid = RigidStructure::new(c2, eta).expect("valid rigid structure");
    PresentedBialgebra::new(Field::Rational, names, degrees, unit(0), counit, mult, comult, Some(rigid)).expect("valid tables")
}
