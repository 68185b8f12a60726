use suspla::bialgebra::{gp_spaces, s_n, TensorSquareElement};
use suspla::enveloping::build_w;
use suspla::fixtures::FixtureRng;
use suspla::linalg::SparseVector;
use suspla::suspensive::SuspensiveLieAlgebra;

fn main() {
    let mut rng = FixtureRng::new(17);
    for _ in 0..3 {
        show(&rng.torsion_algebra(4));
    }
}

fn show(lie: &SuspensiveLieAlgebra) {
    let w = lie.monoid().enumerate_window(4).unwrap();
    let env = build_w(lie, &w, None).unwrap();
    let a = &env.algebra;
    let r = a.rigid().unwrap();
    let gens: Vec<_> = gp_spaces(a).unwrap().into_iter().flat_map(|(q, vs)| vs.into_iter().map(move |v| (v, q))).collect();
    for x in &gens {
        for y in &gens {
            let pair = [x.clone(), y.clone()];
            let Ok(s) = s_n(a, &pair) else { continue };
            let d = r.monoid.mul(x.1, y.1);
            let xy = a.mul(&x.0, &y.0).unwrap();
            let g = SparseVector::unit(r.image(d).unwrap(), a.field());
            let reduced = a.comul(&xy).sub(&TensorSquareElement::pure(&g, &xy)).sub(&TensorSquareElement::pure(&xy, &g));
            println!("({}) ({}): s_2 = {}, matches {}", a.format(&x.0), a.format(&y.0), a.format_tensor(&s), s == reduced);
        }
    }
}
