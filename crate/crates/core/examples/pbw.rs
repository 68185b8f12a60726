use suspla::bialgebra::check_bialgebra;
use suspla::enveloping::{assoc_graded, build_w, sym_power_kg};
use suspla::fixtures::FixtureRng;
use suspla::monoid::Monoid;

fn main() {
    let mut rng = FixtureRng::new(5);
    let lie = rng.group_current_algebra(Monoid::cyclic(2, "g"));
    let w = lie.monoid().enumerate_window(0).unwrap();
    let env = build_w(&lie, &w, Some(3)).unwrap();
    let bi = env.bidegree_dims();
    for n in 0..=env.cap {
        for (d, k) in sym_power_kg(&lie, n, &w).unwrap() {
            let found = bi.get(&(d, n)).copied().unwrap_or(0);
            println!("level {n}, degree {}: filtration quotient {found}, symmetric power {k}", lie.monoid().name(d));
        }
    }
    let graded = assoc_graded(&env).unwrap();
    println!("associated graded is a bialgebra: {}", check_bialgebra(&graded).passed);
}
