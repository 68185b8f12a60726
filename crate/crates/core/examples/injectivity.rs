use suspla::enveloping::build_w;
use suspla::fixtures::FixtureRng;
use suspla::milnor_moore::{check_gp_injectivity_criterion, counit_map, BialgebraMorphism};
use suspla::monoid::Monoid;

fn main() {
    let mut rng = FixtureRng::new(8);
    let lie = rng.group_current_algebra(Monoid::cyclic(3, "g"));
    let w = lie.monoid().enumerate_window(0).unwrap();
    let env = build_w(&lie, &w, Some(2)).unwrap();
    let id = BialgebraMorphism::identity(&env.algebra);
    let r = check_gp_injectivity_criterion(&env.algebra, &env.algebra, &id).unwrap();
    println!("identity: injective {}, on primitives {}", r.map_injective, r.gp_injective);
    let c = counit_map(&env.algebra, Some(2)).unwrap();
    let r = check_gp_injectivity_criterion(&c.envelope.algebra, &env.algebra, &c.morphism).unwrap();
    println!("counit: injective {}, on primitives {}, agree {}", r.map_injective, r.gp_injective, r.agree);
}
