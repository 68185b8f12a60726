use suspla::enveloping::build_w;
use suspla::fixtures::FixtureRng;
use suspla::milnor_moore::sample_adjunction;

fn main() {
    let mut rng = FixtureRng::new(3);
    let lie = rng.free_current_algebra(4);
    let w = lie.monoid().enumerate_window(2).unwrap();
    let env = build_w(&lie, &w, Some(2)).unwrap();
    for seed in 0..3 {
        let report = sample_adjunction(&env, seed, 5).unwrap();
        println!("seed {seed}: {} maps, {} failures", report.samples, report.failures.len());
    }
}
