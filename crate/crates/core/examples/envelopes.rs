use suspla::enveloping::{build_w, build_z};
use suspla::fixtures::{free_line, torsion_line};

fn main() {
    let lie = free_line(3);
    let w = lie.monoid().enumerate_window(3).unwrap();
    let env = build_w(&lie, &w, Some(3)).unwrap();
    for (d, n) in env.degree_dims() {
        println!("W, degree {}: {n}", lie.monoid().name(d));
    }

    let lie = torsion_line();
    let w = lie.monoid().enumerate_window(5).unwrap();
    let env = build_w(&lie, &w, None).unwrap();
    let z = build_z(&lie, &w, None).unwrap();
    let zdims = z.degree_dims();
    for (d, n) in env.degree_dims() {
        println!("degree {}: W {n}, Z {}", lie.monoid().name(d), zdims[&d]);
    }
    println!("basis of W: {}", env.algebra.names().join(" "));
    println!("basis of Z: {}", z.algebra.names().join(" "));
}
