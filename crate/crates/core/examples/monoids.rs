use suspla::monoid::Monoid;

fn describe(m: &Monoid, bound: i64) {
    let w = m.enumerate_window(bound).unwrap();
    let names: Vec<String> = w.iter().map(|d| m.name(d)).collect();
    println!("elements {}", names.join(" "));
    println!("  group: {}, divisibility total: {}", m.is_group(), m.is_linear());
    for a in w.iter() {
        let above: Vec<String> = w.iter().filter(|&b| m.divides(a, b)).map(|b| m.name(b)).collect();
        println!("  {} divides {}", m.name(a), above.join(" "));
    }
}

fn main() {
    describe(&Monoid::cyclic(3, "g"), 0);
    describe(&Monoid::klein_four(), 0);
    describe(&Monoid::free_rank1("Q"), 3);
    let q = Monoid::free_rank1("Q");
    let x = q.parse_element("Q^2").unwrap();
    println!("Q^2 * Q^3 = {}", q.name(q.mul(x, q.pow(q.generator().unwrap(), 3))));
}
