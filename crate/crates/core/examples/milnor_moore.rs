use suspla::fixtures::{free_line, heisenberg_torsion, torsion_line};
use suspla::milnor_moore::{verify_mm_left_sided, verify_mm_torsion_free};

fn main() {
    let lie = free_line(6);
    let w = lie.monoid().enumerate_window(3).unwrap();
    let r = verify_mm_torsion_free(&lie, &w, Some(3)).unwrap();
    println!("torsion-free case: {} {:?}", r.verdict, r.checks);

    let w = torsion_line().monoid().enumerate_window(3).unwrap();
    match verify_mm_torsion_free(&torsion_line(), &w, None) {
        Ok(_) => println!("unexpected"),
        Err(e) => println!("rejected: {e}"),
    }
    for (label, lie) in [("torsion line", torsion_line()), ("heisenberg", heisenberg_torsion())] {
        let w = lie.monoid().enumerate_window(4).unwrap();
        let r = verify_mm_left_sided(&lie, &w, None).unwrap();
        println!("left-sided case, {label}: {} {:?}", r.verdict, r.checks);
        for wit in &r.witnesses {
            println!("  {wit}");
        }
    }
}
