use suspla::fixtures::{free_line, heisenberg_torsion, torsion_line};

fn main() {
    for (label, lie) in [("free line", free_line(6)), ("torsion line", torsion_line()), ("heisenberg", heisenberg_torsion())] {
        let w = lie.monoid().enumerate_window(3).unwrap();
        let report = lie.check_suspensive(&w).unwrap();
        let flags = lie.torsion_flags(&w).unwrap();
        println!("{label}: dim {}, suspensive {}", lie.dim(), report.passed);
        println!("  torsion-free {:?}, torsion {:?}", flags.torsion_free, flags.torsion);
        if let Some(t) = flags.torsion_witness {
            println!("  {t}");
        }
    }
    println!("{}", torsion_line().to_json());
}
