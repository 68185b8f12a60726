use suspla::dyer_lashof::{verify_left_sided_e0, DlElement, DyerLashof, KAdicFiltration};

fn main() {
    let r = DyerLashof::new(2, 0, 12).unwrap();
    for s in ["Q2 Q2", "Q3 Q1", "Q5 Q2"] {
        let m = r.parse(s).unwrap();
        println!("{s} = {}", r.normalize(&DlElement::monomial(m)).unwrap());
    }
    let basis: Vec<String> = r.basis_in_degree(6, None).unwrap().iter().map(ToString::to_string).collect();
    println!("degree 6: {}", basis.join(", "));

    let r3 = DyerLashof::new(3, 0, 16).unwrap();
    let x = DlElement::monomial(r3.parse("bQ1").unwrap());
    println!("coproduct of bQ1 = {}", r3.coproduct(&x).unwrap());

    let filt = KAdicFiltration::new(&r3).unwrap();
    let q1 = DlElement::monomial(r3.parse("Q1").unwrap());
    let q2 = DlElement::monomial(r3.parse("Q2").unwrap());
    let p = filt.e0_multiply(&q1, &q2).unwrap();
    println!("Q1 * Q2 in the associated graded: {} (degree {}, level {})", p.value, p.degree, p.level);

    for p in [2, 3] {
        let report = verify_left_sided_e0(p, 12).unwrap();
        println!("p = {p}: {} pairs, left-sided {}", report.pairs_checked, report.passed);
    }
}
