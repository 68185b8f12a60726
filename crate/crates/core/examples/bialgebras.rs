use suspla::bialgebra::{check_bialgebra, check_pgc, dual_cyclic_group_algebra, grouplikes_of_dual_cyclic_group_algebra, is_cocommutative};
use suspla::fixtures::{sweedler, truncated_smash};
use suspla::linalg::Field;

fn main() {
    for (n, field) in [(2, Field::Rational), (3, Field::Rational), (3, Field::Prime(7)), (3, Field::Prime(5))] {
        let a = dual_cyclic_group_algebra(n, field).unwrap();
        let g = grouplikes_of_dual_cyclic_group_algebra(n, field);
        let listed: Vec<String> = g.iter().map(|v| a.format(v)).collect();
        println!("dual of C{n} over {field:?}: {} grouplikes: {}", g.len(), listed.join(", "));
    }
    let s = sweedler();
    println!("sweedler: axioms {}, cocommutative {}", check_bialgebra(&s).passed, is_cocommutative(&s));
    let t = truncated_smash();
    let pgc = check_pgc(&t).unwrap();
    println!("noncentral grouplike: {:?} ({})", pgc.verdict, pgc.witness.unwrap_or_default());
}
