use suspla::linalg::{kernel, rref, Field, SparseVector};

fn main() {
    for field in [Field::Rational, Field::Prime(5)] {
        let row = |xs: &[i64]| SparseVector::from_dense(&xs.iter().map(|&x| field.from_i64(x)).collect::<Vec<_>>());
        let rows = vec![row(&[1, 2, 3, 4]), row(&[2, 4, 6, 9]), row(&[0, 1, 1, 0])];
        let span = rref(field, rows.clone(), 4).unwrap();
        println!("{field:?}: rank {} with pivots {:?}", span.rank(), span.pivots());
        for r in span.rows() {
            println!("  {}", r.format_with(|i| format!("e{i}")));
        }
        let k = kernel(field, rows, 4).unwrap();
        for v in k.rows() {
            println!("  kernel vector {}", v.format_with(|i| format!("e{i}")));
        }
    }
    let half = Field::Rational.parse("-1/2").unwrap();
    println!("-1/2 squared is {}; in F_7 it is {}", half.checked_mul(&half).unwrap(), Field::Prime(7).from_ratio(-1, 2));
}
