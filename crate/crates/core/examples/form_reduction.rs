//! Reduce binary quadratic forms and enumerate the reduced forms of a discriminant.

use cmconj::modgroup::UnimodularMatrix;
use cmconj::quadforms::{class_number, enumerate_reduced, CMOrder, QuadraticForm};
use rug::Integer;

fn main() -> cmconj::Result<()> {
    let q = QuadraticForm::new(77, -82, 22)?;
    let (r, g) = q.reduce();
    println!("{q}  ->  {r}  via {g}");
    assert_eq!(q.act(&g), r);

    let g = UnimodularMatrix::from_i64([2, -1, 9, -4])?;
    let moved = QuadraticForm::new(2, 2, 7)?.act(&g);
    println!(
        "(2, 2, 7) under {g} = {moved}, reduces to {}",
        moved.reduce().0
    );

    for d in [-52i64, -56, -84, -100, -163] {
        let disc = Integer::from(d);
        let order = CMOrder::new(d)?;
        let forms: Vec<String> = enumerate_reduced(&disc)?
            .iter()
            .map(|q| q.to_string())
            .collect();
        println!(
            "D = {d}: conductor {}, tau_O = {}, h = {}: {}",
            order.conductor(),
            order.tau(),
            class_number(&disc)?,
            forms.join(", ")
        );
    }
    Ok(())
}
